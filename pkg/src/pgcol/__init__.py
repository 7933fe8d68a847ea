"""Coloured projective geometries over small finite fields.

Build PG(n-1, q), colour its points, and compute rainbow triangles,
decomposers, lift-join decompositions, target chains and extremal flats.
Hot loops run in a compiled extension when available and fall back to pure
Python otherwise (see :mod:`pgcol.kernels`).
"""

from __future__ import annotations

from .colouring import (
    Colouring,
    PatternWitness,
    check_easyequiv,
    contains_pattern,
    find_rainbow_circuit,
    find_rainbow_triangle,
    recolour,
    restrict,
)
from .errors import (
    BudgetExceeded,
    FormatError,
    NotSkewError,
    PgcolError,
    RainbowTriangleError,
    TheoremViolation,
    UnsupportedField,
)
from .field import FieldSpec, get_field
from .geometry import (
    Flat,
    Geometry,
    build_geometry,
    closure,
    complement_flat,
    enumerate_flats,
    local_connectivity,
    rank,
)
from .report import VerificationReport
from .structure import (
    DecompositionSequence,
    Part,
    TargetChain,
    classify_plane,
    decompose,
    find_decomposer,
    is_decomposer,
    is_target,
    lift_join,
    lift_join_many,
)
from .verify import verify_theorem

__version__ = "0.1.0"
