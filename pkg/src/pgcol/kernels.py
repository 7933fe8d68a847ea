"""Kernel backend selection.

The compiled extension ``_ckernels`` is used when it imports; otherwise (or
when ``PGCOL_PURE_PYTHON`` is set in the environment) the pure-Python twins in
``_pykernels`` are used. Both produce identical results.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from typing import Iterator, Sequence

import numpy as np

from . import _pykernels
from .geometry import Geometry


def _load_compiled():
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


class Backend:
    def __init__(self, impl, native: bool):
        self.impl = impl
        self.native = native

    @property
    def name(self) -> str:
        return self.impl.NAME

    def __repr__(self) -> str:
        return f"Backend({self.name!r})"

    def _tables(self, g: Geometry):
        if self.native:
            return g.pair_line_array, g.line_pts_array
        return g.pair_line_list, g.lines

    def _ints(self, seq: Sequence[int]):
        return np.ascontiguousarray(seq, dtype=np.int32) if self.native else seq

    def _flags(self, seq):
        return np.frombuffer(bytes(seq), dtype=np.uint8) if self.native else seq

    def first_rainbow_triangle(self, g: Geometry, colours: Sequence[int]):
        pl, lp = self._tables(g)
        return self.impl.first_rainbow_triangle(self._ints(colours), pl, lp, g.size)

    def is_decomposer(self, g: Geometry, colours: Sequence[int], flat_points: Sequence[int]) -> bool:
        pl, lp = self._tables(g)
        in_flat = bytearray(g.size)
        for p in flat_points:
            in_flat[p] = 1
        return bool(self.impl.is_decomposer(
            self._ints(colours), self._flags(in_flat), self._ints(list(flat_points)), pl, lp, g.size
        ))

    def closure(self, g: Geometry, points: Sequence[int]) -> tuple[list[int], int]:
        pl, lp = self._tables(g)
        return self.impl.closure(self._ints(list(points)), pl, lp, g.size)

    def omega(self, g: Geometry, member) -> tuple[int, list[int]]:
        """``member`` is a 0/1 sequence of length N."""
        pl, lp = self._tables(g)
        return self.impl.omega(self._flags(bytearray(member)), pl, lp, g.size, g.q)

    def lift_project(self, g: Geometry, targets: Sequence[int], f1_points: Sequence[int],
                     f2_points: Sequence[int]) -> list[int]:
        pl, lp = self._tables(g)
        in_f2 = bytearray(g.size)
        for p in f2_points:
            in_f2[p] = 1
        return self.impl.lift_project(
            self._ints(list(targets)), self._ints(list(f1_points)), self._flags(in_f2), pl, lp
        )


PYTHON = Backend(_pykernels, native=False)
_compiled = _load_compiled()
COMPILED: Backend | None = Backend(_compiled, native=True) if _compiled is not None else None

_active: Backend = PYTHON if os.environ.get("PGCOL_PURE_PYTHON") or COMPILED is None else COMPILED


def active() -> Backend:
    return _active


def available() -> list[Backend]:
    return [b for b in (COMPILED, PYTHON) if b is not None]


def set_backend(name: str) -> Backend:
    global _active
    for b in available():
        if b.name == name:
            _active = b
            return b
    raise ValueError(f"kernel backend {name!r} is not available")


@contextmanager
def using(name: str) -> Iterator[Backend]:
    previous = _active
    try:
        yield set_backend(name)
    finally:
        set_backend(previous.name)


def first_rainbow_triangle(g, colours):
    return _active.first_rainbow_triangle(g, colours)


def is_decomposer(g, colours, flat_points):
    return _active.is_decomposer(g, colours, flat_points)


def closure(g, points):
    return _active.closure(g, points)


def omega(g, member):
    return _active.omega(g, member)


def lift_project(g, targets, f1_points, f2_points):
    return _active.lift_project(g, targets, f1_points, f2_points)
