"""The pgcol text format and the JSON analysis report.

Format (bit-exact, LF line endings, trailing newline required)::

    pgcol 1
    Q N S
    c_0 c_1 ... c_{M-1}

where M = (Q^N - 1)/(Q - 1) and colour ids are 0-based, listed in canonical
point order.
"""

from __future__ import annotations

import json
import time
from typing import Any

from .colouring import Colouring, find_rainbow_triangle
from .errors import (
    BAD_BODY,
    BAD_HEADER,
    BAD_MAGIC,
    COLOUR_RANGE,
    LENGTH_MISMATCH,
    FormatError,
    UnsupportedField,
)
from .extremal import homogeneous_search, omega
from .geometry import build_geometry, point_count
from .structure import decompose, is_target

MAGIC = "pgcol 1"


def parse_pgcol(text: str) -> Colouring:
    if not text.endswith("\n"):
        raise FormatError(BAD_BODY, max(1, text.count("\n") + 1), "missing trailing newline")
    if "\r" in text:
        raise FormatError(BAD_MAGIC, 1, "CR characters are not allowed (LF line endings only)")
    lines = text[:-1].split("\n")
    if lines[0] != MAGIC:
        raise FormatError(BAD_MAGIC, 1, f"expected {MAGIC!r}, got {lines[0]!r}")
    if len(lines) < 2:
        raise FormatError(BAD_HEADER, 2, "missing header line")
    head = lines[1].split(" ")
    if len(head) != 3 or not all(h.isdigit() for h in head):
        raise FormatError(BAD_HEADER, 2, f"header must be 'Q N S', got {lines[1]!r}")
    q, n, s = (int(h) for h in head)
    if n < 1 or s < 1:
        raise FormatError(BAD_HEADER, 2, "N and S must be positive")
    try:
        g = build_geometry(q, n)
    except UnsupportedField as exc:
        raise FormatError(BAD_HEADER, 2, str(exc)) from None
    if len(lines) != 3:
        raise FormatError(BAD_BODY, min(len(lines), 4), f"expected 3 lines, got {len(lines)}")
    body = lines[2].split(" ") if lines[2] else []
    if not all(tok.isdigit() for tok in body):
        raise FormatError(BAD_BODY, 3, "colour ids must be space-separated decimal integers")
    expected = point_count(q, n)
    if len(body) != expected:
        raise FormatError(LENGTH_MISMATCH, 3, f"expected {expected} colour ids, got {len(body)}")
    cols = tuple(int(tok) for tok in body)
    for i, x in enumerate(cols):
        if x >= s:
            raise FormatError(COLOUR_RANGE, 3, f"colour id {x} at position {i} is not below S={s}")
    return Colouring(g, cols, s)


def serialize_pgcol(c: Colouring) -> str:
    return f"{MAGIC}\n{c.q} {c.n} {c.s}\n{' '.join(map(str, c.colours))}\n"


def read_pgcol(path: str) -> Colouring:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return parse_pgcol(fh.read())


def write_pgcol(path: str, c: Colouring) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(serialize_pgcol(c))


def analyze(c: Colouring) -> dict[str, Any]:
    """Deterministic analysis record (no timing data)."""
    g = c.geometry
    tri = find_rainbow_triangle(c)
    chain = is_target(c)
    decomposition = None
    if tri is None:
        decomposition = [
            {"points": list(p.flat.points), "rank": p.flat.rank, "colours": sorted(p.colouring.used)}
            for p in decompose(c).parts
        ]
    classes = c.classes
    hom = homogeneous_search(c)
    return {
        "q": c.q,
        "n": c.n,
        "s": c.s,
        "rainbow_triangle": list(tri) if tri is not None else None,
        "target_chain": None if chain is None else {
            "flats": [list(f.points) for f in chain.flats],
            "ranks": list(chain.ranks),
            "layer_colours": list(chain.layer_colours),
        },
        "decomposition": decomposition,
        "omega_per_colour": {str(k): omega(g, classes.get(k, ())) for k in range(c.s)},
        "homogeneous": {
            "avoided": list(hom.avoided),
            "flat": list(hom.flat.points),
            "rank": hom.rank,
        },
    }


def dumps(content: dict[str, Any], wall_time: float | None = None) -> str:
    """Stable JSON: sorted keys; timing only in the separate footer."""
    doc = dict(content)
    if wall_time is not None:
        doc["footer"] = {"wall_time": round(wall_time, 6)}
    return json.dumps(doc, sort_keys=True, indent=2)


def analyze_json(c: Colouring) -> str:
    start = time.perf_counter()
    content = analyze(c)
    return dumps(content, time.perf_counter() - start)
