"""Colourings of projective geometries and the predicates built on them.

Colour ids are 0-based. A colouring is a value object: the geometry handle,
one colour per point index, and the declared number of colours ``s``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, PgcolError
from .geometry import (
    Eliminator,
    Flat,
    Geometry,
    all_flats,
    build_geometry,
)
from .rng import SplitMix64

SMALL_TABLE_POINTS = 15  # subset tables (2^N entries) are built up to this size
DEFAULT_PATTERN_BUDGET = 10**6
DEFAULT_CIRCUIT_BUDGET = 10**6


@dataclass(frozen=True)
class Colouring:
    geometry: Geometry
    colours: tuple[int, ...]
    s: int

    def __post_init__(self):
        cols = tuple(int(x) for x in self.colours)
        object.__setattr__(self, "colours", cols)
        if len(cols) != self.geometry.size:
            raise PgcolError(
                f"colouring has {len(cols)} entries, {self.geometry!r} has {self.geometry.size} points"
            )
        if self.s < 1:
            raise PgcolError("s must be at least 1")
        for x in cols:
            if not 0 <= x < self.s:
                raise PgcolError(f"colour id {x} outside 0..{self.s - 1}")

    @classmethod
    def of(cls, g: Geometry, colours: Sequence[int], s: int | None = None) -> "Colouring":
        cols = tuple(int(x) for x in colours)
        if s is None:
            s = max(cols, default=0) + 1
        return cls(g, cols, s)

    @classmethod
    def constant(cls, g: Geometry, colour: int = 0, s: int | None = None) -> "Colouring":
        return cls(g, (colour,) * g.size, colour + 1 if s is None else s)

    def __len__(self) -> int:
        return len(self.colours)

    def __getitem__(self, p: int) -> int:
        return self.colours[p]

    @property
    def q(self) -> int:
        return self.geometry.q

    @property
    def n(self) -> int:
        return self.geometry.n

    @cached_property
    def used(self) -> frozenset[int]:
        return frozenset(self.colours)

    @cached_property
    def classes(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for p, x in enumerate(self.colours):
            out.setdefault(x, []).append(p)
        return {k: tuple(v) for k, v in sorted(out.items())}

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.colours, dtype=np.int32)

    def colours_on(self, pts) -> set[int]:
        return {self.colours[p] for p in pts}


@dataclass(frozen=True)
class PatternWitness:
    image: tuple[int, ...]  # host point for each pattern point
    matrix: tuple[tuple[int, ...], ...]  # host vectors the standard basis is sent to


def restrict(c: Colouring, flat: Flat) -> tuple[Colouring, tuple[int, ...]]:
    """Colouring of PG(r-1, q) induced on ``flat`` plus the embedding used."""
    g = c.geometry
    sub = build_geometry(g.q, flat.rank) if flat.rank else None
    if sub is None:
        raise PgcolError("cannot restrict to the empty flat")
    emb = g.embedding(flat)
    return Colouring(sub, tuple(c.colours[p] for p in emb), c.s), emb


def recolour(c: Colouring, mapping: Mapping[int, int] | Sequence[int], s: int | None = None) -> Colouring:
    if not isinstance(mapping, Mapping):
        mapping = dict(enumerate(mapping))
    missing = sorted(k for k in c.used if k not in mapping)
    if missing:
        raise PgcolError(f"recolouring map is undefined on colours {missing}")
    cols = tuple(int(mapping[x]) for x in c.colours)
    if s is None:
        top = max(cols, default=0) + 1
        s = c.s if top <= c.s else top
    return Colouring(c.geometry, cols, s)


# -- rainbow structures -------------------------------------------------------


def find_rainbow_triangle(c: Colouring) -> tuple[int, int, int] | None:
    """Lexicographically first rainbow triangle, or None."""
    if len(c.used) < 3:
        return None
    return kernels.first_rainbow_triangle(c.geometry, c.array)


def subset_tables(g: Geometry) -> tuple[list[int], list[int]]:
    """For every subset mask of points: its rank and the mask of its closure."""
    if g.size > SMALL_TABLE_POINTS:
        raise BudgetExceeded(f"subset tables need N <= {SMALL_TABLE_POINTS}")
    cached = g.cache.get("subset_tables")
    if cached is not None:
        return cached
    N = g.size
    line_mask = [[0] * N for _ in range(N)]
    for a in range(N):
        for b in range(N):
            if a != b:
                m = 0
                for x in g.line_of(a, b):
                    m |= 1 << x
                line_mask[a][b] = m
    ranks = [0] * (1 << N)
    spans = [0] * (1 << N)
    for m in range(1, 1 << N):
        low = m & -m
        p = low.bit_length() - 1
        rest = m ^ low
        sp = spans[rest]
        if (sp >> p) & 1:
            spans[m] = sp
            ranks[m] = ranks[rest]
            continue
        new = sp | low
        row = line_mask[p]
        x = sp
        while x:
            lb = x & -x
            new |= row[lb.bit_length() - 1]
            x ^= lb
        spans[m] = new
        ranks[m] = ranks[rest] + 1
    g.cache["subset_tables"] = (ranks, spans)
    return ranks, spans


def _circuits_small(g: Geometry, max_size: int) -> list[tuple[int, ...]]:
    key = f"circuits_{max_size}"
    cached = g.cache.get(key)
    if cached is not None:
        return cached
    ranks, _ = subset_tables(g)
    out = []
    for k in range(3, max_size + 1):
        for combo in itertools.combinations(range(g.size), k):
            m = 0
            for p in combo:
                m |= 1 << p
            if ranks[m] != k - 1:
                continue
            if all(ranks[m ^ (1 << p)] == k - 1 for p in combo):
                out.append(combo)
    g.cache[key] = out
    return out


def find_rainbow_circuit(c: Colouring, max_size: int | None = None,
                         budget: int = DEFAULT_CIRCUIT_BUDGET) -> tuple[int, ...] | None:
    """A rainbow circuit of size 3..max_size (smallest size first, then lex), or None.

    Works on dependent sets directly and does not use the triangle kernel.
    """
    g = c.geometry
    if max_size is None:
        max_size = g.n + 1
    if max_size > g.n + 1:
        raise PgcolError(f"circuits of {g!r} have at most {g.n + 1} points")
    max_size = min(max_size, len(c.used))
    if max_size < 3:
        return None
    cols = c.colours
    if g.size <= SMALL_TABLE_POINTS:
        for circ in _circuits_small(g, max_size):
            if len({cols[p] for p in circ}) == len(circ):
                return circ
        return None

    steps = 0
    for k in range(3, max_size + 1):
        # grow a rainbow independent set a_1 < ... < a_{k-1}; the last point must
        # lie in its span but outside the span of every (k-2)-subset
        stack: list[int] = []

        def rec(start: int, used: set[int]):
            nonlocal steps
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f"rainbow circuit search exceeded {budget} steps")
            if len(stack) == k - 1:
                for p in range(start, g.size):
                    if cols[p] in used:
                        continue
                    if _is_circuit_completion(g, stack, p):
                        return tuple(stack) + (p,)
                return None
            for p in range(start, g.size):
                if cols[p] in used:
                    continue
                el = Eliminator(g.field, g.n)
                for x in stack:
                    el.add(g.points[x])
                if not el.add(g.points[p]):
                    continue
                stack.append(p)
                used.add(cols[p])
                hit = rec(p + 1, used)
                used.discard(cols[p])
                stack.pop()
                if hit:
                    return hit
            return None

        hit = rec(0, set())
        if hit:
            return hit
    return None


def _is_circuit_completion(g: Geometry, indep: list[int], p: int) -> bool:
    el = Eliminator(g.field, g.n)
    for x in indep:
        el.add(g.points[x])
    if el.add(g.points[p]):
        return False
    for drop in range(len(indep)):
        el = Eliminator(g.field, g.n)
        for i, x in enumerate(indep):
            if i != drop:
                el.add(g.points[x])
        if not el.add(g.points[p]):
            return False
    return True


def check_easyequiv(c: Colouring, spot_checks: int = 256, seed: int = 0) -> tuple[bool, bool, bool, bool]:
    """Evaluate the four conditions separately.

    (i) no rainbow triangle; (ii) no rainbow circuit; (iii) |c(X)| <= r(X) for
    every point set X; (iv) |c(F)| <= r(F) for every flat F. (iii) is checked
    on all subsets when N is small, otherwise via (iv) plus seeded random
    subsets.
    """
    g = c.geometry
    cols = c.colours
    i = find_rainbow_triangle(c) is None
    ii = find_rainbow_circuit(c, g.n + 1) is None
    iv = all(len({cols[p] for p in f.points}) <= f.rank for f in all_flats(g))
    if g.size <= SMALL_TABLE_POINTS:
        ranks, _ = subset_tables(g)
        cmask = [0] * (1 << g.size)
        iii = True
        for m in range(1, 1 << g.size):
            low = m & -m
            cm = cmask[m ^ low] | (1 << cols[low.bit_length() - 1])
            cmask[m] = cm
            if cm.bit_count() > ranks[m]:
                iii = False
                break
    else:
        rng = SplitMix64(seed)
        iii = iv
        for _ in range(spot_checks):
            if not iii:
                break
            k = rng.randint(1, g.size)
            pts = rng.sample(range(g.size), k)
            el = Eliminator(g.field, g.n)
            for p in pts:
                el.add(g.points[p])
            iii = len({cols[p] for p in pts}) <= el.rank
    return i, ii, iii, iv


# -- containment ----------------------------------------------------------------


def contains_pattern(host: Colouring, pattern: Colouring,
                     budget: int = DEFAULT_PATTERN_BUDGET) -> PatternWitness | None:
    """First injective linear map sending the pattern into the host colour-faithfully.

    The images w_1..w_r of the standard basis vectors are chosen in increasing
    host order; for q > 2, w_2..w_r additionally range over nonzero scalings
    (w_1's scaling is irrelevant projectively). A pattern point whose last
    nonzero coordinate is i is checked as soon as w_i is fixed.
    """
    g, h = host.geometry, pattern.geometry
    if g.q != h.q:
        raise PgcolError("pattern and host must be over the same field")
    r = h.n
    if r > g.n:
        return None
    F = g.field
    groups: list[list[int]] = [[] for _ in range(r)]
    for idx, vec in enumerate(h.points):
        last = max(j for j, x in enumerate(vec) if x)
        groups[last].append(idx)
    hcols, pcols = host.colours, pattern.colours
    image = [0] * h.size
    chosen: list[tuple[int, ...]] = []
    el_stack = [Eliminator(F, g.n)]
    steps = 0

    def image_of(vec):
        acc = [0] * g.n
        for a, w in zip(vec, chosen):
            if a:
                for j, x in enumerate(w):
                    if x:
                        acc[j] = F.add[acc[j]][F.mul[a][x]]
        return g.index_of(acc)

    def rec(i: int):
        nonlocal steps
        if i == r:
            return True
        for p in range(g.size):
            base = el_stack[-1]
            el = Eliminator(F, g.n)
            el.rows = [list(x) for x in base.rows]
            el.pivots = list(base.pivots)
            if not el.add(g.points[p]):
                continue
            for lam in (F.nonzero if i else (1,)):
                steps += 1
                if steps > budget:
                    raise BudgetExceeded(f"pattern search exceeded {budget} tuples")
                w = tuple(F.mul[lam][x] for x in g.points[p])
                chosen.append(w)
                ok = True
                for idx in groups[i]:
                    hp = image_of(h.points[idx])
                    if hcols[hp] != pcols[idx]:
                        ok = False
                        break
                    image[idx] = hp
                if ok:
                    el_stack.append(el)
                    if rec(i + 1):
                        return True
                    el_stack.pop()
                chosen.pop()
        return False

    if rec(0):
        return PatternWitness(tuple(image), tuple(chosen))
    return None
