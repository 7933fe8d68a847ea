"""Decomposers, lift-joins, decompositions and targets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .colouring import (
    SMALL_TABLE_POINTS,
    Colouring,
    find_rainbow_triangle,
    restrict,
    subset_tables,
)
from .errors import NotSkewError, PgcolError, RainbowTriangleError, TheoremViolation
from .geometry import (
    Eliminator,
    Flat,
    Geometry,
    build_geometry,
    closure,
    complement_flat,
    enumerate_flats,
    point_count,
    rank,
)
from .rng import SplitMix64

EMPTY_FLAT = Flat((), (), 0)


@dataclass(frozen=True)
class Part:
    """A flat of the host and the colouring of PG(rank-1, q) it carries."""

    flat: Flat
    colouring: Colouring


@dataclass(frozen=True)
class DecompositionSequence:
    geometry: Geometry
    parts: tuple[Part, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise PgcolError("a decomposition needs at least one part")
        g = self.geometry
        total = 0
        pts: list[int] = []
        for part in self.parts:
            if part.flat.rank == 0:
                raise PgcolError("decomposition parts must be nonempty")
            if part.colouring.geometry.n != part.flat.rank or part.colouring.q != g.q:
                raise PgcolError("part colouring does not match its flat")
            total += part.flat.rank
            pts.extend(part.flat.points)
        if rank(g, pts) != total:
            raise NotSkewError("decomposition flats are not mutually skew")

    @property
    def flats(self) -> tuple[Flat, ...]:
        return tuple(p.flat for p in self.parts)

    @property
    def spans(self) -> bool:
        return sum(p.flat.rank for p in self.parts) == self.geometry.n

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class TargetChain:
    flats: tuple[Flat, ...]  # F_0 = empty, ..., F_k = whole geometry
    layer_colours: tuple[int, ...]  # colour of F_{i+1} - F_i

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(f.rank for f in self.flats)


def make_part(c: Colouring, flat: Flat) -> Part:
    return Part(flat, restrict(c, flat)[0])


# -- decomposers ----------------------------------------------------------------


def _check_proper(g: Geometry, f: Flat) -> None:
    if f.rank >= g.n:
        raise PgcolError("a decomposer must be a proper flat")
    if len(f.points) != (point_count(g.q, f.rank) if f.rank else 0):
        raise PgcolError(f"{f.points} is not a flat of {g!r}")


def is_decomposer(c: Colouring, f: Flat) -> bool:
    """True iff cl(f + e) - f is monochromatic for every point e off f."""
    g = c.geometry
    _check_proper(g, f)
    return kernels.is_decomposer(g, c.array, f.points)


def find_decomposer(c: Colouring) -> Flat | None:
    """Nonempty decomposer of least rank, lexicographically first within that rank."""
    g = c.geometry
    arr = c.array
    for r in range(1, g.n):
        for f in enumerate_flats(g, r):
            if kernels.is_decomposer(g, arr, f.points):
                return f
    return None


# -- lift-join ----------------------------------------------------------------


def _host_colours(g: Geometry, part: Part) -> dict[int, int]:
    if part.flat.rank == 0:
        return {}
    emb = g.embedding(part.flat)
    cols = part.colouring.colours
    return {emb[i]: cols[i] for i in range(len(emb))}


def lift_join(g: Geometry, f1: Flat, c1: Colouring | None, f2: Flat, c2: Colouring | None) -> Part:
    """c1 (x) c2 on cl(f1 + f2), returned as a Part.

    ``c1``/``c2`` colour PG(r_i - 1, q) through each flat's embedding; they may
    be None only for the empty flat.
    """
    u = closure(g, f1.points + f2.points)
    if f1.rank + f2.rank != u.rank:
        raise NotSkewError("lift-join needs skew flats")
    if u.rank == 0:
        raise PgcolError("lift-join of two empty flats")
    col = _host_colours(g, Part(f1, c1)) if f1.rank else {}
    col2 = _host_colours(g, Part(f2, c2)) if f2.rank else {}
    targets = [p for p in u.points if p not in col]
    proj = kernels.lift_project(g, targets, f1.points, f2.points)
    for e, x in zip(targets, proj):
        if x < 0:
            raise PgcolError("lift-join projection failed; flats inconsistent")
        col[e] = col2[x]
    s = max(c.s for c in (c1, c2) if c is not None)
    emb = g.embedding(u)
    return Part(u, Colouring(build_geometry(g.q, u.rank), tuple(col[p] for p in emb), s))


def lift_join_many(parts: DecompositionSequence | Sequence[Part], geometry: Geometry | None = None) -> Colouring:
    """Left fold of :func:`lift_join`; a colouring of the closure of all parts.

    When the parts span, this is a colouring of the host geometry itself.
    """
    if isinstance(parts, DecompositionSequence):
        g, seq = parts.geometry, parts.parts
    else:
        seq = tuple(parts)
        if geometry is None:
            raise PgcolError("geometry required when folding a plain list of parts")
        g = geometry
    if not seq:
        raise PgcolError("nothing to fold")
    acc = seq[0]
    for part in seq[1:]:
        acc = lift_join(g, acc.flat, acc.colouring, part.flat, part.colouring)
    return acc.colouring


# -- decomposition ----------------------------------------------------------------


def decompose(c: Colouring) -> DecompositionSequence:
    """Mutually skew flats, each carrying at most two colours, whose lift-join is c.

    Recursion: a part with at most two colours (or rank <= 1) is kept whole;
    otherwise split along the first decomposer F and its canonical complement.
    """
    tri = find_rainbow_triangle(c)
    if tri is not None:
        raise RainbowTriangleError(tri)
    return DecompositionSequence(c.geometry, tuple(make_part(c, f) for f in _decompose_flats(c)))


def _decompose_flats(c: Colouring) -> list[Flat]:
    g = c.geometry
    if len(c.used) <= 2 or g.n <= 1:
        return [closure(g, range(g.size))]
    f = find_decomposer(c)
    if f is None:
        raise TheoremViolation(
            f"no nonempty decomposer found for a rainbow-triangle-free colouring with {len(c.used)} colours"
        )
    out = []
    for sub_flat in (f, complement_flat(g, f)):
        sub_c, emb = restrict(c, sub_flat)
        for inner in _decompose_flats(sub_c):
            out.append(closure(g, [emb[p] for p in inner.points]))
    return out


def complement_within(g: Geometry, f: Flat, ambient: Flat) -> Flat:
    """Extend a basis of f by smallest-index points of ``ambient``; closure of the extension."""
    el = Eliminator(g.field, g.n)
    for row in f.basis:
        el.add(row)
    ext = []
    for p in ambient.points:
        if el.rank == ambient.rank:
            break
        if el.add(g.points[p]):
            ext.append(p)
    return closure(g, ext)


# -- targets ----------------------------------------------------------------


def colour_masks(c: Colouring) -> dict[int, int]:
    out: dict[int, int] = {}
    for p, x in enumerate(c.colours):
        out[x] = out.get(x, 0) | (1 << p)
    return out


def closure_mask(g: Geometry, mask: int) -> int:
    if g.size <= SMALL_TABLE_POINTS:
        return subset_tables(g)[1][mask]
    pts = [p for p in range(g.size) if (mask >> p) & 1]
    flat, _ = kernels.closure(g, pts)
    out = 0
    for p in flat:
        out |= 1 << p
    return out


def target_masks(g: Geometry, cmasks: dict[int, int], top: int) -> tuple[list[int], list[int]] | None:
    """Greedy target chain inside the flat with point mask ``top``.

    Returns (flat masks from empty up to top, layer colours) or None. The last
    layer colour must be the unique kappa whose complement closes to a proper
    flat: two proper flats cannot cover a projective space, so at most one
    kappa qualifies, and restricting a target to a flat keeps it a target.
    """
    chain = [top]
    layers: list[int] = []
    cur = top
    while cur:
        present = [k for k, m in sorted(cmasks.items()) if cur & m]
        if len(present) == 1:
            layers.append(present[0])
            chain.append(0)
            break
        for k in present:
            f = closure_mask(g, cur & ~cmasks[k])
            if f != cur:
                layers.append(k)
                chain.append(f)
                cur = f
                break
        else:
            return None
    chain.reverse()
    layers.reverse()
    return chain, layers


def _mask_points(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def is_target(c: Colouring) -> TargetChain | None:
    g = c.geometry
    res = target_masks(g, colour_masks(c), g.full_mask)
    if res is None:
        return None
    chain, layers = res
    flats = tuple(closure(g, _mask_points(m)) for m in chain)
    return TargetChain(flats, tuple(layers))


def restriction_targets(c: Colouring, r: int) -> bool:
    """True iff the restriction to every rank-r flat is a target."""
    g = c.geometry
    cm = colour_masks(c)
    return all(target_masks(g, cm, f.mask) is not None for f in enumerate_flats(g, r))


def target_decomposition(c: Colouring, chain: TargetChain) -> DecompositionSequence:
    """Monochromatic parts F_1, then a complement of F_i inside F_{i+1} for each i."""
    g = c.geometry
    flats = [chain.flats[1]]
    for lo, hi in zip(chain.flats[1:], chain.flats[2:]):
        flats.append(complement_within(g, lo, hi))
    return DecompositionSequence(g, tuple(make_part(c, f) for f in flats))


def pair_colouring(c: Colouring, seq: DecompositionSequence | None = None) -> tuple[Colouring, list[tuple[int, int]]]:
    """Colouring by two-element colour sets whose layers are bicoloured under c.

    Each part of the decomposition is coloured monochromatically by its colour
    pair (a one-colour part is padded with the smallest other used colour) and
    the parts are lift-joined. Returns the label colouring and the pair behind
    each label id; ``c(e)`` lies in the pair of ``e``'s label.
    """
    if len(c.used) < 2:
        raise PgcolError("pair colourings need at least two colours")
    if seq is None:
        seq = decompose(c)
    labels: list[tuple[int, int]] = []
    parts = []
    for part in seq.parts:
        cols = sorted(part.colouring.used)
        if len(cols) == 1:
            cols.append(min(k for k in c.used if k != cols[0]))
        pair = (min(cols), max(cols))
        if pair not in labels:
            labels.append(pair)
        mono = Colouring.constant(part.colouring.geometry, labels.index(pair), len(c.used) ** 2)
        parts.append(Part(part.flat, mono))
    labelled = lift_join_many(parts, c.geometry)
    return Colouring(c.geometry, labelled.colours, len(labels)), labels


# -- planes ----------------------------------------------------------------

PLANE_CASES = ("1", "2i", "2ii")


def lines_two_coloured(c: Colouring) -> bool:
    cols = c.colours
    return all(len({cols[p] for p in line}) <= 2 for line in c.geometry.lines)


def plane_cases(c: Colouring) -> list[str]:
    """Every case of the plane trichotomy that ``c`` satisfies (rank-3 geometries)."""
    g = c.geometry
    if g.n != 3:
        raise PgcolError("plane classification needs a rank-3 geometry")
    cols = c.colours
    used = c.used
    out = []
    if len(used) <= 2:
        out.append("1")
    if len(used) != 3:
        return out
    # 2.i: a point x whose colour appears nowhere else, every line through x
    # minus x monochromatic
    for alpha, pts in c.classes.items():
        if len(pts) != 1:
            continue
        x = pts[0]
        lines = {g.pair_line_list[x][y] for y in range(g.size) if y != x}
        if all(len({cols[p] for p in g.lines[lid] if p != x}) == 1 for lid in lines):
            out.append("2i")
            break
    # 2.ii: a line L carrying the two other colours, each at least twice, rest alpha
    for line in g.lines:
        on = [cols[p] for p in line]
        off = {cols[p] for p in range(g.size) if p not in line}
        if len(off) != 1 or len(set(on)) != 2 or off & set(on):
            continue
        if all(on.count(k) >= 2 for k in set(on)):
            out.append("2ii")
            break
    return out


def classify_plane(c: Colouring) -> str | None:
    """The trichotomy case of a plane colouring with at most two colours per line, else None."""
    if not lines_two_coloured(c):
        return None
    cases = plane_cases(c)
    if len(cases) != 1:
        raise TheoremViolation(f"plane colouring matches cases {cases}")
    return cases[0]


def plane_case_colouring(q: int, case: str, rng: SplitMix64, s: int = 3) -> Colouring:
    """A random colouring of PG(2, q) built to satisfy the given trichotomy case."""
    g = build_geometry(q, 3)
    if case == "1":
        a, b = rng.sample(range(s), 2)
        return Colouring(g, tuple(rng.choice((a, b)) for _ in range(g.size)), s)
    alpha, b1, b2 = rng.sample(range(s), 3)
    if case == "2i":
        x = rng.randbelow(g.size)
        cols = [0] * g.size
        cols[x] = alpha
        lines = sorted({g.pair_line_list[x][y] for y in range(g.size) if y != x})
        while True:
            picks = [rng.choice((b1, b2)) for _ in lines]
            if len(set(picks)) == 2:
                break
        for lid, k in zip(lines, picks):
            for p in g.lines[lid]:
                if p != x:
                    cols[p] = k
        return Colouring(g, tuple(cols), s)
    if case == "2ii":
        if q + 1 < 4:
            raise PgcolError("case 2ii needs lines with at least four points")
        line = g.lines[rng.randbelow(len(g.lines))]
        cols = [alpha] * g.size
        while True:
            picks = [rng.choice((b1, b2)) for _ in line]
            if min(picks.count(b1), picks.count(b2)) >= 2:
                break
        for p, k in zip(line, picks):
            cols[p] = k
        return Colouring(g, tuple(cols), s)
    raise PgcolError(f"unknown plane case {case!r}")


# -- helpers for sweeps ----------------------------------------------------------------


def all_colourings(g: Geometry, s: int) -> Iterable[tuple[int, ...]]:
    """Every s-colouring of g as a colour tuple, in lexicographic order."""
    return itertools.product(range(s), repeat=g.size)


def verify_theorem(tag: str, q: int, n: int, **kwargs):
    """Run a named structural check; see :func:`pgcol.verify.verify_theorem`."""
    from .verify import verify_theorem as _verify

    return _verify(tag, q, n, **kwargs)
