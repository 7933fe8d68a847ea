"""Extremal quantities, bound checks, constructions and small Ramsey searches."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from ._pykernels import _max_rank
from .colouring import Colouring, contains_pattern
from .errors import BudgetExceeded, PgcolError
from .geometry import (
    MAX_LINE_TABLE_POINTS,
    Eliminator,
    Flat,
    Geometry,
    all_flats,
    build_geometry,
    closure,
    enumerate_flats,
    point_count,
)
from .report import VerificationReport
from .rng import SplitMix64
from .structure import DecompositionSequence, Part, lift_join_many, make_part

SUMSET_MAX_N = 20
DEFAULT_OMEGA_BUDGET = 10**7
COVER_MAX_MISSING = 16  # omega via hyperplane covers when the complement is this small


# -- omega / alpha ----------------------------------------------------------------


def _member(g: Geometry, x: Iterable[int]) -> bytearray:
    member = bytearray(g.size)
    for p in g.check_points(x):
        member[p] = 1
    return member


def _dot(g: Geometry, f, v) -> int:
    F = g.field
    acc = 0
    for a, b in zip(f, v):
        if a and b:
            acc = F.add[acc][F.mul[a][b]]
    return acc


def _omega_by_cover(g: Geometry, missing: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """omega of the complement of a small point set Y.

    A flat avoids Y iff it is an intersection of hyperplanes whose complements
    cover Y, so omega = n - (fewest hyperplane complements covering Y). The
    cover is found by breadth-first search over subsets of Y.
    """
    k = len(missing)
    full = (1 << k) - 1
    ys = [g.points[y] for y in missing]
    hmasks: dict[int, int] = {}  # cover mask -> first functional giving it
    for fi, f in enumerate(g.points):
        m = 0
        for i, y in enumerate(ys):
            if _dot(g, f, y):
                m |= 1 << i
        if m and m not in hmasks:
            hmasks[m] = fi
    masks = list(hmasks)
    seen = np.zeros(1 << k, dtype=bool)
    parent = np.zeros(1 << k, dtype=np.int64)
    via = np.zeros(1 << k, dtype=np.int64)
    seen[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    while not seen[full]:
        fresh = []
        for hi, h in enumerate(masks):
            cand = frontier | h
            new = ~seen[cand]
            states, prev = cand[new], frontier[new]
            if not len(states):
                continue
            states, first = np.unique(states, return_index=True)
            seen[states] = True
            parent[states] = prev[first]
            via[states] = hi
            fresh.append(states)
        frontier = np.concatenate(fresh)
    chosen = []
    state = full
    while state:
        chosen.append(g.points[hmasks[masks[via[state]]]])
        state = int(parent[state])
    pts = tuple(p for p, v in enumerate(g.points) if all(_dot(g, f, v) == 0 for f in chosen))
    return g.n - len(chosen), pts


def omega_flat(g: Geometry, x: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Rank of the largest flat inside x, and the points of one such flat."""
    member = _member(g, x)
    missing = [p for p in range(g.size) if not member[p]]
    if len(missing) <= COVER_MAX_MISSING and len(missing) < g.size:
        return _omega_by_cover(g, missing)
    if g.size > MAX_LINE_TABLE_POINTS:
        if g.q != 2:
            raise BudgetExceeded(f"omega on {g!r} needs line tables")
        values = {p + 1 for p in range(g.size) if member[p]}
        r, flat = omega_values_q2(values, g.n)
        return r, tuple(sorted(v - 1 for v in flat))
    r, pts = kernels.omega(g, member)
    return r, tuple(pts)


def omega(g: Geometry, x: Iterable[int]) -> int:
    return omega_flat(g, x)[0]


def alpha(g: Geometry, x: Iterable[int]) -> int:
    xs = set(g.check_points(x))
    return omega(g, (p for p in range(g.size) if p not in xs))


def omega_values_q2(values: set[int], n: int, budget: int = DEFAULT_OMEGA_BUDGET) -> tuple[int, list[int]]:
    """omega for a set of nonzero vectors of F_2^n given as integers.

    Same branch and bound as the kernels, with lines {u, w, u ^ w}.
    """
    cand = sorted(values)
    if not cand:
        return 0, []
    best = [0, []]
    steps = [0]
    stop_at = _max_rank(0, len(cand), 2)
    span: list[int] = []
    in_span: set[int] = set()

    def rec(k: int, cand: list[int]):
        if k > best[0]:
            best[0], best[1] = k, list(span)
        m = len(cand)
        for i in range(m):
            steps[0] += 1
            if steps[0] > budget:
                raise BudgetExceeded(f"omega search exceeded {budget} steps")
            if best[0] >= stop_at or _max_rank(k, m - i, 2) <= best[0]:
                return
            v = cand[i]
            layer = [v] + [v ^ s for s in span]
            span.extend(layer)
            in_span.update(layer)
            nxt = [w for w in cand[i + 1:] if w not in in_span and all((w ^ u) in values for u in layer)]
            rec(k + 1, nxt)
            del span[-len(layer):]
            in_span.difference_update(layer)

    rec(0, cand)
    return best[0], best[1]


@dataclass(frozen=True)
class SubsetProfile:
    points: tuple[int, ...]
    mask: int  # bit (v - 1) set for each vector v in X
    omega: int
    alpha: int
    sumset_omega: int
    sumset: tuple[int, ...] = field(repr=False)  # nonzero vectors of X + X, as integers


def _xor_sumset(values: Sequence[int], n: int) -> list[int]:
    size = 1 << n
    f = np.zeros(size, dtype=np.float64)
    f[list(values)] = 1.0
    h = 1
    while h < size:  # Walsh-Hadamard transform
        f = f.reshape(-1, 2, h)
        f = np.stack((f[:, 0] + f[:, 1], f[:, 0] - f[:, 1]), axis=1).reshape(size)
        h *= 2
    f = f * f
    h = 1
    while h < size:
        f = f.reshape(-1, 2, h)
        f = np.stack((f[:, 0] + f[:, 1], f[:, 0] - f[:, 1]), axis=1).reshape(size)
        h *= 2
    counts = np.rint(f / size)
    return [int(v) for v in np.nonzero(counts > 0.5)[0]]


def sumset_profile(n: int, x: Iterable[int], budget: int = DEFAULT_OMEGA_BUDGET) -> SubsetProfile:
    """Profile of X inside PG(n-1, 2), points given by index (vector value - 1)."""
    if not 1 <= n <= SUMSET_MAX_N:
        raise BudgetExceeded(f"sumset profiles support 1 <= n <= {SUMSET_MAX_N}")
    pts = sorted(set(int(p) for p in x))
    N = 2**n - 1
    for p in pts:
        if not 0 <= p < N:
            raise IndexError(f"invalid point index {p}")
    values = [p + 1 for p in pts]
    sums = [v for v in _xor_sumset(values, n) if v] if values else []
    vs = set(values)
    comp = set(range(1, N + 1)) - vs
    mask = 0
    for p in pts:
        mask |= 1 << p
    return SubsetProfile(
        tuple(pts),
        mask,
        omega_values_q2(vs, n, budget)[0],
        omega_values_q2(comp, n, budget)[0],
        omega_values_q2(set(sums), n, budget)[0],
        tuple(sums),
    )


def maximal_triangle_free(n: int, order: Sequence[int] | None = None) -> list[int]:
    """Greedy maximal set of nonzero vectors of F_2^n with no u, w, u ^ w inside."""
    chosen: list[int] = []
    cs: set[int] = set()
    for v in order if order is not None else range(1, 2**n):
        if all((v ^ u) not in cs for u in chosen):
            chosen.append(v)
            cs.add(v)
    return chosen


def omega_table(g: Geometry) -> list[int]:
    """omega of every subset mask, by a superset-max sweep over all flats."""
    cached = g.cache.get("omega_table")
    if cached is not None:
        return cached
    if g.size > 20:
        raise BudgetExceeded("omega tables need at most 20 points")
    N = g.size
    best = np.zeros(1 << N, dtype=np.int8)
    for f in all_flats(g):
        best[f.mask] = max(best[f.mask], f.rank)
    idx = np.arange(1 << N)
    for b in range(N):
        with_b = idx[(idx >> b) & 1 == 1]
        best[with_b] = np.maximum(best[with_b], best[with_b ^ (1 << b)])
    out = best.tolist()
    g.cache["omega_table"] = out
    return out


# -- Bose-Burton ----------------------------------------------------------------


def bose_burton_check(n: int, t: int | None = None, mode: str = "exhaustive",
                      samples: int = 1000, seed: int = 0) -> VerificationReport:
    """Check |X| <= (1 - 2^-t) 2^n whenever omega(X) <= t, and |X| >= 2^(n - alpha(X)) - 1.

    Also confirms the complement of a rank-(n - t) flat attains the first bound.
    """
    start = time.perf_counter()
    g = build_geometry(2, n)
    N = g.size
    ts = range(n + 1) if t is None else [t]
    report = VerificationReport("bose_burton", f"PG({n - 1},2) subsets, {mode}, t={'all' if t is None else t}")

    def check(mask: int, w: int, a: int) -> str | None:
        size = mask.bit_count()
        for tt in ts:
            if w <= tt and size > 2**n - 2 ** (n - tt):
                return f"|X|={size} with omega={w} exceeds bound for t={tt}"
        if size < 2 ** (n - a) - 1:
            return f"|X|={size} below 2^(n-alpha)-1 with alpha={a}"
        return None

    if mode == "exhaustive":
        table = omega_table(g)
        full = g.full_mask
        for mask in range(1 << N):
            report.instances_total += 1
            report.instances_checked += 1
            err = check(mask, table[mask], table[full ^ mask])
            if err:
                report.add_violation({"points": _bits(mask), "reason": err})
    elif mode == "sampled":
        for i in range(samples):
            rng = SplitMix64.for_sample(seed, i)
            mask = rng.randbelow(1 << N)
            pts = _bits(mask)
            report.instances_total += 1
            report.instances_checked += 1
            err = check(mask, omega(g, pts), alpha(g, pts))
            if err:
                report.add_violation({"points": pts, "reason": err})
    else:
        raise PgcolError(f"unknown mode {mode!r}")

    tight = {}
    for tt in ts:
        flat = set(range(point_count(2, n - tt)))
        comp = [p for p in range(N) if p not in flat]
        ok = len(comp) == 2**n - 2 ** (n - tt) and omega(g, comp) == tt
        tight[str(tt)] = ok
        if not ok:
            report.add_violation({"points": comp, "reason": f"complement construction not tight at t={tt}"})
    report.extra["tight"] = tight
    report.wall_time = time.perf_counter() - start
    return report


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# -- homogeneous subspaces ----------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousResult:
    avoided: tuple[int, ...]
    allowed: tuple[int, ...]
    flat: Flat
    rank: int


def _first_flat_inside(g: Geometry, pts: Sequence[int], r: int, fallback: Sequence[int]) -> Flat:
    if r == 0:
        return Flat((), (), 0)
    inside = 0
    for p in pts:
        inside |= 1 << p
    try:
        flats = enumerate_flats(g, r)
    except BudgetExceeded:
        return closure(g, fallback)
    for f in flats:
        if f.mask & ~inside == 0:
            return f
    raise PgcolError("no flat of the reported rank; omega search inconsistent")


def _best_over(c: Colouring, allowed_sets: Iterable[tuple[int, ...]]) -> HomogeneousResult:
    g = c.geometry
    best = None
    for allowed in allowed_sets:
        keep = set(allowed)
        pts = [p for p, x in enumerate(c.colours) if x in keep]
        r, flat_pts = omega_flat(g, pts)
        if best is None or r > best[0]:
            best = (r, allowed, pts, flat_pts)
        if r == g.n:
            break
    r, allowed, pts, flat_pts = best
    flat = _first_flat_inside(g, pts, r, flat_pts)
    avoided = tuple(k for k in range(c.s) if k not in allowed)
    return HomogeneousResult(avoided, tuple(allowed), flat, r)


def homogeneous_search(c: Colouring) -> HomogeneousResult:
    """Largest flat avoiding some colour id in 0..s-1 (smallest colour id, then lex-first flat)."""
    return _best_over(c, (tuple(k for k in range(c.s) if k != i) for i in range(c.s)))


def few_colour_flat_search(c: Colouring, l: int) -> HomogeneousResult:
    """Largest flat using at most l colours (colour sets in lex order, then lex-first flat)."""
    used = sorted(c.used)
    if l < 1:
        raise PgcolError("l must be at least 1")
    if l >= len(used):
        return _best_over(c, [tuple(used)])
    return _best_over(c, itertools.combinations(used, l))


# -- constructions ----------------------------------------------------------------


def construct_chain_colouring(q: int, n: int, colours: Sequence[int], s: int | None = None) -> Colouring:
    """Colour F_i - F_{i-1} with colours[i-1], where F_i spans the i lowest-value standard points."""
    if len(colours) != n:
        raise PgcolError(f"need {n} layer colours, got {len(colours)}")
    g = build_geometry(q, n)
    cols = []
    for i, k in enumerate(colours):
        cols.extend([int(k)] * (point_count(q, i + 1) - point_count(q, i)))
    return Colouring.of(g, cols, s)


def chain_flat(g: Geometry, r: int) -> Flat:
    return closure(g, range(point_count(g.q, r)))


def block_ranks(n: int, t: int) -> list[int]:
    return [n // t + (1 if i < n % t else 0) for i in range(t)]


def coordinate_block_flats(g: Geometry, ranks: Sequence[int]) -> list[Flat]:
    """Spans of consecutive standard basis vectors e_1.., in coordinate order."""
    out = []
    start = 0
    for r in ranks:
        basis = []
        for j in range(start, start + r):
            e = [0] * g.n
            e[j] = 1
            basis.append(g.index_of(e))
        out.append(closure(g, basis))
        start += r
    return out


def _random_part_colouring(q: int, r: int, pair: Sequence[int], rng: SplitMix64, s: int) -> Colouring:
    sub = build_geometry(q, r)
    return Colouring(sub, tuple(pair[rng.randbelow(len(pair))] for _ in range(sub.size)), s)


def block_decomposition(q: int, n: int, k: int, seed: int) -> DecompositionSequence:
    """The t = C(k, 2) randomly 2-coloured coordinate blocks behind the block colouring."""
    if k < 2:
        raise PgcolError("k must be at least 2")
    pairs = list(itertools.combinations(range(k), 2))
    t = len(pairs)
    if n < t:
        raise PgcolError(f"n={n} is smaller than C(k,2)={t}")
    g = build_geometry(q, n)
    rng = SplitMix64(seed)
    flats = coordinate_block_flats(g, block_ranks(n, t))
    parts = tuple(
        Part(f, _random_part_colouring(q, f.rank, pair, rng, k)) for f, pair in zip(flats, pairs)
    )
    return DecompositionSequence(g, parts)


def construct_block_colouring(q: int, n: int, k: int, seed: int) -> Colouring:
    return lift_join_many(block_decomposition(q, n, k, seed))


def random_invertible(q: int, n: int, rng: SplitMix64) -> list[tuple[int, ...]]:
    F = build_geometry(q, 1).field
    while True:
        rows = [tuple(rng.randbelow(q) for _ in range(n)) for _ in range(n)]
        el = Eliminator(F, n)
        if all(el.add(r) for r in rows):
            return rows


def _inverse(q: int, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    F = build_geometry(q, 1).field
    n = len(rows)
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        s = F.inv[a[col][col]]
        a[col] = [F.mul[s][x] for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                m = F.neg[a[i][col]]
                a[i] = [F.add[x][F.mul[m][y]] for x, y in zip(a[i], a[col])]
    return [r[n:] for r in a]


def compose_in_basis(q: int, n: int, basis: Sequence[Sequence[int]], sizes: Sequence[int],
                     part_colours: Sequence[Sequence[int]], s: int) -> Colouring:
    """Closed-form lift-join of coordinate blocks of ``basis``.

    Write each point as sum y_j b_j; its colour is part j's colour at the block-j
    coordinates of y, where j is the last block with a nonzero coordinate.
    """
    g = build_geometry(q, n)
    F = g.field
    inv = _inverse(q, basis)
    subs = [build_geometry(q, r) for r in sizes]
    bounds = list(itertools.accumulate(sizes, initial=0))
    cols = []
    for vec in g.points:
        y = [0] * n
        for i, x in enumerate(vec):
            if x:
                row = inv[i]
                for j in range(n):
                    if row[j]:
                        y[j] = F.add[y[j]][F.mul[x][row[j]]]
        j = max(b for b in range(len(sizes)) if any(y[bounds[b]:bounds[b + 1]]))
        cols.append(part_colours[j][subs[j].index_of(y[bounds[j]:bounds[j + 1]])])
    return Colouring(g, tuple(cols), s)


def random_composition(n: int, rng: SplitMix64, max_parts: int | None = None) -> list[int]:
    cuts = [i for i in range(1, n) if rng.randbelow(2)]
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    while max_parts is not None and len(sizes) > max_parts:
        i = rng.randbelow(len(sizes) - 1)
        sizes[i:i + 2] = [sizes[i] + sizes[i + 1]]
    return sizes


def random_rtf_colouring(q: int, n: int, s: int, rng: SplitMix64) -> Colouring:
    """Random rainbow-triangle-free colouring: lift-join of at most 2-coloured parts in a random basis."""
    basis = random_invertible(q, n, rng)
    sizes = random_composition(n, rng)
    parts = []
    for r in sizes:
        pair = rng.sample(range(s), min(2, s))
        sub = build_geometry(q, r)
        parts.append([pair[rng.randbelow(len(pair))] for _ in range(sub.size)])
    return compose_in_basis(q, n, basis, sizes, parts, s)


def random_target_colouring(q: int, n: int, s: int, rng: SplitMix64) -> Colouring:
    """Random target: lift-join of monochromatic blocks of a random basis."""
    basis = random_invertible(q, n, rng)
    sizes = random_composition(n, rng)
    parts = []
    for r in sizes:
        k = rng.randbelow(s)
        parts.append([k] * point_count(q, r))
    return compose_in_basis(q, n, basis, sizes, parts, s)


def construct_ternary_extremal(n: int) -> Colouring:
    """Colour 0 on the rank-ceil(n/2) chain flat of PG(n-1, 3), colour 1 elsewhere."""
    if n < 2:
        raise PgcolError("n must be at least 2")
    g = build_geometry(3, n)
    m = point_count(3, (n + 1) // 2)
    return Colouring(g, tuple(0 if p < m else 1 for p in range(g.size)), 2)


def has_two_two_line(c: Colouring) -> bool:
    """Some line carries exactly two colours, each on at least two of its points."""
    cols = c.colours
    for line in c.geometry.lines:
        on = [cols[p] for p in line]
        kinds = set(on)
        if len(kinds) == 2 and all(on.count(k) >= 2 for k in kinds):
            return True
    return False


# -- claws ----------------------------------------------------------------


@dataclass(frozen=True)
class ClawReport:
    claw_free: bool
    even_plane: bool
    omega_per_class: tuple[int, int]
    evenplane_bound_ok: bool


def claw_patterns() -> tuple[Colouring, Colouring]:
    """The Fano plane with a basis coloured 1, and with its four-point complement coloured 1."""
    g = build_geometry(2, 3)
    basis = {g.index_of(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))}
    claw = Colouring(g, tuple(1 if p in basis else 0 for p in range(g.size)), 2)
    return claw, Colouring(g, tuple(1 - x for x in claw.colours), 2)


def claw_predicates(c: Colouring) -> ClawReport:
    g = c.geometry
    if g.q != 2 or c.s != 2:
        raise PgcolError("claw predicates need a 2-colouring over GF(2)")
    x = set(c.classes.get(1, ()))
    rest = [p for p in range(g.size) if p not in x]
    claw_free = all(contains_pattern(c, pat) is None for pat in claw_patterns())
    even = all(len(x & set(f.points)) % 2 == 0 for f in enumerate_flats(g, 3)) if g.n >= 3 else True
    w0, w1 = omega(g, rest), omega(g, x)
    bound_ok = (not even) or w0 >= math.ceil(g.n / 2) - 1
    return ClawReport(claw_free, even, (w0, w1), bound_ok)


# -- Ramsey ----------------------------------------------------------------


@dataclass(frozen=True)
class RamseyResult:
    value: int | None
    lower: int
    upper: int | None  # None: not established within n_max / budget
    witnesses: dict[int, tuple[int, ...]]  # n -> a colouring avoiding both (0 = red, 1 = blue)
    exhausted_budget: bool = False


def _avoiding_colouring(g: Geometry, s_dim: int, t_dim: int, budget: int) -> tuple[int, ...] | None | str:
    """A red/blue colouring with no red rank-s_dim flat and no blue rank-t_dim flat.

    PGL(n, q) is 2-transitive on points, so it is enough to try: all blue;
    only point 0 red; points 0 and 1 red with the rest searched by
    backtracking. Returns "budget" when the budget runs out.
    """
    N = g.size
    red_flats = enumerate_flats(g, s_dim) if s_dim <= g.n else []
    blue_flats = enumerate_flats(g, t_dim) if t_dim <= g.n else []
    by_last: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(N)]
    for f in red_flats:
        by_last[f.points[-1]].append((f.points, 0))
    for f in blue_flats:
        by_last[f.points[-1]].append((f.points, 1))
    cols = [1] * N

    def ok_upto(p: int) -> bool:
        for pts, colour in by_last[p]:
            if all(cols[x] == colour for x in pts):
                return False
        return True

    def full_ok() -> bool:
        return all(ok_upto(p) for p in range(N))

    if full_ok():
        return tuple(cols)
    if N >= 1:
        cols = [1] * N
        cols[0] = 0
        if full_ok():
            return tuple(cols)
    if N < 2:
        return None
    cols = [0, 0] + [1] * (N - 2)
    if not (ok_upto(0) and ok_upto(1)):
        return None
    steps = 0

    def rec(p: int) -> bool:
        nonlocal steps
        if p == N:
            return True
        for colour in (0, 1):
            steps += 1
            if steps > budget:
                raise BudgetExceeded("ramsey")
            cols[p] = colour
            if ok_upto(p) and rec(p + 1):
                return True
        cols[p] = 1
        return False

    try:
        return tuple(cols) if rec(2) else None
    except BudgetExceeded:
        return "budget"


def ramsey_search(q: int, s_dim: int, t_dim: int, n_max: int, budget: int = 10**7) -> RamseyResult:
    """Smallest n <= n_max forcing a red rank-s_dim or blue rank-t_dim flat, or bounds."""
    if s_dim < 1 or t_dim < 1:
        raise PgcolError("subspace dimensions must be positive")
    witnesses: dict[int, tuple[int, ...]] = {}
    lower = 1
    for n in range(1, n_max + 1):
        try:
            g = build_geometry(q, n)
            res = _avoiding_colouring(g, s_dim, t_dim, budget)
        except BudgetExceeded:
            res = "budget"
        if res == "budget":
            return RamseyResult(None, lower, None, witnesses, True)
        if res is None:
            return RamseyResult(n, n, n, witnesses)
        witnesses[n] = res
        lower = n + 1
    return RamseyResult(None, lower, None, witnesses)
