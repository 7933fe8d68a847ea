"""Brute-force reference implementations used to freeze expected values.

Nothing here imports the library's algorithms: field tables are hardcoded,
spans are computed by enumerating every linear combination, flats by closing
every small point subset, and all predicates straight from their definitions.
Only meant for geometries with a few dozen points.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

# GF(4) = {0, 1, w, w^2} encoded 0, 1, 2, 3 with w^2 = w + 1
_GF4_ADD = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]
_GF4_MUL = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
]


@lru_cache(maxsize=None)
def tables(q: int):
    if q == 4:
        return _GF4_ADD, _GF4_MUL
    add = [[(a + b) % q for b in range(q)] for a in range(q)]
    mul = [[(a * b) % q for b in range(q)] for a in range(q)]
    return add, mul


def canon(q: int, v):
    _, mul = tables(q)
    for x in v:
        if x:
            inv = next(y for y in range(1, q) if mul[x][y] == 1)
            return tuple(mul[inv][y] for y in v)
    return None


@lru_cache(maxsize=None)
def points(q: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Canonical points sorted by base-q value (first coordinate most significant)."""
    reps = {canon(q, v) for v in itertools.product(range(q), repeat=n) if any(v)}
    return tuple(sorted(reps, key=lambda v: sum(d * q ** (n - 1 - i) for i, d in enumerate(v))))


@lru_cache(maxsize=None)
def index(q: int, n: int) -> dict:
    return {v: i for i, v in enumerate(points(q, n))}


def span(q: int, n: int, pts) -> frozenset[int]:
    """Point indices in the span of the given point indices.

    Grows the set of all vectors in the span one generator at a time,
    adding every multiple of the generator to every vector found so far.
    """
    add, mul = tables(q)
    vecs = {(0,) * n}
    for p in pts:
        v = points(q, n)[p]
        if v in vecs:
            continue
        vecs = {tuple(add[x][mul[a][y]] for x, y in zip(w, v)) for w in vecs for a in range(q)}
    idx = index(q, n)
    return frozenset(idx[canon(q, w)] for w in vecs if any(w))


def rank_of_size(q: int, size: int) -> int:
    r = 0
    while (q**r - 1) // (q - 1) != size:
        r += 1
    return r


def rank(q: int, n: int, pts) -> int:
    return rank_of_size(q, len(span(q, n, pts)))


@lru_cache(maxsize=None)
def flats(q: int, n: int) -> dict[int, frozenset[frozenset[int]]]:
    """All flats by rank, from spans of every subset of at most n points."""
    m = len(points(q, n))
    found: dict[int, set] = {r: set() for r in range(n + 1)}
    found[0].add(frozenset())
    for k in range(1, n + 1):
        for sub in itertools.combinations(range(m), k):
            f = span(q, n, sub)
            found[rank_of_size(q, len(f))].add(f)
    return {r: frozenset(v) for r, v in found.items()}


def lines(q: int, n: int):
    return flats(q, n)[2]


def triangles(q: int, n: int):
    """3-point dependent sets (three points on a common line)."""
    out = []
    for line in lines(q, n):
        out.extend(itertools.combinations(sorted(line), 3))
    return sorted(out)


def rainbow_triangles(q: int, n: int, cols) -> list[tuple[int, int, int]]:
    return [t for t in triangles(q, n) if len({cols[p] for p in t}) == 3]


def is_decomposer(q: int, n: int, cols, f) -> bool:
    f = frozenset(f)
    for e in range(len(cols)):
        if e in f:
            continue
        if len({cols[p] for p in span(q, n, f | {e}) - f}) > 1:
            return False
    return True


def omega(q: int, n: int, x) -> int:
    x = frozenset(x)
    return max(r for r, fs in flats(q, n).items() if any(f <= x for f in fs))


def lift_join(q: int, n: int, f1, c1: dict, f2, c2: dict) -> dict:
    """Colouring of cl(f1 u f2) by definition; c1, c2 map host points to colours."""
    f1, f2 = frozenset(f1), frozenset(f2)
    whole = span(q, n, f1 | f2)
    out = {}
    for e in whole:
        if e in f1:
            out[e] = c1[e]
        else:
            hit = (span(q, n, f1 | {e}) & f2)
            assert len(hit) == 1
            out[e] = c2[next(iter(hit))]
    return out


def is_target(q: int, n: int, cols, f=None) -> bool:
    """Some chain of flats from the empty flat to f has monochromatic differences."""
    if f is None:
        f = frozenset(range(len(cols)))
    f = frozenset(f)
    if not f:
        return True
    for r, fs in flats(q, n).items():
        for g in fs:
            if g < f and len({cols[p] for p in f - g}) == 1 and is_target(q, n, cols, g):
                return True
    return False


def maximal_flags(q: int, n: int) -> int:
    """Number of maximal chains of flats, counted by walking the flat lattice."""
    fl = flats(q, n)

    def count(f, r):
        if r == n:
            return 1
        return sum(count(g, r + 1) for g in fl[r + 1] if f < g)

    return count(frozenset(), 0)


@lru_cache(maxsize=None)
def circuits(q: int, n: int, max_size: int) -> tuple[tuple[int, ...], ...]:
    """Minimal dependent point sets of size 3..max_size, by size then lex."""
    m = len(points(q, n))
    out = []
    for k in range(3, max_size + 1):
        for sub in itertools.combinations(range(m), k):
            if rank(q, n, sub) != k - 1:
                continue
            if all(rank(q, n, sub[:i] + sub[i + 1:]) == k - 1 for i in range(k)):
                out.append(sub)
    return tuple(out)


def easyequiv_flags(q: int, n: int, cols) -> tuple[bool, bool, bool, bool]:
    m = len(cols)
    i = not rainbow_triangles(q, n, cols)
    ii = not any(len({cols[p] for p in c}) == len(c) for c in circuits(q, n, n + 1))
    iii = all(
        len({cols[p] for p in sub}) <= rank(q, n, sub)
        for k in range(1, m + 1)
        for sub in itertools.combinations(range(m), k)
    )
    iv = all(len({cols[p] for p in f}) <= r for r, fs in flats(q, n).items() for f in fs)
    return i, ii, iii, iv


def contains(q: int, host_n: int, host_cols, pat_n: int, pat_cols) -> bool:
    """Try every injective linear map F_q^pat_n -> F_q^host_n."""
    add, mul = tables(q)
    hp, pp = points(q, host_n), points(q, pat_n)
    hidx = index(q, host_n)
    vectors = [v for v in itertools.product(range(q), repeat=host_n) if any(v)]
    for rows in itertools.product(vectors, repeat=pat_n):
        if rank_of_size(q, len(span(q, host_n, [hidx[canon(q, r)] for r in rows]))) != pat_n:
            continue
        ok = True
        for j, u in enumerate(pp):
            w = [0] * host_n
            for a, row in zip(u, rows):
                w = [add[x][mul[a][y]] for x, y in zip(w, row)]
            if host_cols[hidx[canon(q, w)]] != pat_cols[j]:
                ok = False
                break
        if ok:
            return True
    return False
