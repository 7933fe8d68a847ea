"""Finite projective geometries PG(n-1, q) with exact subspace arithmetic.

Points are indexed ``0..N-1`` in canonical order: a point is represented by
the vector whose first nonzero coordinate is 1, and points are sorted by the
base-q integer value of that vector (first coordinate most significant). For
q = 2 this makes ``index == value - 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, PgcolError
from .field import FieldSpec, get_field

MAX_POINTS = 10**6
MAX_FLATS = 500_000
MAX_LINE_TABLE_POINTS = 2048

Vector = tuple[int, ...]


def point_count(q: int, n: int) -> int:
    return (q**n - 1) // (q - 1)


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of GF(q)^n."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True)
class Flat:
    """A flat given by its sorted point indices and a reduced-echelon basis."""

    points: tuple[int, ...]
    basis: tuple[Vector, ...]
    rank: int

    @cached_property
    def mask(self) -> int:
        m = 0
        for p in self.points:
            m |= 1 << p
        return m

    def __contains__(self, p: object) -> bool:
        return isinstance(p, int) and (self.mask >> p) & 1 == 1

    def __len__(self) -> int:
        return len(self.points)


class Geometry:
    """The point set of PG(n-1, q) together with cached incidence data.

    Instances are immutable after construction and shared through
    :func:`build_geometry`, so cached tables are computed once per (q, n).
    """

    def __init__(self, field: FieldSpec, n: int):
        self.field = field
        self.q = field.q
        self.n = n
        q = self.q
        values: list[int] = []
        for k in range(n):
            base = q**k
            values.extend(range(base, 2 * base))
        self.values: tuple[int, ...] = tuple(values)
        self.points: tuple[Vector, ...] = tuple(self._digits(v) for v in values)
        self.index: dict[Vector, int] = {v: i for i, v in enumerate(self.points)}
        self.size = len(values)
        self._flat_cache: dict[int, list[Flat]] = {}
        self._embed_cache: dict[tuple[int, ...], tuple[int, ...]] = {}
        self.cache: dict[str, object] = {}  # derived tables owned by other modules

    def __repr__(self) -> str:
        return f"Geometry(q={self.q}, n={self.n})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Geometry) and (self.q, self.n) == (other.q, other.n)

    def __hash__(self) -> int:
        return hash((self.q, self.n))

    def _digits(self, value: int) -> Vector:
        out = []
        for _ in range(self.n):
            value, d = divmod(value, self.q)
            out.append(d)
        return tuple(reversed(out))

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def vector(self, i: int) -> Vector:
        return self.points[i]

    def normalize(self, vec: Sequence[int]) -> Vector | None:
        """Scale ``vec`` so that its first nonzero coordinate is 1 (None for zero)."""
        F = self.field
        for x in vec:
            if x:
                s = F.inv[x]
                return tuple(F.mul[s][y] for y in vec)
        return None

    def index_of(self, vec: Sequence[int]) -> int:
        norm = self.normalize(vec)
        if norm is None:
            raise ValueError("the zero vector is not a projective point")
        return self.index[norm]

    def check_points(self, s: Iterable[int]) -> list[int]:
        pts = list(s)
        for p in pts:
            if not isinstance(p, (int, np.integer)) or not 0 <= p < self.size:
                raise IndexError(f"invalid point index {p!r} for {self!r}")
        return [int(p) for p in pts]

    # -- line incidence tables (used by the kernels) -------------------------

    @cached_property
    def _line_tables(self) -> tuple[list[list[int]], list[tuple[int, ...]]]:
        N = self.size
        if N > MAX_LINE_TABLE_POINTS:
            raise BudgetExceeded(
                f"line tables need {N} <= {MAX_LINE_TABLE_POINTS} points"
            )
        pair_line = [[-1] * N for _ in range(N)]
        lines: list[tuple[int, ...]] = []
        for a in range(N):
            row = pair_line[a]
            for b in range(a + 1, N):
                if row[b] >= 0:
                    continue
                pts = self._line_through(a, b)
                lid = len(lines)
                lines.append(pts)
                for x in pts:
                    rx = pair_line[x]
                    for y in pts:
                        if x != y:
                            rx[y] = lid
        return pair_line, lines

    def _line_through(self, a: int, b: int) -> tuple[int, ...]:
        if self.q == 2:
            return tuple(sorted((a, b, ((a + 1) ^ (b + 1)) - 1)))
        F = self.field
        va, vb = self.points[a], self.points[b]
        pts = {a}
        for lam in F.elements:
            pts.add(self.index_of([F.add[y][F.mul[lam][x]] for x, y in zip(va, vb)]))
        return tuple(sorted(pts))

    @property
    def lines(self) -> list[tuple[int, ...]]:
        """All lines, each a sorted tuple of q + 1 point indices."""
        return self._line_tables[1]

    @property
    def pair_line_list(self) -> list[list[int]]:
        return self._line_tables[0]

    @cached_property
    def pair_line_array(self) -> np.ndarray:
        return np.ascontiguousarray(np.array(self._line_tables[0], dtype=np.int32).reshape(self.size, self.size))

    @cached_property
    def line_pts_array(self) -> np.ndarray:
        arr = np.array(self._line_tables[1], dtype=np.int32).reshape(-1, self.q + 1)
        return np.ascontiguousarray(arr)

    def line_of(self, a: int, b: int) -> tuple[int, ...]:
        if a == b:
            raise ValueError("a line needs two distinct points")
        return self.lines[self.pair_line_list[a][b]]

    # -- flats ----------------------------------------------------------------

    def flat_from_basis(self, rows: Sequence[Vector]) -> Flat:
        """Flat spanned by rows already in reduced row echelon form."""
        emb = self._embedding_from_basis(rows)
        pts = tuple(sorted(emb))
        self._embed_cache.setdefault(pts, emb)
        return Flat(pts, tuple(tuple(r) for r in rows), len(rows))

    def _embedding_from_basis(self, rows: Sequence[Vector]) -> tuple[int, ...]:
        r = len(rows)
        if r == 0:
            return ()
        F = self.field
        sub = build_geometry(self.q, r)
        out = []
        for coeffs in sub.points:
            acc = [0] * self.n
            for a, row in zip(coeffs, rows):
                if a:
                    for j, x in enumerate(row):
                        if x:
                            acc[j] = F.add[acc[j]][F.mul[a][x]]
            out.append(self.index[tuple(acc)])
        return tuple(out)

    def embedding(self, flat: Flat) -> tuple[int, ...]:
        """Host point index of each point of PG(rank-1, q), via the flat's basis.

        Because the basis is in reduced echelon form, coordinate vectors of the
        flat's points are themselves canonical, so this is a bijection onto
        ``flat.points`` that respects canonical order inside the flat's basis.
        """
        emb = self._embed_cache.get(flat.points)
        if emb is None:
            emb = self._embedding_from_basis(flat.basis)
            self._embed_cache[flat.points] = emb
        return emb


@lru_cache(maxsize=None)
def _cached_geometry(q: int, n: int) -> Geometry:
    return Geometry(get_field(q), n)


def build_geometry(field: FieldSpec | int, n: int, max_points: int = MAX_POINTS) -> Geometry:
    q = field if isinstance(field, int) else field.q
    if n < 1:
        raise ValueError("n must be at least 1")
    get_field(q)
    N = point_count(q, n)
    if N > max_points:
        raise BudgetExceeded(f"PG({n - 1},{q}) has {N} points > budget {max_points}")
    return _cached_geometry(q, n)


# -- linear algebra over GF(q) ------------------------------------------------


class Eliminator:
    """Incremental row echelon form; ``add`` reports whether a vector was new."""

    def __init__(self, field: FieldSpec, n: int):
        self.field = field
        self.n = n
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        F = self.field
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            a = v[p]
            if a:
                na = F.neg[a]
                for j in range(p, self.n):
                    if row[j]:
                        v[j] = F.add[v[j]][F.mul[na][row[j]]]
        return v

    def add(self, vec: Sequence[int]) -> bool:
        v = self.reduce(vec)
        for j, x in enumerate(v):
            if x:
                s = self.field.inv[x]
                self.rows.append([self.field.mul[s][y] for y in v])
                self.pivots.append(j)
                return True
        return False

    def rref(self) -> list[Vector]:
        F = self.field
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        rows = [list(self.rows[i]) for i in order]
        pivots = [self.pivots[i] for i in order]
        for i in range(len(rows) - 1, -1, -1):
            p = pivots[i]
            for k in range(i):
                a = rows[k][p]
                if a:
                    na = F.neg[a]
                    rows[k] = [F.add[x][F.mul[na][y]] for x, y in zip(rows[k], rows[i])]
        return [tuple(r) for r in rows]


def _rref_q2(values: Iterable[int], n: int) -> list[int]:
    basis: dict[int, int] = {}
    for v in values:
        for bit in sorted(basis, reverse=True):
            if (v >> bit) & 1:
                v ^= basis[bit]
        if v:
            top = v.bit_length() - 1
            for bit in list(basis):
                if (basis[bit] >> top) & 1:
                    basis[bit] ^= v
            basis[top] = v
    return [basis[b] for b in sorted(basis, reverse=True)]


def closure(g: Geometry, s: Iterable[int]) -> Flat:
    pts = g.check_points(s)
    if g.q == 2:
        rows = _rref_q2((p + 1 for p in pts), g.n)
        span = [0]
        for v in rows:
            span += [x ^ v for x in span]
        points = tuple(sorted(x - 1 for x in span if x))
        basis = tuple(g._digits(v) for v in rows)
        return Flat(points, basis, len(rows))
    el = Eliminator(g.field, g.n)
    for p in pts:
        el.add(g.points[p])
    return g.flat_from_basis(el.rref())


def rank(g: Geometry, s: Iterable[int]) -> int:
    pts = g.check_points(s)
    el = Eliminator(g.field, g.n)
    for p in pts:
        el.add(g.points[p])
        if el.rank == g.n:
            break
    return el.rank


def enumerate_flats(g: Geometry, r: int, budget: int = MAX_FLATS) -> list[Flat]:
    """All rank-r flats, sorted lexicographically by their sorted point tuples."""
    if not 0 <= r <= g.n:
        raise ValueError(f"rank {r} out of range for {g!r}")
    cached = g._flat_cache.get(r)
    if cached is not None:
        return cached
    count = gaussian_binomial(g.n, r, g.q)
    if count > budget:
        raise BudgetExceeded(f"{count} rank-{r} flats exceed budget {budget}")
    n, q = g.n, g.q
    flats = []
    for pivots in itertools.combinations(range(n), r):
        pivot_set = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivot_set]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(r)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), x in zip(free, vals):
                rows[i][j] = x
            flats.append(g.flat_from_basis([tuple(row) for row in rows]))
    flats.sort(key=lambda f: f.points)
    g._flat_cache[r] = flats
    return flats


def all_flats(g: Geometry, budget: int = MAX_FLATS) -> list[Flat]:
    out: list[Flat] = []
    for r in range(g.n + 1):
        out.extend(enumerate_flats(g, r, budget))
    return out


def complement_flat(g: Geometry, f: Flat) -> Flat:
    """Canonical complement: extend a basis of ``f`` greedily by smallest-index points."""
    el = Eliminator(g.field, g.n)
    for row in f.basis:
        el.add(row)
    ext = []
    for p in range(g.size):
        if el.rank == g.n:
            break
        if el.add(g.points[p]):
            ext.append(p)
    return closure(g, ext)


def local_connectivity(g: Geometry, x: Iterable[int], y: Iterable[int]) -> int:
    xs, ys = g.check_points(x), g.check_points(y)
    return rank(g, xs) + rank(g, ys) - rank(g, xs + ys)


def is_flat(g: Geometry, s: Iterable[int]) -> bool:
    pts = sorted(set(g.check_points(s)))
    return closure(g, pts).points == tuple(pts)


def require_flat(g: Geometry, f: Flat) -> None:
    if closure(g, f.points).points != f.points:
        raise PgcolError(f"{f.points} is not a flat of {g!r}")
