"""p-adic valuations on Q and the induced colouring of rational projective points.

All arithmetic is exact (``int`` / ``fractions.Fraction``). Colours here are
1-based coordinate indices, printed as ``coord:k`` in reports.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PgcolError
from .report import VerificationReport
from .rng import SplitMix64

Rational = Fraction | int
DEFAULT_BOUND = 1000


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class PadicSpec:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise PgcolError(f"{self.p} is not prime")


def _int_valuation(p: int, x: int) -> int:
    t = 0
    while x % p == 0:
        x //= p
        t += 1
    return t


def padic_valuation(spec: PadicSpec, x: Rational) -> int | float:
    """v(p^t r/s) = t for r, s coprime to p; v(0) = +inf."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    return _int_valuation(spec.p, x.numerator) - _int_valuation(spec.p, x.denominator)


def cv_colour(spec: PadicSpec, u: Sequence[Rational]) -> int:
    """1-based index of the first coordinate of minimum valuation."""
    vals = [padic_valuation(spec, x) for x in u]
    m = min(vals, default=math.inf)
    if m == math.inf:
        raise PgcolError("the zero vector is not a projective point")
    return vals.index(m) + 1


def _cv_int(p: int, u: Sequence[int]) -> int:
    # colour of a nonzero integer vector; valuations of zeros count as +inf
    best, arg = None, 0
    for i, x in enumerate(u):
        if x:
            v = _int_valuation(p, x)
            if best is None or v < best:
                best, arg = v, i
    return arg + 1


def _clear(u: Sequence[Fraction]) -> list[int]:
    # scale a rational vector to an integer vector; c_v is scale-invariant
    den = 1
    for x in u:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return [int(x * den) for x in u]


def _rand_nonzero(rng: SplitMix64, bound: int) -> int:
    # uniform on [-bound, bound] without 0
    k = rng.randbelow(2 * bound)
    return k - bound if k < bound else k - bound + 1


def random_rational(rng: SplitMix64, bound: int = DEFAULT_BOUND) -> Fraction:
    return Fraction(_rand_nonzero(rng, bound), _rand_nonzero(rng, bound))


def random_vector(rng: SplitMix64, n: int, bound: int = DEFAULT_BOUND) -> list[Fraction]:
    return [random_rational(rng, bound) for _ in range(n)]


def rank_q(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q of integer vectors (fraction-free elimination)."""
    rows = [list(v) for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        a = rows[r][col]
        for i in range(r + 1, len(rows)):
            b = rows[i][col]
            if b:
                rows[i] = [a * x - b * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def dependent_tuple(rng: SplitMix64, n: int, size: int, bound: int = DEFAULT_BOUND) -> list[list[int]]:
    """size - 1 independent random points plus a combination with all coefficients nonzero.

    Points are sampled with rational coordinates and returned scaled to
    integer vectors (the same projective points). The combination uses
    rational coefficients a_i / b_i, scaled by the lcm of the b_i.
    """
    while True:
        pts = [_clear(random_vector(rng, n, bound)) for _ in range(size - 1)]
        if rank_q(pts) != size - 1:
            continue
        coeffs = [random_rational(rng, bound) for _ in pts]
        scale = 1
        for lam in coeffs:
            scale = scale * lam.denominator // math.gcd(scale, lam.denominator)
        ints = [lam.numerator * (scale // lam.denominator) for lam in coeffs]
        last = [sum(a * u[j] for a, u in zip(ints, pts)) for j in range(n)]
        if any(last):
            return pts + [last]


def _parameters(budget: int) -> list[Fraction]:
    # small rationals a/b in order of height, excluding 0
    out: list[Fraction] = []
    seen: set[Fraction] = set()
    h = 1
    while len(out) < budget:
        for b in range(1, h + 1):
            for a in (h, -h) if b < h else range(-h, h + 1):
                if a == 0:
                    continue
                x = Fraction(a, b)
                if x not in seen:
                    seen.add(x)
                    out.append(x)
        h += 1
    return out[:budget]


def _on_line(x: Sequence[int], y: Sequence[int], lam: Fraction) -> list[int]:
    # integer representative of x + lam * y
    return [lam.denominator * a + lam.numerator * b for a, b in zip(x, y)]


def verify_nonarch(spec: PadicSpec, n: int, samples: int, seed: int = 0, param_budget: int = 64,
                   bound: int = DEFAULT_BOUND, line_samples: int = 1000) -> VerificationReport:
    """(a) no dependent tuple of rational points is c_v-rainbow (asserted);
    (b) for points on sampled lines, how often a second point of the same colour
    turns up among ``param_budget`` small parameters (reported only).
    """
    if n < 2 or samples < 1:
        raise PgcolError("need n >= 2 and samples >= 1")
    p = spec.p
    start = time.perf_counter()
    report = VerificationReport("nonarch", f"p={p}, n={n}, samples={samples}, seed={seed}, B={bound}")
    sizes = list(range(3, n + 2))
    for i in range(samples):
        rng = SplitMix64.for_sample(seed, i)
        size = sizes[rng.randbelow(len(sizes))]
        tup = dependent_tuple(rng, n, size, bound)
        cols = [_cv_int(p, u) for u in tup]
        report.instances_total += 1
        report.instances_checked += 1
        if len(set(cols)) == len(cols):
            report.add_violation({
                "points": [[str(x) for x in u] for u in tup],  # integer representatives
                "colours": [f"coord:{k}" for k in cols],
            })

    params = _parameters(param_budget)
    found = tried = 0
    for i in range(line_samples):
        rng = SplitMix64.for_sample(seed ^ 0x5A5A5A5A, i)
        x, y = _clear(random_vector(rng, n, bound)), _clear(random_vector(rng, n, bound))
        if rank_q([x, y]) < 2:
            continue
        mu = random_rational(rng, bound)
        k = _cv_int(p, _on_line(x, y, mu))
        tried += 1
        others = [y] + [_on_line(x, y, lam) for lam in params if lam != mu]
        if any(_cv_int(p, w) == k for w in others):
            found += 1
    report.extra["line_points_tried"] = tried
    report.extra["second_point_found"] = found
    report.extra["second_point_rate"] = round(found / tried, 6) if tried else None
    report.wall_time = time.perf_counter() - start
    return report
