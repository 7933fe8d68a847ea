"""Sweeps that check each structural statement on concrete instance families.

Every tag iterates a colouring family (all s-colourings in lexicographic order,
or seeded samples), evaluates the statement on each instance satisfying its
hypotheses, and returns a :class:`VerificationReport`. Exhaustive sweeps run
in lexicographic order on one thread, so the recorded counterexample is the
lexicographically smallest.
"""

from __future__ import annotations

import itertools
import time
from typing import Callable, Iterator

from .colouring import Colouring, check_easyequiv, find_rainbow_triangle
from .errors import BudgetExceeded, PgcolError
from .extremal import omega, random_rtf_colouring, random_target_colouring
from .geometry import Geometry, build_geometry, rank
from .report import VerificationReport
from .rng import SplitMix64
from .structure import (
    colour_masks,
    decompose,
    find_decomposer,
    lines_two_coloured,
    plane_case_colouring,
    plane_cases,
    restriction_targets,
    target_masks,
)

TAGS = (
    "main1",
    "easyequiv",
    "targetiffplane",
    "targetiffline",
    "fullbinary",
    "mainplane",
    "ljomega",
    "targetomega",
)

DESCRIPTIONS = {
    "main1": "rainbow-triangle-free, rank >= 2, >= 3 colours => a nonempty decomposer exists",
    "easyequiv": "no rainbow triangle <=> no rainbow circuit <=> |c(X)| <= r(X) for all X <=> for all flats",
    "targetiffplane": "target <=> every plane restriction is a target (n >= 3)",
    "targetiffline": "target <=> every line restriction is a target (q >= 3)",
    "fullbinary": "rainbow-triangle-free with exactly n colours => full flag with distinct layer colours",
    "mainplane": "plane: every line <= 2 colours <=> exactly one of the cases 1 / 2i / 2ii",
    "ljomega": "omega of each colour class = sum of omega over decomposition parts",
    "targetomega": "targets: omega of a union of colour classes = sum of their omegas",
}

DEFAULT_S = {
    "main1": 4,
    "easyequiv": 3,
    "targetiffplane": 2,
    "targetiffline": 2,
    "fullbinary": None,  # s = n
    "mainplane": 3,
    "ljomega": 3,
    "targetomega": 3,
}

DEFAULT_SWEEP_BUDGET = 2 * 10**6


def _body(c: Colouring) -> str:
    return " ".join(map(str, c.colours))


# each checker returns None (hypotheses fail), True (holds) or a witness dict


def _check_main1(c: Colouring):
    if c.n < 2 or len(c.used) < 3 or find_rainbow_triangle(c) is not None:
        return None
    return True if find_decomposer(c) is not None else {"reason": "no nonempty decomposer"}


def _check_easyequiv(c: Colouring):
    flags = check_easyequiv(c)
    return True if len(set(flags)) == 1 else {"flags": list(flags)}


def _check_target_restrictions(r: int):
    def check(c: Colouring):
        g = c.geometry
        lhs = target_masks(g, colour_masks(c), g.full_mask) is not None
        rhs = restriction_targets(c, r)
        return True if lhs == rhs else {"is_target": lhs, "restrictions_targets": rhs}

    return check


def _check_fullbinary(c: Colouring):
    if len(c.used) != c.n or find_rainbow_triangle(c) is not None:
        return None
    g = c.geometry
    res = target_masks(g, colour_masks(c), g.full_mask)
    if res is None:
        return {"reason": "not a target"}
    chain, layers = res
    ranks = [rank(g, [p for p in range(g.size) if (m >> p) & 1]) for m in chain]
    if ranks != list(range(c.n + 1)) or len(set(layers)) != c.n:
        return {"ranks": ranks, "layers": layers}
    return True


def _check_mainplane(c: Colouring, expected: str | None = None):
    lines_ok = lines_two_coloured(c)
    cases = plane_cases(c)
    if lines_ok != bool(cases) or len(cases) > 1:
        return {"lines_two_coloured": lines_ok, "cases": cases}
    if expected is not None and cases != [expected]:
        return {"expected": expected, "cases": cases}
    return True


def _check_ljomega(c: Colouring):
    if find_rainbow_triangle(c) is not None:
        return None
    g = c.geometry
    seq = decompose(c)
    for k, cls in c.classes.items():
        whole = omega(g, cls)
        cs = set(cls)
        parts = [omega(g, [p for p in f.points if p in cs]) for f in seq.flats]
        if whole != sum(parts):
            return {"colour": k, "omega": whole, "per_part": parts}
    return True


def _check_targetomega(c: Colouring):
    g = c.geometry
    if target_masks(g, colour_masks(c), g.full_mask) is None:
        return None
    return targetomega_witness(c)


def targetomega_witness(c: Colouring):
    g = c.geometry
    classes = c.classes
    w = {k: omega(g, pts) for k, pts in classes.items()}
    for size in range(2, len(classes) + 1):
        for sub in itertools.combinations(sorted(classes), size):
            pts = [p for k in sub for p in classes[k]]
            union = omega(g, pts)
            if union != sum(w[k] for k in sub):
                return {"colours": list(sub), "omega_union": union, "omega_each": [w[k] for k in sub]}
    return True


CHECKERS: dict[str, Callable] = {
    "main1": _check_main1,
    "easyequiv": _check_easyequiv,
    "targetiffplane": _check_target_restrictions(3),
    "targetiffline": _check_target_restrictions(2),
    "fullbinary": _check_fullbinary,
    "mainplane": _check_mainplane,
    "ljomega": _check_ljomega,
    "targetomega": _check_targetomega,
}


def _sampler(tag: str, g: Geometry, s: int) -> Callable[[SplitMix64, int], tuple[Colouring, str | None]]:
    q, n = g.q, g.n

    def uniform(rng):
        return Colouring(g, tuple(rng.randbelow(s) for _ in range(g.size)), s)

    def rtf(rng):
        return random_rtf_colouring(q, n, s, rng)

    def target(rng):
        return random_target_colouring(q, n, s, rng)

    if tag in ("main1", "ljomega", "fullbinary"):
        return lambda rng, i: (rtf(rng), None)
    if tag == "targetomega":
        return lambda rng, i: (target(rng), None)
    if tag in ("easyequiv",):
        return lambda rng, i: ((uniform if i % 2 else rtf)(rng), None)
    if tag in ("targetiffplane", "targetiffline"):
        return lambda rng, i: ((uniform if i % 2 else target)(rng), None)
    if tag == "mainplane":
        cases = ["1", "2i"] + (["2ii"] if q >= 3 else [])

        def pick(rng, i):
            j = i % (len(cases) + 1)
            if j == len(cases):
                return uniform(rng), None
            return plane_case_colouring(q, cases[j], rng, max(s, 3)), cases[j]

        return pick
    raise PgcolError(f"unknown tag {tag!r}")


def _preconditions(tag: str, q: int, n: int) -> None:
    if tag not in CHECKERS:
        raise PgcolError(f"unknown tag {tag!r}; choose from {', '.join(TAGS)}")
    if tag == "targetiffplane" and n < 3:
        raise PgcolError("targetiffplane needs n >= 3")
    if tag == "targetiffline" and q < 3:
        raise PgcolError("targetiffline needs q >= 3 (lines with at least four points)")
    if tag == "mainplane" and n != 3:
        raise PgcolError("mainplane concerns planes: n must be 3")


def colourings(g: Geometry, s: int, budget: int = DEFAULT_SWEEP_BUDGET) -> Iterator[Colouring]:
    total = s**g.size
    if total > budget:
        raise BudgetExceeded(f"{total} colourings exceed sweep budget {budget}")
    for cols in itertools.product(range(s), repeat=g.size):
        yield Colouring(g, cols, s)


def verify_theorem(tag: str, q: int, n: int, exhaustive: bool = True, samples: int = 1000,
                   seed: int = 0, s: int | None = None,
                   budget: int = DEFAULT_SWEEP_BUDGET) -> VerificationReport:
    _preconditions(tag, q, n)
    if s is None:
        s = DEFAULT_S[tag] or n
    g = build_geometry(q, n)
    check = CHECKERS[tag]
    mode = "exhaustive" if exhaustive else f"sampled({samples}, seed={seed})"
    report = VerificationReport(tag, f"PG({n - 1},{q}), s={s}, {mode}")
    start = time.perf_counter()
    if exhaustive:
        for c in colourings(g, s, budget):
            _record(report, c, check(c))
    else:
        sampler = _sampler(tag, g, s)
        for i in range(samples):
            c, expected = sampler(SplitMix64.for_sample(seed, i), i)
            res = check(c, expected) if tag == "mainplane" else check(c)
            _record(report, c, res)
    report.wall_time = time.perf_counter() - start
    return report


def _record(report: VerificationReport, c: Colouring, res) -> None:
    report.instances_total += 1
    if res is None:
        return
    report.instances_checked += 1
    if res is not True:
        report.add_violation({"colours": _body(c), "witness": res})
