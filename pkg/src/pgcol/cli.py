"""Command-line interface: ``pgcol <command> ...``.

Exit codes: 0 success / verified, 1 counterexample or violation (or, for
``contains``, no copy found), 2 usage or format error, 3 budget exceeded,
4 internal theorem violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import appio, kernels
from .colouring import Colouring, contains_pattern
from .errors import BudgetExceeded, FormatError, PgcolError, RainbowTriangleError, TheoremViolation
from .extremal import (
    bose_burton_check,
    construct_block_colouring,
    construct_chain_colouring,
    construct_ternary_extremal,
    few_colour_flat_search,
    homogeneous_search,
    random_rtf_colouring,
    ramsey_search,
)
from .geometry import build_geometry
from .rational import PadicSpec, verify_nonarch
from .rng import SplitMix64
from .structure import decompose
from .verify import DESCRIPTIONS, TAGS, verify_theorem

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET, EXIT_THEOREM = 0, 1, 2, 3, 4


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_gen(args) -> int:
    if args.kind == "chain":
        cols = args.colours if args.colours is not None else list(range(args.n))
        c = construct_chain_colouring(args.q, args.n, cols, args.s)
    elif args.kind == "random":
        rng = SplitMix64(args.seed)
        if args.rtf:
            c = random_rtf_colouring(args.q, args.n, args.s or 3, rng)
        else:
            g = build_geometry(args.q, args.n)
            s = args.s or 2
            c = Colouring(g, tuple(rng.randbelow(s) for _ in range(g.size)), s)
    elif args.kind == "blocks":
        c = construct_block_colouring(args.q, args.n, args.k, args.seed)
    else:
        c = construct_ternary_extremal(args.n)
    _emit(appio.serialize_pgcol(c), args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    c = appio.read_pgcol(args.file)
    start = time.perf_counter()
    content = appio.analyze(c)
    if args.json:
        print(appio.dumps(content, time.perf_counter() - start))
        return EXIT_OK
    print(f"PG({c.n - 1},{c.q}) with s={c.s}, colours used: {sorted(c.used)}")
    print(f"rainbow triangle: {content['rainbow_triangle']}")
    chain = content["target_chain"]
    print("target: " + ("no" if chain is None else f"ranks {chain['ranks']}, layer colours {chain['layer_colours']}"))
    if content["decomposition"] is not None:
        print("decomposition:")
        for part in content["decomposition"]:
            print(f"  rank {part['rank']} colours {part['colours']}: {part['points']}")
    print(f"omega per colour: {content['omega_per_colour']}")
    h = content["homogeneous"]
    print(f"homogeneous: rank {h['rank']} avoiding {h['avoided']}: {h['flat']}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    c = appio.read_pgcol(args.file)
    try:
        seq = decompose(c)
    except RainbowTriangleError as exc:
        print(json.dumps({"error": "rainbow_triangle", "witness": list(exc.witness)}, sort_keys=True))
        return EXIT_VIOLATION
    parts = [
        {"points": list(p.flat.points), "rank": p.flat.rank, "colours": sorted(p.colouring.used),
         "body": " ".join(map(str, p.colouring.colours))}
        for p in seq.parts
    ]
    print(json.dumps({"parts": parts}, sort_keys=True, indent=2))
    return EXIT_OK


def cmd_contains(args) -> int:
    host, pattern = appio.read_pgcol(args.host), appio.read_pgcol(args.pattern)
    w = contains_pattern(host, pattern, budget=args.budget)
    if w is None:
        print(json.dumps({"contains": False}))
        return EXIT_VIOLATION
    print(json.dumps({"contains": True, "image": list(w.image), "matrix": [list(r) for r in w.matrix]},
                     sort_keys=True))
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = verify_theorem(args.tag, args.q, args.n, exhaustive=not args.samples, samples=args.samples or 0,
                         seed=args.seed, s=args.s)
    print(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_search(args) -> int:
    c = appio.read_pgcol(args.file)
    res = homogeneous_search(c) if args.kind == "homogeneous" else few_colour_flat_search(c, args.l)
    print(json.dumps({"avoided": list(res.avoided), "allowed": list(res.allowed),
                      "flat": list(res.flat.points), "rank": res.rank}, sort_keys=True))
    return EXIT_OK


def cmd_ramsey(args) -> int:
    res = ramsey_search(args.q, args.s, args.t, args.nmax, budget=args.budget)
    out = {"value": res.value, "lower": res.lower, "upper": res.upper,
           "budget_exhausted": res.exhausted_budget,
           "avoiding_colourings": {str(k): " ".join(map(str, v)) for k, v in res.witnesses.items()}}
    print(json.dumps(out, sort_keys=True, indent=2))
    return EXIT_OK


def cmd_padic(args) -> int:
    rep = verify_nonarch(PadicSpec(args.p), args.n, args.samples, args.seed,
                         param_budget=args.param_budget, line_samples=args.line_samples)
    print(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_bosburton(args) -> int:
    rep = bose_burton_check(args.n, args.t, "sampled" if args.samples else "exhaustive",
                            samples=args.samples or 0, seed=args.seed)
    print(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pgcol", description="Coloured projective geometries over GF(q).")
    p.add_argument("--backend", choices=["cython", "python"], help="force a kernel backend")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a colouring in pgcol format")
    g.add_argument("kind", choices=["chain", "random", "blocks", "ternary"])
    g.add_argument("--q", type=int, default=2)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--s", type=int)
    g.add_argument("--k", type=int, default=3, help="blocks: number of colours")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--colours", type=_int_list, help="chain: layer colours, e.g. 0,1,2")
    g.add_argument("--rtf", action="store_true", help="random: rainbow-triangle-free colouring")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="analyse a colouring")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("decompose", help="lift-join decomposition")
    d.add_argument("file")
    d.set_defaults(func=cmd_decompose)

    c = sub.add_parser("contains", help="search for a copy of PATTERN in HOST")
    c.add_argument("host")
    c.add_argument("pattern")
    c.add_argument("--budget", type=int, default=10**6)
    c.set_defaults(func=cmd_contains)

    v = sub.add_parser(
        "verify", help="check a structural statement on a colouring family",
        epilog="tags:\n" + "\n".join(f"  {t:15s} {DESCRIPTIONS[t]}" for t in TAGS),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    v.add_argument("tag", choices=TAGS)
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="all s-colourings (default)")
    mode.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--s", type=int)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="homogeneous / few-colour flat search")
    s.add_argument("kind", choices=["homogeneous", "fewcolours"])
    s.add_argument("file")
    s.add_argument("--l", type=int, default=2)
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("ramsey", help="small geometric Ramsey numbers")
    r.add_argument("--q", type=int, required=True)
    r.add_argument("--s", type=int, required=True)
    r.add_argument("--t", type=int, required=True)
    r.add_argument("--nmax", type=int, required=True)
    r.add_argument("--budget", type=int, default=10**7)
    r.set_defaults(func=cmd_ramsey)

    pa = sub.add_parser("padic", help="sampled checks of the p-adic colouring")
    pa.add_argument("--p", type=int, required=True)
    pa.add_argument("--n", type=int, required=True)
    pa.add_argument("--samples", type=int, required=True)
    pa.add_argument("--seed", type=int, default=0)
    pa.add_argument("--param-budget", type=int, default=64)
    pa.add_argument("--line-samples", type=int, default=1000)
    pa.set_defaults(func=cmd_padic)

    b = sub.add_parser("bosburton", help="Bose-Burton bound checks over GF(2)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--t", type=int)
    b.add_argument("--samples", type=int)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bosburton)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.backend:
            kernels.set_backend(args.backend)
        return args.func(args)
    except TheoremViolation as exc:
        print(f"THEOREM_VIOLATION: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PgcolError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
