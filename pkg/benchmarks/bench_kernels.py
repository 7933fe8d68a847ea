"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--samples 200] [--repeat 3]

Each workload runs on the same seeded inputs under every available backend;
results are checked to agree before timings are reported.
"""

from __future__ import annotations

import argparse
import time

from pgcol import build_geometry, decompose, kernels
from pgcol.extremal import random_rtf_colouring
from pgcol.rng import SplitMix64


def _random_sets(g, k, rng):
    return [[p for p in range(g.size) if rng.randbelow(4)] for _ in range(k)]


def workloads(samples: int, seed: int):
    rng = SplitMix64(seed)
    g5, g33 = build_geometry(2, 5), build_geometry(3, 3)
    rtf = [random_rtf_colouring(2, 5, 3, SplitMix64.for_sample(seed, i)) for i in range(samples)]
    plain = [[rng.randbelow(3) for _ in range(g33.size)] for _ in range(samples)]
    halves = _random_sets(g5, samples, rng)
    small = [rng.sample(range(g5.size), 3) for _ in range(samples)]
    g6 = build_geometry(2, 6)
    dense = _random_sets(g6, samples, rng)

    def member(g, pts):
        m = bytearray(g.size)
        for p in pts:
            m[p] = 1
        return m

    return {
        "rainbow triangle, PG(2,3)": lambda: [kernels.first_rainbow_triangle(g33, c) for c in plain],
        "rainbow triangle (none), PG(4,2)": lambda: [kernels.first_rainbow_triangle(g5, c.colours) for c in rtf],
        "closure of 3 points, PG(4,2)": lambda: [kernels.closure(g5, s) for s in small],
        "omega, PG(4,2)": lambda: [kernels.omega(g5, member(g5, s)) for s in halves],
        "omega, PG(5,2)": lambda: [kernels.omega(g6, member(g6, s))[0] for s in dense],
        "decompose, PG(4,2)": lambda: [[p.flat.points for p in decompose(c).parts] for c in rtf],
    }


def run(samples: int, repeat: int, seed: int) -> None:
    backends = kernels.available()
    print(f"backends: {', '.join(b.name for b in backends)}; {samples} inputs per workload, best of {repeat}")
    jobs = workloads(samples, seed)
    width = max(map(len, jobs))
    print(f"{'workload':{width}s}  " + "  ".join(f"{b.name:>10s}" for b in backends) + "   speedup")
    for name, job in jobs.items():
        times, outputs = [], []
        for b in backends:
            with kernels.using(b.name):
                best = float("inf")
                for _ in range(repeat):
                    start = time.perf_counter()
                    out = job()
                    best = min(best, time.perf_counter() - start)
            times.append(best)
            outputs.append(out)
        if any(o != outputs[0] for o in outputs[1:]):
            raise SystemExit(f"backends disagree on {name!r}")
        ratio = f"{times[-1] / times[0]:8.1f}x" if len(times) > 1 else "       -"
        print(f"{name:{width}s}  " + "  ".join(f"{t * 1e3:8.1f}ms" for t in times) + f"  {ratio}")


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args(argv)
    run(args.samples, args.repeat, args.seed)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
