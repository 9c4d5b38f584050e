"""Compare the compiled kernel with the pure-Python engine.

    python3 benchmarks/bench_backends.py [--repeat N] [--large]

Each row solves one instance on both backends, checks that the memo tables
agree in size and cost, and prints the best wall time of ``--repeat`` runs.
"""
from __future__ import annotations

import argparse
import sys
import time

from ted import distance, gen_balanced, gen_comb, gen_comb_mirror, gen_random, gen_zigzag
from ted.backend import compiled_available


def instances(large: bool):
    yield "comb-32 dmrw", gen_comb(32), gen_comb_mirror(32), "dmrw"
    yield "comb-64 dmrw", gen_comb(64), gen_comb_mirror(64), "dmrw"
    yield "balanced-63 klein", gen_balanced(5), gen_balanced(5), "klein"
    yield "zigzag-64 sz", gen_zigzag(64), gen_zigzag(64), "sz"
    yield "random-120x80 dmrw", gen_random(120, 1, 4, "abc"), gen_random(80, 2, 4, "abc"), "dmrw"
    if large:
        yield "comb-128 dmrw", gen_comb(128), gen_comb_mirror(128), "dmrw"
        yield "balanced-127 dmrw", gen_balanced(6), gen_balanced(6), "dmrw"


def best_time(f, g, algorithm, backend, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = distance(f, g, None, algorithm, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--large", action="store_true", help="add instances that take tens of seconds in Python")
    args = ap.parse_args(argv)
    if not compiled_available():
        print("compiled kernel is not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    print(f"{'instance':22} {'subproblems':>12} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, f, g, algorithm in instances(args.large):
        tp, rp = best_time(f, g, algorithm, "python", args.repeat)
        tc, rc = best_time(f, g, algorithm, "compiled", args.repeat)
        if (rp.cost, rp.stats) != (rc.cost, rc.stats):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        print(f"{name:22} {rc.stats.subproblem_count:12d} {tp:10.3f} {tc:11.4f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
