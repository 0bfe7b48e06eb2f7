"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Each workload is run on both backends and the results are compared before
the timings are printed.
"""

import argparse
import random
import time

from unitdist import _purekernels as pure
from unitdist.extremal import INTERTWINE_3, SQUARE, TARDOS_A
from unitdist.matrix import ValueMatrix, ZeroOneMatrix

try:
    from unitdist import _kernels as compiled
except ImportError:
    compiled = None


def workloads(rng):
    hosts = [ZeroOneMatrix([[rng.randint(0, 1) for _ in range(12)] for _ in range(12)]) for _ in range(200)]
    pats = [SQUARE, TARDOS_A, INTERTWINE_3]
    yield "contains 12x12 x 600", lambda k: [
        k.contains(h.row_masks(), h.cols, p.row_masks(), p.cols) for h in hosts for p in pats
    ]
    yield "ex(5,5,TARDOS_A)", lambda k: k.ex_search(5, 5, TARDOS_A.row_masks(), TARDOS_A.cols, 10**8)[0]
    yield "ex(5,5,INTERTWINE_3)", lambda k: k.ex_search(5, 5, INTERTWINE_3.row_masks(), INTERTWINE_3.cols, 10**8)[0]
    # increasing rows and columns: no witness, full scan
    mats = [ValueMatrix([[i * 40 + j for j in range(40)] for i in range(40)])]
    mats += [ValueMatrix([[rng.randint(0, 50) for _ in range(30)] for _ in range(30)]) for _ in range(20)]
    ranks = [m.ranks() for m in mats]
    yield "obtuse scan 40x40 / 30x30", lambda k: [k.obtuse_scan(r) for r in ranks]


def bench(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if compiled is None:
        print("compiled kernels not built; timing the pure backend only")
    print(f"{'workload':30s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, work in workloads(random.Random(args.seed)):
        tp, rp = bench(lambda: work(pure), args.repeat)
        if compiled is None:
            print(f"{name:30s} {tp:10.4f}")
            continue
        tc, rc = bench(lambda: work(compiled), args.repeat)
        if repr(rp) != repr(rc):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:30s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
