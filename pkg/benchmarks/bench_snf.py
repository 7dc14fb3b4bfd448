"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_snf.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from thomason_lab import _kernels
from thomason_lab.homology import chain_complex
from thomason_lab.simplicial import boundary, product, sd, simplex


def workloads():
    rng = np.random.default_rng(7)
    yield "random 60x60 in [-9, 9]", [rng.integers(-9, 10, size=(60, 60))]
    yield "random 120x80 sparse", [rng.integers(-1, 2, size=(120, 80)) * (rng.random((120, 80)) < 0.1)]
    for name, X in [
        ("Sd^2 (D1 x D1)", sd(sd(product(simplex(1), simplex(1)).space))),
        ("Sd^2 bd D3", sd(sd(boundary(3)))),
        ("Sd D3 x D1", sd(product(simplex(3), simplex(1)).space)),
    ]:
        cc = chain_complex(X)
        yield f"{name} boundaries {list(X.counts())}", [cc.d(n) for n in range(1, cc.top_dim + 1)]


def timed(mats, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = [_kernels.invariant_factors(M, backend) for M in mats]
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels._ext is None:
        print("compiled kernel not built; only the Python kernel is available")
    print(f"{'workload':52} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, mats in workloads():
        tp, ref = timed(mats, "python", args.repeat)
        if _kernels._ext is None:
            print(f"{name:52} {tp * 1e3:10.1f}")
            continue
        tc, got = timed(mats, "cython", args.repeat)
        assert got == ref, name
        print(f"{name:52} {tp * 1e3:10.1f} {tc * 1e3:10.1f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
