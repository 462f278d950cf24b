"""Compiled versus pure-Python GF(p)[[z]] kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times series_matmul and smith on random square matrices and on the R_c R_s
products that arise for a few sequences, checks both backends agree, and
prints one row per case.
"""
import argparse
import time

import numpy as np

from qtjantzen import kernel
from qtjantzen.jantzen import PRIMES, ModPBackend, composed_r, default_precision

P = PRIMES[0][0]


def _random(rng, D, N):
    A = rng.integers(0, P, size=(D, D, N), dtype=np.int64)
    A[:, :, 0] = np.eye(D, dtype=np.int64) * rng.integers(1, P)
    return A


def _jantzen_matrix(eps):
    p, q0 = PRIMES[0]
    bk = ModPBackend(p, q0, default_precision(eps))
    es, ec = tuple(sorted(eps, reverse=True)), tuple(sorted(eps))
    return bk.mul(composed_r(bk, eps, ec), composed_r(bk, es, eps))


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py, cc = kernel.get_backend("python"), kernel.get_backend("compiled")
    rng = np.random.default_rng(7)
    cases = [(f"random D={D} N={N}", _random(rng, D, N)) for D, N in ((8, 12), (16, 16), (32, 12))]
    cases += [(f"R_c R_s {eps}", _jantzen_matrix(eps)) for eps in ((3, 1, 3), (3, 3, 1, 1), (3, 5, 1, 7))]
    print(f"{'case':28s} {'op':8s} {'python':>10s} {'compiled':>10s} {'speedup':>8s} agree")
    for name, A in cases:
        A = np.ascontiguousarray(A)
        for op in ("matmul", "smith"):
            if op == "matmul":
                def f(m):
                    return lambda: m.series_matmul(A, A, P)
            else:
                def f(m):
                    return lambda: m.smith(A, P)
            tp, rp = _best(f(py), args.repeat)
            tc, rc = _best(f(cc), args.repeat)
            print(f"{name:28s} {op:8s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x {_same(rp, rc)}")


if __name__ == "__main__":
    main()
