"""Compare the compiled and pure-Python Jacobi kernels.

    python3 benchmarks/bench_eig.py [--reps 200] [--dims 2,3,4,8,16]
"""
import argparse
import time

import numpy as np

from traceineq import _backend, sampling
from traceineq.spectral import CONV_RTOL, MAX_SWEEPS


def time_kernel(kernel, mats, reps):
    best = np.inf
    for _ in range(reps):
        start = time.perf_counter()
        for M in mats:
            a = np.array(M, dtype=complex, order="C")
            v = np.eye(len(M), dtype=complex)
            kernel(a, v, CONV_RTOL * np.linalg.norm(M), MAX_SWEEPS)
        best = min(best, time.perf_counter() - start)
    return best / len(mats)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--count", type=int, default=200, help="matrices per size")
    ap.add_argument("--dims", default="2,3,4,8,16")
    args = ap.parse_args(argv)
    kernels = _backend.KERNELS
    print(f"kernels available: {', '.join(sorted(kernels))}; import-time default: {_backend.BACKEND}")
    print(f"{'n':>4} " + " ".join(f"{k + ' (us)':>16}" for k in sorted(kernels)) + f" {'speedup':>9}")
    for n in (int(d) for d in args.dims.split(",")):
        mats = [sampling.sample_hermitian(n, 7, j) for j in range(args.count)]
        t = {k: time_kernel(kernels[k], mats, args.reps) for k in sorted(kernels)}
        speed = f"{t['python'] / t['compiled']:9.1f}x" if "compiled" in t else f"{'-':>9}"
        print(f"{n:>4} " + " ".join(f"{t[k] * 1e6:16.2f}" for k in sorted(kernels)) + f" {speed}")


if __name__ == "__main__":
    main()
