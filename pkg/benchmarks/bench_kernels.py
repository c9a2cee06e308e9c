"""Compare the compiled kernels with the numpy fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Each kernel is timed on both backends with identical inputs and the outputs
are checked for equality.  ``--end-to-end`` also times a full corpus run in a
subprocess per backend (``SUBDIVLAB_PURE_PYTHON=1`` selects the fallback).
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from subdivlab._kernels import compiled_backend, python_backend


def _int_stack(rng, length, rows, cols, bits):
    vals = [int(x) for x in rng.integers(-(1 << 30), 1 << 30, size=length * rows * cols)]
    vals = [v << (bits - 30) if bits > 30 else v for v in vals]
    arr = np.empty(length * rows * cols, dtype=object)
    arr[:] = vals
    return arr.reshape(length, rows, cols)


def _cases(rng):
    mask = _int_stack(rng, 6, 2, 2, 40)
    long_int = _int_stack(rng, 400, 2, 2, 200)
    col = _int_stack(rng, 300, 2, 1, 120)
    fl = rng.standard_normal((2000, 2, 2)) + 1j * rng.standard_normal((2000, 2, 2))
    fm = rng.standard_normal((6, 2, 2)).astype(complex)
    return [
        ("conv_int 400x6 (200-bit)", "conv_int", (long_int, mask)),
        ("subdivide_int 400x6 (200-bit)", "subdivide_int", (long_int, mask)),
        ("dconv_int step 64, 300 cols", "dconv_int", (mask, col, 64)),
        ("conv_float 2000x6", "conv_float", (fl, fm)),
        ("subdivide_float 2000x6", "subdivide_float", (fl, fm)),
    ]


def _same(x, y):
    if x.dtype == object:
        return x.shape == y.shape and all(a == b for a, b in zip(x.ravel().tolist(), y.ravel().tolist()))
    return np.allclose(x, y, rtol=1e-12, atol=1e-12)


def run_kernels(repeat: int) -> None:
    if compiled_backend is None:
        print("compiled backend not built; only the fallback is available")
    rng = np.random.default_rng(7)
    print(f"{'kernel':34s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s}")
    for label, name, args in _cases(rng):
        py = getattr(python_backend, name)
        tp = min(timeit.repeat(lambda: py(*args), number=1, repeat=repeat)) * 1e3
        if compiled_backend is None:
            print(f"{label:34s} {tp:12.2f} {'-':>14s} {'-':>8s}")
            continue
        cy = getattr(compiled_backend, name)
        if not _same(py(*args), cy(*args)):
            raise SystemExit(f"{name}: backends disagree")
        tc = min(timeit.repeat(lambda: cy(*args), number=1, repeat=repeat)) * 1e3
        print(f"{label:34s} {tp:12.2f} {tc:14.2f} {tp / tc:8.2f}")


def run_end_to_end() -> None:
    cmd = [sys.executable, "-m", "subdivlab", "corpus", "run", "ex3"]
    for label, env in (("python", {"SUBDIVLAB_PURE_PYTHON": "1"}), ("default", {})):
        t0 = time.perf_counter()
        subprocess.run(cmd, check=True, stdout=subprocess.DEVNULL, env={**os.environ, **env})
        print(f"corpus run ex3 [{label:7s}] {time.perf_counter() - t0:8.2f} s")


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--end-to-end", action="store_true")
    args = p.parse_args(argv)
    run_kernels(args.repeat)
    if args.end_to_end:
        run_end_to_end()


if __name__ == "__main__":
    main()
