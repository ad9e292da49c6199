"""Benchmark the hot kernels: numba JIT versus the pure-numpy fallback.

Run:  python benchmarks/bench_kernels.py [--sizes 64,256,1024] [--repeat 5]

The same inputs are fed to both backends and outputs are compared for exact
equality before timing, so the table is also a correctness spot-check.  The
JIT warm-up (first compilation) is excluded from the timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from carlitzlab import _kernels
from carlitzlab.fq import fq_field


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_conv(field, size: int, repeat: int, rng) -> dict:
    a = rng.integers(0, field.q, size)
    b = rng.integers(0, field.q, size)
    _kernels.set_backend("numpy")
    ref = _kernels.conv(field, a, b)
    row = {"kernel": f"conv q={field.q} n={size}"}
    row["numpy"] = _time(lambda: _kernels.conv(field, a, b), repeat)
    try:
        _kernels.set_backend("numba")
        out = _kernels.conv(field, a, b)  # warm-up / compile
        assert np.array_equal(out, ref), "backend mismatch"
        row["numba"] = _time(lambda: _kernels.conv(field, a, b), repeat)
    except RuntimeError:
        row["numba"] = None
    finally:
        _kernels.set_backend(None)
    return row


def bench_nullspace(field, rows: int, repeat: int, rng) -> dict:
    m = rng.integers(0, field.q, (rows, rows + 8))
    _kernels.set_backend("numpy")
    piv_ref, bas_ref = _kernels.nullspace(field, m)
    row = {"kernel": f"nullspace q={field.q} {rows}x{rows + 8}"}
    row["numpy"] = _time(lambda: _kernels.nullspace(field, m), repeat)
    try:
        _kernels.set_backend("numba")
        piv, bas = _kernels.nullspace(field, m)
        assert piv == piv_ref and np.array_equal(bas, bas_ref), "backend mismatch"
        row["numba"] = _time(lambda: _kernels.nullspace(field, m), repeat)
    except RuntimeError:
        row["numba"] = None
    finally:
        _kernels.set_backend(None)
    return row


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="64,256,1024")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(0)
    rows = []
    for q, (p, e) in [(3, (3, 1)), (4, (2, 2)), (9, (3, 2))]:
        field = fq_field(p, e)
        for n in sizes:
            rows.append(bench_conv(field, n, args.repeat, rng))
        rows.append(bench_nullspace(field, min(sizes[-1] // 4, 192), args.repeat, rng))
    width = max(len(r["kernel"]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy':>12}  {'numba':>12}  {'speedup':>8}")
    for r in rows:
        nb = f"{r['numba'] * 1e3:10.3f}ms" if r["numba"] is not None else "       n/a"
        sp = f"{r['numpy'] / r['numba']:7.1f}x" if r["numba"] else "     -"
        print(f"{r['kernel']:<{width}}  {r['numpy'] * 1e3:10.3f}ms  {nb}  {sp}")


if __name__ == "__main__":
    main()
