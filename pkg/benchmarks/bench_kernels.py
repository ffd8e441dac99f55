"""Compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--quick]

Each row reports the best-of-N wall time for both backends, the speedup, and
whether the two results agree.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from rsdensity import _pykernels

try:
    from rsdensity import _ckernels
except ImportError:
    _ckernels = None


def cases(quick: bool):
    rng = np.random.default_rng(0)
    x4 = list(np.exp(2j * np.pi * rng.uniform(size=4)))
    x6 = list(rng.uniform(0.5, 1.0, 6) * np.exp(2j * np.pi * rng.uniform(size=6)))
    z = list(np.sqrt(rng.uniform(0, 1, 8)) * np.exp(2j * np.pi * rng.uniform(0, 1, 8)))
    sieve_x = 10**6 if quick else 10**7
    return [
        ("schur (4,3,1) n=4", "schur_ssyt", ((4, 3, 1), x4)),
        ("schur (6,4,2,1) n=6", "schur_ssyt", ((6, 4, 2, 1), x6)),
        (f"sieve x={sieve_x:.0e} q=12", "residue_prime_counts", (sieve_x, 12)),
        ("power sum nu=8 K=12", "power_sum_scan", (z, 12, abs(z[0]))),
    ]


def agree(a, b) -> bool:
    if isinstance(a, tuple) and isinstance(a[0], (list, tuple, np.ndarray)):
        return list(a[0]) == list(b[0]) and a[1] == b[1]
    if isinstance(a, tuple):
        return a[0] == b[0] and abs(a[1] - b[1]) <= 1e-9 * (1 + abs(b[1]))
    return abs(a - b) <= 1e-9 * (1 + abs(b))


def best(fn, args, repeat: int) -> float:
    timer = timeit.Timer(lambda: fn(*args))
    n, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=n)) / n


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller sieve bound")
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled extension not built; run: pip install -e . --no-build-isolation")
    print(f"{'kernel':28s} {'cython':>12s} {'python':>12s} {'speedup':>9s}  agree")
    for label, name, kargs in cases(args.quick):
        fc, fp = getattr(_ckernels, name), getattr(_pykernels, name)
        tc, tp = best(fc, kargs, args.repeat), best(fp, kargs, args.repeat)
        ok = agree(fc(*kargs), fp(*kargs))
        print(f"{label:28s} {tc * 1e3:10.3f}ms {tp * 1e3:10.3f}ms {tp / tc:8.1f}x  {ok}")


if __name__ == "__main__":
    main()
