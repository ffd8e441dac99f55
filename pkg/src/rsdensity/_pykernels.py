"""Pure-Python versions of the compiled kernels (same signatures, same results)."""

from __future__ import annotations

import math

import numpy as np


def schur_ssyt(mu, x):
    """Schur polynomial s_mu(x) as a sum over semistandard tableaux.

    Tableaux are enumerated row by row through Gelfand-Tsetlin patterns; the
    sub-sums for a fixed (level, shape) are memoized.
    """
    n = len(x)
    mu = tuple(int(m) for m in mu)
    if len(mu) > n:
        raise ValueError("partition longer than the number of variables")
    if n == 0:
        return complex(1.0)
    x = [complex(v) for v in x]
    lam = mu + (0,) * (n - len(mu))
    deg = sum(lam)
    pw = [[1.0 + 0j] * (deg + 1) for _ in range(n)]
    for j in range(n):
        for e in range(1, deg + 1):
            pw[j][e] = pw[j][e - 1] * x[j]
    memo = {}

    def level(k, shape):
        if k == 1:
            return pw[0][shape[0]]
        key = (k, shape)
        hit = memo.get(key)
        if hit is not None:
            return hit
        size = sum(shape)
        acc = 0j
        ranges = [range(shape[i + 1], shape[i] + 1) for i in range(k - 1)]
        for nu in _product(ranges):
            acc += pw[k - 1][size - sum(nu)] * level(k - 1, nu)
        memo[key] = acc
        return acc

    return complex(level(n, lam))


def _product(ranges):
    # itertools.product in the same odometer order as the compiled kernel
    import itertools

    return itertools.product(*ranges)


def residue_prime_counts(x, q, segment=1 << 18):
    """Count primes p <= x in each residue class mod q (numpy segmented sieve)."""
    x = int(x)
    q = int(q)
    if q < 1:
        raise ValueError("modulus must be positive")
    counts = np.zeros(q, dtype=np.int64)
    if x < 2:
        return [0] * q, 0
    root = math.isqrt(x)
    small = np.ones(root + 1, dtype=bool)
    small[:2] = False
    for i in range(2, math.isqrt(root) + 1):
        if small[i]:
            small[i * i :: i] = False
    base = np.flatnonzero(small)
    total = 0
    lo = 2
    while lo <= x:
        hi = min(lo + segment, x + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            seg[start - lo :: p] = False
        idx = np.flatnonzero(seg) + lo
        counts += np.bincount(idx % q, minlength=q)
        total += idx.size
        lo = hi
    return [int(c) for c in counts], int(total)


def power_sum_scan(z, K, lead):
    """First k in [K, 2K] with |sum z_i^k| >= (lead/50)^k; see the compiled twin."""
    z = [complex(v) for v in z]
    r = lead / 50.0
    cur = [1.0 + 0j] * len(z)
    for _ in range(1, K):
        cur = [c * b for c, b in zip(cur, z)]
    thr = 1.0
    for _ in range(K):
        thr *= r
    best = 0.0
    for k in range(K, 2 * K + 1):
        cur = [c * b for c, b in zip(cur, z)]
        s = 0j
        for c in cur:
            s += c
        mag = abs(s)
        if mag >= thr:
            return k, mag, thr
        if thr > 0 and mag / thr > best:
            best = mag / thr
        thr *= r
    return -1, best, 0.0
