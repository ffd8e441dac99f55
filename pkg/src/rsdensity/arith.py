"""Small integer helpers: prime lists, factorization, Moebius."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=8)
def _prime_array(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_up_to(limit: int) -> list[int]:
    return [int(p) for p in _prime_array(int(limit))]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs here are small)."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def factor_table(limit: int) -> list[dict[int, int]]:
    """Factorizations of 0..limit via a smallest-prime-factor sieve (entry 0 empty)."""
    spf = list(range(limit + 1))
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    table: list[dict[int, int]] = [{} for _ in range(limit + 1)]
    for m in range(2, limit + 1):
        p = spf[m]
        prev = table[m // p]
        cur = dict(prev)
        cur[p] = cur.get(p, 0) + 1
        table[m] = cur
    return table
