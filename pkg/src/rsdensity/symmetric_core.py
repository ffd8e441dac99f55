"""Partitions of bounded length and Schur polynomials on complex multisets."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .kernels import schur_ssyt


class Partition(tuple):
    """A non-increasing tuple of positive integers (trailing zeros trimmed)."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


@lru_cache(maxsize=None)
def _partitions(max_length: int, total: int, cap: int) -> tuple:
    # partitions of total into <= max_length parts, each <= cap, descending lex
    if total == 0:
        return ((),)
    if max_length == 0:
        return ()
    out = []
    for first in range(min(total, cap), 0, -1):
        for rest in _partitions(max_length - 1, total - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(max_length: int, total: int) -> list[Partition]:
    """Partitions of ``total`` into at most ``max_length`` parts, descending lex.

    A negative total gives the empty list; total 0 gives the zero partition.
    """
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    if total < 0:
        return []
    return [Partition(p) for p in _partitions(max_length, total, total)]


def schur_eval(mu: Sequence[int], x: Sequence[complex]) -> complex:
    """Evaluate s_mu at the multiset x via the semistandard-tableau sum.

    Repeated values and zeros are fine (no division anywhere).
    """
    mu = Partition(mu)
    if mu.length > len(x):
        raise ValueError(f"partition {tuple(mu)} has more parts than {len(x)} variables")
    return schur_ssyt(tuple(mu), [complex(v) for v in x])


def product_series_coefficient(blocks: Sequence[Sequence[complex]], r: int) -> complex:
    """Coefficient of X^r in the product of the power series in ``blocks``.

    Each block lists coefficients c_0, c_1, ... with c_0 = 1; missing
    high-order entries are treated as zero.
    """
    if r < 0:
        return 0j
    for b in blocks:
        if len(b) == 0 or b[0] != 1:
            raise ValueError("every block must start with coefficient 1")
    acc = [0j] * (r + 1)
    acc[0] = 1 + 0j
    for b in blocks:
        nxt = [0j] * (r + 1)
        top = min(len(b) - 1, r)
        for i, a in enumerate(acc):
            if a == 0:
                continue
            for j in range(0, min(top, r - i) + 1):
                nxt[i + j] += a * b[j]
        acc = nxt
    return acc[r]


def cauchy_pairing(A: Sequence[complex], B: Sequence[complex], r: int) -> complex:
    """Sum over partitions mu of r with at most n parts of s_mu(A) s_mu(B)."""
    if len(A) != len(B):
        raise ValueError("multisets must have equal size")
    return sum(
        (schur_eval(mu, A) * schur_eval(mu, B) for mu in enumerate_partitions(len(A), r)),
        0j,
    )


def _prod(values: Sequence[complex]) -> complex:
    out = 1 + 0j
    for v in values:
        out *= v
    return out


def reduced_pairing(A: Sequence[complex], B: Sequence[complex], r: int) -> complex:
    """The Cauchy pairing with the last row of each partition split off.

    Every mu in P_n(r) with last part k is (k^n) + mu' with mu' in
    P_{n-1}(r - nk), and s_mu = (prod A)^k s_mu'. Summing in that form gives
    sum_k (prod A * prod B)^k sum_{mu' in P_{n-1}(r-nk)} s_mu'(A) s_mu'(B).
    """
    n = len(A)
    if len(B) != n:
        raise ValueError("multisets must have equal size")
    if r < 0:
        return 0j
    if n == 0:
        return 1 + 0j if r == 0 else 0j
    weight = _prod(A) * _prod(B)
    total = 0j
    for k in range(r // n + 1):
        inner = sum(
            (schur_eval(mu, A) * schur_eval(mu, B) for mu in enumerate_partitions(n - 1, r - n * k)),
            0j,
        )
        total += weight**k * inner
    return total
