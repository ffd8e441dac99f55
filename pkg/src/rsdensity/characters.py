"""Dirichlet characters modulo prime powers, stored by exponent vectors.

For odd p, (Z/p^E)^* is cyclic on a generator g of (Z/p^2)^* and a character
is an index j mod phi(p^E) with chi(g) = exp(2 pi i j / phi(p^E)).
For p = 2 the group is {+-1} x <5> and a character is (eps, j mod 2^{E-2}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import factorize


@lru_cache(maxsize=None)
def primitive_root_p2(p: int) -> int:
    """A generator of (Z/p^k)^* for every k (odd p)."""
    phi = p - 1
    qs = list(factorize(phi)) if phi > 1 else []
    for g in range(2, p + 1):
        if g % p == 0:
            continue
        if all(pow(g, phi // q, p) != 1 for q in qs):
            return g if pow(g, phi, p * p) != 1 else g + p
    return 1  # p = 2 is not used here; (Z/3)^* handled by the loop


def _group_order(p: int, E: int) -> int:
    if p == 2:
        return 2 ** max(E - 2, 0)
    return (p - 1) * p ** (E - 1) if E >= 1 else 1


@dataclass(frozen=True)
class PrimePowerCharacter:
    p: int
    E: int
    j: int
    eps: int = 0

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % _group_order(self.p, self.E))
        keep_sign = self.p == 2 and self.E >= 2
        object.__setattr__(self, "eps", self.eps % 2 if keep_sign else 0)

    def __mul__(self, other: "PrimePowerCharacter") -> "PrimePowerCharacter":
        if (self.p, self.E) != (other.p, other.E):
            raise ValueError("characters live on different groups")
        return PrimePowerCharacter(self.p, self.E, self.j + other.j, self.eps + other.eps)

    def inverse(self) -> "PrimePowerCharacter":
        return PrimePowerCharacter(self.p, self.E, -self.j, self.eps)

    @property
    def is_trivial(self) -> bool:
        return self.j == 0 and self.eps == 0

    @property
    def conductor_exponent(self) -> int:
        """Smallest k such that the character factors through (Z/p^k)^*."""
        if self.is_trivial:
            return 0
        p, E = self.p, self.E
        if p == 2:
            if self.j == 0:
                return 2
            k = 3
        else:
            k = 1
        while self.j % (p ** (E - k)) != 0:
            k += 1
        return k

    @property
    def swan_exponent(self) -> int:
        return max(self.conductor_exponent - 1, 0)

    def value(self, x: int) -> complex:
        """chi(x) for x coprime to p (0 otherwise)."""
        p, E = self.p, self.E
        if x % p == 0:
            return 0j
        if p == 2:
            if E < 2:
                return 1 + 0j
            sign, l = _log2(x % 2**E, E)
            phase = self.eps * sign / 2 + (self.j * l / _group_order(2, E) if E >= 3 else 0)
        else:
            l = _dlog(p, E)[x % p**E]
            phase = self.j * l / _group_order(p, E)
        return cmath.exp(2j * math.pi * phase)


@lru_cache(maxsize=64)
def _dlog(p: int, E: int) -> dict:
    g = primitive_root_p2(p)
    mod = p**E
    table, v = {}, 1
    for i in range(_group_order(p, E)):
        table[v] = i
        v = v * g % mod
    return table


def _log2(x: int, E: int) -> tuple:
    mod = 2**E
    sign = 0 if x % 4 == 1 else 1
    y = x if sign == 0 else (-x) % mod
    v, l = 1, 0
    while v != y:
        v = v * 5 % mod
        l += 1
    return sign, l


def character_of_exponent(p: int, E: int, k: int, u: int = 1, eps: int = 1) -> PrimePowerCharacter:
    """A character mod p^E of conductor exactly p^k (u selects which one)."""
    if not 0 <= k <= E:
        raise ValueError("need 0 <= k <= E")
    if k == 0:
        return PrimePowerCharacter(p, E, 0, 0)
    if p == 2:
        if k == 1:
            raise ValueError("no character has conductor exponent 1 at p = 2")
        if k == 2:
            return PrimePowerCharacter(2, E, 0, 1)
        return PrimePowerCharacter(2, E, 2 ** (E - k) * (2 * (u // 2) + 1), eps)
    if k == 1:
        u = u % (p - 1) or 1
        return PrimePowerCharacter(p, E, p ** (E - 1) * u)
    u = u if u % p else u + 1
    return PrimePowerCharacter(p, E, p ** (E - k) * u)


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod q assembled from its prime-power components."""

    q: int
    components: tuple

    def __call__(self, x: int) -> complex:
        if math.gcd(x, self.q) != 1:
            return 0j
        out = 1 + 0j
        for c in self.components:
            out *= c.value(x)
        return out

    @property
    def is_trivial(self) -> bool:
        return all(c.is_trivial for c in self.components)


def dirichlet_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q in a fixed deterministic order."""
    parts = sorted(factorize(q).items()) if q > 1 else []
    per = []
    for p, e in parts:
        if p == 2:
            eps_range = range(2) if e >= 2 else range(1)
            per.append([PrimePowerCharacter(2, e, j, s) for s in eps_range for j in range(_group_order(2, e))])
        else:
            per.append([PrimePowerCharacter(p, e, j) for j in range(_group_order(p, e))])
    out = [DirichletCharacter(q, ())]
    for choices in per:
        out = [DirichletCharacter(q, d.components + (c,)) for d in out for c in choices]
    return out
