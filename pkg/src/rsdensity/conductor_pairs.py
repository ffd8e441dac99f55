"""Artin and Swan exponent bounds for pairs of local representations.

Weil-Deligne representations enter only through (dimension, Artin exponent)
of their indecomposable summands. An exact model built from Dirichlet
characters of p-power conductor gives true tensor conductors to test against.
All arithmetic is exact (Fraction / int).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .characters import PrimePowerCharacter, character_of_exponent

DEFAULT_E = 6


@dataclass(frozen=True)
class WDRep:
    """Direct sum of indecomposables, each given as (dimension, Artin exponent)."""

    summands: tuple

    def __init__(self, summands: Iterable[tuple]):
        clean = []
        for d, a in summands:
            d, a = int(d), Fraction(a)
            if d < 1 or a < 0:
                raise ValueError(f"bad summand ({d}, {a})")
            clean.append((d, a))
        object.__setattr__(self, "summands", tuple(clean))

    @property
    def dim(self) -> int:
        return sum(d for d, _ in self.summands)

    @property
    def artin(self) -> Fraction:
        return sum((a for _, a in self.summands), Fraction(0))

    def slopes(self) -> list[Fraction]:
        out = []
        for d, a in self.summands:
            out.extend([a / d] * d)
        return sorted(out)


def pair_bound(sigma: WDRep, tau: WDRep, same_det_unramified: bool) -> Fraction:
    """m*a + n*b - c*min(a, b) with c = 2 under the determinant hypothesis, else 1."""
    n, a = sigma.dim, sigma.artin
    m, b = tau.dim, tau.artin
    return m * a + n * b - (2 if same_det_unramified else 1) * min(a, b)


def indecomp_pair(sigma_block: tuple, tau_block: tuple) -> tuple[Fraction, bool]:
    """Bound nm*max(a/n, b/m) for two indecomposables; exact when the slopes differ."""
    (n, a), (m, b) = sigma_block, tau_block
    sa, sb = Fraction(a) / n, Fraction(b) / m
    return n * m * max(sa, sb), sa != sb


def det_bound(sigma: WDRep) -> Fraction:
    """Largest slope of sigma; bounds the Artin exponent of det(sigma)."""
    s = sigma.slopes()
    return s[-1] if s else Fraction(0)


@dataclass(frozen=True)
class CharacterRep:
    """Sum of Dirichlet characters of conductor p^k_i (same p, same ambient E)."""

    chars: tuple

    def __init__(self, chars: Sequence[PrimePowerCharacter]):
        chars = tuple(chars)
        if not chars:
            raise ValueError("empty representation")
        if len({(c.p, c.E) for c in chars}) != 1:
            raise ValueError("all characters must share the same prime and modulus")
        object.__setattr__(self, "chars", chars)

    @property
    def p(self) -> int:
        return self.chars[0].p

    @property
    def dim(self) -> int:
        return len(self.chars)

    @property
    def artin(self) -> int:
        return sum(c.conductor_exponent for c in self.chars)

    @property
    def swan(self) -> int:
        return sum(c.swan_exponent for c in self.chars)

    def det(self) -> PrimePowerCharacter:
        out = self.chars[0]
        for c in self.chars[1:]:
            out = out * c
        return out

    def contragredient(self) -> "CharacterRep":
        return CharacterRep([c.inverse() for c in self.chars])

    def as_wdrep(self) -> WDRep:
        return WDRep([(1, c.conductor_exponent) for c in self.chars])


def tensor_conductor_exact(sigma: CharacterRep, tau: CharacterRep) -> int:
    """Sum over pairs of the conductor exponent of chi_i * eta_j."""
    if sigma.p != tau.p:
        raise ValueError("representations over different primes")
    return sum((c * d).conductor_exponent for c in sigma.chars for d in tau.chars)


def tensor_swan_exact(sigma: CharacterRep, tau: CharacterRep) -> int:
    if sigma.p != tau.p:
        raise ValueError("representations over different primes")
    return sum((c * d).swan_exponent for c in sigma.chars for d in tau.chars)


def swan_pair_bound(sigma, tau, sw_det_zero: bool) -> int | Fraction:
    """dim(tau)Sw(sigma) + dim(sigma)Sw(tau) - 2 min(Sw(sigma), Sw(tau)).

    sigma and tau are CharacterReps or (dimension, Swan exponent) pairs. Only
    the case Sw(det sigma det tau) = 0 is covered.
    """
    if not sw_det_zero:
        raise ValueError("the Swan bound is only stated when det(sigma)det(tau) is tame")
    n, sa = (sigma.dim, sigma.swan) if isinstance(sigma, CharacterRep) else sigma
    m, sb = (tau.dim, tau.swan) if isinstance(tau, CharacterRep) else tau
    return m * sa + n * sb - 2 * min(sa, sb)


def bh_tightness_witness(n: int, a: int, p: int = 3, E: int | None = None):
    """sigma = (n-1 trivial) + chi with Ar(chi) = a, tau = its contragredient.

    Returns (sigma, tau, exact tensor conductor), the latter equal to (2n-2)a.
    """
    if n < 2 or a < 0:
        raise ValueError("need n >= 2 and a >= 0")
    E = max(DEFAULT_E, a) if E is None else E
    chi = character_of_exponent(p, E, a)
    triv = PrimePowerCharacter(p, E, 0)
    sigma = CharacterRep([triv] * (n - 1) + [chi])
    tau = sigma.contragredient()
    return sigma, tau, tensor_conductor_exact(sigma, tau)


def _random_char(rng: np.random.Generator, p: int, E: int) -> PrimePowerCharacter:
    ks = [k for k in range(E + 1) if not (p == 2 and k == 1)]
    k = int(rng.choice(ks))
    return character_of_exponent(p, E, k, u=int(rng.integers(1, 1 << 30)), eps=int(rng.integers(0, 2)))


def random_character_pair(
    rng: np.random.Generator,
    p: int,
    max_size: int = 5,
    E: int = DEFAULT_E,
    det_unramified: bool = True,
) -> tuple[CharacterRep, CharacterRep]:
    """Random pair of character sums; optionally force det(sigma)det(tau) trivial."""
    n = int(rng.integers(1, max_size + 1))
    m = int(rng.integers(1, max_size + 1))
    sig = [_random_char(rng, p, E) for _ in range(n)]
    tau = [_random_char(rng, p, E) for _ in range(m)]
    if det_unramified:
        prod = sig[0]
        for c in sig[1:] + tau[:-1]:
            prod = prod * c
        tau[-1] = prod.inverse()
    return CharacterRep(sig), CharacterRep(tau)
