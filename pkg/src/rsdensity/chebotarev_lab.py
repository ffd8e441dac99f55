"""Exact Chebotarev prime counts for cyclotomic and quadratic fields.

Frobenius classes in abelian extensions of Q are congruence conditions, so
pi_C(x) is an exact count from a segmented sieve. The GRH, Quasi-GRH and
Ellenberg-Venkatesh bounds are evaluated as formulas without constants.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2

from . import config
from .arith import factorize, is_squarefree
from .kernels import residue_prime_counts

SIEVE_CAPACITY = 10**9


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


@dataclass(frozen=True)
class AbelianFieldSpec:
    """Q(zeta_q) (kind 'cyclotomic') or Q(sqrt d) (kind 'quadratic', d fundamental)."""

    kind: str
    q: int = 0
    d: int = 0
    log_D_override: float | None = None

    def __post_init__(self):
        if self.kind == "cyclotomic":
            if self.q < 3:
                raise ValueError("cyclotomic fields need q >= 3")
        elif self.kind == "quadratic":
            if not is_fundamental_discriminant(self.d):
                raise ValueError(f"{self.d} is not a fundamental discriminant")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def cyclotomic(cls, q: int, log_D: float | None = None) -> "AbelianFieldSpec":
        return cls("cyclotomic", q=q, log_D_override=log_D)

    @classmethod
    def quadratic(cls, d: int) -> "AbelianFieldSpec":
        return cls("quadratic", d=d)

    @property
    def modulus(self) -> int:
        return self.q if self.kind == "cyclotomic" else abs(self.d)

    @property
    def group_order(self) -> int:
        if self.kind == "quadratic":
            return 2
        return sum(1 for a in range(1, self.q + 1) if math.gcd(a, self.q) == 1)

    @property
    def degree(self) -> int:
        return self.group_order

    @property
    def log_D(self) -> float:
        """Discriminant proxy: phi(q) log q for cyclotomic fields, log|d| for quadratic ones."""
        if self.log_D_override is not None:
            return self.log_D_override
        if self.kind == "quadratic":
            return math.log(abs(self.d))
        return self.group_order * math.log(self.q)

    @property
    def ramified_primes(self) -> list[int]:
        return sorted(factorize(self.modulus))

    def classes(self) -> list:
        if self.kind == "quadratic":
            return ["split", "inert"]
        return [a for a in range(1, self.q) if math.gcd(a, self.q) == 1]

    def identity_class(self):
        return "split" if self.kind == "quadratic" else 1


@lru_cache(maxsize=32)
def _residue_counts(x: int, modulus: int) -> tuple:
    counts, total = residue_prime_counts(x, modulus)
    return tuple(counts), total


def _check_x(x: float) -> int:
    xi = int(math.floor(x))
    if xi > SIEVE_CAPACITY:
        raise ValueError(f"x={x} exceeds the sieve capacity {SIEVE_CAPACITY}")
    return xi


def prime_pi(x: float) -> int:
    xi = _check_x(x)
    return 0 if xi < 2 else _residue_counts(xi, 1)[1]


def pi_C(field: AbelianFieldSpec, cls, x: float) -> int:
    """Number of unramified primes p <= x whose Frobenius is the class ``cls``."""
    xi = _check_x(x)
    if xi < 2:
        return 0
    counts, _ = _residue_counts(xi, field.modulus)
    if field.kind == "cyclotomic":
        a = int(cls) % field.q
        if math.gcd(a, field.q) != 1:
            raise ValueError(f"class {cls} is not a unit mod {field.q}")
        return counts[a]
    if cls not in ("split", "inert"):
        raise ValueError("quadratic classes are 'split' and 'inert'")
    want = 1 if cls == "split" else -1
    return sum(
        counts[r]
        for r in range(field.modulus)
        if math.gcd(r, field.modulus) == 1 and int(gmpy2.kronecker(field.d, r)) == want
    )


def ramified_count(field: AbelianFieldSpec, x: float) -> int:
    return sum(1 for p in field.ramified_primes if p <= x)


def split_prime_count(field: AbelianFieldSpec, X: float) -> int:
    """Unramified primes <= X that split completely."""
    return pi_C(field, field.identity_class(), X)


def grh_bound(x: float, log_D: float, G_order: int, C_size: int = 1) -> float:
    """(|C|/|G|) x^{1/2} log(D x^{|G|})."""
    return C_size / G_order * math.sqrt(x) * (log_D + G_order * math.log(x))


def grh_range_ok(x: float, log_D: float) -> bool:
    """x >= (log D)^2 (log log D)^4 (vacuous when log D <= 1)."""
    if log_D <= 1:
        return True
    return x >= log_D**2 * math.log(log_D) ** 4


def quasi_grh_bound(
    delta: float,
    T: float,
    log_D: float,
    n_L: int,
    G_order: int,
    x: float,
    C_size: int = 1,
    c: float = config.ZFR_CONSTANT,
) -> float:
    """(|C|/|G|) x/log x [x^{-delta/8} + T^{-1/24} e^{-sqrt(c log x / n)/24} + T^{-1/24} e^{-c log x / (24 log D)}]."""
    if not 0 < delta <= 0.5:
        raise ValueError("delta must lie in (0, 1/2]")
    L = math.log(x)
    if log_D > 0 and L < 16 / delta * math.log(log_D):
        warnings.warn("x below (log D)^{16/delta}: outside the stated range", RuntimeWarning, stacklevel=2)
    if log_D > 0 and T < log_D**24:
        warnings.warn("T below (log D)^24: outside the stated range", RuntimeWarning, stacklevel=2)
    terms = (
        math.exp(-delta * L / 8)
        + T ** (-1 / 24) * math.exp(-math.sqrt(c * L / n_L) / 24)
        + T ** (-1 / 24) * math.exp(-c * L / (24 * log_D))
    )
    return C_size / G_order * x / L * terms


@dataclass(frozen=True)
class PrimeCountReport:
    x: int
    pi_C: int
    pi_x: int
    expected: Fraction
    E_C: Fraction
    grh_bound: float
    quasi_grh_bound: float
    grh_range_ok: bool

    def row(self) -> dict:
        return {
            "x": self.x,
            "pi_C": self.pi_C,
            "expected": float(self.expected),
            "E_C": float(self.E_C),
            "grh_bound": self.grh_bound,
            "quasi_grh_bound": self.quasi_grh_bound,
        }


def error_report(
    field: AbelianFieldSpec, cls, x: float, delta: float = 0.5, T: float | None = None, c: float = config.ZFR_CONSTANT
) -> PrimeCountReport:
    """pi_C, the expected share (|C|/|G|) pi(x), E_C and both bound shapes.

    T defaults to max((log D)^24, 10), the smallest value in the Quasi-GRH range.
    """
    xi = _check_x(x)
    pc, px = pi_C(field, cls, xi), prime_pi(xi)
    G = field.group_order
    expected = Fraction(px, G)
    E = abs(pc - expected)
    if T is None:
        T = max(field.log_D**24, 10.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        qg = quasi_grh_bound(delta, T, field.log_D, field.degree, G, xi, 1, c)
    return PrimeCountReport(xi, pc, px, expected, E, grh_bound(xi, field.log_D, G), qg, grh_range_ok(xi, field.log_D))


def ev_torsion_bound(D_K: float, n: int, ell: int, eps: float, M: int) -> tuple[float, float]:
    """(log_D of D^{1/2+eps}/M, split-prime threshold D^{1/(2 ell (n-1)) - eps})."""
    if n < 2 or ell < 1:
        raise ValueError("need n >= 2 and ell >= 1")
    top = 1 / (2 * ell * (n - 1))
    if not 0 < eps < top:
        raise ValueError(f"eps must lie in (0, {top})")
    if D_K <= 1:
        raise ValueError("D_K must exceed 1")
    threshold = D_K ** (top - eps)
    if M <= 0:
        return math.inf, threshold
    return 0.5 + eps - math.log(M) / math.log(D_K), threshold
