"""Dirichlet coefficients of standard and Rankin-Selberg L-functions at unramified primes.

Representations are modelled by their Satake parameters only. Every prime
that divides a conductor, or that lies above the working bound, is rejected.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Sequence

import numpy as np

from . import config
from .arith import factorize, is_squarefree, primes_up_to
from .symmetric_core import Partition, enumerate_partitions, reduced_pairing, schur_eval


@dataclass(frozen=True, eq=False)
class SatakeData:
    """Per-prime Satake multisets of one GL(n) representation proxy."""

    dimension: int
    conductor: int
    satake: Mapping[int, tuple]
    grc: bool = False
    p_max: int = config.P_MAX
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dimension < 1 or self.conductor < 1:
            raise ValueError("dimension and conductor must be positive")
        clean = {}
        for p, vals in self.satake.items():
            p = int(p)
            vals = tuple(complex(v) for v in vals)
            if len(vals) != self.dimension:
                raise ValueError(f"prime {p}: expected {self.dimension} parameters, got {len(vals)}")
            if self.conductor % p == 0:
                raise ValueError(f"prime {p} divides the conductor; no Satake data there")
            if self.grc and any(abs(v) > 1 + config.ABS_TOL for v in vals):
                raise ValueError(f"prime {p}: parameter of modulus > 1 under the GRC flag")
            clean[p] = vals
        object.__setattr__(self, "satake", clean)

    def params(self, p: int) -> tuple:
        if self.conductor % p == 0:
            raise ValueError(f"prime {p} is ramified (divides conductor {self.conductor})")
        if p > self.p_max:
            raise ValueError(f"prime {p} exceeds the working bound {self.p_max}")
        try:
            return self.satake[p]
        except KeyError:
            raise ValueError(f"no Satake data stored at p={p}") from None

    def central(self, p: int) -> complex:
        out = 1 + 0j
        for v in self.params(p):
            out *= v
        return out

    @property
    def primes(self) -> list[int]:
        return sorted(self.satake)


def dual(pi: SatakeData) -> SatakeData:
    """Contragredient: conjugate every Satake parameter."""
    return SatakeData(
        pi.dimension,
        pi.conductor,
        {p: tuple(v.conjugate() for v in vals) for p, vals in pi.satake.items()},
        grc=pi.grc,
        p_max=pi.p_max,
        label=f"dual({pi.label})" if pi.label else "",
    )


def sample_satake(
    n: int,
    seed: int,
    kind: str = "unitary",
    conductor: int = 1,
    p_max: int = config.P_MAX,
    primes: Sequence[int] | None = None,
    central: Callable[[int], complex] | None = None,
) -> SatakeData:
    """Seeded random Satake data.

    kind: "unitary" (all |alpha| = 1), "grc" (|alpha| <= 1) or "js"
    (p^{-1/2} < |alpha| < p^{1/2}). If ``central`` is given, the last
    parameter at p is solved so that the product equals central(p).
    """
    if kind not in ("unitary", "grc", "js"):
        raise ValueError(f"unknown kind {kind!r}")
    if central is not None and kind == "grc":
        raise ValueError("a prescribed central character is incompatible with kind='grc'")
    rng = np.random.default_rng(seed)
    plist = primes_up_to(p_max) if primes is None else sorted(int(p) for p in primes)
    data = {}
    free = n - 1 if central is not None else n
    for p in plist:
        if conductor % p == 0:
            continue
        ang = rng.uniform(0.0, 2 * math.pi, size=n)
        if kind == "unitary":
            mod = np.ones(n)
        elif kind == "grc":
            mod = np.sqrt(rng.uniform(0.0, 1.0, size=n))
        else:
            theta = 0.49 * math.log(p) / max(n - 1, 1)
            mod = np.exp(rng.uniform(-theta, theta, size=n))
        vals = [complex(cmath.rect(float(m), float(a))) for m, a in zip(mod, ang)]
        if central is not None:
            rest = 1 + 0j
            for v in vals[:free]:
                rest *= v
            vals[-1] = complex(central(p)) / rest
        data[p] = tuple(vals)
    meta = {"seed": seed, "kind": kind}
    return SatakeData(n, conductor, data, grc=(kind != "js"), p_max=p_max, meta=meta)


# fixture I/O ---------------------------------------------------------------

def satake_to_json(pi: SatakeData) -> str:
    doc = {
        "dimension": pi.dimension,
        "conductor": pi.conductor,
        "p_max": pi.p_max,
        "grc": pi.grc,
        "satake": {str(p): [[v.real, v.imag] for v in vals] for p, vals in sorted(pi.satake.items())},
    }
    if "seed" in pi.meta:
        doc["seed"] = pi.meta["seed"]
        doc["kind"] = pi.meta["kind"]
    return json.dumps(doc, sort_keys=True)


def satake_from_json(text: str) -> SatakeData:
    """Inverse of satake_to_json. A document with a seed but no parameters is regenerated."""
    doc = json.loads(text)
    n, N = int(doc["dimension"]), int(doc["conductor"])
    p_max = int(doc.get("p_max", config.P_MAX))
    if "satake" not in doc:
        return sample_satake(n, int(doc["seed"]), doc.get("kind", "unitary"), N, p_max)
    data = {int(p): tuple(complex(re, im) for re, im in vals) for p, vals in doc["satake"].items()}
    meta = {"seed": doc["seed"], "kind": doc["kind"]} if "seed" in doc else {}
    return SatakeData(n, N, data, grc=bool(doc.get("grc", False)), p_max=p_max, meta=meta)


# coefficients ---------------------------------------------------------------

def standard_coeff(pi: SatakeData, p: int, j: int) -> complex:
    """a_pi(p^j): the complete homogeneous polynomial h_j of the Satake multiset."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return schur_eval((j,), pi.params(p))


def lambda_coeff(pi: SatakeData, pi0: SatakeData, m: int) -> complex:
    """lambda_{pi x pi0}(m): products of power sums at prime powers, 0 elsewhere."""
    f = factorize(m)
    if len(f) != 1:
        return 0j
    (p, k), = f.items()
    A, B = pi.params(p), pi0.params(p)
    return sum(a**k for a in A) * sum(b**k for b in B)


@dataclass(frozen=True)
class DecoratedIdeal:
    """A positive integer with one partition of r_p attached to each p^r_p || n."""

    n_ideal: int
    decorations: Mapping[int, Partition]

    def __post_init__(self):
        f = factorize(self.n_ideal)
        decs = {int(p): Partition(mu) for p, mu in self.decorations.items()}
        if set(decs) != set(f):
            raise ValueError(f"decorations {sorted(decs)} do not match prime factors {sorted(f)}")
        for p, r in f.items():
            if decs[p].size != r:
                raise ValueError(f"decoration at {p} has size {decs[p].size}, expected {r}")
        object.__setattr__(self, "decorations", decs)

    def key(self) -> tuple:
        return (self.n_ideal, tuple(tuple(self.decorations[p]) for p in sorted(self.decorations)))


def decorated_coeff(pi: SatakeData, ideal: DecoratedIdeal) -> complex:
    """Product over p | n of s_{mu_p}(A_pi(p))."""
    out = 1 + 0j
    for p, mu in sorted(ideal.decorations.items()):
        if mu.length > pi.dimension - 1:
            raise ValueError(f"decoration {tuple(mu)} at {p} is longer than n-1 = {pi.dimension - 1}")
        out *= schur_eval(mu, pi.params(p))
    return out


def _check_pair(pi: SatakeData, pi0: SatakeData, p: int, check_central: bool = True) -> tuple:
    if pi.dimension != pi0.dimension:
        raise ValueError("Rankin-Selberg reduction needs equal dimensions")
    A, B = pi.params(p), pi0.params(p)
    ca, cb = pi.central(p), pi0.central(p)
    if check_central and not config.close(ca, cb, rel=config.CENTRAL_TOL, abs_=config.CENTRAL_TOL):
        raise ValueError(f"central characters differ at p={p}: {ca} vs {cb}")
    return A, B


def rs_coeff_prime_power(pi: SatakeData, pi0: SatakeData, p: int, r: int, check_central: bool = True) -> complex:
    """a_{pi x dual(pi0)}(p^r) through the reduced Schur expansion.

    Partitions are taken with at most n-1 rows; the removed full columns
    contribute powers of central(p) * conj(central0(p)). The expansion is
    exact either way, but by default mismatched central characters are
    rejected because the unweighted reduction needs them equal.
    """
    A, B = _check_pair(pi, pi0, p, check_central)
    return reduced_pairing(A, [b.conjugate() for b in B], r)


def _inverse_product_series(roots: Sequence[complex], depth: int) -> list[complex]:
    # coefficients of prod (1 - w X)^{-1} up to X^depth
    c = [0j] * (depth + 1)
    c[0] = 1 + 0j
    for w in roots:
        for i in range(1, depth + 1):
            c[i] += w * c[i - 1]
    return c


def rs_coeff_oracle(pi: SatakeData, pi0: SatakeData, p: int, r: int) -> complex:
    """Coefficient of X^r in prod_{j,k} (1 - alpha_j conj(alpha0_k) X)^{-1}, expanded directly."""
    A, B = pi.params(p), pi0.params(p)
    roots = [a * b.conjugate() for a in A for b in B]
    return _inverse_product_series(roots, r)[r]


def rs_coeff_ideal(pi: SatakeData, pi0: SatakeData, m: int, check_central: bool = True) -> complex:
    """Multiplicative assembly of a_{pi x dual(pi0)}(m)."""
    out = 1 + 0j
    for p, r in sorted(factorize(m).items()):
        out *= rs_coeff_prime_power(pi, pi0, p, r, check_central)
    return out


def rs_coeff_ideal_double_sum(pi: SatakeData, pi0: SatakeData, m: int) -> complex:
    """Same quantity as rs_coeff_ideal, summed over d^n | m and decorated ideals of m/d^n.

    The weight of d is central(d) * conj(central0(d)), which is 1 when both
    central characters agree and are unitary.
    """
    n = pi.dimension
    if pi0.dimension != n:
        raise ValueError("Rankin-Selberg reduction needs equal dimensions")
    f = sorted(factorize(m).items())
    for p, _ in f:
        _check_pair(pi, pi0, p)
    total = 0j
    for ks in product(*[range(r // n + 1) for _, r in f]):
        weight = 1 + 0j
        for (p, _), k in zip(f, ks):
            weight *= (pi.central(p) * pi0.central(p).conjugate()) ** k
        rest = [(p, r - n * k) for (p, r), k in zip(f, ks)]
        choices = [enumerate_partitions(n - 1, rr) for _, rr in rest]
        for decs in product(*choices):
            a = b = 1 + 0j
            for (p, _), mu in zip(rest, decs):
                a *= schur_eval(mu, pi.params(p))
                b *= schur_eval(mu, pi0.params(p))
            total += weight * a * b.conjugate()
    return total


def _standard_coeff_n(pi: SatakeData, m: int) -> complex:
    out = 1 + 0j
    for p, r in factorize(m).items():
        out *= standard_coeff(pi, p, r)
    return out


def naive_rs_partial(pi: SatakeData, pi0: SatakeData, s: complex, bound: int) -> complex:
    """Partial sum over n <= bound coprime to both conductors of a_pi(n) a_pi0(n) n^{-s}.

    Pass dual(pi0) for the pairing with the contragredient.
    """
    if complex(s).real <= 1:
        warnings.warn("Re(s) <= 1: the naive Rankin-Selberg series need not converge", stacklevel=2)
    total = 0j
    NN = pi.conductor * pi0.conductor
    for n in range(1, int(bound) + 1):
        if math.gcd(n, NN) != 1:
            continue
        total += _standard_coeff_n(pi, n) * _standard_coeff_n(pi0, n) * cmath.exp(-s * math.log(n))
    return total


def local_naive_rs_factor(pi: SatakeData, pi0: SatakeData, p: int, s: complex, depth: int = config.G_D_DEPTH) -> complex:
    """1 + sum_{j=1}^{depth} a_pi(p^j) conj(a_pi0(p^j)) p^{-js}."""
    total = 1 + 0j
    ps = cmath.exp(-s * math.log(p))
    x = 1 + 0j
    for j in range(1, depth + 1):
        x *= ps
        total += standard_coeff(pi, p, j) * standard_coeff(pi0, p, j).conjugate() * x
    return total


def g_d_factor(pi: SatakeData, pi0: SatakeData, d: int, s: complex, depth: int = config.G_D_DEPTH) -> complex:
    """prod_{p | d} (1 - 1/L_p(s)) for the naive local factor of pi against dual(pi0)."""
    if d < 1 or not is_squarefree(d):
        raise ValueError(f"d={d} must be a squarefree positive integer")
    out = 1 + 0j
    for p in sorted(factorize(d)):
        out *= 1 - 1 / local_naive_rs_factor(pi, pi0, p, s, depth)
    return out


@dataclass(frozen=True)
class BrumleyCheck:
    holds: bool
    cross: complex
    diag_pi: float
    diag_pi0: float


def check_brumley_cs(pi: SatakeData, pi0: SatakeData, m: int, tol: float = config.ABS_TOL) -> BrumleyCheck:
    """|lambda_{pi x pi0}(m)| <= sqrt(lambda_{pi x dual pi} lambda_{pi0 x dual pi0}) <= their mean."""
    f = factorize(m)
    if len(f) != 1:
        raise ValueError("m must be a prime power")
    cross = lambda_coeff(pi, pi0, m)
    d1 = lambda_coeff(pi, dual(pi), m).real
    d2 = lambda_coeff(pi0, dual(pi0), m).real
    geo = math.sqrt(max(d1, 0.0) * max(d2, 0.0))
    scale = 1 + abs(d1) + abs(d2)
    ok = abs(cross) <= geo + tol * scale and geo <= (d1 + d2) / 2 + tol * scale
    return BrumleyCheck(ok, cross, d1, d2)
