"""Ramified Rankin-Selberg local factors from Bernstein-Zelevinsky data at one place.

A datum lists segments (n_j, s_j), a partition J of the segment indices into
classes, and a torsion number e_a per class. For a pair of data of the same
combinatorial type the local factor is

    prod_a prod_nu prod_{j,k in J_a^nu} (1 - (q^nu z_j conj(z'_k))^{e_a} q^{-e_a s})^{-1},

with z_j = q^{-s_j - n_j/2} and J_a^nu = {j in J_a : n_j >= nu}.
Segment and class indices are 0-based.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import config
from .symmetric_core import product_series_coefficient, reduced_pairing


class PoleError(ValueError):
    """Raised when a local factor is evaluated within the pole threshold."""


@dataclass(frozen=True)
class BZDatum:
    q: int
    n_blocks: tuple
    s_blocks: tuple
    classes: tuple
    e: tuple

    def __init__(self, q: int, blocks: Sequence[tuple], classes: Sequence[Sequence[int]], e: Sequence[int]):
        if q < 2:
            raise ValueError("residue cardinality must be >= 2")
        ns = tuple(int(nj) for nj, _ in blocks)
        ss = tuple(complex(sj) for _, sj in blocks)
        if any(nj < 1 for nj in ns):
            raise ValueError("segment lengths must be positive")
        if any(ss[i].real < ss[i + 1].real for i in range(len(ss) - 1)):
            raise ValueError("real parts of s_j must be non-increasing")
        cl = tuple(tuple(sorted(int(j) for j in c)) for c in classes)
        flat = sorted(j for c in cl for j in c)
        if flat != list(range(len(ns))) or any(len(c) == 0 for c in cl):
            raise ValueError("classes must partition the segment indices")
        e = tuple(int(x) for x in e)
        if len(e) != len(cl):
            raise ValueError("one torsion number per class")
        n = sum(ns)
        if any(x < 1 or n % x for x in e):
            raise ValueError("each torsion number must divide n")
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "n_blocks", ns)
        object.__setattr__(self, "s_blocks", ss)
        object.__setattr__(self, "classes", cl)
        object.__setattr__(self, "e", e)

    @property
    def n(self) -> int:
        return sum(self.n_blocks)

    def z(self, j: int) -> complex:
        return cmath.exp(-(self.s_blocks[j] + self.n_blocks[j] / 2) * math.log(self.q))

    def combinatorial_type(self) -> tuple:
        return (self.q, self.n_blocks, self.classes, self.e)

    def members(self, a: int, nu: int) -> list[int]:
        """J_a^nu."""
        return [j for j in self.classes[a] if self.n_blocks[j] >= nu]

    def nu_range(self, a: int) -> range:
        return range(1, max(self.n_blocks[j] for j in self.classes[a]) + 1)

    def to_json(self) -> str:
        doc = {
            "q_v": self.q,
            "blocks": [
                {"n_j": nj, "sigma_j": sj.real, "t_j": sj.imag} for nj, sj in zip(self.n_blocks, self.s_blocks)
            ],
            "classes": [list(c) for c in self.classes],
            "e": list(self.e),
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "BZDatum":
        doc = json.loads(text)
        blocks = [(b["n_j"], complex(b["sigma_j"], b.get("t_j", 0.0))) for b in doc["blocks"]]
        return cls(doc["q_v"], blocks, doc["classes"], doc["e"])


def _check_same_type(sigma: BZDatum, tau: BZDatum) -> None:
    if sigma.combinatorial_type() != tau.combinatorial_type():
        raise ValueError("sigma and tau must share q, segment lengths, classes and torsion numbers")


def local_roots(sigma: BZDatum, tau: BZDatum) -> list[tuple]:
    """All (a, nu, j, k, root, e_a) with root = q^nu z_j conj(z'_k) before the e_a-th power."""
    _check_same_type(sigma, tau)
    out = []
    q = sigma.q
    for a in range(len(sigma.classes)):
        for nu in sigma.nu_range(a):
            mem = sigma.members(a, nu)
            for j in mem:
                for k in mem:
                    out.append((a, nu, j, k, q**nu * sigma.z(j) * tau.z(k).conjugate(), sigma.e[a]))
    return out


def local_rs_factor(sigma: BZDatum, tau: BZDatum, s: complex) -> complex:
    """Value of the local Rankin-Selberg factor at s."""
    qs = cmath.exp(-complex(s) * math.log(sigma.q))
    val = 1 + 0j
    for *_, w, e in local_roots(sigma, tau):
        den = 1 - (w * qs) ** e
        if abs(den) < config.POLE_THRESHOLD:
            raise PoleError(f"factor vanishes at s={s}")
        val /= den
    return val


def local_rs_series(sigma: BZDatum, tau: BZDatum, depth: int = config.LOCAL_SERIES_DEPTH) -> list[complex]:
    """Coefficients in X = q^{-s} of the local factor, by inverting its denominator polynomial."""
    poly = np.zeros(depth + 1, dtype=complex)
    poly[0] = 1
    for *_, w, e in local_roots(sigma, tau):
        if e > depth:
            continue
        shifted = np.zeros_like(poly)
        shifted[e:] = poly[:-e] * (w**e)
        poly = poly - shifted
    c = [0j] * (depth + 1)
    c[0] = 1 + 0j
    for r in range(1, depth + 1):
        c[r] = -sum(complex(poly[i]) * c[r - i] for i in range(1, r + 1))
    return c


def block_multiset(sigma: BZDatum, a: int, nu: int) -> list[complex]:
    """{q^{nu/2} z_j : j in J_a^nu} padded with zeros to size n, raised to the e_a-th power."""
    e = sigma.e[a]
    root_q = sigma.q ** (nu / 2)
    vals = [(root_q * sigma.z(j)) ** e for j in sigma.members(a, nu)]
    return vals + [0j] * (sigma.n - len(vals))


def block_coeff(sigma: BZDatum, tau: BZDatum, a: int, nu: int, r: int) -> complex:
    """Block coefficient at degree e_a r: Schur pairing of the completed multisets."""
    _check_same_type(sigma, tau)
    if not 0 <= a < len(sigma.classes):
        raise ValueError(f"class index {a} out of range")
    if not 1 <= nu <= sigma.n:
        raise ValueError(f"nu={nu} out of range 1..{sigma.n}")
    A = block_multiset(sigma, a, nu)
    B = [b.conjugate() for b in block_multiset(tau, a, nu)]
    return reduced_pairing(A, B, r)


def block_coefficients(sigma: BZDatum, tau: BZDatum, depth: int) -> dict:
    """(a, nu) -> power series in X (length depth+1) carrying block_coeff at X^{e_a r}."""
    out = {}
    for a in range(len(sigma.classes)):
        e = sigma.e[a]
        for nu in sigma.nu_range(a):
            seq = [0j] * (depth + 1)
            for r in range(depth // e + 1):
                seq[e * r] = block_coeff(sigma, tau, a, nu, r)
            out[(a, nu)] = seq
    return out


def assembled_coefficient(sigma: BZDatum, tau: BZDatum, R: int) -> complex:
    """Full coefficient of X^R as the product of all block series."""
    blocks = block_coefficients(sigma, tau, R)
    return product_series_coefficient(list(blocks.values()), R)


@dataclass(frozen=True)
class RootAudit:
    roots: list
    tempered: bool
    js_ok: bool
    violations: list


def root_audit(sigma: BZDatum, tau: BZDatum, tol: float = config.ABS_TOL) -> RootAudit:
    """Moduli of all local roots against the tempered (<= 1) and Jacquet-Shalika (< q) bounds."""
    q = sigma.q
    rows, bad = [], []
    for a, nu, j, k, w, _ in local_roots(sigma, tau):
        mod = abs(w)
        refined = q ** (nu + 1 - sigma.n_blocks[j] / 2 - tau.n_blocks[k] / 2)
        row = {"class": a, "nu": nu, "j": j, "k": k, "modulus": mod, "js_bound": refined}
        rows.append(row)
        if not (mod < refined and mod < q):
            bad.append(row)
    tempered = all(r["modulus"] <= 1 + tol for r in rows)
    return RootAudit(rows, tempered, not bad, bad)


def _compositions(rng: np.random.Generator, n: int) -> list[int]:
    parts, left = [], n
    while left:
        k = int(rng.integers(1, left + 1))
        parts.append(k)
        left -= k
    return parts


def random_bz_pair(
    rng: np.random.Generator, q: int, n_max: int = 4, sigma_max: float = 0.49
) -> tuple[BZDatum, BZDatum]:
    """Two data of one random combinatorial type with independent analytic parameters."""
    n = int(rng.integers(1, n_max + 1))
    ns = _compositions(rng, n)
    r = len(ns)
    labels = [int(rng.integers(0, r)) for _ in range(r)]
    classes = [[j for j in range(r) if labels[j] == lab] for lab in sorted(set(labels))]
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    e = [int(rng.choice(divisors)) for _ in classes]

    def draw():
        sig = sorted(rng.uniform(-sigma_max, sigma_max, size=r), reverse=True)
        ts = rng.uniform(-5, 5, size=r)
        return BZDatum(q, [(nj, complex(sj, tj)) for nj, sj, tj in zip(ns, sig, ts)], classes, e)

    return draw(), draw()
