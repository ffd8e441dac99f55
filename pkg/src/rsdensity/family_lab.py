"""Quasi-orthogonal embeddings of Satake data and family-size counting.

Each representation becomes a vector indexed by decorated ideals (integers
with one partition per prime power). The Gram entry of two such vectors is a
smoothed sum of Rankin-Selberg coefficients, which is checked exactly. A
sphere-packing lemma then bounds the size of any family whose vectors are
nearly orthogonal.

For n >= 2 decorations lie in P_{n-1}(r) and the smoothing is
F_X(N) = sum_m f(N m^n / X); this form needs equal unitary central
characters. For n = 1 that reduction leaves nothing to index, so GL(1) uses
the unreduced form: one decoration (r) per prime power and weight f(N / X).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np
from scipy.special import zeta

from .analytic_toolkit import TestFunction, smoothing_sum_F
from .arith import factor_table, factorize
from .characters import DirichletCharacter
from .rs_coefficients import DecoratedIdeal, SatakeData, decorated_coeff, rs_coeff_ideal
from .symmetric_core import Partition, enumerate_partitions, schur_eval

INDEX_CAP = 10**6


@dataclass(frozen=True)
class DecoratedIndex:
    X: float
    S: tuple
    n: int
    entries: tuple

    @property
    def rows(self) -> int:
        """Maximum number of rows allowed in a decoration."""
        return max(self.n - 1, 1)

    @property
    def reduced(self) -> bool:
        return self.n >= 2

    def __len__(self) -> int:
        return len(self.entries)


def build_index(X: float, S: Sequence[int] = (), n: int = 2, cap: int = INDEX_CAP) -> DecoratedIndex:
    """All decorated ideals of norm <= X coprime to S, ordered by ideal then decoration."""
    if X < 1 or n < 1:
        raise ValueError("need X >= 1 and n >= 1")
    S = tuple(sorted(set(int(p) for p in S)))
    rows = max(n - 1, 1)
    Xi = int(math.floor(X))
    table = factor_table(Xi)
    entries = []
    for N in range(1, Xi + 1):
        f = table[N]
        if any(p in f for p in S):
            continue
        primes = sorted(f)
        choices = [enumerate_partitions(rows, f[p]) for p in primes]
        for decs in product(*choices):
            entries.append(DecoratedIdeal(N, dict(zip(primes, decs))))
            if len(entries) > cap:
                raise ValueError(f"index exceeds the cap of {cap} entries")
    return DecoratedIndex(float(X), S, n, tuple(entries))


def decorated_count(X: float, n: int, S: Sequence[int] = ()) -> int:
    """sum_{m <= X, (m,S)=1} prod_{p^r || m} |P_{rows}(r)| without building the index."""
    rows = max(n - 1, 1)
    Xi = int(math.floor(X))
    table = factor_table(Xi)
    sizes: dict[int, int] = {}
    total = 0
    for N in range(1, Xi + 1):
        f = table[N]
        if any(p in f for p in S):
            continue
        c = 1
        for r in f.values():
            if r not in sizes:
                sizes[r] = len(enumerate_partitions(rows, r))
            c *= sizes[r]
        total += c
    return total


def index_weight(index: DecoratedIndex, N: int, f: TestFunction) -> float:
    """F_X(N) for the reduced form, f(N/X) for GL(1)."""
    if index.reduced:
        return smoothing_sum_F(N, index.X, index.n, f, index.S)
    return float(f(N / index.X))


def character_satake(chi: DirichletCharacter, p_max: int = 10_000, label: str = "") -> SatakeData:
    """A Dirichlet character as GL(1) Satake data (conductor = its modulus)."""
    from .arith import primes_up_to

    data = {p: (chi(p),) for p in primes_up_to(p_max) if chi.q % p}
    return SatakeData(1, chi.q, data, grc=True, p_max=p_max, label=label)


@dataclass(frozen=True)
class EmbeddedVector:
    index: DecoratedIndex
    coords: np.ndarray
    label: str = ""

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))


def entry_coefficient(pi: SatakeData, index: DecoratedIndex, ideal: DecoratedIdeal) -> complex:
    if index.reduced:
        return decorated_coeff(pi, ideal)
    out = 1 + 0j
    for p, mu in sorted(ideal.decorations.items()):
        out *= schur_eval(mu, pi.params(p))
    return out


def embed(pi: SatakeData, index: DecoratedIndex, f: TestFunction) -> EmbeddedVector:
    """Coordinates sqrt(F_X(N)) a_pi(N, mu) over the index."""
    if pi.dimension != index.n:
        raise ValueError("dimension mismatch between representation and index")
    weights: dict[int, float] = {}
    coords = np.zeros(len(index), dtype=complex)
    for i, ideal in enumerate(index.entries):
        N = ideal.n_ideal
        if N not in weights:
            weights[N] = index_weight(index, N, f)
        w = weights[N]
        if w == 0:
            continue
        coords[i] = math.sqrt(w) * entry_coefficient(pi, index, ideal)
    return EmbeddedVector(index, coords, pi.label)


@dataclass(frozen=True)
class GramCheck:
    inner_product: complex
    series: complex
    difference: float

    def ok(self, rel: float = 1e-9) -> bool:
        return self.difference <= rel * (1 + abs(self.series))


def smoothed_series(pi: SatakeData, pi0: SatakeData, index: DecoratedIndex, f: TestFunction) -> complex:
    """sum_{(a,S)=1} a_{pi x dual(pi0)}(a) f(a/X)."""
    lo, hi = f.support
    total = 0j
    for a in range(max(1, math.ceil(lo * index.X)), int(math.floor(hi * index.X)) + 1):
        if any(a % p == 0 for p in index.S):
            continue
        w = float(f(a / index.X))
        if w:
            total += rs_coeff_ideal(pi, pi0, a, check_central=index.reduced) * w
    return total


def gram_vs_series(pi: SatakeData, pi0: SatakeData, index: DecoratedIndex, f: TestFunction) -> GramCheck:
    """<v_pi, v_pi0> against the smoothed Rankin-Selberg sum; both are finite sums."""
    u, v = embed(pi, index, f), embed(pi0, index, f)
    inner = complex(np.vdot(v.coords, u.coords))
    series = smoothed_series(pi, pi0, index, f)
    return GramCheck(inner, series, abs(inner - series))


@dataclass(frozen=True)
class CertifyResult:
    ok: bool
    K: int
    M: int
    pair: tuple | None
    value: float
    max_abs_inner: float
    elementary_bound: float


def realify(vectors) -> np.ndarray:
    V = np.asarray(vectors)
    if np.iscomplexobj(V):
        return np.concatenate([V.real, V.imag], axis=1)
    return V.astype(float)


def quasi_orth_certify(vectors, tol: float = 1e-9) -> CertifyResult:
    """Check pairwise |<u_i, u_j>| < 1/M for unit vectors in R^M (complex input is realified).

    When all pairs pass, K <= M must hold; otherwise the first violating pair is returned.
    """
    V = realify(vectors)
    if V.ndim != 2:
        raise ValueError("expected a K x dim array")
    K, M = V.shape
    norms = np.linalg.norm(V, axis=1)
    if np.any(np.abs(norms - 1) > tol):
        raise ValueError("all vectors must have unit norm")
    G = V @ V.T
    off = np.abs(G - np.diag(np.diag(G)))
    max_inner = float(off.max()) if K > 1 else 0.0
    elementary = K + K * (K - 1) * max_inner
    thr = 1.0 / M
    bad = np.argwhere(np.triu(off >= thr, k=1))
    if bad.size:
        i, j = (int(t) for t in bad[0])
        return CertifyResult(False, K, M, (i, j), float(off[i, j]), max_inner, elementary)
    if K > M:
        raise AssertionError(f"{K} vectors in R^{M} pass the 1/M test; the sphere bound is violated")
    return CertifyResult(True, K, M, None, max_inner, max_inner, elementary)


def family_bound_report(
    D: float,
    n: int,
    Q: float,
    norm_q: float = 1.0,
    eps: float = 0.1,
    S: Sequence[int] = (),
    enumerate_cap: int = INDEX_CAP,
) -> dict:
    """X choices, index dimension N and the sphere bound K <= 2N.

    N is counted exactly when X <= enumerate_cap and otherwise estimated by
    X prod_{i=2}^{n-1} zeta(i), the density of decorated ideals.
    """
    if min(D, Q, norm_q, eps) <= 0 or n < 1:
        raise ValueError("parameters must be positive")
    log_base = -(n**2) * math.log(D) - 2 * math.log(norm_q) + 2 * n * math.log(Q)
    X_u = math.exp((1 + eps) * log_base)
    X_c = math.exp((0.5 + eps) * log_base)

    def dim(X):
        if X < 1:
            return 0, "exact"
        if X <= enumerate_cap:
            return decorated_count(X, n, S), "exact"
        density = math.prod(float(zeta(i)) for i in range(2, n))
        return int(round(X * density)), "estimate"

    N_u, how_u = dim(X_u)
    N_c, how_c = dim(X_c)
    return {
        "inputs": {"D": D, "n": n, "Q": Q, "norm_q": norm_q, "eps": eps, "S": list(S)},
        "X_unconditional": X_u,
        "X_conditional": X_c,
        "log10_X_unconditional": (1 + eps) * log_base / math.log(10),
        "N_unconditional": N_u,
        "N_unconditional_method": how_u,
        "N_conditional": N_c,
        "N_conditional_method": how_c,
        "K_bound_unconditional": 2 * N_u,
        "K_bound_conditional": 2 * N_c,
        "diagnostic": {"residue_exponent": 7 * n / 4 - 5 / 4 + eps},
    }
