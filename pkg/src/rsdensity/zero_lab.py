"""Zero tables, zero-free-region models, the detection window and bound evaluators.

Zeros are never computed here: they are read from tables or synthesized.
Every statement with an unspecified constant is evaluated as a bare
formula, with the constant exposed as an explicit ``slack`` input.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from . import config
from .analytic_toolkit import j_k, j_k_derivative
from .arith import primes_up_to
from .rs_coefficients import SatakeData, lambda_coeff

# zero tables -------------------------------------------------------------------


class ZeroFileError(ValueError):
    pass


@dataclass(frozen=True)
class ZeroTable:
    """Zeros (beta, gamma) with gamma >= 0; conjugates are implied."""

    zeros: tuple
    provenance: str = ""

    def __post_init__(self):
        zs = tuple(sorted((float(b), float(g)) for b, g in self.zeros))
        zs = tuple(sorted(zs, key=lambda z: z[1]))
        for b, g in zs:
            if not 0 < b < 1:
                raise ValueError(f"beta={b} outside (0, 1)")
            if g < 0:
                raise ValueError(f"negative ordinate {g}; store gamma >= 0 only")
        if any(zs[i][1] >= zs[i + 1][1] for i in range(len(zs) - 1)):
            raise ValueError("ordinates must be strictly increasing")
        object.__setattr__(self, "zeros", zs)

    def __len__(self) -> int:
        return len(self.zeros)


def parse_zeros(text: str, provenance: str = "") -> ZeroTable:
    """Parse format A (one ordinate per line) or B ("beta gamma"); '#' lines are skipped."""
    zeros = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        try:
            if len(parts) == 1:
                zeros.append((0.5, float(parts[0])))
            elif len(parts) == 2:
                zeros.append((float(parts[0]), float(parts[1])))
            else:
                raise ValueError("expected one or two numbers")
        except ValueError as exc:
            raise ZeroFileError(f"line {lineno}: cannot parse {s!r} ({exc})") from None
    try:
        return ZeroTable(tuple(zeros), provenance)
    except ValueError as exc:
        raise ZeroFileError(str(exc)) from None


def load_zeros(path: str | Path) -> ZeroTable:
    path = Path(path)
    return parse_zeros(path.read_text(encoding="utf-8"), provenance=str(path))


def bundled_zeta_zeros() -> ZeroTable:
    """The first 100 ordinates of the Riemann zeta function shipped with the package."""
    text = resources.files("rsdensity").joinpath("data/zeta_zeros_100.txt").read_text(encoding="utf-8")
    return parse_zeros(text, provenance="bundled:zeta_zeros_100")


def count_zeros(table: ZeroTable, sigma: float, T: float) -> int:
    """#{rho : beta >= sigma, |gamma| <= T}, counting the conjugate of each gamma > 0."""
    if not 0 <= sigma <= 1 or T < 0:
        raise ValueError("need 0 <= sigma <= 1 and T >= 0")
    return sum((2 if g > 0 else 1) for b, g in table.zeros if b >= sigma and g <= T)


# zero-free regions and eta(x) ----------------------------------------------------


@dataclass(frozen=True)
class ConstantPiece:
    delta: float
    t_lo: float = 3.0
    t_hi: float = math.inf

    def delta_at(self, t: float) -> float:
        return self.delta

    def delta_log(self, u: float) -> float:
        return self.delta

    def minimize(self, L: float) -> float:
        # Delta constant, log t increasing: the infimum sits at the left end
        return self.delta * L + math.log(self.t_lo)


@dataclass(frozen=True)
class ClassicalPiece:
    """Delta(t) = c / (log D + n log t)."""

    c: float
    log_D: float
    n: int
    t_lo: float = 3.0
    t_hi: float = math.inf

    def delta_at(self, t: float) -> float:
        return self.c / (self.log_D + self.n * math.log(t))

    def delta_log(self, u: float) -> float:
        # Delta as a function of u = log t; avoids exp overflow for huge t
        return self.c / (self.log_D + self.n * u)

    def minimize(self, L: float) -> float:
        # g(u) = cL/(log D + n u) + u is convex in u = log t; clamp its stationary point
        u0 = math.sqrt(self.c * L / self.n) - self.log_D / self.n
        u = min(max(u0, math.log(self.t_lo)), math.log(self.t_hi))
        return self.c * L / (self.log_D + self.n * u) + u


@dataclass(frozen=True)
class CallablePiece:
    func: Callable[[float], float]
    t_lo: float = 3.0
    t_hi: float = 1e6

    def delta_at(self, t: float) -> float:
        return float(self.func(t))

    def delta_log(self, u: float) -> float:
        return float(self.func(math.exp(u)))

    def minimize(self, L: float) -> float:
        return _grid_min(self, L)


@dataclass(frozen=True)
class ZeroFreeRegionModel:
    pieces: tuple

    def __post_init__(self):
        ps = tuple(self.pieces)
        if not ps:
            raise ValueError("empty model")
        if ps[0].t_lo < 3:
            raise ValueError("Delta is defined on t >= 3")
        for a, b in zip(ps[:-1], ps[1:]):
            if not a.t_lo < a.t_hi <= b.t_lo:
                raise ValueError("pieces must be ordered and disjoint")
        for p in ps:
            probe = p.t_lo if math.isinf(p.t_hi) else 0.5 * (p.t_lo + p.t_hi)
            if p.delta_at(probe) <= 0:
                raise ValueError("Delta must be positive")
        object.__setattr__(self, "pieces", ps)

    def delta(self, t: float) -> float:
        for p in self.pieces:
            if p.t_lo <= t <= p.t_hi:
                return p.delta_at(t)
        raise ValueError(f"t={t} outside the model's domain")


def classical_delta(log_D: float, n_L: int, c: float = config.ZFR_CONSTANT) -> ZeroFreeRegionModel:
    """Delta(t) = c / (log D + n log t) on [3, inf)."""
    if log_D <= 0 or n_L < 1:
        raise ValueError("need log_D > 0 and n_L >= 1")
    return ZeroFreeRegionModel((ClassicalPiece(c, log_D, n_L),))


def two_piece_model(delta: float, T: float, log_D: float, n_L: int, c: float = config.ZFR_CONSTANT) -> ZeroFreeRegionModel:
    """Constant delta on [3, T], classical shape beyond T."""
    return ZeroFreeRegionModel((ConstantPiece(delta, 3.0, T), ClassicalPiece(c, log_D, n_L, T, math.inf)))


def _log_x(x: float | None, log_x: float | None) -> float:
    L = math.log(x) if log_x is None else float(log_x)
    if L < math.log(3) * (1 - 1e-15):
        raise ValueError("x must be >= 3")
    return L


def eta_of_x(model: ZeroFreeRegionModel, x: float | None = None, log_x: float | None = None) -> float:
    """inf_{t >= 3} [Delta(t) log x + log t], piecewise closed forms.

    Pass ``log_x`` instead of ``x`` when x overflows a float.
    """
    L = _log_x(x, log_x)
    return min(p.minimize(L) for p in model.pieces)


def _grid_min(piece, L: float, points: int = 20001) -> float:
    lo = math.log(piece.t_lo)
    if math.isinf(piece.t_hi):
        scale = 0.0
        if isinstance(piece, ClassicalPiece):
            scale = math.sqrt(piece.c * L / piece.n)
        hi = lo + 2 * scale + 10.0
    else:
        hi = math.log(piece.t_hi)
    us = np.linspace(lo, hi, points)
    vals = np.array([piece.delta_log(u) * L + u for u in us])
    i = int(np.argmin(vals))
    a, b = us[max(i - 1, 0)], us[min(i + 1, points - 1)]
    if b > a:
        res = minimize_scalar(lambda u: piece.delta_log(u) * L + u, bounds=(a, b), method="bounded",
                              options={"xatol": 1e-12})
        return float(min(res.fun, vals[i]))
    return float(vals[i])


def eta_grid_search(
    model: ZeroFreeRegionModel, x: float | None = None, log_x: float | None = None, points: int = 20001
) -> float:
    """Grid-plus-refinement oracle for eta_of_x."""
    L = _log_x(x, log_x)
    return min(_grid_min(p, L, points) for p in model.pieces)


def classical_eta_lower_bound(log_x: float, log_D: float, n_L: int, c: float = config.ZFR_CONSTANT) -> float:
    """min{c log x / log D, sqrt(c log x / n)}, a lower bound for eta(x) in the classical model."""
    L = log_x
    return min(c * L / log_D, math.sqrt(c * L / n_L))


# detection window and polynomial -----------------------------------------------------


@dataclass(frozen=True)
class DetectionWindow:
    K: float
    log_A1: float
    log_A2: float
    tau_threshold: float
    eta_range: tuple

    @property
    def A1(self) -> float:
        return math.exp(self.log_A1) if self.log_A1 < 700 else math.inf

    @property
    def A2(self) -> float:
        return math.exp(self.log_A2) if self.log_A2 < 700 else math.inf


def detection_window(
    eta: float,
    C_pi0: float = 1.0,
    q: float = 1.0,
    Q: float = 1.0,
    T: float = 1.0,
    m0: int = 1,
    m: int = 1,
    slack: float = 0.0,
    log_conductor: float | None = None,
    enforce: bool = True,
) -> DetectionWindow:
    """K = 4000 (m0 m)^2 eta log(C q Q T) + slack, with A1, A2 and the 200 eta threshold.

    The admissible eta interval [1/log(CqQT), 1/(10^7 (m0 m)^2)] is empty unless
    log(CqQT) >= 10^7 (m0 m)^2, so ``log_conductor`` may be passed directly.
    """
    L = log_conductor if log_conductor is not None else math.log(C_pi0) + math.log(q) + math.log(Q) + math.log(T)
    if L <= 0:
        raise ValueError("log(C q Q T) must be positive")
    lo, hi = 1 / L, 1 / (1e7 * (m0 * m) ** 2)
    if enforce and not (lo * (1 - 1e-12) <= eta <= hi * (1 + 1e-12)):
        raise ValueError(f"eta={eta} outside the admissible window [{lo}, {hi}]")
    K = 4000 * (m0 * m) ** 2 * eta * L + slack
    return DetectionWindow(K, K / (300 * eta), 40 * K / eta, 200 * eta, (lo, hi))


def detection_coefficients(
    pi: SatakeData,
    pi0: SatakeData,
    tau: float,
    lo: float,
    hi: float,
    chi: Callable[[int], complex] | None = None,
    beta_chi: float | None = None,
) -> dict:
    """p -> lambda_{pi x pi0}(p) log p / p^{1 + i tau} (1 + chi(p) p^{beta - 1}) for lo < p <= hi."""
    out = {}
    for p in primes_up_to(int(math.floor(hi))):
        if p <= lo:
            continue
        c = lambda_coeff(pi, pi0, p) * math.log(p) * cmath.exp(-(1 + 1j * tau) * math.log(p))
        if chi is not None and beta_chi is not None:
            c *= 1 + chi(p) * p ** (beta_chi - 1)
        out[p] = c
    return out


def detection_polynomial(
    pi: SatakeData,
    pi0: SatakeData,
    tau: float,
    u: float,
    A1: float,
    chi: Callable[[int], complex] | None = None,
    beta_chi: float | None = None,
) -> complex:
    """The prime sum over A1 < p <= u; the chi factor is dropped when chi or beta_chi is absent."""
    if u <= A1:
        return 0j
    return sum(detection_coefficients(pi, pi0, tau, A1, u, chi, beta_chi).values(), 0j)


@dataclass(frozen=True)
class SummationByParts:
    smoothed: complex
    boundary: complex
    integral: complex

    @property
    def rhs(self) -> complex:
        return self.boundary - self.integral

    @property
    def rel_error(self) -> float:
        scale = max(abs(self.smoothed), abs(self.boundary), abs(self.integral))
        return abs(self.smoothed - self.rhs) / scale if scale else 0.0


def summation_by_parts(coeffs: Mapping[int, complex], eta: float, k: int, A1: float, A2: float) -> SummationByParts:
    """Both sides of the summation-by-parts identity for sum_p j_k(eta log p) c_p.

    eta sum_{A1<p<=A2} j_k(eta log p) c_p
        = j_k(eta log A2) eta S(A2) - eta^2 int_{A1}^{A2} j_k'(eta log u) S(u) du/u,
    S(u) = sum_{A1<p<=u} c_p. The integral uses Gauss-Legendre on each
    interval where S is constant, in the variable log u.
    """
    ps = sorted(p for p in coeffs if A1 < p <= A2)
    smoothed = eta * sum((j_k(eta * math.log(p), k) * coeffs[p] for p in ps), 0j)
    S_total = sum((coeffs[p] for p in ps), 0j)
    boundary = j_k(eta * math.log(A2), k) * eta * S_total
    nodes, weights = np.polynomial.legendre.leggauss(12)
    breaks = [math.log(A1)] + [math.log(p) for p in ps] + [math.log(A2)]
    integral = 0j
    S = 0j
    for i in range(len(breaks) - 1):
        if i > 0:
            S += coeffs[ps[i - 1]]
        a, b = breaks[i], breaks[i + 1]
        if b <= a or S == 0:
            continue
        v = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        jd = np.array([j_k_derivative(eta * vv, k) for vv in v])
        integral += S * 0.5 * (b - a) * float(np.dot(weights, jd))
    return SummationByParts(smoothed, boundary, eta**2 * integral)


# bound evaluators ----------------------------------------------------------------------


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709 else math.inf


def density_bound(
    kind: str,
    C_pi0: float,
    Q: float,
    T: float,
    m0: int,
    m: int,
    sigma: float,
    beta_chi: float | None = None,
) -> float:
    """(C Q T)^{10^7 (m0 m)^4 (1 - sigma)}, times min{1, (1 - beta) log(QT)} for kind 'landau_siegel'."""
    if not 0.5 <= sigma <= 1:
        raise ValueError("sigma must lie in [1/2, 1]")
    if kind not in ("lfzde", "landau_siegel"):
        raise ValueError(f"unknown kind {kind!r}")
    expo = 1e7 * (m0 * m) ** 4 * (1 - sigma) * math.log(C_pi0 * Q * T)
    if kind == "landau_siegel":
        if beta_chi is None:
            raise ValueError("landau_siegel needs beta_chi")
        factor = min(1.0, (1 - beta_chi) * math.log(Q * T))
        if factor <= 0:
            return 0.0
        return _safe_exp(expo + math.log(factor))
    return _safe_exp(expo)


def page_region(sigma: float, t: float, A: float, C_pi0: float, Q: float, T: float, m0: int, m: int) -> bool:
    """sigma >= 1 - A / (10^7 (m0 m)^4 log(C Q (T + 2))) for |t| <= T."""
    if abs(t) > T:
        raise ValueError("|t| must not exceed T")
    return sigma >= 1 - A / (1e7 * (m0 * m) ** 4 * math.log(C_pi0 * Q * (T + 2)))


def analytic_conductor(N: float, mu: Sequence[complex], t: float = 0.0) -> float:
    """N prod_j (1 + |i t + mu_j|)."""
    out = float(N)
    for m in mu:
        out *= 1 + abs(1j * t + m)
    return out


def pair_conductor_bound(C1: float, d1: int, C2: float, d2: int, t: float = 0.0) -> float:
    """C1^{d2} C2^{d1} (1 + |t|)^{d1 d2}."""
    return C1**d2 * C2**d1 * (1 + abs(t)) ** (d1 * d2)
