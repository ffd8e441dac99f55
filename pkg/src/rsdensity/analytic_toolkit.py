"""Smoothing kernels, the power-sum lemma, Selberg sieve weights and mean-value checks.

Statements carrying unspecified implied constants are only reported as
ratios here; explicit inequalities are checked outright.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy import integrate

from .arith import primes_up_to
from .kernels import power_sum_scan

# test functions -------------------------------------------------------------


def _bump_unit(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = (x > 0.5) & (x < 1.0)
    xm = x[m]
    out[m] = np.exp(16.0 - 1.0 / ((xm - 0.5) * (1.0 - xm)))
    return out


COMPACT_RADIUS = 1.5  # closed support [-3/2, 3/2] sits inside (-2, 2)


def _bump_compact(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    m = np.abs(t) < COMPACT_RADIUS
    out[m] = np.exp(1.0 - 1.0 / (1.0 - (t[m] / COMPACT_RADIUS) ** 2))
    return out


def _bump_explicit(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    m = (t > -0.5) & (t < 0.0)
    tm = t[m]
    out[m] = np.exp(16.0 + 1.0 / (tm * (tm + 0.5)))
    return out


_KINDS = {
    "unit_bump": (_bump_unit, (0.5, 1.0)),
    "compact_bump": (_bump_compact, (-COMPACT_RADIUS, COMPACT_RADIUS)),
    "explicit_phi": (_bump_explicit, (-0.5, 0.0)),
}


@dataclass(frozen=True)
class TestFunction:
    """A smooth compactly supported weight.

    kinds: "unit_bump" (support [1/2, 1], total mass 1), "compact_bump"
    (support in (-2, 2)), "explicit_phi" (exp(16 + 1/(t(t+1/2))) on (-1/2, 0)).
    """

    __test__ = False  # keep pytest from collecting this class

    kind: str = "unit_bump"
    scale: float = field(init=False, default=1.0)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown test function {self.kind!r}")
        if self.kind == "unit_bump":
            fn, (lo, hi) = _KINDS[self.kind]
            mass, _ = integrate.quad(lambda x: float(fn(x)), lo, hi, epsabs=1e-15, epsrel=1e-13, limit=200)
            object.__setattr__(self, "scale", 1.0 / mass)

    @property
    def support(self) -> tuple[float, float]:
        return _KINDS[self.kind][1]

    def __call__(self, x):
        val = self.scale * _KINDS[self.kind][0](x)
        return float(val) if np.ndim(val) == 0 else val

    def _quad_complex(self, g: Callable[[float], complex]) -> complex:
        lo, hi = self.support
        opts = dict(epsabs=1e-13, epsrel=1e-10, limit=400)
        re, _ = integrate.quad(lambda y: g(y).real, lo, hi, **opts)
        im, _ = integrate.quad(lambda y: g(y).imag, lo, hi, **opts)
        return complex(re, im)

    def laplace(self, s: complex) -> complex:
        """int phi(y) e^{sy} dy."""
        return self._quad_complex(lambda y: self(y) * cmath.exp(s * y))

    def mellin(self, s: complex) -> complex:
        """int_0^inf f(x) x^s dx / x (positive support only)."""
        if self.support[0] <= 0:
            raise ValueError("Mellin transform needs support in (0, inf)")
        return self._quad_complex(lambda x: self(x) * cmath.exp((s - 1) * math.log(x)))


def laplace_decay_constants(phi: TestFunction, s_values: Sequence[complex], ks: Sequence[int] = (0, 1, 2)) -> dict:
    """Fitted c_k = max |phi^(s)| |s|^k e^{-2|Re s|} over the grid (a shape diagnostic)."""
    out = {}
    vals = [(s, abs(phi.laplace(s))) for s in s_values]
    for k in ks:
        out[k] = max(v * abs(s) ** k * math.exp(-2 * abs(s.real)) for s, v in vals)
    return out


def smoothing_sum_F(n: int, X: float, n_dim: int, f: TestFunction, S: Sequence[int] = ()) -> float:
    """sum_{m >= 1, (m, S) = 1} f(n m^n_dim / X); finite because f has compact support."""
    hi = f.support[1]
    total = 0.0
    m = 1
    while n * m**n_dim <= X * hi:
        if all(m % p for p in S):
            total += f(n * m**n_dim / X)
        m += 1
    return total


# j_k kernel -----------------------------------------------------------------


def j_k(u: float, k: int) -> float:
    """u^k e^{-u} / k!, evaluated in log space."""
    if u < 0:
        raise ValueError("u must be non-negative")
    if u == 0:
        return 1.0 if k == 0 else 0.0
    return math.exp(k * math.log(u) - u - math.lgamma(k + 1))


def j_k_derivative(u: float, k: int) -> float:
    """d/du j_k(u) = j_{k-1}(u) - j_k(u)."""
    return (j_k(u, k - 1) if k >= 1 else 0.0) - j_k(u, k)


def window_logs(K: float, eta: float) -> tuple[float, float]:
    """(log A1, log A2) = (K / (300 eta), 40 K / eta)."""
    return K / (300 * eta), 40 * K / eta


def j_bound_check(k: int, eta: float, log_n: float, log_A1: float, log_A2: float) -> bool | None:
    """Whether j_k(eta log n) <= 110^{-k} n^{-eta/2}; None when n lies inside [A1, A2]."""
    if log_A1 <= log_n <= log_A2:
        return None
    u = eta * log_n
    if u == 0:
        return True
    lhs = k * math.log(u) - u - math.lgamma(k + 1)
    rhs = -k * math.log(110) - eta * log_n / 2
    return lhs <= rhs


def j_bound_scan(Ks=(20, 40, 80), etas=(1e-2, 1e-3), samples: int = 200) -> dict:
    """Check the j_k bound for k in [K, 2K] at log-spaced n outside the window."""
    checked = violations = 0
    for K in Ks:
        for eta in etas:
            la1, la2 = window_logs(K, eta)
            logs = np.concatenate(
                [np.linspace(0.0, la1 * (1 - 1e-9), samples), la2 * np.geomspace(1 + 1e-9, 1e3, samples)]
            )
            for k in range(K, 2 * K + 1):
                for ln in logs:
                    ok = j_bound_check(k, eta, float(ln), la1, la2)
                    checked += 1
                    violations += ok is False
    return {"checked": checked, "violations": violations}


# power sums ------------------------------------------------------------------


@dataclass(frozen=True)
class PowerSumResult:
    k: int
    value: float
    threshold: float
    certified: bool


def sos_turan(z: Sequence[complex], K: int) -> PowerSumResult:
    """First k in [K, 2K] with |z_1^k + ... + z_nu^k| >= (|z_1| / 50)^k."""
    z = [complex(v) for v in z]
    if not z:
        raise ValueError("need at least one number")
    if len(z) > K:
        raise ValueError(f"nu={len(z)} exceeds K={K}")
    k, val, thr = power_sum_scan(z, int(K), abs(z[0]))
    if k < 0:
        return PowerSumResult(-1, val, thr, False)
    return PowerSumResult(k, val, thr, True)


# Gallagher mean value ----------------------------------------------------------


def _coeff_items(a) -> list[tuple[int, complex]]:
    if isinstance(a, Mapping):
        items = [(int(n), complex(v)) for n, v in a.items()]
    else:
        items = [(i + 1, complex(v)) for i, v in enumerate(a)]
    return sorted((n, v) for n, v in items if v != 0)


@dataclass(frozen=True)
class GallagherResult:
    lhs: float
    rhs: float
    ratio: float
    lhs_exact: float


def _lhs_exact(items, T) -> float:
    total = 0.0
    for m, am in items:
        for n, an in items:
            if m == n:
                total += 2 * T * abs(am) ** 2
            else:
                d = math.log(n / m)
                total += (am * an.conjugate()).real * 2 * math.sin(T * d) / d
    return total


def gallagher_ratio(a, T: float, rtol: float = 1e-6, max_intervals: int = 1 << 22) -> GallagherResult:
    """Both sides of Gallagher's mean-value inequality for a finite sequence.

    LHS: int_{-T}^{T} |sum a_n n^{-it}|^2 dt by composite trapezoid with
    interval doubling. RHS: T^2 int_0^inf |sum_{x < n <= x e^{1/T}} a_n|^2 dx/x,
    exact because the inner sum is a step function of log x.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    items = _coeff_items(a)
    if not items:
        return GallagherResult(0.0, 0.0, float("nan"), 0.0)
    ns = np.array([n for n, _ in items], dtype=float)
    cs = np.array([c for _, c in items])
    logs = np.log(ns)

    def trap(N):
        t = np.linspace(-T, T, N + 1)
        vals = np.abs(np.exp(-1j * np.outer(t, logs)) @ cs) ** 2
        return float(np.trapezoid(vals, t)) if hasattr(np, "trapezoid") else float(np.trapz(vals, t))

    N = 256
    prev = trap(N)
    while True:
        N *= 2
        cur = trap(N)
        if abs(cur - prev) <= rtol * abs(cur) or N >= max_intervals:
            break
        prev = cur
    lhs = cur

    # n contributes on log x in [log n - 1/T, log n)
    events = sorted(set(logs.tolist()) | set((logs - 1 / T).tolist()))
    rhs = 0.0
    for lo, hi in zip(events[:-1], events[1:]):
        mid = 0.5 * (lo + hi)
        mask = (logs - 1 / T <= mid) & (mid < logs)
        s = cs[mask].sum()
        rhs += abs(s) ** 2 * (hi - lo)
    rhs = float(rhs * T * T)
    return GallagherResult(lhs, rhs, lhs / rhs if rhs else float("inf"), _lhs_exact(items, T))


# Selberg sieve ---------------------------------------------------------------


@dataclass
class SelbergSieve:
    """Optimal Selberg weights rho_d supported on squarefree d <= z dividing P(z)."""

    z: float
    primes: list
    g: dict
    rho: dict
    G: object

    def h(self, d: int):
        out = Fraction(1) if isinstance(self.G, Fraction) else 1.0
        for p in self.primes:
            if d % p == 0:
                out *= self.g[p] / (1 - self.g[p])
        return out

    def g_of(self, d: int):
        out = Fraction(1) if isinstance(self.G, Fraction) else 1.0
        for p in self.primes:
            if d % p == 0:
                out *= self.g[p]
        return out

    @property
    def P(self) -> int:
        return math.prod(self.primes)

    def w(self, n: int):
        """(sum_{d | (n, P(z))} rho_d)^2."""
        s = sum((r for d, r in self.rho.items() if n % d == 0), 0 * self.rho[1])
        return s * s

    def quadratic_form(self):
        """sum_{d1, d2} rho_{d1} rho_{d2} g([d1, d2])."""
        ds = list(self.rho)
        total = 0 * self.rho[1]
        for d1 in ds:
            for d2 in ds:
                total += self.rho[d1] * self.rho[d2] * self.g_of(math.lcm(d1, d2))
        return total

    def main_term(self):
        """1 / sum_{d <= z, d | P(z)} h(d), the minimum of the quadratic form."""
        return 1 / self.G

    def literal_z2_sum(self):
        """sum_{d <= z^2, d | P(z)} h(d); reported for comparison only."""
        return sum(self.h(d) for d in _squarefree_support(self.primes, self.z**2))

    def conditions(self) -> dict:
        in_support = all(d <= self.z and self.P % d == 0 for d in self.rho)
        return {
            "rho_1_is_1": self.rho[1] == 1,
            "support_in_D_z": in_support,
            "abs_rho_le_1": all(abs(r) <= 1 for r in self.rho.values()),
        }


def _squarefree_support(primes: Sequence[int], bound: float) -> list[int]:
    out = [1]
    for p in primes:
        out += [d * p for d in out if d * p <= bound]
    return sorted(out)


def selberg_weights(g, z: float, exclude: Sequence[int] = ()) -> SelbergSieve:
    """Selberg weights for a prime density g (callable or mapping; Fractions give exact weights)."""
    gfun = g if callable(g) else (lambda p, _g=g: _g.get(p, 0))
    primes, gd = [], {}
    for p in primes_up_to(math.ceil(z)):
        if p >= z or p in exclude:
            continue
        v = gfun(p)
        if v < 0 or v >= 1:
            raise ValueError(f"g({p}) = {v} must lie in [0, 1)")
        if v != 0:
            primes.append(p)
            gd[p] = v
    exact = all(isinstance(v, (int, Fraction)) for v in gd.values())
    one = Fraction(1) if exact else 1.0
    support = _squarefree_support(primes, z)

    def h(d):
        out = one
        for p in primes:
            if d % p == 0:
                out *= gd[p] / (1 - gd[p])
        return out

    hs = {d: h(d) for d in support}

    def G_restricted(y, d):
        return sum((hs[m] for m in support if m <= y and math.gcd(m, d) == 1), 0 * one)

    G = G_restricted(z, 1)
    rho = {}
    for d in support:
        mu = -1 if sum(1 for p in primes if d % p == 0) % 2 else 1
        fac = one
        for p in primes:
            if d % p == 0:
                fac /= 1 - gd[p]
        rho[d] = mu * fac * G_restricted(z / d, d) / G
    return SelbergSieve(z, primes, gd, rho, G)


# micro-inequalities -------------------------------------------------------------


def micro_inequalities(k_max: int = 60, u_points: int = 2000, x_points: int = 2001) -> dict:
    """Grid checks of (log u)^k <= k! u on [1, 1e6] and x <= 2 log(x+1) on [0, 5/2]."""
    us = np.geomspace(1.0, 1e6, u_points)
    logu = np.log(us)
    viol_u, slack_u = 0, math.inf
    for k in range(1, k_max + 1):
        with np.errstate(divide="ignore"):
            lhs = k * np.log(logu)
        rhs = math.lgamma(k + 1) + logu
        gap = rhs - lhs
        viol_u += int(np.sum(gap < 0))
        slack_u = min(slack_u, float(np.min(gap)))
    xs = np.linspace(0.0, 2.5, x_points)
    gap_x = 2 * np.log1p(xs) - xs
    viol_x = int(np.sum(gap_x < -1e-15))
    return {
        "log_power_violations": viol_u,
        "log_power_min_log_slack": slack_u,
        "log_linear_violations": viol_x,
        "log_linear_min_slack": float(np.min(gap_x)),
    }


def weiss_factor(
    A1: float, A2: float, beta_chi: float, eta: float, chi: Callable[[int], complex], primes: Sequence[int] | None = None
) -> float:
    """eta * sum_{A1 < p <= A2} |1 + chi(p) p^{beta-1}|^2 log p / p."""
    if not 0.5 <= beta_chi <= 1:
        raise ValueError("beta_chi must lie in [1/2, 1]")
    plist = primes_up_to(int(A2)) if primes is None else primes
    total = 0.0
    for p in plist:
        if A1 < p <= A2:
            total += abs(1 + chi(p) * p ** (beta_chi - 1)) ** 2 * math.log(p) / p
    return eta * total
