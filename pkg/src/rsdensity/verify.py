"""Seeded invariant suites behind ``rsdensity verify-all``.

Each suite returns a plain dict with ``checked``, ``violations``, ``passed``,
the asserted quantities under ``details`` and unasserted ratios under
``diagnostic``. Floats are rounded to a fixed number of significant digits so
that reports compare byte for byte across runs.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from . import config
from .analytic_toolkit import (
    TestFunction,
    j_bound_scan,
    micro_inequalities,
    selberg_weights,
    sos_turan,
)
from .arith import factorize, primes_up_to
from .chebotarev_lab import AbelianFieldSpec, pi_C, prime_pi, ramified_count
from .characters import dirichlet_characters
from .conductor_pairs import (
    bh_tightness_witness,
    pair_bound,
    random_character_pair,
    swan_pair_bound,
    tensor_conductor_exact,
    tensor_swan_exact,
)
from .family_lab import (
    build_index,
    character_satake,
    decorated_count,
    embed,
    entry_coefficient,
    gram_vs_series,
    index_weight,
    quasi_orth_certify,
)
from .local_factors import assembled_coefficient, local_rs_series, random_bz_pair
from .rs_coefficients import (
    rs_coeff_ideal,
    rs_coeff_ideal_double_sum,
    rs_coeff_oracle,
    rs_coeff_prime_power,
    sample_satake,
)
from .zero_lab import (
    bundled_zeta_zeros,
    classical_delta,
    count_zeros,
    eta_grid_search,
    eta_of_x,
    two_piece_model,
)

SIG_DIGITS = 6


def fmt(x: float) -> float:
    """Round to SIG_DIGITS significant digits (keeps reports stable)."""
    x = float(x)
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{SIG_DIGITS - 1}e}")


def _suite(name, checked, violations, details=None, diagnostic=None) -> dict:
    return {
        "name": name,
        "checked": int(checked),
        "violations": int(violations),
        "passed": violations == 0,
        "details": details or {},
        "diagnostic": diagnostic or {},
    }


def _rel_err(a: complex, b: complex) -> float:
    return abs(a - b) / (1 + abs(b))


# 1. Cauchy identity against the direct Euler-factor expansion -------------------


def suite_cauchy(seed: int, draws: int = 500, r_max: int = 8, tol: float = config.REL_TOL) -> dict:
    rng = np.random.default_rng([seed, 1])
    kinds = ("unitary", "grc", "js")
    checked = bad = 0
    worst = 0.0
    for n in (1, 2, 3, 4):
        for _ in range(draws):
            p = int(rng.choice([2, 3, 5, 7, 11, 13]))
            s1, s2 = (int(v) for v in rng.integers(0, 2**31, size=2))
            k1, k2 = kinds[int(rng.integers(0, 3))], kinds[int(rng.integers(0, 3))]
            pi = sample_satake(n, s1, kind=k1, primes=[p], p_max=p)
            pi0 = sample_satake(n, s2, kind=k2, primes=[p], p_max=p)
            for r in range(r_max + 1):
                got = rs_coeff_prime_power(pi, pi0, p, r, check_central=False)
                err = _rel_err(got, rs_coeff_oracle(pi, pi0, p, r))
                worst = max(worst, err)
                checked += 1
                bad += err > tol
    return _suite("cauchy_identity", checked, bad, {"max_rel_error": fmt(worst), "tol": tol})


def suite_multiplicative(seed: int, draws: int = 20, m_max: int = 200) -> dict:
    """Multiplicative assembly against the d^n double sum (equal unitary centrals)."""
    rng = np.random.default_rng([seed, 11])
    checked = bad = 0
    worst = 0.0
    for i in range(draws):
        n = 2 + i % 3
        q = int(rng.choice([3, 5, 7]))
        chi = dirichlet_characters(q)[int(rng.integers(0, q - 1))]
        pi = sample_satake(n, int(rng.integers(0, 2**31)), conductor=q, p_max=m_max, central=chi)
        pi0 = sample_satake(n, int(rng.integers(0, 2**31)), conductor=q, p_max=m_max, central=chi)
        for m in range(1, m_max + 1):
            if m % q == 0:
                continue
            err = _rel_err(rs_coeff_ideal_double_sum(pi, pi0, m), rs_coeff_ideal(pi, pi0, m))
            worst = max(worst, err)
            checked += 1
            bad += err > config.REL_TOL
    return _suite("multiplicative_vs_double_sum", checked, bad, {"max_rel_error": fmt(worst)})


# 2. ramified local factors --------------------------------------------------------


def suite_local(seed: int, pairs: int = 200, r_max: int = 6, tol: float = config.REL_TOL) -> dict:
    rng = np.random.default_rng([seed, 2])
    checked = bad = 0
    worst = 0.0
    for _ in range(pairs):
        q = int(rng.choice([2, 3, 5]))
        sigma, tau = random_bz_pair(rng, q)
        series = local_rs_series(sigma, tau, r_max)
        for r in range(r_max + 1):
            err = _rel_err(assembled_coefficient(sigma, tau, r), series[r])
            worst = max(worst, err)
            checked += 1
            bad += err > tol
    return _suite("ramified_assembly", checked, bad, {"max_rel_error": fmt(worst), "tol": tol})


# 3. conductor bounds ----------------------------------------------------------------


def suite_conductor(seed: int, instances: int = 10_000) -> dict:
    rng = np.random.default_rng([seed, 3])
    checked = bad = 0
    tight = 0
    for _ in range(instances):
        p = int(rng.choice([2, 3, 5, 7]))
        sigma, tau = random_character_pair(rng, p)
        exact = tensor_conductor_exact(sigma, tau)
        bound = pair_bound(sigma.as_wdrep(), tau.as_wdrep(), True)
        sw = tensor_swan_exact(sigma, tau)
        sw_bound = swan_pair_bound(sigma, tau, True)
        checked += 2
        bad += (exact > bound) + (sw > sw_bound)
        tight += exact == bound
    witness = {}
    for n in (2, 3, 4):
        for a in (1, 2, 3, 5):
            _, _, c = bh_tightness_witness(n, a)
            witness[f"n={n},a={a}"] = c
            checked += 1
            bad += c != (2 * n - 2) * a
    return _suite("conductor_bounds", checked, bad, {"tightness_witness": witness}, {"tight_instances": tight})


# 4. Gram identity -----------------------------------------------------------------


def _gram_corpus(seed: int, chars_per_q: int = 4, X1: float = 500, X2: float = 100):
    rng = np.random.default_rng([seed, 4])
    for q in range(3, 21):
        chars = dirichlet_characters(q)
        pick = [0] + sorted(rng.choice(range(1, len(chars)), size=min(chars_per_q, len(chars)) - 1, replace=False).tolist())
        S = tuple(factorize(q))
        idx = build_index(X1, S, 1)
        sats = [character_satake(chars[i], p_max=int(X1), label=f"chi_{q}_{i}") for i in pick]
        for a in sats:
            for b in sats:
                yield a, b, idx
    for q, n in ((5, 2), (7, 2), (8, 2), (11, 2), (7, 3)):
        chars = dirichlet_characters(q)
        chi = chars[int(rng.integers(0, len(chars)))]
        S = tuple(factorize(q))
        idx = build_index(X2, S, n)
        pis = [
            sample_satake(n, int(rng.integers(0, 2**31)), kind=kind, conductor=q, p_max=int(X2), central=chi)
            for kind in ("unitary", "unitary", "js")
        ]
        for a in pis:
            for b in pis:
                yield a, b, idx


def suite_gram(seed: int, tol: float = config.REL_TOL) -> dict:
    f = TestFunction("unit_bump")
    checked = bad = 0
    worst = 0.0
    for a, b, idx in _gram_corpus(seed):
        g = gram_vs_series(a, b, idx, f)
        err = g.difference / (1 + abs(g.series))
        worst = max(worst, err)
        checked += 1
        bad += err > tol
    return _suite("gram_identity", checked, bad, {"max_rel_error": fmt(worst), "tol": tol})


def suite_index(seed: int) -> dict:
    """Index sizes against the multiplicative count, and embedded norms against their definition."""
    f = TestFunction("unit_bump")
    checked = bad = 0
    for n in (1, 2, 3, 4):
        for X, S in ((50, ()), (200, (2,)), (300, (3, 5))):
            checked += 1
            bad += len(build_index(X, S, n)) != decorated_count(X, n, S)
    rng = np.random.default_rng([seed, 44])
    worst = 0.0
    for n in (2, 3):
        idx = build_index(120, (), n)
        pi = sample_satake(n, int(rng.integers(0, 2**31)), p_max=120)
        v = embed(pi, idx, f)
        direct = math.sqrt(
            sum(index_weight(idx, e.n_ideal, f) * abs(entry_coefficient(pi, idx, e)) ** 2 for e in idx.entries)
        )
        err = abs(v.norm() - direct)
        worst = max(worst, err)
        checked += 1
        bad += err > 1e-12 * (1 + direct)
    return _suite("index_and_norms", checked, bad, {"max_norm_error": fmt(worst)})


# 5. sphere lemma --------------------------------------------------------------------


def suite_sphere(seed: int, draws: int = 100) -> dict:
    rng = np.random.default_rng([seed, 5])
    checked = bad = 0
    for M in (4, 10, 50):
        res = quasi_orth_certify(np.eye(M))
        checked += 1
        bad += not (res.ok and res.K == M)
        for _ in range(draws):
            V = rng.standard_normal((M + 1, M))
            V /= np.linalg.norm(V, axis=1, keepdims=True)
            res = quasi_orth_certify(V)
            checked += 1
            bad += res.ok or res.pair is None
    return _suite("sphere_lemma", checked, bad)


# 6. power sums -----------------------------------------------------------------------


def suite_power_sum(seed: int, instances: int = 10_000) -> dict:
    rng = np.random.default_rng([seed, 6])
    bad = 0
    for _ in range(instances):
        nu = int(rng.integers(1, 9))
        K = int(rng.integers(nu, 13))
        z = np.sqrt(rng.uniform(0, 1, nu)) * np.exp(2j * np.pi * rng.uniform(0, 1, nu))
        bad += not sos_turan(z.tolist(), K).certified
    return _suite("sos_turan", instances, bad)


# 7. Selberg sieve ---------------------------------------------------------------------


def suite_sieve(seed: int, samples: int = 1000) -> dict:
    rng = np.random.default_rng([seed, 7])
    checked = bad = 0
    details = {}
    for z in (10, 30):
        sv = selberg_weights(lambda p: Fraction(1, p), z)
        conds = sv.conditions()
        checked += len(conds)
        bad += sum(not v for v in conds.values())
        qf, mt = sv.quadratic_form(), sv.main_term()
        checked += 1
        bad += abs(float(qf - mt)) > 1e-12 * float(mt)
        big = [p for p in primes_up_to(2000) if p > z]
        for _ in range(samples):
            k = int(rng.integers(1, 4))
            n = math.prod(int(rng.choice(big)) for _ in range(k))
            checked += 1
            bad += sv.w(n) != 1
        details[f"z={z}"] = {"main_term": str(mt), "quadratic_form": str(qf)}
    return _suite("selberg_sieve", checked, bad, details)


# 8. j_k bound and micro-inequalities ---------------------------------------------------


def suite_inequalities(seed: int) -> dict:
    scan = j_bound_scan()
    micro = micro_inequalities()
    us = np.linspace(0, 50, 2001)
    from .analytic_toolkit import j_k_derivative

    deriv_bad = sum(abs(j_k_derivative(float(u), k)) > 1 + 1e-12 for k in (1, 5, 20, 80) for u in us)
    checked = scan["checked"] + 3
    bad = scan["violations"] + micro["log_power_violations"] + micro["log_linear_violations"] + deriv_bad
    diag = {k: fmt(v) for k, v in micro.items() if "slack" in k}
    return _suite("j_bound_and_micro", checked, bad, {"j_bound_points": scan["checked"]}, diag)


# 9. Chebotarev counts --------------------------------------------------------------------


def suite_chebotarev(seed: int, xs=(10**4, 10**6)) -> dict:
    checked = bad = 0
    for q in (3, 4, 5, 8, 12):
        field = AbelianFieldSpec.cyclotomic(q)
        for x in xs:
            total = sum(pi_C(field, c, x) for c in field.classes()) + ramified_count(field, x)
            checked += 1
            bad += total != prime_pi(x)
    # enumeration oracle for pi_C(100; 4, 1)
    direct = sum(1 for p in primes_up_to(100) if p % 4 == 1)
    got = pi_C(AbelianFieldSpec.cyclotomic(4), 1, 100)
    checked += 2
    bad += (got != direct) + (got != 11)
    return _suite("chebotarev_partition", checked, bad, {"pi_C(100;4,1)": got})


# 10. eta(x) --------------------------------------------------------------------------------


def suite_eta(seed: int, models: int = 1000, tol: float = 1e-6) -> dict:
    rng = np.random.default_rng([seed, 10])
    checked = bad = 0
    worst = 0.0
    for _ in range(models):
        log_D = float(rng.uniform(1, 50))
        n_L = int(rng.integers(1, 10))
        T = float(np.exp(rng.uniform(math.log(4), math.log(1e6))))
        c = float(rng.uniform(0.05, 0.5))
        delta = float(rng.uniform(1e-3, 0.5)) * max(c / (log_D + n_L * math.log(T)), 1e-6) * 10
        m = two_piece_model(delta, T, log_D, n_L, c)
        L = float(np.exp(rng.uniform(math.log(2), math.log(1e6))))
        a, b = eta_of_x(m, log_x=L), eta_grid_search(m, log_x=L, points=4001)
        err = abs(a - b) / max(abs(b), 1e-300)
        worst = max(worst, err)
        checked += 1
        bad += err > tol
    logs = np.geomspace(2, 1e8, 200)
    for log_D in (1.0, 10.0, 100.0):
        for n_L in (1, 4):
            model = classical_delta(log_D, n_L)
            vals = [eta_of_x(model, log_x=float(L)) for L in logs]
            checked += len(vals) - 1
            bad += sum(vals[i + 1] < vals[i] - 1e-12 for i in range(len(vals) - 1))
            for L, v in zip(logs, vals):
                if L / 2 < math.log(3):
                    continue
                checked += 1
                bad += eta_of_x(model, log_x=float(L) / 2) < v / 2 - 1e-12
    return _suite("eta_closed_form", checked, bad, {"max_rel_error": fmt(worst), "tol": tol})


# 11. zero counting --------------------------------------------------------------------------


def suite_zeros(seed: int) -> dict:
    table = bundled_zeta_zeros()
    got = count_zeros(table, 0.5, 100)
    # independent scan of the raw file
    from importlib import resources

    raw = resources.files("rsdensity").joinpath("data/zeta_zeros_100.txt").read_text(encoding="utf-8")
    ords = [float(line) for line in raw.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    scan = 2 * sum(1 for g in ords if g <= 100)
    bad = (got != 58) + (scan != got) + (len(table) != 100)
    return _suite("zero_count", 3, bad, {"count_sigma_half_T100": got, "independent_scan": scan})


SUITES = (
    ("cauchy_identity", suite_cauchy),
    ("multiplicative_vs_double_sum", suite_multiplicative),
    ("ramified_assembly", suite_local),
    ("conductor_bounds", suite_conductor),
    ("gram_identity", suite_gram),
    ("index_and_norms", suite_index),
    ("sphere_lemma", suite_sphere),
    ("sos_turan", suite_power_sum),
    ("selberg_sieve", suite_sieve),
    ("j_bound_and_micro", suite_inequalities),
    ("chebotarev_partition", suite_chebotarev),
    ("eta_closed_form", suite_eta),
    ("zero_count", suite_zeros),
)


def run_all(seed: int, only=None) -> dict:
    results = [fn(seed) for name, fn in SUITES if only is None or name in only]
    return {"suites": results, "passed": all(r["passed"] for r in results)}
