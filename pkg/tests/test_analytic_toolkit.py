import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from rsdensity.analytic_toolkit import (
    TestFunction,
    gallagher_ratio,
    j_bound_check,
    j_bound_scan,
    j_k,
    j_k_derivative,
    laplace_decay_constants,
    micro_inequalities,
    selberg_weights,
    smoothing_sum_F,
    sos_turan,
    weiss_factor,
    window_logs,
)
from rsdensity.arith import primes_up_to


def test_unit_bump_mass_and_support():
    f = TestFunction("unit_bump")
    assert f.support == (0.5, 1.0)
    mass, _ = integrate.quad(f, 0.5, 1.0, epsabs=1e-14, limit=200)
    assert abs(mass - 1) < 1e-8
    xs = np.linspace(-1, 2, 301)
    vals = np.array([f(x) for x in xs])
    assert np.all(vals >= 0)
    assert np.all(vals[(xs <= 0.5) | (xs >= 1.0)] == 0)


def test_other_kinds():
    g = TestFunction("compact_bump")
    lo, hi = g.support
    assert -2 < lo and hi < 2 and g(0.0) > 0 and g(2.5) == 0
    phi = TestFunction("explicit_phi")
    assert phi.support == (-0.5, 0.0)
    t = -0.25
    assert phi(t) == pytest.approx(math.exp(16 + 1 / (t * (t + 0.5))))
    assert phi(0.1) == 0 and phi(-0.6) == 0
    with pytest.raises(ValueError):
        TestFunction("nope")


def test_transforms():
    f = TestFunction("unit_bump")
    assert f.mellin(1) == pytest.approx(1, abs=1e-8)
    phi = TestFunction("compact_bump")
    direct, _ = integrate.quad(lambda y: phi(y) * math.exp(0.7 * y), *phi.support)
    assert phi.laplace(0.7) == pytest.approx(direct)
    with pytest.raises(ValueError):
        phi.mellin(1)
    consts = laplace_decay_constants(phi, [complex(1, t) for t in (1, 5, 20)])
    assert set(consts) == {0, 1, 2} and all(v > 0 for v in consts.values())


def test_smoothing_sum_examples():
    f = TestFunction("unit_bump")
    assert smoothing_sum_F(20, 10, 2, f) == 0
    assert smoothing_sum_F(7, 10, 5, f) == pytest.approx(f(0.7))
    assert smoothing_sum_F(1, 8, 2, f) == pytest.approx(f(0.5))
    # m = 3 is skipped when 3 is excluded
    assert smoothing_sum_F(1, 12, 2, f, S=(3,)) == pytest.approx(f(1 / 12) + f(4 / 12) + f(16 / 12))


def test_j_k_basics():
    assert j_k(0, 3) == 0
    assert j_k(2.0, 3) == pytest.approx(2**3 * math.exp(-2) / 6)
    assert j_k(5000.0, 4000) > 0  # log-domain evaluation stays finite
    for k in (1, 3, 10, 50):
        for u in np.linspace(0.01, 80, 200):
            assert j_k_derivative(u, k) == pytest.approx(j_k(u, k - 1) - j_k(u, k), abs=1e-15)
            assert abs(j_k_derivative(u, k)) <= 1
            h = 1e-6
            fd = (j_k(u + h, k) - j_k(u - h, k)) / (2 * h)
            assert fd == pytest.approx(j_k_derivative(u, k), abs=1e-7)


def test_j_bound_window_and_scan():
    K, eta = 20, 1e-2
    la1, la2 = window_logs(K, eta)
    assert la1 == pytest.approx(K / (300 * eta)) and la2 == pytest.approx(40 * K / eta)
    assert j_bound_check(K, eta, (la1 + la2) / 2, la1, la2) is None
    res = j_bound_scan(samples=50)
    assert res["violations"] == 0 and res["checked"] > 0


def test_sos_turan_examples():
    r = sos_turan([0.8j], 1)
    assert r.certified and r.k == 1
    for nu in (2, 5, 8):
        z = [0.9 * np.exp(2j * np.pi * j / nu) for j in range(nu)]
        assert sos_turan(z, nu).certified
    with pytest.raises(ValueError):
        sos_turan([1, 1, 1], 2)


def test_gallagher_examples():
    single = gallagher_ratio({7: 2 - 1j}, 3.0)
    assert single.lhs == pytest.approx(2 * 3.0 * 5, rel=1e-6)
    assert single.rhs == pytest.approx(3.0 * 5, rel=1e-12)
    assert single.ratio == pytest.approx(2, rel=1e-6)
    a = {n: 1.0 for n in range(10, 21)}
    r = gallagher_ratio(a, 4.0)
    assert math.isfinite(r.ratio) and r.ratio > 0
    assert r.lhs == pytest.approx(r.lhs_exact, rel=1e-5)
    r2 = gallagher_ratio({n: (3 + 4j) * v for n, v in a.items()}, 4.0)
    assert r2.ratio == pytest.approx(r.ratio, rel=1e-6)
    with pytest.raises(ValueError):
        gallagher_ratio(a, 0.5)


def brute_quadratic_min(sv):
    """Direct double sum over the support, used as an independent check."""
    total = Fraction(0)
    for d1, r1 in sv.rho.items():
        for d2, r2 in sv.rho.items():
            L = math.lcm(d1, d2)
            g = Fraction(1)
            for p in sv.primes:
                if L % p == 0:
                    g *= sv.g[p]
            total += r1 * r2 * g
    return total


@pytest.mark.parametrize("z", [10, 30])
def test_selberg_main_term_identity(z):
    sv = selberg_weights(lambda p: Fraction(1, p), z)
    assert all(sv.conditions().values())
    assert sv.quadratic_form() == sv.main_term() == brute_quadratic_min(sv)
    assert sv.rho[1] == 1


def test_selberg_known_value_and_sifted_numbers(rng):
    sv = selberg_weights(lambda p: Fraction(1, p), 10)
    assert sv.main_term() == Fraction(3, 11)
    assert sv.literal_z2_sum() > 1 / sv.main_term()
    for _ in range(300):
        n = int(rng.choice([11, 13, 17, 19, 23])) ** int(rng.integers(1, 4)) * int(rng.choice([29, 31, 1]))
        assert sv.w(n) == 1
    # w is a square, hence non-negative, on every integer
    assert all(sv.w(n) >= 0 for n in range(1, 500))
    with pytest.raises(ValueError):
        selberg_weights(lambda p: Fraction(1), 10)


def test_selberg_float_weights_agree():
    exact = selberg_weights(lambda p: Fraction(1, p), 30)
    approx = selberg_weights(lambda p: 1 / p, 30)
    for d, r in exact.rho.items():
        assert float(r) == pytest.approx(approx.rho[d], rel=1e-12)


def test_micro_inequalities():
    res = micro_inequalities()
    assert res["log_power_violations"] == 0 and res["log_linear_violations"] == 0
    assert 1 == math.factorial(1) and math.log(1) ** 5 == 0


def test_weiss_factor_examples():
    A1, A2, eta = 10, 500, 0.01
    ps = [p for p in primes_up_to(A2) if A1 < p <= A2]
    assert weiss_factor(A1, A2, 1.0, eta, lambda p: -1) == 0
    plus = weiss_factor(A1, A2, 1.0, eta, lambda p: 1)
    assert plus == pytest.approx(eta * sum(4 * math.log(p) / p for p in ps))
    minus = weiss_factor(A1, A2, 0.5, eta, lambda p: -1)
    half = weiss_factor(A1, A2, 0.5, eta, lambda p: 1)
    assert 0 < minus < plus and 0 < half < plus
    with pytest.raises(ValueError):
        weiss_factor(A1, A2, 0.2, eta, lambda p: 1)
