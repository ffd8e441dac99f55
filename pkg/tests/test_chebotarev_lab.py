import math
import warnings
from fractions import Fraction

import pytest
import sympy

from rsdensity.chebotarev_lab import (
    AbelianFieldSpec,
    error_report,
    ev_torsion_bound,
    grh_bound,
    grh_range_ok,
    is_fundamental_discriminant,
    pi_C,
    prime_pi,
    quasi_grh_bound,
    ramified_count,
    split_prime_count,
)

# pi(10^k) from standard tables
PI_TABLE = {10**4: 1229, 10**6: 78498, 10**7: 664579}


def test_field_validation():
    with pytest.raises(ValueError):
        AbelianFieldSpec.cyclotomic(2)
    with pytest.raises(ValueError):
        AbelianFieldSpec.quadratic(20)
    assert is_fundamental_discriminant(-4) and is_fundamental_discriminant(-163) and is_fundamental_discriminant(12)
    assert not is_fundamental_discriminant(-16) and not is_fundamental_discriminant(3)
    f = AbelianFieldSpec.cyclotomic(12)
    assert f.classes() == [1, 5, 7, 11] and f.group_order == 4 and f.ramified_primes == [2, 3]
    assert f.log_D == pytest.approx(4 * math.log(12))


def test_prime_pi_table():
    for x, want in PI_TABLE.items():
        assert prime_pi(x) == want


def test_pi_c_examples():
    f4 = AbelianFieldSpec.cyclotomic(4)
    assert pi_C(f4, 1, 100) == 11 == sum(1 for p in sympy.primerange(2, 101) if p % 4 == 1)
    assert pi_C(f4, 1, 1.5) == 0
    x = 10**5
    assert pi_C(f4, 1, x) + pi_C(f4, 3, x) == prime_pi(x) - 1
    with pytest.raises(ValueError):
        pi_C(f4, 2, 100)


@pytest.mark.parametrize("q", [3, 4, 5, 8, 12])
def test_partition_identity(q):
    f = AbelianFieldSpec.cyclotomic(q)
    for x in (10**4, 10**6):
        assert sum(pi_C(f, c, x) for c in f.classes()) + ramified_count(f, x) == prime_pi(x)


def test_quadratic_field_against_legendre():
    f = AbelianFieldSpec.quadratic(-163)
    x = 20_000
    split = sum(1 for p in sympy.primerange(3, x + 1) if p != 163 and sympy.legendre_symbol(-163 % p, p) == 1)
    assert pi_C(f, "split", x) == split
    assert pi_C(f, "split", x) + pi_C(f, "inert", x) + ramified_count(f, x) == prime_pi(x)
    # the smallest split prime for d = -163 is 41
    assert split_prime_count(f, 40) == 0 and split_prime_count(f, 41) == 1


def test_split_count_examples():
    f5 = AbelianFieldSpec.cyclotomic(5)
    assert split_prime_count(f5, 100) == 5
    assert split_prime_count(f5, 10) == 0
    assert split_prime_count(f5, 10**4) == pi_C(f5, 1, 10**4)


def test_error_report_is_exact():
    f = AbelianFieldSpec.cyclotomic(4)
    rep = error_report(f, 1, 10**6)
    assert rep.expected == Fraction(78498, 2)
    assert rep.E_C == abs(rep.pi_C - Fraction(rep.pi_x, 2))
    assert rep.grh_bound == pytest.approx(0.5 * 1000 * (f.log_D + 2 * math.log(1e6)))
    assert list(rep.row()) == ["x", "pi_C", "expected", "E_C", "grh_bound", "quasi_grh_bound"]


def test_bound_shapes():
    assert grh_range_ok(10, 0.5)
    assert not grh_range_ok(10, 50.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        small = quasi_grh_bound(0.5, 1e300, 2.0, 2, 2, 1e200)
        big_T = [quasi_grh_bound(0.25, T, 2.0, 2, 2, 1e6) for T in (1e3, 1e30, 1e300)]
    assert small < 1e200 / math.log(1e200) * 1e-10
    first = 1e6 / math.log(1e6) / 2 * math.exp(-0.25 * math.log(1e6) / 8)
    assert big_T[0] > big_T[1] > big_T[2] and big_T[2] == pytest.approx(first, rel=1e-5)
    with pytest.warns(RuntimeWarning):
        quasi_grh_bound(0.5, 10, 5.0, 2, 2, 100)
    assert grh_bound(100, 1.0, 2) == pytest.approx(0.5 * 10 * (1 + 2 * math.log(100)))


def test_ev_torsion_examples():
    D, n, ell, eps = 1e12, 2, 2, 0.01
    top = 1 / (2 * ell * (n - 1))
    e1, thr = ev_torsion_bound(D, n, ell, eps, 1)
    assert e1 == pytest.approx(0.5 + eps)
    M = math.ceil(D ** (top - eps))
    e2, _ = ev_torsion_bound(D, n, ell, eps, M)
    assert e2 == pytest.approx(0.5 - top + 2 * eps, abs=1e-3)
    assert thr == pytest.approx(D ** (top - eps))
    with pytest.raises(ValueError):
        ev_torsion_bound(D, n, ell, 0.5, 1)


def test_ev_torsion_with_quadratic_sieve():
    f = AbelianFieldSpec.quadratic(-163)
    _, thr = ev_torsion_bound(163.0, 2, 2, 0.01, 1)
    M = split_prime_count(f, thr)
    expo, _ = ev_torsion_bound(163.0, 2, 2, 0.01, M)
    assert M == 0 and math.isinf(expo)  # no split prime below 163^{0.24} ~ 3.4
    _, thr = ev_torsion_bound(1e12, 2, 2, 0.01, 1)
    assert split_prime_count(f, thr) > 0
