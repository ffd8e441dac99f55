"""Compiled kernels against the pure-Python fallback and independent oracles."""

import importlib
import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rsdensity import _pykernels, kernels

try:
    from rsdensity import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def bialternant(mu, x):
    """s_mu(x) = det(x_i^{mu_j + n - j}) / det(x_i^{n - j}) in exact rationals."""
    n = len(x)
    lam = list(mu) + [0] * (n - len(mu))
    num = sympy.Matrix(n, n, lambda i, j: sympy.Rational(x[i]) ** (lam[j] + n - 1 - j))
    den = sympy.Matrix(n, n, lambda i, j: sympy.Rational(x[i]) ** (n - 1 - j))
    return num.det() / den.det()


@pytest.mark.parametrize(
    "mu,x",
    [((2, 1), (1, 2, 3)), ((3, 1, 1), (2, 3, 5, 7)), ((4,), (1, 2)), ((2, 2), (3, 5, 11)), ((1, 1, 1), (2, 3, 4))],
)
def test_schur_matches_bialternant(mu, x):
    want = float(bialternant(mu, x))
    assert _pykernels.schur_ssyt(mu, x) == pytest.approx(want, rel=1e-12)
    assert kernels.schur_ssyt(mu, x) == pytest.approx(want, rel=1e-12)


def test_residue_counts_match_sympy():
    for q in (1, 3, 4, 10):
        counts, total = kernels.residue_prime_counts(10_000, q)
        assert total == sympy.primepi(10_000) == 1229
        for a in range(q):
            want = sum(1 for p in sympy.primerange(2, 10_001) if p % q == a)
            assert counts[a] == want


def test_backend_selection_env(monkeypatch):
    monkeypatch.setenv("RSDENSITY_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.schur_ssyt is _pykernels.schur_ssyt
    finally:
        monkeypatch.delenv("RSDENSITY_PURE_PYTHON")
        importlib.reload(kernels)


@needs_ext
def test_default_backend_is_compiled():
    assert kernels.BACKEND == "cython"


@needs_ext
@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(0, 4), min_size=0, max_size=4).map(lambda v: tuple(sorted(v, reverse=True))),
    st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), min_size=4, max_size=5),
)
def test_schur_backends_agree(mu, x):
    a, b = _ckernels.schur_ssyt(mu, x), _pykernels.schur_ssyt(mu, x)
    assert abs(a - b) <= 1e-10 * (1 + abs(b))


@needs_ext
@pytest.mark.parametrize("x,q", [(1, 3), (2, 2), (100, 4), (99_991, 12), (250_000, 7), (1_000_003, 30)])
def test_sieve_backends_agree(x, q):
    c1, t1 = _ckernels.residue_prime_counts(x, q)
    c2, t2 = _pykernels.residue_prime_counts(x, q)
    assert list(c1) == list(c2) and t1 == t2


@needs_ext
def test_power_sum_backends_agree(rng):
    for _ in range(200):
        nu = int(rng.integers(1, 9))
        K = int(rng.integers(nu, 13))
        z = list(np.sqrt(rng.uniform(0, 1, nu)) * np.exp(2j * np.pi * rng.uniform(0, 1, nu)))
        a = _ckernels.power_sum_scan(z, K, abs(z[0]))
        b = _pykernels.power_sum_scan(z, K, abs(z[0]))
        assert a[0] == b[0]
        assert a[1] == pytest.approx(b[1], rel=1e-9)


def test_power_sum_no_witness_path():
    # lead larger than any power sum can reach: the scan reports no witness
    k, best, thr = _pykernels.power_sum_scan([0j], 1, 1.0)
    assert k == -1 and thr == 0.0


def test_sieve_small_edge_cases():
    for impl in [_pykernels] + ([_ckernels] if _ckernels else []):
        assert impl.residue_prime_counts(1, 5)[1] == 0
        assert impl.residue_prime_counts(2, 5)[1] == 1
        assert list(impl.residue_prime_counts(10, 1)[0]) == [4]


def test_schur_rejects_long_partition():
    with pytest.raises(ValueError):
        _pykernels.schur_ssyt((1, 1, 1), (1, 2))


@needs_ext
@pytest.mark.parametrize("mu,n", [((6, 4, 2, 1), 6), ((5, 5), 3), ((3, 3, 3), 3), ((7,), 4), ((2, 2, 1, 1), 5)])
def test_schur_backends_agree_large_shapes(mu, n):
    x = [0.9 * np.exp(0.7j * (j + 1)) for j in range(n)]
    x[-1] = 0  # padding zeros must not disturb the value
    a, b = _ckernels.schur_ssyt(mu, x), _pykernels.schur_ssyt(mu, x)
    assert abs(a - b) <= 1e-10 * (1 + abs(b))
