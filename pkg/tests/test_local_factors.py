import cmath
import json
import math

import numpy as np
import pytest

from rsdensity.local_factors import (
    BZDatum,
    PoleError,
    assembled_coefficient,
    block_coeff,
    local_rs_factor,
    local_rs_series,
    random_bz_pair,
    root_audit,
)
from rsdensity.rs_coefficients import SatakeData, rs_coeff_oracle, rs_coeff_prime_power


def unramified(q, ss):
    return BZDatum(q, [(1, s) for s in ss], [list(range(len(ss)))], [1])


def test_validation():
    with pytest.raises(ValueError):
        BZDatum(1, [(1, 0)], [[0]], [1])
    with pytest.raises(ValueError):
        BZDatum(3, [(1, 0.1), (1, 0.3)], [[0, 1]], [1])  # sigma order
    with pytest.raises(ValueError):
        BZDatum(3, [(1, 0), (1, 0)], [[0]], [1])  # not a partition
    with pytest.raises(ValueError):
        BZDatum(3, [(2, 0), (1, 0)], [[0, 1]], [2])  # 2 does not divide 3
    a = unramified(3, [0.1, 0])
    b = BZDatum(3, [(2, 0)], [[0]], [1])
    with pytest.raises(ValueError):
        local_rs_factor(a, b, 2)


def test_json_schema_round_trip():
    d = BZDatum(5, [(2, 0.2 + 1j), (1, -0.1)], [[0], [1]], [1, 3])
    doc = json.loads(d.to_json())
    assert set(doc) == {"q_v", "blocks", "classes", "e"}
    assert doc["blocks"][0] == {"n_j": 2, "sigma_j": 0.2, "t_j": 1.0}
    assert BZDatum.from_json(d.to_json()) == d


def test_unramified_type_is_satake_product():
    ss, tt = [0.2 + 1j, -0.1], [0.05, -0.3 + 2j]
    q = 5
    sig, tau = unramified(q, ss), unramified(q, tt)
    A = [cmath.exp(-s * math.log(q)) for s in ss]
    B = [cmath.exp(-t * math.log(q)) for t in tt]
    s = 1.7 + 0.3j
    X = cmath.exp(-s * math.log(q))
    want = 1
    for a in A:
        for b in B:
            want /= 1 - a * b.conjugate() * X
    assert local_rs_factor(sig, tau, s) == pytest.approx(want, rel=1e-12)
    pi, pi0 = SatakeData(2, 1, {q: A}), SatakeData(2, 1, {q: B})
    series = local_rs_series(sig, tau, 6)
    for r in range(7):
        assert series[r] == pytest.approx(rs_coeff_oracle(pi, pi0, q, r), rel=1e-12, abs=1e-14)
    # one class of singletons, nu=1: block coefficient equals the reduced Schur coefficient
    for r in range(5):
        assert block_coeff(sig, tau, 0, 1, r) == pytest.approx(
            rs_coeff_prime_power(pi, pi0, q, r, check_central=False), rel=1e-12, abs=1e-14
        )


def test_single_block_expansion():
    q, n = 3, 3
    sig = BZDatum(q, [(n, 0.1 + 0.5j)], [[0]], [1])
    tau = BZDatum(q, [(n, -0.2)], [[0]], [1])
    s = 2.0
    want = 1
    for nu in range(1, n + 1):
        w = q**nu * sig.z(0) * tau.z(0).conjugate()
        want /= 1 - w * q**-s
    assert local_rs_factor(sig, tau, s) == pytest.approx(want)
    assert local_rs_factor(sig, tau, 60.0) == pytest.approx(1, abs=1e-12)


def test_block_coeff_edge_cases():
    sig = BZDatum(2, [(2, 0.1), (1, 0)], [[0, 1]], [1])
    tau = BZDatum(2, [(2, 0.2), (1, -0.1)], [[0, 1]], [1])
    assert block_coeff(sig, tau, 0, 1, 0) == 1
    assert block_coeff(sig, tau, 0, 3, 2) == 0  # J^3 empty
    with pytest.raises(ValueError):
        block_coeff(sig, tau, 0, 4, 1)
    with pytest.raises(ValueError):
        block_coeff(sig, tau, 1, 1, 1)


def test_pole_detection():
    sig = unramified(2, [0.0])
    # root is 1, so the factor has a pole at s = 0
    with pytest.raises(PoleError):
        local_rs_factor(sig, sig, 0)


def test_assembly_on_random_pairs(rng):
    for _ in range(60):
        q = int(rng.choice([2, 3, 5]))
        sig, tau = random_bz_pair(rng, q)
        series = local_rs_series(sig, tau, 6)
        for r in range(7):
            a = assembled_coefficient(sig, tau, r)
            assert abs(a - series[r]) <= 1e-9 * (1 + abs(series[r]))


def test_series_matches_factor_value(rng):
    sig, tau = random_bz_pair(rng, 3)
    series = local_rs_series(sig, tau, 60)
    s = 4.0
    X = 3**-s
    assert sum(c * X**r for r, c in enumerate(series)) == pytest.approx(local_rs_factor(sig, tau, s), rel=1e-10)


def test_root_audit_examples(rng):
    tempered = BZDatum(3, [(2, 1j), (1, -2j)], [[0], [1]], [1, 3])
    assert root_audit(tempered, tempered).tempered
    ones = unramified(5, [0.7j, -1j, 0])
    audit = root_audit(ones, ones)
    assert all(abs(r["modulus"] - 1) < 1e-12 for r in audit.roots)
    for _ in range(100):
        q = int(rng.choice([2, 3, 5]))
        sig, tau = random_bz_pair(rng, q, sigma_max=0.49)
        audit = root_audit(sig, tau)
        assert audit.js_ok and all(r["modulus"] < q for r in audit.roots)
