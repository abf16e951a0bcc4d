import json
from fractions import Fraction

import pytest

from qclab.radu import (
    RaduTuple,
    delta_star_check,
    even_k_closed_form_nu,
    even_k_tuple,
    gamma_reps,
    index_gamma0,
    nu_bound,
    p_lower,
    p_prime,
    p_set,
    radu_verify,
    recheck_certificate,
    square_units,
)
from qclab.series import EtaExponentMap


def base():
    return RaduTuple(8, 4, 4, 2, EtaExponentMap({1: -4, 2: 6, 4: -2}))


def test_tuple_validation():
    with pytest.raises(ValueError):
        RaduTuple(8, 4, 4, 8, {1: -4, 2: 6, 4: -2})
    with pytest.raises(ValueError):
        RaduTuple(8, 4, 4, 2, {3: 1})


def test_delta_star():
    rep = delta_star_check(base())
    assert rep.ok and rep.failing() == []
    bad = delta_star_check(RaduTuple(5, 4, 4, 2, {1: -4, 2: 6, 4: -2}))
    assert 1 in bad.failing()


def test_square_units():
    assert square_units(8) == {1}
    assert square_units(24) == {1}
    assert all(s % 8 == 1 for s in square_units(192))


def test_p_set():
    assert p_set(base()) == [2]
    tup, _ = even_k_tuple(1, 1, 6)
    assert p_set(tup) == [6]
    assert p_set(RaduTuple(1, 4, 4, 0, {1: -4, 2: 6, 4: -2})) == [0]


def test_gamma_reps():
    assert [g[1][0] for g in gamma_reps(4)] == [1, 2, 4]
    assert [g[1][0] for g in gamma_reps(6)] == [1, 2, 3, 6]
    with pytest.raises(ValueError):
        gamma_reps(16)


def test_p_functions():
    tup, rp = even_k_tuple(1, 1, 2)
    for g in gamma_reps(4):
        assert p_lower(tup, g) + p_prime(rp, g) >= 0
    assert p_prime({1: 12}, ((1, 0), (1, 1))) == Fraction(1, 2)
    assert p_prime({1: 0, 2: 0}, ((1, 0), (2, 1))) == 0
    assert p_prime({2: 24}, ((1, 0), (4, 1))) == Fraction(2)
    reordered = RaduTuple(8, 4, 4, 2, EtaExponentMap({4: -2, 1: -4, 2: 6}))
    assert p_lower(reordered, ((1, 0), (1, 1))) == p_lower(base(), ((1, 0), (1, 1)))
    one = RaduTuple(1, 4, 4, 0, {1: -4, 2: 6, 4: -2})
    assert p_lower(one, ((1, 0), (2, 1))) == Fraction(1, 24) * (-4 + 6 * 4 // 2 - 2 * 4 // 4)


def test_index_and_nu():
    assert index_gamma0(4) == 6
    assert index_gamma0(1) == 1
    assert index_gamma0(768) == 768 * 3 // 2 * 4 // 3 == 1536
    tup, rp = even_k_tuple(1, 1, 2)
    assert nu_bound(tup, rp) == Fraction(9, 4)
    assert even_k_closed_form_nu(1, 1, 2) == Fraction(27, 4)
    flat = RaduTuple(3, 3, 3, 0, {1: 1, 3: -1})
    assert nu_bound(flat, {}) == -Fraction(flat.r.delta_sum(), 24 * 3)


@pytest.mark.parametrize("i,r,t,e", [(1, 1, 2, 3), (2, 3, 4, 7), (1, 3, 6, 5)])
def test_radu_verify_pass(i, r, t, e):
    tup, rp = even_k_tuple(i, r, t)
    cert = radu_verify(tup, rp, 2**e)
    assert cert.passed
    assert cert.nu_eff >= cert.nu and cert.checked_prefix == int(cert.nu_eff)
    assert recheck_certificate(cert.to_json())


def test_radu_verify_inapplicable():
    cert = radu_verify(RaduTuple(5, 4, 4, 2, {1: -4, 2: 6, 4: -2}), {1: 12}, 8)
    assert cert.status == "inapplicable" and "1" in cert.failing_condition
    neg = radu_verify(base(), {}, 8)
    assert neg.status == "inapplicable" and "p + p'" in neg.failing_condition


def test_radu_verify_detects_false_congruence():
    tup, rp = even_k_tuple(1, 1, 2)
    cert = radu_verify(tup, rp, 2**6)
    assert cert.status == "fail" and cert.counterexample is not None


def test_certificate_determinism_and_tamper():
    tup, rp = even_k_tuple(1, 1, 4)
    a, b = radu_verify(tup, rp, 32), radu_verify(tup, rp, 32)
    assert a.to_json(canonical=True) == b.to_json(canonical=True)
    obj = json.loads(a.to_json())
    assert "timestamp" in obj
    obj["prefix_values"]["4"][0] = 1
    assert not recheck_certificate(obj)


def test_custom_series_provider():
    from qclab.series import TruncatedSeries

    tup, rp = even_k_tuple(1, 1, 2)
    cert = radu_verify(tup, rp, 8, series_provider=lambda s, n, m: TruncatedSeries.from_coeffs([1] * n))
    assert cert.status == "fail"
