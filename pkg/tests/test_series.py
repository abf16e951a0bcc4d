import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qclab.arith import TruncationError
from qclab.optk import opt_series
from qclab.series import (
    EtaExponentMap,
    TruncatedSeries,
    add,
    check_trunc,
    eta_quotient_series,
    euler_product,
    extract_ap,
    get_max_trunc,
    inflate,
    inverse,
    mul,
    one,
    power,
    reduce_mod,
    set_max_trunc,
    shift,
    sub,
    zero,
)


def S(*c, modulus=None):
    return TruncatedSeries.from_coeffs(list(c), modulus=modulus)


def direct_product(trunc):
    c = [1] + [0] * (trunc - 1)
    for n in range(1, trunc):
        c = [c[i] - (c[i - n] if i >= n else 0) for i in range(trunc)]
    return c


def partition_numbers(n_max):
    p = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for i in range(part, n_max + 1):
            p[i] += p[i - part]
    return p


coeff_lists = st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=60)


def unit_series():
    return st.tuples(st.sampled_from([1, -1]), st.lists(st.integers(-50, 50), max_size=60)).map(
        lambda t: TruncatedSeries.from_coeffs([t[0]] + t[1])
    )


# -- euler products -----------------------------------------------------------


def test_euler_product_small():
    assert list(euler_product(1, 9).coeffs) == [1, -1, -1, 0, 0, 1, 0, 1, 0]
    assert list(euler_product(2, 5).coeffs) == [1, 0, -1, 0, -1]


def test_euler_product_matches_direct_product():
    assert list(euler_product(1, 300).coeffs) == direct_product(300)


def test_inflate_of_f1_is_f2():
    assert inflate(euler_product(1, 100), 2) == euler_product(2, 200)


# -- ring operations ----------------------------------------------------------


def test_basic_products():
    f1 = euler_product(1, 200)
    assert mul(S(1, 1, 0), S(1, -1, 0)) == S(1, 0, -1)
    assert mul(mul(f1, f1), f1) == power(f1, 3)
    assert list(power(euler_product(1, 6), 2).coeffs) == [1, -2, -1, 2, 1, 2]
    assert power(f1, 0) == one(200)
    f300 = euler_product(1, 300)
    assert power(power(f300, 3), 2) == power(f300, 6)


def test_add_sub():
    f1, f2 = euler_product(1, 50), euler_product(2, 50)
    assert add(f1, zero(50)) == f1
    assert sub(f1, f1).is_zero()
    assert add(f1, f2)[2] == -2


def test_truncation_is_min():
    assert mul(euler_product(1, 10), euler_product(1, 7)).trunc == 7
    assert add(euler_product(1, 10), euler_product(1, 7)).trunc == 7


def test_inverse():
    assert inverse(one(20)) == one(20)
    assert list(inverse(euler_product(1, 11)).coeffs) == partition_numbers(10)
    f1 = euler_product(1, 500)
    assert mul(f1, inverse(f1)) == one(500)


def test_inverse_large_uses_newton_path():
    f1 = euler_product(1, 3000)
    assert list(inverse(f1).coeffs) == partition_numbers(2999)


def test_inverse_requires_unit():
    with pytest.raises(ValueError):
        inverse(S(2, 1))
    with pytest.raises(ValueError):
        inverse(S(0, 1))


def test_large_kronecker_product_matches_schoolbook():
    a = [((i * 7919) % 201) - 100 for i in range(700)]
    b = [((i * 104729) % 301) - 150 for i in range(700)]
    want = [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(700)]
    assert list(mul(S(*a), S(*b)).coeffs) == want


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_laws(a, b, c):
    A, B, C = (TruncatedSeries.from_coeffs(x) for x in (a, b, c))
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A - A == zero(A.trunc)


@given(unit_series())
def test_inverse_property(a):
    assert a * inverse(a) == one(a.trunc)


@given(coeff_lists, st.integers(2, 1000))
def test_modular_product_agrees_with_exact(a, M):
    b = list(reversed(a))
    exact = mul(TruncatedSeries.from_coeffs(a), TruncatedSeries.from_coeffs(b))
    modular = mul(TruncatedSeries.from_coeffs(a, modulus=M), TruncatedSeries.from_coeffs(b, modulus=M))
    assert modular == reduce_mod(exact, M)


# -- reshaping ------------------------------------------------------------------


def test_inflate_and_shift():
    assert list(inflate(S(1, 2, 3), 3).coeffs) == [1, 0, 0, 2, 0, 0, 3, 0, 0]
    a = S(*range(1, 11))
    assert inflate(inflate(a, 2), 3) == inflate(a, 6)
    assert list(shift(S(1, 2, 3, 4, 5), 2).coeffs) == [0, 0, 1, 2, 3]


def test_extract_ap():
    a = S(*range(20))
    assert extract_ap(a, 1, 0) == a
    assert list(extract_ap(a, 2, 1).coeffs) == list(range(1, 20, 2))
    assert extract_ap(opt_series(3, 30), 3, 2)[0] == 18


def test_reduce_mod():
    assert set(reduce_mod(euler_product(1, 100), 2).coeffs) <= {0, 1}
    assert reduce_mod(opt_series(3, 200), 2) == one(200, 2)
    a = opt_series(3, 100)
    assert reduce_mod(reduce_mod(a, 8), 2) == reduce_mod(a, 2)
    with pytest.raises(ValueError):
        reduce_mod(reduce_mod(a, 8), 3)


def test_eta_quotient_series():
    assert list(eta_quotient_series({1: -2, 2: 1}, 7).coeffs) == [1, 2, 4, 8, 14, 24, 40]
    assert eta_quotient_series({1: 1}, 50) == euler_product(1, 50)
    assert eta_quotient_series({1: -6, 2: 9, 4: -3}, 100) == opt_series(3, 100)


def test_exponent_map():
    e = EtaExponentMap.parse("1:-4,2:6,4:-2")
    assert dict(e) == {1: -4, 2: 6, 4: -2}
    assert str(e) == "1:-4,2:6,4:-2"
    assert e.weight_sum() == 0 and e.delta_sum() == 0
    for bad in ("0:1", "1:1,1:2", "24:0", "-2:1"):
        with pytest.raises(ValueError):
            EtaExponentMap.parse(bad)


def test_truncation_cap():
    old = set_max_trunc(100)
    try:
        assert get_max_trunc() == 100
        with pytest.raises(TruncationError):
            euler_product(1, 101)
        with pytest.raises(TruncationError):
            check_trunc(500)
    finally:
        set_max_trunc(old)


# -- serialisation --------------------------------------------------------------


@given(coeff_lists)
def test_text_round_trip(a):
    s = TruncatedSeries.from_coeffs(a)
    assert TruncatedSeries.from_text(s.to_text()) == s


@given(coeff_lists, st.none() | st.integers(2, 10**9))
def test_json_round_trip(a, M):
    s = TruncatedSeries.from_coeffs(a, modulus=M)
    assert TruncatedSeries.from_json(s.to_json()) == s


def test_formats():
    s = S(1, -2, 3)
    assert s.to_text().splitlines() == ["T=3", "1", "-2", "3"]
    assert json.loads(s.to_json()) == {"trunc": 3, "coeffs": [1, -2, 3]}
