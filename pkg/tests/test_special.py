import pytest

from qclab.congruence import verify_identity
from qclab.series import euler_product, inflate, mul, shift
from qclab.special import (
    SquareType,
    binom_padic_valuation,
    binomial_bound_failures,
    borwein_a,
    borwein_a_inflated,
    classify_square_type,
    dissection_identities,
    eta_term,
    f_neg,
    is_square_or_twice_square,
    theta_squares,
)


def borwein_brute(trunc):
    c = [0] * trunc
    r = int(trunc**0.5) + 3
    for j in range(-2 * r, 2 * r + 1):
        for k in range(-2 * r, 2 * r + 1):
            v = j * j + j * k + k * k
            if v < trunc:
                c[v] += 1
    return c


def test_borwein_a_values():
    a = borwein_a(1, 10)
    assert a[0] == 1 and a[1] == 6
    assert list(a.coeffs) == borwein_brute(10)
    assert list(borwein_a(1, 200).coeffs) == borwein_brute(200)


@pytest.mark.parametrize("scale", [1, 2, 3, 9])
def test_borwein_scaled_matches_inflation(scale):
    assert borwein_a(scale, 300) == borwein_a_inflated(scale, 300)


def test_borwein_cubic_identity():
    T = 300
    lhs = eta_term({1: 3}, T)
    rhs = mul(borwein_a(3, T), euler_product(3, T)) - shift(eta_term({9: 3}, T), 1) * 3
    assert lhs == rhs


def test_theta_squares():
    assert theta_squares(1, 11).nonzero_exponents() == [1, 4, 9]
    assert theta_squares(2, 11).nonzero_exponents() == [2, 8]
    assert theta_squares(4, 20) == inflate(theta_squares(1, 5), 4)


def test_f_neg():
    T = 200
    s = f_neg(1, T)
    assert s[1] == 1
    # prod (1 - (-q)^n), expanded directly
    c = [1] + [0] * (T - 1)
    for n in range(1, T):
        sign = 1 if n % 2 == 0 else -1
        c = [c[i] - sign * (c[i - n] if i >= n else 0) for i in range(T)]
    assert list(s.coeffs) == c
    assert f_neg(3, 600) == inflate(s, 3)
    with pytest.raises(ValueError):
        f_neg(2, 10)


def test_classify_square_type():
    assert classify_square_type(9) is SquareType.SQUARE
    assert classify_square_type(8) is SquareType.TWICE_SQUARE
    assert classify_square_type(12) is SquareType.NONE
    assert classify_square_type(4) is SquareType.SQUARE
    assert not any(classify_square_type(n) is SquareType.FOUR_TIMES_SQUARE for n in range(1, 2000))
    assert is_square_or_twice_square(18) and not is_square_or_twice_square(3)
    with pytest.raises(ValueError):
        classify_square_type(0)


def test_binomial_valuations():
    assert binom_padic_valuation(2, 1, 2) == 1
    assert binom_padic_valuation(3, 1, 3) == 1
    assert binom_padic_valuation(8, 3, 2) == 3
    with pytest.raises(ValueError):
        binom_padic_valuation(3, 4, 2)
    with pytest.raises(ValueError):
        binom_padic_valuation(6, 2, 4)


def test_binomial_bounds_small():
    assert all(binomial_bound_failures(2, m) == [] for m in range(1, 8))
    assert all(binomial_bound_failures(3, m) == [] for m in range(1, 5))


def test_dissections():
    ids = dissection_identities(300)
    assert len(ids) == 8
    for name, (lhs, rhs) in ids.items():
        assert verify_identity(lhs, rhs), name
