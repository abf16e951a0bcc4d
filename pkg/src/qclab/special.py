"""Special q-series used in dissection arguments, plus small arithmetic helpers."""

from __future__ import annotations

from enum import Enum
from math import isqrt

from .arith import is_prime
from .series import (
    TruncatedSeries,
    eta_quotient_series,
    inflate,
    mul,
    shift,
)

__all__ = [
    "SquareType",
    "borwein_a",
    "theta_squares",
    "f_neg",
    "classify_square_type",
    "is_square_or_twice_square",
    "binom_padic_valuation",
    "binomial_bound_failures",
    "eta_term",
    "dissection_identities",
]


class SquareType(str, Enum):
    SQUARE = "square"
    TWICE_SQUARE = "twice_square"
    FOUR_TIMES_SQUARE = "four_times_square"
    NONE = "none"


def borwein_a(scale: int, trunc: int) -> TruncatedSeries:
    """Borwein cubic theta a(q^scale) = sum over (j, k) in Z^2 of q^(scale (j^2 + j k + k^2)).

    The form satisfies j^2 + jk + k^2 >= (j^2 + k^2)/2, so every pair that can
    contribute below ``trunc`` has |j|, |k| <= ceil(2 sqrt(trunc/scale)).  The
    loop below walks exactly that box, with the inner range narrowed by
    completing the square: 4(j^2 + jk + k^2) = (2k + j)^2 + 3 j^2.
    """
    if scale < 1 or trunc < 1:
        raise ValueError("scale and truncation must be positive")
    limit = (trunc - 1) // scale  # largest admissible value of the form
    c = [0] * trunc
    bound = isqrt(4 * limit // 3) + 1
    for j in range(-bound, bound + 1):
        rest = 4 * limit - 3 * j * j
        if rest < 0:
            continue
        s = isqrt(rest)
        # (2k + j)^2 <= rest  <=>  -s <= 2k + j <= s
        for k in range((-s - j + 1) // 2 - 1, (s - j) // 2 + 2):
            v = j * j + j * k + k * k
            if v <= limit:
                c[scale * v] += 1
    return TruncatedSeries(tuple(c))


def theta_squares(c: int, trunc: int) -> TruncatedSeries:
    """sum_{n>=1} q^(c n^2); the n = 0 term is left out."""
    if c < 1:
        raise ValueError("c must be positive")
    out = [0] * trunc
    n = 1
    while c * n * n < trunc:
        out[c * n * n] = 1
        n += 1
    return TruncatedSeries(tuple(out))


def f_neg(k: int, trunc: int, modulus: int | None = None) -> TruncatedSeries:
    """(-q^k; -q^k)_inf for odd k, as f_{2k}^3 / (f_k f_{4k})."""
    if k < 1 or k % 2 == 0:
        raise ValueError("f_neg is defined here for odd positive k only")
    return eta_quotient_series({k: -1, 2 * k: 3, 4 * k: -1}, trunc, modulus)


def classify_square_type(n: int) -> SquareType:
    """Classify n >= 1 with precedence square > twice a square > four times a square.

    Any 4 m^2 is already the square (2m)^2, so FOUR_TIMES_SQUARE is shadowed
    and never returned; it is kept so the three-way case split reads naturally.
    """
    if n < 1:
        raise ValueError("classification is defined for n >= 1")
    if isqrt(n) ** 2 == n:
        return SquareType.SQUARE
    if n % 2 == 0 and isqrt(n // 2) ** 2 == n // 2:
        return SquareType.TWICE_SQUARE
    if n % 4 == 0 and isqrt(n // 4) ** 2 == n // 4:
        return SquareType.FOUR_TIMES_SQUARE
    return SquareType.NONE


def is_square_or_twice_square(n: int) -> bool:
    return classify_square_type(n) is not SquareType.NONE


def _digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        n, d = divmod(n, p)
        s += d
    return s


def binom_padic_valuation(n: int, k: int, p: int) -> int:
    """v_p(C(n, k)) from Legendre's formula: (s_p(k) + s_p(n-k) - s_p(n)) / (p - 1)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return (_digit_sum(k, p) + _digit_sum(n - k, p) - _digit_sum(n, p)) // (p - 1)


def binomial_bound_failures(p: int, m: int) -> list[int]:
    """Values n in [1, p^m] where C(p^m, n) p^n is NOT divisible by p^(m + floor((n-1)/p) + 1)."""
    top = p**m
    return [
        n
        for n in range(1, top + 1)
        if binom_padic_valuation(top, n, p) + n < m + (n - 1) // p + 1
    ]


def eta_term(
    exps: dict[int, int], trunc: int, coeff: int = 1, q_shift: int = 0
) -> TruncatedSeries:
    """coeff * q^q_shift * prod f_delta^r_delta."""
    s = eta_quotient_series(exps, trunc) if exps else None
    if s is None:
        s = TruncatedSeries.from_coeffs([1], trunc)
    return shift(s, q_shift) * coeff


def dissection_identities(trunc: int) -> dict[str, tuple[TruncatedSeries, TruncatedSeries]]:
    """The classical 2- and 3-dissections of f_1^2, 1/f_1^2, f_1^4, 1/f_1^4, f_1 f_2,
    f_1^3 and 1/f_1^3 (the last two also in Borwein a(q) form), as (lhs, rhs) pairs."""
    T = trunc
    a3 = borwein_a(3, T)
    out = {}
    out["f1^2 (2-dissection)"] = (
        eta_term({1: 2}, T),
        eta_term({2: 1, 8: 5, 4: -2, 16: -2}, T) + eta_term({2: 1, 16: 2, 8: -1}, T, -2, 1),
    )
    out["1/f1^2 (2-dissection)"] = (
        eta_term({1: -2}, T),
        eta_term({8: 5, 2: -5, 16: -2}, T) + eta_term({4: 2, 16: 2, 2: -5, 8: -1}, T, 2, 1),
    )
    out["f1^4 (2-dissection)"] = (
        eta_term({1: 4}, T),
        eta_term({4: 10, 2: -2, 8: -4}, T) + eta_term({2: 2, 8: 4, 4: -2}, T, -4, 1),
    )
    out["1/f1^4 (2-dissection)"] = (
        eta_term({1: -4}, T),
        eta_term({4: 14, 2: -14, 8: -4}, T) + eta_term({4: 2, 8: 4, 2: -10}, T, 4, 1),
    )
    out["f1 f2 (3-dissection)"] = (
        eta_term({1: 1, 2: 1}, T),
        eta_term({6: 1, 9: 4, 3: -1, 18: -2}, T)
        + eta_term({9: 1, 18: 1}, T, -1, 1)
        + eta_term({3: 1, 18: 4, 6: -1, 9: -2}, T, -2, 2),
    )
    out["f1^3 (3-dissection)"] = (
        eta_term({1: 3}, T),
        eta_term({6: 1, 9: 6, 3: -1, 18: -3}, T)
        + eta_term({9: 3}, T, -3, 1)
        + eta_term({3: 2, 18: 6, 6: -2, 9: -3}, T, 4, 3),
    )
    out["f1^3 (Borwein form)"] = (
        eta_term({1: 3}, T),
        mul(a3, eta_term({3: 1}, T)) + eta_term({9: 3}, T, -3, 1),
    )
    a3sq = mul(a3, a3)
    out["1/f1^3 (Borwein form)"] = (
        eta_term({1: -3}, T),
        mul(a3sq, eta_term({9: 3, 3: -10}, T))
        + shift(mul(a3, eta_term({9: 6, 3: -11}, T)), 1) * 3
        + eta_term({9: 9, 3: -12}, T, 9, 2),
    )
    return out


def borwein_a_inflated(scale: int, trunc: int) -> TruncatedSeries:
    """a(q^scale) obtained by inflating a(q); an independent route to :func:`borwein_a`."""
    base = borwein_a(1, -(-trunc // scale))
    return TruncatedSeries(inflate(base, scale).coeffs[:trunc])
