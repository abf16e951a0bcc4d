"""Eta-quotient modular-form checks: weight, character, cusp orders, Hecke action.

A form prod eta(delta z)^r_delta is stored as its level and exponent map.  The
fractional q-power (1/24) sum(delta r_delta) is kept as an exact rational and
all series work happens on the integer-exponent product prod f_delta^r_delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

from .arith import TruncationError, divisors, is_prime, kronecker, lcm
from .series import (
    EtaExponentMap,
    TruncatedSeries,
    eta_quotient_series,
    euler_product,
    mul,
    power,
    shift,
)

__all__ = [
    "EtaQuotientForm",
    "BpkReport",
    "DensityReport",
    "weight_and_conditions",
    "character",
    "character_discriminant",
    "cusp_order",
    "is_holomorphic",
    "ck_form",
    "bpk_form",
    "bpk_inequality",
    "min_level_multiplier",
    "unit_power_reduction_check",
    "hecke_tp",
    "eta8_16_series",
    "eta8_16_support_check",
    "hecke_eigen_relation_check",
    "chi1",
    "density_scan",
]


@dataclass(frozen=True)
class EtaQuotientForm:
    level: int
    exponents: EtaExponentMap

    def __post_init__(self) -> None:
        if not isinstance(self.exponents, EtaExponentMap):
            object.__setattr__(self, "exponents", EtaExponentMap(self.exponents))
        if self.level < 1:
            raise ValueError("level must be positive")
        bad = [d for d in self.exponents if self.level % d]
        if bad:
            raise ValueError(f"eta arguments {bad} do not divide the level {self.level}")

    @property
    def weight(self) -> Fraction:
        return Fraction(self.exponents.weight_sum(), 2)

    @property
    def leading_exponent(self) -> Fraction:
        """(1/24) sum(delta r_delta): the q-power carried by the eta prefactors."""
        return Fraction(self.exponents.delta_sum(), 24)

    def series(self, trunc: int, modulus: int | None = None) -> TruncatedSeries:
        """prod f_delta^r_delta, i.e. the expansion with the leading q-power removed."""
        return eta_quotient_series(self.exponents, trunc, modulus)

    def to_dict(self) -> dict:
        return {"level": self.level, "exponents": {str(d): v for d, v in self.exponents.items()}}


def weight_and_conditions(form: EtaQuotientForm) -> tuple[Fraction, bool, bool]:
    ex = form.exponents
    a = ex.delta_sum() % 24 == 0
    b = sum(Fraction(form.level, d) * v for d, v in ex.items()) % 24 == 0
    return form.weight, a, b


def character_discriminant(form: EtaQuotientForm) -> int:
    """(-1)^l prod delta^r_delta, scaled to an integer with the same quadratic character.

    Negative exponents are handled by multiplying through by delta^(2|r|),
    which leaves every Kronecker symbol at d coprime to delta unchanged.
    """
    w = form.weight
    if w.denominator != 1:
        raise ValueError(f"weight {w} is not integral; character undefined")
    out = 1
    for d, v in form.exponents.items():
        out *= d ** (v if v >= 0 else -v)
    return out if int(w) % 2 == 0 else -out


def character(form: EtaQuotientForm, d: int) -> int:
    if d == 0 or gcd(d, form.level) != 1:
        raise ValueError(f"d={d} must be nonzero and coprime to the level {form.level}")
    return kronecker(character_discriminant(form), d)


def cusp_order(form: EtaQuotientForm, d: int) -> Fraction:
    N = form.level
    if d < 1 or N % d:
        raise ValueError(f"{d} does not divide the level {N}")
    total = sum(Fraction(gcd(d, delta) ** 2 * v, gcd(d, N // d) * d * delta)
                for delta, v in form.exponents.items())
    return Fraction(N, 24) * total


def is_holomorphic(form: EtaQuotientForm, cusps: list[int] | None = None) -> tuple[bool, dict[int, Fraction]]:
    """Orders at one cusp c/d per divisor d of the level (or of the given list)."""
    table = {d: cusp_order(form, d) for d in (cusps if cusps is not None else divisors(form.level))}
    return all(v >= 0 for v in table.values()), table


def ck_form(k: int) -> EtaQuotientForm:
    if k < 1:
        raise ValueError("k must be >= 1")
    return EtaQuotientForm(768, EtaExponentMap({24: 2 ** (k + 1) - 6, 48: 9 - 2**k, 96: -3}))


def min_level_multiplier(p: int, a: int, k: int) -> int:
    """Smallest u >= 1 with (4 p^(k-a) (p^(2a) - 1) - 9) u = 0 (mod 24).

    For k < a the bracket is rational; the congruence is read as
    divisibility of the rational by 24.
    """
    if not is_prime(p) or p == 3:
        raise ValueError("p must be a prime other than 3")
    if a < 1 or k < 1:
        raise ValueError("a and k must be >= 1")
    base = 4 * Fraction(p) ** (k - a) * (p ** (2 * a) - 1) - 9
    for u in range(1, 25 * base.denominator + 1):
        if (base * u / 24).denominator == 1:
            return u
    raise ArithmeticError("no multiplier found")


def bpk_inequality(p: int, a: int, k: int, d: int) -> Fraction:
    """Left side of the cusp inequality for B_{p,k} at a divisor d: must be >= 0."""
    return (
        Fraction(gcd(d, 24) ** 2 * (p ** (a + k) - 6), 24)
        + Fraction(9 * gcd(d, 48) ** 2, 48)
        - Fraction(3 * gcd(d, 96) ** 2, 96)
        - Fraction(p**k * gcd(d, 24 * p**a) ** 2, 24 * p**a)
    )


@dataclass
class BpkReport:
    form: EtaQuotientForm
    u: int
    inequality: dict[int, Fraction]
    full_orders: dict[int, Fraction]

    @property
    def ok(self) -> bool:
        """All inequality values on the divisors of 768 are non-negative."""
        return all(v >= 0 for v in self.inequality.values())

    @property
    def full_ok(self) -> bool:
        return all(v >= 0 for v in self.full_orders.values())


def bpk_form(p: int, a: int, k: int) -> BpkReport:
    """B_{p,k} = eta^9(48z) / (eta^6(24z) eta^3(96z)) * (eta^(p^a)(24z) / eta(24 p^a z))^(p^k).

    The inequality is checked over the divisors of 768; orders over every
    divisor of the full level lcm(96 u, 24 p^a) are reported alongside.
    """
    if not is_prime(p) or p in (2, 3):
        raise ValueError("p must be a prime other than 2 and 3")
    if a < 1 or k < 1:
        raise ValueError("a and k must be >= 1")
    u = min_level_multiplier(p, a, k)
    level = lcm(96 * u, 24 * p**a)
    ex = {24: p ** (a + k) - 6, 48: 9, 96: -3, 24 * p**a: -(p**k)}
    form = EtaQuotientForm(level, EtaExponentMap(ex))
    ineq = {d: bpk_inequality(p, a, k, d) for d in divisors(768)}
    _, full = is_holomorphic(form)
    return BpkReport(form, u, ineq, full)


def unit_power_reduction_check(
    T: int,
    two_powers: tuple[int, ...] = (0, 1, 2, 3, 4),
    prime_grid: tuple[tuple[int, int, int], ...] = ((5, 1, 1), (7, 1, 1), (5, 1, 2), (11, 1, 1), (13, 1, 1), (5, 2, 1)),
) -> bool:
    """(f_1^2/f_2)^(2^k) = 1 mod 2^(k+1) and f_1^(p^(a+k)) / f_(p^a)^(p^k) = 1 mod p^(k+1) up to q^T."""
    for k in two_powers:
        M = 2 ** (k + 1)
        s = power(eta_quotient_series({1: 2, 2: -1}, T, M), 2**k)
        if any(s.coeffs[1:]) or s[0] % M != 1 % M:
            return False
    for p, a, k in prime_grid:
        M = p ** (k + 1)
        f1 = euler_product(1, T, M)
        num = power(f1, p ** (a + k))
        den = power(euler_product(p**a, T, M), -(p**k))
        s = mul(num, den)
        if any(s.coeffs[1:]) or s[0] % M != 1 % M:
            return False
    return True


def _char_value(chi, p: int) -> int:
    return chi(p) if callable(chi) else int(chi)


def hecke_tp(
    series: TruncatedSeries,
    p: int,
    weight: int,
    chi: int | Callable[[int], int],
    out_trunc: int | None = None,
) -> TruncatedSeries:
    """Coefficients a(pn) + chi(p) p^(l-1) a(n/p), for n below ``out_trunc``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if int(weight) != weight or weight < 1:
        raise ValueError("weight must be a positive integer")
    T = series.trunc
    if out_trunc is None:
        out_trunc = (T - 1) // p + 1
    if p * (out_trunc - 1) >= T:
        raise TruncationError(f"need truncation > {p * (out_trunc - 1)} for {out_trunc} output terms, have {T}")
    scale = _char_value(chi, p) * p ** (int(weight) - 1)
    a = series.coeffs
    out = [a[p * n] + (scale * a[n // p] if n % p == 0 else 0) for n in range(out_trunc)]
    return TruncatedSeries.from_coeffs(out, modulus=series.modulus)


def chi1(d: int) -> int:
    """The character (-128/d) of eta(8z) eta(16z)."""
    return kronecker(-128, d)


def eta8_16_series(T: int) -> TruncatedSeries:
    """q-expansion of eta(8z) eta(16z) = q f_8 f_16 (exponents 0 .. T-1)."""
    if T < 1:
        raise ValueError("truncation must be positive")
    return shift(eta_quotient_series({8: 1, 16: 1}, T), 1)


def eta8_16_support_check(T: int) -> bool:
    s = eta8_16_series(T)
    return all(c == 0 for n, c in enumerate(s.coeffs) if n % 8 != 1)


def hecke_eigen_relation_check(primes=(3, 5, 7, 11, 13), n_max: int = 1000) -> list[tuple[int, int, int]]:
    """Failures (p, n, value) of a(pn) + chi_1(p) a(n/p) = 0 for 1 <= n <= n_max; empty on success."""
    s = eta8_16_series(max(primes) * n_max + 1)
    fails = []
    for p in primes:
        img = hecke_tp(s, p, 1, chi1, out_trunc=n_max + 1)
        fails.extend((p, n, img[n]) for n in range(1, n_max + 1) if img[n])
    return fails


@dataclass(frozen=True)
class DensityReport:
    X: int
    modulus: int
    divisible: int

    @property
    def non_divisible(self) -> int:
        return self.X - self.divisible

    @property
    def proportion(self) -> float:
        return self.divisible / self.X

    def __iter__(self):
        return iter((self.divisible, self.proportion))

    def to_dict(self) -> dict:
        return {"X": self.X, "modulus": self.modulus, "divisible": self.divisible,
                "non_divisible": self.non_divisible, "proportion": self.proportion}


def density_scan(series: TruncatedSeries, modulus: int, X: int) -> DensityReport:
    """Count 1 <= n <= X with coefficient divisible by ``modulus``."""
    if modulus < 1 or X < 1:
        raise ValueError("modulus and X must be positive")
    if series.trunc <= X:
        raise TruncationError(f"density up to X={X} needs truncation {X + 1}, have {series.trunc}")
    c = series.coeffs
    return DensityReport(X, modulus, sum(1 for n in range(1, X + 1) if c[n] % modulus == 0))
