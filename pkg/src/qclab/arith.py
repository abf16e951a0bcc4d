"""Small exact integer helpers shared across the package."""

from __future__ import annotations

from math import gcd, isqrt

import gmpy2


class HypothesisError(ValueError):
    """An input violates a hypothesis required by the requested computation."""


class TruncationError(ValueError):
    """A series is too short to decide the requested check."""


def is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n))


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division; fine for the small levels used here."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for every integer n including even and negative."""
    return int(gmpy2.kronecker(a, n))


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v
