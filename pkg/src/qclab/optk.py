"""Counting functions for overpartition k-tuples with odd parts.

OPT_k(n) counts k-tuples of overpartitions whose parts are all odd and whose
parts add up to n.  Its generating function is f_2^(3k) / (f_1^(2k) f_4^k).
"""

from __future__ import annotations

import threading
from functools import lru_cache

from .series import TruncatedSeries, check_trunc, eta_quotient_series
from .special import SquareType, classify_square_type

__all__ = [
    "opt_exponents",
    "opt_series",
    "opt_oracle",
    "overpartition_series",
    "opt1_mod4_class",
    "opt1_mod8_class",
    "ORACLE_MAX_N",
    "ORACLE_MAX_K",
]

ORACLE_MAX_N = 20
ORACLE_MAX_K = 8


def opt_exponents(k: int) -> dict[int, int]:
    if k < 1:
        raise ValueError("tuple size k must be at least 1")
    return {1: -2 * k, 2: 3 * k, 4: -k}


@lru_cache(maxsize=64)
def _opt_series_cached(k: int, trunc: int, modulus: int | None) -> TruncatedSeries:
    return eta_quotient_series(opt_exponents(k), trunc, modulus)


def opt_series(k: int, trunc: int, modulus: int | None = None) -> TruncatedSeries:
    """OPT_k(0), ..., OPT_k(trunc-1); exact unless ``modulus`` is given."""
    if trunc < 1:
        raise ValueError("truncation must be positive")
    check_trunc(trunc)
    return _opt_series_cached(k, trunc, modulus)


def overpartition_series(trunc: int, modulus: int | None = None) -> TruncatedSeries:
    """Overpartition counts f_2 / f_1^2."""
    return eta_quotient_series({1: -2, 2: 1}, trunc, modulus)


# -- brute-force oracle ------------------------------------------------------

_oracle_lock = threading.Lock()
_single_cache: dict[int, int] = {}


def _odd_partitions(n: int, max_part: int):
    """Yield partitions of n into odd parts <= max_part as {part: multiplicity}."""
    if n == 0:
        yield {}
        return
    part = max_part if max_part % 2 else max_part - 1
    while part >= 1:
        for mult in range(1, n // part + 1):
            for rest in _odd_partitions(n - mult * part, part - 2):
                yield {part: mult, **rest}
        part -= 2


def _single_overpartitions(n: int) -> int:
    """Odd-part overpartitions of n: each distinct part value may carry an overline."""
    with _oracle_lock:
        if n in _single_cache:
            return _single_cache[n]
    total = sum(2 ** len(p) for p in _odd_partitions(n, n))
    with _oracle_lock:
        _single_cache[n] = total
    return total


def opt_oracle(k: int, n: int) -> int:
    """OPT_k(n) by direct enumeration, independent of any series arithmetic."""
    if not 1 <= k <= ORACLE_MAX_K:
        raise ValueError(f"oracle supports 1 <= k <= {ORACLE_MAX_K}")
    if not 0 <= n <= ORACLE_MAX_N:
        raise ValueError(f"oracle supports 0 <= n <= {ORACLE_MAX_N}")
    single = [_single_overpartitions(j) for j in range(n + 1)]
    # counts[s] = number of tuples built so far with total s
    counts = [1] + [0] * n
    for _ in range(k):
        counts = [sum(counts[s - j] * single[j] for j in range(s + 1)) for s in range(n + 1)]
    return counts[n]


# -- residue classification of OPT_1 -----------------------------------------


def opt1_mod4_class(n: int) -> int:
    """Expected OPT_1(n) mod 4: 2 if n is a square or twice a square, else 0."""
    kind = classify_square_type(n)
    return 2 if kind in (SquareType.SQUARE, SquareType.TWICE_SQUARE) else 0


def opt1_mod8_class(n: int) -> frozenset[int]:
    """Admissible residues of OPT_1(n) mod 8."""
    return frozenset({2, 6}) if opt1_mod4_class(n) == 2 else frozenset({0, 4})
