"""Exact truncated power series in q over the integers (or over Z/MZ).

A :class:`TruncatedSeries` of truncation ``T`` stores the coefficients of
q^0 .. q^(T-1); nothing is known about higher exponents.  Every operation
returns the tightest truncation its inputs justify.

Large products go through Kronecker substitution: both operands are packed
into one big integer each, multiplied with GMP and unpacked.  A series may
carry a ``modulus``, in which case coefficients live in [0, modulus) and all
arithmetic is done modulo it; this is the fast path for congruence checks.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Mapping

import gmpy2

from .arith import TruncationError

__all__ = [
    "TruncatedSeries",
    "EtaExponentMap",
    "euler_product",
    "pentagonal_exponents",
    "zero",
    "one",
    "monomial",
    "add",
    "sub",
    "mul",
    "inverse",
    "power",
    "shift",
    "inflate",
    "extract_ap",
    "reduce_mod",
    "truncate",
    "eta_quotient_series",
    "get_max_trunc",
    "set_max_trunc",
    "check_trunc",
]

_DEFAULT_MAX_TRUNC = 2_000_000
_max_trunc = int(os.environ.get("QC_TRUNC_MAX", _DEFAULT_MAX_TRUNC))

# below these sizes plain convolution beats packing into big integers
SCHOOLBOOK_MAX = 48
SPARSE_BUDGET = 60_000
INVERSE_RECURRENCE_MAX = 128


def get_max_trunc() -> int:
    return _max_trunc


def set_max_trunc(value: int) -> int:
    """Set the global truncation cap; returns the previous value."""
    global _max_trunc
    if value < 1:
        raise ValueError("truncation cap must be positive")
    old, _max_trunc = _max_trunc, int(value)
    return old


def check_trunc(trunc: int) -> int:
    """Fail fast when a requested truncation exceeds the global cap."""
    if trunc > _max_trunc:
        raise TruncationError(f"truncation {trunc} exceeds the cap {_max_trunc} (raise it with QC_TRUNC_MAX)")
    return trunc


def _combine_moduli(m1: int | None, m2: int | None) -> int | None:
    if m1 is None:
        return m2
    if m2 is None:
        return m1
    g = gcd(m1, m2)
    if g < 2:
        raise ValueError(f"series modulo {m1} and {m2} have no common modulus")
    return g


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of q^0 .. q^(trunc-1), optionally reduced modulo ``modulus``."""

    coeffs: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs trunc >= 1")
        if self.modulus is not None:
            if self.modulus < 2:
                raise ValueError("modulus must be at least 2")
            coeffs = tuple(c % self.modulus for c in coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(
        cls, coeffs: Iterable[int], trunc: int | None = None, modulus: int | None = None
    ) -> TruncatedSeries:
        """Build a series, padding with zeros (or cutting) to ``trunc``."""
        c = list(coeffs)
        if trunc is not None:
            c = c[:trunc] + [0] * max(0, trunc - len(c))
        return cls(tuple(c), modulus)

    @property
    def trunc(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __getitem__(self, idx):
        if isinstance(idx, int) and not 0 <= idx < len(self.coeffs):
            raise IndexError(f"exponent {idx} outside truncation {len(self.coeffs)}")
        return self.coeffs[idx]

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        mod = f", mod {self.modulus}" if self.modulus is not None else ""
        return f"TruncatedSeries([{head}{more}], trunc={self.trunc}{mod})"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def nonzero_exponents(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def __add__(self, other):
        if isinstance(other, int):
            other = monomial(0, self.trunc, other)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.modulus)

    def __sub__(self, other):
        if isinstance(other, int):
            other = monomial(0, self.trunc, other)
        return sub(self, other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(tuple(other * c for c in self.coeffs), self.modulus)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> TruncatedSeries:
        return power(self, e)

    # -- serialisation -------------------------------------------------

    def to_text(self) -> str:
        """Header ``T=<trunc>`` then one decimal coefficient per line."""
        return "\n".join([f"T={self.trunc}", *map(str, self.coeffs)]) + "\n"

    @classmethod
    def from_text(cls, text: str, modulus: int | None = None) -> TruncatedSeries:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("T="):
            raise ValueError("series text must start with a 'T=<trunc>' header")
        trunc = int(lines[0][2:])
        coeffs = [int(ln) for ln in lines[1:]]
        if len(coeffs) != trunc:
            raise ValueError(f"header says T={trunc} but {len(coeffs)} coefficients follow")
        return cls(tuple(coeffs), modulus)

    def to_json_obj(self) -> dict:
        obj = {"trunc": self.trunc, "coeffs": list(self.coeffs)}
        if self.modulus is not None:
            obj["modulus"] = self.modulus
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, data: str | Mapping) -> TruncatedSeries:
        obj = json.loads(data) if isinstance(data, str) else data
        coeffs = list(obj["coeffs"])
        if len(coeffs) != obj["trunc"]:
            raise ValueError("trunc does not match the number of coefficients")
        return cls(tuple(coeffs), obj.get("modulus"))


class EtaExponentMap(Mapping[int, int]):
    """Exponents r_delta of a product of Euler products f_delta (or eta(delta z))."""

    def __init__(self, entries: Mapping[int, int] | Iterable[tuple[int, int]]):
        items = list(entries.items()) if isinstance(entries, Mapping) else list(entries)
        data: dict[int, int] = {}
        for delta, r in items:
            delta, r = int(delta), int(r)
            if delta < 1:
                raise ValueError(f"divisor {delta} must be positive")
            if delta in data:
                raise ValueError(f"divisor {delta} listed twice")
            data[delta] = r
        if not any(data.values()):
            raise ValueError("an eta exponent map needs at least one nonzero exponent")
        self._data = dict(sorted(data.items()))

    @classmethod
    def parse(cls, text: str) -> EtaExponentMap:
        """Parse ``"1:-4,2:6,4:-2"``."""
        pairs = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            delta, _, r = chunk.partition(":")
            if not _:
                raise ValueError(f"malformed exponent entry {chunk!r}")
            pairs.append((int(delta), int(r)))
        return cls(pairs)

    def __getitem__(self, delta: int) -> int:
        return self._data[delta]

    def __iter__(self):
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __repr__(self) -> str:
        return f"EtaExponentMap({self._data})"

    def __str__(self) -> str:
        return ",".join(f"{d}:{r}" for d, r in self._data.items())

    def __hash__(self) -> int:
        return hash(tuple(self._data.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            a = {d: r for d, r in self._data.items() if r}
            b = {d: r for d, r in other.items() if r}
            return a == b
        return NotImplemented

    def nonzero(self) -> dict[int, int]:
        return {d: r for d, r in self._data.items() if r}

    def weight_sum(self) -> int:
        """Sum of r_delta."""
        return sum(self._data.values())

    def delta_sum(self) -> int:
        """Sum of delta * r_delta."""
        return sum(d * r for d, r in self._data.items())


# -- low level coefficient kernels ------------------------------------------


def _reduce(c: list[int], modulus: int | None) -> list[int]:
    if modulus is None:
        return c
    return [x % modulus for x in c]


def _schoolbook(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                if y:
                    out[i + j] += x * y
    return out


def _sparse_mul(dense: list[int], sparse: list[tuple[int, int]], n: int) -> list[int]:
    out = [0] * n
    for i, x in sparse:
        if i >= n:
            break
        for j, y in enumerate(dense[: n - i]):
            out[i + j] += x * y
    return out


def _pack(c: list[int], width: int) -> int:
    """Pack signed coefficients into sum c_i 2^(8*width*i)."""
    slot = 8 * width
    full = 1 << slot
    raw = b"".join((x % full).to_bytes(width, "little") for x in c)
    value = int.from_bytes(raw, "little")
    if any(x < 0 for x in c):
        # each negative slot was stored as x + 2^slot; remove the borrowed units
        pad = bytes(width)
        unit = b"\x01" + bytes(width - 1)
        borrow = b"".join(unit if x < 0 else pad for x in c)
        value -= int.from_bytes(borrow, "little") << slot
    return value


def _unpack(value, width: int, n: int, signed: bool) -> list[int]:
    slot = 8 * width
    value = value % (gmpy2.mpz(1) << (slot * n))
    raw = int(value).to_bytes(width * n, "little")
    if not signed:
        return [int.from_bytes(raw[i * width : (i + 1) * width], "little") for i in range(n)]
    half = 1 << (slot - 1)
    full = 1 << slot
    out = []
    carry = 0
    for i in range(n):
        v = int.from_bytes(raw[i * width : (i + 1) * width], "little") + carry
        if v >= half:
            out.append(v - full)
            carry = 1
        else:
            out.append(v)
            carry = 0
    return out


def _kronecker_mul(a: list[int], b: list[int], n: int, modulus: int | None) -> list[int]:
    a, b = a[:n], b[:n]
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if not ma or not mb:
        return [0] * n
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length()
    signed = modulus is None
    if signed:
        bits += 1
    width = (bits + 7) // 8
    pa = gmpy2.mpz(_pack(a, width))
    pb = gmpy2.mpz(_pack(b, width))
    return _unpack(pa * pb, width, n, signed)


def _mul_coeffs(a: list[int], b: list[int], n: int, modulus: int | None) -> list[int]:
    na = [(i, x) for i, x in enumerate(a[:n]) if x]
    nb = [(i, x) for i, x in enumerate(b[:n]) if x]
    if not na or not nb:
        return [0] * n
    if len(na) > len(nb):
        a, b, na, nb = b, a, nb, na
    # a now has the fewer nonzero terms
    if len(na) <= SCHOOLBOOK_MAX or len(na) * n <= SPARSE_BUDGET:
        out = _sparse_mul(b, na, n)
    else:
        out = _kronecker_mul(a, b, n, modulus)
    return _reduce(out, modulus)


def _inverse_coeffs(a: list[int], n: int, modulus: int | None) -> list[int]:
    a0 = a[0]
    if n <= INVERSE_RECURRENCE_MAX:
        # b[k] = -a0 * sum_{j=1..k} a[j] b[k-j], valid because a0 = 1/a0 for a0 = +-1
        b = [a0]
        terms = [(j, x) for j, x in enumerate(a[1:n], start=1) if x]
        for k in range(1, n):
            s = 0
            for j, x in terms:
                if j > k:
                    break
                s += x * b[k - j]
            s = -a0 * s
            b.append(s % modulus if modulus else s)
        return b
    h = (n + 1) // 2
    b = _inverse_coeffs(a, h, modulus)
    # Newton step: b <- b (2 - a b)
    e = _mul_coeffs(a, b, n, modulus)
    e = [-x for x in e]
    e[0] += 2
    return _mul_coeffs(b, _reduce(e, modulus), n, modulus)


# -- public operations -------------------------------------------------------


def zero(trunc: int, modulus: int | None = None) -> TruncatedSeries:
    return TruncatedSeries((0,) * trunc, modulus)


def one(trunc: int, modulus: int | None = None) -> TruncatedSeries:
    return monomial(0, trunc, 1, modulus)


def monomial(
    exponent: int, trunc: int, coeff: int = 1, modulus: int | None = None
) -> TruncatedSeries:
    c = [0] * trunc
    if exponent < trunc:
        c[exponent] = coeff
    return TruncatedSeries(tuple(c), modulus)


def truncate(a: TruncatedSeries, trunc: int) -> TruncatedSeries:
    if trunc > a.trunc:
        raise ValueError(f"cannot extend truncation {a.trunc} to {trunc}")
    return TruncatedSeries(a.coeffs[:trunc], a.modulus)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.trunc, b.trunc)
    return TruncatedSeries(
        tuple(x + y for x, y in zip(a.coeffs[:n], b.coeffs[:n])),
        _combine_moduli(a.modulus, b.modulus),
    )


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.trunc, b.trunc)
    return TruncatedSeries(
        tuple(x - y for x, y in zip(a.coeffs[:n], b.coeffs[:n])),
        _combine_moduli(a.modulus, b.modulus),
    )


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.trunc, b.trunc)
    modulus = _combine_moduli(a.modulus, b.modulus)
    return TruncatedSeries(tuple(_mul_coeffs(list(a.coeffs), list(b.coeffs), n, modulus)), modulus)


def _unit_sign(a: TruncatedSeries) -> int:
    c0 = a.coeffs[0]
    if a.modulus is None:
        if c0 in (1, -1):
            return c0
    else:
        if c0 == 1 % a.modulus:
            return 1
        if c0 == (-1) % a.modulus:
            return -1
    raise ValueError(f"constant term {c0} is not +-1; the series is not invertible here")


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series whose constant term is +1 or -1."""
    sign = _unit_sign(a)
    c = list(a.coeffs)
    c[0] = sign
    return TruncatedSeries(tuple(_inverse_coeffs(c, a.trunc, a.modulus)), a.modulus)


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """a**e by repeated squaring; negative exponents go through :func:`inverse`."""
    if e < 0:
        return power(inverse(a), -e)
    result = one(a.trunc, a.modulus)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def shift(a: TruncatedSeries, s: int) -> TruncatedSeries:
    """Multiply by q^s, keeping the truncation."""
    if s < 0:
        raise ValueError("use extract_ap or slicing to divide by powers of q")
    c = (0,) * s + a.coeffs[: max(0, a.trunc - s)]
    return TruncatedSeries(c[: a.trunc], a.modulus)


def inflate(a: TruncatedSeries, s: int) -> TruncatedSeries:
    """Substitute q -> q^s; the result is valid up to (but excluding) s * trunc."""
    if s < 1:
        raise ValueError("inflation factor must be positive")
    n = min(a.trunc * s, _max_trunc)
    c = [0] * n
    c[::s] = a.coeffs[: len(range(0, n, s))]
    return TruncatedSeries(tuple(c), a.modulus)


def extract_ap(a: TruncatedSeries, m: int, t: int) -> TruncatedSeries:
    """Series b with b[n] = a[m n + t]."""
    if m < 1:
        raise ValueError("progression modulus must be positive")
    if not 0 <= t < m:
        raise ValueError(f"residue {t} must satisfy 0 <= t < {m}")
    if t >= a.trunc:
        raise ValueError(f"residue {t} lies beyond truncation {a.trunc}")
    return TruncatedSeries(a.coeffs[t::m], a.modulus)


def reduce_mod(a: TruncatedSeries, modulus: int) -> TruncatedSeries:
    """Reduce every coefficient to its representative in [0, modulus)."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if a.modulus is not None and a.modulus % modulus:
        raise ValueError(f"series known modulo {a.modulus} cannot be reduced modulo {modulus}")
    return TruncatedSeries(a.coeffs, modulus)


def pentagonal_exponents(limit: int) -> list[tuple[int, int]]:
    """Pairs (j(3j-1)/2, (-1)^j) with exponent below ``limit``, j running over Z."""
    out = [(0, 1)]
    j = 1
    while True:
        e1 = j * (3 * j - 1) // 2
        if e1 >= limit:
            break
        sign = -1 if j & 1 else 1
        out.append((e1, sign))
        e2 = j * (3 * j + 1) // 2
        if e2 < limit:
            out.append((e2, sign))
        j += 1
    return sorted(out)


def euler_product(k: int, trunc: int, modulus: int | None = None) -> TruncatedSeries:
    """f_k = prod_{n>=1} (1 - q^(k n)) via the pentagonal number theorem."""
    if k < 1:
        raise ValueError("f_k needs k >= 1")
    if trunc < 1:
        raise ValueError("truncation must be positive")
    check_trunc(trunc)
    c = [0] * trunc
    for e, sign in pentagonal_exponents((trunc + k - 1) // k):
        c[k * e] = sign
    return TruncatedSeries(tuple(c), modulus)


def eta_quotient_series(
    exps: Mapping[int, int], trunc: int, modulus: int | None = None
) -> TruncatedSeries:
    """prod_delta f_delta^(r_delta) to the given truncation."""
    if not isinstance(exps, EtaExponentMap):
        exps = EtaExponentMap(exps)
    num = one(trunc, modulus)
    den = one(trunc, modulus)
    for delta, r in exps.items():
        if r > 0:
            num = mul(num, power(euler_product(delta, trunc, modulus), r))
        elif r < 0:
            den = mul(den, power(euler_product(delta, trunc, modulus), -r))
    if all(r >= 0 for r in exps.values()):
        return num
    return mul(num, inverse(den))
