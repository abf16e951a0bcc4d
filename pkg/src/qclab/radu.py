"""Radu's finite criterion for congruences of eta-quotient coefficients.

Given (m, M, N, t, r) in the admissible set Delta*, auxiliary exponents r'
over the divisors of N, and a bound nu, checking A(m n + t') = 0 (mod u) for
all t' in P(t) and 0 <= n <= floor(nu) proves the congruence for every n.
This module evaluates every ingredient exactly and packages the result as a
JSON certificate that can be re-checked from its own contents.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd
from typing import Callable, Mapping

from .arith import divisors, is_squarefree, prime_divisors
from .series import EtaExponentMap, TruncatedSeries, eta_quotient_series

__all__ = [
    "RaduTuple",
    "DeltaStarReport",
    "GammaCheck",
    "RaduCertificate",
    "delta_star_check",
    "square_units",
    "p_set",
    "gamma_reps",
    "p_lower",
    "p_prime",
    "index_gamma0",
    "nu_bound",
    "even_k_tuple",
    "even_k_closed_form_nu",
    "radu_verify",
    "recheck_certificate",
]

Matrix = tuple[tuple[int, int], tuple[int, int]]
SeriesProvider = Callable[[Mapping[int, int], int, int], TruncatedSeries]


@dataclass(frozen=True)
class RaduTuple:
    m: int
    M: int
    N: int
    t: int
    r: EtaExponentMap

    def __post_init__(self) -> None:
        if not isinstance(self.r, EtaExponentMap):
            object.__setattr__(self, "r", EtaExponentMap(self.r))
        if self.m < 1 or self.M < 1 or self.N < 1:
            raise ValueError("m, M and N must be positive")
        if not 0 <= self.t < self.m:
            raise ValueError(f"t={self.t} must lie in [0, {self.m})")
        bad = [d for d in self.r if self.M % d]
        if bad:
            raise ValueError(f"exponent keys {bad} do not divide M={self.M}")

    @property
    def k(self) -> int:
        return gcd(self.m * self.m - 1, 24)

    def to_dict(self) -> dict:
        return {"m": self.m, "M": self.M, "N": self.N, "t": self.t,
                "r": {str(d): v for d, v in self.r.items()}}

    @classmethod
    def from_dict(cls, d: Mapping) -> RaduTuple:
        return cls(d["m"], d["M"], d["N"], d["t"], EtaExponentMap({int(a): b for a, b in d["r"].items()}))


@dataclass(frozen=True)
class DeltaStarReport:
    conditions: tuple[bool, bool, bool, bool, bool, bool]

    @property
    def ok(self) -> bool:
        return all(self.conditions)

    def failing(self) -> list[int]:
        return [i + 1 for i, c in enumerate(self.conditions) if not c]


def delta_star_check(tup: RaduTuple) -> DeltaStarReport:
    m, N, t, r = tup.m, tup.N, tup.t, tup.r.nonzero()
    k = tup.k
    c1 = all(N % p == 0 for p in prime_divisors(m)) if m > 1 else True
    c2 = all((m * N) % d == 0 for d in r)
    s3 = sum(Fraction(v * m * N, d) for d, v in r.items())
    c3 = s3.denominator == 1 and (k * N * s3.numerator) % 24 == 0
    c4 = (k * N * sum(r.values())) % 8 == 0
    g = gcd(-24 * k * t - k * sum(d * v for d, v in r.items()), 24 * m)
    c5 = N % ((24 * m) // g) == 0
    if m % 2 == 0:
        # prod delta^|r_delta| = 2^s j with j odd
        s = 0
        j = 1
        for d, v in r.items():
            while d % 2 == 0:
                d //= 2
                s += abs(v)
            j *= d ** abs(v)
        c6 = ((k * N) % 4 == 0 and (s * N) % 8 == 0) or (s % 2 == 0 and ((1 - j) * N) % 8 == 0)
    else:
        c6 = True
    return DeltaStarReport((c1, c2, c3, c4, c5, c6))


def square_units(n: int) -> set[int]:
    """{x^2 mod n : gcd(x, n) = 1}."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if n == 1:
        return {0}
    return {x * x % n for x in range(1, n) if gcd(x, n) == 1}


def p_set(tup: RaduTuple) -> list[int]:
    """P(t): residues t' = t s + (s - 1)/24 * sum(delta r_delta) mod m over square units s mod 24m."""
    m = tup.m
    ds = tup.r.delta_sum()
    out = set()
    for s in square_units(24 * m):
        shift = Fraction((s - 1) * ds, 24)
        if shift.denominator != 1:
            raise ValueError(f"malformed tuple: (s-1) * {ds} / 24 is not an integer for s={s}")
        out.add((tup.t * s + shift.numerator) % m)
    return sorted(out)


def gamma_reps(N: int) -> list[Matrix]:
    """Matrices (1 0; delta 1), delta | N, covering Gamma_0(N) \\ Gamma / Gamma_inf."""
    if not (is_squarefree(N) or (N % 2 == 0 and is_squarefree(N // 2))):
        raise ValueError(f"neither N={N} nor N/2 is square-free; no guaranteed coset cover")
    return [((1, 0), (d, 1)) for d in divisors(N)]


def p_lower(tup: RaduTuple, gamma: Matrix) -> Fraction:
    (a, _b), (c, _d) = gamma
    m, k = tup.m, tup.k
    return min(
        Fraction(1, 24) * sum(
            Fraction(v * gcd(d * (a + k * lam * c), m * c) ** 2, d * m) for d, v in tup.r.items()
        )
        for lam in range(m)
    )


def p_prime(r_prime: Mapping[int, int], gamma: Matrix) -> Fraction:
    c = gamma[1][0]
    return Fraction(1, 24) * sum(Fraction(v * gcd(d, c) ** 2, d) for d, v in r_prime.items())


def index_gamma0(N: int) -> int:
    """[SL2(Z) : Gamma_0(N)] = N prod_{l | N} (1 + 1/l)."""
    if N < 1:
        raise ValueError("N must be positive")
    out = Fraction(N)
    for p in prime_divisors(N) if N > 1 else []:
        out *= Fraction(p + 1, p)
    return int(out)


def nu_bound(tup: RaduTuple, r_prime: Mapping[int, int]) -> Fraction:
    t_min = min(p_set(tup))
    total = sum(tup.r.values()) + sum(r_prime.values())
    inner = (
        total * index_gamma0(tup.N)
        - sum(d * v for d, v in r_prime.items())
        - Fraction(tup.r.delta_sum(), tup.m)
    )
    return Fraction(1, 24) * inner - Fraction(t_min, tup.m)


def even_k_tuple(i: int, r: int, t: int) -> tuple[RaduTuple, dict[int, int]]:
    """The (8, 4, 4, t) tuple for OPT_{2^i r} and its auxiliary exponents r' = {1: 3 2^(i+1) r}."""
    if i < 1 or r % 2 == 0:
        raise ValueError("need i >= 1 and r odd")
    k = 2**i * r
    tup = RaduTuple(8, 4, 4, t, EtaExponentMap({1: -2 * k, 2: 3 * k, 4: -k}))
    return tup, {1: 3 * 2 ** (i + 1) * r, 2: 0, 4: 0}


def _match_even_k(tup: RaduTuple, r_prime: Mapping[int, int]) -> tuple[int, int] | None:
    """Return (i, r) if the inputs are exactly an :func:`even_k_tuple` instance."""
    if (tup.m, tup.M, tup.N) != (8, 4, 4):
        return None
    ex = tup.r.nonzero()
    k = -ex.get(4, 0)
    if k <= 0 or ex != {1: -2 * k, 2: 3 * k, 4: -k}:
        return None
    i = (k & -k).bit_length() - 1
    r = k >> i
    if i < 1 or {d: v for d, v in r_prime.items() if v} != {1: 6 * k}:
        return None
    return i, r


def even_k_closed_form_nu(i: int, r: int, t_min: int) -> Fraction:
    """Closed form 14 2^(i-2) r - t/8 stated for the even-k family."""
    return Fraction(14 * 2**i * r, 4) - Fraction(t_min, 8)


@dataclass(frozen=True)
class GammaCheck:
    delta: int
    p: Fraction
    p_prime: Fraction

    @property
    def ok(self) -> bool:
        return self.p + self.p_prime >= 0


@dataclass
class RaduCertificate:
    tuple: RaduTuple
    r_prime: dict[int, int]
    modulus: int
    delta_star_report: DeltaStarReport
    p_t_set: list[int]
    nu: Fraction
    nu_closed_form: Fraction | None
    nu_eff: Fraction
    checked_prefix: int
    gamma_checks: list[GammaCheck]
    prefix_values: dict[int, list[int]]
    status: str
    failing_condition: str | None = None
    counterexample: tuple[int, int, int] | None = None
    timestamp: float = field(default_factory=time.time)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, canonical: bool = False) -> dict:
        d = {
            "tuple": self.tuple.to_dict(),
            "r_prime": {str(a): b for a, b in sorted(self.r_prime.items())},
            "modulus": self.modulus,
            "delta_star_report": {f"condition_{i + 1}": c for i, c in enumerate(self.delta_star_report.conditions)},
            "p_t_set": self.p_t_set,
            "nu": str(self.nu),
            "nu_closed_form": None if self.nu_closed_form is None else str(self.nu_closed_form),
            "nu_eff": str(self.nu_eff),
            "checked_prefix": self.checked_prefix,
            "gamma_checks": [
                {"delta": g.delta, "p": str(g.p), "p_prime": str(g.p_prime), "ok": g.ok}
                for g in self.gamma_checks
            ],
            "prefix_values": {str(a): b for a, b in sorted(self.prefix_values.items())},
            "status": self.status,
            "failing_condition": self.failing_condition,
            "counterexample": None if self.counterexample is None else list(self.counterexample),
        }
        if not canonical:
            d["timestamp"] = self.timestamp
        return d

    def to_json(self, canonical: bool = False) -> str:
        return json.dumps(self.to_dict(canonical), sort_keys=True, indent=None if canonical else 2)


def _default_provider(exps: Mapping[int, int], trunc: int, modulus: int) -> TruncatedSeries:
    return eta_quotient_series(exps, trunc, modulus)


def radu_verify(
    tup: RaduTuple,
    r_prime: Mapping[int, int],
    u: int,
    series_provider: SeriesProvider | None = None,
) -> RaduCertificate:
    """Run every hypothesis and the finite prefix check; never passes silently.

    The prefix is checked up to floor(nu_eff) where nu_eff is the larger of the
    literal bound and, for the even-k family, the stated closed form.
    """
    if u < 1:
        raise ValueError("u must be >= 1")
    provider = series_provider or _default_provider
    r_prime = {int(a): int(b) for a, b in r_prime.items()}
    ds = delta_star_check(tup)

    def cert(status, **kw):
        base = dict(
            tuple=tup, r_prime=r_prime, modulus=u, delta_star_report=ds, p_t_set=[],
            nu=Fraction(0), nu_closed_form=None, nu_eff=Fraction(0), checked_prefix=-1,
            gamma_checks=[], prefix_values={}, status=status,
        )
        base.update(kw)
        return RaduCertificate(**base)

    bad_keys = [d for d in r_prime if tup.N % d]
    if bad_keys:
        return cert("inapplicable", failing_condition=f"r' keys {bad_keys} do not divide N={tup.N}")
    if not ds.ok:
        return cert("inapplicable", failing_condition=f"Delta* condition(s) {ds.failing()} fail")
    try:
        pts = p_set(tup)
    except ValueError as exc:
        return cert("inapplicable", failing_condition=str(exc))
    try:
        reps = gamma_reps(tup.N)
    except ValueError as exc:
        return cert("inapplicable", p_t_set=pts, failing_condition=str(exc))
    checks = [GammaCheck(g[1][0], p_lower(tup, g), p_prime(r_prime, g)) for g in reps]
    nu = nu_bound(tup, r_prime)
    match = _match_even_k(tup, r_prime)
    closed = even_k_closed_form_nu(*match, min(pts)) if match else None
    nu_eff = max(nu, closed) if closed is not None else nu
    prefix = floor(nu_eff)
    common = dict(p_t_set=pts, nu=nu, nu_closed_form=closed, nu_eff=nu_eff,
                  checked_prefix=prefix, gamma_checks=checks)
    failing = [g.delta for g in checks if not g.ok]
    if failing:
        return cert("inapplicable", failing_condition=f"p + p' < 0 at delta in {failing}", **common)

    values: dict[int, list[int]] = {}
    counterexample = None
    if prefix >= 0:
        need = tup.m * prefix + max(pts) + 1
        modulus = u if u > 1 else None
        series = provider(tup.r, need, modulus) if modulus else provider(tup.r, need, 2)
        if series.trunc < need:
            return cert("inapplicable", failing_condition=f"series provider returned trunc {series.trunc} < {need}",
                        **common)
        for tp in pts:
            vals = [series[tup.m * n + tp] % u for n in range(prefix + 1)]
            values[tp] = vals
            if counterexample is None:
                for n, v in enumerate(vals):
                    if v:
                        counterexample = (tp, n, v)
                        break
    status = "pass" if counterexample is None else "fail"
    return cert(status, prefix_values=values, counterexample=counterexample,
                failing_condition=None if status == "pass" else "prefix congruence fails", **common)


def recheck_certificate(data: str | Mapping, series_provider: SeriesProvider | None = None) -> bool:
    """Recompute a certificate from its recorded inputs and compare every recorded field."""
    obj = json.loads(data) if isinstance(data, str) else dict(data)
    tup = RaduTuple.from_dict(obj["tuple"])
    r_prime = {int(a): int(b) for a, b in obj["r_prime"].items()}
    fresh = radu_verify(tup, r_prime, int(obj["modulus"]), series_provider)
    recorded = {k: v for k, v in obj.items() if k != "timestamp"}
    return json.loads(fresh.to_json(canonical=True)) == recorded
