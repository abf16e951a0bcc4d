"""Catalogue of congruence claims about OPT_k and the engine that checks them."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd, isqrt, prod

from .arith import HypothesisError, TruncationError, is_prime, lcm
from .optk import opt_series
from .series import TruncatedSeries
from .special import SquareType, classify_square_type

__all__ = [
    "CongruenceClaim",
    "VerificationReport",
    "RegistryGrid",
    "verify_ap_congruence",
    "verify_claim",
    "run_claims",
    "theorem_registry",
    "find_claim",
    "verify_identity",
    "quadratic_nonresidues",
    "singlemod_family_residue",
    "singlemod_family_parameters",
    "classify_opt3_mod4",
    "verify_residue_structure",
    "thm_mf1_index",
    "verify_thm_mf1",
]


@dataclass(frozen=True)
class CongruenceClaim:
    """OPT_k(m n + t) = 0 (mod modulus) for all n >= 0."""

    id: str
    k: int
    m: int
    t: int
    modulus: int
    source: str
    kind: str = "theorem"
    params: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.t < self.m:
            raise ValueError(f"{self.id}: residue {self.t} not in [0, {self.m})")
        if self.modulus < 2:
            raise ValueError(f"{self.id}: modulus must be >= 2")
        if self.kind not in ("theorem", "conjecture"):
            raise ValueError(f"{self.id}: unknown kind {self.kind!r}")

    @property
    def family(self) -> str:
        return f"OPT_{self.k}"

    def needed_trunc(self, n_max: int) -> int:
        return self.m * n_max + self.t + 1


@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    checked_range: int
    status: str
    counterexample: tuple[int, int] | None = None
    wall_time: float = field(default=0.0, compare=False)
    kind: str = "theorem"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["counterexample"] = list(self.counterexample) if self.counterexample else None
        return d

    def tsv_row(self) -> str:
        ce = "" if self.counterexample is None else f"n={self.counterexample[0]},value={self.counterexample[1]}"
        return "\t".join(
            [self.claim_id, self.kind, str(self.checked_range), self.status, ce, f"{self.wall_time:.3f}"]
        )


TSV_HEADER = "\t".join(["claim_id", "kind", "checked_range", "status", "counterexample", "wall_time"])


def verify_ap_congruence(
    series: TruncatedSeries, m: int, t: int, u: int, n_max: int, claim_id: str = "", kind: str = "theorem"
) -> VerificationReport:
    """Check series[m n + t] = 0 (mod u) for 0 <= n <= n_max.

    Refuses to run on a series that is too short instead of checking a
    shorter range.
    """
    if not 0 <= t < m:
        raise ValueError(f"residue {t} not in [0, {m})")
    if u < 2:
        raise ValueError("modulus must be >= 2")
    need = m * n_max + t + 1
    if series.trunc < need:
        raise TruncationError(f"need truncation {need}, series has {series.trunc}")
    if series.modulus is not None and series.modulus % u:
        raise ValueError(f"series known modulo {series.modulus} cannot decide divisibility by {u}")
    start = time.perf_counter()
    coeffs = series.coeffs
    for n in range(n_max + 1):
        v = coeffs[m * n + t] % u
        if v:
            return VerificationReport(claim_id, n_max, "counterexample", (n, v), time.perf_counter() - start, kind)
    return VerificationReport(claim_id, n_max, "pass", None, time.perf_counter() - start, kind)


def verify_claim(claim: CongruenceClaim, n_max: int) -> VerificationReport:
    start = time.perf_counter()
    s = opt_series(claim.k, claim.needed_trunc(n_max), claim.modulus)
    rep = verify_ap_congruence(s, claim.m, claim.t, claim.modulus, n_max, claim.id, claim.kind)
    return VerificationReport(
        rep.claim_id, rep.checked_range, rep.status, rep.counterexample, time.perf_counter() - start, rep.kind
    )


def _verify_group(k: int, claims: list[CongruenceClaim], n_max: int) -> list[VerificationReport]:
    # one series per k, reduced modulo the lcm of all moduli asked of it
    start = time.perf_counter()
    s = opt_series(k, max(c.needed_trunc(n_max) for c in claims), lcm(*(c.modulus for c in claims)))
    setup = time.perf_counter() - start
    out = []
    for c in claims:
        rep = verify_ap_congruence(s, c.m, c.t, c.modulus, n_max, c.id, c.kind)
        out.append(
            VerificationReport(
                rep.claim_id, rep.checked_range, rep.status, rep.counterexample,
                rep.wall_time + setup / len(claims), rep.kind,
            )
        )
    return out


def run_claims(claims: list[CongruenceClaim], n_max: int, jobs: int = 1) -> list[VerificationReport]:
    """Verify many claims, sharing one series per k; output order follows ``claims``."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    groups: dict[int, list[CongruenceClaim]] = {}
    for c in claims:
        groups.setdefault(c.k, []).append(c)
    keys = sorted(groups)
    if jobs == 1 or len(keys) == 1:
        results = [_verify_group(k, groups[k], n_max) for k in keys]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_group, keys, [groups[k] for k in keys], [n_max] * len(keys)))
    by_id = {r.claim_id: r for group in results for r in group}
    return [by_id[c.id] for c in claims]


# -- the catalogue -------------------------------------------------------------


@dataclass(frozen=True)
class RegistryGrid:
    """Parameter ranges used to expand the parameterised families into finite claims."""

    i_max: int = 3
    r_values: tuple[int, ...] = (1, 3, 5)
    radu_i_max: int = 5
    mod3_i_max: int = 3
    mod4_primes: tuple[int, ...] = (5, 7, 11, 13)
    conj_i_max: int = 2
    conj_j_max: int = 2
    conj_k_values: tuple[int, ...] = (1, 5, 7)
    conj_r_values: tuple[int, ...] = (1, 3, 5, 7)
    conj_multipliers: tuple[int, ...] = (5, 7)


def _claim(group, opt_k, m, t, u, source, kind="theorem", **params) -> CongruenceClaim:
    tag = ",".join(f"{a}={b}" for a, b in params.items())
    cid = f"{group}[{tag}]:{m}n+{t}:mod{u}" if tag else f"{group}:{m}n+{t}:mod{u}"
    return CongruenceClaim(cid, opt_k, m, t, u, source, kind, tuple(params.items()))


OPT3_SMALL_MODULI = "OPT_3 congruences modulo multiples of 3"
OPT3_MOD4_FAMILY = "OPT_3 modulo 4 on progressions 3pn+R"
EVEN_K_ELEMENTARY = "OPT_{2^i r} modulo powers of 2 (elementary)"
EVEN_K_RADU = "OPT_{2^i r} modulo powers of 2 (Radu certificate)"
POWERS_OF_3 = "OPT_{3^i}(3n+2) modulo 3^(i+1)"
EVEN_CLASSES_CONJ = "OPT_{2^i r} on classes modulo 8 (conjectured)"
EVEN_CLASSES_8N4_UNCORRECTED = "OPT_{2^i r}(8n+4) modulo 2^(2i+4), uncorrected form"
EVEN_CLASSES_8N4_I_POW2 = "OPT_{2^i r}(8n+4) modulo 2^(2i+4) for i a power of 2"
MIXED_3N2 = "OPT_{3^i 2^j k}(3n+2) modulo 3^(i+1) 2^(j+2)"
ODD_3N2 = "OPT_{3^i j}(3n+2) modulo 3^(i+1) 2"
MIXED_3N1 = "OPT_{3^i 2^j k}(3n+1) modulo 3^i 2^(j+1)"
ODD_3N1 = "OPT_{3^i j}(3n+1) modulo 3^i 2"


def theorem_registry(grid: RegistryGrid | None = None) -> list[CongruenceClaim]:
    """Every theorem and conjecture, expanded over ``grid`` into concrete claims."""
    g = grid or RegistryGrid()
    out: list[CongruenceClaim] = []

    for m, t, u in [(3, 1, 6), (12, 7, 12), (12, 10, 12), (3, 2, 18), (6, 5, 36), (24, 23, 144)]:
        out.append(_claim("opt3", 3, m, t, u, OPT3_SMALL_MODULI))

    for p in g.mod4_primes:
        for r, A, R in singlemod_family_parameters(p):
            out.append(_claim("opt3-mod4", 3, 3 * p, R, 4, OPT3_MOD4_FAMILY, p=p, r=r, A=A))

    for i in range(1, g.i_max + 1):
        for r in g.r_values:
            k = 2**i * r
            out.append(_claim("even", k, 8, 1, 2 ** (i + 1), EVEN_K_ELEMENTARY, i=i, r=r))
            out.append(_claim("even", k, 4, 3, 2 ** (i + 3), EVEN_K_ELEMENTARY, i=i, r=r))
            out.append(_claim("even", k, 8, 5, 2 ** (i + 2), EVEN_K_ELEMENTARY, i=i, r=r))

    for i in range(1, g.radu_i_max + 1):
        for r in g.r_values:
            k = 2**i * r
            out.append(_claim("even-radu", k, 8, 2, 2 ** (2 * i + 1), EVEN_K_RADU, i=i, r=r))
            out.append(_claim("even-radu", k, 8, 4, 2 ** (2 * i + 3), EVEN_K_RADU, i=i, r=r))
            out.append(_claim("even-radu", k, 8, 6, 2 ** (2 * i + 3), EVEN_K_RADU, i=i, r=r))

    for i in range(1, g.mod3_i_max + 1):
        out.append(_claim("pow3", 3**i, 3, 2, 3 ** (i + 1), POWERS_OF_3, i=i))

    # conjectures: reported, never asserted
    class_lines = [(1, lambda i: i + 1), (2, lambda i: 2 * i + 1), (3, lambda i: i + 3),
                 (4, lambda i: 2 * i + 3), (5, lambda i: i + 2), (6, lambda i: 2 * i + 3),
                 (7, lambda i: i + 4)]
    for i in range(1, g.conj_i_max + 1):
        for r in g.conj_r_values:
            k = 2**i * r
            for t, e in class_lines:
                out.append(_claim("even-classes", k, 8, t, 2 ** e(i), EVEN_CLASSES_CONJ, "conjecture", i=i, r=r))
            out.append(_claim("even-classes-8n+4-uncorrected", k, 8, 4, 2 ** (2 * i + 4), EVEN_CLASSES_8N4_UNCORRECTED,
                              "conjecture", i=i, r=r))
            if i >= 2 and i & (i - 1) == 0:
                out.append(_claim("even-classes-8n+4-i-pow2", k, 8, 4, 2 ** (2 * i + 4), EVEN_CLASSES_8N4_I_POW2,
                                  "conjecture", i=i, r=r))

    for i in range(1, g.conj_i_max + 1):
        for j in range(1, g.conj_j_max + 1):
            for kk in g.conj_k_values:
                k = 3**i * 2**j * kk
                out.append(_claim("mixed-3n+2", k, 3, 2, 3 ** (i + 1) * 2 ** (j + 2), MIXED_3N2,
                                  "conjecture", i=i, j=j, k=kk))
                out.append(_claim("mixed-3n+1", k, 3, 1, 3**i * 2 ** (j + 1), MIXED_3N1,
                                  "conjecture", i=i, j=j, k=kk))
        for j in g.conj_multipliers:
            out.append(_claim("odd-3n+2", 3**i * j, 3, 2, 3 ** (i + 1) * 2, ODD_3N2, "conjecture", i=i, j=j))
            out.append(_claim("odd-3n+1", 3**i * j, 3, 1, 3**i * 2, ODD_3N1, "conjecture", i=i, j=j))
    return out


def find_claim(claim_id: str, grid: RegistryGrid | None = None) -> CongruenceClaim:
    for c in theorem_registry(grid):
        if c.id == claim_id:
            return c
    raise KeyError(claim_id)


# -- individual checks ----------------------------------------------------------


def verify_identity(lhs: TruncatedSeries, rhs: TruncatedSeries) -> bool:
    """Coefficientwise equality up to the common truncation."""
    n = min(lhs.trunc, rhs.trunc)
    if lhs.modulus is not None or rhs.modulus is not None:
        mods = [x for x in (lhs.modulus, rhs.modulus) if x is not None]
        u = gcd(*mods)
        return all((a - b) % u == 0 for a, b in zip(lhs.coeffs[:n], rhs.coeffs[:n]))
    return lhs.coeffs[:n] == rhs.coeffs[:n]


def quadratic_nonresidues(p: int) -> set[int]:
    """Residues r in [1, p-1] with r^((p-1)/2) = -1 mod p (Euler's criterion)."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    return {r for r in range(1, p) if pow(r, (p - 1) // 2, p) == p - 1}


def singlemod_family_residue(p: int, r: int, A: int) -> int:
    """The offset R for which OPT_3(3 p n + R) = 0 (mod 4)."""
    if p < 5 or not is_prime(p):
        raise HypothesisError(f"p={p} must be a prime >= 5")
    if r % p not in quadratic_nonresidues(p):
        raise HypothesisError(f"r={r} is not a quadratic non-residue modulo {p}")
    if A not in (0, 1, 2):
        raise HypothesisError(f"A={A} must be 0, 1 or 2")
    if (A * p - 2 * r - 1) % 3:
        raise HypothesisError(f"A p = {A * p} is not congruent to 2r+1 = {2 * r + 1} modulo 3")
    R = 2 * (A * p + r)
    return R if R < 3 * p else R - 3 * p


def singlemod_family_parameters(p: int) -> list[tuple[int, int, int]]:
    """All admissible (r, A, R) with r in [1, p-1]."""
    out = []
    for r in sorted(quadratic_nonresidues(p)):
        for A in (0, 1, 2):
            if (A * p - 2 * r - 1) % 3 == 0:
                out.append((r, A, singlemod_family_residue(p, r, A)))
    return out


def classify_opt3_mod4(n: int) -> int:
    """Expected OPT_3(n) mod 4: 2 when n is a square or twice a square, 0 otherwise."""
    kind = classify_square_type(n)
    return 2 if kind in (SquareType.SQUARE, SquareType.TWICE_SQUARE) else 0


def _is_odd_square(n: int) -> bool:
    return n % 2 == 1 and isqrt(n) ** 2 == n


def verify_residue_structure(m: int, r: int, n_max: int, variant: str = "stated") -> VerificationReport:
    """Compare OPT_{2^m r}(n) mod 2^(m+2) with 2^(m+1) times an indicator, 1 <= n <= n_max.

    ``variant="stated"`` uses "n is a square, twice a square or four times a
    square"; ``variant="odd_square"`` uses "n is an odd square", which is what
    the numbers actually follow (e.g. OPT_2(2) = 8 = 0 mod 8).
    """
    if m < 1 or r % 2 == 0:
        raise HypothesisError("need m >= 1 and r odd")
    if variant == "stated":
        indicator = lambda n: classify_square_type(n) is not SquareType.NONE  # noqa: E731
    elif variant == "odd_square":
        indicator = _is_odd_square
    else:
        raise ValueError(f"unknown variant {variant!r}")
    u = 2 ** (m + 2)
    cid = f"residue-structure[m={m},r={r},{variant}]"
    start = time.perf_counter()
    s = opt_series(2**m * r, n_max + 1, u)
    for n in range(1, n_max + 1):
        want = 2 ** (m + 1) if indicator(n) else 0
        if s[n] != want:
            return VerificationReport(cid, n_max, "counterexample", (n, s[n]), time.perf_counter() - start)
    return VerificationReport(cid, n_max, "pass", None, time.perf_counter() - start)


def thm_mf1_index(primes: tuple[int, ...], j: int, n: int, corrected: bool = False) -> int:
    """8 P^2 n + Q^2 p (8 j + p) + 1 where p is the last prime, Q the product of the others
    and P = Q p.  ``corrected=True`` drops the trailing +1 (see :func:`verify_thm_mf1`)."""
    *head, last = primes
    q = prod(head)
    P = q * last
    return 8 * P * P * n + q * q * last * (8 * j + last) + (0 if corrected else 1)


def verify_thm_mf1(
    primes: tuple[int, ...] | list[int], j: int, n_max: int, corrected: bool = False
) -> VerificationReport:
    """Check OPT_3 at the eigenform-derived indices is 0 mod 8 for 0 <= n <= n_max.

    With ``corrected=False`` the index carries the "+1" of the original
    statement.  Following the derivation through A(n) = a(8n+1) gives indices
    8 P^2 n + Q^2 p (8j + p) instead, which is the ``corrected=True`` form.
    """
    primes = tuple(primes)
    if not primes:
        raise HypothesisError("need at least one prime")
    for p in primes:
        if p < 3 or not is_prime(p):
            raise HypothesisError(f"{p} is not an odd prime")
        if p % 8 == 1:
            raise HypothesisError(f"{p} = 1 mod 8 is excluded")
    if j % primes[-1] == 0:
        raise HypothesisError(f"j={j} is divisible by the last prime {primes[-1]}")
    first = thm_mf1_index(primes, j, 0, corrected)
    if first < 0:
        raise HypothesisError(f"j={j} gives negative indices")
    step = thm_mf1_index(primes, j, 1, corrected) - first
    label = "corrected" if corrected else "stated"
    cid = f"opt3-mod8-eigenform[primes={'x'.join(map(str, primes))},j={j},{label}]"
    start = time.perf_counter()
    s = opt_series(3, first + step * n_max + 1, 8)
    rep = verify_ap_congruence(_offset_view(s, first), step, 0, 8, n_max, cid)
    return VerificationReport(cid, n_max, rep.status, rep.counterexample, time.perf_counter() - start)


def _offset_view(s: TruncatedSeries, offset: int) -> TruncatedSeries:
    return TruncatedSeries(s.coeffs[offset:], s.modulus)
