"""Command-line front end: ``qclab <command> ...``.

Exit codes: 0 when every asserted check passes, 1 on a counterexample,
2 on usage errors, violated hypotheses or insufficient truncation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .arith import HypothesisError, TruncationError
from .congruence import TSV_HEADER, RegistryGrid, find_claim, run_claims, theorem_registry
from .modforms import (
    EtaQuotientForm,
    character,
    character_discriminant,
    density_scan,
    hecke_tp,
    is_holomorphic,
    weight_and_conditions,
)
from .optk import opt_series, overpartition_series
from .radu import RaduTuple, radu_verify
from .series import EtaExponentMap, eta_quotient_series, set_max_trunc, shift
from .special import borwein_a, f_neg

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FAMILIES = ("optk", "overpartition", "eta-quotient", "borwein-a", "f-neg")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    trunc_max: int | None = None
    grid: RegistryGrid = field(default_factory=RegistryGrid)
    fmt: str | None = None
    jobs: int = 1
    output: str | None = None

    def __post_init__(self) -> None:
        if self.trunc_max is not None and self.trunc_max < 8:
            raise UsageError("--trunc-max must be at least 8")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    return tuple(int(x) for x in text.split(",")) if text else ()


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _series_text(series, fmt: str | None) -> str:
    return series.to_json() if fmt == "json" else series.to_text()


def _build_grid(args) -> RegistryGrid:
    g = RegistryGrid()
    over = {}
    for name in ("i_max", "j_max"):
        val = getattr(args, name, None)
        if val is not None:
            over["conj_" + name] = val
    for name, key in (("k_values", "conj_k_values"), ("r_values", "conj_r_values"),
                      ("multipliers", "conj_multipliers")):
        val = getattr(args, name, None)
        if val is not None:
            over[key] = _int_list(val)
    return RegistryGrid(**{**g.__dict__, **over})


def _reports_out(reports, fmt: str | None) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2)
    return "\n".join([TSV_HEADER] + [r.tsv_row() for r in reports])


# -- commands ------------------------------------------------------------------


def cmd_expand(args, cfg: RunConfig) -> int:
    T = args.trunc
    fam = args.family
    if fam == "optk":
        if args.k is None or args.k < 1:
            raise UsageError("optk needs --k >= 1")
        s = opt_series(args.k, T, args.modulus)
    elif fam == "overpartition":
        s = overpartition_series(T, args.modulus)
    elif fam == "eta-quotient":
        if not args.exponents:
            raise UsageError("eta-quotient needs --exponents")
        s = eta_quotient_series(EtaExponentMap.parse(args.exponents), T, args.modulus)
    elif fam == "borwein-a":
        s = borwein_a(args.scale, T)
    else:
        if args.k is None:
            raise UsageError("f-neg needs --k (odd)")
        s = f_neg(args.k, T, args.modulus)
    _emit(_series_text(s, cfg.fmt), cfg.output)
    return EXIT_PASS


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.all_theorems:
        claims = [c for c in theorem_registry(cfg.grid) if c.kind == "theorem"]
    elif args.claim:
        try:
            claims = [find_claim(cid, cfg.grid) for cid in args.claim]
        except KeyError as exc:
            raise UsageError(f"unknown claim id {exc.args[0]!r} (see `qclab verify --list`)") from None
    elif args.list:
        _emit("\n".join(c.id for c in theorem_registry(cfg.grid)), cfg.output)
        return EXIT_PASS
    else:
        raise UsageError("give --claim, --all-theorems or --list")
    reports = run_claims(claims, args.nmax, cfg.jobs)
    _emit(_reports_out(reports, cfg.fmt), cfg.output)
    failed = any(not r.passed and r.kind == "theorem" for r in reports)
    return EXIT_FAIL if failed else EXIT_PASS


def cmd_scan(args, cfg: RunConfig) -> int:
    if not args.conjectures:
        raise UsageError("scan currently supports --conjectures only")
    claims = [c for c in theorem_registry(cfg.grid) if c.kind == "conjecture"]
    reports = run_claims(claims, args.nmax, cfg.jobs) if claims else []
    _emit(_reports_out(reports, cfg.fmt), cfg.output)
    return EXIT_PASS


def cmd_radu(args, cfg: RunConfig) -> int:
    try:
        r = EtaExponentMap.parse(args.r)
        rprime = dict(EtaExponentMap.parse(args.rprime)) if args.rprime.strip() else {}
        tup = RaduTuple(args.m, args.M, args.N, args.t, r)
    except ValueError as exc:
        print(json.dumps({"status": "inapplicable", "failing_condition": f"malformed input: {exc}"}))
        return EXIT_USAGE
    cert = radu_verify(tup, rprime, args.u)
    _emit(cert.to_json(canonical=args.canonical), cfg.output)
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(cert.status, EXIT_USAGE)


def _form(args) -> EtaQuotientForm:
    return EtaQuotientForm(args.level, EtaExponentMap.parse(args.exponents))


def cmd_eta_analyze(args, cfg: RunConfig) -> int:
    form = _form(args)
    w, a, b = weight_and_conditions(form)
    ok, table = is_holomorphic(form)
    out = {
        **form.to_dict(),
        "weight": str(w),
        "sum_delta_r_div_24": a,
        "sum_N_over_delta_r_div_24": b,
        "character_discriminant": character_discriminant(form) if w.denominator == 1 else None,
        "leading_exponent": str(form.leading_exponent),
        "cusp_orders": {str(d): str(v) for d, v in table.items()},
        "holomorphic": ok,
    }
    _emit(json.dumps(out, indent=2), cfg.output)
    return EXIT_PASS


def cmd_eta_hecke(args, cfg: RunConfig) -> int:
    form = _form(args)
    lead = form.leading_exponent
    if lead.denominator != 1:
        raise HypothesisError(f"leading exponent {lead} is not an integer; no integral q-expansion")
    if form.weight.denominator != 1:
        raise HypothesisError(f"weight {form.weight} is not an integer")
    need = args.p * (args.trunc - 1) + 1
    s = shift(form.series(need), int(lead))
    chi = character(form, args.p)
    img = hecke_tp(s, args.p, int(form.weight), chi, out_trunc=args.trunc)
    _emit(_series_text(img, cfg.fmt), cfg.output)
    return EXIT_PASS


def cmd_density(args, cfg: RunConfig) -> int:
    rep = density_scan(opt_series(args.k, args.X + 1, args.modulus), args.modulus, args.X)
    if cfg.fmt == "json":
        text = json.dumps({"k": args.k, **rep.to_dict()}, indent=2)
    else:
        text = "k\tmodulus\tX\tdivisible\tnon_divisible\tproportion\n" + (
            f"{args.k}\t{rep.modulus}\t{rep.X}\t{rep.divisible}\t{rep.non_divisible}\t{rep.proportion:.6f}"
        )
    _emit(text, cfg.output)
    return EXIT_PASS


# -- parser --------------------------------------------------------------------


def _add_grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--i-max", type=int, dest="i_max", help="conjecture grid: largest i")
    p.add_argument("--j-max", type=int, dest="j_max", help="conjecture grid: largest j")
    p.add_argument("--k-values", dest="k_values", help="conjecture grid: comma list of k")
    p.add_argument("--r-values", dest="r_values", help="conjecture grid: comma list of odd r")
    p.add_argument("--multipliers", help="conjecture grid: comma list of odd multipliers")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("tsv", "json", "text"),
                        help="output format (tsv/text for humans, json for machines)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--trunc-max", type=int, dest="trunc_max", help="truncation cap (default QC_TRUNC_MAX)")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="qclab", description="q-series congruence laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="expand a series family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--k", type=int)
    p.add_argument("--scale", type=int, default=1)
    p.add_argument("--exponents")
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("--modulus", type=int)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="verify registered congruences")
    p.add_argument("--claim", action="append", help="claim id (repeatable)")
    p.add_argument("--all-theorems", action="store_true")
    p.add_argument("--list", action="store_true", help="list claim ids")
    p.add_argument("--nmax", type=int, default=500)
    _add_grid_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="scan conjectures over a grid")
    p.add_argument("--conjectures", action="store_true")
    p.add_argument("--nmax", type=int, default=500)
    _add_grid_args(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("radu", parents=[common], help="run Radu's finite criterion")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", required=True, help='exponents, e.g. "1:-4,2:6,4:-2"')
    p.add_argument("--rprime", default="", help='auxiliary exponents, e.g. "1:12"')
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--canonical", action="store_true", help="omit the timestamp")
    p.set_defaults(func=cmd_radu)

    p = sub.add_parser("eta", help="eta-quotient analysis")
    esub = p.add_subparsers(dest="eta_command", required=True)
    for name, func, hlp in (("analyze", cmd_eta_analyze, "weight, character and cusp orders"),
                            ("hecke", cmd_eta_hecke, "apply T_p to the q-expansion")):
        e = esub.add_parser(name, parents=[common], help=hlp)
        e.add_argument("--level", type=int, required=True)
        e.add_argument("--exponents", required=True)
        if name == "hecke":
            e.add_argument("--p", type=int, required=True)
            e.add_argument("--trunc", type=int, default=100, help="number of output coefficients")
        e.set_defaults(func=func)

    p = sub.add_parser("density", parents=[common], help="count OPT_k(n) divisible by a modulus")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--X", type=int, required=True)
    p.set_defaults(func=cmd_density)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.trunc_max, _build_grid(args), args.fmt, args.jobs, args.output)
        if cfg.trunc_max is not None:
            set_max_trunc(cfg.trunc_max)
        return args.func(args, cfg)
    except (UsageError, HypothesisError, TruncationError, ValueError) as exc:
        print(f"qclab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
