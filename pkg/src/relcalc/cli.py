"""``relcalc`` command line.

Exit codes: 0 ok, 1 usage or parse error, 2 precondition failure, 3 bound violation.
"""

from __future__ import annotations

import argparse
import sys

from .chains import PreconditionError, has_singular_chain
from .fieldkit import DimensionMismatch, FieldMismatch
from .harness import CampaignConfig, ConfigError, run_campaign
from .io import (
    FormatError,
    dump_field,
    dump_vector,
    dumps,
    load_json,
    parse_field,
    parse_pencil,
    parse_rank_one,
    parse_relation,
)
from .pencil import candidate_lambdas, jordan_dims_at, lambda_label, pencil_bound_report, poly_format, profile, wong
from .perturb import OracleInfeasible, check_bounds
from .relation import INFINITY, is_infinity, jordan_degrees, parts

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _subspace_json(s) -> dict:
    return {"dim": s.dim, "basis": [dump_vector(s.field, v) for v in s.basis]}


def _lambdas(field, values, pencils):
    if not values:
        return candidate_lambdas(*pencils)
    out = []
    for v in values:
        if is_infinity(v):
            out.append(INFINITY)
        else:
            try:
                out.append(field.parse(v))
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"bad --lambda {v!r}: {exc}") from exc
    return out


def cmd_analyze(args) -> tuple[dict, int]:
    a = parse_relation(load_json(args.relation))
    nmax = 2 * a.d if args.nmax is None else args.nmax
    pa = parts(a)
    return {
        "field": dump_field(a.field),
        "d": a.d,
        "dim": a.dim,
        "parts": {k: _subspace_json(getattr(pa, k)) for k in ("dom", "ran", "ker", "mul")},
        "jordan_degrees": jordan_degrees(a, nmax),
        "singular_chain": has_singular_chain(a),
    }, EXIT_OK


def cmd_pencil(args) -> tuple[dict, int]:
    p = parse_pencil(load_json(args.file))
    f = p.field
    nmax = 2 * p.d if args.nmax is None else args.nmax
    prof = profile(p)
    lams = _lambdas(f, args.lam, [p])
    return {
        "field": dump_field(f),
        "d": p.d,
        "profile": {
            "det_poly": poly_format(f, prof.det_poly),
            "regular": prof.regular,
            "pencil_rank": prof.pencil_rank,
        },
        "jordan_dims": {lambda_label(f, lam): jordan_dims_at(p, lam, nmax) for lam in lams},
        "wong": [_subspace_json(w) for w in wong(p, nmax)],
    }, EXIT_OK


def cmd_sn(args) -> tuple[dict, int]:
    a = parse_relation(load_json(args.a))
    b = parse_relation(load_json(args.b), a.field)
    rep = check_bounds(a, b, args.nmax)
    return rep.to_json(), EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_perturb(args) -> tuple[dict, int]:
    p = parse_pencil(load_json(args.pencil))
    q = parse_rank_one(load_json(args.rank1), p.field)
    lams = None
    if args.lam:
        lams = _lambdas(p.field, args.lam, [p])
    rep = pencil_bound_report(p, q, lams, args.nmax)
    return rep.to_json(), EXIT_OK if rep.ok else EXIT_VIOLATION


def _dim_range(text: str) -> tuple[int, int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError as exc:
        raise UsageError(f"bad --dim {text!r}; use D or DMIN:DMAX") from exc


def cmd_verify(args) -> tuple[dict, int]:
    lo, hi = _dim_range(args.dim)
    field = args.field
    if field not in ("Q", "Qi"):
        f = parse_field(field if not field.isdigit() else {"GF": int(field)})
        field = f"GF{f.p}"
    cfg = CampaignConfig(args.scenario, field, lo, hi, args.trials, args.seed, args.nmax, args.p)
    rep = run_campaign(cfg)
    return rep.to_json(wall_time=not args.no_wall_time), EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_fixtures(args) -> tuple[dict, int]:
    rep = run_campaign(CampaignConfig("fixtures", trials=1))
    return rep.to_json(wall_time=not args.no_wall_time), EXIT_OK if rep.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="relcalc", description="Exact linear relations, matrix pencils and perturbation bounds.")
    ap.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("analyze", help="parts, Jordan degrees and singular chains of a relation")
    s.add_argument("--relation", required=True)
    s.add_argument("--nmax", type=int)
    s.set_defaults(run=cmd_analyze)

    s = sub.add_parser("pencil", help="profile, Jordan dimensions and Wong sequence of a pencil")
    s.add_argument("--file", required=True)
    s.add_argument("--lambda", dest="lam", action="append", help="field element or 'inf' (repeatable)")
    s.add_argument("--nmax", type=int)
    s.set_defaults(run=cmd_pencil)

    s = sub.add_parser("sn", help="s_n values and perturbation bounds for a pair of relations")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--nmax", type=int)
    s.set_defaults(run=cmd_sn)

    s = sub.add_parser("perturb", help="bound report for a rank-one pencil perturbation")
    s.add_argument("--pencil", required=True)
    s.add_argument("--rank1", required=True)
    s.add_argument("--lambda", dest="lam", action="append")
    s.add_argument("--nmax", type=int)
    s.set_defaults(run=cmd_perturb)

    s = sub.add_parser("verify", help="run a randomized verification campaign")
    s.add_argument("--scenario", required=True, choices=["relation-1dim", "relation-pdim", "pencil-rankone", "s_n-oracle", "fixtures"])
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--field", default="Q", help="Q, Qi or GFp (e.g. GF3)")
    s.add_argument("--dim", default="4", help="D or DMIN:DMAX")
    s.add_argument("--p", type=int, default=1)
    s.add_argument("--nmax", type=int)
    s.add_argument("--no-wall-time", action="store_true", help="omit the wall_time field")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("fixtures", help="replay the pinned regression fixtures")
    s.add_argument("--no-wall-time", action="store_true")
    s.set_defaults(run=cmd_fixtures)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        report, code = args.run(args)
    except (UsageError, FormatError, OSError) as exc:
        print(f"relcalc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, DimensionMismatch, FieldMismatch, PreconditionError, OracleInfeasible, ValueError) as exc:
        # remaining ValueErrors come from type invariants, e.g. a zero w in a rank-one pencil
        print(f"relcalc: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    text = dumps(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
