"""Command-line front end: verification reports and tables.

Exit status is 0 when every report passes, 1 when a check fails and 2 on a
usage error (the violated precondition goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .classes import parse_transformation
from .coeff import Coefficient
from .errors import AdamsRRError
from .model import Space, immersion, projection
from .report import VerificationReport
from .rr import (
    associated_series,
    chi_table,
    verify_cube,
    verify_immersion_rr,
    verify_projective_rr,
    verify_unique_k_morphism,
)
from .series import BivariateSeries, builtin_series, check_group_law, group_law

# short names accepted by `series show`
SERIES_ALIASES = {"todd": "Todd", "twisted": "TwistedT"}


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    return values


def _space(text: str) -> Space:
    if text.strip() in ("pt", ""):
        return Space(())
    dims = _int_list(text)
    if any(d < 0 for d in dims):
        raise UsageError(f"dimensions must be >= 0, got {text!r}")
    return Space(dims)


def _factor_index(i: int, space: Space) -> int:
    """1-based on the command line, 0-based inside."""
    if not 1 <= i <= space.nfactors:
        raise UsageError(f"factor index {i} out of range 1..{space.nfactors} for {space}")
    return i - 1


def _load_custom_law(path: str, order: int) -> BivariateSeries:
    """JSON file ``{"terms": [{"exp": [i, j], "coeff": "a/b"}, ...]}``."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        terms = {}
        for term in data["terms"]:
            i, j = (int(x) for x in term["exp"])
            terms[(i, j)] = Coefficient.parse(str(term["coeff"]))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read custom law from {path!r}: {exc}") from None
    return BivariateSeries(order, terms)


def _emit_report(report: VerificationReport, fmt: str, out) -> int:
    if fmt == "json":
        out.write(report.to_json() + "\n")
    else:
        out.write(report.summary() + "\n")
    return 0 if report.passed else 1


def _cmd_fgl(args, out) -> int:
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    law = args.law
    if law.startswith("custom:"):
        series = _load_custom_law(law[len("custom:"):], args.order)
    elif law in ("additive", "multiplicative"):
        series = group_law(law, args.order).series
    else:
        raise UsageError(f"--law must be additive, multiplicative or custom:<file>, got {law!r}")
    return _emit_report(check_group_law(series), args.format, out)


def _cmd_series(args, out) -> int:
    name = SERIES_ALIASES.get(args.name, args.name)
    S = builtin_series(name, args.order, j=args.j, p=args.p)
    if args.format == "json":
        payload = {
            "name": name,
            "params": {"j": args.j, "p": args.p, "order": args.order},
            "series": str(S),
            "coeffs": S.to_strings(),
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"{S}\n")
    return 0


def _cmd_assoc(args, out) -> int:
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    phi = parse_transformation(args.phi)
    S = associated_series(phi, args.order)
    if args.format == "json":
        payload = {"phi": str(phi), "order": args.order, "series": str(S), "coeffs": S.to_strings()}
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"{S}\n")
    return 0


def _cmd_verify(args, out) -> int:
    space = _space(args.space)
    if args.samples is not None and args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.what == "immersion":
        phi = parse_transformation(args.phi)
        m = immersion(space, _factor_index(args.factor, space), args.codim)
        report = verify_immersion_rr(phi, m, limit=args.samples)
    elif args.what == "projective":
        phi = parse_transformation(args.phi)
        drop = [_factor_index(i, space) for i in _int_list(args.drop)]
        report = verify_projective_rr(phi, projection(space, drop), limit=args.samples)
    elif args.what == "cube":
        report = verify_cube(space, args.j, samples=args.samples)
    else:
        report = verify_unique_k_morphism(space)
    return _emit_report(report, args.format, out)


def _cmd_table(args, out) -> int:
    rows, report = chi_table(args.d, args.n_min, args.n_max)
    if args.format == "json":
        payload = {
            "table": [
                {"n": n, "k_pushforward": str(k), "grr": str(g), "oracle": o}
                for n, k, g, o in rows
            ],
            "report": report.to_dict(),
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"chi(P^{args.d}, O(n))\n")
        out.write("n\tK\tGRR\toracle\n")
        for n, k, g, o in rows:
            out.write(f"{n}\t{k}\t{g}\t{o}\n")
        out.write(report.summary() + "\n")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--samples", type=int, default=None,
                        help="cap on basis elements per case list (default: full basis)")

    parser = argparse.ArgumentParser(
        prog="adamsrr",
        description="Exact Riemann-Roch checks on products of projective spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fgl = sub.add_parser("fgl", help="formal group laws")
    fgl_sub = fgl.add_subparsers(dest="action", required=True)
    check = fgl_sub.add_parser("check", parents=[common], help="check the group-law axioms")
    check.add_argument("--law", required=True, help="additive, multiplicative or custom:<file>")
    check.add_argument("--order", type=int, required=True)
    check.set_defaults(handler=_cmd_fgl)

    series = sub.add_parser("series", help="named power series")
    series_sub = series.add_subparsers(dest="action", required=True)
    show = series_sub.add_parser("show", parents=[common], help="print a truncated series")
    show.add_argument("--name", required=True, help="Bj, T, Sj, todd, twisted or another builtin")
    show.add_argument("--j", type=int, default=None)
    show.add_argument("--p", type=int, default=1)
    show.add_argument("--order", type=int, required=True)
    show.set_defaults(handler=_cmd_series)

    assoc = sub.add_parser("assoc", parents=[common], help="associated series of a transformation")
    assoc.add_argument("--phi", required=True, help="psi:J, ch, ch-eps:P, id, add-ext:..., mult-ext:...")
    assoc.add_argument("--order", type=int, required=True, help="dimension of the probe P^D")
    assoc.set_defaults(handler=_cmd_assoc)

    verify = sub.add_parser("verify", help="Riemann-Roch squares")
    verify_sub = verify.add_subparsers(dest="what", required=True)
    imm = verify_sub.add_parser("immersion", parents=[common])
    imm.add_argument("--phi", required=True)
    imm.add_argument("--space", required=True, help="target dimensions, e.g. 3 or 2,1")
    imm.add_argument("--factor", type=int, default=1, help="1-based factor index")
    imm.add_argument("--codim", type=int, required=True)
    proj = verify_sub.add_parser("projective", parents=[common])
    proj.add_argument("--phi", required=True)
    proj.add_argument("--space", required=True)
    proj.add_argument("--drop", required=True, help="1-based factor indices to forget")
    cube = verify_sub.add_parser("cube", parents=[common])
    cube.add_argument("--space", required=True)
    cube.add_argument("--j", type=int, required=True)
    uniq = verify_sub.add_parser("unique-k", parents=[common])
    uniq.add_argument("--space", required=True)
    for p in (imm, proj, cube, uniq):
        p.set_defaults(handler=_cmd_verify)

    table = sub.add_parser("table", help="tables of numbers")
    table_sub = table.add_subparsers(dest="action", required=True)
    chi = table_sub.add_parser("chi", parents=[common], help="Euler characteristics of O(n) on P^d")
    chi.add_argument("--d", type=int, required=True)
    chi.add_argument("--n-min", type=int, required=True)
    chi.add_argument("--n-max", type=int, required=True)
    chi.set_defaults(handler=_cmd_table)
    return parser


def run_cli(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args, out)
    except (UsageError, AdamsRRError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
