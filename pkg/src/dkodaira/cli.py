"""Command-line front end producing reproducible JSON and CSV artifacts.

Every subcommand writes a deterministic artifact (sorted JSON keys, fixed
CSV column order, decimal integers, rationals as "u/v" strings), so repeated
invocations are byte-identical.  Exit status: 0 on success, 1 when a
structure fails verification, 2 on invalid input.  Input errors carry one of
the diagnostic codes `malformed-json`, `schema-violation`, or
`invalid-parameter`.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .kodaira_structures import (
    construct_nonstrong,
    construct_strong,
    enumerate_lambda_mu,
    report_to_json_dict,
    select_lambda_mu,
    structure_from_json_dict,
    structure_to_json_dict,
    verify_class2,
    verify_full,
)
from .surface_geometry import (
    feasibility_check,
    feasibility_scan,
    invariants_for,
    kappa_lower_bound_table,
    slope_table,
)
from .zpfield import is_prime
from .kodaira_structures import build_omega

__all__ = ["main", "entrypoint"]

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID_INPUT = 2


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError("invalid-parameter", f"cannot parse rational {text!r}: {exc}")


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _text_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip()]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _render_table(args, payload: dict, header: list[str], rows: list[list[str]]) -> str:
    if args.format == "csv":
        return _csv_text(header, rows)
    if args.format == "text":
        return _text_table(header, rows)
    return _json_text(payload)


def _render_object(args, payload: dict) -> str:
    if args.format == "csv":
        raise CliError("invalid-parameter", "this subcommand has no CSV form")
    return _json_text(payload)


def _cmd_construct_strong(args) -> tuple[str, int]:
    try:
        structure = construct_strong(args.b, args.p, args.variant)
    except ValueError as exc:
        raise CliError("invalid-parameter", str(exc))
    return _render_object(args, structure_to_json_dict(structure)), EXIT_OK


def _cmd_construct_nonstrong(args) -> tuple[str, int]:
    try:
        structure = construct_nonstrong(args.b, args.p, args.variant)
    except ValueError as exc:
        raise CliError("invalid-parameter", str(exc))
    return _render_object(args, structure_to_json_dict(structure)), EXIT_OK


def _cmd_verify(args) -> tuple[str, int]:
    try:
        with open(args.path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError("invalid-parameter", f"cannot read {args.path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError("malformed-json", str(exc))
    try:
        structure = structure_from_json_dict(data)
    except ValueError as exc:
        raise CliError("schema-violation", str(exc))
    verifier = verify_full if args.mode == "full" else verify_class2
    report = verifier(structure)
    text = _render_object(args, report_to_json_dict(report))
    return text, EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def _cmd_invariants(args) -> tuple[str, int]:
    try:
        inv = invariants_for(args.group_order, args.b, args.n, args.m1, args.m2)
    except ValueError as exc:
        raise CliError("invalid-parameter", str(exc))
    payload = inv.to_json_dict()
    payload["data"] = {
        "group_order": args.group_order,
        "b": args.b,
        "n": args.n,
        "m1": args.m1,
        "m2": args.m2,
    }
    return _render_object(args, payload), EXIT_OK


def _cmd_slope_table(args) -> tuple[str, int]:
    if args.p_max < 5:
        raise CliError("invalid-parameter", "p_max must be at least 5")
    primes = [p for p in range(5, args.p_max + 1) if is_prime(p)]
    try:
        table = slope_table(args.b, primes)
    except ValueError as exc:
        raise CliError("invalid-parameter", str(exc))
    header = ["p", "slope", "sigma"]
    rows = [[str(r.p), str(r.slope), str(r.sigma)] for r in table.rows]
    return _render_table(args, table.to_json_dict(), header, rows), EXIT_OK


def _cmd_feasibility(args) -> tuple[str, int]:
    s = _parse_fraction(args.s)
    try:
        verdict = feasibility_check(args.b, s)
    except ValueError as exc:
        raise CliError("invalid-parameter", str(exc))
    return _render_object(args, verdict.to_json_dict()), EXIT_OK


def _cmd_feasibility_scan(args) -> tuple[str, int]:
    try:
        rows = feasibility_scan(args.b_max, args.denominator_max)
    except ValueError as exc:
        raise CliError("invalid-parameter", str(exc))
    payload = {
        "b_max": args.b_max,
        "denominator_max": args.denominator_max,
        "rows": [{"b": r.b, "s": str(r.s), "n": r.n} for r in rows],
    }
    header = ["b", "s", "n"]
    text_rows = [[str(r.b), str(r.s), str(r.n)] for r in rows]
    return _render_table(args, payload, header, text_rows), EXIT_OK


def _cmd_lambda_mu(args) -> tuple[str, int]:
    try:
        if args.all:
            choices = enumerate_lambda_mu(args.b, args.p)
        else:
            first = select_lambda_mu(args.b, args.p)
            choices = [first] if first is not None else []
    except ValueError as exc:
        raise CliError("invalid-parameter", str(exc))
    items = []
    for choice in choices:
        omega = build_omega(choice.lam, choice.mu)
        items.append(
            {
                "lambda": list(choice.lam.entries),
                "mu": list(choice.mu.entries),
                "omega": [list(row) for row in omega.entries],
                "det_omega": omega.determinant().value,
            }
        )
    payload = {"b": args.b, "p": args.p, "count": len(items), "choices": items}
    return _render_object(args, payload), EXIT_OK


def _cmd_kappa_table(args) -> tuple[str, int]:
    try:
        rows = kappa_lower_bound_table(args.b_min, args.b_max)
    except ValueError as exc:
        raise CliError("invalid-parameter", str(exc))
    payload = {
        "rows": [
            {
                "b": r.b,
                "omega": r.omega,
                "witnesses": [{"p": p, "sigma": sigma} for p, sigma in r.witnesses],
            }
            for r in rows
        ]
    }
    header = ["b", "omega", "primes", "sigmas"]
    text_rows = [
        [
            str(r.b),
            str(r.omega),
            " ".join(str(p) for p, _ in r.witnesses),
            " ".join(str(sigma) for _, sigma in r.witnesses),
        ]
        for r in rows
    ]
    return _render_table(args, payload, header, text_rows), EXIT_OK


def _cmd_kirby(args) -> tuple[str, int]:
    structure = construct_strong(2, 3, "H")
    report = verify_full(structure)
    inv = invariants_for(structure.descriptor.order, 2, 3, 1, 1)
    payload = {
        "structure": structure_to_json_dict(structure),
        "verification": report_to_json_dict(report),
        "invariants": inv.to_json_dict(),
    }
    code = EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED
    return _render_object(args, payload), code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dkodaira",
        description="Construct, verify, and measure diagonal double Kodaira structures.",
    )
    parser.add_argument("--output", "-o", help="write the artifact to this path instead of stdout")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed reserved for randomized checks (current subcommands are deterministic)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct-strong", help="strong structure, needs p | b+1")
    p.add_argument("b", type=int)
    p.add_argument("p", type=int)
    p.add_argument("variant", choices=("H", "G"))
    p.set_defaults(handler=_cmd_construct_strong)

    p = sub.add_parser("construct-nonstrong", help="non-strong structure, needs p >= 5")
    p.add_argument("b", type=int)
    p.add_argument("p", type=int)
    p.add_argument("variant", choices=("H", "G"))
    p.set_defaults(handler=_cmd_construct_nonstrong)

    p = sub.add_parser("verify", help="verify a structure JSON file")
    p.add_argument("path")
    p.add_argument("--mode", choices=("full", "class2"), default="full")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("invariants", help="surface invariants from |G|, b, n, m1, m2")
    p.add_argument("group_order", type=int)
    p.add_argument("b", type=int)
    p.add_argument("n", type=int)
    p.add_argument("m1", type=int)
    p.add_argument("m2", type=int)
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("slope-table", help="slope rows for primes 5..p_max")
    p.add_argument("b", type=int)
    p.add_argument("p_max", type=int)
    p.set_defaults(handler=_cmd_slope_table)

    p = sub.add_parser("feasibility", help="slope feasibility for one rational s")
    p.add_argument("b", type=int)
    p.add_argument("s", help="positive rational like 12/35")
    p.set_defaults(handler=_cmd_feasibility)

    p = sub.add_parser("feasibility-scan", help="scan rationals s = u/v for feasible slopes")
    p.add_argument("b_max", type=int)
    p.add_argument("denominator_max", type=int)
    p.set_defaults(handler=_cmd_feasibility_scan)

    p = sub.add_parser("lambda-mu", help="weight vectors for the non-strong construction")
    p.add_argument("b", type=int)
    p.add_argument("p", type=int)
    p.add_argument("--all", action="store_true", help="enumerate every valid choice")
    p.set_defaults(handler=_cmd_lambda_mu)

    p = sub.add_parser("kappa-table", help="fibration-count lower bounds over b_min..b_max")
    p.add_argument("b_min", type=int)
    p.add_argument("b_max", type=int)
    p.set_defaults(handler=_cmd_kappa_table)

    p = sub.add_parser("kirby", help="certificate for the (2, 3) strong structure")
    p.set_defaults(handler=_cmd_kirby)

    return parser


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.handler(args)
    except CliError as exc:
        _emit(args, _json_text({"error": {"code": exc.code, "message": str(exc)}}))
        return EXIT_INVALID_INPUT
    _emit(args, text)
    return code


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
