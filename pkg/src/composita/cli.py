"""Command line interface.

Four subcommands cover the library surface:

* ``expand``   - coefficients of an arbitrary expression
* ``triangle`` - the composition triangle of a zero-constant expression
* ``family``   - polynomial tables for the 16 built-in families, with
  b-file export and offline comparison
* ``verify``   - the verification report (triangle rules plus every
  family variant against its series oracle)

Exit codes: 0 success, 1 verification or comparison mismatch, 2 usage or
expression syntax errors, 3 series-domain errors.  Output is byte-for-byte
deterministic for every format; rationals always print exactly as p/q.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import families as fam
from .gfexpr import GfSyntaxError, evaluate, parse
from .ring import XPoly, rat_from_str, rat_to_str, xpoly_to_json
from .series import DomainError, Series, series_to_json
from .triangle import algebra_rule_checks, composita_from_powers

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

FORMATS = ("text", "json", "csv")

BFILE_HELP = (
    "B-file export/compare reads the polynomial table as a coefficient "
    "triangle: row n lists the coefficients of x^0..x^n for P_n (so each "
    "row has n+1 values, zero-padded above the true degree), rows are "
    "concatenated in order of n, and lines are written as 'index value' "
    "starting from --bfile-start."
)


class UsageError(Exception):
    """Bad command arguments (unknown family, malformed --param, ...)."""


def _dump_json(payload) -> str:
    return json.dumps(payload, separators=(", ", ": "))


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# expand


def _series_text(series: Series) -> str:
    return "[" + ", ".join(str(c) for c in series.coeffs) + "]"


def cmd_expand(args) -> int:
    series = evaluate(parse(args.expr), args.order)
    if args.format == "text":
        _emit(_series_text(series))
    elif args.format == "json":
        _emit(_dump_json(series_to_json(series)))
    else:
        rows = [[n] + xpoly_to_json(series[n]) for n in range(series.order + 1)]
        _emit(_csv_text(rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# triangle


def cmd_triangle(args) -> int:
    if args.rows < 1:
        raise UsageError("--rows must be >= 1")
    series = evaluate(parse(args.expr), args.rows)
    tri = composita_from_powers(series, args.rows)
    if args.format == "text":
        _emit(tri.text())
    elif args.format == "json":
        _emit(_dump_json(tri.to_json()))
    else:
        rows = [[n] + [str(e) for e in tri.rows[n - 1]] for n in range(1, tri.order + 1)]
        _emit(_csv_text(rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# family


def _parse_params(pairs) -> dict:
    params = {}
    for item in pairs or ():
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        name, _, value = item.partition("=")
        name = name.strip()
        try:
            params[name] = rat_from_str(value)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--param {name}: {value!r} is not a rational p/q")
    return params


def _family_spec(args) -> fam.FamilySpec:
    try:
        return fam.FamilySpec(args.name, _parse_params(args.param))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


MODES = ("closed1", "closed2", "oracle", "reference", "all")


def _mode_values(spec: fam.FamilySpec, mode: str, max_n: int) -> list[XPoly]:
    if mode == "closed1":
        return [fam.family_closed(spec, 1, n) for n in range(max_n + 1)]
    if mode == "closed2":
        if 2 not in fam.VARIANTS[spec.family]:
            raise UsageError(f"{spec.family} has no second closed form")
        return [fam.family_closed(spec, 2, n) for n in range(max_n + 1)]
    if mode == "oracle":
        return [fam.family_oracle(spec, n) for n in range(max_n + 1)]
    if mode == "reference":
        values = [fam.family_reference(spec, n) for n in range(max_n + 1)]
        if values and values[0] is None:
            raise UsageError(f"{spec.family} has no classical reference")
        return values
    raise UsageError(f"unknown mode {mode!r}")


def _triangle_rows(values) -> list[list[str]]:
    rows = []
    for n, poly in enumerate(values):
        rows.append([rat_to_str(poly.coeff(k)) for k in range(n + 1)])
    return rows


def cmd_family(args) -> int:
    if args.maxN < 0:
        raise UsageError("--maxN must be >= 0")
    spec = _family_spec(args)
    mode = args.mode
    if mode == "all":
        if args.bfile or args.compare:
            raise UsageError("--bfile/--compare need a single mode, not 'all'")
        return _family_all(args, spec)
    values = _mode_values(spec, mode, args.maxN)
    if args.format == "text":
        lines = [f"P_{n} = {poly}" for n, poly in enumerate(values)]
        _emit("\n".join(lines))
    elif args.format == "json":
        payload = {
            "family": spec.label(),
            "mode": mode,
            "max_n": args.maxN,
            "polys": [xpoly_to_json(p) for p in values],
        }
        _emit(_dump_json(payload))
    else:
        rows = [[n] + row for n, row in enumerate(_triangle_rows(values))]
        _emit(_csv_text(rows))
    code = EXIT_OK
    flat = [v for row in _triangle_rows(values) for v in row]
    if args.bfile:
        lines = [f"{args.bfile_start + i} {v}" for i, v in enumerate(flat)]
        with open(args.bfile, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    if args.compare:
        code = _compare_bfile(args.compare, flat)
    return code


def _compare_bfile(path: str, ours: list[str]) -> int:
    theirs = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise UsageError(f"b-file line not 'index value': {line!r}")
            theirs.append(parts[1])
    count = min(len(ours), len(theirs))
    if count == 0:
        raise UsageError("b-file comparison found no overlapping values")
    for i in range(count):
        if ours[i] != theirs[i]:
            _emit(
                f"b-file mismatch at position {i}: computed {ours[i]}, file has {theirs[i]}"
            )
            return EXIT_MISMATCH
    _emit(f"b-file comparison: {count} values match")
    return EXIT_OK


def _family_all(args, spec: fam.FamilySpec) -> int:
    max_n = args.maxN
    columns = [("closed1", _mode_values(spec, "closed1", max_n))]
    if 2 in fam.VARIANTS[spec.family]:
        columns.append(("closed2", _mode_values(spec, "closed2", max_n)))
    columns.append(("oracle", [fam.family_oracle(spec, n) for n in range(max_n + 1)]))
    if fam.family_reference(spec, 0) is not None:
        columns.append(("reference", [fam.family_reference(spec, n) for n in range(max_n + 1)]))
    agree = [
        all(vals[n] == columns[0][1][n] for _, vals in columns)
        for n in range(max_n + 1)
    ]
    if args.format == "json":
        payload = {
            "family": spec.label(),
            "max_n": max_n,
            "columns": {name: [xpoly_to_json(p) for p in vals] for name, vals in columns},
            "agree": agree,
        }
        _emit(_dump_json(payload))
    elif args.format == "csv":
        header = ["n"] + [name for name, _ in columns] + ["agree"]
        rows = [header]
        for n in range(max_n + 1):
            rows.append(
                [n] + [str(vals[n]) for _, vals in columns] + ["ok" if agree[n] else "MISMATCH"]
            )
        _emit(_csv_text(rows))
    else:
        lines = []
        for n in range(max_n + 1):
            marker = "ok" if agree[n] else "MISMATCH"
            cells = "  |  ".join(f"{name}: {vals[n]}" for name, vals in columns)
            lines.append(f"n={n} [{marker}]  {cells}")
        _emit("\n".join(lines))
    return EXIT_OK if all(agree) else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    if args.maxN < 1:
        raise UsageError("--maxN must be >= 1")
    selected = fam.default_specs()
    if args.families:
        wanted = [name.strip() for name in args.families.split(",") if name.strip()]
        unknown = [w for w in wanted if w not in fam.FAMILY_NAMES]
        if unknown:
            raise UsageError(f"unknown families: {', '.join(unknown)}")
        selected = [s for s in selected if s.family in wanted]
        rules = []
    else:
        rules = algebra_rule_checks(min(8, max(args.maxN, 2)))
    verdicts = []
    for spec in selected:
        verdicts.extend(fam.verify_family(spec, args.maxN))
    records = [
        {
            "kind": "rule",
            "name": r["rule"],
            "variant": None,
            "max_n": r["max_n"],
            "status": r["status"],
            "first_mismatch": None,
            "note": r["note"],
        }
        for r in rules
    ] + [
        {
            "kind": "family",
            "name": v.family,
            "variant": v.variant,
            "max_n": v.max_n,
            "status": v.status,
            "first_mismatch": v.first_mismatch,
            "note": v.note,
        }
        for v in verdicts
    ]
    ok = all(r["status"] in ("match", "corrected-match") for r in records)
    if args.format == "json":
        _emit(_dump_json(records))
    elif args.format == "csv":
        rows = [["kind", "name", "variant", "max_n", "status", "first_mismatch", "note"]]
        for r in records:
            rows.append(
                [
                    r["kind"],
                    r["name"],
                    "" if r["variant"] is None else r["variant"],
                    r["max_n"],
                    r["status"],
                    "" if r["first_mismatch"] is None else r["first_mismatch"],
                    r["note"],
                ]
            )
        _emit(_csv_text(rows))
    else:
        name_w = max(len(str(r["name"])) + 3 for r in records)
        lines = []
        for r in records:
            tag = str(r["name"]) + (f" v{r['variant']}" if r["variant"] else "")
            status = r["status"]
            if r["first_mismatch"] is not None and status == "corrected-match":
                status += f" (raw diverges at n={r['first_mismatch']})"
            elif r["first_mismatch"] is not None:
                status += f" (first mismatch n={r['first_mismatch']})"
            lines.append(f"{tag.ljust(name_w)} {status}")
            if r["note"]:
                lines.append(f"{''.ljust(name_w)}   note: {r['note']}")
        summary = "all checks passed" if ok else "MISMATCHES FOUND"
        lines.append(f"verified up to n = {args.maxN}: {summary}")
        _emit("\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# argument parsing


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # keep exit code 2 but avoid argparse SystemExit noise
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="composita",
        description=(
            "Exact calculus of composition triangles for ordinary generating "
            "functions, with a verified catalog of 16 classical polynomial "
            "families."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="expand an expression into series coefficients")
    p_expand.add_argument("expr", help="expression over t and x, e.g. '1/(1 - 2*x*t + t^2)'")
    p_expand.add_argument("--order", type=int, required=True, help="highest power of t")
    p_expand.add_argument("--format", choices=FORMATS, default="text")
    p_expand.set_defaults(func=cmd_expand)

    p_tri = sub.add_parser("triangle", help="print the composition triangle of an expression")
    p_tri.add_argument("expr", help="expression with zero constant term, e.g. '2*x*t - t^2'")
    p_tri.add_argument("--rows", type=int, required=True, help="number of triangle rows")
    p_tri.add_argument("--format", choices=FORMATS, default="text")
    p_tri.set_defaults(func=cmd_triangle)

    p_fam = sub.add_parser(
        "family",
        help="tabulate a polynomial family",
        epilog=BFILE_HELP,
    )
    p_fam.add_argument("name", help="family name, e.g. chebyshev_t, abel, peters")
    p_fam.add_argument(
        "--param",
        action="append",
        metavar="NAME=P/Q",
        help="bind a rational parameter (repeatable), e.g. --param lambda=2",
    )
    p_fam.add_argument("--maxN", type=int, required=True, help="tabulate P_0..P_maxN")
    p_fam.add_argument("--mode", choices=MODES, default="closed1")
    p_fam.add_argument("--format", choices=FORMATS, default="text")
    p_fam.add_argument("--bfile", metavar="PATH", help="write the coefficient triangle as a b-file")
    p_fam.add_argument("--bfile-start", type=int, default=0, help="first b-file index (default 0)")
    p_fam.add_argument("--compare", metavar="PATH", help="compare against a downloaded b-file")
    p_fam.set_defaults(func=cmd_family)

    p_ver = sub.add_parser("verify", help="run the verification suite and report verdicts")
    p_ver.add_argument("--maxN", type=int, required=True, help="check every n up to this bound")
    p_ver.add_argument("--families", help="comma-separated family subset (default: all)")
    p_ver.add_argument("--format", choices=FORMATS, default="text")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except GfSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
