"""Command-line front end.

Subcommands::

    catalog          construct explicit lines (fermat, or a custom lines file)
    profile          emit an incidence profile
    analyze          full exact report for a configuration
    verify           combinatorial identity / valency / on-surface checks
    bound            Miyaoka inequality and the H_L lower bound (degree >= 4)
    sweep            one report row per parameter in a range
    search-bauer     quadruple-point subconfiguration search
    search-extremal  enumerate Miyaoka-compatible abstract profiles

Output formats are an aligned text table (default), CSV with a mandatory
header row, or JSON carrying exact rationals as strings alongside their
decimal rendering.  Identical invocations produce byte-identical output.

Exit codes: 0 success, 1 usage error, 2 domain or inapplicability error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from . import __version__
from .catalog import (
    Arrangement,
    IncidenceProfile,
    cubic_profile,
    fermat_lines,
    fermat_profile,
    max_lines_bound,
    on_surface,
    rams_profile,
    schur_profile,
)
from .harbourne import (
    HarbourneReport,
    UndefinedConstant,
    analyze_profile,
    bauer_search,
    extremal_profile_search,
    harbourne_linear,
    harbourne_lower_bound,
    miyaoka_check,
    strict_transform_sq_lower,
)
from .incidence import (
    incidence_count,
    profile_from_arrangement,
    scan_arrangement,
    valency_consistent,
    verify_identities,
)
from .serialize import (
    arrangement_json,
    decimal_str,
    exact_cell,
    load_custom_lines,
    load_custom_profile,
    profile_json,
    rational_str,
    report_json,
    scan_json,
    t_vector_str,
)

EXTREMAL_NOTE = (
    "abstract profiles passing Miyaoka's inequality need not be realizable "
    "by actual line configurations"
)


class UsageError(Exception):
    """Bad flag combination detected after parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we use 1
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("table", "csv", "json"),
        default="table",
        help="output format (default: table)",
    )
    parser.add_argument(
        "--places",
        type=int,
        default=3,
        metavar="N",
        help="decimal places for rounded renderings (default: 3)",
    )
    parser.add_argument(
        "--output",
        metavar="PATH",
        help="write the report to PATH instead of stdout",
    )
    parser.add_argument(
        "--threads",
        type=int,
        metavar="N",
        help="parallelize the pair scan over N threads (same output)",
    )


def _surface_options(parser: argparse.ArgumentParser, surfaces) -> None:
    parser.add_argument("--surface", choices=surfaces, required=True)
    parser.add_argument("--degree", type=int, metavar="N", help="surface degree n")
    parser.add_argument(
        "--eckardt",
        type=int,
        metavar="T",
        help="number of triple points for --surface cubic (0..18)",
    )
    parser.add_argument(
        "--profile", metavar="PATH", help="custom profile JSON {n, d, t}"
    )
    parser.add_argument(
        "--lines", metavar="PATH", help="custom lines JSON {n, lines: [[pt, pt], ...]}"
    )
    parser.add_argument(
        "--from-lines",
        action="store_true",
        help="derive the profile by scanning explicit lines instead of closed formulas",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="linesurf", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"linesurf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="construct explicit lines")
    _surface_options(p, ("fermat", "custom"))
    p.add_argument(
        "--singular",
        action="store_true",
        help="emit the singular points of the arrangement instead of its lines",
    )
    _common_options(p)

    p = sub.add_parser("profile", help="emit an incidence profile")
    _surface_options(p, ("fermat", "rams", "schur", "cubic", "custom"))
    _common_options(p)

    p = sub.add_parser("analyze", help="full exact report")
    _surface_options(p, ("fermat", "rams", "schur", "cubic", "custom"))
    _common_options(p)

    p = sub.add_parser("verify", help="identity / valency / on-surface checks")
    _surface_options(p, ("fermat", "rams", "schur", "cubic", "custom"))
    p.add_argument(
        "--valency",
        type=int,
        metavar="V",
        help="check that every line meets exactly V others",
    )
    _common_options(p)

    p = sub.add_parser("bound", help="Miyaoka inequality and H_L lower bound")
    _surface_options(p, ("fermat", "rams", "schur", "cubic", "custom"))
    _common_options(p)

    p = sub.add_parser("sweep", help="one row per parameter in a range")
    p.add_argument("--surface", choices=("fermat", "rams", "cubic"), required=True)
    p.add_argument(
        "--degrees", metavar="A:B", help="inclusive degree range for fermat/rams"
    )
    p.add_argument(
        "--eckardt-range",
        metavar="A:B",
        help="inclusive triple-point range for cubic",
    )
    _common_options(p)

    p = sub.add_parser("search-bauer", help="quadruple-point subconfiguration search")
    _surface_options(p, ("fermat", "custom"))
    p.add_argument("--size", type=int, required=True, metavar="S", help="lines per subconfiguration")
    p.add_argument(
        "--max-solutions",
        type=int,
        default=1,
        metavar="K",
        help="stop after K solutions; 0 means all (default: 1)",
    )
    _common_options(p)

    p = sub.add_parser("search-extremal", help="enumerate Miyaoka-compatible profiles")
    p.add_argument("--degree", type=int, required=True, metavar="N")
    p.add_argument("--num-lines", type=int, required=True, metavar="D")
    p.add_argument("--k-max", type=int, required=True, metavar="K")
    p.add_argument("--limit", type=int, metavar="L", help="report only the L most negative")
    _common_options(p)

    return parser


# ---------------------------------------------------------------------------
# Selector resolution.


def _need_degree(args, minimum: int) -> int:
    if args.degree is None:
        raise UsageError(f"--surface {args.surface} requires --degree")
    if args.degree < minimum:
        raise ValueError(
            f"--surface {args.surface} requires degree n >= {minimum}"
        )
    return args.degree


def resolve_arrangement(args) -> Arrangement:
    if args.surface == "fermat":
        return fermat_lines(_need_degree(args, 3))
    if args.surface == "custom":
        if not args.lines:
            raise UsageError("--surface custom needs --lines PATH for this command")
        return load_custom_lines(args.lines)
    raise UsageError(
        f"--surface {args.surface} has no explicit lines; use fermat or custom --lines"
    )


def resolve_profile(args) -> IncidenceProfile:
    surface = args.surface
    if surface == "fermat":
        n = _need_degree(args, 3)
        if args.from_lines:
            return profile_from_arrangement(fermat_lines(n), threads=args.threads)
        return fermat_profile(n)
    if surface == "rams":
        return rams_profile(_need_degree(args, 6))
    if surface == "schur":
        return schur_profile()
    if surface == "cubic":
        if args.eckardt is None:
            raise UsageError("--surface cubic requires --eckardt T")
        return cubic_profile(args.eckardt)
    if surface == "custom":
        if args.profile:
            return load_custom_profile(args.profile)
        if args.lines:
            return profile_from_arrangement(
                load_custom_lines(args.lines), threads=args.threads
            )
        raise UsageError("--surface custom needs --profile PATH or --lines PATH")
    raise UsageError(f"unknown surface {surface}")


def _parse_range(text: str, what: str) -> range:
    try:
        lo_text, hi_text = text.split(":", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise UsageError(f"{what} must look like A:B, got {text!r}") from exc
    if hi < lo:
        raise UsageError(f"{what} range is empty: {text}")
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# Rendering.

REPORT_COLUMNS = (
    "n",
    "d",
    "s",
    "t",
    "h_exact",
    "h_decimal",
    "miyaoka_lhs",
    "miyaoka_rhs",
    "h_bound",
)


def report_row(report: HarbourneReport, places: int) -> list[str]:
    return [
        str(report.n),
        str(report.d),
        str(report.s),
        t_vector_str(report.t),
        exact_cell(report.h_linear),
        "" if report.h_linear is None else decimal_str(report.h_linear, places),
        "" if report.miyaoka_lhs is None else str(report.miyaoka_lhs),
        "" if report.miyaoka_rhs is None else str(report.miyaoka_rhs),
        exact_cell(report.h_lower_bound),
    ]


def render_csv(header, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def render_table(header, rows) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Commands.


def cmd_catalog(args) -> str:
    arr = resolve_arrangement(args)
    if args.singular:
        scan = scan_arrangement(arr, threads=args.threads)
        if args.format == "json":
            return render_json(scan_json(scan))
        header = ["point", "multiplicity", "lines"]
        rows = [
            [str(sp.location), str(sp.multiplicity), ";".join(map(str, sp.lines))]
            for sp in scan.points
        ]
        if args.format == "csv":
            return render_csv(header, rows)
        return render_table(header, rows)
    if args.format == "json":
        return render_json(arrangement_json(arr))
    header = ["index", "point_1", "point_2", "plucker"]
    rows = [
        [
            str(i),
            str(line.base[0]),
            str(line.base[1]),
            "[" + ", ".join(str(c) for c in line.plucker) + "]",
        ]
        for i, line in enumerate(arr.lines)
    ]
    if args.format == "csv":
        return render_csv(header, rows)
    return render_table(header, rows)


def cmd_profile(args) -> str:
    profile = resolve_profile(args)
    if args.format == "json":
        payload = profile_json(profile)
        payload["incidences"] = incidence_count(profile)
        return render_json(payload)
    header = ["n", "d", "s", "t", "incidences"]
    row = [
        str(profile.n),
        str(profile.d),
        str(profile.s),
        t_vector_str(profile.t),
        str(incidence_count(profile)),
    ]
    if args.format == "csv":
        return render_csv(header, [row])
    return render_table(header, [row])


def cmd_analyze(args) -> str:
    profile = resolve_profile(args)
    if profile.s == 0:
        raise UndefinedConstant(
            "H_L is undefined: the configuration has no singular points (s = 0)"
        )
    report = analyze_profile(profile)
    if args.format == "json":
        return render_json(report_json(report, args.places))
    if args.format == "csv":
        return render_csv(REPORT_COLUMNS, [report_row(report, args.places)])
    h = report.h_linear
    rows = [
        ["n", str(report.n)],
        ["d", str(report.d)],
        ["s", str(report.s)],
        ["t", t_vector_str(report.t)],
        ["incidences", str(report.incidences)],
        ["strict_transform_sq", str(report.strict_transform_sq)],
        ["h_linear", f"{rational_str(h)} ({decimal_str(h, args.places)})"],
    ]
    if report.miyaoka_lhs is None:
        rows.append(["miyaoka", "inapplicable (requires degree n >= 4)"])
        rows.append(["h_lower_bound", "inapplicable (requires degree n >= 4)"])
    else:
        verdict = "holds" if report.miyaoka_holds else "VIOLATED"
        rows.append(
            ["miyaoka", f"lhs {report.miyaoka_lhs} <= rhs {report.miyaoka_rhs}: {verdict}"]
        )
        bound = report.h_lower_bound
        verdict = "satisfied" if report.h_bound_holds else "VIOLATED"
        rows.append(
            [
                "h_lower_bound",
                f"{rational_str(bound)} ({decimal_str(bound, args.places)}): {verdict}",
            ]
        )
        verdict = "satisfied" if report.strict_bound_holds else "VIOLATED"
        rows.append(
            [
                "strict_sq_lower",
                f"{report.strict_sq_lower} (strict): {verdict}",
            ]
        )
    return render_table(["quantity", "value"], rows)


def cmd_verify(args) -> str:
    checks: list[tuple[str, str, str, bool]] = []
    explicit = args.surface == "fermat" or (args.surface == "custom" and args.lines)
    if explicit:
        arr = resolve_arrangement(args)
        identity = verify_identities(arr, threads=args.threads)
        for check in identity.checks:
            checks.append((check.name, str(check.lhs), str(check.rhs), check.ok))
        if args.surface == "fermat":
            good = sum(1 for line in arr.lines if on_surface(line, arr.n))
            checks.append(("on_surface", str(good), str(arr.d), good == arr.d))
        profile = profile_from_arrangement(arr, threads=args.threads)
    else:
        profile = resolve_profile(args)
        checks.append(
            (
                "pair_count_feasible",
                str(incidence_count(profile)),
                str(profile.d * (profile.d - 1)),
                incidence_count(profile) <= profile.d * (profile.d - 1),
            )
        )
        bound = max_lines_bound(profile.n)
        checks.append(("max_lines_bound", str(profile.d), str(bound), profile.d <= bound))
    if args.valency is not None:
        checks.append(
            (
                f"valency_{args.valency}",
                str(incidence_count(profile)),
                str(profile.d * args.valency),
                valency_consistent(profile, args.valency),
            )
        )

    if args.format == "json":
        return render_json(
            {
                "checks": [
                    {"name": name, "lhs": lhs, "rhs": rhs, "ok": ok}
                    for name, lhs, rhs, ok in checks
                ],
                "ok": all(ok for *_, ok in checks),
            }
        )
    header = ["check", "lhs", "rhs", "result"]
    rows = [
        [name, lhs, rhs, "PASS" if ok else "FAIL"] for name, lhs, rhs, ok in checks
    ]
    if args.format == "csv":
        return render_csv(header, rows)
    return render_table(header, rows)


def cmd_bound(args) -> str:
    profile = resolve_profile(args)
    miy = miyaoka_check(profile)  # raises InapplicableDegree for n = 3
    strict_lower = strict_transform_sq_lower(profile.n, profile.s)
    h_bound = harbourne_lower_bound(profile) if profile.s > 0 else None
    h = harbourne_linear(profile) if profile.s > 0 else None
    payload = {
        "n": profile.n,
        "d": profile.d,
        "s": profile.s,
        "miyaoka": {"lhs": miy.lhs, "rhs": miy.rhs, "holds": miy.holds},
        "h_lower_bound": None if h_bound is None else rational_str(h_bound),
        "h_linear": None if h is None else rational_str(h),
        "strict_sq_lower": strict_lower,
    }
    if args.format == "json":
        return render_json(payload)
    rows = [
        ["n", str(profile.n)],
        ["d", str(profile.d)],
        ["s", str(profile.s)],
        ["miyaoka_lhs", str(miy.lhs)],
        ["miyaoka_rhs", str(miy.rhs)],
        ["miyaoka_holds", "yes" if miy.holds else "no"],
        ["h_lower_bound", "" if h_bound is None else f"{rational_str(h_bound)} ({decimal_str(h_bound, args.places)})"],
        ["h_linear", "" if h is None else f"{rational_str(h)} ({decimal_str(h, args.places)})"],
        ["strict_sq_lower", str(strict_lower)],
    ]
    if args.format == "csv":
        return render_csv(["quantity", "value"], rows)
    return render_table(["quantity", "value"], rows)


def cmd_sweep(args) -> str:
    if args.surface in ("fermat", "rams"):
        if not args.degrees:
            raise UsageError(f"sweep --surface {args.surface} requires --degrees A:B")
        span = _parse_range(args.degrees, "--degrees")
        if args.surface == "fermat":
            profiles = [fermat_profile(n) for n in span]
        else:
            profiles = [rams_profile(n) for n in span]
    else:
        if not args.eckardt_range:
            raise UsageError("sweep --surface cubic requires --eckardt-range A:B")
        span = _parse_range(args.eckardt_range, "--eckardt-range")
        profiles = [cubic_profile(t) for t in span]

    reports = [analyze_profile(p) for p in profiles]
    if args.format == "json":
        return render_json([report_json(r, args.places) for r in reports])
    rows = [report_row(r, args.places) for r in reports]
    if args.format == "csv":
        return render_csv(REPORT_COLUMNS, rows)
    return render_table(list(REPORT_COLUMNS), rows)


def cmd_search_bauer(args) -> str:
    arr = resolve_arrangement(args)
    cap = None if args.max_solutions == 0 else args.max_solutions
    if cap is not None and cap < 1:
        raise UsageError("--max-solutions must be 0 (all) or positive")
    solutions = bauer_search(arr, args.size, max_solutions=cap, threads=args.threads)
    entries = []
    for chosen in solutions:
        sub = arr.subset(chosen)
        profile = profile_from_arrangement(sub, threads=args.threads)
        entries.append((chosen, profile, harbourne_linear(profile)))

    if args.format == "json":
        return render_json(
            {
                "size": args.size,
                "solutions": [
                    {
                        "lines": list(chosen),
                        "profile": profile_json(profile),
                        "h_linear": rational_str(value),
                    }
                    for chosen, profile, value in entries
                ],
            }
        )
    header = ["solution", "lines", "t", "h_exact", "h_decimal"]
    rows = [
        [
            str(i),
            ";".join(str(idx) for idx in chosen),
            t_vector_str(profile.t),
            rational_str(value),
            decimal_str(value, args.places),
        ]
        for i, (chosen, profile, value) in enumerate(entries)
    ]
    if args.format == "csv":
        return render_csv(header, rows)
    return render_table(header, rows)


def cmd_search_extremal(args) -> str:
    results = extremal_profile_search(
        args.degree, args.num_lines, args.k_max, limit=args.limit
    )
    header = ["t", "s", "h_exact", "h_decimal", "miyaoka_lhs", "miyaoka_rhs"]
    rows = []
    for profile, value in results:
        miy = miyaoka_check(profile)
        rows.append(
            [
                t_vector_str(profile.t),
                str(profile.s),
                exact_cell(value),
                "" if value is None else decimal_str(value, args.places),
                str(miy.lhs),
                str(miy.rhs),
            ]
        )
    if args.format == "json":
        return render_json(
            {
                "note": EXTREMAL_NOTE,
                "profiles": [
                    {
                        "profile": profile_json(profile),
                        "h_linear": None if value is None else rational_str(value),
                    }
                    for profile, value in results
                ],
            }
        )
    if args.format == "csv":
        print(f"note: {EXTREMAL_NOTE}", file=sys.stderr)
        return render_csv(header, rows)
    return render_table(header, rows) + f"note: {EXTREMAL_NOTE}\n"


COMMANDS = {
    "catalog": cmd_catalog,
    "profile": cmd_profile,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "bound": cmd_bound,
    "sweep": cmd_sweep,
    "search-bauer": cmd_search_bauer,
    "search-extremal": cmd_search_extremal,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own message (help, usage error)
        return int(exc.code or 0)
    try:
        payload = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"linesurf {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"linesurf {args.command}: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
