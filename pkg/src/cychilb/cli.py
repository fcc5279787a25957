"""Command-line frontend.

Subcommands: report, verify, sweep, fixed-points, fan, mckay-table, fm,
quiver. JSON output is canonical and byte-deterministic; md and csv are
human-oriented views of the same data. Exit codes: 0 all-pass, 1
verification failure, 2 usage error, 3 partial/resource failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor

from . import toric
from .context import TripleContext
from .errors import ParameterError
from .group import validate
from .report import (
    build_report,
    fan_section,
    fm_section,
    hilb_section,
    mckay_section,
    quiver_section,
    render,
    render_json,
    render_markdown,
)
from .verify import run_verify


def _add_triple_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s", type=int, required=True, help="first block size")
    parser.add_argument("--n", type=int, required=True, help="ambient dimension")
    parser.add_argument("--r", type=int, required=True, help="group order")


def _add_io_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("json", "md", "csv"), default="json",
        help="output format (default json)",
    )
    parser.add_argument(
        "--out", default=None, help="write output to this path instead of stdout"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cychilb",
        description=(
            "Exact invariants of cyclic quotient singularities with two "
            "weight blocks and their Hilbert-scheme resolutions."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("report", "full report across all modules"),
        ("fixed-points", "torus-fixed ideals with tangent dimensions"),
        ("fan", "resolution fan with ray data"),
        ("mckay-table", "M divisor coefficient table"),
        ("fm", "image complexes with vanishing divisors"),
        ("quiver", "McKay quiver, charts, and witness"),
        ("verify", "run every invariant and emit a certificate"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_triple_args(p)
        _add_io_args(p)

    p = sub.add_parser("sweep", help="verify a whole parameter range")
    p.add_argument("--max-n", type=int, default=6, help="largest n (default 6)")
    p.add_argument("--max-r", type=int, default=8, help="largest r (default 8)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    _add_io_args(p)
    return parser


# ---------------------------------------------------------------------------
# verify / sweep rendering

def render_certificate_markdown(cert: dict) -> str:
    inp = cert["input"]
    lines = [
        f"# Verification certificate for s={inp['s']}, n={inp['n']}, r={inp['r']}",
        "",
        f"Overall status: {cert['status']}",
        "",
        "| check | status | details |",
        "| --- | --- | --- |",
    ]
    for check in cert["checks"]:
        lines.append(
            f"| {check['name']} | {check['status']} | {check['details']} |"
        )
    lines.append("")
    lines.append("## Errata")
    lines.append("")
    for e in cert["errata"]:
        applies = "applies" if e["applies_to_triple"] else "does not apply"
        lines.append(f"- {e['id']} ({applies} here): {e['description']}")
    lines.append("")
    return "\n".join(lines)


def render_certificate_csv(cert: dict) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["check", "status", "details"])
    for check in cert["checks"]:
        writer.writerow([check["name"], check["status"], check["details"]])
    for e in cert["errata"]:
        writer.writerow(
            [f"erratum:{e['id']}", str(e["applies_to_triple"]).lower(), e["description"]]
        )
    return buffer.getvalue()


def render_certificate(cert: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(cert)
    if fmt == "md":
        return render_certificate_markdown(cert)
    return render_certificate_csv(cert)


def sweep_row(triple: tuple) -> dict:
    s, n, r = triple
    cert = run_verify(s, n, r)
    g = validate(s, n, r)
    failed = [c["name"] for c in cert["checks"] if c["status"] == "fail"]
    return {
        "r": r,
        "n": n,
        "s": s,
        "status": cert["status"],
        "fixed_points": s * (n - s) * (r - 2) + n,
        "crepant": toric.crepant(g),
        "failed_checks": failed,
    }


def render_sweep_markdown(summary: dict) -> str:
    lines = [
        f"# Sweep over 2 <= r <= {summary['max_r']}, 2 <= n <= {summary['max_n']}",
        "",
        f"Overall status: {summary['status']}"
        f" ({len(summary['rows'])} triples)",
        "",
        "| r | n | s | status | fixed points | crepant |",
        "| --- | --- | --- | --- | --- | --- |",
    ]
    for row in summary["rows"]:
        lines.append(
            f"| {row['r']} | {row['n']} | {row['s']} | {row['status']}"
            f" | {row['fixed_points']} | {str(row['crepant']).lower()} |"
        )
    lines.append("")
    return "\n".join(lines)


def render_sweep_csv(summary: dict) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["r", "n", "s", "status", "fixed_points", "crepant"])
    for row in summary["rows"]:
        writer.writerow(
            [
                row["r"],
                row["n"],
                row["s"],
                row["status"],
                row["fixed_points"],
                str(row["crepant"]).lower(),
            ]
        )
    return buffer.getvalue()


def render_sweep(summary: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(summary)
    if fmt == "md":
        return render_sweep_markdown(summary)
    return render_sweep_csv(summary)


# ---------------------------------------------------------------------------
# command handlers

def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _section_command(args: argparse.Namespace) -> int:
    ctx = TripleContext(args.s, args.n, args.r)
    g = ctx.g
    base = {"input": {"s": g.s, "n": g.n, "r": g.r}}
    if args.command == "report":
        payload = build_report(ctx)
    elif args.command == "fixed-points":
        payload = {**base, "hilb": hilb_section(ctx)}
    elif args.command == "fan":
        payload = {**base, "fan": fan_section(ctx, include_cones=True)}
    elif args.command == "mckay-table":
        payload = {**base, "mckay": mckay_section(ctx)}
    elif args.command == "fm":
        payload = {**base, "fm": fm_section(ctx, include_divisors=True)}
    elif args.command == "quiver":
        payload = {**base, "quiver": quiver_section(ctx, include_charts=True)}
    else:
        raise ValueError(f"unhandled command {args.command!r}")
    if args.format == "json":
        _emit(render_json(payload), args.out)
    elif args.format == "md":
        _emit(render_markdown(payload), args.out)
    else:
        _emit(render(payload, "csv"), args.out)
    return 0


def _verify_command(args: argparse.Namespace) -> int:
    cert = run_verify(args.s, args.n, args.r)
    _emit(render_certificate(cert, args.format), args.out)
    return 0 if cert["status"] == "pass" else 1


def _sweep_command(args: argparse.Namespace) -> int:
    if args.max_n < 2 or args.max_r < 2 or args.jobs < 1:
        raise ParameterError("sweep bounds must be at least 2 and jobs at least 1")
    triples = [
        (s, n, r)
        for r in range(2, args.max_r + 1)
        for n in range(2, args.max_n + 1)
        for s in range(1, n)
    ]
    rows = []
    partial = False
    if args.jobs > 1:
        try:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(sweep_row, triples))
        except Exception as exc:
            sys.stderr.write(f"parallel sweep failed, retrying serially: {exc}\n")
            rows = []
    if not rows:
        for triple in triples:
            try:
                rows.append(sweep_row(triple))
            except MemoryError:
                partial = True
                break
    rows.sort(key=lambda row: (row["r"], row["n"], row["s"]))
    status = "pass" if all(row["status"] == "pass" for row in rows) else "fail"
    if partial:
        status = "partial"
    summary = {
        "max_n": args.max_n,
        "max_r": args.max_r,
        "rows": rows,
        "status": status,
    }
    _emit(render_sweep(summary, args.format), args.out)
    if partial:
        return 3
    return 0 if status == "pass" else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _verify_command(args)
        if args.command == "sweep":
            return _sweep_command(args)
        return _section_command(args)
    except ParameterError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
