"""Command-line interface: construction, verification and report emission.

Subcommands
-----------
field-table    print the frozen modulus table (audit aid)
distribution   weight distribution of one code, by any of the three routes
verify         run every applicable check for one m; nonzero exit on failure
griesmer       distance-optimality report
dual           dual-distance report with certificate
minimal        minimality condition, plus the brute-force census for m <= 2
sss demo       deal a secret, recover it through a coalition, classify

Every JSON document embeds a ``meta`` block (schema version, library
version, modulus-table digest, coordinate-order identifier) so that saved
reports are self-describing, and is serialized with sorted keys so that
identical invocations are byte-identical regardless of ``--jobs``.
Timings go to stderr, never into the JSON.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, analysis, sss, trace_codes, verify
from .gf2m import IRREDUCIBLE_POLY, field_context, modulus_table_sha256, poly_str
from .quintic_ring import UNIT_ORDER_VERSION
from .trace_codes import EnumerationBudgetError

SCHEMA_VERSION = 1


def report_meta() -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "library": f"quintic-codes {__version__}",
        "modulusTableSha256": modulus_table_sha256(),
        "unitOrder": UNIT_ORDER_VERSION,
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, out: str | None) -> None:
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def _add_common(parser: argparse.ArgumentParser, *, m: bool = True) -> None:
    if m:
        parser.add_argument("--m", type=int, required=True, help="extension degree (1..12)")
    parser.add_argument("--format", choices=("json", "csv", "table"), default="json")
    parser.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quintic-codes",
        description="Trace codes over GF(2^m)[v]/(v^5-1): construction and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-table", help="print the frozen modulus table")
    _add_common(p, m=False)

    p = sub.add_parser("distribution", help="weight distribution of one code")
    _add_common(p)
    p.add_argument(
        "--mode",
        choices=("enumerated", "theoretical", "classified"),
        default="theoretical",
    )
    p.add_argument("--jobs", type=int, default=None, help="worker threads (result-invariant)")
    p.add_argument("--budget", type=int, default=None, metavar="OPS",
                   help="enumeration budget in message-unit pairs")
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("verify", help="run all applicable checks for one m")
    _add_common(p)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("griesmer", help="distance-optimality report")
    _add_common(p)

    p = sub.add_parser("dual", help="dual-distance report with certificate")
    _add_common(p)
    p.add_argument("--cap", type=int, default=analysis.DUAL_SEARCH_CAP)

    p = sub.add_parser("minimal", help="minimal-codeword analysis")
    _add_common(p)
    p.add_argument("--ab-only", action="store_true",
                   help="skip the brute-force census even when feasible")

    p = sub.add_parser("sss", help="secret sharing over the Gray image")
    sss_sub = p.add_subparsers(dest="sss_command", required=True)
    d = sss_sub.add_parser("demo", help="deal, recover and classify")
    _add_common(d)
    d.add_argument("--secret", type=int, choices=(0, 1), required=True)
    d.add_argument("--seed", type=int, default=42)

    return parser


def _cmd_field_table(args) -> int:
    rows = []
    for m in sorted(IRREDUCIBLE_POLY):
        ctx = field_context(m)
        rows.append(
            {
                "m": m,
                "modulusBits": format(ctx.modulus, "b"),
                "modulusHex": format(ctx.modulus, "x"),
                "polynomial": poly_str(ctx.modulus),
                "generator": ctx.generator,
            }
        )
    if args.format == "json":
        _emit_json({"meta": report_meta(), "fields": rows}, args.out)
    else:
        lines = [f"{'m':>2}  {'modulus':<22} {'bits':<15} generator"]
        for r in rows:
            lines.append(
                f"{r['m']:>2}  {r['polynomial']:<22} {r['modulusBits']:<15} {r['generator']}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_distribution(args) -> int:
    try:
        dist = trace_codes.distribution(
            args.m, args.mode, jobs=args.jobs, budget=args.budget, seed=args.seed
        )
    except (EnumerationBudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        _emit_json({"meta": report_meta(), **dist.to_json_dict()}, args.out)
    elif args.format == "csv":
        _emit(dist.to_csv(), args.out)
    else:
        spec = dist.spec
        lines = [
            f"m={spec.m} ({spec.parity_class.value})  L={spec.L}  s={spec.s}  "
            f"dim={spec.dimension}  [{dist.provenance}]",
            f"{'weight':>14}  frequency",
        ]
        for w in sorted(dist.entries):
            lines.append(f"{w:>14}  {dist.entries[w]}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    try:
        report = verify.run_verification(args.m, jobs=args.jobs, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render_table(), file=sys.stderr)
    if args.format == "json":
        _emit_json({"meta": report_meta(), **report.to_json_dict()}, args.out)
    else:
        _emit(report.render_table(with_timings=False) + "\n", args.out)
    return 0 if report.all_passed else 1


def _cmd_griesmer(args) -> int:
    report = analysis.distance_optimality(args.m)
    if args.format == "json":
        _emit_json({"meta": report_meta(), "m": args.m, **report.to_json_dict()}, args.out)
    else:
        _emit(
            f"m={args.m}: [n={report.n}, k={report.k}, d={report.d}]  "
            f"sum(d+1)={report.sum_at_d_plus_1}  slack={report.slack}  "
            f"optimal={report.optimal}\n",
            args.out,
        )
    return 0


def _cmd_dual(args) -> int:
    try:
        report = analysis.dual_distance_for(args.m, cap=args.cap)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        _emit_json({"meta": report_meta(), "m": args.m, **report.to_json_dict()}, args.out)
    else:
        shown = report.distance if report.distance is not None else f"> {report.cap}"
        _emit(
            f"m={args.m}: dual distance {shown}; witness columns {list(report.witness)}; "
            f"{report.zero_columns} zero columns among {report.columns}\n",
            args.out,
        )
    return 0


def _cmd_minimal(args) -> int:
    if args.ab_only or args.m > 2:
        report = analysis.ab_condition(trace_codes.theoretical_distribution(args.m))
    else:
        report = analysis.minimal_codewords(args.m, max_witnesses=128)
    if args.format == "json":
        _emit_json({"meta": report_meta(), "m": args.m, **report.to_json_dict()}, args.out)
    else:
        lines = [
            f"m={args.m}: w_min={report.w_min} w_max={report.w_max} "
            f"ratio condition holds: {report.ratio_condition_holds}"
        ]
        if report.brute_force:
            bf = report.brute_force
            lines.append(
                f"brute force: {bf['minimal_count']} of {bf['nonzero_codewords']} "
                f"nonzero codewords minimal; witnesses {bf['witnesses']}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_sss_demo(args) -> int:
    try:
        deal = sss.deal(args.m, args.secret, seed=args.seed)
        dup = sss.duplicate_of_first_column(args.m)
        relation = sss.find_recovery(args.m, {dup})
        if relation is None:
            raise RuntimeError("duplicate column did not yield a recovery relation")
        recovered = sss.reconstruct(deal, relation)
        label = sss.classify_scheme(args.m)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {
        "meta": report_meta(),
        "deal": deal.to_json_dict(),
        "recovery": {
            "coalition": relation.to_json_dict(),
            "recovered": recovered,
            "matchesSecret": recovered == deal.secret,
        },
        "classification": label,
    }
    if args.format == "json":
        _emit_json(payload, args.out)
    else:
        _emit(
            f"m={args.m}: dealt secret {deal.secret} into {len(deal.shares)} shares; "
            f"coalition {{{dup}}} recovers {recovered} via a duplicate column; "
            f"scheme is {label}\n",
            args.out,
        )
    return 0 if recovered == deal.secret else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "field-table":
        return _cmd_field_table(args)
    if args.command == "distribution":
        return _cmd_distribution(args)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "griesmer":
        return _cmd_griesmer(args)
    if args.command == "dual":
        return _cmd_dual(args)
    if args.command == "minimal":
        return _cmd_minimal(args)
    if args.command == "sss":
        return _cmd_sss_demo(args)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
