"""Command-line interface: ``xdescent {count,table,verify,series,random,certify}``.

Exit codes: 0 success, 2 parse error, 3 method not applicable, 4 size or work
limit, 5 verification discrepancy.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import relation as rel
from .errors import BudgetExceeded, NotApplicable, ParseError, SizeLimit
from .hampath import classify_tournament_relation
from .methods import CONCRETE, Method, compute, verify
from .periodic import ResidueDigraph, empty_table, transfer_series

EXIT_PARSE = 2
EXIT_NOT_APPLICABLE = 3
EXIT_SIZE = 4
EXIT_DISCREPANCY = 5


def parse_positions(text: str, n: int) -> frozenset[int]:
    """``"2,5"`` or ``"empty"``; positions are 1-based and must lie in [n-1]."""
    text = text.strip()
    if text.lower() in ("", "empty", "none", "{}", "-"):
        return frozenset()
    try:
        values = [int(tok) for tok in text.replace(" ", "").strip("{}").split(",") if tok]
    except ValueError:
        raise ParseError(f"bad position list {text!r}") from None
    try:
        return rel.check_positions(values, n)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def fmt_set(I) -> str:
    return "{" + ",".join(map(str, sorted(I))) + "}" if I else "empty"


def _plain(obj):
    """Certificate witnesses as JSON-friendly nested lists."""
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    if isinstance(obj, (tuple, list)):
        return [_plain(x) for x in obj]
    return obj


def _emit(args, payload, lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_count(args) -> int:
    spec = rel.load(args.relation)
    I = parse_positions(args.I, args.n)
    value, used = compute(spec, args.n, I, Method(args.method))
    payload = {"n": args.n, "I": sorted(I), "count": str(value), "method": used.value}
    _emit(args, payload, [str(value), f"method={used.value}"])
    return 0


def cmd_table(args) -> int:
    spec = rel.load(args.relation)
    per = rel.as_periodic(spec)
    if args.empty_only and per is not None and args.method in ("auto", "periodic"):
        rows = empty_table(per, args.n_max)
        payload = [
            {"n": r.n, "content": list(r.content.counts), "A_H": str(r.words), "count": str(r.count)}
            for r in rows
        ]
        lines = ["n content A_H d"] + [f"{r.n} {r.content} {r.words} {r.count}" for r in rows]
        _emit(args, payload, lines)
        return 0
    payload, lines = [], ["n d method" if args.empty_only else "n I d method"]
    for n in range(1, args.n_max + 1):
        sets = [frozenset()] if args.empty_only else rel.all_position_sets(n)
        for I in sets:
            value, used = compute(spec, n, I, Method(args.method))
            payload.append({"n": n, "I": sorted(I), "count": str(value), "method": used.value})
            label = "" if args.empty_only else f" {fmt_set(I)}"
            lines.append(f"{n}{label} {value} {used.value}")
    _emit(args, payload, lines)
    return 0


def cmd_verify(args) -> int:
    spec = rel.load(args.relation)
    methods = CONCRETE if not args.methods else [Method(m) for m in args.methods.split(",")]
    report = verify(spec, args.n_max, methods)
    used = [m for m in CONCRETE if any(m in r.results for r in report.rows)]
    lines = ["n I " + " ".join(m.value for m in used)]
    for row in report.rows:
        cells = [str(row.results[m]) if m in row.results else "-" for m in used]
        mark = "" if row.agrees else "  MISMATCH"
        lines.append(f"{row.n} {fmt_set(row.I)} " + " ".join(cells) + mark)
    for method, reason in report.skipped.items():
        if method not in used:
            lines.append(f"skipped {method.value}: {reason}")
    lines.extend(f"error {e}" for e in report.errors)
    bad = report.first_discrepancy
    if bad is not None:
        detail = ", ".join(f"{m.value}={v}" for m, v in bad.results.items())
        lines.append(f"first discrepancy: n={bad.n} I={fmt_set(bad.I)}: {detail}")
    lines.append(f"agreement={'true' if report.agreement else 'false'}")
    payload = {
        "n_max": report.n_max,
        "agreement": report.agreement,
        "rows": [
            {"n": r.n, "I": sorted(r.I), "results": {m.value: str(v) for m, v in r.results.items()}}
            for r in report.rows
        ],
        "skipped": {m.value: why for m, why in report.skipped.items()},
        "errors": report.errors,
    }
    _emit(args, payload, lines)
    return 0 if report.agreement else EXIT_DISCREPANCY


def cmd_series(args) -> int:
    spec = rel.load(args.relation)
    per = rel.as_periodic(spec)
    if per is None:
        raise NotApplicable("series: relation is not residue-periodic")
    series = transfer_series(ResidueDigraph.from_matrix(per.f), args.max_degree)
    terms = series.terms()
    payload = [{"n": n, "content": list(l.counts), "coefficient": str(c)} for n, l, c in terms]
    _emit(args, payload, [f"{n} {l} {c}" for n, l, c in terms])
    return 0


def cmd_random(args) -> int:
    from .randmodel import ExperimentConfig, run_experiment, second_moment_check

    try:
        cfg = ExperimentConfig(args.n, args.p, args.trials, args.seed)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    report = run_experiment(cfg, workers=args.workers)
    check = second_moment_check(cfg, report)
    if args.emit_csv:
        report.write_csv(args.emit_csv)
    summary = report.summary()
    summary["second_moment_within_bound"] = check.passed
    summary["ratio_standard_error"] = check.standard_error
    lines = [f"{k} {v}" for k, v in summary.items()]
    _emit(args, summary, lines)
    return 0


def cmd_certify(args) -> int:
    spec = rel.load(args.relation)
    wanted = ["standardization", "tournament", "periodic"] if args.property == "all" else [args.property]
    payload, lines = {}, []
    for prop in wanted:
        if prop == "standardization":
            cert = rel.certify_standardization_invariance(spec, args.n_max)
        elif prop == "tournament":
            cert = rel.certify_tournament(spec, args.n_max)
        else:
            per = rel.as_periodic(spec)
            m = args.modulus or (per.m if per is not None else None)
            if m is None:
                payload[prop] = {"holds": False, "reason": "no modulus given or inferable"}
                lines.append(f"{prop} holds=false (no modulus given or inferable)")
                continue
            cert = rel.certify_periodic(spec, m, args.n_max)
        witness = _plain(cert.witness)
        payload[prop] = {"holds": cert.holds, "verified_up_to": cert.verified_up_to, "witness": witness}
        tail = f" witness={witness}" if witness is not None else ""
        lines.append(f"{prop} holds={'true' if cert.holds else 'false'} up_to={cert.verified_up_to}{tail}")
    if "tournament" in wanted:
        cls = classify_tournament_relation(spec, args.n_max)
        payload["tournament_class"] = cls.value
        lines.append(f"tournament_class={cls.value}")
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xdescent",
        description="Count permutations of [n] whose X-descent set is exactly I.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    methods = [m.value for m in Method]

    def common(p, relation=True):
        if relation:
            p.add_argument("--relation", required=True, help="relation spec JSON file")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("count", help="count d_X(I;n)")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--I", default="empty", help='descent positions, e.g. "2,5" or "empty"')
    p.add_argument("--method", choices=methods, default="auto")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="tabulate d_X(I;n) for n = 1..n_max")
    common(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--empty-only", action="store_true", help="only I = empty")
    p.add_argument("--method", choices=methods, default="auto")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="cross-check every applicable method against the oracle")
    common(p)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--methods", default="", help="comma separated subset of methods")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("series", help="coefficients of the residue-word generating function")
    common(p)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("random", help="Monte Carlo over random relations")
    common(p, relation=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--emit-csv", metavar="PATH")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("certify", help="bounded certification of structural properties")
    common(p)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument(
        "--property", choices=("all", "standardization", "tournament", "periodic"), default="all"
    )
    p.add_argument("--modulus", type=int, help="modulus for the periodic check")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotApplicable as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except (SizeLimit, BudgetExceeded) as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
