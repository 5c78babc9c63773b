"""Command-line entry point: ``fusionscan <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .enumerate import count_signatures, enumerate_signatures
from .filters import DEFAULT_RULE_IDS, RuleScopeError, rule_catalog_json, run_filters
from .pipeline import ClassificationReport, ClassifyConfig, classify, diff_reference, render
from .reference import CatalogMissing
from .signature import SignatureError, parse_signature, render_signature
from .solver import SolverConfig, Status, solve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIFF = 2
EXIT_UNKNOWN = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which is taken
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fusionscan", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="list candidate types of global dimension N")
    e.add_argument("--fpdim", type=_positive, required=True)
    e.add_argument("--count-only", action="store_true")

    f = sub.add_parser("filter", help="apply the exclusion rules to every candidate")
    f.add_argument("--fpdim", type=_positive, required=True)
    f.add_argument("--rules", help="comma-separated rule ids (default R1-R13)")
    f.add_argument("--enable-cor90-6", action="store_true", help="add R14 (N=90 only)")
    f.add_argument("--all", action="store_true", help="also print excluded candidates")
    f.add_argument("--catalog", action="store_true", help="print the rule catalog as JSON and exit")

    s = sub.add_parser("solve", help="decide ring-level realizability of one type")
    s.add_argument("--type", dest="sig", required=True, metavar="SIG")
    s.add_argument("--budget", type=_positive, default=SolverConfig.node_budget)
    s.add_argument("--trace", type=Path, metavar="PATH")
    s.add_argument("--no-symmetry-breaking", action="store_true")
    s.add_argument("--model", action="store_true", help="print the fusion table when one is found")

    c = sub.add_parser("classify", help="full pipeline with reference comparison")
    c.add_argument("--fpdim", type=_positive, required=True)
    c.add_argument("--enable-cor90-6", action="store_true")
    c.add_argument("--solve-all", action="store_true")
    c.add_argument("--budget", type=_positive, default=SolverConfig.node_budget)
    c.add_argument("--output", choices=("json", "text"), default="text")
    c.add_argument("--out", type=Path, metavar="PATH", help="write the JSON report here as well")
    c.add_argument("--cache", metavar="DIR", help="cache directory (default $FUSIONSCAN_CACHE)")
    c.add_argument("--no-cache", action="store_true")
    c.add_argument("--workers", type=_positive, default=1)
    c.add_argument("--check", action="store_true", help="exit 2 if survivors differ from the reference")
    c.add_argument("--strict", action="store_true", help="exit 3 if any solver outcome is Unknown")

    d = sub.add_parser("diff", help="compare a saved report with the reference lists")
    d.add_argument("--fpdim", type=_positive, required=True)
    d.add_argument("--report", type=Path, required=True)
    return p


def _cmd_enumerate(args, out) -> int:
    if args.count_only:
        print(count_signatures(args.fpdim), file=out)
        return EXIT_OK
    for sig in enumerate_signatures(args.fpdim):
        print(render_signature(sig), file=out)
    return EXIT_OK


def _rules_for(args) -> tuple[str, ...]:
    rules = tuple(r.strip() for r in args.rules.split(",") if r.strip()) if args.rules else DEFAULT_RULE_IDS
    if args.enable_cor90_6 and "R14" not in rules:
        rules += ("R14",)
    return rules


def _cmd_filter(args, out) -> int:
    if args.catalog:
        print(rule_catalog_json(), file=out)
        return EXIT_OK
    try:
        report = run_filters(enumerate_signatures(args.fpdim), _rules_for(args), args.fpdim)
    except (KeyError, RuleScopeError) as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from None
    for rec in report.records:
        if rec.survivor:
            mark = "" if rec.frobenius else "  requires-exclusion"
            print(f"{render_signature(rec.signature)}{mark}", file=out)
        elif args.all:
            detail = "; ".join(f"{v.rule_id}: {v.detail}" for v in rec.verdicts if v.fired)
            print(f"- {render_signature(rec.signature)}  {detail}", file=out)
    print(f"# {len(report.survivors)} of {len(report.records)} candidates survive {','.join(report.rule_ids)}",
          file=out)
    return EXIT_OK


def _cmd_solve(args, out) -> int:
    try:
        sig = parse_signature(args.sig)
    except SignatureError as exc:
        raise UsageError(str(exc)) from None
    cfg = SolverConfig(
        node_budget=args.budget,
        symmetry_breaking=not args.no_symmetry_breaking,
        record_trace=args.trace is not None,
    )
    outcome = solve(sig, cfg)
    if args.trace is not None:
        args.trace.write_text("\n".join(outcome.trace or []) + "\n", encoding="utf-8")
    data = outcome.to_json(include_model=args.model)
    data["signature"] = render_signature(sig)
    print(json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False), file=out)
    return EXIT_UNKNOWN if outcome.status is Status.UNKNOWN else EXIT_OK


def _cmd_classify(args, out) -> int:
    if args.enable_cor90_6 and args.fpdim != 90:
        raise UsageError("--enable-cor90-6 only applies to --fpdim 90")
    config = ClassifyConfig(
        enable_r14=args.enable_cor90_6,
        solve_all=args.solve_all,
        solver=SolverConfig(node_budget=args.budget),
        workers=args.workers,
    )
    cache = None if args.no_cache else (args.cache if args.cache else True)
    report = classify(args.fpdim, config, cache=cache)
    if args.out is not None:
        args.out.write_text(report.dumps(), encoding="utf-8")
    out.write(render(report, args.output))
    if args.output == "text":
        for d in report.discrepancies:
            tag = "" if d["binding"] else " (informational)"
            print(f"# diff {d['kind']}{tag}: {d['signature']}", file=out)
    if args.check and any(d["binding"] for d in report.discrepancies):
        return EXIT_DIFF
    if args.strict and report.unknown:
        return EXIT_UNKNOWN
    return EXIT_OK


def _cmd_diff(args, out) -> int:
    try:
        report = ClassificationReport.loads(args.report.read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read report {args.report}: {exc}") from None
    if report.N != args.fpdim:
        raise UsageError(f"report is for N={report.N}, not {args.fpdim}")
    try:
        diff = diff_reference(report)
    except CatalogMissing as exc:
        raise UsageError(exc.args[0]) from None
    for entry in diff.entries:
        print(str(entry), file=out)
    print(f"# {len(diff.binding)} binding, {len(diff.informational)} informational", file=out)
    return EXIT_OK if diff.empty else EXIT_DIFF


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "filter": _cmd_filter,
    "solve": _cmd_solve,
    "classify": _cmd_classify,
    "diff": _cmd_diff,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.cmd](args, out)
    except UsageError as exc:
        print(f"fusionscan {args.cmd}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
