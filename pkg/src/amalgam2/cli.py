"""Command-line interface.

Subcommands:
    check PATH        run condition checkers on an .amg instance file
    counterexample    build and verify a member of the co-central family
    catalog           list the built-in group constructors

Exit codes: 0 = everything checked holds, 1 = some condition fails,
2 = parse error, precondition failure, or bad invocation.

JSON output is deterministic: keys are sorted and no timing information is
included (timing appears in the text renderer only).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .amgparse import AmgParseError, parse_instance
from .conditions import (
    AmalgamInstance,
    ConditionReport,
    PreconditionError,
    check_condition1,
    check_condition2,
    check_korollar3,
    check_satz2_central,
    check_star,
    check_star_star,
    decide_embeddability,
)
from .counterexample import build_counterexample, verify_counterexample
from .pcgroup import CATALOG, GroupError

_CHECKERS = {
    "cond1": lambda inst, args: check_condition1(inst),
    "cond2": lambda inst, args: check_condition2(
        inst, method=args.method, k_max=args.kmax
    ),
    "korollar3": lambda inst, args: check_korollar3(inst),
    "star": lambda inst, args: check_star(inst),
    "star_star": lambda inst, args: check_star_star(inst),
    "satz2_central": lambda inst, args: check_satz2_central(inst),
    "decide": lambda inst, args: decide_embeddability(inst),
}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="amalgam2",
        description="decide weak-amalgam embeddability for class-2 nilpotent groups",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run condition checkers on an instance file")
    c.add_argument("path", help=".amg instance file")
    c.add_argument(
        "--condition",
        default="decide",
        choices=sorted(_CHECKERS) + ["all-applicable"],
        help="which checker to run (default: decide)",
    )
    c.add_argument("--format", default="text", choices=["text", "json"])
    c.add_argument("--method", default="closure", choices=["closure", "brute"],
                   help="cond2 strategy")
    c.add_argument("--kmax", type=int, default=3,
                   help="tuple-length bound for --method brute")

    x = sub.add_parser("counterexample",
                       help="build and verify a member of the co-central family")
    x.add_argument("--q", type=int, default=2, help="shared prime-power parameter")
    variant = x.add_mutually_exclusive_group()
    variant.add_argument("--mod", type=int, default=None,
                         help="finite variant with this exponent (q | mod, mod > q)")
    variant.add_argument("--integral", action="store_true",
                         help="use the infinite variant (default)")
    x.add_argument("--format", default="text", choices=["text", "json"])

    g = sub.add_parser("catalog", help="list the built-in group constructors")
    g.add_argument("--format", default="text", choices=["text", "json"])
    return p


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _render_report(r: ConditionReport, elapsed: float) -> str:
    lines = [f"{r.condition}: {'holds' if r.holds else 'FAILS'}"]
    if r.criterion:
        lines.append(f"  criterion: {r.criterion}")
    for n in r.notes:
        lines.append(f"  note: {n}")
    if r.witness is not None:
        lines.append(f"  witness: {json.dumps(r.witness, sort_keys=True)}")
    lines.append(f"  elapsed: {elapsed:.3f}s")
    return "\n".join(lines)


def _cmd_check(args) -> int:
    inst = parse_instance(args.path)
    if args.condition == "all-applicable":
        results, skipped = [], []
        for name in ("cond1", "cond2", "korollar3", "star", "star_star",
                     "satz2_central", "decide"):
            t0 = time.monotonic()
            try:
                results.append((_CHECKERS[name](inst, args), time.monotonic() - t0))
            except PreconditionError as exc:
                skipped.append((name, str(exc)))
        reports = [r for r, _ in results]
    else:
        t0 = time.monotonic()
        reports = [_CHECKERS[args.condition](inst, args)]
        results = [(reports[0], time.monotonic() - t0)]
        skipped = []
    if args.format == "json":
        _emit_json(
            {
                "command": "check",
                "instance": args.path,
                "results": [r.to_dict() for r in reports],
                "skipped": [{"condition": n, "reason": msg} for n, msg in skipped],
            }
        )
    else:
        for r, dt in results:
            print(_render_report(r, dt))
        for name, msg in skipped:
            print(f"{name}: skipped ({msg})")
    return 0 if all(r.holds for r in reports) else 1


def _cmd_counterexample(args) -> int:
    variant = "integral" if args.mod is None else args.mod
    bundle = build_counterexample(args.q, variant)
    t0 = time.monotonic()
    report = verify_counterexample(bundle)
    elapsed = time.monotonic() - t0
    if args.format == "json":
        _emit_json({"command": "counterexample", **report.to_dict()})
    else:
        print(f"counterexample q={report.q} variant={report.variant}: "
              f"{'verified' if report.passed else 'FAILED'}")
        for c in report.checks:
            status = "skip" if c.passed is None else ("pass" if c.passed else "FAIL")
            line = f"  [{status}] {c.name}"
            if c.detail:
                line += f" -- {c.detail}"
            print(line)
        print(f"  elapsed: {elapsed:.3f}s")
    return 0 if report.passed else 1


def _cmd_catalog(args) -> int:
    entries = [
        {"name": name, "arity": arity, "description": (fn.__doc__ or "").split("\n")[0]}
        for name, (fn, arity) in sorted(CATALOG.items())
    ]
    if args.format == "json":
        _emit_json({"command": "catalog", "groups": entries})
    else:
        for e in entries:
            print(f"{e['name']} (parameters: {e['arity']}): {e['description']}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "counterexample":
            return _cmd_counterexample(args)
        return _cmd_catalog(args)
    except (AmgParseError, PreconditionError, GroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
