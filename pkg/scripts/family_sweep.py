#!/usr/bin/env python3
"""Sweep the co-central counterexample family over (q, m) parameter pairs.

For each pair the script builds the finite family member, runs the full
verification battery, and prints one row per member.  The integral variant is
verified once at the end (its finite-only sweeps are skipped by design).
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from amalgam2 import build_counterexample, verify_counterexample


@dataclass
class SweepConfig:
    qs: list[int] = field(default_factory=lambda: [2, 3])
    multipliers: list[int] = field(default_factory=lambda: [2, 3])
    include_integral: bool = True
    time_limit: float = 300.0  # per member, seconds; overruns are reported


def run(config: SweepConfig) -> bool:
    ok = True
    print(f"{'q':>3} {'m':>4} {'|D|':>6} {'verdict':>8} {'time':>8}")
    for q in config.qs:
        for mult in config.multipliers:
            m = q * mult
            t0 = time.monotonic()
            report = verify_counterexample(build_counterexample(q, m))
            dt = time.monotonic() - t0
            verdict = "pass" if report.passed else "FAIL"
            if not report.passed or dt > config.time_limit:
                ok = False
            print(f"{q:>3} {m:>4} {m ** 3:>6} {verdict:>8} {dt:>7.2f}s")
    if config.include_integral:
        for q in config.qs:
            t0 = time.monotonic()
            report = verify_counterexample(build_counterexample(q, "integral"))
            dt = time.monotonic() - t0
            verdict = "pass" if report.passed else "FAIL"
            ok = ok and report.passed
            print(f"{q:>3} {'inf':>4} {'inf':>6} {verdict:>8} {dt:>7.2f}s")
    return ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--q", type=int, nargs="+", default=None, help="values of q")
    p.add_argument("--mult", type=int, nargs="+", default=None,
                   help="multipliers; each member uses m = q * mult")
    p.add_argument("--no-integral", action="store_true")
    args = p.parse_args()
    config = SweepConfig()
    if args.q:
        config.qs = args.q
    if args.mult:
        config.multipliers = args.mult
    if args.no_integral:
        config.include_integral = False
    return 0 if run(config) else 1


if __name__ == "__main__":
    sys.exit(main())
