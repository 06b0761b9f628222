#!/usr/bin/env python3
"""Sweep the derivative-based bounds over a convex battery and tally outcomes.

For every (function, exponent q, random interval) triple this evaluates the
midpoint-defect bounds (first derivative) and the three-point-defect bounds
(second derivative), and reports how often each printed constant actually
dominated the oracle left side.  Violations are printed with full inputs so
they can be replayed through `hhaudit verify`.
"""

import argparse
import random
import sys

from hhaudit.core import Interval, PreconditionError
from hhaudit.exprlang import parse
from hhaudit.hh_bounds import first_order_bounds, second_order_bounds

BATTERY = ("x^2", "x^4", "exp(x)", "cosh(x)", "x*log(x)")


def draw(rng: random.Random) -> Interval:
    a = rng.uniform(0.5, 3.0)
    return Interval(a, a * rng.uniform(1.2, 2.8))  # b < 3a keeps x*log(x) usable


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100, help="intervals per (function, q) cell")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--q", type=float, nargs="+", default=[1.0, 1.5, 2.0, 3.0])
    args = ap.parse_args()

    rng = random.Random(args.seed)
    tally: dict[str, list[int]] = {}  # theorem -> [pass, fail, guarded]
    violations = []

    def record(name, ok):
        tally.setdefault(name, [0, 0, 0])[0 if ok else 1] += 1

    def guarded(name):
        tally.setdefault(name, [0, 0, 0])[2] += 1

    for fn_text in BATTERY:
        expr = parse(fn_text)
        for q in args.q:
            for _ in range(args.trials):
                iv = draw(rng)
                first_names = ["thm2"] + (["thm3"] if q > 1 else [])
                try:
                    fb = first_order_bounds(expr, iv, q)
                    pairs = [("thm2", fb.rhs_thm2)] + ([("thm3", fb.rhs_thm3)] if q > 1 else [])
                    for name, rhs in pairs:
                        ok = fb.lhs <= rhs + 1e-12
                        record(name, ok)
                        if not ok:
                            violations.append((name, fn_text, iv.a, iv.b, q, fb.lhs, rhs))
                except PreconditionError:
                    for name in first_names:
                        guarded(name)
                second_names = ["thm4", "thm7"] + (["thm5", "thm6"] if q > 1 else [])
                try:
                    sb = second_order_bounds(expr, iv, q)
                    pairs = [("thm4", sb.rhs_k3), ("thm7", sb.rhs_k6)]
                    if q > 1:
                        pairs += [("thm5", sb.rhs_k4), ("thm6", sb.rhs_k5)]
                    for name, rhs in pairs:
                        ok = sb.lhs <= rhs + 1e-12
                        record(name, ok)
                        if not ok:
                            violations.append((name, fn_text, iv.a, iv.b, q, sb.lhs, rhs))
                except PreconditionError:
                    for name in second_names:
                        guarded(name)

    print(f"battery={BATTERY} trials/cell={args.trials} q={args.q} seed={args.seed}")
    print(f"{'theorem':<8} {'pass':>7} {'fail':>7} {'guarded':>8}")
    for name in sorted(tally):
        p, f, g = tally[name]
        print(f"{name:<8} {p:>7} {f:>7} {g:>8}")
    if violations:
        print("\nviolations (theorem, fn, a, b, q, lhs, rhs):")
        for row in violations:
            print("  ", row)
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
