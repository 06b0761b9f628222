"""Batch front-end: verify named inequalities over given or randomized inputs,
run certified midpoint integration, and evaluate the special functions.

Output is a single JSON document per invocation (sorted keys, so a fixed
command and seed produce byte-identical output); ``--pretty`` switches to a
human-readable table.  Exit codes: 0 when no inequality violation was found,
1 when at least one violation finding was recorded, 2 on usage or domain
errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import random
import sys

from .core import (
    BoundReport,
    ConvergenceError,
    DEFAULT_TOL,
    DomainError,
    Interval,
    PreconditionError,
    ToleranceConfig,
    extend,
)
from .exprlang import Expr, parse
from .hh_bounds import (
    K1,
    LEMMA_RESIDUAL_TOL,
    abs_half_check,
    first_order_bounds,
    hh_classic_check,
    k2_printed_constant,
    lemma_identity_residual,
    second_order_bounds,
    three_point_check,
)
from .core import make_report
from .means import means_proposition_check
from .oracle import integrate_ref
from .quadrature import Partition, adaptive_midpoint, midpoint_T2, midpoint_error_bound, prop4_check
from .special_fns import (
    bessel_I,
    bessel_K,
    bessel_prop_checks,
    normalized_I_series,
    q_digamma,
    q_digamma_deriv,
    qdigamma_prop_checks,
)

_GRAMMAR_HELP = """\
function grammar (--fn):
  expr   := term (('+' | '-') term)*
  term   := unary (('*' | '/') unary)*
  unary  := '-' unary | power
  power  := atom ('^' unary)?        exponent must be constant (no x^x)
  atom   := NUMBER | 'x' | NAME '(' expr ')' | '(' expr ')'
functions: exp log sqrt sinh cosh abs; no implicit multiplication ("2x").

random mode: when --a/--b are omitted, each trial draws a ~ U(0.5, 5) and
width ~ U(0.1, 2) from the seeded generator, redrawing until the function is
defined on the widened interval; guard failures of individual checks are
tallied as guarded_out.

environment: HH_TOL overrides the absolute comparison tolerance (default 1e-12).
"""

# targets parameterized by --fn; "all" expands to exactly these
_FUNCTION_TARGETS = (
    "eq1",
    "k1",
    "k2",
    "lemma1",
    "lemma2",
    "thm2",
    "thm3",
    "thm4",
    "thm5",
    "thm6",
    "thm7",
    "cor1",
    "cor2",
)
_PROP_TARGETS = tuple(f"prop{i}" for i in range(1, 10))
_TARGETS = _FUNCTION_TARGETS + _PROP_TARGETS + ("all",)

_FN_REQUIRED = set(_FUNCTION_TARGETS) | {"prop4", "prop5"}

# these need the conjugate exponent, so they are guarded out at q = 1
_HOELDER_ONLY = {"thm3", "thm5", "thm6", "cor1"}


def _checks_for_target(target, expr, iv, args, cfg) -> list[BoundReport]:
    q = args.q
    if target == "eq1":
        return list(hh_classic_check(expr, iv, cfg))
    if target == "k1":
        return list(three_point_check(expr, iv, cfg))
    if target == "k2":
        return [abs_half_check(expr, iv, cfg)]
    if target in ("lemma1", "lemma2"):
        residual = lemma_identity_residual(target, expr, iv, cfg)
        inputs = {"fn": args.fn, "a": iv.a, "b": iv.b}
        return [make_report(target, residual, LEMMA_RESIDUAL_TOL, inputs, cfg)]
    if target in ("thm2", "thm3", "cor1"):
        if target in _HOELDER_ONLY and q <= 1.0:
            raise PreconditionError(f"{target} needs q > 1 (got q = {q!r})")
        fb = first_order_bounds(expr, iv, q, cfg)
        inputs = {"fn": args.fn, "a": iv.a, "b": iv.b, "q": q}
        if target == "thm2":
            return [make_report("thm2", fb.lhs, fb.rhs_thm2, inputs, cfg)]
        if target == "thm3":
            return [make_report("thm3", fb.lhs, fb.rhs_thm3, inputs, cfg)]
        # combined corollary exactly as printed: min{K1, printed K2} times
        # (b-a) S^(1/q), where (b-a) S^(1/q) = 8 * rhs_thm2
        rhs = min(K1, k2_printed_constant(q)) * 8.0 * fb.rhs_thm2
        return [make_report("cor1", fb.lhs, rhs, inputs, cfg)]
    if target in ("thm4", "thm5", "thm6", "thm7", "cor2"):
        if target in _HOELDER_ONLY and q <= 1.0:
            raise PreconditionError(f"{target} needs q > 1 (got q = {q!r})")
        sb = second_order_bounds(expr, iv, q, cfg)
        inputs = {"fn": args.fn, "a": iv.a, "b": iv.b, "q": q}
        rhs = {
            "thm4": sb.rhs_k3,
            "thm5": sb.rhs_k4,
            "thm6": sb.rhs_k5,
            "thm7": sb.rhs_k6,
            "cor2": sb.rhs_min,
        }[target]
        return [make_report(target, sb.lhs, rhs, inputs, cfg)]
    if target in ("prop1", "prop2", "prop3"):
        return list(
            means_proposition_check("P" + target[-1], iv.a, iv.b, q=q, n=args.n, cfg=cfg)
        )
    if target == "prop4":
        partition = Partition.uniform(iv, args.panels)
        return [prop4_check(expr, partition, cfg)]
    if target == "prop5":
        partition = Partition.uniform(iv, args.panels)
        bound = midpoint_error_bound(expr, partition, q, cfg)
        integral, _ = integrate_ref(expr, iv, cfg.abs_tol, cfg=cfg)
        true_err = abs(integral - midpoint_T2(expr, partition))
        inputs = {"fn": args.fn, "a": iv.a, "b": iv.b, "q": q, "panels": args.panels}
        return [make_report("prop5", true_err, bound, inputs, cfg)]
    if target == "prop6":
        reports = bessel_prop_checks(args.p, iv.a, iv.b, cfg)
        return [r for r in reports if r.label.startswith("prop6")]
    if target == "prop7":
        reports = [r for r in bessel_prop_checks(args.p, iv.a, iv.b, cfg) if r.label == "prop7.ii"]
        if not reports:
            raise PreconditionError(
                f"prop7 needs p > 1 and 3a > b (got p = {args.p!r}, 3a - b = {3 * iv.a - iv.b!r})"
            )
        return reports
    if target in ("prop8", "prop9"):
        reports = qdigamma_prop_checks(args.qbase, iv.a, iv.b, cfg)
        return [reports[0] if target == "prop8" else reports[1]]
    raise ValueError(f"unknown target {target!r}")


def _draw_interval(rng: random.Random, expr, max_attempts: int = 200) -> Interval:
    for _ in range(max_attempts):
        a = rng.uniform(0.5, 5.0)
        iv = Interval(a, a + rng.uniform(0.1, 2.0))
        if expr is None:
            return iv
        ext = extend(iv)
        try:
            for x in (ext.lo, iv.a, ext.mid, iv.b, ext.hi):
                expr(x)
        except DomainError:
            continue
        return iv
    raise PreconditionError(f"no interval passing the domain guard found in {max_attempts} draws")


def _report_dict(report: BoundReport) -> dict:
    return {
        "label": report.label,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "margin": report.margin,
        "satisfied": report.satisfied,
        "fragile": report.fragile,
        "inputs": report.inputs,
    }


def _echo(prefix: str, args, fields) -> str:
    parts = [prefix]
    for name in fields:
        value = getattr(args, name)
        if value is not None:
            parts.append(f"--{name} {value!r}")
    return " ".join(parts)


def cmd_verify(args, cfg: ToleranceConfig):
    if args.trials < 1:
        raise ValueError(f"--trials must be >= 1, got {args.trials}")
    targets = list(_FUNCTION_TARGETS) if args.target == "all" else [args.target]
    expr = parse(args.fn) if args.fn is not None else None
    if expr is None and any(t in _FN_REQUIRED for t in targets):
        raise ValueError(f"target {args.target!r} needs --fn")
    if (args.a is None) != (args.b is None):
        raise ValueError("provide both --a and --b, or omit both for random mode")

    reports: list[dict] = []
    findings: list[dict] = []
    satisfied = violated = guarded_out = 0
    tolerant = args.target == "all"

    def run_instance(iv: Interval, trial: int | None) -> None:
        nonlocal satisfied, violated, guarded_out
        for target in targets:
            try:
                checks = _checks_for_target(target, expr, iv, args, cfg)
            except (DomainError, PreconditionError):
                if not tolerant and trial is None:
                    raise
                guarded_out += 1
                continue
            for report in checks:
                entry = _report_dict(report)
                if trial is not None:
                    entry["inputs"] = {**entry["inputs"], "trial": trial, "a": iv.a, "b": iv.b}
                reports.append(entry)
                if report.satisfied:
                    satisfied += 1
                else:
                    violated += 1
                    findings.append(entry)

    if args.a is not None:
        run_instance(Interval(args.a, args.b), None)
    else:
        rng = random.Random(args.seed)
        for trial in range(args.trials):
            run_instance(_draw_interval(rng, expr), trial)

    doc = {
        "command": _echo("verify", args, ("target", "fn", "a", "b", "q", "n", "p", "qbase", "panels", "trials", "seed")),
        "counts": {
            "checked": satisfied + violated + guarded_out,
            "satisfied": satisfied,
            "violated": violated,
            "guarded_out": guarded_out,
        },
        "findings": findings,
        "reports": reports,
    }
    return doc, (1 if findings else 0)


def cmd_integrate(args, cfg: ToleranceConfig):
    expr = parse(args.fn)
    iv = Interval(args.a, args.b)
    result = adaptive_midpoint(expr, iv, args.err, args.q, cfg)
    doc = {
        "command": _echo("integrate", args, ("fn", "a", "b", "err", "q")),
        "t2": result.t2,
        "t1": result.t1,
        "certificate": result.e2_bound,
        "target_error": args.err,
        "panels": result.partition.panel_count,
        "certified": result.certified,
    }
    return doc, 0


def cmd_special(args, cfg: ToleranceConfig):
    if args.what in ("besselI", "besselK", "normI"):
        if args.p is None or args.x is None:
            raise ValueError(f"{args.what} needs --p and --x")
        if args.what == "besselI":
            sr = bessel_I(args.p, args.x, cfg)
        elif args.what == "besselK":
            sr = bessel_K(args.p, args.x, cfg)
        else:
            sr = normalized_I_series(args.p, args.x, cfg)
        params = {"p": args.p, "x": args.x}
    else:
        if args.q is None or args.x is None:
            raise ValueError("qdigamma needs --q and --x")
        if args.order == 0:
            sr = q_digamma(args.q, args.x, cfg)
        else:
            sr = q_digamma_deriv(args.q, args.x, args.order, cfg)
        params = {"q": args.q, "x": args.x, "order": args.order}
    doc = {
        "command": _echo(f"special {args.what}", args, ("p", "x", "q", "order")),
        "params": params,
        "value": sr.value,
        "terms_used": sr.terms_used,
        "tail_bound": sr.tail_bound,
    }
    return doc, 0


def _render(doc: dict, pretty: bool) -> str:
    if not pretty:
        return json.dumps(doc, sort_keys=True, indent=2)
    lines = [doc["command"]]
    if "reports" in doc:
        for r in doc["reports"]:
            status = "ok" if r["satisfied"] else ("VIOLATED (fragile)" if r["fragile"] else "VIOLATED")
            lines.append(
                f"  {r['label']:<14} lhs={r['lhs']:< 18.12g} rhs={r['rhs']:< 18.12g} "
                f"margin={r['margin']:< 12.4g} {status}"
            )
        c = doc["counts"]
        lines.append(
            f"  checked={c['checked']} satisfied={c['satisfied']} "
            f"violated={c['violated']} guarded_out={c['guarded_out']}"
        )
    else:
        for key in sorted(doc):
            if key != "command":
                lines.append(f"  {key} = {doc[key]!r}")
    return "\n".join(lines)


def _config_from_env() -> ToleranceConfig:
    raw = os.environ.get("HH_TOL")
    if raw is None:
        return DEFAULT_TOL
    return dataclasses.replace(DEFAULT_TOL, abs_tol=float(raw))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhaudit",
        description="Audit extended Hermite-Hadamard-type inequalities, certified "
        "midpoint quadrature, special means, and Bessel/q-digamma bounds.",
        epilog=_GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser(
        "verify",
        help="evaluate a named inequality on given or randomized inputs",
        epilog=_GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    v.add_argument("--target", required=True, choices=_TARGETS)
    v.add_argument("--fn", help="function of x (see grammar below)")
    v.add_argument("--a", type=float, help="left endpoint (omit with --b for random mode)")
    v.add_argument("--b", type=float, help="right endpoint")
    v.add_argument("--q", type=float, default=1.0, help="power-mean/Hoelder exponent, q >= 1 (default 1)")
    v.add_argument("--n", type=int, default=2, help="order of the generalized log mean for prop1 (default 2)")
    v.add_argument("--p", type=float, default=2.0, help="Bessel order for prop6/prop7 (default 2)")
    v.add_argument("--qbase", type=float, default=0.5, help="q of the q-digamma for prop8/prop9 (default 0.5)")
    v.add_argument("--panels", type=int, default=1, help="uniform panels for prop4/prop5 (default 1)")
    v.add_argument("--trials", type=int, default=1, help="random intervals to draw when --a/--b omitted")
    v.add_argument("--seed", type=int, default=0, help="seed for random mode (default 0)")
    v.add_argument("--pretty", action="store_true", help="table output instead of JSON")
    v.set_defaults(run=cmd_verify)

    i = sub.add_parser("integrate", help="certified adaptive midpoint integration")
    i.add_argument("--fn", required=True)
    i.add_argument("--a", type=float, required=True)
    i.add_argument("--b", type=float, required=True)
    i.add_argument("--err", type=float, required=True, help="certificate target for |E2|")
    i.add_argument("--q", type=float, default=1.0)
    i.add_argument("--pretty", action="store_true")
    i.set_defaults(run=cmd_integrate)

    s = sub.add_parser("special", help="evaluate a special function with its error bound")
    s.add_argument("what", choices=("besselI", "besselK", "normI", "qdigamma"))
    s.add_argument("--p", type=float, help="order for besselI/besselK/normI")
    s.add_argument("--x", type=float, help="argument")
    s.add_argument("--q", type=float, help="base of the q-digamma")
    s.add_argument("--order", type=int, default=0, choices=(0, 1, 3), help="q-digamma derivative order (0 = value)")
    s.add_argument("--pretty", action="store_true")
    s.set_defaults(run=cmd_special)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = _config_from_env()
        doc, code = args.run(args, cfg)
    except (ValueError, ConvergenceError, OverflowError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(_render(doc, args.pretty))
    return code


def entry() -> None:
    sys.exit(main())
