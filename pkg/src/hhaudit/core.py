"""Intervals, the widened-interval construction, tolerance policy, and bound reports.

Every inequality audited by this package is hypothesized on the widened
interval ``[(3a-b)/2, (3b-a)/2]`` built from a base interval ``[a, b]``.  This
module owns that construction, the tolerance configuration shared by all
numeric routines, and the comparison policy used to call a floating-point
inequality "satisfied".
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Union


class DomainError(ValueError):
    """A function or parameter was evaluated outside its domain."""


class PreconditionError(ValueError):
    """A stated hypothesis (convexity, exponent range, interval shape) does not hold."""


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its term or depth budget before reaching tolerance."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances and budget caps honored by every numeric routine.

    ``abs_tol`` is the slack used in inequality verdicts and the target for
    series/integral truncation; ``rel_tol`` is the relative floor used where
    an absolute target is not representable in double precision.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_series_terms: int = 500
    max_refine_depth: int = 40

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_series_terms <= 0 or self.max_refine_depth <= 0:
            raise ValueError("budget caps must be positive")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class Interval:
    """Base interval [a, b] with a < b, both finite."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"interval endpoints must be finite, got ({self.a!r}, {self.b!r})")
        if not self.a < self.b:
            raise ValueError(f"interval needs a < b, got ({self.a!r}, {self.b!r})")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)


@dataclass(frozen=True)
class ExtendedInterval:
    """Widened interval [(3a-b)/2, (3b-a)/2]: same midpoint, twice the width."""

    lo: float
    hi: float
    mid: float

    def __post_init__(self) -> None:
        if not self.lo < self.mid < self.hi:
            raise ValueError(
                f"extended interval needs lo < mid < hi, got ({self.lo!r}, {self.mid!r}, {self.hi!r})"
            )


def extend(iv: Interval) -> ExtendedInterval:
    """Widen [a, b] to the interval on which all bound hypotheses live."""
    return ExtendedInterval(
        (3.0 * iv.a - iv.b) / 2.0,
        (3.0 * iv.b - iv.a) / 2.0,
        (iv.a + iv.b) / 2.0,
    )


def conjugate_exponent(q: float) -> float:
    """Return p with 1/p + 1/q = 1.  Defined only for q > 1."""
    if q <= 1.0:
        raise DomainError(f"conjugate undefined for q <= 1 (q = {q!r})")
    return q / (q - 1.0)


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality instance: ``lhs <= rhs`` up to ``abs_tol``.

    ``fragile`` marks checks whose printed form is known to fail on valid
    inputs (e.g. under vertical shifts); their violations are recorded as
    findings, not treated as implementation bugs.
    """

    label: str
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    inputs: dict
    fragile: bool = False

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("report label must be nonempty")


def make_report(
    label: str,
    lhs: float,
    rhs: float,
    inputs: dict,
    cfg: ToleranceConfig = DEFAULT_TOL,
    fragile: bool = False,
) -> BoundReport:
    margin = rhs - lhs
    return BoundReport(
        label=label,
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        satisfied=bool(margin >= -cfg.abs_tol),
        inputs=dict(inputs),
        fragile=fragile,
    )


AnyInterval = Union[Interval, ExtendedInterval]


def _span(iv: AnyInterval) -> tuple[float, float]:
    if isinstance(iv, ExtendedInterval):
        return iv.lo, iv.hi
    if isinstance(iv, Interval):
        return iv.a, iv.b
    raise TypeError(f"expected Interval or ExtendedInterval, got {type(iv).__name__}")


def _probe(fn: Callable[[float], float], x: float) -> float:
    try:
        value = fn(x)
    except DomainError:
        raise
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise DomainError(f"function undefined at x = {x!r}: {exc}") from exc
    if math.isnan(value):
        raise DomainError(f"function undefined (NaN) at x = {x!r}")
    return value


def sample_convexity(
    f: Callable[[float], float],
    iv: AnyInterval,
    n: int,
    *,
    cfg: ToleranceConfig = DEFAULT_TOL,
    seed: int = 0,
    label: str = "convexity",
) -> BoundReport:
    """Probe midpoint convexity of ``f`` on the span of ``iv`` at ``n`` seeded random pairs.

    The five structural points (endpoints, midpoint, quarter points) are
    evaluated first so that domain holes surface as :class:`DomainError`
    naming the failing point rather than as spurious convexity verdicts; for
    an extended interval the quarter points are the base endpoints a and b.

    The report's ``lhs`` is the worst observed gap
    ``f((x+y)/2) - (f(x)+f(y))/2``; convexity is "satisfied" when that gap
    stays below ``abs_tol``.
    """
    if n < 3:
        raise ValueError(f"need at least 3 sample pairs, got n = {n}")
    lo, hi = _span(iv)
    for x in (lo, (3.0 * lo + hi) / 4.0, 0.5 * (lo + hi), (lo + 3.0 * hi) / 4.0, hi):
        _probe(f, x)
    rng = random.Random(seed)
    worst = -math.inf
    worst_at = lo
    for _ in range(n):
        x = rng.uniform(lo, hi)
        y = rng.uniform(lo, hi)
        mid = 0.5 * (x + y)
        gap = _probe(f, mid) - 0.5 * (_probe(f, x) + _probe(f, y))
        if gap > worst:
            worst, worst_at = gap, mid
    return make_report(
        label,
        worst,
        0.0,
        {"lo": lo, "hi": hi, "pairs": n, "worst_at": worst_at},
        cfg=cfg,
    )
