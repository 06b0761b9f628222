import random

import pytest

from hhaudit.core import Interval
from hhaudit.exprlang import parse

# convex on all of R; used by the battery sweeps
CONVEX_BATTERY = ("x^2", "x^4", "exp(x)", "cosh(x)")


@pytest.fixture
def battery():
    return [(text, parse(text)) for text in CONVEX_BATTERY]


def draw_interval(rng: random.Random) -> Interval:
    a = rng.uniform(0.5, 5.0)
    return Interval(a, a + rng.uniform(0.1, 2.0))


def draw_narrow_interval(rng: random.Random) -> Interval:
    """An interval with b < 3a, so the widened interval stays in (0, inf)."""
    a = rng.uniform(0.5, 3.0)
    return Interval(a, a * rng.uniform(1.2, 2.8))
