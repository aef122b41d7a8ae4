"""Shared test helpers.

dawson_reference is the extended-precision series oracle the double
evaluator is judged against: a plain Maclaurin sum run at enough digits
that the catastrophic cancellation at large argument is absorbed by the
working precision instead of the result.
"""

import random

import mpmath
import pytest

from udwpair import random_model_params


def dawson_reference(x: float) -> float:
    """Maclaurin series in arbitrary precision, adaptive digit count.

    The series for D(x) alternates with terms growing like e^{x^2}, so
    the working precision is 60 digits plus the ~0.44 x^2 digits the
    cancellation destroys.  Safe over the tested range [1e-6, 40].
    """
    if x < 0.0:
        return -dawson_reference(-x)
    dps = 60 + int(0.44 * x * x)
    with mpmath.workdps(dps):
        mx = mpmath.mpf(x)
        term = mx
        total = mx
        k = 0
        floor = mpmath.mpf(10) ** (-(dps - 8))
        while abs(term) > floor * abs(total):
            term *= -2 * mx * mx / (2 * k + 3)
            total += term
            k += 1
        return float(total)


@pytest.fixture(scope="session")
def draw_grid():
    """The 10^4-point random parameter grid shared by the physicality and
    dual-route acceptance checks (one build, several consumers)."""
    from udwpair import point_state

    rng = random.Random(20260815)
    out = []
    for _ in range(10_000):
        p = random_model_params(rng)
        out.append((p, point_state(p)[1]))
    return out
