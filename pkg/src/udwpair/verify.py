"""Self-check battery: every dual-route pair in the package driven against
its counterpart over random parameter draws, plus a frozen high-precision
reference table for the Dawson evaluator.

The table values were produced with 60-digit arbitrary-precision
arithmetic (adaptive Maclaurin summation) and are recorded to 21
significant digits, well past double precision.
"""

import math
import random
from dataclasses import dataclass

import numpy as np

from .detector_state import InitialState, assemble_appendix
from .field_correlators import closed_form_correlators, oracle_correlators
from .quantum_measures import (
    negativity_closed,
    negativity_full,
    spectrum_closed,
    spectrum_general,
)
from .special_functions import dawson, erfi
from .sweep_engine import ModelParams, detector_pair, point_state

__all__ = ["CheckResult", "random_model_params", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    worst: float
    tolerance: float
    passed: bool
    detail: str = ""


# (x, D(x)) reference pairs spanning all three evaluator branches.
_DAWSON_TABLE = (
    (0.25, 0.239839163562898212365),
    (0.5, 0.424436383502022295934),
    (1.0, 0.538079506912768419136),
    (1.5, 0.428249071085398625477),
    (2.0, 0.301340388923791966035),
    (2.5, 0.223083722167435481127),
    (3.0, 0.178271030610558287343),
    (3.7, 0.140751174115415405183),
    (4.5, 0.11408861022682498016),
    (5.3, 0.0961177078119502340782),
    (6.0, 0.0845426889745438522391),
    (7.5, 0.0672758116446306159869),
    (10.0, 0.0502538471875985280327),
    (14.0, 0.0358060998962390094766),
    (20.0, 0.025031367926403671947),
    (28.0, 0.0178685532000919460869),
    (40.0, 0.0125039099178439731993),
)

_ERFI_ONE = 1.650425758797542876


def random_model_params(
    rng: random.Random,
    *,
    lambda_max: float = 8.0,
    gap_max: float = 4.0,
    tau_span: float = 0.0,
) -> ModelParams:
    """One random parameter point with every knob exercised.

    Couplings may be zero; separations keep away from the coincidence
    limit handled by the short-distance branch.
    """
    return ModelParams(
        theta=rng.uniform(0.0, math.pi / 2.0),
        lambda_a=rng.uniform(0.0, lambda_max),
        lambda_b=rng.uniform(0.0, lambda_max),
        eta_a=rng.uniform(0.2, 2.0),
        eta_b=rng.uniform(0.2, 2.0),
        gap_a=rng.uniform(0.0, gap_max),
        gap_b=rng.uniform(0.0, gap_max),
        separation=rng.uniform(0.01, 10.0),
        delay=rng.uniform(-10.0, 10.0),
        tau_a0=rng.uniform(-tau_span, tau_span) if tau_span else 0.0,
    )


def _build(p: ModelParams):
    a, b, g = detector_pair(p)
    c, state = point_state(p)
    return a, b, g, c, state


def _check_dawson() -> CheckResult:
    worst = 0.0
    for x, ref in _DAWSON_TABLE:
        worst = max(worst, abs(dawson(x) - ref) / ref)
        odd = dawson(-x) + dawson(x)
        worst = max(worst, abs(odd) / ref)
    worst = max(worst, abs(erfi(1.0) - _ERFI_ONE) / _ERFI_ONE)
    return CheckResult(
        "dawson-reference",
        worst,
        1e-12,
        worst <= 1e-12,
        f"{len(_DAWSON_TABLE)} tabulated points, oddness, erfi(1)",
    )


def _check_correlators(rng: random.Random, points: int) -> CheckResult:
    # error scale: relative above 1e-3, absolute (1e-9 at the tolerance)
    # below, folded into one ratio against max(|oracle|, 1e-3)
    worst = 0.0
    for _ in range(points):
        a, b, g = detector_pair(random_model_params(rng, lambda_max=5.0))
        closed = closed_form_correlators(a, b, g)
        numeric = oracle_correlators(a, b, g)
        for name in ("f_a", "f_b", "kappa", "omega", "gamma"):
            ref = getattr(numeric, name)
            err = abs(getattr(closed, name) - ref) / max(abs(ref), 1e-3)
            worst = max(worst, err)
    return CheckResult(
        "correlators-vs-quadrature",
        worst,
        1e-6,
        worst <= 1e-6,
        f"{points} random draws, scaled error",
    )


def _check_assembly(rng: random.Random, points: int) -> CheckResult:
    worst = 0.0
    for _ in range(points):
        p = random_model_params(rng, tau_span=5.0)
        a, b, g, c, state = _build(p)
        other = assemble_appendix(InitialState(p.theta), a, b, c)
        for name in ("rho11", "rho22", "rho33", "rho44", "rho14", "rho23"):
            worst = max(worst, abs(getattr(state, name) - getattr(other, name)))
    return CheckResult(
        "assembly-dual-route",
        worst,
        1e-12,
        worst <= 1e-12,
        f"{points} random draws with random time origins",
    )


def _check_spectrum(rng: random.Random, points: int) -> CheckResult:
    worst = 0.0
    for _ in range(points):
        state = _build(random_model_params(rng))[4]
        a = spectrum_closed(state).as_tuple()
        b = spectrum_general(state).as_tuple()
        worst = max(worst, max(abs(x - y) for x, y in zip(a, b)))
    return CheckResult(
        "spectrum-dual-route",
        worst,
        1e-12,
        worst <= 1e-12,
        f"{points} random draws",
    )


def _check_physicality(rng: random.Random, points: int) -> CheckResult:
    # two tolerances folded into one normalized ratio:
    # |trace - 1| / 1e-12 and (negative eigenvalue excursion) / 1e-10
    worst = 0.0
    for _ in range(points):
        state = _build(random_model_params(rng))[4]
        trace = math.fsum(state.diagonals())
        eigs = np.linalg.eigvalsh(state.as_matrix())
        dip = max(0.0, -float(eigs[0]))
        worst = max(worst, abs(trace - 1.0) / 1e-12, dip / 1e-10)
    return CheckResult(
        "physicality",
        worst,
        1.0,
        worst <= 1.0,
        f"{points} draws; |trace-1|/1e-12 and eigenvalue dip/1e-10",
    )


def _check_negativity(rng: random.Random, points: int) -> CheckResult:
    worst = 0.0
    exceptions = 0
    for _ in range(points):
        state = _build(random_model_params(rng))[4]
        diff = abs(negativity_full(state) - negativity_closed(state))
        worst = max(worst, diff)
        if diff > 1e-12:
            exceptions += 1
    return CheckResult(
        "negativity-dual-route",
        worst,
        1e-12,
        worst <= 1e-12,
        f"{points} draws, {exceptions} disagreements",
    )


def run_all(seed: int = 0, points: int | None = None) -> list:
    """Run every self-check.  points overrides the per-check draw counts
    (the Dawson table check has no sampling and ignores it)."""
    rng = random.Random(seed)
    return [
        _check_dawson(),
        _check_correlators(rng, points or 200),
        _check_assembly(rng, points or 1000),
        _check_spectrum(rng, points or 2000),
        _check_physicality(rng, points or 2000),
        _check_negativity(rng, points or 2000),
    ]
