"""Parameter sweeps and CSV emission.

Everything downstream of the correlators is cheap, so a sweep is just an
evaluate-per-grid-point map.  All lengths and times are expressed in units
of the switching width (the Gaussian smearing scale is pinned to 1), which
matches how the figure presets are defined.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace

from .detector_state import AssemblyError, InitialState, assemble_main
from .field_correlators import DetectorParams, PairGeometry, closed_form_correlators
from .quantum_measures import coherence_l1, coherence_rec, negativity_full

__all__ = [
    "ModelParams",
    "SweepSpec",
    "SweepRow",
    "SweepError",
    "VARY_CHOICES",
    "CSV_HEADER",
    "detector_pair",
    "point_state",
    "evaluate_point",
    "run_sweep",
    "figure_preset",
    "emit_csv",
]

VARY_CHOICES = ("l", "dtau", "lambda", "omega-b")

CSV_HEADER = (
    "vary,f_a,f_b,kappa,omega,gamma,rho11,rho22,rho33,rho44,"
    "abs_rho14,abs_rho23,c_l1,c_rec,negativity"
)


class SweepError(RuntimeError):
    """A grid point failed to evaluate; the message names the point."""


@dataclass(frozen=True)
class ModelParams:
    """One full parameter point, smearing width fixed at 1."""

    theta: float = math.pi / 4.0
    lambda_a: float = 1.0
    lambda_b: float = 1.0
    eta_a: float = 1.0
    eta_b: float = 1.0
    gap_a: float = 1.0
    gap_b: float = 1.0
    separation: float = 3.0
    delay: float = 3.0
    tau_a0: float = 0.0


@dataclass(frozen=True)
class SweepSpec:
    """A 1-D sweep: vary one knob over [start, stop] with everything else
    held at `fixed`.  "lambda" sweeps both couplings together."""

    vary: str
    fixed: ModelParams = ModelParams()
    label: str = ""
    start: float = 0.0
    stop: float = 1.0
    steps: int = 2

    def __post_init__(self):
        if self.vary not in VARY_CHOICES:
            raise ValueError(f"vary must be one of {VARY_CHOICES}, got {self.vary!r}")
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("start and stop must be finite")
        if not self.start < self.stop:
            raise ValueError(f"start must be below stop, got [{self.start!r}, {self.stop!r}]")


@dataclass(frozen=True)
class SweepRow:
    """One CSV row; field order matches CSV_HEADER."""

    value: float
    f_a: float
    f_b: float
    kappa: float
    omega: float
    gamma: float
    rho11: float
    rho22: float
    rho33: float
    rho44: float
    abs_rho14: float
    abs_rho23: float
    c_l1: float
    c_rec: float
    negativity: float

    @classmethod
    def from_parts(cls, value, correlators, state, measures):
        return cls(
            value,
            correlators.f_a,
            correlators.f_b,
            correlators.kappa,
            correlators.omega,
            correlators.gamma,
            state.rho11,
            state.rho22,
            state.rho33,
            state.rho44,
            abs(state.rho14),
            abs(state.rho23),
            measures[0],
            measures[1],
            measures[2],
        )

    def astuple(self):
        return tuple(getattr(self, f.name) for f in fields(self))


def _apply_vary(p: ModelParams, vary: str, value: float) -> ModelParams:
    if vary == "l":
        return replace(p, separation=value)
    if vary == "dtau":
        return replace(p, delay=value)
    if vary == "lambda":
        return replace(p, lambda_a=value, lambda_b=value)
    if vary == "omega-b":
        return replace(p, gap_b=value)
    raise ValueError(f"unknown vary {vary!r}")


def detector_pair(p: ModelParams):
    """DetectorParams pair and geometry for one parameter point.

    Detector B fires at tau_a0 + delay, so the delay knob moves B while A
    keeps the time origin.
    """
    a = DetectorParams(p.lambda_a, p.eta_a, p.gap_a, p.tau_a0)
    b = DetectorParams(p.lambda_b, p.eta_b, p.gap_b, p.tau_a0 + p.delay)
    return a, b, PairGeometry(p.separation, p.delay, 1.0)


def point_state(p: ModelParams):
    """Correlators and assembled state for one parameter point."""
    a, b, g = detector_pair(p)
    c = closed_form_correlators(a, b, g)
    delta = p.gap_a * p.tau_a0 - p.gap_b * (p.tau_a0 + p.delay)
    return c, assemble_main(InitialState(p.theta), c, delta=delta)


def evaluate_point(p: ModelParams) -> SweepRow:
    """Correlators, state, measures for one parameter point."""
    c, state = point_state(p)
    measures = (coherence_l1(state), coherence_rec(state), negativity_full(state))
    return SweepRow.from_parts(0.0, c, state, measures)


def _evaluate_at(spec: SweepSpec, value: float) -> SweepRow:
    try:
        row = evaluate_point(_apply_vary(spec.fixed, spec.vary, value))
    except (AssemblyError, ValueError) as exc:
        raise SweepError(f"sweep failed at {spec.vary}={value!r}: {exc}") from exc
    return replace(row, value=value)


def run_sweep(spec: SweepSpec, max_workers: int | None = None) -> list:
    """Evaluate the sweep grid in order.  max_workers > 1 uses threads;
    the work releases the GIL poorly, so this mostly matters for quad."""
    span = spec.stop - spec.start
    values = [spec.start + span * i / (spec.steps - 1) for i in range(spec.steps)]
    values[-1] = spec.stop  # exact endpoint regardless of rounding
    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(lambda v: _evaluate_at(spec, v), values))
    return [_evaluate_at(spec, v) for v in values]


_PRESET_STEPS = 401


def figure_preset(which: str) -> list:
    """Named sweep bundles reproducing the survey figures."""
    base = ModelParams()
    if which == "fig1":
        return [
            SweepSpec(
                "l",
                replace(base, delay=dt),
                label=f"fig1_dtau{dt:g}",
                start=0.1,
                stop=10.0,
                steps=_PRESET_STEPS,
            )
            for dt in (0.0, 2.0, 4.0)
        ]
    if which == "fig2":
        return [
            SweepSpec(
                "dtau",
                replace(base, separation=l),
                label=f"fig2_l{l:g}",
                start=-10.0,
                stop=10.0,
                steps=_PRESET_STEPS,
            )
            for l in (1.0, 3.0, 5.0)
        ]
    if which == "fig3-top":
        return [
            SweepSpec(
                "lambda",
                replace(base, separation=l, delay=dt),
                label=f"fig3_{tag}",
                start=0.0,
                stop=12.0,
                steps=_PRESET_STEPS,
            )
            for tag, l, dt in (("lightlike", 3.0, 3.0), ("spacelike", 5.0, 3.0))
        ]
    if which == "fig3-bottom":
        return [
            SweepSpec(
                "lambda",
                replace(base, theta=th, separation=l, delay=3.0),
                label=f"fig3_theta{tag}_{reg}",
                start=0.0,
                stop=12.0,
                steps=_PRESET_STEPS,
            )
            for tag, th in (("0", 0.0), ("90", math.pi / 2.0))
            for reg, l in (("lightlike", 3.0), ("spacelike", 5.0))
        ]
    if which == "fig4":
        return [
            SweepSpec(
                "omega-b",
                replace(base, separation=l, delay=3.0),
                label=f"fig4_{tag}",
                start=0.0,
                stop=4.0,
                steps=_PRESET_STEPS,
            )
            for tag, l in (("lightlike", 3.0), ("spacelike", 5.0))
        ]
    raise ValueError(f"unknown figure preset {which!r}")


def emit_csv(rows, sink) -> int:
    """Write rows as CSV with 17 significant digits (lossless float
    round-trip).  Returns the number of bytes written."""
    if not rows:
        raise ValueError("no rows to emit")
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(",".join(f"{v:.17g}" for v in row.astuple()))
    data = "\n".join(lines) + "\n"
    sink.write(data)
    return len(data.encode("utf-8"))
