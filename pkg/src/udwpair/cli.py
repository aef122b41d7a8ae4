"""Command line front end.

Subcommands:

* point    evaluate one parameter point, print JSON
* sweep    vary one knob over a grid, emit CSV
* figures  run a named preset bundle of sweeps, one CSV per curve
* verify   run the self-check battery

Exit codes: 0 success, 1 runtime failure (quadrature or state assembly
broke, file could not be written, a self-check failed), 2 usage error
(bad flags, bad config, bad sweep bounds).

Parameter resolution per knob: specific flag, then generic flag, then
config file entry (keys named like the flags), then the built-in default.
All lengths and times are in units of the switching width, which this
interface pins to 1.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, fields

from .detector_state import AssemblyError
from .field_correlators import QuadratureError
from .quantum_measures import measure_set, spectrum_general
from .sweep_engine import (
    VARY_CHOICES,
    ModelParams,
    SweepError,
    SweepSpec,
    emit_csv,
    figure_preset,
    point_state,
    run_sweep,
)
from .verify import run_all

__all__ = [
    "RunConfig",
    "main",
    "cmd_point",
    "cmd_sweep",
    "cmd_figures",
    "cmd_verify",
]

_FIGURE_CHOICES = ("fig1", "fig2", "fig3-top", "fig3-bottom", "fig4")

_CONFIG_KEYS = (
    "theta",
    "lambda",
    "lambda-a",
    "lambda-b",
    "eta",
    "omega-a",
    "omega-b",
    "l",
    "dtau",
    "tau-a0",
)


class _UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: the full fixed-parameter point (widths
    pinned to 1), the subcommand, and where output goes (None: stdout)."""

    command: str
    params: ModelParams
    out: str | None = None

    def __post_init__(self):
        for f in fields(self.params):
            v = getattr(self.params, f.name)
            if not math.isfinite(v):
                raise _UsageError(f"parameter {f.name} must be finite, got {v!r}")
        if not 0.0 <= self.params.theta <= math.pi / 2.0:
            raise _UsageError(f"theta must lie in [0, pi/2], got {self.params.theta!r}")


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _UsageError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise _UsageError(f"config {path} must hold a JSON object")
    for key, value in raw.items():
        if key not in _CONFIG_KEYS:
            raise _UsageError(f"config {path} has unknown key {key!r}")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise _UsageError(f"config {path} key {key!r} must be a number")
    return raw


def _resolve_config(args) -> RunConfig:
    cfg = _load_config(args.config) if args.config else {}

    def pick(flag, key, default):
        if flag is not None:
            return flag
        return float(cfg.get(key, default))

    def pick2(flag, generic_flag, key, generic_key, default):
        # specific beats generic within each layer, flags beat config
        if flag is not None:
            return flag
        if generic_flag is not None:
            return generic_flag
        if key in cfg:
            return float(cfg[key])
        return float(cfg.get(generic_key, default))

    eta = pick(args.eta, "eta", 1.0)
    params = ModelParams(
        theta=pick(args.theta, "theta", math.pi / 4.0),
        lambda_a=pick2(args.lambda_a, args.lam, "lambda-a", "lambda", 1.0),
        lambda_b=pick2(args.lambda_b, args.lam, "lambda-b", "lambda", 1.0),
        eta_a=eta,
        eta_b=eta,
        gap_a=pick(args.omega_a, "omega-a", 1.0),
        gap_b=pick(args.omega_b, "omega-b", 1.0),
        separation=pick(args.l, "l", 3.0),
        delay=pick(args.dtau, "dtau", 3.0),
        tau_a0=pick(args.tau_a0, "tau-a0", 0.0),
    )
    return RunConfig(args.command, params, getattr(args, "out", None))


def cmd_point(config: RunConfig) -> int:
    try:
        correlators, state = point_state(config.params)
    except (AssemblyError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    measures = measure_set(state)
    payload = {
        "correlators": {
            "f_a": correlators.f_a,
            "f_b": correlators.f_b,
            "kappa": correlators.kappa,
            "omega": correlators.omega,
            "gamma": correlators.gamma,
        },
        "state": {
            "rho11": state.rho11,
            "rho22": state.rho22,
            "rho33": state.rho33,
            "rho44": state.rho44,
            "rho14": [state.rho14.real, state.rho14.imag],
            "rho23": [state.rho23.real, state.rho23.imag],
        },
        "spectrum": list(spectrum_general(state).as_tuple()),
        "measures": {
            "c_l1": measures.c_l1,
            "c_rec": measures.c_rec,
            "negativity": measures.negativity,
        },
    }
    print(json.dumps(payload, indent=2))
    return 0


def cmd_sweep(config: RunConfig, spec: SweepSpec) -> int:
    try:
        rows = run_sweep(spec)
    except (SweepError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if config.out:
        try:
            with open(config.out, "w", encoding="utf-8", newline="") as fh:
                emit_csv(rows, fh)
        except OSError as exc:
            print(f"error: cannot write {config.out}: {exc}", file=sys.stderr)
            return 1
    else:
        emit_csv(rows, sys.stdout)
    return 0


def cmd_figures(which: str, out_dir: str) -> int:
    try:
        specs = figure_preset(which)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create {out_dir}: {exc}", file=sys.stderr)
        return 1
    for spec in specs:
        try:
            rows = run_sweep(spec)
        except (SweepError, QuadratureError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        path = os.path.join(out_dir, f"{spec.label}.csv")
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                size = emit_csv(rows, fh)
        except OSError as exc:
            print(f"error: cannot write {path}: {exc}", file=sys.stderr)
            return 1
        print(f"wrote {path} ({size} bytes)")
    return 0


def cmd_verify(seed: int = 0, points: int | None = None) -> int:
    results = run_all(seed=seed, points=points)
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{r.name:<26} max err {r.worst:11.4e}  tol {r.tolerance:.0e}  {status}"
        if r.detail:
            line += f"  ({r.detail})"
        print(line)
        ok = ok and r.passed
    return 0 if ok else 1


def _add_model_flags(parser) -> None:
    g = parser.add_argument_group("model parameters")
    g.add_argument("--theta", type=float, default=None, help="initial entanglement angle")
    g.add_argument("--lambda", dest="lam", type=float, default=None, help="both couplings")
    g.add_argument("--lambda-a", type=float, default=None, help="coupling of detector A")
    g.add_argument("--lambda-b", type=float, default=None, help="coupling of detector B")
    g.add_argument("--eta", type=float, default=None, help="switching weight of both detectors")
    g.add_argument("--omega-a", type=float, default=None, help="energy gap of detector A")
    g.add_argument("--omega-b", type=float, default=None, help="energy gap of detector B")
    g.add_argument("--l", type=float, default=None, help="detector separation")
    g.add_argument("--dtau", type=float, default=None, help="firing delay of B after A")
    g.add_argument("--tau-a0", type=float, default=None, help="firing time of detector A")
    g.add_argument("--config", default=None, help="JSON file with flag-named defaults")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udwpair",
        description="Delta-switched detector pair: states, sweeps, self-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate one parameter point, print JSON")
    _add_model_flags(p_point)

    p_sweep = sub.add_parser("sweep", help="vary one knob over a grid, emit CSV")
    _add_model_flags(p_sweep)
    p_sweep.add_argument("--vary", required=True, choices=VARY_CHOICES, help="knob to sweep")
    p_sweep.add_argument("--from", dest="start", type=float, required=True, help="grid start")
    p_sweep.add_argument("--to", dest="stop", type=float, required=True, help="grid stop")
    p_sweep.add_argument("--steps", type=int, required=True, help="grid size (at least 2)")
    p_sweep.add_argument("--out", default=None, help="CSV path (default: stdout)")

    p_fig = sub.add_parser("figures", help="run a preset sweep bundle, one CSV per curve")
    p_fig.add_argument("which", choices=_FIGURE_CHOICES, help="preset name")
    p_fig.add_argument("--out", default=".", help="output directory (default: .)")

    p_ver = sub.add_parser("verify", help="run the self-check battery")
    p_ver.add_argument("--seed", type=int, default=0, help="draw seed (default 0)")
    p_ver.add_argument("--points", type=int, default=None, help="override per-check draw counts")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "figures":
            return cmd_figures(args.which, args.out)
        if args.command == "verify":
            return cmd_verify(seed=args.seed, points=args.points)
        config = _resolve_config(args)
        if args.command == "point":
            return cmd_point(config)
        spec = SweepSpec(
            vary=args.vary,
            fixed=config.params,
            start=args.start,
            stop=args.stop,
            steps=args.steps,
        )
        return cmd_sweep(config, spec)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
