"""Command-line front end: trajectory scenarios, ESD solvers and steady-state
sweeps, all emitted as CSV with deterministic 17-significant-digit formatting."""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .dynamics import (
    esd_time_thermal,
    esd_time_zero_temp,
    evolve,
    steady_correlations_thermal,
)
from .errors import (
    CrossCheckFailure,
    DegenerateParams,
    DomainError,
    NoDeath,
    NotHermitian,
    NotPSD,
    NotXShaped,
    StepRejected,
    TraceNotOne,
)
from .model import ModelParams
from .states import loads_density_matrix, make_mixture, make_werner, purity, validate

EVOLVE_HEADER = "t,gamma_t,concurrence,negativity,log_negativity,lqu,min,ccc,l1_coherence,purity"
STEADY_COLUMNS = "concurrence,log_negativity,lqu,min,ccc"

_CONFIG_ERRORS = (DomainError, DegenerateParams, NotXShaped, NotHermitian, TraceNotOne, NotPSD)


@dataclass(frozen=True)
class ScenarioConfig:
    """Parsed evolve-scenario settings."""

    params: ModelParams
    initial: str
    t_max: float
    dt: float
    stride: int
    out: str | None


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_output(out: str | None, text: str):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _parse_sweep(spec: str, allowed: tuple[str, ...]) -> tuple[str, np.ndarray]:
    parts = spec.split(":")
    if len(parts) != 4:
        raise DomainError(f"sweep must be NAME:START:STOP:COUNT, got {spec!r}")
    name, start, stop, count = parts
    if name not in allowed:
        raise DomainError(f"sweep parameter must be one of {allowed}, got {name!r}")
    n = int(count)
    if n < 1:
        raise DomainError(f"sweep count must be >= 1, got {n}")
    return name, np.linspace(float(start), float(stop), n)


def _initial_state(selector: str) -> np.ndarray:
    if selector.startswith("mixture:"):
        return make_mixture(float(selector.split(":", 1)[1])).to_matrix()
    if selector.startswith("werner:"):
        return make_werner(float(selector.split(":", 1)[1])).to_matrix()
    if selector.startswith("custom@"):
        path = selector.split("@", 1)[1]
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise DomainError(f"cannot read initial-state file {path!r}: {exc}") from exc
        try:
            rho = loads_density_matrix(text)
        except ValueError as exc:
            raise DomainError(f"malformed initial-state file {path!r}: {exc}") from exc
        return validate(rho)
    raise DomainError(
        f"initial state must be mixture:W, werner:P or custom@FILE, got {selector!r}"
    )


def _sweep_map(func, values):
    workers = min(8, max(1, len(values)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, values))


def cmd_evolve(args) -> int:
    config = ScenarioConfig(
        params=ModelParams(j=args.j, delta=args.delta, omega=args.omega,
                           gamma=args.gamma, nbar=args.nbar),
        initial=args.initial,
        t_max=args.t_max,
        dt=args.dt,
        stride=args.stride,
        out=args.out,
    )
    rho0 = _initial_state(config.initial)
    traj = evolve(rho0, config.params, t_max=config.t_max, dt=config.dt, stride=config.stride)

    lines = [EVOLVE_HEADER]
    for t, mat, cs in zip(traj.times, traj.states, traj.correlations):
        violation = cs.range_violation()
        if violation is not None:
            raise StepRejected(float(t), f"correlation range violation: {violation}")
        row = (
            t,
            config.params.gamma * t,
            cs.concurrence,
            cs.negativity,
            cs.log_negativity,
            cs.lqu,
            cs.min_trace,
            cs.correlated_coherence,
            cs.l1_coherence,
            purity(mat),
        )
        lines.append(",".join(_fmt(v) for v in row))
    _write_output(config.out, "\n".join(lines) + "\n")
    return 0


def _esd_value(w: float, gamma: float, nbar: float, mode: str) -> float:
    if mode == "auto":
        mode = "closed" if nbar == 0.0 else "numeric"
    if mode == "closed":
        if nbar != 0.0:
            raise DomainError("the closed-form death time is defined at nbar = 0")
        return esd_time_zero_temp(w, gamma).death_time
    try:
        return esd_time_thermal(w, gamma, nbar).death_time
    except NoDeath:
        return math.inf


def cmd_esd(args) -> int:
    if args.sweep is not None:
        name, values = _parse_sweep(args.sweep, allowed=("w", "nbar"))

        def one(v: float) -> float:
            w = v if name == "w" else args.w
            nb = v if name == "nbar" else args.nbar
            return _esd_value(w, args.gamma, nb, args.mode)

        results = _sweep_map(one, values)
        lines = [f"{name},gamma_tau"]
        lines += [f"{_fmt(v)},{_fmt(r)}" for v, r in zip(values, results)]
        _write_output(args.out, "\n".join(lines) + "\n")
    else:
        value = _esd_value(args.w, args.gamma, args.nbar, args.mode)
        _write_output(args.out, f"gamma_tau = {_fmt(value)}\n")
    return 0


def cmd_steady(args) -> int:
    base = ModelParams(j=args.j, delta=args.delta, omega=args.omega,
                       gamma=args.gamma, nbar=args.nbar)
    if args.sweep is not None:
        name, values = _parse_sweep(args.sweep, allowed=("nbar", "delta"))
        rows = _sweep_map(
            lambda v: steady_correlations_thermal(replace(base, **{name: float(v)})),
            values,
        )
    else:
        name, values, rows = "nbar", [base.nbar], [steady_correlations_thermal(base)]

    lines = [f"{name},{STEADY_COLUMNS}"]
    for v, cs in zip(values, rows):
        lines.append(",".join(_fmt(x) for x in (
            v, cs.concurrence, cs.log_negativity, cs.lqu, cs.min_trace,
            cs.correlated_coherence,
        )))
    _write_output(args.out, "\n".join(lines) + "\n")
    return 0


def _add_model_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--gamma", type=float, default=0.1, help="relaxation rate (units of omega)")
    parser.add_argument("--delta", type=float, default=0.5, help="anisotropic coupling")
    parser.add_argument("--j", type=float, default=0.1, help="isotropic coupling")
    parser.add_argument("--omega", type=float, default=1.0, help="field strength / reference scale")
    parser.add_argument("--nbar", type=float, default=0.0, help="mean thermal excitation")
    parser.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorr",
        description="Two-qubit XY-model decoherence: trajectories, ESD times and steady states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_evolve = sub.add_parser("evolve", help="integrate a scenario and emit correlation columns")
    _add_model_flags(p_evolve)
    p_evolve.add_argument("--initial", default="mixture:0.5",
                          help="mixture:W | werner:P | custom@FILE")
    p_evolve.add_argument("--t-max", type=float, default=100.0, dest="t_max")
    p_evolve.add_argument("--dt", type=float, default=1e-3)
    p_evolve.add_argument("--stride", type=int, default=100, help="sampling interval in steps")
    p_evolve.set_defaults(func=cmd_evolve)

    p_esd = sub.add_parser("esd", help="entanglement death time for decaying mixtures")
    _add_model_flags(p_esd)
    p_esd.add_argument("--w", type=float, default=0.5, help="mixture weight")
    p_esd.add_argument("--mode", choices=("auto", "closed", "numeric"), default="auto")
    p_esd.add_argument("--sweep", default=None, help="w:START:STOP:COUNT or nbar:START:STOP:COUNT")
    p_esd.set_defaults(func=cmd_esd)

    p_steady = sub.add_parser("steady", help="steady-state correlations, optionally swept")
    _add_model_flags(p_steady)
    p_steady.add_argument("--sweep", default=None,
                          help="nbar:START:STOP:COUNT or delta:START:STOP:COUNT")
    p_steady.set_defaults(func=cmd_steady)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CONFIG_ERRORS as exc:
        print(f"qcorr: configuration error: {exc}", file=sys.stderr)
        return 2
    except (StepRejected, CrossCheckFailure) as exc:
        print(f"qcorr: run failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
