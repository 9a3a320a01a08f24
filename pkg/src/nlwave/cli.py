"""Command line entry point: ``nlwave run <scenario> [options]``.

Scenarios read a JSON config (``--config``) whose blocks are

    {"scenario": ..., "kernel": {...}, "grid": {"L", "N"},
     "time": {"dt", "T", "sample_every", "profile_every", "blowup_threshold"},
     "solver": {"c", "p", "gamma", "tol", "max_iter"},
     "initial": {"type", "path", "phi_scale", "psi_scale", "literature_velocity"},
     "sweep": {"values", "speeds", "gammas", "N", "reference", "calibrate_speed", "workers"},
     "blowup": {"nu"}, "output": "<dir>", "seed": null}

and command-line flags override individual entries. Every run writes its
files plus ``manifest.json``, whose ``config`` entry is the fully resolved
configuration and can be passed back through ``--config``.

Exit status: 0 on success, 1 on invalid input, 2 when the solver fails to
converge or an evolution blows up unexpectedly.
"""
from __future__ import annotations

import argparse
import copy
import json
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .diagnostics import (
    HBQ_SECH4,
    IBQ_SECH2,
    blowup_hypothesis_check,
    blowup_initial_data,
    calibrate_speed,
    energy_drift,
    reference_eval,
)
from .errors import ConfigError, EarlyTermination, NlwaveError, NotConverged, SpeedTooSlow
from .io import (
    read_field_csv,
    write_csv,
    write_energy_series,
    write_field,
    write_iteration_report,
    write_json,
    write_profile,
    write_timeseries,
)
from .kernels import SinModulated, ensure_admissible, kernel_from_config, parse_kernel, sup_symbol
from .petviashvili import SolitarySolveConfig, solve_solitary
from .spectral import Grid, physical_derivative
from .sweeps import amplitude_speed, convergence_order, default_speeds, gamma_study, kernel_limit_study
from .timestepper import SimConfig, evolve

SCENARIOS = ("solitary", "evolve", "ampspeed", "limit-ibq", "limit-hbq", "blowup", "gamma", "convergence")

_BLOCK_KEYS = {
    "grid": {"L", "N"},
    "time": {"dt", "T", "sample_every", "profile_every", "blowup_threshold"},
    "solver": {"c", "p", "gamma", "tol", "max_iter"},
    "initial": {"type", "path", "phi_scale", "psi_scale", "literature_velocity"},
    "sweep": {"values", "speeds", "gammas", "N", "reference", "calibrate_speed", "workers"},
    "blowup": {"nu"},
}
_TOP_KEYS = {"scenario", "kernel", "output", "seed"} | set(_BLOCK_KEYS)

_NEEDS_KERNEL = {"solitary", "evolve", "ampspeed", "blowup", "gamma"}

_DEFAULTS = {
    "solitary": {"grid": {"L": 100.0, "N": 1024}},
    "evolve": {"grid": {"L": 100.0, "N": 1024},
               "time": {"dt": 0.01, "T": 10.0, "sample_every": 100, "profile_every": 1, "blowup_threshold": 1e3},
               "initial": {"type": "solitary"}},
    "ampspeed": {"grid": {"L": 100.0, "N": 1024}, "sweep": {"speeds": default_speeds()}},
    "limit-ibq": {"grid": {"L": 100.0, "N": 112}, "time": {"dt": 0.01, "T": 10.0},
                  "sweep": {"values": [10.0, 5.0, 1.0, 0.1]}},
    "limit-hbq": {"grid": {"L": 100.0, "N": 1024}, "time": {"dt": 0.01, "T": 10.0},
                  "sweep": {"values": [10.0, 5.0, 1.0, 0.1], "calibrate_speed": True}},
    "blowup": {"grid": {"L": 10.0, "N": 512},
               "time": {"dt": 0.01, "T": 3.0, "sample_every": 1, "profile_every": 10, "blowup_threshold": 1e3},
               "initial": {"type": "blowup", "phi_scale": 1.0, "psi_scale": 1.0}, "blowup": {"nu": 0.25}},
    "gamma": {"grid": {"L": 100.0, "N": 1024}, "sweep": {"gammas": [1.0, 1.5, 2.0, 2.5]}},
    "convergence": {"grid": {"L": 100.0}, "time": {"dt": 1e-3, "T": 1.0},
                    "sweep": {"N": [64, 128, 256, 512], "reference": "ibq"}},
}
_SOLVER_DEFAULTS = {"p": 2, "gamma": 2.0, "tol": 1e-10, "max_iter": 1000}
_COMMON = {"sweep": {"workers": 1}}


def _merge(base, extra):
    out = copy.deepcopy(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _floats(text):
    return [float(s) for s in text.split(",") if s.strip()]


def _flag_overrides(args) -> dict:
    o: dict = {}

    def put(block, key, value):
        if value is not None:
            o.setdefault(block, {})[key] = value

    put("grid", "L", args.L)
    put("grid", "N", args.N)
    put("time", "dt", args.dt)
    put("time", "T", args.T)
    put("time", "sample_every", args.sample_every)
    put("time", "profile_every", args.profile_every)
    put("time", "blowup_threshold", args.threshold)
    put("solver", "c", args.c)
    put("solver", "p", args.p)
    put("solver", "gamma", args.gamma)
    put("solver", "tol", args.tol)
    put("solver", "max_iter", args.max_iter)
    put("initial", "type", args.init)
    put("sweep", "workers", args.workers)
    put("blowup", "nu", args.nu)
    if args.values is not None:
        key = {"ampspeed": "speeds", "gamma": "gammas", "convergence": "N"}.get(args.scenario, "values")
        vals = _floats(args.values)
        put("sweep", key, [int(v) for v in vals] if key == "N" else vals)
    if args.kernel is not None:
        o["kernel"] = parse_kernel(args.kernel)
    if args.out is not None:
        o["output"] = args.out
    if args.seed is not None:
        o["seed"] = args.seed
    return o


def _load_config(path) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}", key="config")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}", key="config")
    if isinstance(raw, dict) and "manifest_version" in raw:
        raw = raw["config"]
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object", key="config")
    return raw


def resolve_config(scenario: str, file_cfg: dict, overrides: dict) -> dict:
    """Merge defaults, config file and flags, then validate keys."""
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}", key="scenario")
    if file_cfg.get("scenario", scenario) != scenario:
        raise ConfigError(f"config is for scenario {file_cfg['scenario']!r}, not {scenario!r}", key="scenario")
    cfg = _merge(_COMMON, _DEFAULTS[scenario])
    if scenario in ("solitary", "evolve", "ampspeed", "gamma"):
        cfg = _merge(cfg, {"solver": _SOLVER_DEFAULTS})
    cfg = _merge(cfg, file_cfg)
    cfg = _merge(cfg, overrides)
    cfg["scenario"] = scenario
    cfg.setdefault("output", f"out/{scenario}")
    cfg.setdefault("seed", None)

    unknown = set(cfg) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}", key=sorted(unknown)[0])
    for block, allowed in _BLOCK_KEYS.items():
        if block in cfg:
            if not isinstance(cfg[block], dict):
                raise ConfigError(f"{block} block must be an object", key=block)
            extra = set(cfg[block]) - allowed
            if extra:
                raise ConfigError(f"unknown keys in {block}: {sorted(extra)}", key=f"{block}.{sorted(extra)[0]}")
    if scenario in _NEEDS_KERNEL and "kernel" not in cfg:
        raise ConfigError(f"scenario {scenario} requires a kernel block", key="kernel")
    if scenario not in _NEEDS_KERNEL and "kernel" in cfg:
        raise ConfigError(f"scenario {scenario} fixes its own kernel family; remove the kernel block", key="kernel")
    if "kernel" in cfg:
        cfg["kernel"] = kernel_from_config(cfg["kernel"]).to_config()
    return cfg


def _need(cfg, block, key):
    try:
        return cfg[block][key]
    except KeyError:
        raise ConfigError(f"missing {block}.{key}", key=f"{block}.{key}")


def _grid(cfg) -> Grid:
    try:
        return Grid(float(_need(cfg, "grid", "L")), int(_need(cfg, "grid", "N")))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc), key="grid")


def _solve_cfg(cfg, grid, c=None) -> SolitarySolveConfig:
    s = cfg["solver"]
    if c is None:
        c = _need(cfg, "solver", "c")
    guess = np.exp(-grid.nodes**2)
    try:
        return SolitarySolveConfig(c=float(c), initial_guess=guess, p=int(s["p"]), gamma=float(s["gamma"]),
                                   tol=float(s["tol"]), max_iter=int(s["max_iter"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), key="solver")


def _sim_cfg(cfg, grid, kernel, p=2) -> SimConfig:
    t = cfg["time"]
    try:
        return SimConfig(grid=grid, kernel=kernel, p=p, dt=float(_need(cfg, "time", "dt")),
                         t_end=float(_need(cfg, "time", "T")), sample_every=int(t.get("sample_every", 1)),
                         blowup_threshold=float(t.get("blowup_threshold", 1e3)))
    except ValueError as exc:
        if isinstance(exc, NlwaveError):
            raise
        raise ConfigError(str(exc), key="time")


class _Run:
    """Collects written files relative to the output directory."""

    def __init__(self, out: Path):
        self.out = out
        self.files: list = []
        self.result: dict = {}
        self.status = 0
        self.error = None

    def add(self, path: Path):
        self.files.append(str(path.relative_to(self.out)))
        return path


def _check_speed(kernel, grid, c):
    top = sup_symbol(kernel, grid)
    if not c * c > top:
        raise SpeedTooSlow(f"c^2 = {c * c:.6g} must exceed max beta_hat = {top:.6g} on the grid")


def _prepare(cfg):
    """Validate everything and return a zero-argument callable doing the work."""
    scenario = cfg["scenario"]
    kernel = kernel_from_config(cfg["kernel"]) if "kernel" in cfg else None
    if scenario != "convergence":
        grid = _grid(cfg)
        if kernel is not None:
            ensure_admissible(kernel, grid)

    if scenario == "solitary":
        scfg = _solve_cfg(cfg, grid)
        _check_speed(kernel, grid, scfg.c)
        return lambda run: _run_solitary(run, kernel, grid, scfg)

    if scenario == "evolve":
        sim = _sim_cfg(cfg, grid, kernel, p=int(cfg["solver"]["p"]))
        init = cfg["initial"]
        itype = init.get("type", "solitary")
        if itype == "solitary":
            scfg = _solve_cfg(cfg, grid)
            _check_speed(kernel, grid, scfg.c)
        elif itype in ("ibq", "hbq", "blowup"):
            scfg = None
        elif itype == "csv":
            _need(cfg, "initial", "path")
            scfg = None
        else:
            raise ConfigError(f"unknown initial type {itype!r}", key="initial.type")
        profile_every = int(cfg["time"].get("profile_every", 1))
        return lambda run: _run_evolve(run, kernel, grid, sim, init, scfg, profile_every)

    if scenario == "ampspeed":
        speeds = [float(c) for c in _need(cfg, "sweep", "speeds")]
        if not speeds:
            raise ConfigError("speed list is empty", key="sweep.speeds")
        scfg = _solve_cfg(cfg, grid, c=speeds[0])
        workers = int(cfg["sweep"].get("workers", 1))
        return lambda run: _run_ampspeed(run, kernel, grid, speeds, scfg, workers)

    if scenario == "gamma":
        gammas = [float(g) for g in _need(cfg, "sweep", "gammas")]
        if not gammas or any(g <= 0 for g in gammas):
            raise ConfigError("gamma list must be nonempty and positive", key="sweep.gammas")
        scfg = _solve_cfg(cfg, grid)
        _check_speed(kernel, grid, scfg.c)
        workers = int(cfg["sweep"].get("workers", 1))
        return lambda run: _run_gamma(run, kernel, grid, gammas, scfg, workers)

    if scenario in ("limit-ibq", "limit-hbq"):
        values = [float(v) for v in _need(cfg, "sweep", "values")]
        if not values or any(v < 0 for v in values):
            raise ConfigError("parameter values must be nonempty and nonnegative", key="sweep.values")
        family = "sin" if scenario == "limit-ibq" else "rational"
        dt = float(_need(cfg, "time", "dt"))
        t_end = float(_need(cfg, "time", "T"))
        for v in values:  # build every kernel up front so bad values fail before any run
            if v > 0:
                k = SinModulated(eta=v) if family == "sin" else kernel_from_config(
                    {"family": "rational", "params": {"mu": v}})
                ensure_admissible(k, grid)
        workers = int(cfg["sweep"].get("workers", 1))
        calibrate = bool(cfg["sweep"].get("calibrate_speed", False))
        return lambda run: _run_limit(run, family, values, grid, dt, t_end, calibrate, workers)

    if scenario == "blowup":
        if not isinstance(kernel, SinModulated) and cfg["sweep"].get("values"):
            raise ConfigError("blowup eta sweep needs a sin kernel", key="sweep.values")
        kernels = [kernel]
        if cfg["sweep"].get("values"):
            kernels = [SinModulated(eta=float(v)) for v in cfg["sweep"]["values"]]
        sims = [_sim_cfg(cfg, grid, k) for k in kernels]
        nu = float(cfg["blowup"]["nu"])
        init = cfg["initial"]
        profile_every = int(cfg["time"].get("profile_every", 0))
        return lambda run: _run_blowup(run, sims, init, nu, profile_every)

    # convergence
    ns = [int(n) for n in _need(cfg, "sweep", "N")]
    if any(n % 2 or n < 4 for n in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ConfigError("N values must be even, >= 4 and increasing", key="sweep.N")
    refname = cfg["sweep"].get("reference", "ibq")
    if refname not in ("ibq", "hbq"):
        raise ConfigError("reference must be 'ibq' or 'hbq'", key="sweep.reference")
    ref = IBQ_SECH2 if refname == "ibq" else HBQ_SECH4
    half_length = float(_need(cfg, "grid", "L"))
    dt = float(_need(cfg, "time", "dt"))
    t_end = float(_need(cfg, "time", "T"))
    workers = int(cfg["sweep"].get("workers", 1))
    return lambda run: _run_convergence(run, ns, ref, half_length, dt, t_end, workers)


def _run_solitary(run, kernel, grid, scfg):
    try:
        phi, report = solve_solitary(kernel, grid, scfg)
    except NotConverged as exc:
        phi, report = exc.profile, exc.report
        run.status = 2
        run.error = exc
    run.add(write_profile(run.out / "profile.csv", grid, phi))
    run.add(write_iteration_report(run.out / "residuals.csv", report))
    run.result = {"converged": report.converged, "iterations": report.iterations_used,
                  "final_residual": report.final_residual, "amplitude": float(np.max(phi))}
    return phi


def _write_trajectory(run, traj, kernel, grid, p, profile_every, suffix=""):
    times, drifts, breakdowns = energy_drift(traj, kernel, grid, p)
    sups = [float(np.max(np.abs(s.u))) for s in traj.samples]
    run.add(write_timeseries(run.out / f"timeseries{suffix}.csv", times, sups,
                             [b.total for b in breakdowns], drifts))
    run.add(write_energy_series(run.out / f"energy{suffix}.csv", times, breakdowns, drifts))
    if profile_every > 0:
        for i, s in enumerate(traj.samples):
            if i % profile_every == 0 or i == len(traj.samples) - 1:
                run.add(write_field(run.out / f"profiles{suffix}" / f"profile_{i:05d}.csv", grid, s.u, s.v))
    return float(np.max(drifts)) if len(drifts) else 0.0


def _initial_fields(run, kernel, grid, init, scfg):
    itype = init.get("type", "solitary")
    literature_velocity = bool(init.get("literature_velocity", False))
    if itype == "solitary":
        phi = _run_solitary(run, kernel, grid, scfg)
        return phi, -scfg.c * physical_derivative(grid, phi)
    if itype == "ibq":
        return reference_eval(IBQ_SECH2, grid, 0.0, literature_velocity=literature_velocity)
    if itype == "hbq":
        return reference_eval(HBQ_SECH4, grid, 0.0, literature_velocity=literature_velocity)
    if itype == "blowup":
        return blowup_initial_data(grid, float(init.get("phi_scale", 1.0)), float(init.get("psi_scale", 1.0)))
    header, cols = read_field_csv(init["path"])
    if "u" not in cols or len(cols["u"]) != grid.n_points:
        raise ConfigError("initial CSV needs a 'u' column with N rows", key="initial.path")
    return cols["u"], cols.get("v", np.zeros(grid.n_points))


def _run_evolve(run, kernel, grid, sim, init, scfg, profile_every):
    u0, v0 = _initial_fields(run, kernel, grid, init, scfg)
    if run.status:
        return
    traj = evolve(u0, v0, sim)
    max_drift = _write_trajectory(run, traj, kernel, grid, sim.p, profile_every)
    run.result.update({"terminated_early": traj.terminated_early, "crossing_time": traj.crossing_time,
                       "final_time": traj.final.time, "max_energy_drift": max_drift, "dt": sim.dt})
    if traj.terminated_early:
        run.status = 2
        run.error = EarlyTermination(f"evolution terminated early ({traj.terminated_early}) at t={traj.crossing_time!r}")


def _run_ampspeed(run, kernel, grid, speeds, scfg, workers):
    rows = amplitude_speed(kernel, grid, speeds, scfg, workers=workers)
    header = ["c", "amplitude", "converged", "iterations", "residual", "error", "kernel", "gamma", "p", "L", "N"]
    run.add(write_csv(run.out / "ampspeed.csv", header,
                      ((r.c, r.amplitude, r.converged, r.iterations, r.residual, r.error, r.kernel, r.gamma, r.p,
                        r.half_length, r.n_points) for r in rows)))
    run.result = {"n_converged": sum(r.converged for r in rows), "n_speeds": len(rows)}


def _run_gamma(run, kernel, grid, gammas, scfg, workers):
    rows = gamma_study(gammas, kernel, grid, scfg, workers=workers)
    header = ["gamma", "iterations", "converged", "kernel", "c", "L", "N"]
    run.add(write_csv(run.out / "gamma.csv", header,
                      ((r.gamma, r.iterations, r.converged, r.kernel, r.c, r.half_length, r.n_points)
                       for r in rows)))
    run.add(write_csv(run.out / "gamma_residuals.csv", ["gamma", "iter", "residual"],
                      ((r.gamma, i, res) for r in rows for i, res in enumerate(r.residuals))))
    done = [r for r in rows if r.converged]
    run.result = {"fastest_gamma": min(done, key=lambda r: r.iterations).gamma if done else None}


def _run_limit(run, family, values, grid, dt, t_end, calibrate, workers):
    ref = IBQ_SECH2 if family == "sin" else HBQ_SECH4
    if calibrate:
        ref = ref.with_speed(calibrate_speed(ref, grid))
    rows = kernel_limit_study(family, values, ref, grid, dt=dt, t_end=t_end, workers=workers)
    header = ["param", "linf_at_T", "terminated_early", "kernel", "reference", "speed", "T", "dt", "L", "N"]
    run.add(write_csv(run.out / "limit.csv", header,
                      ((r.param, r.linf_at_T, r.terminated_early, r.kernel, r.reference, r.speed, r.t_end, r.dt,
                        r.half_length, r.n_points) for r in rows)))
    run.result = {"reference_speed": ref.speed}


def _run_blowup(run, sims, init, nu, profile_every):
    entries = []
    for sim in sims:
        grid, kernel = sim.grid, sim.kernel
        phi, psi = _initial_fields(run, kernel, grid, init, None)
        hyp = blowup_hypothesis_check(phi, psi, kernel, grid, sim.p, nu)
        traj = evolve(phi, psi, sim)
        suffix = f"_{kernel.label().replace(':', '_')}" if len(sims) > 1 else ""
        _write_trajectory(run, traj, kernel, grid, sim.p, profile_every, suffix)
        entries.append({"kernel": kernel.to_config(), "crossing_time": traj.crossing_time,
                        "terminated_early": traj.terminated_early, "hypothesis": hyp.to_dict()})
    run.add(write_json(run.out / "blowup_report.json", {"runs": entries}))
    run.result = {"crossing_times": [e["crossing_time"] for e in entries]}


def _run_convergence(run, ns, ref, half_length, dt, t_end, workers):
    report = convergence_order(ns, ref, half_length, dt=dt, t_end=t_end, workers=workers)
    header = ["N", "linf_error", "floor_estimate", "at_floor", "L", "dt", "T"]
    run.add(write_csv(run.out / "convergence.csv", header,
                      ((r.n_points, r.linf_error, r.floor_estimate, r.at_floor, r.half_length, r.dt, r.t_end)
                       for r in report.rows)))
    run.result = {"reduction_factors": report.reduction_factors, "floor_reached_at": report.floor_reached_at,
                  "spectral_pairs_ok": report.spectral_pairs_ok()}


def run_scenario(cfg: dict) -> int:
    """Execute a resolved config, write files and the manifest; return exit status."""
    work = _prepare(cfg)
    out = Path(cfg["output"])
    out.mkdir(parents=True, exist_ok=True)
    run = _Run(out)
    start = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        work(run)
    elapsed = time.perf_counter() - start
    write_json(out / "manifest.json", {
        "manifest_version": 1,
        "nlwave_version": __version__,
        "scenario": cfg["scenario"],
        "config": cfg,
        "wall_clock_seconds": elapsed,
        "files": run.files,
        "result": run.result,
        "exit_status": run.status,
        "warnings": [str(w.message) for w in caught],
    })
    if run.error is not None:
        print(_error_line(run.error, caught), file=sys.stderr)
    return run.status


def _error_line(exc, caught=()) -> str:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if caught:
        payload["warnings"] = [str(w.message) for w in caught]
    key = getattr(exc, "key", None)
    if key is not None:
        payload["key"] = key
    return json.dumps(payload, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlwave", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nlwave {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario")
    run.add_argument("scenario", choices=SCENARIOS)
    run.add_argument("--config", help="JSON config or a previous manifest.json")
    run.add_argument("--out", help="output directory")
    run.add_argument("--L", type=float, help="half length of the domain [-L, L]")
    run.add_argument("--N", type=int, help="number of grid points")
    run.add_argument("--dt", type=float)
    run.add_argument("--T", type=float, help="final time")
    run.add_argument("--kernel", help="family[:name=value,...], e.g. sin:eta=1")
    run.add_argument("--c", type=float, help="wave speed")
    run.add_argument("--p", type=int, help="nonlinearity power")
    run.add_argument("--gamma", type=float, help="stabilisation exponent")
    run.add_argument("--tol", type=float)
    run.add_argument("--max-iter", dest="max_iter", type=int)
    run.add_argument("--values", help="comma-separated sweep values")
    run.add_argument("--init", choices=("solitary", "ibq", "hbq", "blowup", "csv"))
    run.add_argument("--sample-every", dest="sample_every", type=int)
    run.add_argument("--profile-every", dest="profile_every", type=int)
    run.add_argument("--threshold", type=float, help="blow-up sup-norm threshold")
    run.add_argument("--nu", type=float)
    run.add_argument("--workers", type=int)
    run.add_argument("--seed", type=int, help="reserved; all scenarios are deterministic")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    # warnings go to the manifest or the error payload so stderr stays one JSON line
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            file_cfg = _load_config(args.config) if args.config else {}
            cfg = resolve_config(args.scenario, file_cfg, _flag_overrides(args))
            return run_scenario(cfg)
        except NotConverged as exc:
            print(_error_line(exc, caught), file=sys.stderr)
            return 2
        except (NlwaveError, ValueError, TypeError, OSError) as exc:
            print(_error_line(exc, caught), file=sys.stderr)
            return 1


if __name__ == "__main__":
    sys.exit(main())
