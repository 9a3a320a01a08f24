"""Parameter sweeps over the solitary-wave solver and the evolution scheme.

Each sweep maps a list of parameter values to an ordered list of rows,
one per value, in input order. Entries are independent, so ``workers > 1``
evaluates them on a thread pool without changing the output.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .diagnostics import ReferenceSolution, linf_distance, reference_eval
from .errors import NlwaveError, NotConverged
from .kernels import KernelSpec, RationalMix, SinModulated
from .petviashvili import SolitarySolveConfig, solve_solitary
from .spectral import Grid
from .timestepper import SimConfig, evolve

__all__ = [
    "AmplitudeSpeedRow",
    "KernelLimitRow",
    "GammaRow",
    "ConvergenceRow",
    "ConvergenceReport",
    "amplitude_speed",
    "kernel_limit_study",
    "gamma_study",
    "convergence_order",
    "default_speeds",
]


def _map(fn, items, workers):
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def default_speeds():
    """1.02, 1.04, ..., 1.30."""
    return [round(1.0 + 0.02 * i, 10) for i in range(1, 16)]


@dataclass(frozen=True)
class AmplitudeSpeedRow:
    c: float
    amplitude: float
    converged: bool
    iterations: int
    residual: float
    error: str
    kernel: str
    gamma: float
    p: int
    half_length: float
    n_points: int


def amplitude_speed(kernel: KernelSpec, grid: Grid, speeds: Sequence[float],
                    solve_cfg: SolitarySolveConfig, workers: Optional[int] = None):
    """Peak amplitude of the computed solitary wave for each speed.

    Speeds that fail (too slow, not converged, diverged) still produce a
    row, with ``converged=False`` and the error name in ``error``.
    """

    def one(c):
        cfg = replace(solve_cfg, c=float(c))
        common = dict(kernel=kernel.label(), gamma=cfg.gamma, p=cfg.p,
                      half_length=grid.half_length, n_points=grid.n_points)
        try:
            phi, report = solve_solitary(kernel, grid, cfg)
        except NotConverged as exc:
            rep = exc.report
            return AmplitudeSpeedRow(float(c), float(np.max(exc.profile)), False, rep.iterations_used,
                                     rep.final_residual, "NotConverged", **common)
        except NlwaveError as exc:
            return AmplitudeSpeedRow(float(c), float("nan"), False, 0, float("nan"),
                                     type(exc).__name__, **common)
        return AmplitudeSpeedRow(float(c), float(np.max(phi)), True, report.iterations_used,
                                 report.final_residual, "", **common)

    return _map(one, speeds, workers)


@dataclass(frozen=True)
class KernelLimitRow:
    param: float
    linf_at_T: float
    terminated_early: str
    kernel: str
    reference: str
    speed: float
    t_end: float
    dt: float
    half_length: float
    n_points: int


_LIMIT_FAMILIES = {"sin": ("IBqSech2", SinModulated, "eta"), "rational": ("HBqSech4", RationalMix, "mu")}


def kernel_limit_study(family: str, values: Sequence[float], reference: ReferenceSolution, grid: Grid,
                       dt: float = 0.01, t_end: float = 10.0, p: int = 2,
                       workers: Optional[int] = None):
    """Distance at ``t_end`` between a perturbed-kernel run and the reference wave.

    ``family`` is ``"sin"`` (paired with the IBq sech^2 wave) or
    ``"rational"`` (paired with the HBq sech^4 wave). A parameter value of
    zero runs the reference's own kernel, measuring the scheme's error.
    """
    if family not in _LIMIT_FAMILIES:
        raise ValueError(f"family must be one of {sorted(_LIMIT_FAMILIES)}")
    ref_family, cls, pname = _LIMIT_FAMILIES[family]
    if reference.family != ref_family:
        raise ValueError(f"{family} kernels pair with {ref_family}, not {reference.family}")
    u0, v0 = reference_eval(reference, grid, 0.0)
    u_ref, _ = reference_eval(reference, grid, t_end)

    def one(value):
        value = float(value)
        kernel = reference.kernel if value == 0 else cls(**{pname: value})
        cfg = SimConfig(grid=grid, kernel=kernel, p=p, dt=dt, t_end=t_end,
                        sample_every=10**9, blowup_threshold=1e6)
        traj = evolve(u0, v0, cfg)
        if traj.terminated_early:
            dist = float("inf")
        else:
            dist = linf_distance(traj.final.u, u_ref)
        return KernelLimitRow(value, dist, traj.terminated_early or "", kernel.label(), reference.family,
                              reference.speed, t_end, cfg.dt, grid.half_length, grid.n_points)

    return _map(one, values, workers)


@dataclass(frozen=True)
class GammaRow:
    gamma: float
    iterations: int
    converged: bool
    residuals: tuple
    kernel: str
    c: float
    half_length: float
    n_points: int


def gamma_study(gammas: Sequence[float], kernel: KernelSpec, grid: Grid, solve_cfg: SolitarySolveConfig,
                workers: Optional[int] = None):
    """Iterations to tolerance for each stabilisation exponent."""
    for g in gammas:
        if not g > 0:
            raise ValueError("gamma values must be positive")

    def one(g):
        cfg = replace(solve_cfg, gamma=float(g))
        try:
            _, report = solve_solitary(kernel, grid, cfg)
        except NotConverged as exc:
            report = exc.report
        except NlwaveError:
            return GammaRow(float(g), 0, False, (), kernel.label(), cfg.c, grid.half_length, grid.n_points)
        return GammaRow(float(g), report.iterations_used, report.converged, tuple(report.residuals),
                        kernel.label(), cfg.c, grid.half_length, grid.n_points)

    return _map(one, gammas, workers)


@dataclass(frozen=True)
class ConvergenceRow:
    n_points: int
    linf_error: float
    floor_estimate: float
    at_floor: bool
    half_length: float
    dt: float
    t_end: float


@dataclass
class ConvergenceReport:
    rows: list

    @property
    def reduction_factors(self) -> list:
        """Error ratio coarse/fine for each consecutive pair (empty for one row)."""
        out = []
        for a, b in zip(self.rows, self.rows[1:]):
            out.append(a.linf_error / b.linf_error if b.linf_error > 0 else float("inf"))
        return out

    def spectral_pairs_ok(self, factor: float = 10.0) -> bool:
        """Every refinement above the floor reduces the error by ``factor`` or reaches the floor."""
        for a, b, ratio in zip(self.rows, self.rows[1:], self.reduction_factors):
            if a.at_floor:
                continue
            if not (ratio >= factor or b.at_floor):
                return False
        return True

    @property
    def floor_reached_at(self) -> Optional[int]:
        for row in self.rows:
            if row.at_floor:
                return row.n_points
        return None


def convergence_order(n_values: Sequence[int], reference, half_length: float, dt: float = 1e-3,
                      t_end: float = 1.0, p: int = 2, floor_factor: float = 10.0,
                      workers: Optional[int] = None) -> ConvergenceReport:
    """L-infinity error against a closed-form wave for a sequence of resolutions.

    ``reference`` needs ``kernel`` and ``evaluate(grid, t)``. The floor
    estimate combines the Richardson estimate of the time error, from a
    companion run at ``2 dt``, with a round-off allowance of ``100 eps``
    times the solution size; a row is at the floor when its error is within
    ``floor_factor`` of that estimate.
    """
    n_values = [int(n) for n in n_values]
    if not n_values:
        raise ValueError("need at least one resolution")
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("resolutions must be increasing")

    def one(n):
        grid = Grid(half_length, n)
        u0, v0 = reference.evaluate(grid, 0.0)
        u_exact, _ = reference.evaluate(grid, t_end)
        cfg = SimConfig(grid=grid, kernel=reference.kernel, p=p, dt=dt, t_end=t_end,
                        sample_every=10**9, blowup_threshold=1e6)
        coarse = replace(cfg, dt=2 * cfg.dt)
        u = evolve(u0, v0, cfg).final.u
        u2 = evolve(u0, v0, coarse).final.u
        time_err = linf_distance(u, u2) / 15.0
        roundoff = 100 * np.finfo(float).eps * max(float(np.max(np.abs(u_exact))), 1e-300)
        floor = max(time_err, roundoff)
        err = linf_distance(u, u_exact)
        return ConvergenceRow(n, err, floor, bool(err <= floor_factor * floor), half_length, cfg.dt, t_end)

    return ConvergenceReport(_map(one, n_values, workers))
