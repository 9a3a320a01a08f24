"""Pseudo-spectral right-hand side and classical RK4 evolution.

In Fourier space the equation becomes the ODE system

    d u_hat/dt = v_hat
    d v_hat/dt = -kappa^2 beta_hat(kappa) [u_hat + (u^p)_hat]

with the power formed nodewise in physical space.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import NonFiniteState
from .kernels import KernelSpec, ensure_admissible
from .spectral import Grid, forward, inverse

__all__ = [
    "SimConfig",
    "EvolutionState",
    "Sample",
    "Trajectory",
    "rhs",
    "rk4_step",
    "evolve",
    "BLOWUP",
    "NONFINITE",
]

BLOWUP = "Blowup"
NONFINITE = "NonFinite"


@dataclass(frozen=True)
class SimConfig:
    """Fixed-step evolution settings.

    ``dt`` is adjusted so that an integer number of steps lands exactly on
    ``t_end`` (the adjustment is idempotent).
    """

    grid: Grid
    kernel: KernelSpec
    p: int = 2
    dt: float = 0.01
    t_end: float = 1.0
    sample_every: int = 100
    blowup_threshold: float = 1e3
    nonlinear: bool = True

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 2:
            raise ValueError(f"p must be an integer >= 2, got {self.p!r}")
        if not (self.dt > 0 and self.t_end > 0):
            raise ValueError("dt and t_end must be positive")
        if int(self.sample_every) != self.sample_every or self.sample_every < 1:
            raise ValueError("sample_every must be a positive integer")
        if not self.blowup_threshold > 0:
            raise ValueError("blowup_threshold must be positive")
        ensure_admissible(self.kernel, self.grid)
        n = max(1, int(round(self.t_end / self.dt)))
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "sample_every", int(self.sample_every))
        object.__setattr__(self, "dt", self.t_end / n)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    @cached_property
    def multiplier(self) -> np.ndarray:
        """``-kappa^2 beta_hat(kappa)`` on the grid."""
        kappa = self.grid.wavenumbers
        m = -(kappa**2) * self.kernel.symbol(kappa)
        m.flags.writeable = False
        return m


@dataclass
class EvolutionState:
    u_hat: np.ndarray
    v_hat: np.ndarray
    time: float = 0.0

    @classmethod
    def from_physical(cls, grid: Grid, u, v, time: float = 0.0) -> "EvolutionState":
        return cls(forward(grid, u), forward(grid, v), time)


@dataclass(frozen=True)
class Sample:
    time: float
    u: np.ndarray
    v: np.ndarray


@dataclass
class Trajectory:
    """Samples of an evolution plus per-step sup-norm history.

    ``terminated_early`` is ``None`` for a complete run, otherwise
    ``"Blowup"`` (threshold crossed) or ``"NonFinite"``. ``crossing_time``
    is the threshold crossing linearly interpolated between steps.
    """

    samples: list = field(default_factory=list)
    step_times: list = field(default_factory=list)
    sup_norms: list = field(default_factory=list)
    dc_u: list = field(default_factory=list)
    dc_v: list = field(default_factory=list)
    terminated_early: Optional[str] = None
    crossing_time: Optional[float] = None

    @property
    def final(self) -> Sample:
        return self.samples[-1]


def _require_finite(*arrays):
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise NonFiniteState("state contains NaN or Inf")


def _power_hat(grid: Grid, u_hat, p: int):
    u = inverse(grid, u_hat)
    return forward(grid, u**p)


def rhs(state: EvolutionState, cfg: SimConfig):
    """Time derivatives ``(du_hat, dv_hat)`` of the semi-discrete system."""
    _require_finite(state.u_hat, state.v_hat)
    forcing = state.u_hat
    if cfg.nonlinear:
        forcing = forcing + _power_hat(cfg.grid, state.u_hat, cfg.p)
    return state.v_hat.copy(), cfg.multiplier * forcing


def _rk4(u_hat, v_hat, dt, f):
    k1u, k1v = f(u_hat, v_hat)
    k2u, k2v = f(u_hat + 0.5 * dt * k1u, v_hat + 0.5 * dt * k1v)
    k3u, k3v = f(u_hat + 0.5 * dt * k2u, v_hat + 0.5 * dt * k2v)
    k4u, k4v = f(u_hat + dt * k3u, v_hat + dt * k3v)
    u_new = u_hat + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
    v_new = v_hat + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return u_new, v_new


def rk4_step(state: EvolutionState, cfg: SimConfig) -> EvolutionState:
    """One classical four-stage Runge-Kutta step of size ``cfg.dt``."""

    def f(u_hat, v_hat):
        return rhs(EvolutionState(u_hat, v_hat, state.time), cfg)

    u_new, v_new = _rk4(state.u_hat, state.v_hat, cfg.dt, f)
    return replace(state, u_hat=u_new, v_hat=v_new, time=state.time + cfg.dt)


def evolve(
    initial_u,
    initial_v,
    cfg: SimConfig,
    observers: Iterable[Callable[[Sample], None]] = (),
) -> Trajectory:
    """Run ``cfg.n_steps`` RK4 steps from nodal initial data.

    A :class:`Sample` is stored (and handed to every observer) at ``t = 0``,
    every ``sample_every`` steps and at the final step. The run stops early
    when ``max |u|`` exceeds ``cfg.blowup_threshold`` or turns non-finite.
    """
    grid = cfg.grid
    observers = list(observers)
    state = EvolutionState.from_physical(grid, initial_u, initial_v)
    traj = Trajectory()

    def record(u, v, t):
        sample = Sample(t, u, v)
        traj.samples.append(sample)
        for obs in observers:
            obs(sample)

    def note(state, sup):
        traj.step_times.append(state.time)
        traj.sup_norms.append(sup)
        traj.dc_u.append(state.u_hat[0])
        traj.dc_v.append(state.v_hat[0])

    u0 = inverse(grid, state.u_hat)
    sup_prev = float(np.max(np.abs(u0)))
    note(state, sup_prev)
    record(u0, inverse(grid, state.v_hat), 0.0)
    if sup_prev > cfg.blowup_threshold:
        traj.terminated_early = BLOWUP
        traj.crossing_time = 0.0
        return traj

    for n in range(1, cfg.n_steps + 1):
        try:
            state = rk4_step(state, cfg)
        except NonFiniteState:
            traj.terminated_early = NONFINITE
            traj.crossing_time = state.time + cfg.dt
            return traj
        # n*dt rather than accumulated sums keeps sample times exact
        state.time = n * cfg.dt
        if not (np.all(np.isfinite(state.u_hat)) and np.all(np.isfinite(state.v_hat))):
            traj.terminated_early = NONFINITE
            traj.crossing_time = state.time
            return traj
        u = inverse(grid, state.u_hat, check=False)
        sup = float(np.max(np.abs(u)))
        note(state, sup)
        if sup > cfg.blowup_threshold:
            frac = (cfg.blowup_threshold - sup_prev) / (sup - sup_prev)
            traj.terminated_early = BLOWUP
            traj.crossing_time = (n - 1) * cfg.dt + frac * cfg.dt
            record(u, inverse(grid, state.v_hat, check=False), state.time)
            return traj
        sup_prev = sup
        if n % cfg.sample_every == 0 or n == cfg.n_steps:
            record(inverse(grid, state.u_hat), inverse(grid, state.v_hat), state.time)
    return traj
