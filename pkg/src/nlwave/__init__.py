"""Pseudo-spectral solver for periodic nonlocal nonlinear wave equations

    u_tt = beta * (u + u^p)_xx

with kernels given by their Fourier symbols, Petviashvili solitary waves,
RK4 time stepping and energy / blow-up diagnostics.
"""
__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .kernels import (  # noqa: F401
    Dirac,
    DoubleExponential,
    Exponential,
    KernelSpec,
    RationalMix,
    SinModulated,
    Tabulated,
    beta_hat,
    ensure_admissible,
    kernel_from_config,
    sup_symbol,
    verify_decay_condition,
)
from .spectral import Grid, convolve, forward, inverse, physical_derivative, spectral_derivative  # noqa: F401
from .timestepper import EvolutionState, SimConfig, Trajectory, evolve, rhs, rk4_step  # noqa: F401
from .petviashvili import (  # noqa: F401
    IterationReport,
    SolitarySolveConfig,
    iterate_once,
    residual,
    solve_solitary,
    stabilizing_factor,
)
from .diagnostics import (  # noqa: F401
    HBQ_SECH4,
    IBQ_SECH2,
    EnergyBreakdown,
    ReferenceSolution,
    blowup_hypothesis_check,
    blowup_initial_data,
    calibrate_speed,
    energy,
    energy_drift,
    linf_distance,
    reference_eval,
)
from .sweeps import amplitude_speed, convergence_order, gamma_study, kernel_limit_study  # noqa: F401
