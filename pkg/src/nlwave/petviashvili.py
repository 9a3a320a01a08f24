"""Solitary-wave profiles by stabilised Petviashvili iteration.

A travelling wave ``u = phi(x - c t)`` satisfies ``c^2 phi = beta * (phi + phi^p)``,
that is ``(c^2 - beta_hat) phi_hat = beta_hat (phi^p)_hat`` mode by mode. The
plain fixed-point map on this relation diverges; multiplying it by
``M^gamma``, where ``M`` is the ratio of the two sides' quadratic forms,
removes the unstable direction.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DivergenceDetected, NotConverged, SpeedTooSlow, ZeroDenominator
from .kernels import KernelSpec, ensure_admissible, sup_symbol
from .spectral import Grid, forward, inverse

__all__ = [
    "SolitarySolveConfig",
    "IterationRecord",
    "IterationReport",
    "stabilizing_factor",
    "iterate_once",
    "residual",
    "solve_solitary",
    "DIVERGENCE_BOUND",
]

DIVERGENCE_BOUND = 1e6
BOUNDARY_WARN = 1e-8


@dataclass(frozen=True, eq=False)
class SolitarySolveConfig:
    c: float
    initial_guess: np.ndarray
    p: int = 2
    gamma: float = 2.0
    tol: float = 1e-10
    max_iter: int = 1000

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 2:
            raise ValueError("p must be an integer >= 2")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")
        guess = np.array(self.initial_guess, dtype=float)
        guess.flags.writeable = False
        object.__setattr__(self, "initial_guess", guess)
        object.__setattr__(self, "p", int(self.p))


@dataclass(frozen=True)
class IterationRecord:
    residual: float
    m_factor: float
    amplitude: float


@dataclass
class IterationReport:
    records: list = field(default_factory=list)
    converged: bool = False

    @property
    def iterations_used(self) -> int:
        """Number of map applications performed."""
        return max(len(self.records) - 1, 0)

    @property
    def residuals(self) -> np.ndarray:
        return np.array([r.residual for r in self.records])

    @property
    def final_residual(self) -> float:
        return self.records[-1].residual


def _stabilizing_factor_hat(phi_hat, pow_hat, beta, c2):
    num = np.sum((c2 - beta) * np.abs(phi_hat) ** 2)
    den = np.sum(beta * pow_hat * np.conj(phi_hat))
    scale = np.sum(np.abs(beta * pow_hat * np.conj(phi_hat)))
    if not np.isfinite(den) or abs(den) < 1e-14 * max(abs(num), scale) or den == 0:
        raise ZeroDenominator("stabilizing factor denominator vanishes")
    m = num / den
    if abs(m.imag) > 1e-10 * abs(m):
        raise ZeroDenominator(f"stabilizing factor is not real: {m!r}")
    return float(m.real)


def stabilizing_factor(phi, kernel: KernelSpec, grid: Grid, c: float, p: int = 2) -> float:
    """Ratio ``sum (c^2 - beta_hat)|phi_hat|^2 / sum beta_hat (phi^p)_hat conj(phi_hat)``.

    Equals one at an exact solution; the sums run over all grid modes.
    """
    phi = np.asarray(phi, dtype=float)
    beta = kernel.symbol(grid.wavenumbers)
    return _stabilizing_factor_hat(forward(grid, phi), forward(grid, phi**p), beta, c * c)


def _step(phi_hat, grid, beta, c2, p, gamma):
    phi = inverse(grid, phi_hat)
    pow_hat = forward(grid, phi**p)
    m = _stabilizing_factor_hat(phi_hat, pow_hat, beta, c2)
    new_hat = m**gamma * (beta / (c2 - beta)) * pow_hat
    return new_hat, m


def iterate_once(phi_hat, kernel: KernelSpec, grid: Grid, cfg: SolitarySolveConfig):
    """Apply the stabilised map once to Fourier coefficients ``phi_hat``."""
    beta = kernel.symbol(grid.wavenumbers)
    new_hat, _ = _step(np.asarray(phi_hat), grid, beta, cfg.c**2, cfg.p, cfg.gamma)
    new = inverse(grid, new_hat)
    if not np.all(np.isfinite(new)) or np.max(np.abs(new)) > DIVERGENCE_BOUND:
        raise DivergenceDetected("iterate exceeded the divergence bound")
    return new_hat


def residual(phi, kernel: KernelSpec, grid: Grid, c: float, p: int = 2) -> float:
    """``max |c^2 phi - beta * (phi + phi^p)|`` over the nodes."""
    phi = np.asarray(phi, dtype=float)
    conv = inverse(grid, kernel.symbol(grid.wavenumbers) * forward(grid, phi + phi**p))
    return float(np.max(np.abs(c * c * phi - conv)))


def _check_speed(kernel, grid, c):
    ensure_admissible(kernel, grid)
    top = sup_symbol(kernel, grid)
    if not c * c > top:
        raise SpeedTooSlow(f"c^2 = {c * c:.6g} must exceed max beta_hat = {top:.6g} on the grid")


def solve_solitary(kernel: KernelSpec, grid: Grid, cfg: SolitarySolveConfig):
    """Iterate from ``cfg.initial_guess`` until the residual drops to ``cfg.tol``.

    Returns
    -------
    profile : ndarray
        Nodal values of the converged profile.
    report : IterationReport
        One record per iterate (the initial guess included).

    Raises
    ------
    SpeedTooSlow
        ``c^2`` does not exceed the symbol maximum on the grid.
    NotConverged
        ``max_iter`` reached first; carries ``profile`` and ``report``.
    DivergenceDetected
        An iterate exceeded ``1e6`` in sup norm.
    """
    _check_speed(kernel, grid, cfg.c)
    if cfg.initial_guess.shape != (grid.n_points,):
        raise ValueError("initial guess does not match the grid")
    if not np.any(cfg.initial_guess):
        raise ZeroDenominator("initial guess is identically zero")

    beta = kernel.symbol(grid.wavenumbers)
    c2 = cfg.c**2
    report = IterationReport()
    phi = cfg.initial_guess.copy()
    phi_hat = forward(grid, phi)
    for n in range(cfg.max_iter + 1):
        pow_hat = forward(grid, phi**cfg.p)
        m = _stabilizing_factor_hat(phi_hat, pow_hat, beta, c2)
        conv = inverse(grid, beta * (phi_hat + pow_hat))
        res = float(np.max(np.abs(c2 * phi - conv)))
        report.records.append(IterationRecord(res, m, float(np.max(phi))))
        if res <= cfg.tol:
            report.converged = True
            break
        if n == cfg.max_iter:
            break
        phi_hat = m**cfg.gamma * (beta / (c2 - beta)) * pow_hat
        phi = inverse(grid, phi_hat)
        if not np.all(np.isfinite(phi)) or np.max(np.abs(phi)) > DIVERGENCE_BOUND:
            raise DivergenceDetected(f"iterate {n + 1} exceeded the divergence bound")

    edge = max(abs(phi[0]), abs(phi[-1]))
    if edge > BOUNDARY_WARN:
        warnings.warn(
            f"profile is {edge:.3g} at the domain edge; enlarge L to reduce periodisation error",
            RuntimeWarning,
            stacklevel=2,
        )
    if not report.converged:
        raise NotConverged(
            f"residual {report.final_residual:.3g} > tol {cfg.tol:.3g} after {cfg.max_iter} iterations",
            profile=phi,
            report=report,
        )
    return phi, report
