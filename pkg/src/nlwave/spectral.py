"""Periodic grid on [-L, L] and the Fourier machinery built on it.

Coefficients follow the normalisation

    u_hat[k] = (1/N) * sum_j u(x_j) * exp(-i kappa_k x_j),   kappa_k = pi k / L

so the zero mode is the field mean and ``2L * sum |u_hat|^2`` equals the
trapezoid quadrature of ``u^2``. Arrays of coefficients are stored in
numpy FFT order; ``Grid.wave_indices`` gives the integer ``k`` of each slot.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import LengthMismatch, NonRealResult

__all__ = [
    "Grid",
    "forward",
    "inverse",
    "spectral_derivative",
    "convolve",
    "physical_derivative",
]

IMAG_TOLERANCE = 1e-10


def _readonly(a):
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid with ``n_points`` nodes on ``[-half_length, half_length)``."""

    half_length: float
    n_points: int

    def __post_init__(self):
        if not self.half_length > 0:
            raise ValueError(f"half_length must be positive, got {self.half_length!r}")
        n = int(self.n_points)
        if n != self.n_points or n < 4 or n % 2:
            raise ValueError(f"n_points must be an even integer >= 4, got {self.n_points!r}")
        object.__setattr__(self, "half_length", float(self.half_length))
        object.__setattr__(self, "n_points", n)

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_length / self.n_points

    @cached_property
    def nodes(self) -> np.ndarray:
        return _readonly(-self.half_length + np.arange(self.n_points) * self.spacing)

    @cached_property
    def wave_indices(self) -> np.ndarray:
        return _readonly(np.fft.fftfreq(self.n_points, 1.0 / self.n_points).astype(np.int64))

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        return _readonly(np.pi * self.wave_indices / self.half_length)

    @cached_property
    def _phase(self) -> np.ndarray:
        # exp(-i kappa x_0) with x_0 = -L is (-1)^k
        return _readonly(np.where(self.wave_indices % 2 == 0, 1.0, -1.0))

    @cached_property
    def nyquist_slot(self) -> int:
        return self.n_points // 2

    def mode_index(self, k: int) -> int:
        """Array slot holding integer wave index ``k``."""
        if not -self.n_points // 2 <= k < self.n_points // 2:
            raise IndexError(f"wave index {k} not in [-N/2, N/2)")
        return k % self.n_points

    def integrate(self, values) -> float:
        """Periodic trapezoid rule over one period."""
        return float(self.spacing * np.sum(values))


def _check_length(grid: Grid, a) -> np.ndarray:
    a = np.asarray(a)
    if a.shape != (grid.n_points,):
        raise LengthMismatch(f"expected {grid.n_points} values, got shape {a.shape}")
    return a


def forward(grid: Grid, f) -> np.ndarray:
    """Fourier coefficients of a real nodal field."""
    f = _check_length(grid, f)
    return np.fft.fft(f) * (grid._phase / grid.n_points)


def inverse(grid: Grid, coeffs, check: bool = True) -> np.ndarray:
    """Nodal values from coefficients; the result must be real.

    The imaginary residue is dropped when below ``1e-10`` relative to the
    field's magnitude and raises :class:`NonRealResult` otherwise.
    """
    coeffs = _check_length(grid, coeffs)
    z = np.fft.ifft(coeffs * (grid._phase * grid.n_points))
    if check:
        imag = np.max(np.abs(z.imag))
        if imag > 0:
            scale = np.max(np.abs(z))
            if imag > IMAG_TOLERANCE * scale:
                raise NonRealResult(
                    f"inverse transform has imaginary part {imag:.3g} relative to {scale:.3g}; "
                    "coefficients are not conjugate-symmetric"
                )
    return z.real.copy()


def spectral_derivative(grid: Grid, coeffs, order: int = 1) -> np.ndarray:
    """Multiply by ``(i kappa)**order``. Odd orders zero the unpaired -N/2 mode."""
    if order < 1 or int(order) != order:
        raise ValueError("order must be a positive integer")
    coeffs = _check_length(grid, coeffs)
    out = coeffs * (1j * grid.wavenumbers) ** int(order)
    if order % 2:
        out[grid.nyquist_slot] = 0.0
    return out


def convolve(kernel, grid: Grid, coeffs) -> np.ndarray:
    """Apply ``H v = beta * v`` as the multiplier ``beta_hat(kappa)``."""
    coeffs = _check_length(grid, coeffs)
    return kernel.symbol(grid.wavenumbers) * coeffs


def physical_derivative(grid: Grid, f, order: int = 1) -> np.ndarray:
    """Nodal derivative of a nodal field, via the spectral multiplier."""
    return inverse(grid, spectral_derivative(grid, forward(grid, f), order))
