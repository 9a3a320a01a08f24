"""Convolution kernels described by their Fourier symbols.

Every kernel is an immutable object exposing ``symbol(k)``, a vectorised
evaluation of the (real, even, nonnegative) Fourier transform of the
kernel. Physical-space kernels are never formed; convolution is always a
diagonal multiplier in Fourier space.

Decay metadata ``r`` and ``c_bound`` describe the admissibility bound

    0 <= beta_hat(k) <= c_bound * (1 + k**2) ** (-r / 2)

which :func:`verify_decay_condition` checks by sampling.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import (
    ConfigError,
    DecayConditionViolated,
    NonPositiveParameter,
    NonPositiveSymbol,
    OutOfTableRange,
)

__all__ = [
    "KernelSpec",
    "Dirac",
    "Exponential",
    "DoubleExponential",
    "SinModulated",
    "RationalMix",
    "Tabulated",
    "DecayReport",
    "beta_hat",
    "verify_decay_condition",
    "sup_symbol",
    "ensure_admissible",
    "kernel_from_config",
    "parse_kernel",
]


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0 or not math.isfinite(value):
        raise NonPositiveParameter(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True)
class KernelSpec:
    """Base class. Subclasses implement :meth:`symbol`."""

    r: float
    c_bound: float

    family = "abstract"

    def symbol(self, k):
        raise NotImplementedError

    def params(self) -> dict:
        return {}

    def to_config(self) -> dict:
        return {"family": self.family, "params": self.params(), "r": self.r, "c_bound": self.c_bound}

    def label(self) -> str:
        parts = ",".join(f"{key}={value!r}" for key, value in self.params().items())
        return f"{self.family}:{parts}" if parts else self.family


@dataclass(frozen=True)
class Dirac(KernelSpec):
    r: float = 0.0
    c_bound: float = 1.0

    family = "dirac"

    def symbol(self, k):
        return np.ones_like(np.asarray(k, dtype=float))


@dataclass(frozen=True)
class Exponential(KernelSpec):
    """``beta(x) = exp(-|x|)/2``; the improved Boussinesq kernel."""

    r: float = 2.0
    c_bound: float = 1.0

    family = "exponential"

    def symbol(self, k):
        k = np.asarray(k, dtype=float)
        return 1.0 / (1.0 + k * k)


def _double_exp_bound(eta1: float, eta2: float) -> float:
    # sup over s = k**2 >= 0 of (1 + s)**2 / (1 + eta1*s + eta2*s**2)
    def ratio(s):
        return (1.0 + s) ** 2 / (1.0 + eta1 * s + eta2 * s * s)

    candidates = [1.0, 1.0 / eta2]
    if eta1 != 2.0 * eta2:
        s_star = (eta1 - 2.0) / (eta1 - 2.0 * eta2)
        if s_star >= 0:
            candidates.append(ratio(s_star))
    return max(candidates)


@dataclass(frozen=True)
class DoubleExponential(KernelSpec):
    """Higher-order Boussinesq kernel, ``1 / (1 + eta1 k^2 + eta2 k^4)``.

    Use :meth:`from_lengths` to build it from the two length scales of the
    physical kernel; the direct ``(eta1, eta2)`` form also admits pairs
    such as ``eta1 = eta2 = 1`` that no pair of real lengths produces.
    """

    eta1: float = 1.0
    eta2: float = 1.0
    r: float = 4.0
    c_bound: float = field(default=float("nan"))

    family = "double_exponential"

    def __post_init__(self):
        object.__setattr__(self, "eta1", _positive("eta1", self.eta1))
        object.__setattr__(self, "eta2", _positive("eta2", self.eta2))
        if math.isnan(self.c_bound):
            object.__setattr__(self, "c_bound", _double_exp_bound(self.eta1, self.eta2))

    @classmethod
    def from_lengths(cls, c1: float, c2: float, **kwargs) -> "DoubleExponential":
        c1 = _positive("c1", c1)
        c2 = _positive("c2", c2)
        return cls(eta1=c1 * c1 + c2 * c2, eta2=c1 * c1 * c2 * c2, **kwargs)

    def symbol(self, k):
        k2 = np.asarray(k, dtype=float) ** 2
        return 1.0 / (1.0 + self.eta1 * k2 + self.eta2 * k2 * k2)

    def params(self):
        return {"eta1": self.eta1, "eta2": self.eta2}


@dataclass(frozen=True)
class SinModulated(KernelSpec):
    """``1 / (1 + k^2 + eta k^2 sin(k^2))``.

    For ``eta < 1`` the denominator is at least 1, so the symbol is bounded
    by 1 and decays with ``r = 2``. For ``eta >= 1`` the denominator can
    vanish or turn negative; :func:`ensure_admissible` scans it on a grid
    before the kernel is used there.
    """

    eta: float = 1.0
    r: float = float("nan")
    c_bound: float = float("nan")

    family = "sin"

    def __post_init__(self):
        object.__setattr__(self, "eta", _positive("eta", self.eta))
        if math.isnan(self.r):
            object.__setattr__(self, "r", 2.0 if self.eta < 1 else 0.0)
        if math.isnan(self.c_bound):
            object.__setattr__(self, "c_bound", 1.0 / (1.0 - self.eta) if self.eta < 1 else 1.0)

    def denominator(self, k):
        k2 = np.asarray(k, dtype=float) ** 2
        return 1.0 + k2 + self.eta * k2 * np.sin(k2)

    def symbol(self, k):
        return 1.0 / self.denominator(k)

    def params(self):
        return {"eta": self.eta}


@dataclass(frozen=True)
class RationalMix(KernelSpec):
    """``1/(1 + k^2 + k^4) + mu/(1 + k^4)``; reduces to HBq with eta1 = eta2 = 1 at mu = 0."""

    mu: float = 1.0
    r: float = 4.0
    c_bound: float = float("nan")

    family = "rational"

    def __post_init__(self):
        object.__setattr__(self, "mu", _positive("mu", self.mu))
        if math.isnan(self.c_bound):
            # (1+k^2)^2/(1+k^2+k^4) <= 4/3 and (1+k^2)^2/(1+k^4) <= 2
            object.__setattr__(self, "c_bound", 4.0 / 3.0 + 2.0 * self.mu)

    def symbol(self, k):
        k2 = np.asarray(k, dtype=float) ** 2
        k4 = k2 * k2
        return 1.0 / (1.0 + k2 + k4) + self.mu / (1.0 + k4)

    def params(self):
        return {"mu": self.mu}


@dataclass(frozen=True, eq=False)
class Tabulated(KernelSpec):
    """Symbol sampled at strictly increasing ``k >= 0`` and mirrored to ``k < 0``.

    Values between samples are linearly interpolated; ``|k|`` beyond the
    last sample raises :class:`OutOfTableRange`. The table must satisfy the
    decay bound at construction.
    """

    k_samples: np.ndarray = None
    values: np.ndarray = None
    r: float = 0.0
    c_bound: float = 1.0
    source: str | None = None

    family = "tabulated"

    def __post_init__(self):
        ks = np.array(self.k_samples, dtype=float)
        vals = np.array(self.values, dtype=float)
        if ks.ndim != 1 or ks.shape != vals.shape or ks.size < 2:
            raise ConfigError("tabulated kernel needs two equal-length columns with >= 2 rows", key="kernel")
        if ks[0] < 0 or np.any(np.diff(ks) <= 0):
            raise ConfigError("tabulated wavenumbers must be >= 0 and strictly increasing", key="kernel")
        if not np.all(np.isfinite(vals)):
            raise ConfigError("tabulated symbol values must be finite", key="kernel")
        ks.flags.writeable = False
        vals.flags.writeable = False
        object.__setattr__(self, "k_samples", ks)
        object.__setattr__(self, "values", vals)
        bound = self.c_bound * (1.0 + ks * ks) ** (-self.r / 2.0)
        bad = (vals < 0) | (vals > bound * (1 + 1e-12))
        if np.any(bad):
            i = int(np.argmax(bad))
            raise DecayConditionViolated(
                f"tabulated symbol violates 0 <= beta_hat <= C(1+k^2)^(-r/2) at k={ks[i]!r}"
            )

    @classmethod
    def from_csv(cls, path, r: float = 0.0, c_bound: float = 1.0) -> "Tabulated":
        ks, vals = [], []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    ks.append(float(row[0]))
                    vals.append(float(row[1]))
                except ValueError:
                    if ks:  # only a leading header row is tolerated
                        raise ConfigError(f"bad row in {path}: {row!r}", key="kernel")
        return cls(k_samples=ks, values=vals, r=r, c_bound=c_bound, source=str(path))

    def symbol(self, k):
        ak = np.abs(np.asarray(k, dtype=float))
        if np.any(ak > self.k_samples[-1]) or np.any(ak < self.k_samples[0]):
            raise OutOfTableRange(
                f"|k| outside tabulated range [{self.k_samples[0]}, {self.k_samples[-1]}]"
            )
        return np.interp(ak, self.k_samples, self.values)

    def params(self):
        if self.source is not None:
            return {"path": self.source}
        return {"k": self.k_samples.tolist(), "beta_hat": self.values.tolist()}


def beta_hat(kernel: KernelSpec, k):
    """Evaluate the kernel symbol at wavenumber(s) ``k``."""
    k = np.asarray(k, dtype=float)
    if not np.all(np.isfinite(k)):
        raise ValueError("wavenumbers must be finite")
    out = kernel.symbol(k)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class DecayReport:
    holds: bool
    worst_k: float
    worst_ratio: float
    min_value: float


def verify_decay_condition(kernel: KernelSpec, k_max: float, n_samples: int) -> DecayReport:
    """Sample ``[0, k_max]`` uniformly and test the admissibility bound.

    ``worst_ratio`` is the largest ``beta_hat(k) (1+k^2)^(r/2) / c_bound``
    seen; the bound holds when it is at most one (up to rounding) and the
    symbol is nonnegative everywhere sampled.
    """
    if not k_max > 0 or n_samples < 2:
        raise ValueError("need k_max > 0 and n_samples >= 2")
    k = np.linspace(0.0, k_max, int(n_samples))
    values = np.asarray(kernel.symbol(k), dtype=float)
    ratio = values * (1.0 + k * k) ** (kernel.r / 2.0) / kernel.c_bound
    i = int(np.argmax(ratio))
    min_value = float(values.min())
    holds = bool(np.all(np.isfinite(values)) and min_value >= 0 and ratio[i] <= 1.0 + 1e-12)
    return DecayReport(holds=holds, worst_k=float(k[i]), worst_ratio=float(ratio[i]), min_value=min_value)


def sup_symbol(kernel: KernelSpec, grid) -> float:
    """Largest symbol value over the grid's physical wavenumbers."""
    return float(np.max(kernel.symbol(grid.wavenumbers)))


def ensure_admissible(kernel: KernelSpec, grid) -> None:
    """Reject kernels whose symbol is not strictly positive on ``grid``.

    Only the sin-modulated family with ``eta >= 1`` can fail; for the others
    positivity holds by construction and the scan is skipped.
    """
    if isinstance(kernel, SinModulated) and kernel.eta >= 1:
        den = kernel.denominator(grid.wavenumbers)
        if np.any(den <= 0) or not np.all(np.isfinite(den)):
            j = int(np.argmin(den))
            raise NonPositiveSymbol(
                f"sin kernel eta={kernel.eta} has nonpositive denominator {den[j]:.6g} "
                f"at wavenumber {grid.wavenumbers[j]:.6g} on this grid"
            )


_ALIASES = {
    "dirac": "dirac",
    "delta": "dirac",
    "exp": "exponential",
    "exponential": "exponential",
    "ibq": "exponential",
    "dexp": "double_exponential",
    "double_exponential": "double_exponential",
    "hbq": "double_exponential",
    "sin": "sin",
    "sin_modulated": "sin",
    "rational": "rational",
    "rational_mix": "rational",
    "tab": "tabulated",
    "tabulated": "tabulated",
}

_ALLOWED_PARAMS = {
    "dirac": set(),
    "exponential": set(),
    "double_exponential": {"eta1", "eta2", "c1", "c2"},
    "sin": {"eta"},
    "rational": {"mu"},
    "tabulated": {"path", "k", "beta_hat"},
}


def kernel_from_config(cfg: Mapping[str, Any]) -> KernelSpec:
    """Build a kernel from ``{"family", "params", "r", "c_bound"}``."""
    if not isinstance(cfg, Mapping):
        raise ConfigError("kernel block must be an object", key="kernel")
    unknown = set(cfg) - {"family", "params", "r", "c_bound"}
    if unknown:
        raise ConfigError(f"unknown kernel keys: {sorted(unknown)}", key=f"kernel.{sorted(unknown)[0]}")
    if "family" not in cfg:
        raise ConfigError("kernel block is missing 'family'", key="kernel.family")
    family = _ALIASES.get(str(cfg["family"]).lower())
    if family is None:
        raise ConfigError(f"unknown kernel family {cfg['family']!r}", key="kernel.family")
    params = dict(cfg.get("params") or {})
    unknown = set(params) - _ALLOWED_PARAMS[family]
    if unknown:
        raise ConfigError(f"unknown {family} parameters: {sorted(unknown)}", key="kernel.params")
    meta = {name: float(cfg[name]) for name in ("r", "c_bound") if cfg.get(name) is not None}

    if family == "dirac":
        return Dirac(**meta)
    if family == "exponential":
        return Exponential(**meta)
    if family == "double_exponential":
        if {"c1", "c2"} & set(params):
            if {"eta1", "eta2"} & set(params):
                raise ConfigError("give either (c1, c2) or (eta1, eta2), not both", key="kernel.params")
            return DoubleExponential.from_lengths(params.get("c1", 1.0), params.get("c2", 1.0), **meta)
        return DoubleExponential(eta1=params.get("eta1", 1.0), eta2=params.get("eta2", 1.0), **meta)
    if family == "sin":
        if "eta" not in params:
            raise ConfigError("sin kernel needs eta", key="kernel.params.eta")
        return SinModulated(eta=params["eta"], **meta)
    if family == "rational":
        if "mu" not in params:
            raise ConfigError("rational kernel needs mu", key="kernel.params.mu")
        return RationalMix(mu=params["mu"], **meta)
    # tabulated
    if "path" in params:
        return Tabulated.from_csv(Path(params["path"]), **meta)
    if "k" in params and "beta_hat" in params:
        return Tabulated(k_samples=params["k"], values=params["beta_hat"], **meta)
    raise ConfigError("tabulated kernel needs 'path' or 'k'/'beta_hat'", key="kernel.params.path")


def parse_kernel(text: str) -> dict:
    """Turn ``"sin:eta=1"`` style flags into a kernel config block."""
    family, _, rest = text.partition(":")
    params, meta = {}, {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        name, eq, value = item.partition("=")
        if not eq:
            raise ConfigError(f"malformed kernel parameter {item!r}", key="kernel")
        name = name.strip()
        if name == "path":
            params[name] = value
            continue
        try:
            number = float(value)
        except ValueError:
            raise ConfigError(f"kernel parameter {name} is not a number: {value!r}", key="kernel")
        if name in ("r", "c_bound"):
            meta[name] = number
        else:
            params[name] = number
    return {"family": family.strip(), "params": params, **meta}
