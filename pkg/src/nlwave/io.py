"""CSV and JSON emission with round-trip exact number formatting."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import ConfigError

__all__ = [
    "fmt",
    "write_csv",
    "read_field_csv",
    "write_field",
    "write_profile",
    "write_iteration_report",
    "write_timeseries",
    "write_energy_series",
    "write_json",
]


def fmt(value) -> str:
    """17 significant digits for floats; lowercase booleans."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    return str(value)


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def read_field_csv(path):
    """Read a nodal CSV with a header row; returns ``(header, columns)``."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ConfigError(f"{path} is empty", key="initial.path")
        data = [[float(v) for v in row] for row in reader if row]
    cols = np.array(data, dtype=float).T if data else np.empty((len(header), 0))
    return header, {name: cols[i] for i, name in enumerate(header)}


def write_field(path, grid, u, v=None) -> Path:
    if v is None:
        return write_csv(path, ["x", "u"], zip(grid.nodes, u))
    return write_csv(path, ["x", "u", "v"], zip(grid.nodes, u, v))


def write_profile(path, grid, phi) -> Path:
    return write_csv(path, ["x", "phi"], zip(grid.nodes, phi))


def write_iteration_report(path, report) -> Path:
    rows = ((i, r.residual, r.m_factor, r.amplitude) for i, r in enumerate(report.records))
    return write_csv(path, ["iter", "residual", "m_factor", "amplitude"], rows)


def write_timeseries(path, times, sup_norms, totals, drifts) -> Path:
    return write_csv(path, ["t", "sup_norm", "energy_total", "energy_drift"], zip(times, sup_norms, totals, drifts))


def write_energy_series(path, times, breakdowns, drifts) -> Path:
    rows = (
        (t, b.p_term, b.l2_term, b.potential_term, b.total, d)
        for t, b, d in zip(times, breakdowns, drifts)
    )
    return write_csv(path, ["t", "p_term", "l2_term", "potential_term", "total", "rel_drift"], rows)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else fmt(value)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_json(path, payload) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")
    return path
