import math

import numpy as np
import pytest

import nlwave as nw
from nlwave.sweeps import default_speeds


@pytest.fixture(scope="module")
def guess_cfg(grid1024):
    return nw.SolitarySolveConfig(c=1.1, initial_guess=np.exp(-grid1024.nodes**2), tol=1e-10)


def test_amplitude_speed_matches_closed_form(grid1024, guess_cfg):
    speeds = [math.sqrt(1 + d) for d in (0.1, 0.2, 0.3)]
    rows = nw.amplitude_speed(nw.Exponential(), grid1024, speeds, guess_cfg)
    assert [r.c for r in rows] == speeds
    for row, d in zip(rows, (0.1, 0.2, 0.3)):
        assert row.converged and abs(row.amplitude - 1.5 * d) < 1e-3


def test_amplitude_speed_records_failures(grid1024, guess_cfg):
    rows = nw.amplitude_speed(nw.Exponential(), grid1024, [0.9, 1.1], guess_cfg)
    assert len(rows) == 2
    assert rows[0].error == "SpeedTooSlow" and not rows[0].converged
    assert rows[1].converged and rows[1].error == ""


def test_amplitude_speed_consistent_with_single_solve(grid1024, guess_cfg, sin_profile):
    c, phi, _ = sin_profile
    (row,) = nw.amplitude_speed(nw.SinModulated(eta=1.0), grid1024, [c], guess_cfg)
    assert row.amplitude == np.max(phi)


def test_default_speeds():
    s = default_speeds()
    assert s[0] == 1.02 and s[-1] == 1.3 and len(s) == 15


def test_gamma_study_duplicates_and_guard(grid1024, guess_cfg):
    cfg = nw.SolitarySolveConfig(c=1.08, initial_guess=np.exp(-grid1024.nodes**2))
    rows = nw.gamma_study([2.0, 2.0], nw.SinModulated(eta=1.0), grid1024, cfg)
    assert rows[0] == rows[1]
    with pytest.raises(ValueError):
        nw.gamma_study([0.0], nw.SinModulated(eta=1.0), grid1024, cfg)


def test_sweeps_are_permutation_invariant_and_thread_safe(grid1024, guess_cfg):
    speeds = [1.04, 1.1, 1.2]
    a = nw.amplitude_speed(nw.Exponential(), grid1024, speeds, guess_cfg)
    b = nw.amplitude_speed(nw.Exponential(), grid1024, speeds[::-1], guess_cfg, workers=3)
    assert a == b[::-1]


def test_kernel_limit_family_guard(grid1024):
    with pytest.raises(ValueError):
        nw.kernel_limit_study("sin", [1.0], nw.HBQ_SECH4, grid1024)
    with pytest.raises(ValueError):
        nw.kernel_limit_study("cos", [1.0], nw.IBQ_SECH2, grid1024)


def test_kernel_limit_self_consistency_short():
    g = nw.Grid(100.0, 1024)
    (row,) = nw.kernel_limit_study("sin", [0.0], nw.IBQ_SECH2, g, t_end=1.0)
    assert row.kernel.startswith("exponential") and row.linf_at_T < 1e-6


class ConstantReference:
    kernel = nw.Exponential()

    def evaluate(self, grid, t):
        return np.full(grid.n_points, 0.1), np.zeros(grid.n_points)


def test_convergence_constant_field_is_exact():
    # a constant is annihilated by the second derivative, so it never moves
    rep = nw.convergence_order([16, 32], ConstantReference(), 5.0, dt=0.01, t_end=0.5)
    assert all(r.linf_error < 1e-15 for r in rep.rows)
    assert all(r.at_floor for r in rep.rows)


def test_convergence_single_entry():
    rep = nw.convergence_order([64], nw.IBQ_SECH2, 100.0, dt=0.01, t_end=0.1)
    assert len(rep.rows) == 1 and rep.reduction_factors == []
    with pytest.raises(ValueError):
        nw.convergence_order([128, 64], nw.IBQ_SECH2, 100.0)
