import threading
from dataclasses import replace

import numpy as np
import pytest

import nlwave as nw
from nlwave.errors import NonFiniteState
from nlwave.timestepper import EvolutionState


def conj_sym_defect(grid, c):
    mirrored = c[(-grid.wave_indices) % grid.n_points]
    half = grid.n_points // 2
    body = np.abs(c[1:half] - np.conj(mirrored[1:half]))
    return max(float(np.max(body)), abs(c[0].imag), abs(c[half].imag))


def test_dt_rounds_to_land_on_t_end():
    g = nw.Grid(np.pi, 16)
    cfg = nw.SimConfig(g, nw.Dirac(), dt=0.3, t_end=1.0)
    assert cfg.n_steps == 3 and cfg.dt == 1.0 / 3.0
    again = replace(cfg, t_end=1.0)
    assert again.dt == cfg.dt
    with pytest.raises(ValueError):
        nw.SimConfig(g, nw.Dirac(), p=1)
    with pytest.raises(ValueError):
        nw.SimConfig(g, nw.Dirac(), dt=-1.0)


def test_rhs_rest_state():
    g = nw.Grid(np.pi, 16)
    cfg = nw.SimConfig(g, nw.Exponential())
    du, dv = nw.rhs(EvolutionState(np.zeros(16, complex), np.zeros(16, complex)), cfg)
    assert np.all(du == 0) and np.all(dv == 0)


def test_rhs_single_mode_linear_dirac():
    g = nw.Grid(np.pi, 16)
    cfg = nw.SimConfig(g, nw.Dirac(), nonlinear=False)
    u_hat = np.zeros(16, complex)
    u_hat[g.mode_index(1)] = 1e-3
    _, dv = nw.rhs(EvolutionState(u_hat, np.zeros(16, complex)), cfg)
    assert dv[g.mode_index(1)] == pytest.approx(-1e-3, abs=1e-18)


def test_rhs_cosine_square_coefficients():
    g = nw.Grid(5.0, 32)
    a = 0.7
    cfg = nw.SimConfig(g, nw.Exponential())
    u = a * np.cos(np.pi * g.nodes / g.half_length)
    _, dv = nw.rhs(EvolutionState.from_physical(g, u, np.zeros(32)), cfg)
    k1, k2 = np.pi / 5.0, 2 * np.pi / 5.0
    # cos^2 = 1/2 + cos(2 theta)/2, so (u^2)_hat at mode 2 is a^2/4
    assert dv[g.mode_index(2)].real == pytest.approx(-(k2**2) / (1 + k2**2) * a * a / 4, rel=1e-13)
    assert dv[g.mode_index(1)].real == pytest.approx(-(k1**2) / (1 + k1**2) * a / 2, rel=1e-13)
    assert dv[0] == 0


def test_rhs_rejects_nonfinite():
    g = nw.Grid(1.0, 8)
    cfg = nw.SimConfig(g, nw.Dirac())
    bad = np.zeros(8, complex)
    bad[2] = np.nan
    with pytest.raises(NonFiniteState):
        nw.rhs(EvolutionState(bad, np.zeros(8, complex)), cfg)


def test_rk4_zero_state():
    g = nw.Grid(1.0, 8)
    cfg = nw.SimConfig(g, nw.Exponential(), dt=0.1)
    out = nw.rk4_step(EvolutionState(np.zeros(8, complex), np.zeros(8, complex), 0.2), cfg)
    assert np.all(out.u_hat == 0) and out.time == pytest.approx(0.3)


def test_rk4_linear_oscillator_local_order():
    g = nw.Grid(np.pi, 16)
    kernel = nw.Exponential()
    omega = np.sqrt(1.0 / 2.0)  # kappa = 1, kappa^2 beta_hat = 1/2
    errs = []
    for dt in (0.1, 0.05, 0.025):
        cfg = nw.SimConfig(g, kernel, dt=dt, t_end=dt, nonlinear=False)
        u_hat = np.zeros(16, complex)
        u_hat[g.mode_index(1)] = u_hat[g.mode_index(-1)] = 1.0
        out = nw.rk4_step(EvolutionState(u_hat, np.zeros(16, complex)), cfg)
        # the u error alone is O(dt^6) since the dt^5 term of cos vanishes; v carries the dt^5 term
        eu = out.u_hat[g.mode_index(1)] - np.cos(omega * cfg.dt)
        ev = out.v_hat[g.mode_index(1)] + omega * np.sin(omega * cfg.dt)
        errs.append(np.hypot(abs(eu), abs(ev)))
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    assert all(28 < r < 36 for r in ratios), ratios


def test_rk4_preserves_conjugate_symmetry():
    g = nw.Grid(20.0, 128)
    cfg = nw.SimConfig(g, nw.SinModulated(eta=0.5), dt=0.05)
    x = g.nodes
    state = EvolutionState.from_physical(g, 0.3 * np.exp(-x * x / 4) * (1 + 0.2 * x), 0.1 * np.exp(-x * x))
    for _ in range(20):
        du, dv = nw.rhs(state, cfg)
        assert conj_sym_defect(g, du) < 1e-15 and conj_sym_defect(g, dv) < 1e-15
        state = nw.rk4_step(state, cfg)
        assert conj_sym_defect(g, state.u_hat) < 1e-15 and conj_sym_defect(g, state.v_hat) < 1e-15


def test_zero_data_stays_zero():
    g = nw.Grid(10.0, 64)
    traj = nw.evolve(np.zeros(64), np.zeros(64), nw.SimConfig(g, nw.Exponential(), dt=0.1, t_end=2.0, sample_every=5))
    assert traj.terminated_early is None
    assert all(np.all(s.u == 0) and np.all(s.v == 0) for s in traj.samples)
    assert [s.time for s in traj.samples] == pytest.approx([0, 0.5, 1.0, 1.5, 2.0])


def test_mean_mode_linearity():
    g = nw.Grid(10.0, 128)
    x = g.nodes
    u0 = 0.2 * np.exp(-x * x) + 0.05
    v0 = 0.1 * np.exp(-x * x / 2) + 0.02
    cfg = nw.SimConfig(g, nw.Exponential(), dt=0.01, t_end=2.0)
    traj = nw.evolve(u0, v0, cfg)
    dc_v = np.array(traj.dc_v)
    dc_u = np.array(traj.dc_u)
    t = np.array(traj.step_times)
    assert np.max(np.abs(dc_v - dc_v[0])) == 0.0
    assert np.max(np.abs(dc_u - (dc_u[0] + dc_v[0] * t))) < 1e-14


def test_observers_see_every_sample():
    g = nw.Grid(10.0, 32)
    seen = []
    cfg = nw.SimConfig(g, nw.Exponential(), dt=0.1, t_end=1.0, sample_every=3)
    traj = nw.evolve(np.exp(-g.nodes**2) * 0.1, np.zeros(32), cfg, observers=[lambda s: seen.append(s.time)])
    assert seen == [s.time for s in traj.samples]
    assert seen == pytest.approx([0, 0.3, 0.6, 0.9, 1.0])


def test_threshold_below_initial_sup_crosses_at_zero():
    g = nw.Grid(10.0, 32)
    cfg = nw.SimConfig(g, nw.Exponential(), blowup_threshold=0.5)
    traj = nw.evolve(np.ones(32), np.zeros(32), cfg)
    assert traj.terminated_early == "Blowup" and traj.crossing_time == 0.0


def test_blowup_crossing_is_interpolated():
    g = nw.Grid(10.0, 512)
    phi, psi = nw.blowup_initial_data(g)
    cfg = nw.SimConfig(g, nw.SinModulated(eta=1.0), dt=0.01, t_end=3.0, blowup_threshold=1e3)
    traj = nw.evolve(phi, psi, cfg)
    assert traj.terminated_early == "Blowup"
    t, s = traj.step_times, traj.sup_norms
    assert s[-2] <= 1e3 < s[-1]
    assert t[-2] <= traj.crossing_time <= t[-1]


def test_parallel_evolutions_match_serial():
    g = nw.Grid(20.0, 128)
    cfgs = [nw.SimConfig(g, nw.SinModulated(eta=e), dt=0.05, t_end=1.0) for e in (0.1, 0.5, 0.9)]
    u0 = 0.2 * np.exp(-g.nodes**2)
    serial = [nw.evolve(u0, np.zeros(128), c).final.u for c in cfgs]
    out = [None] * 3

    def work(i):
        out[i] = nw.evolve(u0, np.zeros(128), cfgs[i]).final.u

    threads = [threading.Thread(target=work, args=(i,)) for i in range(3)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(np.array_equal(a, b) for a, b in zip(out, serial))
