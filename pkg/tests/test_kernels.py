import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import nlwave as nw
from nlwave.errors import (
    ConfigError,
    DecayConditionViolated,
    NonPositiveParameter,
    NonPositiveSymbol,
    OutOfTableRange,
)
from nlwave.kernels import parse_kernel

FAMILIES = [
    nw.Dirac(),
    nw.Exponential(),
    nw.DoubleExponential(eta1=1.0, eta2=1.0),
    nw.DoubleExponential.from_lengths(1.0, 0.5),
    nw.SinModulated(eta=0.5),
    nw.SinModulated(eta=1.0),
    nw.RationalMix(mu=0.1),
    nw.Tabulated(k_samples=[0.0, 1.0, 2.0, 40.0], values=[1.0, 0.5, 0.2, 0.0006], r=2, c_bound=1.0),
]


def test_closed_form_values():
    assert nw.beta_hat(nw.Exponential(), 1.0) == 0.5
    assert nw.beta_hat(nw.SinModulated(eta=1.0), 0.0) == 1.0
    assert nw.beta_hat(nw.RationalMix(mu=0.1), 0.0) == pytest.approx(1.1, abs=1e-15)
    assert nw.beta_hat(nw.Dirac(), 123.0) == 1.0


def test_double_exponential_from_lengths():
    k = nw.DoubleExponential.from_lengths(2.0, 3.0)
    assert (k.eta1, k.eta2) == (13.0, 36.0)
    assert nw.beta_hat(k, 0.5) == pytest.approx(1.0 / (1 + 13 * 0.25 + 36 * 0.0625), rel=1e-15)


@pytest.mark.parametrize(
    "make",
    [
        lambda: nw.SinModulated(eta=0.0),
        lambda: nw.SinModulated(eta=-1.0),
        lambda: nw.RationalMix(mu=0.0),
        lambda: nw.DoubleExponential.from_lengths(0.0, 1.0),
        lambda: nw.DoubleExponential(eta1=1.0, eta2=-2.0),
    ],
)
def test_nonpositive_parameters_rejected(make):
    with pytest.raises(NonPositiveParameter):
        make()


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.0, max_value=39.0))
def test_symbols_are_even(k):
    for kernel in FAMILIES:
        assert nw.beta_hat(kernel, k) == nw.beta_hat(kernel, -k)


def test_strict_monotonicity_where_claimed():
    k = np.linspace(0.0, 30.0, 3001)
    for kernel in (nw.Exponential(), nw.RationalMix(mu=0.1), nw.RationalMix(mu=5.0)):
        assert np.all(np.diff(kernel.symbol(k)) < 0)


def test_limit_consistency():
    k = np.linspace(-20, 20, 801)
    ibq = nw.Exponential().symbol(k)
    hbq = nw.DoubleExponential(eta1=1, eta2=1).symbol(k)
    prev_sin = prev_rat = np.inf
    for small in (1e-1, 1e-2, 1e-3, 1e-4, 1e-6):
        d_sin = np.max(np.abs(nw.SinModulated(eta=small).symbol(k) - ibq))
        d_rat = np.max(np.abs(nw.RationalMix(mu=small).symbol(k) - hbq))
        assert d_sin < prev_sin and d_rat < prev_rat
        prev_sin, prev_rat = d_sin, d_rat
    assert prev_sin < 1e-5 and prev_rat < 1e-5


def test_decay_report_exponential_is_tight():
    rep = nw.verify_decay_condition(nw.Exponential(), 100.0, 1000)
    assert rep.holds
    assert abs(rep.worst_ratio - 1.0) < 1e-14


def test_decay_report_dirac():
    assert nw.verify_decay_condition(nw.Dirac(), 50.0, 100).holds


def test_sin_kernel_eta_one_has_no_r2_decay():
    # brute force: at k^2 = 3pi/2 + 2 pi n the denominator is exactly 1, so the
    # ratio beta_hat (1+k^2) / 2 equals (1+k^2)/2, unbounded in n
    kernel = nw.SinModulated(eta=1.0, r=2.0, c_bound=2.0)
    n = np.arange(0, 300)
    k = np.sqrt(1.5 * np.pi + 2 * np.pi * n)
    ratio = kernel.symbol(k) * (1 + k * k) / 2.0
    assert ratio.max() > 100
    rep = nw.verify_decay_condition(kernel, 50.0, 100_000)
    assert not rep.holds and rep.worst_ratio > 10
    # the bound that does hold for eta = 1 is r = 0, C = 1
    assert nw.verify_decay_condition(nw.SinModulated(eta=1.0), 50.0, 100_000).holds


def test_sin_kernel_eta_below_one_default_bound_holds():
    kernel = nw.SinModulated(eta=0.5)
    assert (kernel.r, kernel.c_bound) == (2.0, 2.0)
    assert nw.verify_decay_condition(kernel, 60.0, 200_000).holds


@pytest.mark.parametrize("eta1, eta2", [(1.0, 1.0), (13.0, 36.0), (0.5, 3.0), (5.0, 0.2)])
def test_double_exponential_default_bound_matches_brute_force(eta1, eta2):
    kernel = nw.DoubleExponential(eta1=eta1, eta2=eta2)
    s = np.linspace(0, 1e4, 2_000_001)
    brute = np.max((1 + s) ** 2 / (1 + eta1 * s + eta2 * s * s))
    # the analytic sup can only sit above a sampled maximum
    assert kernel.c_bound >= max(brute, 1 / eta2) * (1 - 1e-12)
    assert kernel.c_bound == pytest.approx(max(brute, 1 / eta2), rel=1e-4)
    assert nw.verify_decay_condition(kernel, 200.0, 100_000).holds


def test_rational_default_bound_holds():
    for mu in (0.1, 1.0, 10.0):
        assert nw.verify_decay_condition(nw.RationalMix(mu=mu), 200.0, 100_000).holds


def test_sup_symbol():
    grid = nw.Grid(100.0, 1024)
    assert nw.sup_symbol(nw.Exponential(), grid) == 1.0
    assert nw.sup_symbol(nw.RationalMix(mu=5.0), grid) == 6.0
    kappa = np.pi * np.concatenate([np.arange(0, 512), np.arange(-512, 0)]) / 100.0
    brute = max(1.0 / (1 + q * q + q * q * math.sin(q * q)) for q in kappa)
    got = nw.sup_symbol(nw.SinModulated(eta=1.0), grid)
    assert 0 < got <= 1 and got == pytest.approx(brute, rel=1e-15)


def test_positivity_scan():
    with pytest.raises(NonPositiveSymbol):
        nw.ensure_admissible(nw.SinModulated(eta=10.0), nw.Grid(100.0, 1024))
    # kappa_max^2 < pi keeps sin(kappa^2) >= 0 on every mode
    nw.ensure_admissible(nw.SinModulated(eta=10.0), nw.Grid(100.0, 112))
    nw.ensure_admissible(nw.SinModulated(eta=1.0), nw.Grid(100.0, 1024))
    nw.ensure_admissible(nw.SinModulated(eta=0.9), nw.Grid(100.0, 4096))


def test_tabulated_interpolation_and_range():
    tab = nw.Tabulated(k_samples=[0.0, 1.0, 2.0], values=[1.0, 0.5, 0.2], r=0, c_bound=1.0)
    assert tab.symbol(0.5) == pytest.approx(0.75)
    assert tab.symbol(-1.5) == pytest.approx(0.35)
    with pytest.raises(OutOfTableRange):
        tab.symbol(2.5)
    with pytest.raises(OutOfTableRange):
        tab.symbol(np.array([0.0, -3.0]))


def test_tabulated_must_satisfy_decay():
    with pytest.raises(DecayConditionViolated):
        nw.Tabulated(k_samples=[0.0, 1.0], values=[1.0, 0.9], r=2, c_bound=1.0)
    with pytest.raises(DecayConditionViolated):
        nw.Tabulated(k_samples=[0.0, 1.0], values=[1.0, -0.1], r=0, c_bound=1.0)
    with pytest.raises(ConfigError):
        nw.Tabulated(k_samples=[0.0, 1.0, 1.0], values=[1.0, 0.5, 0.4])


def test_tabulated_from_csv(tmp_path):
    k = np.linspace(0, 20, 201)
    path = tmp_path / "tab.csv"
    path.write_text("k,beta_hat\n" + "".join(f"{float(a)!r},{1 / (1 + float(a) ** 2)!r}\n" for a in k))
    tab = nw.kernel_from_config({"family": "tabulated", "params": {"path": str(path)}, "r": 2, "c_bound": 1})
    q = np.linspace(-19.9, 19.9, 77)
    assert np.max(np.abs(tab.symbol(q) - nw.Exponential().symbol(q))) < 5e-3
    assert tab.to_config()["params"] == {"path": str(path)}


def test_kernel_config_roundtrip():
    for kernel in FAMILIES[:-1]:
        again = nw.kernel_from_config(kernel.to_config())
        k = np.linspace(0, 10, 11)
        assert np.array_equal(again.symbol(k), kernel.symbol(k))
        assert (again.r, again.c_bound) == (kernel.r, kernel.c_bound)


def test_kernel_config_errors():
    with pytest.raises(ConfigError):
        nw.kernel_from_config({"family": "nope"})
    with pytest.raises(ConfigError):
        nw.kernel_from_config({"family": "sin", "params": {"eta": 1, "mu": 2}})
    with pytest.raises(ConfigError):
        nw.kernel_from_config({"family": "sin", "params": {}})
    with pytest.raises(ConfigError):
        nw.kernel_from_config({"family": "exp", "extra": 1})


def test_parse_kernel_flag():
    assert parse_kernel("sin:eta=1") == {"family": "sin", "params": {"eta": 1.0}}
    assert parse_kernel("dexp:eta1=1,eta2=2,r=4") == {"family": "dexp", "params": {"eta1": 1.0, "eta2": 2.0}, "r": 4.0}
    assert parse_kernel("exp") == {"family": "exp", "params": {}}
    with pytest.raises(ConfigError):
        parse_kernel("sin:eta")
