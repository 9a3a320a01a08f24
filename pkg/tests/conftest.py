import numpy as np
import pytest

import nlwave as nw

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Collect one pass/fail line per acceptance criterion test."""
    outcome = yield
    rep = outcome.get_result()
    if not item.name.startswith("test_criterion_"):
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
        _ACCEPTANCE[item.name] = f"{'PASS' if rep.passed else 'FAIL'}  {item.name}  {detail}".rstrip()


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for name in sorted(_ACCEPTANCE, key=lambda n: int(n.split("_")[2])):
            terminalreporter.write_line(_ACCEPTANCE[name])


@pytest.fixture(scope="session")
def grid1024():
    return nw.Grid(100.0, 1024)


@pytest.fixture(scope="session")
def ibq_profile(grid1024):
    c = np.sqrt(7.0 / 6.0)
    cfg = nw.SolitarySolveConfig(c=c, initial_guess=np.exp(-grid1024.nodes**2), gamma=2.0, tol=1e-10)
    phi, report = nw.solve_solitary(nw.Exponential(), grid1024, cfg)
    return c, phi, report


@pytest.fixture(scope="session")
def sin_profile(grid1024):
    cfg = nw.SolitarySolveConfig(c=1.08, initial_guess=np.exp(-grid1024.nodes**2), gamma=2.0, tol=1e-10)
    phi, report = nw.solve_solitary(nw.SinModulated(eta=1.0), grid1024, cfg)
    return 1.08, phi, report
