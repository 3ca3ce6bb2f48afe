import numpy as np
import pytest

from irsbd import ScenarioConfig
from irsbd.channel import draw_channel_set, draw_direct_ue1
from irsbd.irs import design_phase
from irsbd.scene import build_geometry
from irsbd.sweep import realization_rngs


def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def cfg():
    return ScenarioConfig()


@pytest.fixture(scope="session")
def geom(cfg):
    return build_geometry(cfg)


def draw_scenario(cfg, geom, index, seed=2024):
    main, direct = realization_rngs(seed, index)
    ch = draw_channel_set(cfg, geom, main)
    return ch, design_phase(ch.J, ch.G1), draw_direct_ue1(cfg, geom, direct)


@pytest.fixture(scope="session")
def scenarios(cfg, geom):
    """100 default-scenario realizations: (channels, phase, direct UE1 channel)."""
    return [draw_scenario(cfg, geom, r) for r in range(100)]


ACCEPTANCE_LINES = []


def record_criterion(name, passed, detail):
    """Register an acceptance outcome for the end-of-run summary, then assert it."""
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
    assert passed, f"{name}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
