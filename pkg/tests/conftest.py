"""Shared fixtures: one solver config and a few expensive session artifacts."""

import numpy as np
import pytest

from suitachain import (
    Annulus,
    Disc,
    Ellipse,
    FourierCurve,
    Polygon,
    SolverConfig,
    solve,
)
from suitachain.bergman import build_model, build_quadrature_adapted


@pytest.fixture(scope="session")
def cfg():
    return SolverConfig()


@pytest.fixture(scope="session")
def unit_disc():
    return Disc(0.0, 1.0)


@pytest.fixture(scope="session")
def ellipse():
    return Ellipse(0.0, 2.0, 1.0)


@pytest.fixture(scope="session")
def square():
    # [-1,1]^2, counterclockwise
    return Polygon((1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j))


@pytest.fixture(scope="session")
def annulus():
    return Annulus(0.0, 0.2, 1.0)


@pytest.fixture(scope="session")
def blob():
    return FourierCurve((0.0, 0.08, 0.0, 1.0, 0.12))


@pytest.fixture(scope="session")
def disc_sol_center(unit_disc, cfg):
    return solve(unit_disc, 0.0, cfg)


@pytest.fixture(scope="session")
def disc_sol_half(unit_disc, cfg):
    return solve(unit_disc, 0.5, cfg)


@pytest.fixture(scope="session")
def disc_rule(unit_disc, cfg):
    return build_quadrature_adapted(unit_disc, cfg.bergman_resolution)


@pytest.fixture(scope="session")
def disc_model_30(unit_disc, disc_rule):
    return build_model(unit_disc, 0.0, 30, disc_rule)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(np.random.SeedSequence(20260817))
