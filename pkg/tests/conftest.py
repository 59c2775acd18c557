"""Shared fixtures: one small station layout and panel reused across modules."""

import pytest

from maxstab.design import pair_weights, sample_stations
from maxstab.maxstable import SmithParams
from maxstab.simulate import simulate_daily_panel


@pytest.fixture(scope="session")
def small_layout():
    return sample_stations(6, (505, 1))


@pytest.fixture(scope="session")
def small_table(small_layout):
    return pair_weights(small_layout)


@pytest.fixture(scope="session")
def theta_i():
    return SmithParams(2.0, 0.0, 3.0)


@pytest.fixture(scope="session")
def small_panel(small_layout, theta_i):
    return simulate_daily_panel(small_layout, theta_i, 60, 12, seed=(505, 0))
