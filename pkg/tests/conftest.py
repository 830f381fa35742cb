"""
Shared pytest fixtures
"""
import random

import pytest

from sphericalis.config import get_settings
from sphericalis.fixtures import get_fixture
from sphericalis.root_systems import root_system_from_cartan

A1 = [[2]]
A2 = [[2, -1], [-1, 2]]
B2 = [[2, -1], [-2, 2]]
G2 = [[2, -1], [-3, 2]]


@pytest.fixture
def settings_env(monkeypatch):
    """Set SPHERICALIS_* variables for one test; the settings cache is reset around it"""

    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(f"SPHERICALIS_{key.upper()}", str(value))
        get_settings.cache_clear()
        return get_settings()

    yield apply
    monkeypatch.undo()
    get_settings.cache_clear()


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def group_a1():
    return get_fixture("group-a1").datum


@pytest.fixture
def whittaker_a1():
    return get_fixture("whittaker-a1").datum


@pytest.fixture
def a1():
    return root_system_from_cartan(A1)


@pytest.fixture
def a2():
    return root_system_from_cartan(A2)
