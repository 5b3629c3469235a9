"""Shared fixtures for the qc_distortion test suite"""

import numpy as np
import pytest

from qcdistortion.config import PROFILE_ENV, THREADS_ENV
from qcdistortion.mat_core import random_orthogonal
from qcdistortion.models import SingularForm


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-resolution oracle runs (deselect with -m 'not slow')")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv(PROFILE_ENV, raising=False)
    monkeypatch.delenv(THREADS_ENV, raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def sing24():
    return SingularForm.sing(2.0, 4.0)


@pytest.fixture
def rotated_matrix(rng):
    """A = Q1 diag(0.5, 1, 2) Q2 with Haar-random orthogonal factors"""
    return random_orthogonal(rng) @ np.diag([0.5, 1.0, 2.0]) @ random_orthogonal(rng)
