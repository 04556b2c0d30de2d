"""Shared fixtures."""

import pytest

from cornerlab.config import reset_settings
from cornerlab.module.grid_core import Domain


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Fresh settings per test, writing outputs and logs under tmp_path."""
    monkeypatch.setenv("CORNERLAB_OUTPUT_DIR", str(tmp_path / "results"))
    monkeypatch.setenv("CORNERLAB_LOGS_DIR", str(tmp_path / "logs"))
    monkeypatch.delenv("CORNERLAB_THREADS", raising=False)
    monkeypatch.delenv("CORNERLAB_SEED", raising=False)
    monkeypatch.delenv("CORNERLAB_BOUND_CONSTANT", raising=False)
    monkeypatch.delenv("CORNERLAB_NODE_BUDGET", raising=False)
    monkeypatch.delenv("CORNERLAB_LOG_LEVEL", raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def f3():
    return Domain.prime_plane(3)


@pytest.fixture
def f5():
    return Domain.prime_plane(5)


@pytest.fixture
def f7():
    return Domain.prime_plane(7)
