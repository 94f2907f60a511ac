import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

import spline_basis  # noqa: E402


@pytest.fixture
def unit_hat():
    """Single hat on breakpoints {0, 1, 2}."""
    return spline_basis.make_uniform_basis(0.0, 2.0, 1, 2)


@pytest.fixture
def shifted_hat():
    """Single hat on breakpoints {1, 2, 3}."""
    return spline_basis.make_uniform_basis(1.0, 3.0, 1, 2)


@pytest.fixture
def isolated_outputs(tmp_path, monkeypatch):
    """Keep run history and output folders inside the test's tmp dir."""
    import config
    monkeypatch.setattr(config, "OUTPUT_DIR", str(tmp_path / "outputs"))
    monkeypatch.setattr(config, "RESULTS_DB_PATH", str(tmp_path / "history.db"))
