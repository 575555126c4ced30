"""Test configuration and shared fixtures."""

import os
import sys
from pathlib import Path

import pytest

# Ensure the project root is on PYTHONPATH
_PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(_PROJECT_ROOT))

# Set test environment variables before anything else imports config
os.environ.setdefault("ENVIRONMENT", "development")
os.environ.setdefault("LOG_LEVEL", "WARNING")

from src.experiments.points import generate_points  # noqa: E402
from src.logger import setup_logging  # noqa: E402
from src.models.geometry import Point2D, SpannerParams  # noqa: E402

setup_logging()


@pytest.fixture(autouse=True)
def _isolated_outputs(tmp_path, monkeypatch):
    """Keep ledger and result files out of the repository."""
    monkeypatch.setenv("LEDGER_DB_PATH", str(tmp_path / "ledger" / "runs.db"))
    monkeypatch.setenv("RESULT_DIR", str(tmp_path / "results"))


@pytest.fixture
def collinear_points() -> list[Point2D]:
    """p=(0,0), a=(1,0), b=(3,0)."""
    return [Point2D(x=0.0, y=0.0), Point2D(x=1.0, y=0.0), Point2D(x=3.0, y=0.0)]


@pytest.fixture
def params() -> SpannerParams:
    return SpannerParams.from_degrees(0.75, 30)


@pytest.fixture
def random_points() -> list[Point2D]:
    return generate_points(40, seed=11)
