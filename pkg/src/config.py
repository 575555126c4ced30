"""Central configuration: loads from .env and environment variables."""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


_BASE_DIR = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """Application settings loaded from environment / .env file."""

    model_config = SettingsConfigDict(
        env_file=str(_BASE_DIR / ".env"),
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # ── Environment ──────────────────────────────────────────────
    environment: Literal["development", "staging", "production"] = "development"
    log_level: str = "INFO"

    # ── Experiment defaults ──────────────────────────────────────
    default_seed: int = Field(default=20_070_301, ge=0, lt=2**64)
    default_instances: int = Field(default=200, ge=1)
    default_points: int = Field(default=200, ge=2)
    sweep_workers: int = Field(default=1, ge=1)
    csv_float_digits: int = Field(default=6, ge=1, le=17)

    # ── Routing ──────────────────────────────────────────────────
    # None = number of vertices in the routed graph
    route_hop_limit: int | None = Field(default=None, ge=1)

    # ── Fixtures ─────────────────────────────────────────────────
    theta_fixture_cones: int = Field(default=8, ge=3)
    hsp_fixture_max_attempts: int = Field(default=12, ge=1)

    # ── Paths ────────────────────────────────────────────────────
    data_dir: str = str(_BASE_DIR / "data")
    reference_dir: str = str(_BASE_DIR / "data" / "reference")
    sweep_dir: str = str(_BASE_DIR / "data" / "sweeps")
    result_dir: str = str(_BASE_DIR / "data" / "results")
    ledger_db_path: str = str(_BASE_DIR / "data" / "ledger.db")
    ledger_enabled: bool = True

    # ── Helpers ──────────────────────────────────────────────────
    def ensure_dirs(self) -> None:
        """Create all output directories."""
        for d in (self.result_dir, str(Path(self.ledger_db_path).parent)):
            Path(d).mkdir(parents=True, exist_ok=True)


def get_settings() -> Settings:
    """Return a Settings instance."""
    return Settings()


if __name__ == "__main__":
    s = get_settings()
    s.ensure_dirs()
    print(f"Environment : {s.environment}")
    print(f"Seed        : {s.default_seed}")
    print(f"Protocol    : {s.default_instances} instances x {s.default_points} points")
    print(f"Results     : {s.result_dir}")
    print("✓ Config loaded successfully")
