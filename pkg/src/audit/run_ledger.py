"""Run ledger: SQLite-backed record of every parameter sweep."""

from __future__ import annotations

import hashlib
import sqlite3
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from src.logger import get_logger
from src.models.sweep import SweepConfig, SweepResult

logger = get_logger(__name__)

_CREATE_TABLE = """\
CREATE TABLE IF NOT EXISTS sweep_runs (
    run_id       TEXT PRIMARY KEY,
    config_hash  TEXT NOT NULL,
    seed         INTEGER NOT NULL,
    cells        INTEGER NOT NULL,
    instances    INTEGER NOT NULL,
    points       INTEGER NOT NULL,
    csv_path     TEXT,
    elapsed      REAL,
    result_json  TEXT,
    timestamp    TEXT NOT NULL
);

CREATE INDEX IF NOT EXISTS idx_runs_hash ON sweep_runs(config_hash);
CREATE INDEX IF NOT EXISTS idx_runs_ts   ON sweep_runs(timestamp);
"""


def config_hash(config: SweepConfig) -> str:
    """Stable digest of a sweep configuration (16 hex chars)."""
    return hashlib.sha256(config.model_dump_json().encode("utf-8")).hexdigest()[:16]


class RunLedger:
    """SQLite ledger of sweep runs."""

    def __init__(self, db_path: str | Path) -> None:
        self._db_path = str(db_path)
        Path(self._db_path).parent.mkdir(parents=True, exist_ok=True)
        self._init_db()

    def _init_db(self) -> None:
        with sqlite3.connect(self._db_path) as conn:
            conn.executescript(_CREATE_TABLE)
        logger.debug("Run ledger initialised", path=self._db_path)

    def log_run(
        self,
        config: SweepConfig,
        results: list[SweepResult],
        elapsed: float,
        csv_path: str | Path | None = None,
    ) -> str:
        """Write one ledger row and return its run id."""
        run_id = uuid.uuid4().hex
        result_json = "[" + ",".join(r.model_dump_json() for r in results) + "]"

        with sqlite3.connect(self._db_path) as conn:
            conn.execute(
                """
                INSERT INTO sweep_runs (
                    run_id, config_hash, seed, cells, instances, points,
                    csv_path, elapsed, result_json, timestamp
                ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                """,
                (
                    run_id,
                    config_hash(config),
                    config.seed,
                    len(results),
                    config.instances,
                    config.points_per_instance,
                    str(csv_path) if csv_path is not None else None,
                    elapsed,
                    result_json,
                    datetime.now(timezone.utc).isoformat(),
                ),
            )
        logger.info("Sweep run recorded", run_id=run_id, cells=len(results))
        return run_id

    def query_recent(self, limit: int = 20) -> list[dict[str, Any]]:
        """Most recent runs first."""
        with sqlite3.connect(self._db_path) as conn:
            conn.row_factory = sqlite3.Row
            rows = conn.execute(
                "SELECT * FROM sweep_runs ORDER BY timestamp DESC LIMIT ?", (limit,)
            ).fetchall()
        return [dict(r) for r in rows]

    def query_by_config_hash(self, digest: str) -> list[dict[str, Any]]:
        with sqlite3.connect(self._db_path) as conn:
            conn.row_factory = sqlite3.Row
            rows = conn.execute(
                "SELECT * FROM sweep_runs WHERE config_hash = ? ORDER BY timestamp DESC",
                (digest,),
            ).fetchall()
        return [dict(r) for r in rows]
