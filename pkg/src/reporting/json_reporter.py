"""JSON report writer: saves analysis and sweep summaries to disk."""

from __future__ import annotations

import json
from pathlib import Path

from pydantic import BaseModel

from src.logger import get_logger

logger = get_logger(__name__)


def save_json_report(report: BaseModel, output_dir: str | Path, name: str) -> Path:
    """Serialize a pydantic model as ``<output_dir>/<name>.json``.

    Returns the path to the saved file.
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    path = output_dir / f"{name}.json"
    data = report.model_dump(mode="json")
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, default=str)

    logger.info("JSON report saved", path=str(path))
    return path
