# cli/report.py
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel

from src.cli.manifest import SceneManifest
from src.core.analysis.analyzer import Analysis
from src.core.config import Settings


class CheckEntry(BaseModel):
    name: str
    passed: bool
    max_residual: Optional[float]
    sample_count: int
    counted: bool = True
    error: Optional[str] = None


class Report(BaseModel):
    manifest: dict[str, Any]
    options: dict[str, Any]
    checks: list[CheckEntry]
    dof: dict[str, Any]
    extracted: dict[str, Any]
    passed: bool


def build_report(manifest: SceneManifest, settings: Settings, analysis: Analysis) -> Report:
    return Report(
        manifest=manifest.model_dump(mode="json", exclude_none=True),
        options={"samples": settings.samples, "tol": settings.tol, "seed": settings.seed},
        checks=[CheckEntry(**r.to_dict()) for r in analysis.results],
        dof=analysis.dof,
        extracted=analysis.extracted,
        passed=analysis.passed,
    )


def render(report: Report) -> str:
    """Deterministic text: keys sorted, fixed indentation, trailing newline."""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def write_report(report: Report, path: Optional[Path]) -> str:
    text = render(report)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
