# analysis/analyzer.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.core.analysis.scene import Scene
from src.core.checks import checks  # noqa: F401  registers the checks
from src.core.checks.checks_base import REGISTERED_CHECKS, applicable, get_check
from src.core.errors import GeometryError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_residual: Optional[float]
    sample_count: int
    counted: bool = True
    error: Optional[str] = None

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "sample_count": self.sample_count,
            "counted": self.counted,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class Analysis:
    results: List[CheckResult] = field(default_factory=list)
    extracted: Dict[str, Any] = field(default_factory=dict)
    dof: Dict[str, dict] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.counted)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.counted and not r.passed]


class Analyzer:
    def __init__(self, scene: Scene):
        self.scene = scene

    def applicable_checks(self) -> List[str]:
        return [
            name for name, fn in sorted(REGISTERED_CHECKS.items())
            if applicable(fn, self.scene.has)
        ]

    def execute_check(self, name: str) -> tuple[List[CheckResult], Dict[str, Any]]:
        """
        Run one check against the scene. Geometry errors become a failed entry;
        expression and domain errors propagate and abort the run.
        """
        fn = get_check(name)
        schema = fn.__check_schema__
        counted = schema["counted"]
        try:
            # derived scene objects are built lazily here, so their errors count against the check
            kwargs = {p: getattr(self.scene, p) for p in schema["requires"]}
            for p in schema["optional"]:
                if self.scene.has(p):
                    kwargs[p] = getattr(self.scene, p)
            outcome = fn(**kwargs)
        except GeometryError as e:
            logger.warning("check `%s` failed: %s", name, e)
            return [CheckResult(f"{name}.error", False, None, 0, counted, f"{type(e).__name__}: {e}")], {}

        results = [
            CheckResult(f"{name}.{r.name}", r.passed, r.max_residual, r.sample_count, counted)
            for r in outcome.residuals
        ]
        extracted = {f"{name}.{k}": v for k, v in outcome.extracted.items()}
        return results, extracted

    def run(self) -> Analysis:
        analysis = Analysis(dof=self.scene.dof())
        names = self.applicable_checks()
        logger.info("dispatching %d checks: %s", len(names), ", ".join(names))
        for name in names:
            results, extracted = self.execute_check(name)
            analysis.results.extend(results)
            analysis.extracted.update(extracted)
        analysis.results.sort(key=lambda r: r.name)
        return analysis
