# core/config.py
import dataclasses
import logging
import os
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Settings:
    """
    Run-wide defaults. Every sampling operation accepts explicit overrides;
    these values are used when the caller passes nothing.
    """

    samples: int = 32
    tol: float = 1e-9
    seed: int = 20240917
    singular_tol: float = 1e-12
    rank_tol: float = 1e-8
    fd_step: float = 1e-5
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            samples=int(os.getenv("GEORED_SAMPLES", cls.samples)),
            tol=float(os.getenv("GEORED_TOL", cls.tol)),
            seed=int(os.getenv("GEORED_SEED", cls.seed)),
            singular_tol=float(os.getenv("GEORED_SINGULAR_TOL", cls.singular_tol)),
            rank_tol=float(os.getenv("GEORED_RANK_TOL", cls.rank_tol)),
            fd_step=float(os.getenv("GEORED_FD_STEP", cls.fd_step)),
            log_level=os.getenv("GEORED_LOG_LEVEL", cls.log_level),
        )

    def replace(self, **overrides) -> "Settings":
        # None means "keep the current value" so CLI flags can be passed through as-is
        kept = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **kept)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()


def configure_logging(level: str | int | None = None) -> None:
    if level is None:
        level = get_settings().log_level
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("src").setLevel(level)
