from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from src.cli.manifest import SceneManifest
from src.cli.report import build_report
from src.core.analysis.analyzer import Analyzer
from src.core.checks.checks_base import get_all_check_schemas
from src.core.config import configure_logging
from src.core.errors import GeoredError, ParseError
from src.core.frames.frames import orbit_invariant, same_orbit
from src.core.frames.types import Frame
from src.core.groups.spec import parse_subgroup
from src.core.reductions.dof import connection_ledger, dof_table
from src.core.reductions.specs import parse_reduction

configure_logging()

api = FastAPI(title="geored")


class OrbitRequest(BaseModel):
    basis1: list[list[float]]
    basis2: list[list[float]]
    group: str


@api.exception_handler(GeoredError)
async def geored_error(request: Request, exc: GeoredError):
    return JSONResponse(status_code=422, content={"error": type(exc).__name__, "detail": str(exc)})


@api.get("/checks")
def checks():
    return get_all_check_schemas()


@api.get("/dof")
def dof(group: str, n: int = 4):
    spec = parse_reduction(group, n)
    return {**dof_table(spec).to_dict(), "connections": connection_ledger(spec)}


@api.post("/orbit")
def orbit(req: OrbitRequest):
    try:
        b1, b2 = Frame(req.basis1), Frame(req.basis2)
    except ValueError as e:
        raise ParseError(str(e)) from e
    if b1.n != b2.n:
        raise ParseError(f"bases of different size: {b1.n} and {b2.n}")
    spec = parse_subgroup(req.group).with_dim(b1.n)
    return {
        "same_orbit": same_orbit(b1, b2, spec),
        "invariant": orbit_invariant(b1, spec).to_dict(),
    }


@api.post("/analyze")
def analyze(manifest: SceneManifest, samples: Optional[int] = None, tol: Optional[float] = None,
            seed: Optional[int] = None):
    settings = manifest.settings(samples=samples, tol=tol, seed=seed)
    analysis = Analyzer(manifest.to_scene(settings)).run()
    return build_report(manifest, settings, analysis).model_dump(mode="json")
