import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import numpy as np
import typer

from src.cli.manifest import load_manifest
from src.cli.report import build_report, write_report
from src.core.analysis.analyzer import Analyzer
from src.core.config import configure_logging, get_settings
from src.core.errors import CheckFailed, GeoredError, ParseError
from src.core.frames.frames import orbit_invariant, same_orbit
from src.core.frames.types import Frame
from src.core.groups.spec import parse_subgroup
from src.core.reductions.dof import connection_ledger, dof_table
from src.core.reductions.specs import parse_reduction

logger = logging.getLogger(__name__)

app = typer.Typer(help="Frame-bundle reductions, preserving connections and their residual checks.")


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging.")):
    configure_logging("DEBUG" if verbose else None)


@contextmanager
def exit_codes():
    """Turn library errors into the process exit code of their class."""
    try:
        yield
    except GeoredError as e:
        typer.echo(f"{type(e).__name__}: {e}", err=True)
        raise typer.Exit(code=e.exit_code)


def parse_basis(text: str) -> np.ndarray:
    """`"1,0;0,1"` -> 2x2 matrix; rows split on `;` or newlines."""
    rows = [r for r in text.replace("\n", ";").split(";") if r.strip()]
    try:
        matrix = np.array([[float(x) for x in r.split(",")] for r in rows])
    except ValueError as e:
        raise ParseError(f"cannot read basis `{text}`: {e}") from e
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ParseError(f"basis must be a square matrix, got `{text}`")
    return matrix


@app.command()
def analyze(
    manifest: Path = typer.Argument(..., help="Scene manifest (JSON)."),
    report: Optional[Path] = typer.Option(None, "--report", help="Write the report here instead of stdout."),
    samples: Optional[int] = typer.Option(None, "--samples"),
    tol: Optional[float] = typer.Option(None, "--tol"),
    seed: Optional[int] = typer.Option(None, "--seed"),
):
    """Run every check that applies to the scene and emit the report."""
    with exit_codes():
        scene_manifest = load_manifest(manifest)
        settings = scene_manifest.settings(samples=samples, tol=tol, seed=seed)
        scene = scene_manifest.to_scene(settings)
        analysis = Analyzer(scene).run()
        text = write_report(build_report(scene_manifest, settings, analysis), report)
        if report is None:
            typer.echo(text, nl=False)
        if not analysis.passed:
            names = ", ".join(r.name for r in analysis.failures())
            raise CheckFailed(f"failed checks: {names}")


@app.command()
def dof(
    n: int = typer.Option(4, "--n", help="Manifold dimension."),
    group: str = typer.Option(..., "--group", help='Reduction tag, e.g. "O(1,3)", W, SL, Id, U(1,3), TG, TP(1,3).'),
    as_json: bool = typer.Option(False, "--json", help="Print the full ledger as JSON."),
):
    """Degree-of-freedom ledger of a reduction of GL(n)."""
    with exit_codes():
        spec = parse_reduction(group, n)
        table = dof_table(spec)
        ledger = connection_ledger(spec)
        if as_json:
            typer.echo(json.dumps({**table.to_dict(), "connections": ledger}, sort_keys=True, indent=2))
            return
        typer.echo(f"reduction: {spec.label()}")
        typer.echo(f"d = {table.dim_H}")
        typer.echo(f"D - d = {table.dim_G_mod_H}")
        typer.echo(f"connection space = {table.connection_space}")
        typer.echo(f"preserving space = {table.preserving_space}")
        typer.echo(f"symmetric = {ledger['symmetric']}")
        typer.echo(f"symmetric preserving = {ledger['symmetric_preserving']}")
        for stage in table.stages:
            typer.echo(f"stage {stage.parent} -> {stage.subgroup}: quotient {stage.dim_G_mod_H}")
        if table.notes:
            typer.echo(f"notes: {table.notes}")


@app.command()
def orbit(
    basis1: str = typer.Option(..., "--basis1", help='Rows separated by ";", entries by ",".'),
    basis2: str = typer.Option(..., "--basis2"),
    group: str = typer.Option(..., "--group", help='Subgroup tag, e.g. "O(1,3)", W(1,3), SL, Id.'),
):
    """Whether two bases lie in the same H-orbit, and the invariant of the first."""
    with exit_codes():
        b1 = Frame(parse_basis(basis1))
        b2 = Frame(parse_basis(basis2))
        if b1.n != b2.n:
            raise ParseError(f"bases of different size: {b1.n} and {b2.n}")
        spec = parse_subgroup(group).with_dim(b1.n)
        verdict = same_orbit(b1, b2, spec)
        typer.echo(f"same orbit: {'yes' if verdict else 'no'}")
        typer.echo(json.dumps(orbit_invariant(b1, spec).to_dict(), sort_keys=True))


@app.command()
def serve(
    host: str = typer.Option("127.0.0.1", "--host"),
    port: int = typer.Option(8008, "--port"),
):
    """Serve the HTTP API."""
    import uvicorn

    from src.server.server import api

    logger.info("serving on %s:%d (log level %s)", host, port, get_settings().log_level)
    uvicorn.run(api, host=host, port=port)
