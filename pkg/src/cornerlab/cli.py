"""
Main CLI entry point for CornerLab.

This module provides the command-line interface: the claim verification
battery, saturation and extremal searches, coloring audits, density tables
and schema export. JSON documents go to stdout; summaries and logs go to
stderr. Exit codes: 0 success, 1 failing check, 2 usage or precondition
error, 3 I/O, checkpoint or file-format error.
"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import typer
from rich.console import Console
from rich.table import Table

from cornerlab.config import get_settings, reset_settings
from cornerlab.errors import CornerLabError, UsageError
from cornerlab.module.extremal import (
    ExtremalKind,
    ExtremalMode,
    density_table,
    max_config_free,
    write_density_table,
)
from cornerlab.module.grid_core import Domain
from cornerlab.module.ramsey import (
    Coloring,
    collinear_sweep,
    find_mono_axis_corner,
    find_mono_collinear_triple,
    mono_corner_counts,
    mono_decomposition_audit,
)
from cornerlab.module.saturation import SaturationKind, SearchMode, min_saturated_search
from cornerlab.services import (
    CommandOutput,
    ErrorOutput,
    build_manifest,
    verify_claims,
    write_manifest,
    write_schemas,
)
from cornerlab.utils.logging import get_logger, setup_logging

console = Console(stderr=True)
app = typer.Typer(
    name="cornerlab",
    help="CornerLab: corners, squares, saturation and coloring audits on finite grids",
    add_completion=False,
    rich_markup_mode="rich",
)

config_app = typer.Typer(name="config", help="Configuration commands")
app.add_typer(config_app, name="config")

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

SATURATION_KINDS = {
    "corner-sat": SaturationKind.CORNER,
    "square-sat": SaturationKind.SQUARE,
    "square-cover": SaturationKind.SQUARE_COVER,
}
EXTREMAL_KINDS = {
    "corner-free-max": ExtremalKind.CORNER,
    "axis-corner-free-max": ExtremalKind.AXIS_CORNER,
    "square-free-max": ExtremalKind.SQUARE,
}
SATURATION_MODES = {
    "exact": SearchMode.EXACT,
    "branch-bound": SearchMode.BRANCH_BOUND,
    "greedy": SearchMode.GREEDY,
}
EXTREMAL_MODES = {
    "exact": ExtremalMode.EXACT,
    "heuristic": ExtremalMode.HEURISTIC,
}
TABLE_KINDS = {
    "corner": ExtremalKind.CORNER,
    "axis-corner": ExtremalKind.AXIS_CORNER,
    "square": ExtremalKind.SQUARE,
}


def _parse_int_list(text: str, option: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise typer.BadParameter(f"expected comma-separated integers, got '{text}'", param_hint=option) from e


def _domain(p: Optional[int], n: Optional[int]) -> Domain:
    if (p is None) == (n is None):
        raise UsageError("give exactly one of --p and --n")
    return Domain.prime_plane(p) if p is not None else Domain.integer_grid(n)


def _threads(threads: Optional[int]) -> int:
    if threads is not None:
        return threads
    return get_settings().runtime.resolved_threads()


def _seed(seed: Optional[int]) -> int:
    return seed if seed is not None else get_settings().runtime.seed


def _output_dir(output_dir: Optional[Path]) -> Path:
    return output_dir if output_dir is not None else get_settings().runtime.output_dir


def _emit(document: Dict[str, Any]) -> None:
    typer.echo(json.dumps(document, indent=2, default=str))


def _execute(
    command: str,
    parameters: Dict[str, Any],
    seed: int,
    output_dir: Optional[Path],
    body: Callable[[], Dict[str, Any]],
    ok: Callable[[Dict[str, Any]], bool] = lambda result: True,
) -> None:
    """
    Run a command body, write its manifest and print its JSON document.

    Library errors become an ErrorOutput and their exit code; I/O errors exit 3.
    """
    directory = _output_dir(output_dir)
    try:
        result = body()
    except CornerLabError as e:
        code = e.exit_code
        error = ErrorOutput(error=type(e).__name__, message=str(e), context=e.to_dict()["context"], exit_code=code)
    except OSError as e:
        code = EXIT_IO
        error = ErrorOutput(error=type(e).__name__, message=str(e), exit_code=code)
    else:
        passed = ok(result)
        manifest = build_manifest(command, parameters, seed, result)
        path = write_manifest(manifest, directory)
        output = CommandOutput(
            command=command,
            ok=passed,
            result=result,
            manifest=manifest,
            manifest_path=str(path),
        )
        _emit(output.model_dump(mode="json"))
        if not passed:
            raise typer.Exit(EXIT_CHECK_FAILED)
        return

    logger.error(f"{command} failed: {error.message}")
    error_dict = error.model_dump(mode="json")
    try:
        write_manifest(build_manifest(command, parameters, seed, error_dict), directory)
    except OSError as e:
        logger.error(f"Could not write manifest: {e}")
    _emit(error_dict)
    console.print(f"[red]Error: {error.message}[/red]")
    raise typer.Exit(code)


@app.callback()
def callback(
    config_file: Optional[Path] = typer.Option(None, "--config", "-c", help="Configuration file (JSON or YAML)"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Console log level"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Shortcut for --log-level INFO"),
):
    """
    CornerLab: corners, squares, saturation and coloring audits on finite grids.
    """
    reset_settings()
    try:
        settings = get_settings(str(config_file) if config_file else None)
    except (OSError, ValueError) as e:
        console.print(f"[red]Could not load configuration: {e}[/red]")
        raise typer.Exit(EXIT_IO)
    if verbose:
        settings.runtime.log_level = "INFO"
    if log_level:
        settings.runtime.log_level = log_level.upper()
    setup_logging(settings)


@app.command("verify-claims")
def verify_claims_command(
    p_list: Optional[str] = typer.Option(None, "--p-list", help="Comma-separated odd primes (default from settings)"),
    grid_list: Optional[str] = typer.Option(None, "--grid-list", help="Comma-separated grid sizes (default from settings)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Battery seed (default CORNERLAB_SEED)"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", help="Worker threads (default CORNERLAB_THREADS)"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Directory for manifests"),
):
    """Run the invariant battery over every module."""
    settings = get_settings()
    primes = _parse_int_list(p_list, "--p-list") if p_list is not None else list(settings.verify.p_list)
    grids = _parse_int_list(grid_list, "--grid-list") if grid_list is not None else list(settings.verify.grid_list)
    run_seed = _seed(seed)
    n_threads = _threads(threads)

    def body() -> Dict[str, Any]:
        report = verify_claims(primes, grids, run_seed, n_threads)
        if console.is_terminal:
            table = Table(title="Claim verification")
            table.add_column("Check", style="cyan")
            table.add_column("Result")
            for check in report.checks:
                table.add_row(check.name, "[green]pass[/green]" if check.passed else "[red]FAIL[/red]")
            console.print(table)
        return report.model_dump(mode="json")

    _execute(
        "verify-claims",
        {"p_list": primes, "grid_list": grids},
        run_seed,
        output_dir,
        body,
        ok=lambda result: bool(result["passed"]),
    )


@app.command("search")
def search_command(
    kind: str = typer.Option(..., "--kind", "-k", help="corner-sat, square-sat, square-cover, corner-free-max, axis-corner-free-max or square-free-max"),
    p: Optional[int] = typer.Option(None, "--p", help="Prime plane F_p x F_p"),
    n: Optional[int] = typer.Option(None, "--n", help="Integer grid [n] x [n]"),
    mode: Optional[str] = typer.Option(None, "--mode", "-m", help="exact, branch-bound or greedy (saturation); exact or heuristic (max)"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Node budget, or restarts / moves for heuristics"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed of every random draw (default CORNERLAB_SEED)"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", help="Worker threads (default CORNERLAB_THREADS)"),
    checkpoint: Optional[Path] = typer.Option(None, "--checkpoint", help="Checkpoint file written when the budget runs out"),
    resume: bool = typer.Option(False, "--resume", help="Continue from --checkpoint"),
    axis_parallel: bool = typer.Option(False, "--axis-parallel", help="Axis-parallel corners for corner-sat"),
    symmetry: bool = typer.Option(True, "--symmetry/--no-symmetry", help="Root symmetry reduction in prime planes"),
    strict: bool = typer.Option(False, "--strict", help="Fail with exit code 1 when the node budget runs out"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Directory for manifests"),
):
    """Search for minimum saturated or maximum configuration-free sets."""
    run_seed = _seed(seed)
    n_threads = _threads(threads)
    parameters = {
        "kind": kind,
        "p": p,
        "n": n,
        "mode": mode,
        "budget": budget,
        "axis_parallel": axis_parallel,
        "symmetry": symmetry,
        "checkpoint": str(checkpoint) if checkpoint else None,
        "resume": resume,
        "strict": strict,
    }

    def body() -> Dict[str, Any]:
        domain = _domain(p, n)
        if kind in SATURATION_KINDS:
            search_mode = SATURATION_MODES.get(mode or "branch-bound")
            if search_mode is None:
                raise UsageError(f"mode '{mode}' does not apply to {kind}")
            if resume and checkpoint is None:
                raise UsageError("--resume needs --checkpoint")
            result = min_saturated_search(
                domain,
                SATURATION_KINDS[kind],
                search_mode,
                budget=budget,
                seed=run_seed,
                threads=n_threads,
                symmetry=symmetry,
                axis_parallel=axis_parallel,
                checkpoint_path=str(checkpoint) if checkpoint else None,
                resume=resume,
                strict=strict,
            )
            if console.is_terminal:
                console.print(
                    f"[bold]{domain.label}[/bold] {kind}: best size {result.best_size} ({result.status.value})"
                )
            return result.to_dict()

        if kind in EXTREMAL_KINDS:
            extremal_mode = EXTREMAL_MODES.get(mode or "heuristic")
            if extremal_mode is None:
                raise UsageError(f"mode '{mode}' does not apply to {kind}")
            if checkpoint is not None:
                raise UsageError("checkpoints are supported for saturation searches only")
            record = max_config_free(
                domain,
                EXTREMAL_KINDS[kind],
                extremal_mode,
                budget=budget,
                seed=run_seed,
                threads=n_threads,
                symmetry=symmetry,
                strict=strict,
            )
            if console.is_terminal:
                proof = "proved" if record.proved else "best found"
                console.print(f"[bold]{domain.label}[/bold] {kind}: {record.max_size_found} ({proof})")
            return record.to_dict()

        raise UsageError(f"unknown search kind '{kind}'")

    _execute("search", parameters, run_seed, output_dir, body)


@app.command("audit-coloring")
def audit_coloring_command(
    input_path: Optional[Path] = typer.Option(None, "--input", "-i", help="Coloring JSON file"),
    random: bool = typer.Option(False, "--random", help="Generate a uniformly random coloring"),
    generate: Optional[str] = typer.Option(None, "--generate", help="random, uniform or checkerboard"),
    r: int = typer.Option(2, "--r", help="Number of colors for generated colorings"),
    p: Optional[int] = typer.Option(None, "--p", help="Prime plane for generated colorings"),
    n: Optional[int] = typer.Option(None, "--n", help="Integer grid for generated colorings"),
    a: Optional[int] = typer.Option(None, "--a", help="Norm of the first collinear step"),
    b: Optional[int] = typer.Option(None, "--b", help="Norm of the second collinear step"),
    force: bool = typer.Option(False, "--force", help="Scan even when a/b is not a quadratic residue"),
    sweep: bool = typer.Option(False, "--sweep", help="Exhaustive collinear sweep over all two-colorings"),
    bound_constant: Optional[float] = typer.Option(None, "--bound-constant", help="C in p^3/4 - C p^(5/2)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for generated colorings (default CORNERLAB_SEED)"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", help="Worker threads (default CORNERLAB_THREADS)"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Directory for manifests"),
):
    """Audit a coloring for monochromatic corners and collinear triples."""
    run_seed = _seed(seed)
    n_threads = _threads(threads)
    source = "random" if random else generate
    parameters = {
        "input": str(input_path) if input_path else None,
        "generate": source,
        "r": r,
        "p": p,
        "n": n,
        "a": a,
        "b": b,
        "force": force,
        "sweep": sweep,
        "bound_constant": bound_constant,
    }

    def load() -> Coloring:
        if input_path is not None:
            if source is not None:
                raise UsageError("--input cannot be combined with a generated coloring")
            return Coloring.load(input_path)
        domain = _domain(p, n)
        if source == "random":
            return Coloring.random(domain, r, run_seed)
        if source == "uniform":
            return Coloring.uniform(domain, 0, r)
        if source == "checkerboard":
            return Coloring.checkerboard(domain)
        raise UsageError("give --input, --random or --generate")

    def body() -> Dict[str, Any]:
        coloring = load()
        domain = coloring.domain
        result: Dict[str, Any] = {"domain": domain.to_dict(), "r": coloring.r}

        if coloring.r == 2 and domain.is_prime_plane:
            result["mono_corners"] = mono_corner_counts(coloring, bound_constant, n_threads).to_dict()
            result["decomposition"] = mono_decomposition_audit(coloring, n_threads).to_dict()
        else:
            result["mono_corners"] = None
            result["decomposition"] = None

        witness = find_mono_axis_corner(coloring)
        result["axis_corner"] = witness.to_dict() if witness else None

        if a is not None or b is not None:
            if a is None or b is None:
                raise UsageError("--a and --b go together")
            triple = find_mono_collinear_triple(coloring, a, b, force)
            result["collinear_triple"] = triple.to_dict() if triple else None
            if sweep:
                result["collinear_sweep"] = collinear_sweep(domain.p, a, b, force).to_dict()

        if console.is_terminal and result["mono_corners"]:
            counts = result["mono_corners"]
            console.print(
                f"sigma_R = {counts['sigma_R']}, sigma_B = {counts['sigma_B']}, "
                f"bound = {counts['bound']:.2f}, margin = {counts['margin']:.2f}"
            )
        return result

    _execute("audit-coloring", parameters, run_seed, output_dir, body)


@app.command("density-table")
def density_table_command(
    kind: str = typer.Option("corner", "--kind", "-k", help="corner, axis-corner or square"),
    sizes: str = typer.Option("2,3,4,5", "--sizes", help="Comma-separated sizes"),
    prime_plane: bool = typer.Option(False, "--prime-plane", help="Sizes are primes p of F_p x F_p"),
    mode: str = typer.Option("exact", "--mode", "-m", help="exact (heuristic where infeasible) or heuristic"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Node budget or moves per restart"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed of the heuristic restarts (default CORNERLAB_SEED)"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", help="Worker threads (default CORNERLAB_THREADS)"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Directory for the CSV/JSON table"),
):
    """Tabulate maximum configuration-free densities."""
    run_seed = _seed(seed)
    values = _parse_int_list(sizes, "--sizes")
    n_threads = _threads(threads)
    parameters = {"kind": kind, "sizes": values, "prime_plane": prime_plane, "mode": mode, "budget": budget}

    def body() -> Dict[str, Any]:
        if kind not in TABLE_KINDS:
            raise UsageError(f"unknown table kind '{kind}'")
        if mode not in EXTREMAL_MODES:
            raise UsageError(f"unknown mode '{mode}'")
        rows = density_table(
            TABLE_KINDS[kind],
            values,
            EXTREMAL_MODES[mode],
            budget=budget,
            prime_plane=prime_plane,
            seed=run_seed,
            threads=n_threads,
        )
        paths = write_density_table(rows, str(_output_dir(output_dir)), stem=f"density_{kind}")
        if console.is_terminal:
            table = Table(title=f"Density table ({kind})")
            for column in ("size", "max_found", "proved", "density"):
                table.add_column(column)
            for row in rows:
                table.add_row(str(row.size), str(row.max_found), str(row.proved), f"{row.density:.4f}")
            console.print(table)
        return {"rows": [row.model_dump(mode="json") for row in rows], "files": [str(q) for q in paths]}

    _execute("density-table", parameters, run_seed, output_dir, body)


@app.command("schemas")
def schemas_command(
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Directory for the schema files"),
):
    """Write the JSON Schemas of every shipped document."""

    def body() -> Dict[str, Any]:
        directory = _output_dir(output_dir) / "schemas"
        return {"files": [str(q) for q in write_schemas(directory)]}

    _execute("schemas", {}, 0, output_dir, body)


@config_app.command("show")
def config_show(
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o", help="Directory for manifests"),
):
    """Show the effective configuration."""

    def body() -> Dict[str, Any]:
        return get_settings().model_dump(mode="json")

    _execute("config-show", {}, get_settings().runtime.seed, output_dir, body)


def main() -> None:
    """Console script entry point."""
    app()


if __name__ == "__main__":
    main()
