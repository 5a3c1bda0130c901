"""Command-line entry points.

``build`` runs the full pipeline from CSV inputs to a session artifact;
``serve`` exposes an artifact over HTTP; ``distances``, ``diagram``, and
``query`` print views of an artifact. Exit codes: 0 success, 2 input error
(files, flags, malformed queries), 3 pipeline error.
"""

from __future__ import annotations

import csv
import sys

import click
import numpy as np

from .io import (
    CorruptArtifact,
    MissingFile,
    NonNumericCell,
    ParseError,
    SessionManifest,
    ShapeMismatch,
    VersionMismatch,
    load_session,
    load_session_inputs,
    save_session,
)
from .pipeline import PipelineError, build_session
from .query import FilterSyntaxError, UnknownColumnError, run_query

INPUT_ERRORS = (
    MissingFile,
    ParseError,
    NonNumericCell,
    ShapeMismatch,
    VersionMismatch,
    CorruptArtifact,
    FilterSyntaxError,
    UnknownColumnError,
    ValueError,
)


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _pairs(values: tuple[str, ...], flag: str) -> tuple[tuple[str, str], ...]:
    out = []
    for value in values:
        name, sep, path = value.partition("=")
        if not sep or not name or not path:
            _fail(2, f"{flag} expects NAME=PATH, got {value!r}")
        out.append((name, path))
    return tuple(out)


@click.group()
def main() -> None:
    """Compare feature-attribution methods through Mapper graphs and
    extended persistence."""


@main.command()
@click.option("--data", required=True, help="Feature table CSV (header row).")
@click.option("--pred", "pred_path", required=True, help="Single-column 'pred' CSV.")
@click.option("--labels", required=True, help="Single-column 'label' CSV.")
@click.option("--attr", "attrs", multiple=True, required=True,
              help="NAME=PATH attribution CSV; repeat per method (>= 2).")
@click.option("--projection", "projections", multiple=True,
              help="KIND=PATH precomputed 2-d projection CSV (kind: tsne, umap, external).")
@click.option("--out", required=True, help="Output artifact path (JSON).")
@click.option("--gain", default=0.4, show_default=True, type=float)
@click.option("--resolution", default="auto", show_default=True,
              help="'auto' for stability search or an integer.")
@click.option("--delta", default="auto", show_default=True,
              help="'auto' for bootstrap estimate or a number.")
@click.option("--grid", default="5:40", show_default=True,
              help="LO:HI inclusive resolution search range.")
@click.option("--bootstrap", default=20, show_default=True, type=int,
              help="Bootstrap iterations per stability score.")
@click.option("--subsamples", default=100, show_default=True, type=int,
              help="Resamples for the delta estimate.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--no-summarize", is_flag=True, help="Skip graph summarization.")
@click.option("--summarize-fixpoint", is_flag=True,
              help="Repeat summarization until no merge occurs.")
def build(data, pred_path, labels, attrs, projections, out, gain, resolution,
          delta, grid, bootstrap, subsamples, seed, no_summarize, summarize_fixpoint):
    """Build a session artifact from CSV inputs."""
    if no_summarize and summarize_fixpoint:
        _fail(2, "--no-summarize and --summarize-fixpoint are mutually exclusive")
    summarize = "off" if no_summarize else ("fixpoint" if summarize_fixpoint else "single")

    resolution_value = None
    if resolution != "auto":
        try:
            resolution_value = int(resolution)
        except ValueError:
            _fail(2, f"--resolution expects 'auto' or an integer, got {resolution!r}")
    delta_value = None
    if delta != "auto":
        try:
            delta_value = float(delta)
        except ValueError:
            _fail(2, f"--delta expects 'auto' or a number, got {delta!r}")
    try:
        lo, _, hi = grid.partition(":")
        grid_range = range(int(lo), int(hi) + 1)
        if len(grid_range) == 0:
            raise ValueError
    except ValueError:
        _fail(2, f"--grid expects LO:HI with LO <= HI, got {grid!r}")

    manifest = SessionManifest(
        data_path=data,
        preds_path=pred_path,
        labels_path=labels,
        attr_entries=_pairs(attrs, "--attr"),
        projection_entries=_pairs(projections, "--projection"),
        options={
            "gain": gain, "resolution": resolution, "delta": delta, "grid": grid,
            "bootstrap": bootstrap, "subsamples": subsamples, "seed": seed,
            "summarize": summarize,
        },
    )
    try:
        table, preds, label_vec, methods, loaded_projections = load_session_inputs(manifest)
    except INPUT_ERRORS as exc:
        _fail(2, str(exc))

    try:
        session = build_session(
            table, preds, label_vec, methods, loaded_projections,
            gain=gain, resolution=resolution_value, delta=delta_value,
            grid=grid_range, bootstrap_count=bootstrap, subsample_count=subsamples,
            seed=seed, summarize=summarize,
        )
        save_session(session, out)
    except PipelineError as exc:
        _fail(3, str(exc))
    except ValueError as exc:
        _fail(2, str(exc))
    click.echo(f"wrote {out}")


def _load_artifact(path: str):
    try:
        return load_session(path)
    except INPUT_ERRORS as exc:
        _fail(2, str(exc))


@main.command()
@click.option("--artifact", required=True, help="Session artifact JSON.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(artifact, host, port):
    """Serve a read-only HTTP API over a built artifact."""
    import uvicorn

    from .service import create_app

    session = _load_artifact(artifact)
    try:
        uvicorn.run(create_app(session), host=host, port=port, log_level="warning")
    except OSError as exc:
        _fail(2, f"cannot bind {host}:{port}: {exc}")


@main.command()
@click.option("--artifact", required=True)
def distances(artifact):
    """Print the method-by-method bottleneck distance matrix."""
    session = _load_artifact(artifact)
    names = session.method_names
    width = max(12, max(len(n) for n in names) + 2)
    click.echo("".rjust(width) + "".join(n.rjust(width) for n in names))
    for name, row in zip(names, session.distances):
        click.echo(name.rjust(width) + "".join(f"{x:.6g}".rjust(width) for x in row))


@main.command()
@click.option("--artifact", required=True)
@click.option("--method", required=True, help="Attribution method name.")
def diagram(artifact, method):
    """Emit one method's persistence diagram as CSV (dim, subtype, birth, death)."""
    session = _load_artifact(artifact)
    if method not in session.diagrams:
        _fail(2, f"unknown method {method!r}; have {session.method_names}")
    writer = csv.writer(sys.stdout)
    writer.writerow(["dim", "subtype", "birth", "death"])
    for p in session.diagrams[method].points:
        writer.writerow([p.dim, p.subtype, repr(p.birth), repr(p.death)])


@main.command()
@click.option("--artifact", required=True)
@click.option("--where", required=True, help="Filter expression.")
def query(artifact, where):
    """Evaluate a filter expression and print matching rows and means."""
    session = _load_artifact(artifact)
    try:
        sel = run_query(where, session)
    except (FilterSyntaxError, UnknownColumnError) as exc:
        _fail(2, str(exc))
    if len(sel) == 0:
        click.echo("0 rows")
        return
    click.echo(f"{len(sel)} rows: " + " ".join(str(int(i)) for i in sel.indices))
    global_mean = session.table.values.mean(axis=0)
    sel_mean = session.table.values[sel.indices].mean(axis=0)
    click.echo(f"{'column':>16}{'selection':>16}{'global':>16}{'diff':>16}")
    for i, name in enumerate(session.table.column_names):
        click.echo(
            f"{name:>16}{sel_mean[i]:>16.6g}{global_mean[i]:>16.6g}"
            f"{sel_mean[i] - global_mean[i]:>16.6g}"
        )


if __name__ == "__main__":
    main()
