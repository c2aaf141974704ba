"""Command-line surface: a thin client over the library.

Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .catalog import CATALOG_VERSION, load_catalog, resolve_tasks
from .counting import count_report
from .dataset import read_dataset, write_dataset
from .episodes import episode_for, episode_stream
from .errors import ChecksumError, FormatVersionError, UnknownTaskError
from .generation import verify_episode
from .png import encode_png
from .render import contact_sheet
from .scoring import audit_bias
from .types import GenerationConfig

OUT_DIR_ENV = "COGKIT_OUT_DIR"


def _config(frames, max_memory, max_distractors, seed, canvas=112):
    return GenerationConfig(frames=frames, max_memory=max_memory,
                            max_distractors=max_distractors,
                            canvas=canvas, seed=seed)


@click.group()
def main():
    """Generate, inspect, audit and serve visual-reasoning episode datasets."""


@main.command()
@click.option("--tasks", default="all", show_default=True,
              help="Comma-separated task names, or 'all'.")
@click.option("--frames", default=4, show_default=True, type=int)
@click.option("--max-memory", default=3, show_default=True, type=int)
@click.option("--max-distractors", default=1, show_default=True, type=int)
@click.option("--episodes-per-task", default=16, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", default=None,
              help=f"Output directory (default: ${OUT_DIR_ENV}).")
@click.option("--format", "mode", default="symbolic", show_default=True,
              type=click.Choice(["symbolic", "rendered"]))
def generate(tasks, frames, max_memory, max_distractors, episodes_per_task,
             seed, out, mode):
    """Write a dataset of generated episodes."""
    out = out or os.environ.get(OUT_DIR_ENV)
    if not out:
        raise click.UsageError(
            f"--out is required (or set {OUT_DIR_ENV})")
    try:
        names = resolve_tasks(tasks)
    except UnknownTaskError as exc:
        raise click.UsageError(f"unknown task {exc.args[0]!r}")
    config = _config(frames, max_memory, max_distractors, seed)
    manifest = write_dataset(
        episode_stream(names, config, episodes_per_task),
        out, mode,
        config=config, tasks=names, episodes_per_task=episodes_per_task)
    click.echo(f"wrote {len(names) * episodes_per_task} episodes "
               f"({len(manifest.checksums)} files) to {out}")


@main.command()
@click.argument("directory")
def verify(directory):
    """Re-run the forward interpreter over a dataset; exit 1 on mismatch."""
    try:
        reader = read_dataset(directory)
    except (ChecksumError, FormatVersionError, FileNotFoundError) as exc:
        click.echo(f"invalid dataset: {exc}", err=True)
        sys.exit(1)
    episodes = 0
    failures = 0
    for episode in reader:
        episodes += 1
        result = verify_episode(episode)
        if not result.ok:
            failures += 1
            click.echo(f"{episode.task_name}[{episode.seed_path[1]}]: "
                       f"{result.first_mismatch()}", err=True)
    if failures:
        click.echo(f"{failures}/{episodes} episodes failed verification",
                   err=True)
        sys.exit(1)
    click.echo(f"verified {episodes} episodes: all targets consistent")


@main.command()
@click.option("--task", required=True)
@click.option("--n", default=1000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--frames", default=4, show_default=True, type=int)
@click.option("--max-memory", default=3, show_default=True, type=int)
@click.option("--max-distractors", default=1, show_default=True, type=int)
def audit(task, n, seed, frames, max_memory, max_distractors):
    """Audit the recorded-target distribution of one task."""
    try:
        report = audit_bias(task, n,
                            _config(frames, max_memory, max_distractors, seed))
    except UnknownTaskError as exc:
        raise click.UsageError(f"unknown task {exc.args[0]!r}")
    click.echo(json.dumps(report.to_obj(), indent=2))


@main.command()
@click.option("--task", required=True)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--index", default=0, show_default=True, type=int)
@click.option("--out", required=True, help="Contact-sheet PNG path.")
def preview(task, seed, index, out):
    """Render one episode as a contact sheet and print its instruction."""
    try:
        episode = episode_for(task, GenerationConfig.canonical(seed), index)
    except UnknownTaskError as exc:
        raise click.UsageError(f"unknown task {exc.args[0]!r}")
    sheet = contact_sheet(episode.frames, episode.config.canvas)
    with open(out, "wb") as fh:
        fh.write(encode_png(sheet))
    click.echo(episode.instruction)
    for t, target in enumerate(episode.targets):
        click.echo(f"frame {t}: {target.to_obj()}")


@main.command()
@click.option("--grid", default=32, show_default=True, type=int,
              help="Spatial anchor discretization per axis.")
def count(grid):
    """Count distinct task instances over the catalog."""
    graphs = {name: doc.graph for name, doc in load_catalog().items()}
    report = count_report(graphs, grid)
    click.echo(json.dumps({
        "catalog_version": CATALOG_VERSION,
        "grid": report["grid"],
        "total": report["total"],
        "note": report["note"],
        "per_task": report["per_task"],
    }, indent=2))


@main.command()
@click.option("--port", default=8321, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--seed", default=0, show_default=True, type=int)
def serve(port, host, seed):
    """Serve episodes over HTTP/JSON."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(default_seed=seed), host=host, port=port,
                log_level="warning")


if __name__ == "__main__":
    main()
