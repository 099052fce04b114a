"""Command line entry points: serve, stage, replay, bench."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .game_space import GameSpaceConfig, build_game_space
from .geodesy import GeoPoint
from .osm_ingest import parse_extract
from .serialize import dumps, stage_from_dict, stage_to_dict
from .session import SessionConfig
from .sim_bench import bench_dijkstra, generate_synthetic_grid, load_trace, run_trace


def _load_extract(path: str, fmt: str | None):
    raw = Path(path).read_text()
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "xml"
    return parse_extract(raw, format=fmt)


def _parse_center(value: str) -> GeoPoint:
    try:
        lat, lon = (float(part) for part in value.split(","))
    except ValueError:
        raise click.BadParameter(f"expected 'lat,lon', got {value!r}")
    return GeoPoint(lat, lon)


@click.group()
def main() -> None:
    """Location-based PacMan game engine."""


@main.command()
@click.option("--osm-file", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["xml", "json"]), default=None,
              help="Extract format; inferred from the extension by default.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(osm_file: str, fmt: str | None, host: str, port: int) -> None:
    """Run the game server against a map extract."""
    import uvicorn

    from .server_api import create_app

    app = create_app(_load_extract(osm_file, fmt))
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--osm-file", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["xml", "json"]), default=None)
@click.option("--center", required=True, help="lat,lon of the stage center.")
@click.option("--radius", default=200.0, show_default=True, type=float)
@click.option("--cookie-spacing", default=15.0, show_default=True, type=float)
def stage(osm_file: str, fmt: str | None, center: str, radius: float,
          cookie_spacing: float) -> None:
    """Build a game space and print its JSON snapshot."""
    config = GameSpaceConfig(radius=radius, cookie_spacing=cookie_spacing)
    space = build_game_space(_load_extract(osm_file, fmt), _parse_center(center), config)
    click.echo(dumps(stage_to_dict(space)))


@main.command()
@click.option("--stage", "stage_file", required=True, type=click.Path(exists=True),
              help="Stage JSON produced by 'pacmap stage'.")
@click.option("--trace", "trace_file", required=True, type=click.Path(exists=True),
              help="JSON-lines fix trace.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--duration", default=None, type=float,
              help="Simulated seconds; defaults to the last fix timestamp.")
def replay(stage_file: str, trace_file: str, seed: int, duration: float | None) -> None:
    """Replay a GPS trace headlessly and print the event log (JSON-lines)."""
    import json

    space = stage_from_dict(json.loads(Path(stage_file).read_text()))
    trace = load_trace(trace_file)
    events = run_trace(space, SessionConfig(seed=seed), trace, duration=duration)
    for event in events:
        click.echo(event.to_line())


@main.command()
@click.option("--nodes", default=420, show_default=True, type=int)
@click.option("--queries", default=1000, show_default=True, type=int)
@click.option("--edge-length", default=60.0, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
def bench(nodes: int, queries: int, edge_length: float, seed: int) -> None:
    """Time random shortest-path queries on a synthetic grid."""
    graph = generate_synthetic_grid(nodes, edge_length, GeoPoint(40.0, -75.0))
    report = bench_dijkstra(graph, queries=queries, seed=seed)
    doc = report.to_dict()
    del doc["path_lengths_m"]  # stats only on stdout; lengths are for tests
    click.echo(dumps(doc))


if __name__ == "__main__":
    sys.exit(main())
