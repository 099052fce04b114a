"""Deterministic headless harness: scripted traces, synthetic benchmark
graphs, and the Dijkstra latency benchmark.

``run_trace`` drives a session exactly the way the live channel does (fixes
interleaved with fixed-rate ticks, a fix landing before the tick that shares
its timestamp), which makes its event log the oracle for the wire protocol.
"""

from __future__ import annotations

import json
import math
import random
import statistics
import time
from dataclasses import dataclass

from .game_space import GameSpace
from .geodesy import GeoPoint, vincenty_direct, vincenty_inverse
from .osm_ingest import Edge, RoadGraph
from .pathfinding import shortest_path
from .session import GameEvent, SessionConfig, apply_fix, create_session, tick

_TIME_EPS = 1e-9


@dataclass(frozen=True)
class Fix:
    t: float
    point: GeoPoint


def parse_trace_lines(lines) -> list[Fix]:
    """Trace files are JSON-lines of {"t": seconds, "lat": .., "lon": ..}."""
    fixes = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        doc = json.loads(line)
        fixes.append(Fix(t=float(doc["t"]), point=GeoPoint(doc["lat"], doc["lon"])))
    for a, b in zip(fixes, fixes[1:]):
        if b.t <= a.t:
            raise ValueError(f"trace timestamps must strictly increase: {a.t} -> {b.t}")
    return fixes


def load_trace(path) -> list[Fix]:
    with open(path) as fh:
        return parse_trace_lines(fh)


def run_trace(
    space: GameSpace,
    config: SessionConfig,
    trace: list[Fix],
    *,
    player_start: GeoPoint | None = None,
    duration: float | None = None,
) -> list[GameEvent]:
    """Replay a fix trace against a fresh session and return its event log.

    Ticks run at the configured rate from t=0 up to ``duration`` (defaulting
    to the last fix timestamp rounded up to the tick lattice); each fix is
    applied before the tick that shares its timestamp. Stops early at a
    terminal phase.
    """
    if player_start is None:
        player_start = trace[0].point if trace else space.center
    if duration is None:
        duration = (
            math.ceil(trace[-1].t / config.tick_seconds - _TIME_EPS) * config.tick_seconds
            if trace else 0.0
        )
    state = create_session(space, config, player_start)
    total_ticks = int(round(duration / config.tick_seconds))
    i = 0
    for k in range(1, total_ticks + 1):
        boundary = k * config.tick_seconds
        while i < len(trace) and trace[i].t <= boundary + _TIME_EPS:
            apply_fix(state, trace[i].point, trace[i].t)
            i += 1
        tick(state, config.tick_seconds)
        if state.phase != "running":
            break
    return state.events


def generate_synthetic_grid(
    target_nodes: int, edge_length: float, origin: GeoPoint
) -> RoadGraph:
    """Near-square grid graph with geodesically spaced nodes.

    rows = ceil(sqrt(n)), cols = ceil(n / rows), trimmed row-major to exactly
    n nodes (the trim keeps the graph connected). Every edge is one
    ``edge_length`` geodesic step north or east.
    """
    if target_nodes < 4:
        raise ValueError("need at least 4 nodes for a grid")
    rows = math.ceil(math.sqrt(target_nodes))
    cols = math.ceil(target_nodes / rows)

    nodes: dict[int, GeoPoint] = {}
    row_base = origin
    for r in range(rows):
        if r > 0:
            row_base = vincenty_direct(origin, 0.0, r * edge_length)
        for c in range(cols):
            nid = r * cols + c
            if nid >= target_nodes:
                break
            nodes[nid] = (
                row_base if c == 0 else vincenty_direct(row_base, 90.0, c * edge_length)
            )

    edges: dict[int, Edge] = {}
    eid = 0
    for nid in range(target_nodes):
        r, c = divmod(nid, cols)
        for nbr in (nid + 1 if c + 1 < cols else None,
                    nid + cols if r + 1 < rows else None):
            if nbr is None or nbr >= target_nodes:
                continue
            geom = (nodes[nid], nodes[nbr])
            edges[eid] = Edge(eid, nid, nbr, vincenty_inverse(*geom), geom)
            eid += 1
    return RoadGraph.build(nodes, edges)


@dataclass(frozen=True)
class BenchReport:
    node_count: int
    query_count: int
    warmup_count: int
    min_ms: float
    median_ms: float
    p99_ms: float
    max_ms: float
    path_lengths: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "query_count": self.query_count,
            "warmup_count": self.warmup_count,
            "latency_ms": {
                "min": round(self.min_ms, 4),
                "median": round(self.median_ms, 4),
                "p99": round(self.p99_ms, 4),
                "max": round(self.max_ms, 4),
            },
            "path_lengths_m": [round(x, 3) for x in self.path_lengths],
        }


def bench_dijkstra(
    graph: RoadGraph, queries: int, seed: int, warmup: int = 50
) -> BenchReport:
    """Latency distribution of random warm single shortest-path queries.

    The first ``warmup`` queries prime caches and are excluded from the
    stats; only the query itself is timed (graph construction is not).
    """
    rng = random.Random(seed)
    ids = sorted(graph.nodes)
    pairs = [
        (ids[rng.randrange(len(ids))], ids[rng.randrange(len(ids))])
        for _ in range(warmup + queries)
    ]
    latencies: list[float] = []
    lengths: list[float] = []
    for i, (start, goal) in enumerate(pairs):
        t0 = time.perf_counter_ns()
        path = shortest_path(graph, start, goal)
        elapsed_ms = (time.perf_counter_ns() - t0) / 1e6
        if i >= warmup:
            latencies.append(elapsed_ms)
            lengths.append(path.total_length)
    latencies_sorted = sorted(latencies)
    p99 = latencies_sorted[min(len(latencies_sorted) - 1,
                               math.ceil(0.99 * len(latencies_sorted)) - 1)]
    return BenchReport(
        node_count=len(graph.nodes),
        query_count=queries,
        warmup_count=warmup,
        min_ms=latencies_sorted[0],
        median_ms=statistics.median(latencies_sorted),
        p99_ms=p99,
        max_ms=latencies_sorted[-1],
        path_lengths=tuple(lengths),
    )
