"""In-process directions service: Dijkstra shortest paths, node snapping, and
GPS-fix map matching over the road graph.

Edge costs are geodesic polyline lengths. All tie-breaking is by smallest id
so repeated queries and replays are bit-for-bit reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .geodesy import (
    GeoPoint,
    LocalXY,
    cumulative_lengths,
    from_local,
    interpolate_along,
    to_local,
    vincenty_inverse,
)
from .osm_ingest import EmptyGraphError, RoadGraph

TIE_EPSILON_M = 1e-9


class NoPathError(Exception):
    """Goal unreachable from start (cannot happen after component pruning)."""


class UnknownNodeError(Exception):
    """A queried node id is not present in the graph."""


@dataclass(frozen=True)
class Path:
    """A simple node walk plus the edges joining consecutive nodes.

    ``legs[i]`` is (edge_id, forward) where forward means the leg runs from
    the edge's endpoint a to endpoint b.
    """

    nodes: tuple[int, ...]
    legs: tuple[tuple[int, bool], ...]
    total_length: float


@dataclass(frozen=True)
class EdgeMatch:
    edge: int
    offset: float  # arc length from endpoint a to the projection point
    projected: GeoPoint
    lateral_error: float


def shortest_path(graph: RoadGraph, start: int, goal: int) -> Path:
    """Minimum-length simple path from start to goal.

    Binary-heap Dijkstra with early exit at the goal; among equal-length
    alternatives the smaller node id is settled first, making results
    deterministic.
    """
    if start not in graph.nodes:
        raise UnknownNodeError(f"unknown start node {start}")
    if goal not in graph.nodes:
        raise UnknownNodeError(f"unknown goal node {goal}")
    if start == goal:
        return Path(nodes=(start,), legs=(), total_length=0.0)

    dist: dict[int, float] = {start: 0.0}
    pred: dict[int, tuple[int, int]] = {}
    settled: set[int] = set()
    heap: list[tuple[float, int]] = [(0.0, start)]
    while heap:
        d, node = heapq.heappop(heap)
        if node in settled:
            continue
        settled.add(node)
        if node == goal:
            break
        for nbr, eid in graph.adjacency[node]:
            if nbr in settled:
                continue
            cand = d + graph.edges[eid].length
            if nbr not in dist or cand < dist[nbr]:
                dist[nbr] = cand
                pred[nbr] = (node, eid)
                heapq.heappush(heap, (cand, nbr))

    if goal not in settled:
        raise NoPathError(f"no path from {start} to {goal}")

    nodes = [goal]
    legs: list[tuple[int, bool]] = []
    while nodes[-1] != start:
        prev, eid = pred[nodes[-1]]
        legs.append((eid, graph.edges[eid].a == prev))
        nodes.append(prev)
    nodes.reverse()
    legs.reverse()
    return Path(nodes=tuple(nodes), legs=tuple(legs), total_length=dist[goal])


def shortest_path_lengths(graph: RoadGraph, source: int) -> dict[int, float]:
    """Dijkstra distances from source to every reachable node."""
    if source not in graph.nodes:
        raise UnknownNodeError(f"unknown source node {source}")
    dist: dict[int, float] = {source: 0.0}
    settled: set[int] = set()
    heap: list[tuple[float, int]] = [(0.0, source)]
    while heap:
        d, node = heapq.heappop(heap)
        if node in settled:
            continue
        settled.add(node)
        for nbr, eid in graph.adjacency[node]:
            cand = d + graph.edges[eid].length
            if nbr not in dist or cand < dist[nbr]:
                dist[nbr] = cand
                heapq.heappush(heap, (cand, nbr))
    return dist


def nearest_node(graph: RoadGraph, p: GeoPoint) -> int:
    """Graph node geodesically closest to p; ties go to the smaller id."""
    if not graph.nodes:
        raise EmptyGraphError("nearest_node on empty graph")
    distances = {nid: vincenty_inverse(p, pos) for nid, pos in graph.nodes.items()}
    best = min(distances.values())
    return min(nid for nid, d in distances.items() if d <= best + TIE_EPSILON_M)


def match_to_edge(graph: RoadGraph, p: GeoPoint) -> EdgeMatch:
    """Snap a GPS fix to the most plausible edge.

    Projects p onto every edge polyline in the local planar frame centered at
    p and returns the edge with the smallest lateral error (ties to the
    smaller edge id), along with the arc-length offset of the projection.
    """
    if not graph.edges:
        raise EmptyGraphError("match_to_edge on empty graph")

    candidates: dict[int, tuple[float, float, GeoPoint]] = {}
    for eid in graph.edges:
        edge = graph.edges[eid]
        cum = cumulative_lengths(edge.geometry)
        best_d = None
        best_offset = 0.0
        best_point = edge.geometry[0]
        for i in range(len(edge.geometry) - 1):
            q1 = to_local(edge.geometry[i], p)
            q2 = to_local(edge.geometry[i + 1], p)
            vx, vy = q2.x - q1.x, q2.y - q1.y
            seg_sq = vx * vx + vy * vy
            if seg_sq == 0.0:
                t = 0.0
            else:
                # p is the frame origin, so the point to project is (0, 0).
                t = min(max((-q1.x * vx - q1.y * vy) / seg_sq, 0.0), 1.0)
            px, py = q1.x + t * vx, q1.y + t * vy
            d = (px * px + py * py) ** 0.5
            if best_d is None or d < best_d:
                best_d = d
                best_offset = cum[i] + t * (cum[i + 1] - cum[i])
                best_point = from_local(LocalXY(px, py, p))
        candidates[eid] = (best_d, best_offset, best_point)

    overall = min(d for d, _, _ in candidates.values())
    chosen = min(eid for eid, (d, _, _) in candidates.items() if d <= overall + TIE_EPSILON_M)
    d, offset, point = candidates[chosen]
    return EdgeMatch(edge=chosen, offset=offset, projected=point, lateral_error=d)


def path_geometry_position(graph: RoadGraph, path: Path, progress: float) -> GeoPoint:
    """Point at arc length ``progress`` along a path's concatenated legs."""
    if not path.legs:
        return graph.nodes[path.nodes[0]]
    progress = min(max(progress, 0.0), path.total_length)
    walked = 0.0
    for i, (eid, forward) in enumerate(path.legs):
        edge = graph.edges[eid]
        if progress <= walked + edge.length or i == len(path.legs) - 1:
            within = progress - walked
            geometry = edge.geometry if forward else tuple(reversed(edge.geometry))
            return interpolate_along(geometry, cumulative_lengths(geometry), within)
        walked += edge.length
    return graph.nodes[path.nodes[-1]]


def leg_boundaries(graph: RoadGraph, path: Path) -> list[float]:
    """Cumulative arc length at the end of each leg."""
    bounds = []
    total = 0.0
    for eid, _ in path.legs:
        total += graph.edges[eid].length
        bounds.append(total)
    return bounds
