"""Stage fabrication: clip the road graph to the play circle, place cookies,
attach POIs.

The stage is a circle around the player's start location. Only edges whose
both endpoints fall inside the circle are kept (no edge truncation), then the
largest connected component is retained so every position can reach every
other one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geodesy import GeoPoint, cumulative_lengths, interpolate_along, vincenty_inverse
from .osm_ingest import (
    DEFAULT_POI_CATEGORIES,
    DEFAULT_WALKABLE_HIGHWAYS,
    OsmExtract,
    Poi,
    PoiCategory,
    RoadGraph,
    build_road_graph,
    classify_pois,
)


class EmptyGameSpaceError(Exception):
    """No road edge survives inside the circle; pick another center."""


@dataclass(frozen=True)
class GameSpaceConfig:
    radius: float = 200.0
    cookie_spacing: float = 15.0
    min_edge_cookie_margin: float = 3.0

    def __post_init__(self) -> None:
        if not (self.radius > 0):
            raise ValueError(f"radius must be positive: {self.radius!r}")
        if not (0 < self.cookie_spacing < self.radius):
            raise ValueError(
                f"cookie_spacing must lie in (0, radius): {self.cookie_spacing!r}"
            )
        if not (0 <= self.min_edge_cookie_margin < self.cookie_spacing / 2):
            raise ValueError(
                "min_edge_cookie_margin must be < cookie_spacing/2: "
                f"{self.min_edge_cookie_margin!r}"
            )


@dataclass(frozen=True)
class Cookie:
    id: int
    position: GeoPoint
    edge: int
    offset: float  # meters along the edge from endpoint a
    collected: bool = False


@dataclass(frozen=True)
class GameSpace:
    center: GeoPoint
    config: GameSpaceConfig
    graph: RoadGraph
    cookies: tuple[Cookie, ...]
    pois: tuple[Poi, ...]


def clip_to_circle(graph: RoadGraph, center: GeoPoint, radius: float) -> RoadGraph:
    """Keep edges with both endpoints within ``radius`` of ``center``.

    Isolated nodes are dropped and only the largest connected component
    survives (ties broken toward the component with the smallest node id).
    """
    inside = {
        nid for nid, pos in graph.nodes.items()
        if vincenty_inverse(center, pos) <= radius
    }
    kept_edges = {
        eid: e for eid, e in graph.edges.items() if e.a in inside and e.b in inside
    }
    if not kept_edges:
        raise EmptyGameSpaceError(
            f"no edge lies fully within {radius:.1f} m of {center}"
        )

    adjacency: dict[int, list[int]] = {}
    for e in kept_edges.values():
        adjacency.setdefault(e.a, []).append(e.b)
        adjacency.setdefault(e.b, []).append(e.a)

    components: list[set[int]] = []
    unvisited = set(adjacency)
    while unvisited:
        seed = min(unvisited)
        comp = {seed}
        frontier = [seed]
        while frontier:
            nid = frontier.pop()
            for nbr in adjacency[nid]:
                if nbr not in comp:
                    comp.add(nbr)
                    frontier.append(nbr)
        components.append(comp)
        unvisited -= comp
    main = sorted(components, key=lambda c: (-len(c), min(c)))[0]

    final_edges = {
        eid: e for eid, e in kept_edges.items() if e.a in main and e.b in main
    }
    final_nodes = {nid: graph.nodes[nid] for nid in sorted(main)}
    return RoadGraph.build(final_nodes, final_edges)


def cookie_offsets(length: float, config: GameSpaceConfig) -> list[float]:
    """Evenly distributed arc offsets for one edge.

    Short edges (length < 2*margin + spacing) get a single midpoint cookie;
    otherwise n = floor((L - 2m)/s) + 1 cookies are spread between the two
    margin insets with equal gaps.
    """
    margin = config.min_edge_cookie_margin
    spacing = config.cookie_spacing
    if length < 2 * margin + spacing:
        return [length / 2.0]
    n = math.floor((length - 2 * margin) / spacing) + 1
    step = (length - 2 * margin) / (n - 1)
    return [margin + k * step for k in range(n)]


def place_cookies(graph: RoadGraph, config: GameSpaceConfig) -> list[Cookie]:
    """Place cookies at equal distances along every edge of the clipped graph."""
    cookies: list[Cookie] = []
    next_id = 0
    for eid in sorted(graph.edges):
        edge = graph.edges[eid]
        cum = cumulative_lengths(edge.geometry)
        for offset in cookie_offsets(edge.length, config):
            position = interpolate_along(edge.geometry, cum, offset)
            cookies.append(Cookie(id=next_id, position=position, edge=eid, offset=offset))
            next_id += 1
    return cookies


def build_game_space(
    extract: OsmExtract,
    center: GeoPoint,
    config: GameSpaceConfig | None = None,
    walkable_tags: frozenset[str] | set[str] = DEFAULT_WALKABLE_HIGHWAYS,
    category_map: dict[tuple[str, str], PoiCategory] = DEFAULT_POI_CATEGORIES,
) -> GameSpace:
    """Fabricate the full stage from an extract and a center point."""
    config = config or GameSpaceConfig()
    graph = build_road_graph(extract, walkable_tags)
    clipped = clip_to_circle(graph, center, config.radius)
    cookies = place_cookies(clipped, config)
    pois = [
        p for p in classify_pois(extract, category_map)
        if vincenty_inverse(center, p.position) <= config.radius
    ]
    return GameSpace(
        center=center,
        config=config,
        graph=clipped,
        cookies=tuple(cookies),
        pois=tuple(pois),
    )
