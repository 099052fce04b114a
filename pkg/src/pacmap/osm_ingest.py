"""OpenStreetMap extract parsing, POI classification, and road-graph building.

Ingestion is from exported extract files (OSM XML or OSM JSON); live fetching
is deliberately out of the core so tests stay hermetic. Walkable ways are
split at intersections into undirected edges whose lengths are geodesic
polyline lengths.
"""

from __future__ import annotations

import enum
import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .geodesy import GeoPoint, cumulative_lengths


class ParseError(Exception):
    """Malformed OSM document; carries a line/offset hint when available."""


class DanglingReferenceError(Exception):
    """A way references node ids that are not present in the extract."""

    def __init__(self, missing: set[int]):
        self.missing = missing
        super().__init__(f"ways reference {len(missing)} missing node id(s): "
                         f"{sorted(missing)[:10]}")


class EmptyGraphError(Exception):
    """No way in the extract matched the walkable whitelist."""


# Highway classes treated as playable corridors. Pedestrians and ghosts use
# the road network without regard to traffic rules, so the list is broad and
# configurable.
DEFAULT_WALKABLE_HIGHWAYS = frozenset({
    "residential", "footway", "path", "pedestrian", "living_street",
    "service", "tertiary", "secondary", "primary", "unclassified",
})


class PoiCategory(enum.Enum):
    LIFE_BOOST = "life_boost"
    VISIBILITY_TRAP = "visibility_trap"


# (tag key, tag value) -> category. Anything unmapped is dropped.
DEFAULT_POI_CATEGORIES: dict[tuple[str, str], PoiCategory] = {
    ("amenity", "pharmacy"): PoiCategory.LIFE_BOOST,
    ("amenity", "hospital"): PoiCategory.LIFE_BOOST,
    ("amenity", "bar"): PoiCategory.VISIBILITY_TRAP,
    ("amenity", "pub"): PoiCategory.VISIBILITY_TRAP,
    ("amenity", "nightclub"): PoiCategory.VISIBILITY_TRAP,
}


@dataclass(frozen=True)
class OsmWay:
    id: int
    node_ids: tuple[int, ...]
    tags: dict[str, str]


@dataclass(frozen=True)
class OsmExtract:
    nodes: dict[int, GeoPoint]
    ways: list[OsmWay]
    tagged_nodes: list[tuple[int, dict[str, str]]]


@dataclass(frozen=True)
class Poi:
    id: int
    position: GeoPoint
    category: PoiCategory
    consumed: bool = False


@dataclass(frozen=True)
class Edge:
    """Undirected road segment between two graph nodes.

    ``geometry`` runs from endpoint ``a`` to endpoint ``b`` and may contain
    interior shape points; ``length`` is its geodesic arc length.
    """

    id: int
    a: int
    b: int
    length: float
    geometry: tuple[GeoPoint, ...]

    def other_endpoint(self, node_id: int) -> int:
        if node_id == self.a:
            return self.b
        if node_id == self.b:
            return self.a
        raise ValueError(f"node {node_id} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class RoadGraph:
    nodes: dict[int, GeoPoint]
    edges: dict[int, Edge]
    adjacency: dict[int, tuple[tuple[int, int], ...]] = field(default_factory=dict)

    @staticmethod
    def build(nodes: dict[int, GeoPoint], edges: dict[int, Edge]) -> "RoadGraph":
        adj: dict[int, list[tuple[int, int]]] = {nid: [] for nid in nodes}
        for e in edges.values():
            adj[e.a].append((e.b, e.id))
            adj[e.b].append((e.a, e.id))
        adjacency = {nid: tuple(sorted(pairs)) for nid, pairs in adj.items()}
        return RoadGraph(nodes=nodes, edges=edges, adjacency=adjacency)


def parse_extract(raw: bytes | str, format: str = "xml") -> OsmExtract:
    """Load an OSM extract from XML or JSON export text.

    Referential integrity is enforced: every node id referenced by a way must
    be present, otherwise DanglingReferenceError lists the missing ids.
    """
    if format == "xml":
        extract = _parse_xml(raw)
    elif format == "json":
        extract = _parse_json(raw)
    else:
        raise ValueError(f"unknown extract format: {format!r} (expected 'xml' or 'json')")

    missing = {
        ref for way in extract.ways for ref in way.node_ids if ref not in extract.nodes
    }
    if missing:
        raise DanglingReferenceError(missing)
    return extract


def _parse_xml(raw: bytes | str) -> OsmExtract:
    try:
        root = ET.fromstring(raw)
    except ET.ParseError as exc:
        line, offset = exc.position
        raise ParseError(f"invalid OSM XML at line {line}, column {offset}: {exc}") from exc

    nodes: dict[int, GeoPoint] = {}
    ways: list[OsmWay] = []
    tagged: list[tuple[int, dict[str, str]]] = []
    for child in root:
        if child.tag == "node":
            try:
                nid = int(child.attrib["id"])
                point = GeoPoint(float(child.attrib["lat"]), float(child.attrib["lon"]))
            except (KeyError, ValueError) as exc:
                raise ParseError(f"bad <node> element: {exc}") from exc
            if nid in nodes:
                raise ParseError(f"duplicate node id {nid}")
            nodes[nid] = point
            tags = {t.attrib["k"]: t.attrib["v"] for t in child if t.tag == "tag"}
            if tags:
                tagged.append((nid, tags))
        elif child.tag == "way":
            try:
                wid = int(child.attrib["id"])
            except (KeyError, ValueError) as exc:
                raise ParseError(f"bad <way> element: {exc}") from exc
            refs = tuple(int(nd.attrib["ref"]) for nd in child if nd.tag == "nd")
            tags = {t.attrib["k"]: t.attrib["v"] for t in child if t.tag == "tag"}
            ways.append(OsmWay(wid, refs, tags))
    return OsmExtract(nodes=nodes, ways=ways, tagged_nodes=tagged)


def _parse_json(raw: bytes | str) -> OsmExtract:
    try:
        doc = json.loads(raw)
        elements = doc["elements"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"invalid OSM JSON: {exc}") from exc

    nodes: dict[int, GeoPoint] = {}
    ways: list[OsmWay] = []
    tagged: list[tuple[int, dict[str, str]]] = []
    for el in elements:
        try:
            if el["type"] == "node":
                nid = int(el["id"])
                if nid in nodes:
                    raise ParseError(f"duplicate node id {nid}")
                nodes[nid] = GeoPoint(float(el["lat"]), float(el["lon"]))
                tags = dict(el.get("tags", {}))
                if tags:
                    tagged.append((nid, tags))
            elif el["type"] == "way":
                ways.append(OsmWay(int(el["id"]), tuple(int(r) for r in el["nodes"]),
                                   dict(el.get("tags", {}))))
        except (KeyError, ValueError, TypeError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad OSM JSON element {el!r}: {exc}") from exc
    return OsmExtract(nodes=nodes, ways=ways, tagged_nodes=tagged)


def build_road_graph(
    extract: OsmExtract,
    walkable_tags: frozenset[str] | set[str] = DEFAULT_WALKABLE_HIGHWAYS,
) -> RoadGraph:
    """Split walkable ways into an undirected road graph.

    Graph nodes are way endpoints plus every node shared by two or more
    retained ways; intermediate shape points become edge polyline geometry.
    Ways are undirected regardless of oneway tags. Exact duplicate edges are
    dropped; parallel edges with distinct geometry keep distinct ids.
    """
    retained = [w for w in extract.ways if w.tags.get("highway") in walkable_tags]
    if not retained:
        raise EmptyGraphError("no way matches the walkable whitelist")

    way_membership: dict[int, int] = {}
    for way in retained:
        for nid in set(way.node_ids):
            way_membership[nid] = way_membership.get(nid, 0) + 1

    graph_nodes: dict[int, GeoPoint] = {}
    edges: dict[int, Edge] = {}
    seen_shapes: set[tuple] = set()
    next_edge_id = 0

    for way in retained:
        refs = [nid for i, nid in enumerate(way.node_ids)
                if i == 0 or nid != way.node_ids[i - 1]]  # drop consecutive repeats
        if len(refs) < 2:
            continue
        split_at = [
            i for i, nid in enumerate(refs)
            if i == 0 or i == len(refs) - 1 or way_membership[nid] >= 2
        ]
        for start, end in zip(split_at, split_at[1:]):
            chunk = refs[start:end + 1]
            for piece in _split_closed_loop(chunk):
                edge = _make_edge(next_edge_id, piece, extract.nodes)
                if edge is None:
                    continue
                shape_key = (edge.a, edge.b) + tuple(
                    (round(p.lat, 9), round(p.lon, 9)) for p in edge.geometry
                )
                if shape_key in seen_shapes:
                    continue
                seen_shapes.add(shape_key)
                edges[edge.id] = edge
                graph_nodes.setdefault(edge.a, extract.nodes[edge.a])
                graph_nodes.setdefault(edge.b, extract.nodes[edge.b])
                next_edge_id += 1

    if not edges:
        raise EmptyGraphError("walkable ways produced no usable edges")
    return RoadGraph.build(graph_nodes, edges)


def _split_closed_loop(chunk: list[int]) -> list[list[int]]:
    # A chunk that starts and ends on the same node (e.g. an unsplit
    # roundabout) becomes two half-loop edges so endpoints stay distinct.
    if chunk[0] != chunk[-1] or len(chunk) < 3:
        return [chunk] if chunk[0] != chunk[-1] else []
    mid = len(chunk) // 2
    return [chunk[: mid + 1], chunk[mid:]]


def _make_edge(edge_id: int, refs: list[int], positions: dict[int, GeoPoint]) -> Edge | None:
    geometry = tuple(positions[nid] for nid in refs)
    length = cumulative_lengths(geometry)[-1]
    if length <= 0.0:
        return None
    return Edge(id=edge_id, a=refs[0], b=refs[-1], length=length, geometry=geometry)


def classify_pois(
    extract: OsmExtract,
    category_map: dict[tuple[str, str], PoiCategory] = DEFAULT_POI_CATEGORIES,
) -> list[Poi]:
    """Map tagged nodes to game POIs; unmapped tags are silently dropped."""
    pois: list[Poi] = []
    for nid, tags in extract.tagged_nodes:
        for (key, value), category in category_map.items():
            if tags.get(key) == value:
                pois.append(Poi(id=nid, position=extract.nodes[nid], category=category))
                break
    return pois
