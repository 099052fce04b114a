"""Stable JSON serialization for stages, snapshots, and event logs.

Replay regression relies on byte-exact output across runs and platforms, so
numeric fields are rounded to fixed precision before dumping (7 decimals for
degrees, ~1 cm; 3 decimals for meters and seconds) and key order is fixed by
construction. Python renders rounded floats with the shortest round-trip
repr, which is platform-independent.
"""

from __future__ import annotations

import json
from typing import Any

from .game_space import Cookie, GameSpace, GameSpaceConfig
from .geodesy import GeoPoint
from .osm_ingest import Edge, Poi, PoiCategory, RoadGraph

PROTOCOL_VERSION = 1


def round_deg(x: float) -> float:
    return round(x, 7)


def round_m(x: float) -> float:
    return round(x, 3)


def round_s(x: float) -> float:
    return round(x, 3)


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def stage_to_dict(space: GameSpace) -> dict:
    return {
        "v": PROTOCOL_VERSION,
        "center": {"lat": round_deg(space.center.lat), "lon": round_deg(space.center.lon)},
        "config": {
            "radius": round_m(space.config.radius),
            "cookie_spacing": round_m(space.config.cookie_spacing),
            "min_edge_cookie_margin": round_m(space.config.min_edge_cookie_margin),
        },
        "nodes": [
            {"id": nid, "lat": round_deg(p.lat), "lon": round_deg(p.lon)}
            for nid, p in sorted(space.graph.nodes.items())
        ],
        "edges": [
            {
                "id": e.id,
                "a": e.a,
                "b": e.b,
                "length": round_m(e.length),
                "geometry": [[round_deg(p.lat), round_deg(p.lon)] for p in e.geometry],
            }
            for _, e in sorted(space.graph.edges.items())
        ],
        "cookies": [
            {
                "id": c.id,
                "edge": c.edge,
                "offset": round_m(c.offset),
                "lat": round_deg(c.position.lat),
                "lon": round_deg(c.position.lon),
                "collected": c.collected,
            }
            for c in space.cookies
        ],
        "pois": [
            {
                "id": p.id,
                "lat": round_deg(p.position.lat),
                "lon": round_deg(p.position.lon),
                "category": p.category.value,
                "consumed": p.consumed,
            }
            for p in space.pois
        ],
    }


def stage_from_dict(doc: dict) -> GameSpace:
    """Rebuild a stage from its JSON snapshot.

    The serialized values are authoritative (lengths are not recomputed from
    the rounded geometry) so that replays from the same stage file are
    bit-identical everywhere.
    """
    if doc.get("v") != PROTOCOL_VERSION:
        raise ValueError(f"unsupported stage version: {doc.get('v')!r}")
    nodes = {n["id"]: GeoPoint(n["lat"], n["lon"]) for n in doc["nodes"]}
    edges = {
        e["id"]: Edge(
            id=e["id"],
            a=e["a"],
            b=e["b"],
            length=e["length"],
            geometry=tuple(GeoPoint(lat, lon) for lat, lon in e["geometry"]),
        )
        for e in doc["edges"]
    }
    cookies = tuple(
        Cookie(
            id=c["id"],
            position=GeoPoint(c["lat"], c["lon"]),
            edge=c["edge"],
            offset=c["offset"],
            collected=c["collected"],
        )
        for c in doc["cookies"]
    )
    pois = tuple(
        Poi(
            id=p["id"],
            position=GeoPoint(p["lat"], p["lon"]),
            category=PoiCategory(p["category"]),
            consumed=p["consumed"],
        )
        for p in doc["pois"]
    )
    cfg = doc["config"]
    return GameSpace(
        center=GeoPoint(doc["center"]["lat"], doc["center"]["lon"]),
        config=GameSpaceConfig(
            radius=cfg["radius"],
            cookie_spacing=cfg["cookie_spacing"],
            min_edge_cookie_margin=cfg["min_edge_cookie_margin"],
        ),
        graph=RoadGraph.build(nodes, edges),
        cookies=cookies,
        pois=pois,
    )
