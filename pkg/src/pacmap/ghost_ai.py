"""Ghost behavior: random roamers and the red chaser with live replanning.

Roamers draw pairs of random points on the play-circle arc and route between
their nearest graph nodes. The chaser pursues the node the player is heading
to, replans whenever the player changes edge or direction, and re-targets the
player's edge's other endpoint when a pursuit ends without having traversed
the player's edge.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .game_space import GameSpace
from .geodesy import GeoPoint, vincenty_direct, vincenty_inverse
from .osm_ingest import RoadGraph
from .pathfinding import (
    EdgeMatch,
    Path,
    leg_boundaries,
    nearest_node,
    path_geometry_position,
    shortest_path,
)

CHASER = "chaser"
ROAMER = "roamer"
ROAMER_IDS = ("purple", "orange", "blue")
CHASER_ID = "red"

_PROGRESS_EPS = 1e-9


@dataclass
class Ghost:
    id: str
    kind: str
    position: GeoPoint
    speed: float
    path: Path | None = None
    path_progress: float = 0.0
    traversed_player_edge: bool = False
    routes_planned: int = 0

    def path_exhausted(self) -> bool:
        return self.path is not None and (
            self.path_progress >= self.path.total_length - _PROGRESS_EPS
        )


@dataclass
class PlayerState:
    position: GeoPoint
    match: EdgeMatch
    heading_node: int
    lives: int
    score: int = 0
    trapped_until: float | None = None


def heading_for_new_edge(graph: RoadGraph, match: EdgeMatch) -> int:
    """Heading when a player appears on an edge with no prior direction.

    The far endpoint relative to the entry offset: whoever enters an edge is
    assumed to keep walking away from where they came in. Exact midpoint ties
    go to the smaller node id.
    """
    edge = graph.edges[match.edge]
    to_a = match.offset
    to_b = edge.length - match.offset
    if abs(to_a - to_b) <= 1e-9:
        return min(edge.a, edge.b)
    return edge.a if to_a > to_b else edge.b


def update_heading(graph: RoadGraph, prev: PlayerState, match: EdgeMatch) -> int:
    """Infer the node the player currently heads to from consecutive matches.

    Same edge: growing offset means toward endpoint b, shrinking toward a,
    unchanged keeps the previous heading. New edge: the far endpoint relative
    to the entry point.
    """
    if match.edge != prev.match.edge:
        return heading_for_new_edge(graph, match)
    edge = graph.edges[match.edge]
    if match.offset > prev.match.offset + 1e-9:
        return edge.b
    if match.offset < prev.match.offset - 1e-9:
        return edge.a
    return prev.heading_node


def should_replan(prev: PlayerState, new: PlayerState) -> bool:
    """True when the player reached a new edge or turned around on the same one."""
    return (
        new.match.edge != prev.match.edge or new.heading_node != prev.heading_node
    )


def replan_reason(prev: PlayerState, new: PlayerState) -> str | None:
    if new.match.edge != prev.match.edge:
        return "edge_change"
    if new.heading_node != prev.heading_node:
        return "direction_change"
    return None


def _arc_point(space: GameSpace, theta: float) -> GeoPoint:
    return vincenty_direct(space.center, math.degrees(theta) % 360.0, space.config.radius)


def roamer_next_route(rng: random.Random, space: GameSpace, ghost: Ghost) -> Path:
    """Plan the next random route for a roamer.

    Draws exactly two uniform angles on the play circle's arc per route (the
    would-be start/end pair). The route runs from the ghost's current nearest
    node to the snapped first point on its first route and the snapped second
    point afterwards, so replay draw counts stay a pure function of route
    count. The degenerate case (both snaps equal the ghost's own node)
    redraws once and then falls back to a random adjacent node.
    """
    graph = space.graph
    start = nearest_node(graph, ghost.position)

    def draw_pair() -> tuple[int, int]:
        theta1 = rng.random() * 2.0 * math.pi
        theta2 = rng.random() * 2.0 * math.pi
        return (
            nearest_node(graph, _arc_point(space, theta1)),
            nearest_node(graph, _arc_point(space, theta2)),
        )

    snap1, snap2 = draw_pair()
    if snap1 == snap2 == start:
        snap1, snap2 = draw_pair()
    if snap1 == snap2 == start:
        neighbors = sorted({nbr for nbr, _ in graph.adjacency[start]})
        goal = neighbors[min(int(rng.random() * len(neighbors)), len(neighbors) - 1)]
    else:
        goal = snap1 if ghost.routes_planned == 0 else snap2

    path = shortest_path(graph, start, goal)
    ghost.path = path
    ghost.path_progress = 0.0
    ghost.position = graph.nodes[start]
    ghost.routes_planned += 1
    return path


def chaser_plan(space: GameSpace, ghost: Ghost, player: PlayerState) -> Path:
    """Fresh pursuit: nearest node to the ghost -> the player's heading node."""
    graph = space.graph
    start = nearest_node(graph, ghost.position)
    path = shortest_path(graph, start, player.heading_node)
    ghost.path = path
    ghost.path_progress = 0.0
    ghost.position = graph.nodes[start]
    ghost.traversed_player_edge = False
    ghost.routes_planned += 1
    return path


def chaser_on_goal_reached(space: GameSpace, ghost: Ghost, player: PlayerState) -> Path:
    """Re-target after an unsuccessful pursuit.

    The ghost reached its end node without passing the player's edge, so the
    other endpoint of that edge becomes the new goal. If the ghost already
    stands there, the new path is the player's edge itself.
    """
    graph = space.graph
    current = nearest_node(graph, ghost.position)
    player_edge = graph.edges[player.match.edge]
    other = player_edge.other_endpoint(player.heading_node)
    if other == current:
        forward = player_edge.a == current
        path = Path(
            nodes=(current, player_edge.other_endpoint(current)),
            legs=((player_edge.id, forward),),
            total_length=player_edge.length,
        )
    else:
        path = shortest_path(graph, current, other)
    ghost.path = path
    ghost.path_progress = 0.0
    ghost.position = graph.nodes[current]
    ghost.routes_planned += 1
    return path


def advance_ghost(graph: RoadGraph, ghost: Ghost, dt: float, player: PlayerState) -> None:
    """Move a ghost along its path by speed*dt and track player-edge coverage.

    The chaser's catch rule cares about legs *fully* traversed: the flag is
    raised when a leg equal to the player's current edge completes during
    this advance.
    """
    if ghost.path is None or dt <= 0:
        return
    old = ghost.path_progress
    new = min(old + ghost.speed * dt, ghost.path.total_length)
    ghost.path_progress = new
    ghost.position = path_geometry_position(graph, ghost.path, new)
    for (eid, _), bound in zip(ghost.path.legs, leg_boundaries(graph, ghost.path)):
        if old < bound <= new + _PROGRESS_EPS and eid == player.match.edge:
            ghost.traversed_player_edge = True


def check_catch(ghost: Ghost, player: PlayerState, catch_radius: float) -> bool:
    """Proximity catch: inside or exactly on the catch circle counts."""
    return vincenty_inverse(ghost.position, player.position) <= catch_radius
