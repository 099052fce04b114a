"""The rules engine: GPS fixes and clock ticks in, ordered game events out.

A session owns the player, the four ghosts, cookie/POI consumption state,
lives, score, and a seeded RNG. Everything is driven by game time supplied by
the caller (fix timestamps and tick increments); nothing reads the wall
clock, so identical inputs always produce identical event logs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .game_space import GameSpace
from .geodesy import GeoPoint, vincenty_inverse
from .ghost_ai import (
    CHASER,
    CHASER_ID,
    ROAMER,
    ROAMER_IDS,
    Ghost,
    PlayerState,
    advance_ghost,
    chaser_on_goal_reached,
    chaser_plan,
    check_catch,
    heading_for_new_edge,
    replan_reason,
    roamer_next_route,
    should_replan,
    update_heading,
)
from .osm_ingest import PoiCategory
from .pathfinding import match_to_edge, shortest_path_lengths
from .serialize import PROTOCOL_VERSION, round_deg, round_m, round_s, dumps

# Event kinds
FIX_APPLIED = "fix_applied"
FIX_REJECTED = "fix_rejected"
COOKIE_COLLECTED = "cookie_collected"
LIFE_GAINED = "life_gained"
TRAP_ENTERED = "trap_entered"
TRAP_EXPIRED = "trap_expired"
REPLANNED = "replanned"
CAUGHT = "caught"
LIFE_LOST = "life_lost"
WON = "won"
LOST = "lost"

RUNNING = "running"
PHASE_WON = "won"
PHASE_LOST = "lost"

COOKIE_SCORE = 10
# After losing a life the player cannot be caught again for a grace period.
INVULNERABLE_SECONDS = 3.0
# Fixes slightly outside the circle are GPS noise; far outside are rejected.
OUTSIDE_FIX_TOLERANCE_M = 50.0


class OutsideGameSpaceError(Exception):
    """Player start point lies outside the stage circle."""


class StaleFixError(Exception):
    """Fix timestamp precedes the session clock or an already applied fix."""


@dataclass(frozen=True)
class SessionConfig:
    tick_seconds: float = 0.2
    catch_radius: float = 8.0
    cookie_radius: float = 6.0
    poi_radius: float = 10.0
    initial_lives: int = 3
    max_lives: int = 5
    trap_duration: float = 15.0
    ghost_speed: float = 1.6
    seed: int = 0

    def __post_init__(self) -> None:
        if self.tick_seconds <= 0:
            raise ValueError("tick_seconds must be positive")
        for name in ("catch_radius", "cookie_radius", "poi_radius"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not (0 < self.initial_lives <= self.max_lives):
            raise ValueError("need 0 < initial_lives <= max_lives")


@dataclass(frozen=True)
class GameEvent:
    t: float
    seq: int
    kind: str
    payload: dict

    def to_dict(self) -> dict:
        doc = {"v": PROTOCOL_VERSION, "seq": self.seq, "t": round_s(self.t),
               "kind": self.kind}
        doc.update(self.payload)
        return doc

    def to_line(self) -> str:
        return dumps(self.to_dict())


@dataclass
class SessionState:
    space: GameSpace
    config: SessionConfig
    player: PlayerState
    ghosts: list[Ghost]
    rng: random.Random
    tick_index: int = 0
    phase: str = RUNNING
    events: list[GameEvent] = field(default_factory=list)
    collected_cookies: set[int] = field(default_factory=set)
    consumed_pois: set[int] = field(default_factory=set)
    invulnerable_until: float = 0.0
    last_fix_time: float = float("-inf")
    _seq: int = 0

    @property
    def clock(self) -> float:
        return self.tick_index * self.config.tick_seconds

    def emit(self, t: float, kind: str, payload: dict) -> GameEvent:
        event = GameEvent(t=t, seq=self._seq, kind=kind, payload=payload)
        self._seq += 1
        self.events.append(event)
        return event


def _spawn_ranking(state: SessionState) -> list[int]:
    """Node ids ranked farthest-first (by shortest-path distance) from the
    player's heading node; distance ties go to the smaller id."""
    dists = shortest_path_lengths(state.space.graph, state.player.heading_node)
    return sorted(dists, key=lambda nid: (-dists[nid], nid))


def _respawn_ghosts(state: SessionState) -> None:
    ranking = _spawn_ranking(state)
    for i, ghost in enumerate(state.ghosts):
        node = ranking[i % len(ranking)]
        ghost.position = state.space.graph.nodes[node]
        ghost.path = None
        ghost.path_progress = 0.0
        ghost.traversed_player_edge = False
    chaser = state.ghosts[0]
    chaser_plan(state.space, chaser, state.player)


def create_session(
    space: GameSpace, config: SessionConfig, player_start: GeoPoint
) -> SessionState:
    """Match the player onto the graph and spawn the ghosts far away.

    The chaser takes the node with the greatest shortest-path distance from
    the player's heading node; the roamers take the next three. The chaser's
    first pursuit is planned immediately (without a replan event); roamers
    pick up their first random routes on the first tick.
    """
    if vincenty_inverse(space.center, player_start) > space.config.radius:
        raise OutsideGameSpaceError(
            f"player start {player_start} is outside the {space.config.radius:.0f} m circle"
        )
    match = match_to_edge(space.graph, player_start)
    player = PlayerState(
        position=player_start,
        match=match,
        heading_node=heading_for_new_edge(space.graph, match),
        lives=config.initial_lives,
    )
    state = SessionState(
        space=space,
        config=config,
        player=player,
        ghosts=[],
        rng=random.Random(config.seed),
    )
    ranking = _spawn_ranking(state)
    ids = (CHASER_ID,) + ROAMER_IDS
    kinds = (CHASER,) + (ROAMER,) * 3
    for i, (gid, kind) in enumerate(zip(ids, kinds)):
        node = ranking[i % len(ranking)]
        state.ghosts.append(
            Ghost(id=gid, kind=kind, position=space.graph.nodes[node],
                  speed=config.ghost_speed)
        )
    chaser_plan(space, state.ghosts[0], player)
    return state


def apply_fix(state: SessionState, fix: GeoPoint, t: float) -> list[GameEvent]:
    """Consume one GPS fix at game time t; returns the events it produced.

    Callers must interleave fixes with ticks in timestamp order (a fix lands
    before the tick sharing its timestamp) to keep event times monotone; the
    trace harness and the live channel both drive sessions this way.
    """
    if state.phase != RUNNING:
        return []
    if t < state.clock - 1e-9 or t <= state.last_fix_time - 1e-9:
        raise StaleFixError(
            f"fix at t={t} is older than clock={state.clock} "
            f"or last fix={state.last_fix_time}"
        )
    start_seq = len(state.events)
    space = state.space
    if vincenty_inverse(space.center, fix) > space.config.radius + OUTSIDE_FIX_TOLERANCE_M:
        state.emit(t, FIX_REJECTED, {
            "lat": round_deg(fix.lat), "lon": round_deg(fix.lon),
            "reason": "outside_space",
        })
        return state.events[start_seq:]
    state.last_fix_time = t

    player = state.player
    prev = PlayerState(
        position=player.position, match=player.match,
        heading_node=player.heading_node, lives=player.lives,
        score=player.score, trapped_until=player.trapped_until,
    )
    match = match_to_edge(space.graph, fix)
    player.position = fix
    player.match = match
    player.heading_node = update_heading(space.graph, prev, match)
    state.emit(t, FIX_APPLIED, {
        "lat": round_deg(fix.lat), "lon": round_deg(fix.lon),
        "edge": match.edge, "offset": round_m(match.offset),
        "heading": player.heading_node,
    })

    for cookie in space.cookies:
        if cookie.id in state.collected_cookies:
            continue
        if vincenty_inverse(fix, cookie.position) <= state.config.cookie_radius:
            state.collected_cookies.add(cookie.id)
            player.score += COOKIE_SCORE
            state.emit(t, COOKIE_COLLECTED, {"cookie": cookie.id, "score": player.score})

    for poi in space.pois:
        if poi.id in state.consumed_pois:
            continue
        if vincenty_inverse(fix, poi.position) <= state.config.poi_radius:
            state.consumed_pois.add(poi.id)
            if poi.category is PoiCategory.LIFE_BOOST:
                if player.lives < state.config.max_lives:
                    player.lives += 1
                    state.emit(t, LIFE_GAINED, {"poi": poi.id, "lives": player.lives})
            else:
                player.trapped_until = t + state.config.trap_duration
                state.emit(t, TRAP_ENTERED, {
                    "poi": poi.id, "until": round_s(player.trapped_until),
                })

    if should_replan(prev, player):
        reason = replan_reason(prev, player)
        path = chaser_plan(space, state.ghosts[0], player)
        state.emit(t, REPLANNED, {
            "ghost": CHASER_ID, "reason": reason, "goal": path.nodes[-1],
        })
    return state.events[start_seq:]


def tick(state: SessionState, dt: float) -> list[GameEvent]:
    """Advance the session by one tick of game time."""
    if state.phase != RUNNING:
        return []
    if abs(dt - state.config.tick_seconds) > 1e-12:
        raise ValueError(
            f"tick dt {dt} must equal configured tick_seconds {state.config.tick_seconds}"
        )
    start_seq = len(state.events)
    state.tick_index += 1
    now = state.clock
    space = state.space
    player = state.player

    if player.trapped_until is not None and now >= player.trapped_until - 1e-9:
        player.trapped_until = None
        state.emit(now, TRAP_EXPIRED, {})

    for ghost in state.ghosts:
        if ghost.path is not None:
            advance_ghost(space.graph, ghost, dt, player)

    if now >= state.invulnerable_until:
        for ghost in state.ghosts:
            edge_covered = (
                ghost.kind == CHASER
                and ghost.path_exhausted()
                and ghost.traversed_player_edge
            )
            if edge_covered or check_catch(ghost, player, state.config.catch_radius):
                state.emit(now, CAUGHT, {"ghost": ghost.id})
                player.lives -= 1
                state.emit(now, LIFE_LOST, {"lives": player.lives})
                if player.lives <= 0:
                    state.phase = PHASE_LOST
                    state.emit(now, LOST, {"score": player.score})
                    return state.events[start_seq:]
                _respawn_ghosts(state)
                state.invulnerable_until = now + INVULNERABLE_SECONDS
                break  # one catch per tick; everyone just respawned

    for ghost in state.ghosts:
        if ghost.kind == ROAMER:
            if ghost.path is None or ghost.path_exhausted():
                roamer_next_route(state.rng, space, ghost)
        elif ghost.path is None:
            # Only possible after a NoPath fallback left the chaser idle.
            chaser_plan(space, ghost, player)
        elif ghost.path_exhausted() and not ghost.traversed_player_edge:
            path = chaser_on_goal_reached(space, ghost, player)
            state.emit(now, REPLANNED, {
                "ghost": ghost.id, "reason": "goal_reached", "goal": path.nodes[-1],
            })
        # An exhausted path with the flag raised is a pending catch: the
        # chaser camps there until invulnerability runs out or a replan
        # retargets it.

    if len(state.collected_cookies) == len(space.cookies):
        state.phase = PHASE_WON
        state.emit(now, WON, {"score": player.score})

    return state.events[start_seq:]
