"""Network boundary: session lifecycle over HTTP, realtime play over a
WebSocket channel, one authoritative game loop per session.

Messages are JSON text both ways (schemas in docs/protocol.md, every message
carries a ``v`` field). The channel has two driving modes:

* realtime (production): the server ticks on the wall clock; client fixes are
  applied at the tick boundary covering their game timestamp.
* batch (tests/CI): the client streams fixes then ``{"type": "done"}``; the
  server buffers them, replays fixes and ticks exactly like the headless
  trace harness, then closes. This is what makes the wire event stream
  byte-comparable with headless replay logs.

Per-session apply_fix/tick calls all happen on the event loop in one
coroutine, which serializes them without locks.
"""

from __future__ import annotations

import asyncio
import itertools
import math
import time as _time
from collections import deque
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .game_space import EmptyGameSpaceError, GameSpace, GameSpaceConfig, build_game_space
from .geodesy import GeoPoint
from .osm_ingest import OsmExtract
from .serialize import PROTOCOL_VERSION, dumps, round_deg, round_m, round_s, stage_to_dict
from .session import (
    RUNNING,
    GameEvent,
    OutsideGameSpaceError,
    SessionConfig,
    SessionState,
    StaleFixError,
    apply_fix,
    create_session,
    tick,
)

EVICT_AFTER_SECONDS = 600.0
_TIME_EPS = 1e-9

# WebSocket close codes (4xxx application range)
CLOSE_UNKNOWN_SESSION = 4404
CLOSE_ALREADY_ATTACHED = 4409

_GAME_SPACE_KEYS = {"radius", "cookie_spacing", "min_edge_cookie_margin"}
_SESSION_KEYS = {
    "tick_seconds", "catch_radius", "cookie_radius", "poi_radius",
    "initial_lives", "max_lives", "trap_duration", "ghost_speed", "seed",
}


def snapshot_to_dict(state: SessionState) -> dict:
    """Self-sufficient live view: a client joining from this message plus the
    static stage renders exactly what a client that saw every message does."""
    player = state.player
    return {
        "v": PROTOCOL_VERSION,
        "type": "snapshot",
        "t": round_s(state.clock),
        "phase": state.phase,
        "player": {
            "lat": round_deg(player.position.lat),
            "lon": round_deg(player.position.lon),
            "edge": player.match.edge,
            "offset": round_m(player.match.offset),
            "heading": player.heading_node,
            "lives": player.lives,
            "score": player.score,
            "trapped_until": None if player.trapped_until is None
            else round_s(player.trapped_until),
        },
        "ghosts": [
            {
                "id": g.id,
                "kind": g.kind,
                "lat": round_deg(g.position.lat),
                "lon": round_deg(g.position.lon),
            }
            for g in state.ghosts
        ],
        "collected_cookies": sorted(state.collected_cookies),
        "consumed_pois": sorted(state.consumed_pois),
        "cookies_remaining": len(state.space.cookies) - len(state.collected_cookies),
    }


def event_message(event: GameEvent) -> dict:
    return {"v": PROTOCOL_VERSION, "type": "event", "event": event.to_dict()}


def end_message(state: SessionState) -> dict:
    return {
        "v": PROTOCOL_VERSION,
        "type": "end",
        "phase": state.phase,
        "score": state.player.score,
    }


def error_message(detail: str) -> dict:
    return {"v": PROTOCOL_VERSION, "type": "error", "error": detail}


@dataclass
class GameHandle:
    session_id: str
    state: SessionState
    attached: bool = False
    terminal_at: float | None = None  # wall time the terminal phase was seen


@dataclass
class Registry:
    games: dict[str, GameHandle] = field(default_factory=dict)
    _ids: itertools.count = field(default_factory=lambda: itertools.count(1))

    def new_id(self) -> str:
        return f"g{next(self._ids)}"

    def evict_stale(self) -> None:
        now = _time.monotonic()
        for sid in [
            sid for sid, h in self.games.items()
            if h.terminal_at is not None and now - h.terminal_at > EVICT_AFTER_SECONDS
        ]:
            del self.games[sid]

    def note_phase(self, handle: GameHandle) -> None:
        if handle.state.phase != RUNNING and handle.terminal_at is None:
            handle.terminal_at = _time.monotonic()


class _Outbox:
    """Ordered sender with snapshot coalescing.

    Events are never dropped and always go out in log order; when the client
    is slow only the newest pending snapshot is kept.
    """

    def __init__(self) -> None:
        self.events: deque[dict] = deque()
        self.snapshot: dict | None = None
        self.end: dict | None = None
        self.wake = asyncio.Event()

    def put_events(self, messages) -> None:
        self.events.extend(messages)
        self.wake.set()

    def put_snapshot(self, message: dict) -> None:
        self.snapshot = message
        self.wake.set()

    def put_end(self, message: dict) -> None:
        self.end = message
        self.wake.set()

    async def run(self, ws: WebSocket) -> None:
        while True:
            await self.wake.wait()
            self.wake.clear()
            while self.events:
                await ws.send_text(dumps(self.events.popleft()))
            if self.snapshot is not None:
                snap, self.snapshot = self.snapshot, None
                await ws.send_text(dumps(snap))
            if self.end is not None and not self.events and self.snapshot is None:
                await ws.send_text(dumps(self.end))
                return


def _parse_fix(doc: dict) -> tuple[GeoPoint, float]:
    point = GeoPoint(float(doc["lat"]), float(doc["lon"]))
    return point, float(doc["t"])


def _split_config(overrides: dict) -> tuple[GameSpaceConfig, SessionConfig]:
    unknown = set(overrides) - _GAME_SPACE_KEYS - _SESSION_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    space_cfg = GameSpaceConfig(
        **{k: overrides[k] for k in _GAME_SPACE_KEYS if k in overrides}
    )
    session_cfg = SessionConfig(
        **{k: overrides[k] for k in _SESSION_KEYS if k in overrides}
    )
    return space_cfg, session_cfg


def create_app(extract: OsmExtract, *, realtime: bool = True) -> FastAPI:
    """Build the game server around a preloaded map extract.

    ``realtime=False`` switches the play channel into deterministic batch
    mode for tests.
    """
    app = FastAPI(title="pacmap", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )
    registry = Registry()
    app.state.registry = registry
    app.state.realtime = realtime

    @app.exception_handler(Exception)
    async def unhandled(request: Request, exc: Exception):  # pragma: no cover
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.post("/games")
    async def create_game(request: Request):
        registry.evict_stale()
        try:
            body = await request.json()
            center = GeoPoint(float(body["center"]["lat"]), float(body["center"]["lon"]))
            overrides = dict(body.get("config", {}))
            space_cfg, session_cfg = _split_config(overrides)
            start = center
            if "start" in body:
                start = GeoPoint(float(body["start"]["lat"]), float(body["start"]["lon"]))
        except (KeyError, TypeError, ValueError) as exc:
            return JSONResponse(status_code=400, content={"detail": f"malformed body: {exc}"})
        try:
            space = build_game_space(extract, center, space_cfg)
            state = create_session(space, session_cfg, start)
        except (EmptyGameSpaceError, OutsideGameSpaceError) as exc:
            return JSONResponse(status_code=422, content={"detail": str(exc)})
        handle = GameHandle(session_id=registry.new_id(), state=state)
        registry.games[handle.session_id] = handle
        return JSONResponse(content={
            "v": PROTOCOL_VERSION,
            "session": handle.session_id,
            "stage": stage_to_dict(space),
            "snapshot": snapshot_to_dict(state),
        })

    @app.get("/games/{session_id}")
    async def get_game(session_id: str):
        registry.evict_stale()
        handle = registry.games.get(session_id)
        if handle is None:
            return JSONResponse(status_code=404, content={"detail": "unknown session"})
        return JSONResponse(content={
            "v": PROTOCOL_VERSION,
            "session": handle.session_id,
            "stage": stage_to_dict(handle.state.space),
            "snapshot": snapshot_to_dict(handle.state),
        })

    @app.websocket("/games/{session_id}/play")
    async def play(ws: WebSocket, session_id: str):
        await ws.accept()
        handle = registry.games.get(session_id)
        if handle is None:
            await ws.send_text(dumps(error_message("unknown session")))
            await ws.close(code=CLOSE_UNKNOWN_SESSION)
            return
        if handle.attached:
            await ws.send_text(dumps(error_message("session already has a player")))
            await ws.close(code=CLOSE_ALREADY_ATTACHED)
            return
        handle.attached = True
        try:
            if realtime:
                await _play_realtime(ws, handle, registry)
            else:
                await _play_batch(ws, handle, registry)
        except WebSocketDisconnect:
            pass
        finally:
            handle.attached = False
            registry.note_phase(handle)

    return app


def _stream_step_events(state: SessionState, outbox: _Outbox, events) -> None:
    outbox.put_events(event_message(e) for e in events)


def _apply_due_fixes(
    state: SessionState, pending: deque, boundary: float, outbox: _Outbox
) -> None:
    while pending and pending[0][1] <= boundary + _TIME_EPS:
        point, t = pending.popleft()
        try:
            _stream_step_events(state, outbox, apply_fix(state, point, t))
        except StaleFixError as exc:
            outbox.put_events([error_message(str(exc))])


async def _play_batch(ws: WebSocket, handle: GameHandle, registry: Registry) -> None:
    """Buffer the whole fix stream, then replay it exactly like run_trace.

    Messages are sent directly and in order (events, then the tick's
    snapshot); socket backpressure throttles the replay instead of an outbox.
    """
    state = handle.state
    await ws.send_text(dumps(snapshot_to_dict(state)))
    pending: deque[tuple[GeoPoint, float]] = deque()
    while True:
        doc = await ws.receive_json()
        kind = doc.get("type") if isinstance(doc, dict) else None
        if kind == "fix":
            try:
                pending.append(_parse_fix(doc))
            except (KeyError, TypeError, ValueError) as exc:
                await ws.send_text(dumps(error_message(f"bad fix: {exc}")))
        elif kind == "done":
            break
        else:
            await ws.send_text(dumps(error_message(f"unknown message type: {kind!r}")))

    dt = state.config.tick_seconds
    horizon = 0.0
    if pending:
        horizon = math.ceil(pending[-1][1] / dt - _TIME_EPS) * dt
    while state.phase == RUNNING and state.clock < horizon - _TIME_EPS:
        boundary = state.clock + dt
        while pending and pending[0][1] <= boundary + _TIME_EPS:
            point, t = pending.popleft()
            try:
                for event in apply_fix(state, point, t):
                    await ws.send_text(dumps(event_message(event)))
            except StaleFixError as exc:
                await ws.send_text(dumps(error_message(str(exc))))
        for event in tick(state, dt):
            await ws.send_text(dumps(event_message(event)))
        await ws.send_text(dumps(snapshot_to_dict(state)))
    await ws.send_text(dumps(end_message(state)))
    await ws.close()


async def _play_realtime(ws: WebSocket, handle: GameHandle, registry: Registry) -> None:
    """Wall-clock game loop: one tick per tick_seconds, fixes applied at the
    boundary covering their game timestamp."""
    state = handle.state
    outbox = _Outbox()
    sender = asyncio.create_task(outbox.run(ws))
    outbox.put_snapshot(snapshot_to_dict(state))
    inbox: asyncio.Queue = asyncio.Queue()

    async def reader() -> None:
        try:
            while True:
                await inbox.put(await ws.receive_json())
        except WebSocketDisconnect:
            await inbox.put(None)

    reader_task = asyncio.create_task(reader())
    pending: deque[tuple[GeoPoint, float]] = deque()
    dt = state.config.tick_seconds
    loop = asyncio.get_running_loop()
    next_tick = loop.time() + dt
    disconnected = False
    try:
        while state.phase == RUNNING and not disconnected:
            while True:
                timeout = next_tick - loop.time()
                if timeout <= 0:
                    break
                try:
                    doc = await asyncio.wait_for(inbox.get(), timeout)
                except asyncio.TimeoutError:
                    break
                if doc is None:
                    disconnected = True
                    break
                kind = doc.get("type") if isinstance(doc, dict) else None
                if kind == "fix":
                    try:
                        pending.append(_parse_fix(doc))
                    except (KeyError, TypeError, ValueError) as exc:
                        outbox.put_events([error_message(f"bad fix: {exc}")])
                elif kind == "done":
                    disconnected = True
                    break
                else:
                    outbox.put_events([error_message(f"unknown message type: {kind!r}")])
            if disconnected:
                break
            next_tick += dt
            _apply_due_fixes(state, pending, state.clock + dt, outbox)
            _stream_step_events(state, outbox, tick(state, dt))
            outbox.put_snapshot(snapshot_to_dict(state))
        if state.phase != RUNNING:
            outbox.put_end(end_message(state))
            await sender
            await ws.close()
    finally:
        registry.note_phase(handle)
        reader_task.cancel()
        if not sender.done():
            sender.cancel()
