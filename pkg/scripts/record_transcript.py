#!/usr/bin/env python3
"""Record a full play-channel transcript for the frontend's replay tests.

Drives the batch channel with a keyboard-style walk (1 Hz fixes at 1.4 m/s):
east along Main Street for 15 s, then diagonally to the Night Owl bar
(a visibility trap), then standing still until the trap expires. The
resulting message stream is saved verbatim for the UI reducer tests.
"""

import json
import math
from pathlib import Path

from fastapi.testclient import TestClient

from pacmap.geodesy import GeoPoint, LocalXY, from_local
from pacmap.osm_ingest import parse_extract
from pacmap.server_api import create_app

ROOT = Path(__file__).parent.parent
CENTER = GeoPoint(40.0, -75.0)
SPEED = 1.4
BAR = (90.0, -30.0)


def walk() -> list[tuple[float, float]]:
    points = []
    x, y = 0.0, 0.0
    for _ in range(15):  # east phase
        points.append((x, y))
        x += SPEED
    dx, dy = BAR[0] - x, BAR[1] - y
    dist = math.hypot(dx, dy)
    ux, uy = dx / dist, dy / dist
    while math.hypot(BAR[0] - x, BAR[1] - y) > 6.0:  # approach the bar
        points.append((x, y))
        x += ux * SPEED
        y += uy * SPEED
    for _ in range(22):  # stand in the bar until the trap expires
        points.append((x, y))
    return points


def main() -> None:
    extract = parse_extract((ROOT / "fixtures" / "campus.osm").read_text())
    client = TestClient(create_app(extract, realtime=False))
    resp = client.post("/games", json={
        "center": {"lat": CENTER.lat, "lon": CENTER.lon},
        "config": {"seed": 7, "ghost_speed": 0.5},
    })
    created = resp.json()
    sid = created["session"]

    messages = []
    with client.websocket_connect(f"/games/{sid}/play") as ws:
        messages.append(ws.receive_json())
        for t, (x, y) in enumerate(walk()):
            p = from_local(LocalXY(x, y, CENTER))
            ws.send_json({"type": "fix", "lat": round(p.lat, 7),
                          "lon": round(p.lon, 7), "t": float(t)})
        ws.send_json({"type": "done"})
        while True:
            msg = ws.receive_json()
            messages.append(msg)
            if msg["type"] == "end":
                break

    out = ROOT / "frontend" / "tests" / "fixtures" / "transcript.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(
        {"create_response": created, "messages": messages}, indent=1,
    ))
    kinds = {}
    for m in messages:
        if m["type"] == "event":
            kinds[m["event"]["kind"]] = kinds.get(m["event"]["kind"], 0) + 1
    print(f"wrote {out}: {len(messages)} messages, event kinds {kinds}")


if __name__ == "__main__":
    main()
