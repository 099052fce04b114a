#!/usr/bin/env python3
"""Regenerate the scripted GPS traces under fixtures/traces/.

T1 walks edge 3 (105 -> 106) of the campus fixture: east for three seconds,
reverses mid-edge at t=3 (one direction change), then walks west across the
105 intersection onto edge 2 at t=7 (one edge change), ending at t=9. The
x offsets are meters east of the campus center along Main Street (y=0).
"""

import json
from pathlib import Path

from pacmap.geodesy import GeoPoint, LocalXY, from_local

CENTER = GeoPoint(40.0, -75.0)

T1_XS = [20, 26, 32, 26, 20, 12, 4, -4, -12, -20]


def main() -> None:
    out_dir = Path(__file__).parent.parent / "fixtures" / "traces"
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = []
    for t, x in enumerate(T1_XS):
        p = from_local(LocalXY(float(x), 0.0, CENTER))
        lines.append(json.dumps(
            {"t": float(t), "lat": round(p.lat, 7), "lon": round(p.lon, 7)},
            separators=(",", ":"),
        ))
    (out_dir / "T1.jsonl").write_text("\n".join(lines) + "\n")
    print(f"wrote {out_dir / 'T1.jsonl'} ({len(lines)} fixes)")


if __name__ == "__main__":
    main()
