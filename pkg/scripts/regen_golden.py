#!/usr/bin/env python3
"""Regenerate the golden replay logs under golden/.

Run this only when a deliberate rules change invalidates the frozen logs,
then re-audit the diff line by line before committing.
"""

from pathlib import Path

from pacmap.game_space import build_game_space
from pacmap.geodesy import GeoPoint
from pacmap.osm_ingest import parse_extract
from pacmap.session import SessionConfig
from pacmap.sim_bench import load_trace, run_trace

ROOT = Path(__file__).parent.parent
CENTER = GeoPoint(40.0, -75.0)
T1_SEED = 42


def main() -> None:
    space = build_game_space(
        parse_extract((ROOT / "fixtures" / "campus.osm").read_text()), CENTER
    )
    trace = load_trace(ROOT / "fixtures" / "traces" / "T1.jsonl")
    events = run_trace(space, SessionConfig(seed=T1_SEED), trace)
    out = ROOT / "golden" / "T1.jsonl"
    out.parent.mkdir(exist_ok=True)
    out.write_text("".join(e.to_line() + "\n" for e in events))
    print(f"wrote {out} ({len(events)} events)")


if __name__ == "__main__":
    main()
