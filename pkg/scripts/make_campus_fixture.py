#!/usr/bin/env python3
"""Regenerate fixtures/campus.osm from its meter-grid design.

The campus is a synthetic street grid laid out in planar meters around the
labeled center (40.0, -75.0) and converted to WGS84 with the package's local
frame. Layout (x east, y north, meters):

  Main Street      (residential) y=0,    x from -240 to 240, nodes every 60 m
  Cross Avenue     (residential) x=0,    y from -240 to 240, nodes every 60 m
  North Loop       (residential) y=120,  x from -120 to 120
  South Road       (residential) y=-120, x from -120 to 120
  East Lane        (residential) x=120,  y from -120 to 120
  West Lane        (residential) x=-120, y from -120 to 120
  Garden Path      (footway)     y=60,   x from -60 to 60
  Cellar Path      (footway)     y=-60,  x from -60 to 60
  East Walk        (path)        x=60,   y from -60 to 60
  West Walk        (path)        x=-60,  y from -60 to 60
  Far East Path    (footway)     y=0,    x from 240 to 300 (outside the circle)
  Bypass           (motorway)    y=200,  x from -300 to 300 (not walkable)

POI nodes: pharmacy (30,30), hospital (-90,90), bar (90,-30).

Ground truth for the resulting counts is documented in fixtures/README.md.
"""

from pathlib import Path

from pacmap.geodesy import GeoPoint, LocalXY, from_local

CENTER = GeoPoint(40.0, -75.0)

# id -> (x, y) meters from center
NODES = {
    # Main Street, west to east
    101: (-240, 0), 102: (-180, 0), 103: (-120, 0), 104: (-60, 0), 105: (0, 0),
    106: (60, 0), 107: (120, 0), 108: (180, 0), 109: (240, 0),
    # Cross Avenue, south to north (105 shared at the center)
    201: (0, -240), 202: (0, -180), 203: (0, -120), 204: (0, -60),
    205: (0, 60), 206: (0, 120), 207: (0, 180), 208: (0, 240),
    # North Loop / South Road shape + end nodes
    301: (-120, 120), 302: (-60, 120), 303: (60, 120), 304: (120, 120),
    401: (-120, -120), 402: (-60, -120), 403: (60, -120), 404: (120, -120),
    # East/West Lane shape nodes
    501: (120, -60), 502: (120, 60),
    601: (-120, -60), 602: (-120, 60),
    # Garden/Cellar Path end nodes
    701: (-60, 60), 702: (60, 60),
    801: (-60, -60), 802: (60, -60),
    # Far East Path end node
    901: (300, 0),
    # Bypass motorway
    911: (-300, 200), 912: (0, 200), 913: (300, 200),
    # POI nodes
    951: (30, 30), 952: (-90, 90), 953: (90, -30),
}

WAYS = [
    (11, "Main Street", "residential", [101, 102, 103, 104, 105, 106, 107, 108, 109]),
    (12, "Cross Avenue", "residential", [201, 202, 203, 204, 105, 205, 206, 207, 208]),
    (13, "North Loop", "residential", [301, 302, 206, 303, 304]),
    (14, "South Road", "residential", [401, 402, 203, 403, 404]),
    (15, "East Lane", "residential", [404, 501, 107, 502, 304]),
    (16, "West Lane", "residential", [401, 601, 103, 602, 301]),
    (17, "Garden Path", "footway", [701, 205, 702]),
    (18, "Cellar Path", "footway", [801, 204, 802]),
    (19, "East Walk", "path", [802, 106, 702]),
    (20, "West Walk", "path", [801, 104, 701]),
    (21, "Far East Path", "footway", [109, 901]),
    (22, "Bypass", "motorway", [911, 912, 913]),
]

POI_TAGS = {
    951: {"amenity": "pharmacy", "name": "Campus Pharmacy"},
    952: {"amenity": "hospital", "name": "Campus Clinic"},
    953: {"amenity": "bar", "name": "Night Owl"},
}


def main() -> None:
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<osm version="0.6" generator="make_campus_fixture">']
    for nid, (x, y) in sorted(NODES.items()):
        p = from_local(LocalXY(float(x), float(y), CENTER))
        tags = POI_TAGS.get(nid)
        if tags:
            lines.append(f'  <node id="{nid}" lat="{p.lat:.7f}" lon="{p.lon:.7f}">')
            for k, v in tags.items():
                lines.append(f'    <tag k="{k}" v="{v}"/>')
            lines.append('  </node>')
        else:
            lines.append(f'  <node id="{nid}" lat="{p.lat:.7f}" lon="{p.lon:.7f}"/>')
    for wid, name, highway, refs in WAYS:
        lines.append(f'  <way id="{wid}">')
        for ref in refs:
            lines.append(f'    <nd ref="{ref}"/>')
        lines.append(f'    <tag k="highway" v="{highway}"/>')
        lines.append(f'    <tag k="name" v="{name}"/>')
        lines.append('  </way>')
    lines.append('</osm>')

    out = Path(__file__).parent.parent / "fixtures" / "campus.osm"
    out.parent.mkdir(exist_ok=True)
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out} ({len(NODES)} nodes, {len(WAYS)} ways)")


if __name__ == "__main__":
    main()
