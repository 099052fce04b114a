import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pacmap.game_space import (
    Cookie,
    EmptyGameSpaceError,
    GameSpaceConfig,
    build_game_space,
    clip_to_circle,
    cookie_offsets,
    place_cookies,
)
from pacmap.geodesy import (
    GeoPoint,
    cumulative_lengths,
    interpolate_along,
    initial_bearing,
    vincenty_direct,
    vincenty_inverse,
)
from pacmap.osm_ingest import build_road_graph, parse_extract

from conftest import FIXTURES

CENTER = GeoPoint(40.0, -75.0)


@pytest.fixture(scope="module")
def campus_extract():
    return parse_extract((FIXTURES / "campus.osm").read_text())


@pytest.fixture(scope="module")
def campus_graph(campus_extract):
    return build_road_graph(campus_extract)


def test_config_validation():
    GameSpaceConfig()  # defaults valid
    with pytest.raises(ValueError):
        GameSpaceConfig(radius=0)
    with pytest.raises(ValueError):
        GameSpaceConfig(radius=10, cookie_spacing=15)
    with pytest.raises(ValueError):
        GameSpaceConfig(cookie_spacing=15, min_edge_cookie_margin=8)


def test_clip_keeps_everything_when_radius_large(campus_graph):
    clipped = clip_to_circle(campus_graph, CENTER, 1000.0)
    assert len(clipped.nodes) == len(campus_graph.nodes)
    assert len(clipped.edges) == len(campus_graph.edges)


def test_clip_drops_edge_with_far_endpoint(campus_graph):
    # Node 109 sits 240 m east; edges 5 (107-109) and 28 (109-901) must go.
    clipped = clip_to_circle(campus_graph, CENTER, 200.0)
    assert 5 not in clipped.edges
    assert 28 not in clipped.edges
    assert 109 not in clipped.nodes


def test_clip_campus_hand_counted(campus_graph):
    clipped = clip_to_circle(campus_graph, CENTER, 200.0)
    assert len(clipped.nodes) == 17
    assert len(clipped.edges) == 24
    for nid, pos in clipped.nodes.items():
        assert vincenty_inverse(CENTER, pos) <= 200.0


def test_clip_monotone_in_radius(campus_graph):
    small = clip_to_circle(campus_graph, CENTER, 150.0)
    large = clip_to_circle(campus_graph, CENTER, 200.0)
    assert set(small.edges) <= set(large.edges)


def test_clip_empty_raises(campus_graph):
    far_center = vincenty_direct(CENTER, 90.0, 5000.0)
    with pytest.raises(EmptyGameSpaceError):
        clip_to_circle(campus_graph, far_center, 200.0)


def test_clip_keeps_largest_component(campus_graph):
    # Radius 130 keeps the inner cross plus stubs; everything retained must
    # still be one connected component.
    clipped = clip_to_circle(campus_graph, CENTER, 130.0)
    seen = set()
    frontier = [min(clipped.nodes)]
    while frontier:
        nid = frontier.pop()
        if nid in seen:
            continue
        seen.add(nid)
        frontier.extend(nbr for nbr, _ in clipped.adjacency[nid])
    assert seen == set(clipped.nodes)


def test_cookie_offsets_spec_example_hundred_meters():
    offsets = cookie_offsets(100.0, GameSpaceConfig())
    assert len(offsets) == 7
    expected = [3.0, 18.666667, 34.333333, 50.0, 65.666667, 81.333333, 97.0]
    assert offsets == pytest.approx(expected, abs=1e-5)
    gaps = [b - a for a, b in zip(offsets, offsets[1:])]
    assert max(gaps) - min(gaps) < 1e-9


def test_cookie_offsets_short_edge_midpoint():
    assert cookie_offsets(10.0, GameSpaceConfig()) == [5.0]


@settings(max_examples=200, deadline=None)
@given(length=st.floats(min_value=0.5, max_value=500.0))
def test_cookie_offsets_properties(length):
    cfg = GameSpaceConfig()
    offsets = cookie_offsets(length, cfg)
    assert len(offsets) >= 1
    assert all(0.0 < o < length for o in offsets) or offsets == [length / 2.0]
    if len(offsets) > 1:
        gaps = [b - a for a, b in zip(offsets, offsets[1:])]
        assert max(gaps) - min(gaps) < 1e-9
        assert offsets[0] == pytest.approx(cfg.min_edge_cookie_margin)
        assert offsets[-1] == pytest.approx(length - cfg.min_edge_cookie_margin)


def test_place_cookies_positions_on_polyline(campus_graph):
    clipped = clip_to_circle(campus_graph, CENTER, 200.0)
    cookies = place_cookies(clipped, GameSpaceConfig())
    assert len(cookies) == 128
    for cookie in cookies:
        edge = clipped.edges[cookie.edge]
        assert 0 <= cookie.offset <= edge.length
        # Independent arc-length oracle: walk the geodesic bearing from the
        # segment start instead of planar interpolation.
        cum = cumulative_lengths(edge.geometry)
        i = 0
        while i < len(cum) - 2 and cum[i + 1] < cookie.offset:
            i += 1
        seg_start, seg_end = edge.geometry[i], edge.geometry[i + 1]
        want = vincenty_direct(
            seg_start, initial_bearing(seg_start, seg_end), cookie.offset - cum[i]
        )
        assert vincenty_inverse(cookie.position, want) < 0.05


def test_place_cookies_deterministic(campus_graph):
    clipped = clip_to_circle(campus_graph, CENTER, 200.0)
    a = place_cookies(clipped, GameSpaceConfig())
    b = place_cookies(clipped, GameSpaceConfig())
    assert a == b
    assert [c.id for c in a] == list(range(len(a)))


def test_build_game_space_fixture_counts(campus_extract):
    space = build_game_space(campus_extract, CENTER)
    assert len(space.graph.nodes) == 17
    assert len(space.graph.edges) == 24
    assert len(space.cookies) == 128
    assert len(space.pois) == 3
    for cookie in space.cookies:
        assert vincenty_inverse(CENTER, cookie.position) <= space.config.radius + 0.01
    for poi in space.pois:
        assert vincenty_inverse(CENTER, poi.position) <= space.config.radius


def test_build_game_space_empty_region(campus_extract):
    far_center = vincenty_direct(CENTER, 180.0, 10_000.0)
    with pytest.raises(EmptyGameSpaceError):
        build_game_space(campus_extract, far_center)


def test_build_game_space_degenerate_radius(campus_extract):
    cfg = GameSpaceConfig(radius=0.001, cookie_spacing=0.0005,
                          min_edge_cookie_margin=0.0001)
    with pytest.raises(EmptyGameSpaceError):
        build_game_space(campus_extract, CENTER, cfg)


def test_build_game_space_deterministic(campus_extract):
    a = build_game_space(campus_extract, CENTER)
    b = build_game_space(campus_extract, CENTER)
    assert a.cookies == b.cookies
    assert list(a.graph.nodes) == list(b.graph.nodes)
    assert a.pois == b.pois


def test_poi_outside_circle_dropped(campus_extract):
    # Shrink the radius so the hospital (127 m out) falls outside.
    cfg = GameSpaceConfig(radius=100.0)
    space = build_game_space(campus_extract, CENTER, cfg)
    assert {p.id for p in space.pois} == {951, 953}
