"""Exhaustive shortest-path oracle: enumerate every simple path.

Only usable on tiny graphs (<= ~10 nodes); serves as the independent check
for the Dijkstra implementation and for random-graph generation in tests.
"""

import random

from pacmap.geodesy import GeoPoint, vincenty_direct
from pacmap.osm_ingest import Edge, RoadGraph


def all_simple_path_lengths(graph, start, goal):
    """Yield total lengths of every simple start->goal path."""
    results = []

    def walk(node, visited, acc):
        if node == goal:
            results.append(acc)
            return
        for nbr, eid in graph.adjacency[node]:
            if nbr not in visited:
                walk(nbr, visited | {nbr}, acc + graph.edges[eid].length)

    walk(start, {start}, 0.0)
    return results


def brute_force_shortest(graph, start, goal):
    """Minimum simple-path length, or None when unreachable."""
    lengths = all_simple_path_lengths(graph, start, goal)
    return min(lengths) if lengths else None


def random_connected_graph(rng: random.Random, max_nodes: int = 10) -> RoadGraph:
    """Random connected graph with random positive edge lengths.

    Nodes are scattered near a fixed origin; edge lengths are synthetic
    (decoupled from the geometry) because the oracle only compares sums.
    """
    n = rng.randint(2, max_nodes)
    origin = GeoPoint(40.0, -75.0)
    nodes = {
        i: vincenty_direct(origin, rng.uniform(0, 360), rng.uniform(1, 400))
        for i in range(n)
    }
    edges = {}
    eid = 0
    # Random spanning tree keeps it connected.
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a = order[i]
        b = order[rng.randrange(i)]
        edges[eid] = Edge(eid, a, b, rng.uniform(0.5, 100.0),
                          (nodes[a], nodes[b]))
        eid += 1
    # Extra random edges.
    for _ in range(rng.randint(0, n)):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b:
            continue
        edges[eid] = Edge(eid, a, b, rng.uniform(0.5, 100.0),
                          (nodes[a], nodes[b]))
        eid += 1
    return RoadGraph.build(nodes, edges)
