"""Graph construction, queries, peeling, cycle detection, text format."""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np
import pytest

import evenbisect as eb
from evenbisect.graph_core import (
    format_graph_text,
    parse_comment_meta,
    parse_graph_text,
)

from conftest import gnp


def test_from_edge_list_cycle4():
    g = eb.from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.n == 4 and g.m == 4
    assert g.adj[0] == (1, 3)


def test_from_edge_list_collapses_duplicates():
    g = eb.from_edge_list(2, [(0, 1), (1, 0)])
    assert g.m == 1


def test_from_edge_list_rejects_loops_and_range():
    with pytest.raises(ValueError):
        eb.from_edge_list(3, [(0, 0)])
    with pytest.raises(ValueError):
        eb.from_edge_list(3, [(0, 3)])
    with pytest.raises(ValueError):
        eb.from_edge_list(3, [(-1, 2)])


def test_degree_stats():
    petersen = eb.classic("petersen")
    stats = eb.degree_stats(petersen)
    assert (stats.min_degree, stats.max_degree, stats.avg_degree) == (3, 3, 3.0)
    star = eb.complete_bipartite(1, 3)
    stats = eb.degree_stats(star)
    assert (stats.min_degree, stats.max_degree, stats.avg_degree) == (1, 3, 1.5)
    empty = eb.from_edge_list(5, [])
    stats = eb.degree_stats(empty)
    assert (stats.min_degree, stats.max_degree, stats.avg_degree) == (0, 0, 0.0)
    assert sum(stats.degree_sequence) == 0


def test_handshake_on_random_graphs():
    rng = np.random.default_rng(7)
    for _ in range(20):
        g = gnp(int(rng.integers(2, 15)), 0.4, rng)
        assert sum(g.degrees()) == 2 * g.m


def test_induced_subgraph_path_from_cycle():
    c6 = eb.classic("cycle", 6)
    sub, mapping = eb.induced_subgraph(c6, {0, 1, 2})
    assert sub.n == 3 and sub.m == 2
    assert mapping == (0, 1, 2)


def test_induced_subgraph_color_class():
    k33 = eb.complete_bipartite(3, 3)
    sub, _ = eb.induced_subgraph(k33, [0, 1, 2])
    assert sub.n == 3 and sub.m == 0


def test_induced_subgraph_petersen_outer_cycle():
    petersen = eb.classic("petersen")
    sub, mapping = eb.induced_subgraph(petersen, range(5))
    assert mapping == (0, 1, 2, 3, 4)
    expected = eb.classic("cycle", 5)
    assert sub.edges == expected.edges


def test_induced_subgraph_rejects_out_of_range():
    with pytest.raises(ValueError):
        eb.induced_subgraph(eb.classic("cycle", 4), [0, 9])


def test_codegree():
    c4 = eb.classic("cycle", 4)
    assert eb.codegree(c4, 0, 2) == 2
    assert eb.codegree(c4, 0, 1) == 0
    k33 = eb.complete_bipartite(3, 3)
    assert eb.codegree(k33, 0, 1) == 3
    with pytest.raises(ValueError):
        eb.codegree(c4, 1, 1)


def test_codegree_symmetry_and_path2_identity():
    rng = np.random.default_rng(11)
    for _ in range(10):
        g = gnp(10, 0.35, rng)
        for u in range(g.n):
            total = sum(eb.codegree(g, u, v) for v in range(g.n) if v != u)
            assert total == sum(g.degree(w) - 1 for w in g.adj[u])
        assert eb.codegree(g, 2, 7) == eb.codegree(g, 7, 2)


def test_neighborhood_edge_count():
    k4 = eb.classic("complete", 4)
    assert all(eb.neighborhood_edge_count(k4, v) == 3 for v in range(4))
    petersen = eb.classic("petersen")
    assert all(eb.neighborhood_edge_count(petersen, v) == 0 for v in range(10))
    # wheel on 6 vertices: hub 0 joined to a 5-cycle rim
    rim = [(1 + i, 1 + (i + 1) % 5) for i in range(5)]
    wheel = eb.from_edge_list(6, [(0, i) for i in range(1, 6)] + rim)
    assert eb.neighborhood_edge_count(wheel, 0) == 5


def test_sparse_neighborhood_constant():
    assert eb.sparse_neighborhood_constant(eb.classic("petersen")) == 0.0
    k4 = eb.classic("complete", 4)
    assert eb.sparse_neighborhood_constant(k4) == pytest.approx(3 / 3**1.5)
    assert eb.sparse_neighborhood_constant(eb.complete_bipartite(1, 5)) == 0.0


def _naive_peel_degeneracy(g: eb.Graph) -> int:
    alive = set(range(g.n))
    deg = {v: g.degree(v) for v in alive}
    worst = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        worst = max(worst, deg[v])
        alive.remove(v)
        for u in g.adj[v]:
            if u in alive:
                deg[u] -= 1
    return worst


def test_degeneracy_small_cases():
    tree = eb.classic("path", 8)
    assert eb.degeneracy_order(tree).degeneracy == 1
    assert eb.degeneracy_order(eb.complete_bipartite(3, 3)).degeneracy == 3


def test_degeneracy_matches_naive_peeling():
    er3 = eb.polarity_graph(3)
    assert eb.degeneracy_order(er3).degeneracy == _naive_peel_degeneracy(er3)
    rng = np.random.default_rng(3)
    for _ in range(15):
        g = gnp(int(rng.integers(2, 16)), float(rng.uniform(0.1, 0.7)), rng)
        assert eb.degeneracy_order(g).degeneracy == _naive_peel_degeneracy(g)


def test_degeneracy_certificate_invariants():
    rng = np.random.default_rng(5)
    graphs = [eb.polarity_graph(3), eb.classic("petersen")]
    graphs += [gnp(12, 0.3, rng) for _ in range(10)]
    for g in graphs:
        peel = eb.degeneracy_order(g)
        assert sorted(peel.order) == list(range(g.n))
        assert sum(peel.back_degrees) == g.m
        assert max(peel.back_degrees, default=0) == peel.degeneracy
        position = {v: i for i, v in enumerate(peel.order)}
        for v in range(g.n):
            earlier = sum(1 for u in g.adj[v] if position[u] < position[v])
            assert earlier == peel.back_degrees[v] <= peel.degeneracy
        # every suffix of the order has a vertex of degree <= degeneracy
        for start in range(g.n):
            suffix = peel.order[start:]
            sub, _ = eb.induced_subgraph(g, suffix)
            if sub.n:
                assert sub.min_degree() <= peel.degeneracy


def test_cycle_detection_basics():
    c6 = eb.classic("cycle", 6)
    assert eb.contains_cycle_of_length(c6, 6)
    assert not eb.contains_cycle_of_length(c6, 4)
    petersen = eb.classic("petersen")
    assert not eb.contains_cycle_of_length(petersen, 4)
    assert eb.contains_cycle_of_length(petersen, 5)
    assert not eb.contains_cycle_of_length(eb.polarity_graph(7), 4)
    with pytest.raises(ValueError):
        eb.contains_cycle_of_length(c6, 2)


def test_find_cycle_returns_actual_cycle():
    g = eb.classic("heawood")
    cycle = eb.find_cycle_of_length(g, 6)
    assert cycle is not None and len(cycle) == 6
    assert len(set(cycle)) == 6
    closed = list(cycle) + [cycle[0]]
    for a, b in zip(closed, closed[1:]):
        assert g.has_edge(a, b)


def _naive_has_cycle(g: eb.Graph, length: int) -> bool:
    for subset in combinations(range(g.n), length):
        for perm in permutations(subset[1:]):
            walk = (subset[0],) + perm
            if all(g.has_edge(walk[i], walk[(i + 1) % length]) for i in range(length)):
                return True
    return False


def test_cycle_detection_against_exhaustive_enumeration():
    rng = np.random.default_rng(17)
    for _ in range(25):
        n = int(rng.integers(3, 9))
        g = gnp(n, float(rng.uniform(0.2, 0.8)), rng)
        for length in range(3, n + 1):
            assert eb.contains_cycle_of_length(g, length) == _naive_has_cycle(g, length)


def test_cycle_detection_exhaustive_on_all_tiny_graphs():
    # every labeled graph on up to 5 vertices, every cycle length
    for n in (3, 4, 5):
        all_pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(all_pairs)):
            g = eb.from_edge_list(n, [p for i, p in enumerate(all_pairs) if mask >> i & 1])
            for length in range(3, n + 1):
                assert eb.contains_cycle_of_length(g, length) == _naive_has_cycle(g, length)


def test_degeneracy_exhaustive_on_all_tiny_graphs():
    for n in (2, 3, 4):
        all_pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(all_pairs)):
            g = eb.from_edge_list(n, [p for i, p in enumerate(all_pairs) if mask >> i & 1])
            peel = eb.degeneracy_order(g)
            assert peel.degeneracy == _naive_peel_degeneracy(g)
            assert sum(peel.back_degrees) == g.m


def test_text_format_roundtrip(tmp_path):
    g = eb.polarity_graph(3)
    path = tmp_path / "er3.txt"
    eb.save_graph(g, path, comments=["family=polarity q=3"])
    loaded = eb.load_graph(path)
    assert loaded.n == g.n and loaded.edges == g.edges
    meta = parse_comment_meta(path.read_text())
    assert meta == {"family": "polarity", "q": "3"}


def test_text_format_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_graph_text("")
    with pytest.raises(ValueError):
        parse_graph_text("2 2\n0 1\n1 0\n")  # duplicate edge
    with pytest.raises(ValueError):
        parse_graph_text("2 2\n0 1\n")  # count mismatch
    with pytest.raises(ValueError):
        parse_graph_text("2\n")  # malformed header
    g = parse_graph_text("# comment\n3 1\n0 2\n")
    assert g.m == 1 and g.has_edge(0, 2)


def test_format_text_shape():
    g = eb.from_edge_list(3, [(0, 1)])
    assert format_graph_text(g) == "3 1\n0 1\n"
