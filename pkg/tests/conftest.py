"""Shared corpus fixtures and small test-side helpers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
import pytest

import evenbisect as eb


def gnp(n: int, p: float, rng: np.random.Generator) -> eb.Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return eb.from_edge_list(n, pairs)


def is_connected(g: eb.Graph) -> bool:
    if g.n <= 1:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == g.n


@dataclass(frozen=True)
class CorpusEntry:
    graph_id: str
    family: str
    graph: eb.Graph
    free_ks: tuple[int, ...]  # k values with no cycle on 2k vertices


def _disjoint_union(graphs: list[eb.Graph]) -> eb.Graph:
    pairs = []
    offset = 0
    for g in graphs:
        pairs.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return eb.from_edge_list(offset, pairs)


@pytest.fixture(scope="session")
def random_c4_free_50() -> list[CorpusEntry]:
    entries = []
    for i in range(50):
        n = 8 + (i * 7) % 33
        g = eb.random_c2k_free(n, int(1.5 * n), 2, seed=1000 + i)
        entries.append(CorpusEntry(f"randfree2_{i:02d}", "random_c2k_free", g, (2,)))
    return entries


@pytest.fixture(scope="session")
def corpus(random_c4_free_50) -> list[CorpusEntry]:
    """Named instances plus the 50-graph random 4-cycle-free batch.

    free_ks is exact: verified by the detector for every named entry in
    test_generators, and guaranteed by construction for the random batch.
    """
    entries = [
        CorpusEntry("er2", "polarity", eb.polarity_graph(2), (2,)),
        CorpusEntry("er3", "polarity", eb.polarity_graph(3), (2,)),
        CorpusEntry("er5", "polarity", eb.polarity_graph(5), (2,)),
        CorpusEntry("er7", "polarity", eb.polarity_graph(7), (2,)),
        CorpusEntry("er11", "polarity", eb.polarity_graph(11), (2,)),
        CorpusEntry("heawood", "classic", eb.classic("heawood"), (2,)),
        CorpusEntry("petersen", "classic", eb.classic("petersen"), (2,)),
        CorpusEntry("tutte_coxeter", "classic", eb.classic("tutte_coxeter"), (2, 3)),
        CorpusEntry("cycle5", "classic", eb.classic("cycle", 5), (2, 3, 4, 5)),
        CorpusEntry("cycle7", "classic", eb.classic("cycle", 7), (2, 3, 4, 5)),
        CorpusEntry("cycle9", "classic", eb.classic("cycle", 9), (2, 3, 4, 5)),
        CorpusEntry("cycle10", "classic", eb.classic("cycle", 10), (2, 3, 4)),
        CorpusEntry("cycle12", "classic", eb.classic("cycle", 12), (2, 3, 4, 5)),
        CorpusEntry("path7", "classic", eb.classic("path", 7), (2, 3, 4, 5)),
        CorpusEntry("star9", "complete_bipartite", eb.complete_bipartite(1, 9), (2, 3, 4, 5)),
        CorpusEntry("k28", "complete_bipartite", eb.complete_bipartite(2, 8), (3, 4, 5)),
        CorpusEntry("k33", "complete_bipartite", eb.complete_bipartite(3, 3), ()),
        CorpusEntry("k4", "classic", eb.classic("complete", 4), (3, 4, 5)),
        CorpusEntry("k5", "classic", eb.classic("complete", 5), (3, 4, 5)),
        CorpusEntry("five_k4", "classic",
                    _disjoint_union([eb.classic("complete", 4)] * 5), (3, 4, 5)),
    ]
    for i in range(6):
        g = eb.random_c2k_free(12 + 2 * i, 2 * (12 + 2 * i), 3, seed=2000 + i)
        entries.append(CorpusEntry(f"randfree3_{i}", "random_c2k_free", g, (3,)))
    entries.extend(random_c4_free_50)
    return entries
