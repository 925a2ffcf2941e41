"""Extremal and control instance constructions.

Families:
  * polarity graphs over prime projective planes (4-cycle-free, near the
    Kovari-Sos-Turan edge maximum),
  * point/line incidence graphs of prime projective planes (bipartite,
    girth 6),
  * complete bipartite graphs (tightness witnesses for the minimum-degree
    condition),
  * greedy random graphs certified free of a chosen even cycle length,
  * classics (Petersen, Heawood, cycles, paths, cliques, the 30-vertex
    girth-8 cage).

Prime fields only; q <= 31 covers every desk-scale need without polynomial
field arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .graph_core import Graph, from_edge_list

MAX_PLANE_ORDER = 31
MAX_RANDOM_N = 200
RANDOM_FREE_KS = (2, 3, 4, 5)

CLASSIC_NAMES = ("petersen", "heawood", "cycle", "path", "complete", "tutte_coxeter")


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def _check_plane_order(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"plane order must be prime, got {q}")
    if q > MAX_PLANE_ORDER:
        raise ValueError(f"plane order {q} exceeds guard {MAX_PLANE_ORDER}")


def projective_points(q: int) -> list[tuple[int, int, int]]:
    """Canonical representatives of the q^2+q+1 projective points over F_q."""
    pts = [(1, b, c) for b in range(q) for c in range(q)]
    pts += [(0, 1, c) for c in range(q)]
    pts.append((0, 0, 1))
    return pts


def polarity_graph(q: int) -> Graph:
    """Join two distinct projective points when their dot product vanishes.

    n = q^2+q+1, m = q(q+1)^2/2; exactly q+1 self-orthogonal points have
    degree q and the remaining q^2 have degree q+1.  Contains no 4-cycle:
    two points share at most one common neighbor.
    """
    _check_plane_order(q)
    pts = projective_points(q)
    n = len(pts)
    pairs = []
    for i in range(n):
        xi, yi, zi = pts[i]
        for j in range(i + 1, n):
            xj, yj, zj = pts[j]
            if (xi * xj + yi * yj + zi * zj) % q == 0:
                pairs.append((i, j))
    return from_edge_list(n, pairs)


def incidence_graph_plane(q: int) -> Graph:
    """Point/line incidence graph of the projective plane of order q.

    Points get ids 0..N-1 and lines N..2N-1 with N = q^2+q+1; the result is
    (q+1)-regular, bipartite, and has girth exactly 6.  q=2 yields the
    Heawood graph.
    """
    _check_plane_order(q)
    pts = projective_points(q)
    n_pts = len(pts)
    pairs = []
    for i, (xi, yi, zi) in enumerate(pts):
        for j, (xj, yj, zj) in enumerate(pts):
            if (xi * xj + yi * yj + zi * zj) % q == 0:
                pairs.append((i, n_pts + j))
    return from_edge_list(2 * n_pts, pairs)


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError(f"both sides must be nonempty, got ({a},{b})")
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _has_path_of_length(adj: list[set[int]], start: int, goal: int, steps: int) -> bool:
    """Simple path with exactly ``steps`` edges from start to goal, avoiding goal inside."""

    def walk(v: int, remaining: int, used: set[int]) -> bool:
        if remaining == 1:
            return goal in adj[v]
        for u in adj[v]:
            if u == goal or u in used:
                continue
            used.add(u)
            if walk(u, remaining - 1, used):
                used.remove(u)
                return True
            used.remove(u)
        return False

    return walk(start, steps, {start})


def random_c2k_free(n: int, target_m: int, k: int, seed: int) -> Graph:
    """Greedy randomized graph with no cycle on exactly 2k vertices.

    Candidate pairs are shuffled once; an edge goes in only if it closes no
    2k-cycle, which reduces to a path of 2k-1 edges between its endpoints.
    Stops at target_m edges or when every pair has been tried, whichever
    comes first, so the output may be smaller than asked.  Freeness is
    guaranteed by construction.
    """
    if n < 0 or n > MAX_RANDOM_N:
        raise ValueError(f"n must be in [0, {MAX_RANDOM_N}], got {n}")
    if k not in RANDOM_FREE_KS:
        raise ValueError(f"k must be one of {RANDOM_FREE_KS}, got {k}")
    if target_m < 0:
        raise ValueError(f"target_m must be nonnegative, got {target_m}")
    rng = np.random.default_rng(seed)
    candidates = list(combinations(range(n), 2))
    rng.shuffle(candidates)
    adj: list[set[int]] = [set() for _ in range(n)]
    pairs: list[tuple[int, int]] = []
    for u, v in candidates:
        if len(pairs) >= target_m:
            break
        if not _has_path_of_length(adj, u, v, 2 * k - 1):
            adj[u].add(v)
            adj[v].add(u)
            pairs.append((u, v))
    return from_edge_list(n, pairs)


def _petersen() -> Graph:
    # Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -> i+5.
    pairs = [(i, (i + 1) % 5) for i in range(5)]
    pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    pairs += [(i, i + 5) for i in range(5)]
    return from_edge_list(10, pairs)


def _perfect_matchings(items: tuple[int, ...]) -> list[frozenset[frozenset[int]]]:
    if not items:
        return [frozenset()]
    first, rest = items[0], items[1:]
    out = []
    for i, other in enumerate(rest):
        pair = frozenset((first, other))
        remaining = rest[:i] + rest[i + 1 :]
        for sub in _perfect_matchings(remaining):
            out.append(sub | {pair})
    return out


def _tutte_coxeter() -> Graph:
    """Incidence graph of the 2-subsets vs. perfect matchings of a 6-set.

    30 vertices, 3-regular, girth 8: the unique cubic cage with no cycle
    shorter than 8, so in particular 4-cycle- and 6-cycle-free.
    """
    duads = list(combinations(range(6), 2))
    duad_id = {frozenset(d): i for i, d in enumerate(duads)}
    matchings = _perfect_matchings(tuple(range(6)))
    pairs = []
    for j, pm in enumerate(sorted(matchings, key=lambda s: sorted(map(sorted, s)))):
        for pair in pm:
            pairs.append((duad_id[pair], 15 + j))
    return from_edge_list(30, pairs)


def classic(name: str, size: int | None = None) -> Graph:
    """Named standard graphs; ``size`` parametrizes cycle/path/complete."""
    base = name.strip().lower()
    if "(" in base and base.endswith(")"):
        base, _, inner = base.partition("(")
        size = int(inner[:-1])
    if base == "petersen":
        return _petersen()
    if base == "heawood":
        return incidence_graph_plane(2)
    if base == "tutte_coxeter":
        return _tutte_coxeter()
    if base in ("cycle", "path", "complete"):
        if size is None or size < 1:
            raise ValueError(f"{base} needs a positive size")
        if base == "cycle":
            if size < 3:
                raise ValueError("cycle needs at least 3 vertices")
            return from_edge_list(size, [(i, (i + 1) % size) for i in range(size)])
        if base == "path":
            return from_edge_list(size, [(i, i + 1) for i in range(size - 1)])
        return from_edge_list(size, list(combinations(range(size), 2)))
    raise ValueError(f"unknown classic graph {name!r}")


@dataclass
class GeneratorSpec:
    """Parsed request for one generated instance."""

    family: str  # polarity | incidence_plane | complete_bipartite | random_c2k_free | classic
    q: int | None = None
    a: int | None = None
    b: int | None = None
    n: int | None = None
    target_m: int | None = None
    k: int | None = None
    seed: int | None = None
    name: str | None = None
    size: int | None = None
    extra: dict = field(default_factory=dict)

    def build(self) -> Graph:
        if self.family == "polarity":
            if self.q is None:
                raise ValueError("polarity needs q")
            return polarity_graph(self.q)
        if self.family == "incidence_plane":
            if self.q is None:
                raise ValueError("incidence_plane needs q")
            return incidence_graph_plane(self.q)
        if self.family == "complete_bipartite":
            if self.a is None or self.b is None:
                raise ValueError("complete_bipartite needs a and b")
            return complete_bipartite(self.a, self.b)
        if self.family == "random_c2k_free":
            if None in (self.n, self.target_m, self.k, self.seed):
                raise ValueError("random_c2k_free needs n, target_m, k, seed")
            return random_c2k_free(self.n, self.target_m, self.k, self.seed)
        if self.family == "classic":
            if self.name is None:
                raise ValueError("classic needs a name")
            return classic(self.name, self.size)
        raise ValueError(f"unknown family {self.family!r}")

    def describe(self) -> str:
        parts = [f"family={self.family}"]
        for key in ("q", "a", "b", "n", "target_m", "k", "seed", "name", "size"):
            value = getattr(self, key)
            if value is not None:
                parts.append(f"{key}={value}")
        return " ".join(parts)

    def default_stem(self) -> str:
        if self.family == "polarity":
            return f"polarity_q{self.q}"
        if self.family == "incidence_plane":
            return f"incidence_q{self.q}"
        if self.family == "complete_bipartite":
            return f"kbipartite_{self.a}_{self.b}"
        if self.family == "random_c2k_free":
            return f"randfree_n{self.n}_m{self.target_m}_k{self.k}_s{self.seed}"
        stem = self.name or "classic"
        return f"{stem}{self.size}" if self.size else stem
