"""Immutable simple graphs with the queries the bisection machinery needs.

Vertices are dense integer ids 0..n-1.  Everything here is a pure query on a
frozen adjacency structure: degrees, codegrees, induced subgraphs, degeneracy
peeling and exact fixed-length cycle detection, plus a small line-oriented
text format for graph files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Immutable after construction.  Edges are deduplicated; self-loops and
    out-of-range endpoints are rejected.  Neighbor lists are sorted tuples.
    Safe to share across threads: all operations are reads.
    """

    __slots__ = ("n", "m", "adj", "edges", "_nbr_sets")

    def __init__(self, n: int, pairs: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        edge_set: set[tuple[int, int]] = set()
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            edge_set.add((u, v) if u < v else (v, u))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_set:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.m = len(edge_set)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self._nbr_sets: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeStats:
    min_degree: int
    max_degree: int
    avg_degree: float
    degree_sequence: tuple[int, ...]


@dataclass(frozen=True)
class DegeneracyOrder:
    """A peeling certificate.

    ``order`` lists the vertices so that every vertex has at most
    ``degeneracy`` neighbors appearing earlier; ``back_degrees[v]`` counts
    those earlier neighbors of v.  It is the reverse of the min-degree
    removal order, so back_degrees[v] equals v's degree at removal time.
    """

    order: tuple[int, ...]
    degeneracy: int
    back_degrees: tuple[int, ...]


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph, collapsing duplicate edges."""
    return Graph(n, pairs)


def degree_stats(g: Graph) -> DegreeStats:
    seq = g.degrees()
    if g.n == 0:
        return DegreeStats(0, 0, 0.0, ())
    return DegreeStats(min(seq), max(seq), 2.0 * g.m / g.n, seq)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``vertices``, renumbered 0..|S|-1.

    Returns the subgraph and the id map: position i of the map holds the
    original id of new vertex i.  Members are sorted ascending, so the
    renumbering is deterministic for a given vertex set.
    """
    members = sorted(set(vertices))
    for v in members:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    new_id = {v: i for i, v in enumerate(members)}
    member_set = new_id.keys()
    pairs = []
    for v in members:
        for u in g.adj[v]:
            if u > v and u in member_set:
                pairs.append((new_id[v], new_id[u]))
    return Graph(len(members), pairs), tuple(members)


def codegree(g: Graph, u: int, v: int) -> int:
    """Number of common neighbors of two distinct vertices."""
    if u == v:
        raise ValueError("codegree requires two distinct vertices")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"vertex out of range: ({u},{v}) for n={g.n}")
    a, b = g._nbr_sets[u], g._nbr_sets[v]
    if len(a) > len(b):
        a, b = b, a
    return sum(1 for w in a if w in b)


def neighborhood_edge_count(g: Graph, v: int) -> int:
    """Number of edges with both endpoints in N(v)."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    nbrs = g.adj[v]
    nbr_set = g._nbr_sets[v]
    count = 0
    for a in nbrs:
        for b in g.adj[a]:
            if b > a and b in nbr_set:
                count += 1
    return count


def sparse_neighborhood_constant(g: Graph) -> float:
    """Smallest C with e(G[N(v)]) <= C * d(v)^{3/2} for every vertex.

    Vertices of degree <= 1 contribute 0: their neighborhoods are edgeless
    and the ratio is degenerate there.
    """
    best = 0.0
    for v in range(g.n):
        d = g.degree(v)
        if d <= 1:
            continue
        e_nbhd = neighborhood_edge_count(g, v)
        if e_nbhd:
            best = max(best, e_nbhd / d**1.5)
    return best


def degeneracy_order(g: Graph) -> DegeneracyOrder:
    """Min-degree peeling via a lazy bucket queue, reversed on output."""
    n = g.n
    if n == 0:
        return DegeneracyOrder((), 0, ())
    deg = [len(a) for a in g.adj]
    max_deg = max(deg)
    buckets: list[list[int]] = [[] for _ in range(max_deg + 1)]
    for v in range(n):
        buckets[deg[v]].append(v)
    removed = [False] * n
    back = [0] * n
    removal: list[int] = []
    degeneracy = 0
    cur = 0
    while len(removal) < n:
        while not buckets[cur]:
            cur += 1
        v = buckets[cur].pop()
        if removed[v] or deg[v] != cur:
            continue  # stale bucket entry
        removed[v] = True
        back[v] = cur
        degeneracy = max(degeneracy, cur)
        removal.append(v)
        for u in g.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                buckets[deg[u]].append(u)
                if deg[u] < cur:
                    cur = deg[u]
    return DegeneracyOrder(tuple(reversed(removal)), degeneracy, tuple(back))


def find_cycle_of_length(g: Graph, length: int) -> tuple[int, ...] | None:
    """One simple cycle on exactly ``length`` vertices, or None.

    Exact DFS path enumeration.  Each cycle is visited once: rooted at its
    minimum-rank vertex and walked toward the smaller-rank neighbor first,
    where rank orders vertices by (degree, id).  Intended for length <= 12
    at desk scale.
    """
    if length < 3:
        raise ValueError(f"cycle length must be at least 3, got {length}")
    n = g.n
    if length > n:
        return None
    order = sorted(range(n), key=lambda v: (g.degree(v), v))
    rank = [0] * n
    for i, v in enumerate(order):
        rank[v] = i
    nbr_sets = g._nbr_sets
    adj = g.adj

    def extend(root: int, path: list[int], on_path: set[int]) -> tuple[int, ...] | None:
        last = path[-1]
        depth = len(path)
        closing = depth == length - 1
        for u in adj[last]:
            if rank[u] <= rank[root] or u in on_path:
                continue
            if closing:
                if root in nbr_sets[u] and rank[path[1]] < rank[u]:
                    return tuple(path) + (u,)
                continue
            path.append(u)
            on_path.add(u)
            found = extend(root, path, on_path)
            if found is not None:
                return found
            path.pop()
            on_path.remove(u)
        return None

    for root in order:
        if g.degree(root) < 2:
            continue
        found = extend(root, [root], {root})
        if found is not None:
            return found
    return None


def contains_cycle_of_length(g: Graph, length: int) -> bool:
    """True iff the graph has a simple cycle on exactly ``length`` vertices."""
    return find_cycle_of_length(g, length) is not None


# --- text format -----------------------------------------------------------
#
# Line 1: "n m"; then m lines "u v" with 0-indexed endpoints.  Lines starting
# with '#' are comments and may carry "key=value" metadata.  Duplicate edges
# are rejected on read (the in-memory constructor collapses them instead).


def format_graph_text(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> Graph:
    rows = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
    if not rows:
        raise ValueError("graph text is empty")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError(f"header must be 'n m', got {rows[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise ValueError(f"header declares {m} edges, found {len(rows) - 1}")
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError(f"duplicate edge ({u},{v})")
        seen.add(key)
        pairs.append((u, v))
    return Graph(n, pairs)


def parse_comment_meta(text: str) -> dict[str, str]:
    """key=value tokens found on comment lines."""
    meta: dict[str, str] = {}
    for raw in text.splitlines():
        ln = raw.strip()
        if not ln.startswith("#"):
            continue
        for token in ln[1:].split():
            if "=" in token:
                key, _, value = token.partition("=")
                meta[key] = value
    return meta


def save_graph(g: Graph, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_graph_text(g, comments))


def load_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph_text(fh.read())


def load_graph_with_meta(path) -> tuple[Graph, dict[str, str]]:
    with open(path) as fh:
        text = fh.read()
    return parse_graph_text(text), parse_comment_meta(text)
