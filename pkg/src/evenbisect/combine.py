"""Baseline balanced bisection with a guaranteed m/2 floor, and the lift
that extends a good bisection of an induced subgraph to the whole graph.

The baseline pairs vertices (high degree first), drops each pair one vertex
per side in whichever orientation cuts more of the edges seen so far, then
polishes with 1-swap local search.  Every edge inside a pair is always cut
and each edge to earlier pairs is cut in exactly one orientation, so the
greedy phase alone lands at or above m/2; local search only improves.

The lift bisects the complement with the baseline, glues the two bisections
in the orientation that keeps at least half of the crossing edges, and, when
the union is off-balance by two, repairs it by moving one vertex of degree
at most 2*sqrt(m).  The repaired cut is at least m/2 + x - 2*sqrt(m) where x
is the subgraph bisection's surplus over e(S)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .graph_core import Graph, induced_subgraph
from .rounding import Bisection, child_seed

LOCAL_SEARCH_SWAP_FACTOR = 10  # hard cap of 10*n accepted swaps


class ContractBreachError(RuntimeError):
    """The repair step found no vertex of degree <= 2*sqrt(m) in the larger part."""


def balanced_local_bisection(g: Graph, seed=0) -> Bisection:
    """Deterministic greedy pairing plus seeded 1-swap local search.

    Guarantees cut >= m/2 and exact balance on every input.
    """
    n = g.n
    side = [0] * n
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    placed = [False] * n

    def cross_if(v: int, label: int) -> int:
        return sum(1 for u in g.adj[v] if placed[u] and side[u] != label)

    i = 0
    while i + 1 < n:
        a, b = order[i], order[i + 1]
        gain_ab = cross_if(a, 0) + cross_if(b, 1)
        gain_ba = cross_if(a, 1) + cross_if(b, 0)
        if gain_ba > gain_ab:
            side[a], side[b] = 1, 0
        else:
            side[a], side[b] = 0, 1
        placed[a] = placed[b] = True
        i += 2
    if i < n:  # odd leftover, placed last on its better side
        v = order[i]
        side[v] = 0 if cross_if(v, 0) >= cross_if(v, 1) else 1
        placed[v] = True

    _local_search(g, side, seed)
    return Bisection.from_side(g, side)


def _local_search(g: Graph, side: list[int], seed) -> None:
    """First-improvement 1-swap polish; scan order reshuffled per sweep."""
    n = g.n
    if n < 2 or g.m == 0:
        return
    rng = np.random.default_rng(child_seed(seed, 0))
    same = [0] * n
    cross = [0] * n
    for u, v in g.edges:
        if side[u] == side[v]:
            same[u] += 1
            same[v] += 1
        else:
            cross[u] += 1
            cross[v] += 1

    def apply_swap(u: int, w: int) -> None:
        for x in (u, w):
            for y in g.adj[x]:
                if y == u or y == w:
                    continue
                if side[y] == side[x]:
                    same[y] -= 1
                    cross[y] += 1
                else:
                    same[y] += 1
                    cross[y] -= 1
        side[u], side[w] = side[w], side[u]
        for x in (u, w):
            s = c = 0
            for y in g.adj[x]:
                if side[y] == side[x]:
                    s += 1
                else:
                    c += 1
            same[x], cross[x] = s, c

    budget = LOCAL_SEARCH_SWAP_FACTOR * n
    swaps = 0
    improved = True
    while improved and swaps < budget:
        improved = False
        part_a = [v for v in range(n) if side[v] == 0]
        part_b = [v for v in range(n) if side[v] == 1]
        rng.shuffle(part_a)
        rng.shuffle(part_b)
        for u in part_a:
            if side[u] != 0:
                continue
            gain_u = same[u] - cross[u]
            for w in part_b:
                if side[w] != 1:
                    continue
                delta = gain_u + same[w] - cross[w] + 2 * (w in g.neighbor_set(u))
                if delta > 0:
                    apply_swap(u, w)
                    swaps += 1
                    improved = True
                    break  # u switched sides; move on
            if swaps >= budget:
                return


@dataclass(frozen=True)
class CombineResult:
    bisection: Bisection
    surplus_in: float
    surplus_out: float
    repair_moved: int
    repair_degree: int | None
    cross_kept: int
    cross_total: int
    breach: bool


def combine(g: Graph, subset, sub_bisection: Bisection, seed=0, strict: bool = True) -> CombineResult:
    """Lift a bisection of g[S] to a bisection of g.

    ``sub_bisection`` must label the induced subgraph of ``subset`` under the
    canonical renumbering (members sorted ascending), exactly as produced by
    ``induced_subgraph``.  With strict=True a missing low-degree repair
    vertex raises ContractBreachError; drivers pass strict=False to keep a
    valid bisection (the bound just loses its certificate).
    """
    members = sorted(set(subset))
    for v in members:
        if not (0 <= v < g.n):
            raise ValueError(f"subset vertex {v} out of range for n={g.n}")
    sub, _ = induced_subgraph(g, members)
    sub_bisection.validate(sub)

    member_set = set(members)
    rest = [v for v in range(g.n) if v not in member_set]
    side = [0] * g.n
    for new_id, orig in enumerate(members):
        side[orig] = sub_bisection.side[new_id]
    surplus_in = sub_bisection.cut - sub.m / 2.0

    if not rest:
        bis = Bisection.from_side(g, side)
        return CombineResult(bis, surplus_in, bis.cut - g.m / 2.0, 0, None, 0, 0, False)

    rest_graph, rest_map = induced_subgraph(g, rest)
    rest_bis = balanced_local_bisection(rest_graph, child_seed(seed, 1))
    rest_side = {orig: rest_bis.side[new_id] for new_id, orig in enumerate(rest_map)}

    # Orientation: keep whichever gluing cuts at least half the S-T edges.
    cross_total = 0
    cross_as_is = 0
    for u, v in g.edges:
        u_in = u in member_set
        if u_in == (v in member_set):
            continue
        s_label = side[u] if u_in else side[v]
        t_label = rest_side[v] if u_in else rest_side[u]
        cross_total += 1
        if s_label != t_label:
            cross_as_is += 1
    flip = 1 if (cross_total - cross_as_is) > cross_as_is else 0
    cross_kept = max(cross_as_is, cross_total - cross_as_is)
    for orig, label in rest_side.items():
        side[orig] = label ^ flip

    # Repair: sizes can be off by two when both parts had odd order.
    size_a = side.count(0)
    size_b = g.n - size_a
    repair_moved = 0
    repair_degree = None
    breach = False
    if abs(size_a - size_b) == 2:
        larger = 0 if size_a > size_b else 1
        mover = min(
            (v for v in range(g.n) if side[v] == larger),
            key=lambda v: (g.degree(v), v),
        )
        repair_degree = g.degree(mover)
        if repair_degree > 2 * sqrt(g.m):
            breach = True
            if strict:
                raise ContractBreachError(
                    f"larger part has no vertex of degree <= {2 * sqrt(g.m):.4g}"
                )
        side[mover] = 1 - larger
        repair_moved = 1

    bis = Bisection.from_side(g, side)
    return CombineResult(
        bisection=bis,
        surplus_in=surplus_in,
        surplus_out=bis.cut - g.m / 2.0,
        repair_moved=repair_moved,
        repair_degree=repair_degree,
        cross_kept=cross_kept,
        cross_total=cross_total,
        breach=breach,
    )
