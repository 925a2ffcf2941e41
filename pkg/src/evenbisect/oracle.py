"""Exact ground truth by exhaustive enumeration, plus the hyperplane
probability check by direct simulation.

The enumerators refuse anything above 24 vertices rather than silently
sampling: ground truth must never be approximate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph_core import Graph

ORACLE_MAX_N = 24


class SizeGuardError(ValueError):
    """Raised when an exact enumeration is requested above the size guard."""


@dataclass(frozen=True)
class ExactResult:
    optimum: int
    side: tuple[int, ...]
    enumerated: int

    def to_json(self) -> str:
        return json.dumps(
            {"optimum": self.optimum, "side": list(self.side), "enumerated": self.enumerated}
        )


def _adj_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def exact_max_bisection(g: Graph) -> ExactResult:
    """True optimum over every floor(n/2)-subset taken as side A.

    The witness is the lexicographically smallest optimal label vector
    (label 0 = side A), independent of any evaluation schedule.
    """
    n = g.n
    if n > ORACLE_MAX_N:
        raise SizeGuardError(f"exact bisection refuses n={n} > {ORACLE_MAX_N}")
    masks = _adj_masks(g)
    full = (1 << n) - 1
    half = n // 2
    best = -1
    best_amask = 0
    count = 0
    for combo in combinations(range(n), half):
        count += 1
        amask = 0
        for v in combo:
            amask |= 1 << v
        bmask = full ^ amask
        cut = 0
        for v in combo:
            cut += (masks[v] & bmask).bit_count()
        if cut > best:  # strict: keeps the first, hence lex-smallest, witness
            best = cut
            best_amask = amask
    side = tuple(0 if best_amask >> v & 1 else 1 for v in range(n))
    return ExactResult(best, side, count)


def exact_max_cut(g: Graph) -> ExactResult:
    """True optimum over all 2^{n-1} cuts with vertex 0 pinned to side A."""
    n = g.n
    if n > ORACLE_MAX_N:
        raise SizeGuardError(f"exact cut refuses n={n} > {ORACLE_MAX_N}")
    if n == 0:
        return ExactResult(0, (), 1)
    masks = _adj_masks(g)
    best = -1
    best_side: tuple[int, ...] = ()
    count = 0
    # Bit (n-1-v) of the counter is vertex v's label, so counter order is
    # lexicographic order of the label vectors.
    for counter in range(1 << (n - 1)):
        count += 1
        bmask = 0
        for v in range(1, n):
            if counter >> (n - 1 - v) & 1:
                bmask |= 1 << v
        cut = 0
        for v in range(n):
            if not (bmask >> v & 1):
                cut += (masks[v] & bmask).bit_count()
        if cut > best:
            best = cut
            best_side = tuple(bmask >> v & 1 for v in range(n))
    return ExactResult(best, best_side, count)


def same_side_probability_mc(rho: float, trials: int, seed) -> float:
    """Frequency with which two fixed unit vectors with inner product rho
    both land on the nonnegative side of a random hyperplane.

    The limit is 1/4 + arcsin(rho)/(2*pi).  Planar vectors suffice since
    only their span matters.
    """
    if not -1.0 <= rho <= 1.0:
        raise ValueError(f"inner product must lie in [-1, 1], got {rho}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    u = np.array([1.0, 0.0])
    v = np.array([rho, math.sqrt(max(0.0, 1.0 - rho * rho))])
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = trials
    chunk = 1 << 20
    while remaining:
        size = min(chunk, remaining)
        w = rng.standard_normal((size, 2))
        both = ((w @ u) >= 0) & ((w @ v) >= 0)
        hits += int(np.count_nonzero(both))
        remaining -= size
    return hits / trials
