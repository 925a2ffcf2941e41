"""Implicit degree-normalized embedding and random-hyperplane bisection.

Each vertex v carries an implicit vector with a 1 in its own coordinate and
-gamma/sqrt(d(v)) in each neighbor's coordinate, so its squared norm is
1 + gamma^2 and pairwise inner products are closed forms in degrees,
adjacency and codegrees.  The vectors are never materialized: projecting a
random Gaussian direction onto them costs one pass over the edges, and the
sign pattern yields a random cut whose expected size beats m/2 whenever
neighborhoods are sparse.  Moving the fewest lowest-degree vertices from the
larger side restores exact balance.

The module also evaluates the certified expectation bound for a given
embedding (``sdp_bound``), and the degree-sequence floor obtained from a
degeneracy peeling (``shearer_floor``).
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph_core import Graph, degeneracy_order

SPARSE_EPS = 1e-6  # floor for the sparse-neighborhood constant in choose_gamma
GAMMA_CAP = 1.0  # keeps 1 + gamma^2 small, which sharpens the surplus coefficient


def choose_gamma(c_sparse: float) -> float:
    """Neighbor weight for a given sparse-neighborhood constant C.

    Returns gamma = 1/(pi * max(C, eps)) capped at 1, which keeps
    1/pi - (C/2)*gamma at or above 1/(2*pi) for every C >= 0.
    """
    if c_sparse < 0:
        raise ValueError(f"sparse-neighborhood constant must be >= 0, got {c_sparse}")
    return min(GAMMA_CAP, 1.0 / (math.pi * max(c_sparse, SPARSE_EPS)))


def sqrt_degree_coeff(gamma: float) -> float:
    """Guaranteed coefficient of sum(sqrt(d(v))) in the bisection surplus."""
    return (gamma / (1.0 + gamma * gamma)) / (2.0 * math.pi)


def worker_count() -> int:
    """Thread cap from EVENBISECT_THREADS; defaults to 1 (sequential)."""
    raw = os.environ.get("EVENBISECT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def child_seed(seed, index: int) -> np.random.SeedSequence:
    """Stateless child derivation: same (seed, index) always maps to the same stream."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.SeedSequence(seed.entropy, spawn_key=tuple(seed.spawn_key) + (index,))
    return np.random.SeedSequence(seed, spawn_key=(index,))


@dataclass(frozen=True)
class Bisection:
    """A balanced two-part vertex labeling and its crossing-edge count."""

    side: tuple[int, ...]
    size_a: int
    size_b: int
    cut: int

    @classmethod
    def from_side(cls, g: Graph, side, cut: int | None = None) -> "Bisection":
        labels = tuple(int(s) for s in side)
        if len(labels) != g.n:
            raise ValueError(f"label vector has length {len(labels)}, graph has {g.n} vertices")
        if any(s not in (0, 1) for s in labels):
            raise ValueError("labels must be 0 or 1")
        size_a = labels.count(0)
        size_b = g.n - size_a
        if abs(size_a - size_b) > 1:
            raise ValueError(f"unbalanced parts: {size_a} vs {size_b}")
        true_cut = sum(1 for u, v in g.edges if labels[u] != labels[v])
        if cut is not None and cut != true_cut:
            raise ValueError(f"stored cut {cut} does not match recount {true_cut}")
        return cls(labels, size_a, size_b, true_cut)

    def validate(self, g: Graph) -> None:
        if len(self.side) != g.n:
            raise ValueError("label vector length mismatch")
        if abs(self.size_a - self.size_b) > 1:
            raise ValueError("parts out of balance")
        if self.side.count(0) != self.size_a:
            raise ValueError("stored part sizes disagree with labels")
        recount = sum(1 for u, v in g.edges if self.side[u] != self.side[v])
        if recount != self.cut:
            raise ValueError(f"stored cut {self.cut} disagrees with recount {recount}")

    def to_json(self) -> str:
        return json.dumps({"side": list(self.side), "cut": self.cut})

    @classmethod
    def from_json(cls, g: Graph, text: str) -> "Bisection":
        data = json.loads(text)
        return cls.from_side(g, data["side"], data.get("cut"))


def cut_size(g: Graph, side) -> int:
    return sum(1 for u, v in g.edges if side[u] != side[v])


class Embedding:
    """Implicit vector assignment for one graph and one neighbor weight gamma.

    Isolated vertices fall back to their own basis vector: inner product 0
    with everything, squared norm 1, and they are preferred movers during
    rebalancing since their degree is 0.
    """

    def __init__(self, graph: Graph, gamma: float):
        if gamma <= 0:
            raise ValueError(f"gamma must be positive, got {gamma}")
        self.graph = graph
        self.gamma = float(gamma)
        self.norm_sq = 1.0 + self.gamma**2
        self.isolated_policy = "basis"
        n = graph.n
        deg = np.array(graph.degrees(), dtype=np.float64)
        if graph.m:
            edges = np.array(graph.edges, dtype=np.int64)
            self._eu = edges[:, 0]
            self._ev = edges[:, 1]
        else:
            self._eu = np.zeros(0, dtype=np.int64)
            self._ev = np.zeros(0, dtype=np.int64)
        with np.errstate(divide="ignore"):
            self._weight = np.where(deg > 0, self.gamma / np.sqrt(np.maximum(deg, 1)), 0.0)
        self._deg = deg
        # Global rebalance preference: lowest degree first, ties by id.
        self._move_order = sorted(range(n), key=lambda v: (graph.degree(v), v))

    def scores(self, w: np.ndarray) -> np.ndarray:
        """Inner products <w, x_v> for all v, one pass over the edges."""
        n = self.graph.n
        nbr_sum = np.zeros(n)
        if self._eu.size:
            nbr_sum += np.bincount(self._eu, weights=w[self._ev], minlength=n)
            nbr_sum += np.bincount(self._ev, weights=w[self._eu], minlength=n)
        return w - self._weight * nbr_sum


def inner_product(e: Embedding, u: int, v: int) -> float:
    """<y_u, y_v> for the unit-normalized implicit vectors.

    Edge pair:     (-g/sqrt(d(u)) - g/sqrt(d(v)) + g^2 d(u,v)/sqrt(d(u)d(v))) / (1+g^2)
    Non-edge pair: (g^2 d(u,v)/sqrt(d(u)d(v))) / (1+g^2)
    where d(u,v) counts common neighbors.  Pairs touching an isolated vertex
    give 0.  The result is clamped into [-1, 1] against roundoff.
    """
    g = e.graph
    if u == v:
        raise ValueError("inner product requires two distinct vertices")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"vertex out of range: ({u},{v})")
    du, dv = g.degree(u), g.degree(v)
    if du == 0 or dv == 0:
        return 0.0
    common = len(g.neighbor_set(u) & g.neighbor_set(v))
    gamma = e.gamma
    value = gamma * gamma * common / math.sqrt(du * dv)
    if g.has_edge(u, v):
        value -= gamma / math.sqrt(du) + gamma / math.sqrt(dv)
    value /= e.norm_sq
    return max(-1.0, min(1.0, value))


def _close_pairs(g: Graph):
    """Unordered pairs at distance <= 2; all other pairs have inner product 0."""
    for u in range(g.n):
        cand: set[int] = set()
        for x in g.adj[u]:
            if x > u:
                cand.add(x)
            for y in g.adj[x]:
                if y > u:
                    cand.add(y)
        for v in sorted(cand):
            yield u, v


@dataclass(frozen=True)
class SdpBoundTerms:
    edge_arcsin_sum: float
    pair_arcsin_sum: float
    radicand: float
    radicand_clamped: bool
    value: float


def sdp_bound_terms(e: Embedding) -> SdpBoundTerms:
    """Certified expectation bound for hyperplane rounding of this embedding.

    value = m/2 - (1/pi) * sum_{edges} asin(<y_u,y_v>)
                 - (2m/n) * sqrt(n + (4/pi) * sum_{pairs} asin(<y_u,y_v>))

    The pair sum runs over all unordered pairs but only distance-<=2 pairs
    contribute.  A negative radicand (never expected for this embedding) is
    clamped to 0 and flagged.
    """
    g = e.graph
    if g.n == 0:
        return SdpBoundTerms(0.0, 0.0, 0.0, False, 0.0)
    edge_sum = 0.0
    pair_sum = 0.0
    for u, v in _close_pairs(g):
        a = math.asin(inner_product(e, u, v))
        pair_sum += a
        if g.has_edge(u, v):
            edge_sum += a
    avg_deg = 2.0 * g.m / g.n
    radicand = g.n + (4.0 / math.pi) * pair_sum
    clamped = radicand < 0
    value = g.m / 2.0 - edge_sum / math.pi - avg_deg * math.sqrt(max(radicand, 0.0))
    return SdpBoundTerms(edge_sum, pair_sum, radicand, clamped, value)


def sdp_bound(e: Embedding) -> float:
    return sdp_bound_terms(e).value


@dataclass(frozen=True)
class RoundTrace:
    """Pre-rebalance state of one rounding, for degradation accounting."""

    raw_side: tuple[int, ...]
    raw_cut: int
    moved: tuple[int, ...]


def _round_once(e: Embedding, rng: np.random.Generator) -> tuple[Bisection, RoundTrace]:
    g = e.graph
    n = g.n
    w = rng.standard_normal(n)
    scores = e.scores(w)
    side = np.where(scores >= 0, 0, 1)  # ties land on side 0
    target = n // 2
    count0 = int(np.count_nonzero(side == 0))
    raw_side = tuple(int(s) for s in side)
    raw_cut = _np_cut(e, side)
    moved: list[int] = []
    if count0 >= target:
        need, source = count0 - target, 0
    else:
        need, source = target - count0, 1
    if need:
        for v in e._move_order:
            if side[v] == source:
                side[v] = 1 - source
                moved.append(v)
                if len(moved) == need:
                    break
    cut = _np_cut(e, side)
    labels = tuple(int(s) for s in side)
    size_a = labels.count(0)
    bis = Bisection(labels, size_a, n - size_a, cut)
    return bis, RoundTrace(raw_side, raw_cut, tuple(moved))


def _np_cut(e: Embedding, side: np.ndarray) -> int:
    if not e._eu.size:
        return 0
    return int(np.count_nonzero(side[e._eu] != side[e._ev]))


def hyperplane_round(e: Embedding, seed) -> Bisection:
    """One random-direction rounding followed by exact rebalancing."""
    bis, _ = round_with_trace(e, seed)
    return bis


def round_with_trace(e: Embedding, seed) -> tuple[Bisection, RoundTrace]:
    rng = np.random.default_rng(child_seed(seed, 0))
    return _round_once(e, rng)


@dataclass(frozen=True)
class TrialStats:
    trials: int
    mean_cut: float
    std_cut: float
    min_cut: int
    max_cut: int


def best_of_rounds(e: Embedding, trials: int, seed) -> tuple[Bisection, TrialStats]:
    """Best bisection over independent roundings.

    Trial i always uses the stream derived from (seed, i), so the result is
    identical whether trials run sequentially or on a thread pool; ties on
    the cut break toward the lexicographically smallest label vector.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    def run(i: int) -> Bisection:
        rng = np.random.default_rng(child_seed(seed, i))
        return _round_once(e, rng)[0]

    threads = worker_count()
    if threads > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(trials)))
    else:
        results = [run(i) for i in range(trials)]
    best = min(results, key=lambda b: (-b.cut, b.side))
    cuts = np.array([b.cut for b in results], dtype=np.float64)
    std = float(cuts.std(ddof=1)) if trials > 1 else 0.0
    stats = TrialStats(trials, float(cuts.mean()), std, int(cuts.min()), int(cuts.max()))
    return best, stats


@dataclass(frozen=True)
class ShearerCertificate:
    """Link-by-link evidence for the degree-sequence floor.

    chain: sum sqrt(d(v)) >= sum sqrt(back_degree(v)) >= m/sqrt(cap) = floor,
    where cap = 200k * m^{1/(k+1)} and the middle step needs every back
    degree below cap, i.e. degeneracy <= cap - 1.
    """

    floor: float
    degree_cap: float
    sum_sqrt_degree: float
    sum_sqrt_back_degree: float
    peel_floor: float
    degeneracy: int
    degeneracy_within_cap: bool


def shearer_floor(g: Graph, k: int) -> tuple[float, ShearerCertificate]:
    """Floor m^{(2k+1)/(2k+2)} / sqrt(200k) on sum(sqrt(d(v))), certified."""
    if k < 2:
        raise ValueError(f"even-cycle parameter k must be >= 2, got {k}")
    m = g.m
    if m == 0:
        cert = ShearerCertificate(0.0, 0.0, 0.0, 0.0, 0.0, 0, True)
        return 0.0, cert
    exponent = (2 * k + 1) / (2 * k + 2)
    floor = m**exponent / math.sqrt(200 * k)
    cap = 200 * k * m ** (1.0 / (k + 1))
    peel = degeneracy_order(g)
    sum_sqrt_deg = sum(math.sqrt(d) for d in g.degrees())
    sum_sqrt_back = sum(math.sqrt(b) for b in peel.back_degrees)
    cert = ShearerCertificate(
        floor=floor,
        degree_cap=cap,
        sum_sqrt_degree=sum_sqrt_deg,
        sum_sqrt_back_degree=sum_sqrt_back,
        peel_floor=m / math.sqrt(cap),
        degeneracy=peel.degeneracy,
        degeneracy_within_cap=peel.degeneracy <= cap - 1,
    )
    return floor, cert


@dataclass
class BoundReport:
    """Every theoretical floor evaluated for one solver run."""

    k: int
    m_half: float
    sdp_bound: float
    shearer_floor: float
    target_exponent: float
    achieved: int
    constants: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.achieved < 0:
            raise ValueError("achieved cut cannot be negative")
        if not (0.75 < self.target_exponent < 1.0):
            raise ValueError(f"target exponent {self.target_exponent} outside (3/4, 1)")

    def surplus(self) -> float:
        return self.achieved - self.m_half

    def to_json(self) -> str:
        payload = {
            "k": self.k,
            "m_half": _sig12(self.m_half),
            "sdp_bound": _sig12(self.sdp_bound),
            "shearer_floor": _sig12(self.shearer_floor),
            "target_exponent": _sig12(self.target_exponent),
            "achieved": self.achieved,
            "constants": {key: _sig12(val) for key, val in self.constants.items()},
        }
        return json.dumps(payload, sort_keys=True)


def _sig12(value):
    """Reals rendered with 12 significant digits; everything else as-is."""
    if isinstance(value, float):
        return float(f"{value:.12g}")
    return value


def target_exponent(k: int) -> float:
    return (2 * k + 1) / (2 * k + 2)
