# -*- coding: utf-8 -*-
"""
--- Edge scoring ---
The eight edge scores used for sparsification. Every scorer reads an
immutable Graph and returns an EdgeScore indexed by canonical edge id, where
a higher value marks a more important edge.

    re   uniform random values
    tri  triangle counts T(u,v)
    js   Jaccard similarity of the two neighbourhoods
    ts   prefix Jaccard over neighbourhoods ranked by T
    qls  prefix Jaccard over neighbourhoods ranked by quadrilateral embeddedness
    eff  edge burn counts of repeated forest fires
    ad   1 - normalised algebraic distance
    ld   local degree: rank of the neighbour's degree at each endpoint
"""
import logging
import threading
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import InvalidParameterError
from .filtering import local_scores_from_slots, segment_ranks
from .graph import EdgeScore, Graph, degree_ordering, forward_adjacency
from .parallel import map_chunks, resolve_workers, spawn_generators

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TriangleCounts:
    values: np.ndarray

    @property
    def total(self) -> int:
        '''Number of triangles in the graph.'''
        return int(self.values.sum() // 3)

    def per_node(self, g: Graph) -> np.ndarray:
        # each triangle at v lies on exactly two edges incident to v
        twice = (np.bincount(g.heads, weights=self.values, minlength=g.n)
                 + np.bincount(g.tails, weights=self.values, minlength=g.n))
        return (twice // 2).astype(np.int64)

    def as_score(self) -> EdgeScore:
        return EdgeScore(self.values.astype(np.float64), "tri")


@dataclass(frozen=True, eq=False)
class QuadrangleCounts:
    per_edge: np.ndarray
    per_node: np.ndarray


@dataclass(frozen=True, eq=False)
class AlgebraicCoordinates:
    coordinates: np.ndarray
    iterations: int
    omega: float

    @property
    def dimension(self) -> int:
        return self.coordinates.shape[1]


@dataclass(frozen=True)
class ForestFireParams:
    '''
    Parameters of the edge forest fire.

    p : float
            Burning probability in [0, 1); the number of neighbours a node
            sets on fire is geometric with mean p / (1 - p)
            (default 0.7)
    target_burn_ratio : float
            Fires stop once m * target_burn_ratio edges have burnt
            (default 5.0)
    seed : int | None
            Seed of the random stream (default 0)
    '''
    p: float = 0.7
    target_burn_ratio: float = 5.0
    seed: Optional[int] = 0

    def __post_init__(self):
        if not 0.0 <= self.p < 1.0:
            raise InvalidParameterError(f"burning probability must be in [0, 1). It was: {self.p}")
        if not self.target_burn_ratio > 0:
            raise InvalidParameterError(
                f"target_burn_ratio must be positive. It was: {self.target_burn_ratio}"
            )


# ---------------------------------------------------------------------------
# random edge


def score_random_edge(g: Graph, seed: Optional[int] = 0) -> EdgeScore:
    rng = np.random.default_rng(seed)
    return EdgeScore(rng.random(g.m), "re")


# ---------------------------------------------------------------------------
# triangles


def count_triangles(g: Graph, workers: Optional[int] = None) -> TriangleCounts:
    '''
    Per-edge triangle counts.

    For every node u the neighbours N(u) are marked in a worker-local array;
    each triangle {u, v, w} with w in N+(v) is found exactly once from u and
    is counted only on the edges {u, x} where u ranks above x. An edge
    counter is therefore written by a single outer iteration and the node
    loop can be split between workers without locks.

    Parameters
    ----------
    g : Graph
    workers : int | None
            Number of threads (default None, see parallel.resolve_workers)

    Returns
    -------
    TriangleCounts
    '''
    ordering = degree_ordering(g)
    rank = ordering.rank
    fptr, fidx = forward_adjacency(g, ordering)
    counts = np.zeros(g.m, dtype=np.int64)

    def work(start, stop):
        mark = np.zeros(g.n, dtype=bool)
        for u in range(start, stop):
            lo, hi = g.indptr[u], g.indptr[u + 1]
            if hi - lo < 2:
                continue
            nb = g.indices[lo:hi]
            eids = g.slot_edges[lo:hi]
            ru = rank[u]
            mark[nb] = True
            for i in range(len(nb)):
                v = nb[i]
                fw = fidx[fptr[v]:fptr[v + 1]]
                if len(fw) == 0:
                    continue
                closing = fw[mark[fw]]
                if len(closing) == 0:
                    continue
                if rank[v] < ru:
                    counts[eids[i]] += len(closing)
                lower = closing[rank[closing] < ru]
                if len(lower):
                    counts[eids[np.searchsorted(nb, lower)]] += 1
            mark[nb] = False

    map_chunks(work, g.n, workers)
    return TriangleCounts(counts)


def score_jaccard(g: Graph, t: TriangleCounts) -> EdgeScore:
    '''JS(u,v) = T(u,v) / (d(u) + d(v) - T(u,v))'''
    tri = t.values.astype(np.float64)
    deg = g.degrees
    return EdgeScore(tri / (deg[g.heads] + deg[g.tails] - tri), "js")


# ---------------------------------------------------------------------------
# quadrangles


def count_quadrangles(g: Graph) -> QuadrangleCounts:
    '''
    Number of 4-cycles through every edge.

    For an edge {u, v}, a 4-cycle u-v-x-y-u is fixed by x in N(v) minus u and
    y in N(u) ∩ N(x) minus v, hence q(u,v) = sum over x of (c(u,x) - 1) with
    c(u,x) = |N(u) ∩ N(x)|. Sequential.
    '''
    per_edge = np.zeros(g.m, dtype=np.int64)
    common = np.zeros(g.n, dtype=np.int64)
    for u in range(g.n):
        nb = g.neighbors(u)
        if len(nb) < 2:
            continue
        two_hop = np.concatenate([g.neighbors(w) for w in nb])
        np.add.at(common, two_hop, 1)
        eids = g.incident_edges(u)
        for i in np.flatnonzero(nb > u):
            x = g.neighbors(nb[i])
            x = x[x != u]
            per_edge[eids[i]] = (common[x] - 1).sum()
        common[two_hop] = 0
    per_node = (np.bincount(g.heads, weights=per_edge, minlength=g.n)
                + np.bincount(g.tails, weights=per_edge, minlength=g.n)).astype(np.int64)
    return QuadrangleCounts(per_edge, per_node)


def score_quadrilateral_embeddedness(g: Graph, q: QuadrangleCounts) -> EdgeScore:
    '''Q(u,v) = q(u,v) / sqrt(q(u) q(v)), 0 for edges in no quadrangle.'''
    denom = np.sqrt(q.per_node[g.heads].astype(np.float64) * q.per_node[g.tails])
    values = np.zeros(g.m, dtype=np.float64)
    np.divide(q.per_edge, denom, out=values, where=denom > 0)
    return EdgeScore(values, "qle")


# ---------------------------------------------------------------------------
# simmelian backbones


def score_simmelian(g: Graph, ranking_source: Union[TriangleCounts, EdgeScore],
                    workers: Optional[int] = None) -> EdgeScore:
    '''
    Non-parametric Simmelian backbone score.

    Each node ranks its neighbours by the source score of the connecting
    edge (ties share the best rank). An edge scores the best Jaccard
    overlap of the two top-k prefixes over k = 1..max(d(u), d(v)); a prefix
    that runs out of neighbours stays at the full neighbourhood.

    Parameters
    ----------
    g : Graph
    ranking_source : TriangleCounts | EdgeScore
            Triangle counts give the triadic backbone, quadrilateral
            embeddedness the quadrilateral one
    workers : int | None
            Number of threads (default None)

    Returns
    -------
    EdgeScore tagged 'ts' for triangle counts, 'qls' otherwise
    '''
    if isinstance(ranking_source, TriangleCounts):
        values, tag = ranking_source.values.astype(np.float64), "ts"
    else:
        ranking_source.check_graph(g)
        values, tag = ranking_source.values, "qls"
    slot_rank = segment_ranks(g, values[g.slot_edges])
    out = np.zeros(g.m, dtype=np.float64)

    def work(start, stop):
        for e in range(start, stop):
            u, v = g.heads[e], g.tails[e]
            nu, nv = g.neighbors(u), g.neighbors(v)
            ru = slot_rank[g.indptr[u]:g.indptr[u + 1]]
            rv = slot_rank[g.indptr[v]:g.indptr[v + 1]]
            depth = max(len(nu), len(nv))
            size_u = np.bincount(ru, minlength=depth + 1)[1:].cumsum()
            size_v = np.bincount(rv, minlength=depth + 1)[1:].cumsum()
            _, iu, iv = np.intersect1d(nu, nv, assume_unique=True, return_indices=True)
            joint = np.maximum(ru[iu], rv[iv])
            inter = np.bincount(joint, minlength=depth + 1)[1:].cumsum()
            out[e] = (inter / (size_u + size_v - inter)).max()

    map_chunks(work, g.m, workers)
    return EdgeScore(out, tag)


# ---------------------------------------------------------------------------
# edge forest fire


class _BurnTally:
    def __init__(self, target: float):
        self.target = target
        self.total = 0
        self.lock = threading.Lock()

    def done(self) -> bool:
        with self.lock:
            return self.total >= self.target

    def add(self, burnt: int) -> None:
        with self.lock:
            self.total += burnt


def _burn(g: Graph, p: float, rng: np.random.Generator, tally: _BurnTally) -> np.ndarray:
    counts = np.zeros(g.m, dtype=np.int64)
    stamp = np.full(g.n, -1, dtype=np.int64)
    fire = 0
    while not tally.done():
        start = int(rng.integers(g.n))
        stamp[start] = fire
        queue = [start]
        head = 0
        burnt = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            lo, hi = g.indptr[v], g.indptr[v + 1]
            while True:
                if rng.random() > p:
                    break
                nb = g.indices[lo:hi]
                fresh = np.flatnonzero(stamp[nb] != fire)
                if len(fresh) == 0:
                    break
                i = fresh[rng.integers(len(fresh))]
                x = int(nb[i])
                stamp[x] = fire
                queue.append(x)
                counts[g.slot_edges[lo + i]] += 1
                burnt += 1
        # the shared total only moves between fires
        tally.add(burnt)
        fire += 1
    return counts


def score_edge_forest_fire(g: Graph, params: Optional[ForestFireParams] = None,
                           workers: Optional[int] = None) -> EdgeScore:
    '''
    Edge burn frequencies of repeated forest fires.

    A fire starts at a uniformly random node. Each node taken from the
    queue keeps burning random un-burnt neighbours while a fresh uniform
    draw stays <= p; every burnt neighbour is queued and its edge counted.
    Fires are lit until m * target_burn_ratio edges have burnt in total.

    With several workers each runs its own fires with its own burn marks and
    random stream; the totals are merged at the end, so only the single
    worker result is reproducible.
    '''
    params = params or ForestFireParams()
    if g.n == 0:
        raise InvalidParameterError("edge forest fire needs a non-empty graph")
    target = g.m * params.target_burn_ratio
    if params.p == 0:
        logger.warning("burning probability 0: no fire spreads, every edge scores 0")
        return EdgeScore(np.zeros(g.m, dtype=np.float64), "eff")
    workers = resolve_workers(workers)
    tally = _BurnTally(target)
    if workers == 1:
        counts = _burn(g, params.p, np.random.default_rng(params.seed), tally)
    else:
        streams = spawn_generators(params.seed, workers)
        parts = map_chunks(lambda a, b: _burn(g, params.p, streams[a], tally), workers, workers)
        counts = np.sum(parts, axis=0) if parts else np.zeros(g.m, dtype=np.int64)
    logger.debug("forest fire burnt %d edges (target %.1f)", tally.total, target)
    return EdgeScore(counts.astype(np.float64), "eff")


# ---------------------------------------------------------------------------
# algebraic distance


def algebraic_coordinates(g: Graph, systems: int = 20, iterations: int = 20,
                          seed: Optional[int] = 0, omega: float = 0.5,
                          workers: Optional[int] = None) -> AlgebraicCoordinates:
    '''
    Jacobi-style coordinate smoothing.

    Every system starts from uniform values in [-0.5, 0.5] drawn from its
    own stream of the master seed. One iteration sets
    x(u) <- omega x(u) + (1 - omega) mean of x over N(u), reading only the
    previous iterate; isolated nodes keep their value.
    '''
    if systems < 1 or iterations < 0:
        raise InvalidParameterError(
            f"need systems >= 1 and iterations >= 0. Got: {systems}, {iterations}"
        )
    if not 0.0 < omega < 1.0:
        raise InvalidParameterError(f"omega must be in (0, 1). It was: {omega}")
    coords = np.column_stack(
        [gen.uniform(-0.5, 0.5, g.n) for gen in spawn_generators(seed, systems)]
    )
    if g.n == 0:
        return AlgebraicCoordinates(coords.reshape(0, systems), iterations, omega)
    adjacency = g.adjacency_matrix()
    deg = g.degrees
    linked = deg > 0
    for _ in range(iterations):
        sums = np.vstack(map_chunks(lambda a, b: adjacency[a:b] @ coords, g.n, workers))
        updated = coords.copy()
        updated[linked] = omega * coords[linked] + (1.0 - omega) * sums[linked] / deg[linked, None]
        coords = updated
    return AlgebraicCoordinates(coords, iterations, omega)


def score_algebraic_distance(g: Graph, systems: int = 20, iterations: int = 20,
                             seed: Optional[int] = 0, omega: float = 0.5,
                             workers: Optional[int] = None) -> EdgeScore:
    '''
    1 - alpha(u,v) / max alpha, alpha being the l2 distance of the
    coordinates. All ones when every edge has distance 0.
    '''
    coords = algebraic_coordinates(g, systems, iterations, seed, omega, workers).coordinates
    raw = np.linalg.norm(coords[g.heads] - coords[g.tails], axis=1)
    top = raw.max() if g.m else 0.0
    if top == 0:
        return EdgeScore(np.ones(g.m), "ad")
    return EdgeScore(1.0 - raw / top, "ad")


# ---------------------------------------------------------------------------
# local degree


def score_local_degree(g: Graph) -> EdgeScore:
    '''
    Each node ranks its edges by the degree of the other endpoint,
    descending; an edge scores 1 - alpha_min at its better endpoint.
    '''
    return EdgeScore(local_scores_from_slots(g, g.degrees[g.indices]), "ld")
