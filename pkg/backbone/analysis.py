# -*- coding: utf-8 -*-
"""
--- Analysis ---
Structural properties of a graph and the measures that compare a backbone
with the graph it was cut from. Community measures live in
backbone.community.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Union

import networkx as nx
import numpy as np
from scipy.sparse import csgraph
from scipy.stats import spearmanr

from .errors import InvalidParameterError, UndefinedMeasureError
from .graph import EdgeScore, Graph, Partition
from .scoring import count_triangles

logger = logging.getLogger(__name__)

CENTRALITY_KINDS = ("degree", "pagerank", "betweenness-approx", "local-clustering")


@dataclass(frozen=True, eq=False)
class CentralityVector:
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in CENTRALITY_KINDS:
            raise InvalidParameterError(f"unknown centrality kind: {self.kind}")

    def __len__(self):
        return len(self.values)


def _same_nodes(g_sparse: Graph, g_orig: Graph) -> None:
    if g_sparse.n != g_orig.n:
        raise InvalidParameterError(
            f"graphs must share the node set: {g_sparse.n} vs {g_orig.n} nodes"
        )


# ---------------------------------------------------------------------------
# connectivity


def connected_components(g: Graph) -> Partition:
    '''Component labels, numbered by the smallest node id they contain.'''
    if g.n == 0:
        return Partition(np.zeros(0, dtype=np.int64))
    _, labels = csgraph.connected_components(g.adjacency_matrix(), directed=False)
    return Partition.from_labels(labels)


def largest_component(g: Graph) -> np.ndarray:
    '''Nodes of the largest component; the lowest-numbered one wins ties.'''
    comps = connected_components(g)
    if comps.n == 0:
        return np.zeros(0, dtype=np.int64)
    return comps.members(int(np.argmax(comps.sizes())))


def largest_component_ratio(g_sparse: Graph, g_orig: Graph) -> float:
    '''|LCC(sparse)| / |LCC(orig)|'''
    _same_nodes(g_sparse, g_orig)
    if g_orig.m == 0:
        raise UndefinedMeasureError("largest component ratio of an edgeless original")
    return len(largest_component(g_sparse)) / len(largest_component(g_orig))


def newly_isolated(g_sparse: Graph, g_orig: Graph) -> int:
    '''Nodes with edges in the original and none in the backbone.'''
    _same_nodes(g_sparse, g_orig)
    return int(np.count_nonzero((g_orig.degrees > 0) & (g_sparse.degrees == 0)))


# ---------------------------------------------------------------------------
# diameter


def bfs_distances(g: Graph, source: int, adjacency=None) -> np.ndarray:
    '''Hop distances from source, inf for unreachable nodes.'''
    adjacency = g.adjacency_matrix() if adjacency is None else adjacency
    return csgraph.shortest_path(adjacency, method="D", unweighted=True, indices=source)


def exact_diameter(g: Graph, sum_sweeps: int = 4) -> int:
    '''
    Exact diameter of the largest component.

    A few sum-sweeps (next source = node farthest in total from the earlier
    ones) seed eccentricity bounds ecc(w) >= max(d(v,w), ecc(v) - d(v,w))
    and ecc(w) <= ecc(v) + d(v,w). Further searches alternate between the
    unresolved node with the largest upper bound and the one with the
    smallest lower bound, until no node can exceed the best eccentricity
    found.

    Parameters
    ----------
    g : Graph
            Needs at least one edge
    sum_sweeps : int
            Number of sum-sweep searches before bound-driven selection
            (default 4)

    Returns
    -------
    int
    '''
    if g.m == 0:
        raise UndefinedMeasureError("diameter of an edgeless graph")
    nodes = largest_component(g)
    adjacency = g.adjacency_matrix()
    size = len(nodes)
    lower = np.zeros(size)
    upper = np.full(size, np.inf)
    active = np.ones(size, dtype=bool)
    summed = np.zeros(size)
    best = 0
    searches = 0

    def search(i):
        nonlocal best, searches
        dist = bfs_distances(g, int(nodes[i]), adjacency)[nodes]
        ecc = dist.max()
        best = max(best, int(ecc))
        np.maximum(lower, np.maximum(dist, ecc - dist), out=lower)
        np.minimum(upper, ecc + dist, out=upper)
        summed[:] += dist
        active[(upper <= best) | (lower == upper)] = False
        searches += 1

    search(int(np.argmax(g.degrees[nodes])))
    for _ in range(sum_sweeps - 1):
        if not active.any():
            break
        search(int(np.argmax(np.where(active, summed, -1.0))))
    pick_upper = True
    while active.any():
        if pick_upper:
            search(int(np.argmax(np.where(active, upper, -np.inf))))
        else:
            search(int(np.argmin(np.where(active, lower, np.inf))))
        pick_upper = not pick_upper
    logger.debug("diameter %d of %d-node component after %d searches", best, size, searches)
    return best


def diameter_quotient(g_sparse: Graph, g_orig: Graph) -> float:
    '''diam(orig) / diam(sparse)'''
    _same_nodes(g_sparse, g_orig)
    return exact_diameter(g_orig) / exact_diameter(g_sparse)


# ---------------------------------------------------------------------------
# clustering


def local_clustering(g: Graph, workers: Optional[int] = None) -> CentralityVector:
    '''2 tri(v) / (d(v) (d(v) - 1)), 0 for nodes of degree < 2.'''
    tri = count_triangles(g, workers).per_node(g).astype(np.float64)
    deg = g.degrees.astype(np.float64)
    pairs = deg * (deg - 1.0)
    cc = np.zeros(g.n, dtype=np.float64)
    np.divide(2.0 * tri, pairs, out=cc, where=pairs > 0)
    return CentralityVector(cc, "local-clustering")


def avg_local_clustering(g: Graph, workers: Optional[int] = None) -> float:
    if g.n == 0:
        return 0.0
    return float(local_clustering(g, workers).values.mean())


def clustering_deviation(g_sparse: Graph, g_orig: Graph) -> float:
    '''Average local clustering of the backbone minus that of the original.'''
    _same_nodes(g_sparse, g_orig)
    return avg_local_clustering(g_sparse) - avg_local_clustering(g_orig)


# ---------------------------------------------------------------------------
# centralities


def degree_centrality(g: Graph) -> CentralityVector:
    return CentralityVector(g.degrees.astype(np.float64), "degree")


def pagerank(g: Graph, damping: float = 0.85, tol: float = 1e-9,
             max_iter: int = 10000) -> CentralityVector:
    '''
    PageRank by power iteration.

    Uniform teleport; dangling nodes spread their mass uniformly. Stops
    once the l1 change of an iteration drops below tol.
    '''
    n = g.n
    if n == 0:
        return CentralityVector(np.zeros(0), "pagerank")
    adjacency = g.adjacency_matrix()
    deg = g.degrees.astype(np.float64)
    dangling = deg == 0
    x = np.full(n, 1.0 / n)
    for it in range(max_iter):
        share = np.zeros(n)
        np.divide(x, deg, out=share, where=~dangling)
        nxt = damping * (adjacency @ share) + (damping * x[dangling].sum() + 1.0 - damping) / n
        change = np.abs(nxt - x).sum()
        x = nxt
        if change < tol:
            break
    else:
        logger.warning("pagerank did not reach tolerance %g in %d iterations", tol, max_iter)
    return CentralityVector(x / x.sum(), "pagerank")


def approx_betweenness(g: Graph, samples: int = 16, seed: Optional[int] = 0) -> CentralityVector:
    '''
    Pivot-sampling betweenness estimate.

    Parameters
    ----------
    g : Graph
    samples : int
            Number of pivots drawn without replacement; samples >= n uses
            every node and gives exact values (default 16)
    seed : int | None
            Pivot selection seed (default 0)

    Returns
    -------
    CentralityVector with dependencies summed over the pivots, scaled by
    n / samples and halved so that each unordered pair counts once
    '''
    if samples < 1:
        raise InvalidParameterError(f"samples must be >= 1. It was: {samples}")
    if g.n == 0:
        return CentralityVector(np.zeros(0), "betweenness-approx")
    k = samples if samples < g.n else None
    bc = nx.betweenness_centrality(g.to_networkx(), k=k, normalized=False, seed=seed)
    values = np.fromiter((bc[v] for v in range(g.n)), dtype=np.float64, count=g.n)
    return CentralityVector(values, "betweenness-approx")


def exact_betweenness(g: Graph) -> CentralityVector:
    return approx_betweenness(g, samples=max(g.n, 1))


# ---------------------------------------------------------------------------
# rank correlation

Rankable = Union[CentralityVector, EdgeScore, np.ndarray, list]


def _as_array(x: Rankable) -> np.ndarray:
    if isinstance(x, (CentralityVector, EdgeScore)):
        x = x.values
    return np.asarray(x, dtype=np.float64)


def spearman_rho(a: Rankable, b: Rankable) -> float:
    '''
    Spearman's rank correlation with mid-ranks for ties.

    Raises UndefinedMeasureError when either input is constant.
    '''
    a, b = _as_array(a), _as_array(b)
    if len(a) != len(b):
        raise InvalidParameterError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise InvalidParameterError("spearman's rho needs at least two values")
    if np.ptp(a) == 0 or np.ptp(b) == 0:
        raise UndefinedMeasureError("spearman's rho of a constant sequence")
    return float(spearmanr(a, b)[0])


# ---------------------------------------------------------------------------
# summary


def network_statistics(g: Graph) -> Dict[str, float]:
    '''n, m, m/n, diameter of the largest component, average clustering.'''
    comps = connected_components(g)
    stats = {
        "n": g.n,
        "m": g.m,
        "edges_per_node": g.m / g.n if g.n else float("nan"),
        "components": comps.k,
        "largest_component": int(comps.sizes().max()) if comps.n else 0,
        "diameter": float("nan"),
        "avg_clustering": avg_local_clustering(g),
    }
    if g.m:
        stats["diameter"] = exact_diameter(g)
    return stats
