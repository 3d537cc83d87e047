# -*- coding: utf-8 -*-
"""
--- Communities ---
Louvain modularity optimisation and the measures that compare a backbone's
community structure with a reference partition.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import networkx as nx
import numpy as np
import scipy.sparse as sp
from sklearn.metrics import adjusted_rand_score

from .analysis import connected_components
from .errors import InvalidParameterError, UndefinedMeasureError
from .graph import EdgeScore, Graph, Partition, subgraph_by_mask

logger = logging.getLogger(__name__)

# smallest modularity gain that counts as an improvement
GAIN_TOLERANCE = 1e-12


def _local_moving(W: sp.csr_matrix, rng: np.random.Generator,
                  init: Optional[np.ndarray] = None) -> Tuple[np.ndarray, bool]:
    '''
    Move single nodes to the neighbouring community with the largest
    modularity gain until no move improves modularity.

    W is a symmetric weight matrix whose diagonal holds self-loop weight.
    Candidate communities are scanned in ascending id order and a node only
    leaves its community for a strictly positive gain.
    '''
    n = W.shape[0]
    k = np.asarray(W.sum(axis=1)).ravel()
    two_m = k.sum()
    labels = np.arange(n) if init is None else np.array(init, dtype=np.int64)
    tot = np.bincount(labels, weights=k, minlength=n)
    indptr, indices, data = W.indptr, W.indices, W.data
    moved_any = False
    while True:
        moves = 0
        for i in rng.permutation(n):
            nbrs = indices[indptr[i]:indptr[i + 1]]
            w = data[indptr[i]:indptr[i + 1]]
            proper = nbrs != i
            nbrs, w = nbrs[proper], w[proper]
            ci = labels[i]
            ki = k[i]
            tot[ci] -= ki
            best = ci
            if len(nbrs):
                comms, inverse = np.unique(labels[nbrs], return_inverse=True)
                links = np.bincount(inverse.ravel(), weights=w)
                gains = links - tot[comms] * ki / two_m
                own = comms == ci
                stay = gains[own][0] if own.any() else -tot[ci] * ki / two_m
                j = int(np.argmax(gains))
                if gains[j] > stay + GAIN_TOLERANCE:
                    best = comms[j]
            tot[best] += ki
            if best != ci:
                labels[i] = best
                moves += 1
        if moves == 0:
            break
        moved_any = True
    return labels, moved_any


def louvain(g: Graph, seed: Optional[int] = 0, refine: bool = True) -> Partition:
    '''
    Multi-level Louvain with an optional final refinement.

    Parameters
    ----------
    g : Graph
    seed : int | None
            Seeds the node visiting order (default 0)
    refine : bool
            After coarsening stops, run local moving once more on the input
            graph starting from the found partition (default True)

    Returns
    -------
    Partition; singletons for an edgeless graph
    '''
    if g.m == 0:
        return Partition.singletons(g.n)
    communities = nx.community.louvain_communities(g.to_networkx(), seed=seed)
    membership = np.empty(g.n, dtype=np.int64)
    for label, members in enumerate(communities):
        membership[list(members)] = label
    logger.debug("louvain: %d communities before refinement", len(communities))
    if refine:
        rng = np.random.default_rng(seed)
        membership, moved = _local_moving(g.adjacency_matrix(), rng, init=membership)
        if moved:
            logger.debug("louvain refinement moved nodes")
    return Partition.from_labels(membership)


def modularity(g: Graph, p: Partition) -> float:
    '''sum over communities of e_c / m - (vol_c / 2m)^2'''
    p.check_graph(g)
    if g.m == 0:
        raise UndefinedMeasureError("modularity of an edgeless graph")
    a = p.assignment
    inside = a[g.heads] == a[g.tails]
    e_c = np.bincount(a[g.heads][inside], minlength=p.k)
    vol = np.bincount(a, weights=g.degrees, minlength=p.k)
    m = float(g.m)
    return float((e_c / m).sum() - ((vol / (2.0 * m)) ** 2).sum())


def conductances(g: Graph, p: Partition) -> np.ndarray:
    '''
    cut(C) / min(vol(C), 2m - vol(C)) per community, 0 where the
    denominator vanishes.
    '''
    p.check_graph(g)
    a = p.assignment
    vol = np.bincount(a, weights=g.degrees, minlength=p.k).astype(np.float64)
    cross = a[g.heads] != a[g.tails]
    cut = (np.bincount(a[g.heads][cross], minlength=p.k)
           + np.bincount(a[g.tails][cross], minlength=p.k)).astype(np.float64)
    denom = np.minimum(vol, 2.0 * g.m - vol)
    phi = np.zeros(p.k, dtype=np.float64)
    np.divide(cut, denom, out=phi, where=denom > 0)
    return phi


def avg_conductance(g: Graph, p: Partition) -> float:
    if p.k == 0:
        raise InvalidParameterError("partition is empty")
    return float(conductances(g, p).mean())


def relative_conductance_change(g_sparse: Graph, g_orig: Graph, p: Partition) -> float:
    '''(phi(sparse) - phi(orig)) / phi(orig) for the same partition.'''
    before = avg_conductance(g_orig, p)
    if before == 0:
        raise UndefinedMeasureError("relative conductance change with zero original conductance")
    return (avg_conductance(g_sparse, p) - before) / before


def avg_fragmentation(g: Graph, p: Partition) -> float:
    '''
    Mean over communities of the share of members outside the largest
    component of the induced subgraph.
    '''
    p.check_graph(g)
    if p.k == 0:
        raise InvalidParameterError("partition is empty")
    a = p.assignment
    inner, _ = subgraph_by_mask(g, a[g.heads] == a[g.tails])
    comps = connected_components(inner).assignment
    # component ids never straddle communities since only intra edges remain
    first = np.unique(comps, return_index=True)[1]
    largest = np.zeros(p.k, dtype=np.int64)
    np.maximum.at(largest, a[first], np.bincount(comps)[comps[first]])
    return float((1.0 - largest / p.sizes()).mean())


def adjusted_rand(p1: Partition, p2: Partition) -> float:
    if p1.n != p2.n:
        raise InvalidParameterError(f"partitions cover {p1.n} and {p2.n} nodes")
    if p1.n < 2:
        raise UndefinedMeasureError("adjusted rand index needs at least two nodes")
    return float(adjusted_rand_score(p1.assignment, p2.assignment))


def intra_community_indicator(g: Graph, p: Partition) -> EdgeScore:
    '''1 for edges inside a community, 0 for edges between communities.'''
    p.check_graph(g)
    a = p.assignment
    return EdgeScore((a[g.heads] == a[g.tails]).astype(np.float64), "mod")


@dataclass(frozen=True)
class CommunityMetrics:
    avg_conductance: float
    conductance_change: float
    avg_fragmentation: float
    ari_vs_reference: float


def _or_nan(func, label: str) -> float:
    try:
        return float(func())
    except UndefinedMeasureError as err:
        logger.debug("%s undefined: %s", label, err)
        return np.nan


def community_metrics(g_sparse: Graph, reference: Partition, seed: Optional[int] = 0,
                      g_orig: Optional[Graph] = None) -> CommunityMetrics:
    '''
    Conductance and fragmentation of the fixed reference partition on the
    backbone, and the ARI between the reference and a fresh Louvain run on
    the backbone. The conductance change needs the original graph. Measures
    that are undefined come back as NaN.
    '''
    change = np.nan
    if g_orig is not None:
        change = _or_nan(lambda: relative_conductance_change(g_sparse, g_orig, reference),
                         "conductance change")
    return CommunityMetrics(
        avg_conductance=_or_nan(lambda: avg_conductance(g_sparse, reference), "conductance"),
        conductance_change=change,
        avg_fragmentation=_or_nan(lambda: avg_fragmentation(g_sparse, reference), "fragmentation"),
        ari_vs_reference=_or_nan(lambda: adjusted_rand(reference, louvain(g_sparse, seed)), "ari"),
    )
