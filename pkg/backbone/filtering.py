# -*- coding: utf-8 -*-
"""
--- Filtering ---
The last two stages of the sparsification pipeline:

    raw edge score --(localize)--> local edge score --(filter_by_ratio)--> backbone
         |                                                   ^
         +---------------------------------------------------+

Local filtering lets every node u keep its top floor(d(u)^alpha) incident
edges. An edge's local score is 1 - alpha_min, the smallest alpha for which
one of its endpoints keeps it, so a global cut on local scores reproduces
the per-node rule.
"""
import logging
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional

import numpy as np
from scipy.stats import rankdata

from .errors import InvalidParameterError
from .graph import EdgeScore, Graph, subgraph_by_mask

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SparsificationResult:
    '''
    Edges kept from `original` and the backbone they form.

    keep : bool array over the original edge ids
    edge_map : original edge id -> backbone edge id, -1 when dropped
    '''
    original: Graph
    graph: Graph
    keep: np.ndarray
    edge_map: np.ndarray
    ratio: float
    method_tag: str

    @property
    def kept(self) -> int:
        return int(self.keep.sum())


def rank_with_ties(values, descending: bool = True) -> np.ndarray:
    '''
    Rank = 1 + number of strictly better elements; a tied group shares the
    best rank of the group.

    [5, 3, 3, 1] -> [1, 2, 2, 4]
    '''
    values = np.asarray(values, dtype=np.float64)
    keys = -values if descending else values
    return rankdata(keys, method="min").astype(np.int64)


def segment_ranks(g: Graph, slot_values) -> np.ndarray:
    '''
    rank_with_ties (descending) applied separately to every node's
    adjacency segment.

    Parameters
    ----------
    g : Graph
    slot_values : array of length 2m
            One value per adjacency slot, aligned with g.indices

    Returns
    -------
    int array of length 2m with ranks starting at 1 within each node
    '''
    vals = np.asarray(slot_values, dtype=np.float64)
    total = len(vals)
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    src = g.slot_sources
    order = np.lexsort((-vals, src))
    sv, ss = vals[order], src[order]
    starts_group = np.ones(total, dtype=bool)
    starts_group[1:] = (ss[1:] != ss[:-1]) | (sv[1:] != sv[:-1])
    group_start = np.maximum.accumulate(np.where(starts_group, np.arange(total), 0))
    ranks = np.empty(total, dtype=np.int64)
    ranks[order] = group_start - g.indptr[ss] + 1
    return ranks


def alpha_min(ranks, degrees) -> np.ndarray:
    '''Smallest alpha with floor(d^alpha) >= rank: 0 for rank 1, else log r / log d.'''
    ranks = np.asarray(ranks, dtype=np.float64)
    degrees = np.asarray(degrees, dtype=np.float64)
    out = np.zeros(len(ranks), dtype=np.float64)
    above = ranks > 1
    out[above] = np.log(ranks[above]) / np.log(degrees[above])
    return np.minimum(out, 1.0)


def local_scores_from_slots(g: Graph, slot_values) -> np.ndarray:
    '''
    Local edge scores from per-endpoint ranking values.

    Each endpoint contributes 1 - alpha_min of the edge's rank among its own
    incident edges; the edge keeps the larger contribution.
    '''
    ranks = segment_ranks(g, slot_values)
    contrib = 1.0 - alpha_min(ranks, g.degrees[g.slot_sources])
    out = np.zeros(g.m, dtype=np.float64)
    np.maximum.at(out, g.slot_edges, contrib)
    return out


def localize(g: Graph, raw: EdgeScore) -> EdgeScore:
    '''
    Method of the filtering stage
    Convert a raw edge score into a local one.
    Parameters
    ----------
    g : Graph
            The scored graph
    raw : EdgeScore
            Any edge score, only its per-node ranks matter
    Returns
    -------
    EdgeScore in [0, 1] tagged 'local:<tag>'; the best ranked edge of every
    non-isolated node scores exactly 1
    '''
    raw.check_graph(g)
    return EdgeScore(local_scores_from_slots(g, raw.values[g.slot_edges]), f"local:{raw.method_tag}")


def kept_edge_count(ratio: float, m: int) -> int:
    '''round(ratio * m), halves rounded up, computed on the decimal ratio.'''
    return int((Decimal(repr(float(ratio))) * m).to_integral_value(rounding=ROUND_HALF_UP))


def edge_priority(score: EdgeScore, tiebreak_seed: Optional[int] = 0) -> np.ndarray:
    '''
    Edge ids from most to least important. Equal scores are ordered by a
    seeded random permutation, so every prefix is a valid top-k selection
    and prefixes are nested.
    '''
    m = len(score.values)
    tiebreak = np.random.default_rng(tiebreak_seed).permutation(m)
    return np.lexsort((tiebreak, -score.values))


def _check_ratio(ratio: float) -> float:
    ratio = float(ratio)
    if not 0.0 <= ratio <= 1.0:
        raise InvalidParameterError(f"ratio must be in [0, 1]. It was: {ratio}")
    return ratio


def filter_by_ratio(g: Graph, score: EdgeScore, ratio: float,
                    tiebreak_seed: Optional[int] = 0) -> SparsificationResult:
    '''
    Keep exactly round(ratio * m) edges with the highest scores.

    Edges tied at the cut are picked by a seeded random order. The same
    seed yields nested backbones for increasing ratios.
    '''
    ratio = _check_ratio(ratio)
    score.check_graph(g)
    count = kept_edge_count(ratio, g.m)
    keep = np.zeros(g.m, dtype=bool)
    keep[edge_priority(score, tiebreak_seed)[:count]] = True
    sub, edge_map = subgraph_by_mask(g, keep)
    logger.debug("%s at ratio %.3f keeps %d of %d edges", score.method_tag, ratio, count, g.m)
    return SparsificationResult(g, sub, keep, edge_map, ratio, score.method_tag)


def filter_by_threshold(g: Graph, score: EdgeScore, threshold: float) -> SparsificationResult:
    '''Keep the edges whose score is strictly above threshold.'''
    score.check_graph(g)
    keep = score.values > threshold
    sub, edge_map = subgraph_by_mask(g, keep)
    ratio = float(keep.sum()) / g.m if g.m else 1.0
    return SparsificationResult(g, sub, keep, edge_map, ratio, score.method_tag)
