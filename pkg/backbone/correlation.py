# -*- coding: utf-8 -*-
"""
Rank correlation between edge scores.

Besides the scorer tags (plain or 'local:' prefixed) two reference columns
are available: 'mod', 1 for edges inside a Louvain community of the graph
and 0 otherwise, and 'tri', the triangle count of the edge.
"""
import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from .analysis import spearman_rho
from .community import intra_community_indicator, louvain
from .errors import InvalidParameterError, UndefinedMeasureError
from .graph import EdgeScore, Graph
from .methods import Scorer

logger = logging.getLogger(__name__)

REFERENCE_COLUMNS = ("mod", "tri")


def correlation_labels(tags: Iterable[str], include_references: bool = True) -> List[str]:
    labels = [t.strip().lower() for t in tags]
    if include_references:
        labels += [r for r in REFERENCE_COLUMNS if r not in labels]
    return labels


def score_correlation_matrix(g: Graph, tags: Sequence[str], seed: Optional[int] = 0,
                             workers: Optional[int] = None,
                             include_references: bool = True,
                             scorer: Optional[Scorer] = None) -> pd.DataFrame:
    '''
    Pairwise Spearman's rho between edge scores.

    Parameters
    ----------
    g : Graph
    tags : sequence of str
            Method tags, 'mod' or 'tri'; repeated tags give repeated columns
    seed : int | None
            Seeds the randomized scorers and the Louvain run (default 0)
    include_references : bool
            Append 'mod' and 'tri' when not requested (default True)

    Returns
    -------
    Symmetric DataFrame labelled by tag. A cell is NaN when one of its
    scores is constant; the diagonal is 1 otherwise.
    '''
    labels = correlation_labels(tags, include_references)
    if len(labels) < 2:
        raise InvalidParameterError("a correlation matrix needs at least two scores")
    scorer = scorer or Scorer(g, seed, workers)
    scores = {}
    for tag in dict.fromkeys(labels):
        if tag == "mod":
            scores[tag] = intra_community_indicator(g, louvain(g, seed))
        else:
            scores[tag] = scorer.score(tag)

    size = len(labels)
    matrix = np.full((size, size), np.nan)
    for i in range(size):
        for j in range(i, size):
            a: EdgeScore = scores[labels[i]]
            b: EdgeScore = scores[labels[j]]
            try:
                rho = spearman_rho(a, b)
            except UndefinedMeasureError:
                logger.debug("no correlation between %s and %s", labels[i], labels[j])
                continue
            matrix[i, j] = matrix[j, i] = 1.0 if i == j else rho
    return pd.DataFrame(matrix, index=labels, columns=labels)


def average_correlation_matrices(frames: Sequence[pd.DataFrame]) -> pd.DataFrame:
    '''Cell-wise mean over networks, ignoring missing cells.'''
    if not frames:
        raise InvalidParameterError("no correlation matrices to average")
    stacked = np.stack([f.to_numpy() for f in frames])
    with np.errstate(invalid="ignore"):
        counts = np.sum(~np.isnan(stacked), axis=0)
        sums = np.nansum(stacked, axis=0)
        mean = np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)
    return pd.DataFrame(mean, index=frames[0].index, columns=frames[0].columns)
