# -*- coding: utf-8 -*-
"""
Scorer selection by tag.

A method tag is one of the scorer tags, optionally prefixed with 'local:'
to apply local filtering to the raw score.
"""
import logging
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Optional

from .errors import UnknownMethodError
from .filtering import SparsificationResult, filter_by_ratio, localize
from .graph import EdgeScore, Graph
from .scoring import (
    ForestFireParams,
    QuadrangleCounts,
    TriangleCounts,
    count_quadrangles,
    count_triangles,
    score_algebraic_distance,
    score_edge_forest_fire,
    score_jaccard,
    score_local_degree,
    score_quadrilateral_embeddedness,
    score_random_edge,
    score_simmelian,
)

logger = logging.getLogger(__name__)

SCORER_TAGS = ("re", "tri", "js", "ts", "qls", "eff", "ad", "ld")
LOCAL_PREFIX = "local:"


@dataclass(frozen=True)
class MethodSpec:
    base: str
    local: bool = False

    @property
    def tag(self) -> str:
        return f"{LOCAL_PREFIX}{self.base}" if self.local else self.base


def parse_method(tag: str) -> MethodSpec:
    text = tag.strip().lower()
    local = text.startswith(LOCAL_PREFIX)
    base = text[len(LOCAL_PREFIX):] if local else text
    if base not in SCORER_TAGS:
        raise UnknownMethodError(
            f"unknown method '{tag}'. Known: {', '.join(SCORER_TAGS)} (optionally prefixed with '{LOCAL_PREFIX}')"
        )
    return MethodSpec(base, local)


class Scorer:
    '''
    Computes edge scores of one graph by tag.

    Triangle and quadrangle counts are computed at most once per instance
    and shared by the scorers built on them. All randomized scorers draw
    from the instance's seed.

    Parameters
    ----------
    g : Graph
    seed : int | None
            Master seed (default 0)
    workers : int | None
            Threads used by the parallel scorers (default None)
    forest_fire : ForestFireParams | None
            Burning probability and target ratio; the seed field is
            replaced by `seed` (default None, the ForestFireParams defaults)
    ad_systems, ad_iterations : int
            Algebraic distance dimensions and sweeps (default 20, 20)
    '''

    def __init__(self, g: Graph, seed: Optional[int] = 0, workers: Optional[int] = None,
                 forest_fire: Optional[ForestFireParams] = None,
                 ad_systems: int = 20, ad_iterations: int = 20):
        self.graph = g
        self.seed = seed
        self.workers = workers
        self.forest_fire = replace(forest_fire or ForestFireParams(), seed=seed)
        self.ad_systems = ad_systems
        self.ad_iterations = ad_iterations

    @cached_property
    def triangles(self) -> TriangleCounts:
        return count_triangles(self.graph, self.workers)

    @cached_property
    def quadrangles(self) -> QuadrangleCounts:
        return count_quadrangles(self.graph)

    def raw(self, base: str) -> EdgeScore:
        g = self.graph
        if base == "re":
            return score_random_edge(g, self.seed)
        if base == "tri":
            return self.triangles.as_score()
        if base == "js":
            return score_jaccard(g, self.triangles)
        if base == "ts":
            return score_simmelian(g, self.triangles, self.workers)
        if base == "qls":
            embedded = score_quadrilateral_embeddedness(g, self.quadrangles)
            return score_simmelian(g, embedded, self.workers)
        if base == "eff":
            return score_edge_forest_fire(g, self.forest_fire, self.workers)
        if base == "ad":
            return score_algebraic_distance(
                g, self.ad_systems, self.ad_iterations, self.seed, workers=self.workers
            )
        if base == "ld":
            return score_local_degree(g)
        raise UnknownMethodError(f"unknown method '{base}'")

    def score(self, method) -> EdgeScore:
        spec = parse_method(method) if isinstance(method, str) else method
        raw = self.raw(spec.base)
        return localize(self.graph, raw) if spec.local else raw


def compute_score(g: Graph, method: str, seed: Optional[int] = 0,
                  workers: Optional[int] = None, **params) -> EdgeScore:
    '''One-off scoring; see Scorer for the parameters.'''
    return Scorer(g, seed, workers, **params).score(method)


def sparsify(g: Graph, method: str, ratio: float, seed: Optional[int] = 0,
             workers: Optional[int] = None, **params) -> SparsificationResult:
    '''Score g with `method` and keep round(ratio * m) edges.'''
    score = compute_score(g, method, seed, workers, **params)
    return filter_by_ratio(g, score, ratio, tiebreak_seed=seed)
