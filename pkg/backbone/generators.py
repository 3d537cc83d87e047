# -*- coding: utf-8 -*-
"""
Seeded synthetic graphs: planted partitions with a known ground truth and
G(n, p) random graphs.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import networkx as nx
import numpy as np

from .errors import InvalidParameterError
from .graph import Graph, Partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlantedPartitionSpec:
    '''
    `communities` groups of `nodes_per_community` nodes. Pairs inside a
    group are joined with probability p_in, pairs across groups with p_out.
    '''
    communities: int
    nodes_per_community: int
    p_in: float
    p_out: float
    seed: Optional[int] = 0

    def __post_init__(self):
        if self.communities < 1 or self.nodes_per_community < 1:
            raise InvalidParameterError(
                f"need at least one community of one node. It was: "
                f"{self.communities} x {self.nodes_per_community}"
            )
        for name in ("p_in", "p_out"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidParameterError(f"{name} must be in [0, 1]. It was: {value}")
        if not self.p_in > self.p_out:
            raise InvalidParameterError(
                f"p_in must exceed p_out. They were: {self.p_in}, {self.p_out}"
            )

    @property
    def n(self) -> int:
        return self.communities * self.nodes_per_community

    def expected_degree(self) -> float:
        inside = (self.nodes_per_community - 1) * self.p_in
        outside = (self.n - self.nodes_per_community) * self.p_out
        return inside + outside

    def mixing(self) -> float:
        '''Expected share of a node's edges that leave its community.'''
        degree = self.expected_degree()
        if degree == 0:
            return 0.0
        return (self.n - self.nodes_per_community) * self.p_out / degree

    @classmethod
    def parse(cls, text: str) -> "PlantedPartitionSpec":
        '''
        Build from "communities=10,size=100,p_in=0.3,p_out=0.01[,seed=4]".
        '''
        aliases = {"size": "nodes_per_community", "k": "communities"}
        casts = {"communities": int, "nodes_per_community": int,
                 "p_in": float, "p_out": float, "seed": int}
        fields = {}
        for item in filter(None, (part.strip() for part in text.split(","))):
            key, sep, value = item.partition("=")
            key = aliases.get(key.strip(), key.strip())
            if not sep or key not in casts:
                raise InvalidParameterError(f"bad generator field '{item}' in '{text}'")
            try:
                fields[key] = casts[key](value.strip())
            except ValueError:
                raise InvalidParameterError(f"bad value for {key}: '{value.strip()}'") from None
        missing = {"communities", "nodes_per_community", "p_in", "p_out"} - set(fields)
        if missing:
            raise InvalidParameterError(f"generator spec lacks {', '.join(sorted(missing))}")
        return cls(**fields)


def generate_planted_partition(spec: PlantedPartitionSpec) -> Tuple[Graph, Partition]:
    '''
    Graph and ground-truth partition; node i belongs to community
    i // nodes_per_community.
    '''
    if spec.expected_degree() < 1:
        logger.warning("planted partition has expected degree %.3f < 1",
                       spec.expected_degree())
    sizes = [spec.nodes_per_community] * spec.communities
    G = nx.random_partition_graph(sizes, spec.p_in, spec.p_out, seed=spec.seed)
    g = Graph.from_edges(spec.n, list(G.edges()))
    truth = Partition(np.arange(spec.n) // spec.nodes_per_community)
    logger.info("planted partition: %d nodes, %d edges, %d communities",
                g.n, g.m, spec.communities)
    return g, truth


def generate_gnp(n: int, p: float, seed: Optional[int] = 0) -> Graph:
    '''Erdos-Renyi G(n, p).'''
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0. It was: {n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"p must be in [0, 1]. It was: {p}")
    G = nx.fast_gnp_random_graph(n, p, seed=seed)
    return Graph.from_edges(n, list(G.edges()))
