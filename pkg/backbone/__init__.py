#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Structure-preserving edge sparsification of complex networks.
"""
from .errors import (
    BackboneError,
    InvalidParameterError,
    MalformedInputError,
    UndefinedMeasureError,
    UnknownMethodError,
)
from .graph import (
    EdgeScore,
    Graph,
    LoadedGraph,
    NodeOrdering,
    Partition,
    degree_ordering,
    load_edge_list,
    load_partition,
    subgraph_by_mask,
    write_edge_list,
    write_partition,
)
from .scoring import (
    ForestFireParams,
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
from .filtering import (
    SparsificationResult,
    filter_by_ratio,
    filter_by_threshold,
    localize,
    rank_with_ties,
)
from .methods import SCORER_TAGS, Scorer, compute_score, parse_method, sparsify
from .analysis import (
    CentralityVector,
    approx_betweenness,
    avg_local_clustering,
    clustering_deviation,
    connected_components,
    degree_centrality,
    diameter_quotient,
    exact_betweenness,
    exact_diameter,
    largest_component_ratio,
    network_statistics,
    newly_isolated,
    pagerank,
    spearman_rho,
)
from .community import (
    CommunityMetrics,
    adjusted_rand,
    avg_conductance,
    avg_fragmentation,
    community_metrics,
    louvain,
    modularity,
    relative_conductance_change,
)
from .correlation import score_correlation_matrix
from .epidemics import EpidemicCurves, SeirParams, run_seir
from .generators import PlantedPartitionSpec, generate_gnp, generate_planted_partition
from .sweep import AnalysisReport, SweepConfig, aggregate_reports, run_sweep

__version__ = "0.1.0"
