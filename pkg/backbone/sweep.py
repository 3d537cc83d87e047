# -*- coding: utf-8 -*-
"""
--- Sweep ---
Sparsify one or more networks with every requested method at every ratio
and compare each backbone with its original.

Per network the baselines (largest component, diameter, clustering,
centralities, reference partition) are computed once. Per method the edge
score is computed once and reused for all ratios; only this scoring step is
timed.

Output files in the output directory:

    report.csv / report.json   one row per (network, method, ratio)
    timing.csv                 scoring seconds per (network, method)
    summary.csv                mean and std over networks per (method, ratio)
"""
import logging
import time
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from . import analysis, community
from .errors import InvalidParameterError, UndefinedMeasureError
from .filtering import filter_by_ratio, localize
from .generators import PlantedPartitionSpec, generate_planted_partition
from .graph import EdgeScore, Graph, Partition, load_edge_list, load_partition
from .methods import Scorer, parse_method
from .scoring import ForestFireParams

logger = logging.getLogger(__name__)

MEASURES = ("components", "diameter", "clustering", "centrality", "communities", "isolated")


def default_ratios() -> List[float]:
    '''0.05, 0.10, ..., 1.00'''
    return [round(0.05 * i, 2) for i in range(1, 21)]


@dataclass
class SweepConfig:
    '''
    Parameters
    ----------
    inputs : sequence of str
            Edge list files; mutually exclusive with `generate`
    generate : PlantedPartitionSpec | None
            Generate `repeats` planted partition graphs with seeds
            generate.seed, generate.seed + 1, ...
    ground_truth : str | None
            Reference partition file for a single input
    methods : sequence of str
            Method tags, optionally 'local:' prefixed
    ratios : sequence of float
            Kept edge ratios; stored sorted and without duplicates
    seed : int
            Scoring, tie-breaking, Louvain and betweenness seed
    measures : frozenset of str
            Subset of MEASURES to evaluate
    out : str | None
            Output directory, nothing is written when None
    '''
    inputs: Sequence[str] = ()
    generate: Optional[PlantedPartitionSpec] = None
    repeats: int = 1
    ground_truth: Optional[str] = None
    methods: Sequence[str] = ("re",)
    ratios: Sequence[float] = field(default_factory=default_ratios)
    seed: int = 0
    measures: FrozenSet[str] = frozenset(MEASURES)
    betweenness_samples: int = 16
    forest_fire: ForestFireParams = field(default_factory=ForestFireParams)
    out: Optional[str] = None
    workers: Optional[int] = None

    def __post_init__(self):
        if bool(self.inputs) == (self.generate is not None):
            raise InvalidParameterError("give either input files or a generator spec")
        if self.ground_truth and len(self.inputs) != 1:
            raise InvalidParameterError("a ground-truth file needs exactly one input")
        if self.repeats < 1:
            raise InvalidParameterError(f"repeats must be >= 1. It was: {self.repeats}")
        if not self.methods:
            raise InvalidParameterError("at least one method is required")
        self.methods = [parse_method(m).tag for m in self.methods]
        ratios = sorted(set(float(r) for r in self.ratios))
        if not ratios:
            raise InvalidParameterError("at least one ratio is required")
        if ratios[0] < 0.0 or ratios[-1] > 1.0:
            raise InvalidParameterError(f"ratios must lie in [0, 1]. They were: {ratios}")
        self.ratios = ratios
        unknown = set(self.measures) - set(MEASURES)
        if unknown:
            raise InvalidParameterError(
                f"unknown measures: {', '.join(sorted(unknown))}. Known: {', '.join(MEASURES)}"
            )
        self.measures = frozenset(self.measures)


@dataclass
class AnalysisReport:
    '''One sweep cell. Undefined or disabled measures are NaN.'''
    network: str
    method: str
    local: bool
    ratio: float
    kept_edges: int
    largest_component_ratio: float = np.nan
    diameter_quotient: float = np.nan
    clustering_deviation: float = np.nan
    rho_degree: float = np.nan
    rho_pagerank: float = np.nan
    rho_betweenness: float = np.nan
    avg_conductance: float = np.nan
    conductance_change: float = np.nan
    avg_fragmentation: float = np.nan
    ari: float = np.nan
    newly_isolated: float = np.nan
    scoring_seconds: float = np.nan


REPORT_COLUMNS = tuple(f.name for f in fields(AnalysisReport))
KEY_COLUMNS = ("network", "method", "local", "ratio")


def _undefined_as_nan(func: Callable[[], float], label: str) -> float:
    try:
        return float(func())
    except UndefinedMeasureError as err:
        logger.debug("%s undefined: %s", label, err)
        return np.nan


class _Baseline:
    '''Properties of the original graph shared by every cell of a network.'''

    def __init__(self, g: Graph, reference: Optional[Partition], cfg: SweepConfig):
        self.graph = g
        measures = cfg.measures
        if "diameter" in measures:
            self.diameter = _undefined_as_nan(lambda: analysis.exact_diameter(g), "diameter")
        if "clustering" in measures:
            self.clustering = analysis.avg_local_clustering(g, cfg.workers)
        if "centrality" in measures:
            self.degree = analysis.degree_centrality(g)
            self.pagerank = analysis.pagerank(g)
            self.betweenness = analysis.approx_betweenness(
                g, cfg.betweenness_samples, cfg.seed
            )
        if "communities" in measures:
            self.reference = reference if reference is not None else community.louvain(g, cfg.seed)
            logger.info("reference partition: %d communities%s", self.reference.k,
                        " (ground truth)" if reference is not None else "")


def _evaluate(base: _Baseline, sparse: Graph, row: AnalysisReport, cfg: SweepConfig) -> None:
    g = base.graph
    measures = cfg.measures
    nan = _undefined_as_nan
    if "components" in measures:
        row.largest_component_ratio = nan(
            lambda: analysis.largest_component_ratio(sparse, g), "largest component ratio"
        )
    if "diameter" in measures:
        row.diameter_quotient = nan(
            lambda: base.diameter / analysis.exact_diameter(sparse), "diameter quotient"
        )
    if "clustering" in measures:
        row.clustering_deviation = analysis.avg_local_clustering(sparse, cfg.workers) - base.clustering
    if "centrality" in measures:
        row.rho_degree = nan(
            lambda: analysis.spearman_rho(analysis.degree_centrality(sparse), base.degree), "rho degree"
        )
        row.rho_pagerank = nan(
            lambda: analysis.spearman_rho(analysis.pagerank(sparse), base.pagerank), "rho pagerank"
        )
        row.rho_betweenness = nan(
            lambda: analysis.spearman_rho(
                analysis.approx_betweenness(sparse, cfg.betweenness_samples, cfg.seed),
                base.betweenness,
            ),
            "rho betweenness",
        )
    if "communities" in measures:
        metrics = community.community_metrics(sparse, base.reference, cfg.seed, g_orig=g)
        row.avg_conductance = metrics.avg_conductance
        row.conductance_change = metrics.conductance_change
        row.avg_fragmentation = metrics.avg_fragmentation
        row.ari = metrics.ari_vs_reference
    if "isolated" in measures:
        row.newly_isolated = analysis.newly_isolated(sparse, g)


def _networks(cfg: SweepConfig) -> Iterator[Tuple[str, Graph, Optional[Partition]]]:
    if cfg.generate is not None:
        for i in range(cfg.repeats):
            spec = replace(cfg.generate, seed=cfg.generate.seed + i)
            g, truth = generate_planted_partition(spec)
            yield f"planted-{spec.seed}", g, truth
        return
    for path in cfg.inputs:
        loaded = load_edge_list(path)
        truth = load_partition(cfg.ground_truth, loaded) if cfg.ground_truth else None
        yield Path(path).stem, loaded.graph, truth


def _timed_scores(g: Graph, cfg: SweepConfig) -> Iterator[Tuple[str, EdgeScore, float]]:
    '''(tag, score, seconds) per method; raw scores are shared by a base and its local variant.'''
    raw: Dict[str, Tuple[EdgeScore, float]] = {}
    for tag in cfg.methods:
        spec = parse_method(tag)
        if spec.base not in raw:
            scorer = Scorer(g, cfg.seed, cfg.workers, cfg.forest_fire)
            start = time.perf_counter()
            score = scorer.raw(spec.base)
            raw[spec.base] = (score, time.perf_counter() - start)
        score, seconds = raw[spec.base]
        if spec.local:
            start = time.perf_counter()
            score = localize(g, score)
            seconds += time.perf_counter() - start
        logger.info("scored %s in %.3f s", tag, seconds)
        yield tag, score, seconds


def sweep_network(name: str, g: Graph, reference: Optional[Partition],
                  cfg: SweepConfig) -> Tuple[List[AnalysisReport], List[dict]]:
    '''Report rows and timing rows of one network.'''
    base = _Baseline(g, reference, cfg)
    rows, timing = [], []
    for tag, score, seconds in _timed_scores(g, cfg):
        timing.append({"network": name, "method": tag, "seconds": seconds})
        for ratio in cfg.ratios:
            result = filter_by_ratio(g, score, ratio, tiebreak_seed=cfg.seed)
            row = AnalysisReport(name, tag, parse_method(tag).local, ratio, result.kept,
                                 scoring_seconds=seconds)
            _evaluate(base, result.graph, row, cfg)
            rows.append(row)
    return rows, timing


def reports_to_frame(rows: Sequence[AnalysisReport]) -> pd.DataFrame:
    return pd.DataFrame([asdict(r) for r in rows], columns=list(REPORT_COLUMNS))


def aggregate_reports(frame: pd.DataFrame) -> pd.DataFrame:
    '''
    Mean and standard deviation of every measure per (method, ratio) over
    the networks of a sweep; columns '<measure>_mean' and '<measure>_std'.
    '''
    values = [c for c in REPORT_COLUMNS if c not in KEY_COLUMNS]
    grouped = frame.groupby(["method", "local", "ratio"], sort=False)[values]
    summary = grouped.agg(["mean", "std"])
    summary.columns = [f"{col}_{stat}" for col, stat in summary.columns]
    summary.insert(0, "networks", grouped.size())
    return summary.reset_index()


def write_reports(frame: pd.DataFrame, timing: pd.DataFrame, out: str) -> None:
    directory = Path(out)
    directory.mkdir(parents=True, exist_ok=True)
    frame.to_csv(directory / "report.csv", index=False, na_rep="")
    frame.to_json(directory / "report.json", orient="records", indent=2)
    timing.to_csv(directory / "timing.csv", index=False)
    aggregate_reports(frame).to_csv(directory / "summary.csv", index=False, na_rep="")
    logger.info("wrote %d report rows to %s", len(frame), directory)


def run_sweep(cfg: SweepConfig) -> List[AnalysisReport]:
    '''
    Run the whole sweep and, when cfg.out is set, write the report files.

    Returns
    -------
    list of AnalysisReport, networks x methods x ratios rows in that order
    '''
    rows: List[AnalysisReport] = []
    timing: List[dict] = []
    for name, g, reference in _networks(cfg):
        logger.info("sweeping %s (n=%d, m=%d)", name, g.n, g.m)
        net_rows, net_timing = sweep_network(name, g, reference, cfg)
        rows.extend(net_rows)
        timing.extend(net_timing)
    if cfg.out is not None:
        write_reports(reports_to_frame(rows),
                      pd.DataFrame(timing, columns=["network", "method", "seconds"]), cfg.out)
    return rows
