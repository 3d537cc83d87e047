# -*- coding: utf-8 -*-
"""
--- Epidemics ---
Discrete-time SEIR outbreaks on a graph.

Every step is synchronous: the nodes infectious at the end of step t-1
expose their susceptible neighbours, each contact an independent trial,
and the exposures take effect at step t. A node turns infectious `latency`
steps after exposure and is removed `infectious_period` steps later.

    S --(contact, p)--> E --(latency)--> I --(infectious_period)--> R
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from .errors import InvalidParameterError
from .graph import Graph
from .parallel import map_chunks, spawn_generators

logger = logging.getLogger(__name__)

STATES = ("S", "E", "I", "R")
SUSCEPTIBLE, EXPOSED, INFECTIOUS, REMOVED = range(4)


@dataclass(frozen=True)
class SeirParams:
    latency: int = 2
    infectious_period: int = 9
    transmission_prob: float = 0.1
    runs: int = 50
    seed: Optional[int] = 0

    def __post_init__(self):
        if self.latency < 0:
            raise InvalidParameterError(f"latency must be >= 0. It was: {self.latency}")
        if self.infectious_period < 1:
            raise InvalidParameterError(
                f"infectious_period must be >= 1. It was: {self.infectious_period}"
            )
        if not 0.0 <= self.transmission_prob <= 1.0:
            raise InvalidParameterError(
                f"transmission_prob must be in [0, 1]. It was: {self.transmission_prob}"
            )
        if self.runs < 1:
            raise InvalidParameterError(f"runs must be >= 1. It was: {self.runs}")


@dataclass(frozen=True, eq=False)
class EpidemicCurves:
    '''
    runs : int array (runs, steps, 4) of S, E, I, R counts; runs that ended
           early repeat their terminal state
    median, std : float arrays (steps, 4) across runs
    lengths : number of recorded steps of every run before padding
    '''
    runs: np.ndarray
    median: np.ndarray
    std: np.ndarray
    lengths: np.ndarray

    @property
    def steps(self) -> int:
        return self.runs.shape[1]

    def final_median(self, state: str = "R") -> float:
        return float(self.median[-1, STATES.index(state)])

    def padded(self, steps: int) -> "EpidemicCurves":
        '''Extend every series to `steps` entries with its terminal state.'''
        if steps <= self.steps:
            return self
        extra = steps - self.steps

        def pad(a):
            return np.concatenate([a, np.repeat(a[..., -1:, :], extra, axis=-2)], axis=-2)

        return EpidemicCurves(pad(self.runs), pad(self.median), pad(self.std), self.lengths)

    def to_frame(self, prefix: str = "") -> pd.DataFrame:
        frame = pd.DataFrame({"step": np.arange(self.steps)})
        for k, s in enumerate(STATES):
            frame[f"{prefix}{s}_med"] = self.median[:, k]
        for k, s in enumerate(STATES):
            frame[f"{prefix}{s}_std"] = self.std[:, k]
        return frame


def _simulate(g: Graph, params: SeirParams, rng: np.random.Generator) -> np.ndarray:
    n = g.n
    state = np.full(n, SUSCEPTIBLE, dtype=np.int8)
    entered = np.zeros(n, dtype=np.int64)
    indptr, indices = g.indptr, g.indices

    def progress(t):
        ready = (state == EXPOSED) & (t - entered >= params.latency)
        state[ready] = INFECTIOUS
        entered[ready] = t
        done = (state == INFECTIOUS) & (t - entered >= params.infectious_period)
        state[done] = REMOVED
        entered[done] = t

    state[rng.integers(n)] = EXPOSED
    progress(0)
    series = [np.bincount(state, minlength=4)]
    t = 0
    while series[-1][EXPOSED] or series[-1][INFECTIOUS]:
        t += 1
        spreaders = np.flatnonzero(state == INFECTIOUS)
        if len(spreaders):
            contacts = np.concatenate([indices[indptr[u]:indptr[u + 1]] for u in spreaders])
            contacts = contacts[state[contacts] == SUSCEPTIBLE]
            hit = np.unique(contacts[rng.random(len(contacts)) < params.transmission_prob])
            state[hit] = EXPOSED
            entered[hit] = t
        progress(t)
        series.append(np.bincount(state, minlength=4))
    return np.array(series, dtype=np.int64)


def run_seir(g: Graph, params: Optional[SeirParams] = None,
             workers: Optional[int] = None) -> EpidemicCurves:
    '''
    Run params.runs independent outbreaks and aggregate their curves.

    Run r draws from the r-th stream spawned from params.seed, so results
    do not depend on the worker count.

    Parameters
    ----------
    g : Graph
            At least one node
    params : SeirParams | None
            Default SeirParams() when None
    workers : int | None
            Threads sharing the runs (default None)

    Returns
    -------
    EpidemicCurves
    '''
    params = params or SeirParams()
    if g.n == 0:
        raise InvalidParameterError("cannot simulate an outbreak on an empty graph")
    rngs = spawn_generators(params.seed, params.runs)

    def work(start, stop):
        return [_simulate(g, params, rngs[r]) for r in range(start, stop)]

    series: List[np.ndarray] = [s for chunk in map_chunks(work, params.runs, workers) for s in chunk]
    lengths = np.array([len(s) for s in series], dtype=np.int64)
    steps = int(lengths.max())
    runs = np.stack([
        np.concatenate([s, np.repeat(s[-1:], steps - len(s), axis=0)]) for s in series
    ])
    logger.info("seir: %d runs on %d nodes, longest outbreak %d steps",
                params.runs, g.n, steps - 1)
    return EpidemicCurves(runs, np.median(runs, axis=0), runs.std(axis=0), lengths)


def side_by_side(curves: Dict[str, EpidemicCurves]) -> pd.DataFrame:
    '''
    One table with the aggregated curves of several graphs, columns
    prefixed by the dictionary keys, shorter curves padded.
    '''
    steps = max(c.steps for c in curves.values())
    frames = [c.padded(steps).to_frame(f"{label}_") for label, c in curves.items()]
    table = frames[0]
    for frame in frames[1:]:
        table = table.merge(frame, on="step")
    return table
