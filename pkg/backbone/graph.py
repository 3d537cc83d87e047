# -*- coding: utf-8 -*-
"""
--- Graph core ---
Immutable undirected graph in compressed sparse row form, plus the small
record types shared by every other module and the edge-list / ground-truth
file formats.

    indptr   0     2        5  6
    indices [1  2 |0  2  3 |0 ...]   neighbours of each node, sorted by id
    slots   [0  1 |0  2  3 |1 ...]   canonical edge id of each adjacency slot

Edge ids are assigned by sorting the unordered pairs {u, v} (u < v)
lexicographically, so they only depend on the edge set.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp

from .errors import InvalidParameterError, MalformedInputError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

NODES_HEADER = "# nodes:"


def _canonical_pairs(n: int, pairs) -> Tuple[np.ndarray, np.ndarray, int, int]:
    pairs = np.asarray(pairs, dtype=np.int64)
    if pairs.size == 0:
        pairs = pairs.reshape(0, 2)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise InvalidParameterError(
            f"edges must be an (m, 2) array of node pairs. Shape was: {pairs.shape}"
        )
    if len(pairs) and (pairs.min() < 0 or pairs.max() >= n):
        raise InvalidParameterError(f"edge endpoints must lie in [0, {n})")
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    proper = lo != hi
    self_loops = int(len(pairs) - proper.sum())
    if n == 0 or not proper.any():
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy(), self_loops, 0
    keys = np.unique(lo[proper] * n + hi[proper])
    duplicates = int(proper.sum() - len(keys))
    return keys // n, keys % n, self_loops, duplicates


@dataclass(frozen=True, eq=False)
class Graph:
    '''
    Undirected simple graph on nodes 0..n-1.

    Build it with Graph.from_edges; the arrays are read-only afterwards and
    the instance can be shared freely between threads.
    '''
    n: int
    indptr: np.ndarray
    indices: np.ndarray
    slot_edges: np.ndarray
    heads: np.ndarray
    tails: np.ndarray

    def __post_init__(self):
        for arr in (self.indptr, self.indices, self.slot_edges, self.heads, self.tails):
            arr.flags.writeable = False

    @classmethod
    def from_edges(cls, n: int, pairs) -> "Graph":
        '''
        Build a graph from node pairs.

        Self-loops are dropped and parallel edges merged.

        Parameters
        ----------
        n : int
                Number of nodes
        pairs : array-like of shape (k, 2)
                Node pairs, endpoints in [0, n)

        Returns
        -------
        Graph
        '''
        if n < 0:
            raise InvalidParameterError(f"node count must be >= 0. It was: {n}")
        heads, tails, _, _ = _canonical_pairs(n, pairs)
        return cls._build(n, heads, tails)

    @classmethod
    def _build(cls, n: int, heads: np.ndarray, tails: np.ndarray) -> "Graph":
        m = len(heads)
        src = np.concatenate((heads, tails))
        dst = np.concatenate((tails, heads))
        eid = np.tile(np.arange(m, dtype=np.int64), 2)
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(
            int(n), indptr,
            np.ascontiguousarray(dst[order]),
            np.ascontiguousarray(eid[order]),
            np.ascontiguousarray(heads, dtype=np.int64),
            np.ascontiguousarray(tails, dtype=np.int64),
        )

    @classmethod
    def from_networkx(cls, G) -> "Graph":
        '''Node i of the result is the i-th node of G.nodes().'''
        index = {v: i for i, v in enumerate(G.nodes())}
        pairs = [(index[u], index[v]) for u, v in G.edges()]
        return cls.from_edges(len(index), pairs)

    def to_networkx(self):
        import networkx as nx
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(zip(self.heads.tolist(), self.tails.tolist()))
        return G

    @property
    def m(self) -> int:
        return len(self.heads)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.diff(self.indptr)
        deg.flags.writeable = False
        return deg

    @cached_property
    def slot_sources(self) -> np.ndarray:
        '''Owning node of every adjacency slot.'''
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        src.flags.writeable = False
        return src

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def incident_edges(self, u: int) -> np.ndarray:
        '''Edge ids aligned with neighbors(u).'''
        return self.slot_edges[self.indptr[u]:self.indptr[u + 1]]

    def edge_id(self, u: int, v: int) -> int:
        nb = self.neighbors(u)
        i = int(np.searchsorted(nb, v))
        if i < len(nb) and nb[i] == v:
            return int(self.slot_edges[self.indptr[u] + i])
        raise KeyError(f"no edge {{{u}, {v}}}")

    def has_edge(self, u: int, v: int) -> bool:
        try:
            self.edge_id(u, v)
        except KeyError:
            return False
        return True

    def edges(self) -> np.ndarray:
        '''(m, 2) array of endpoints, row i is edge id i.'''
        return np.column_stack((self.heads, self.tails))

    def adjacency_matrix(self, dtype=np.float64) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=dtype)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def same_structure(self, other: "Graph") -> bool:
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.slot_edges, other.slot_edges)
        )

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class NodeOrdering:
    rank: np.ndarray
    order: np.ndarray
    kind: str = "degree-ascending"


@dataclass(frozen=True, eq=False)
class EdgeScore:
    '''
    One real value per canonical edge id; higher means more important.
    '''
    values: np.ndarray
    method_tag: str

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise InvalidParameterError("edge scores must be one-dimensional")
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError(f"edge scores of '{self.method_tag}' must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def check_graph(self, g: Graph) -> None:
        if len(self.values) != g.m:
            raise InvalidParameterError(
                f"score '{self.method_tag}' has {len(self.values)} values, graph has {g.m} edges"
            )


@dataclass(frozen=True, eq=False)
class Partition:
    '''
    Community id per node, ids dense in [0, k).
    '''
    assignment: np.ndarray

    def __post_init__(self):
        assignment = np.array(self.assignment, dtype=np.int64)
        if assignment.ndim != 1:
            raise InvalidParameterError("partition assignment must be one-dimensional")
        if len(assignment):
            present = np.unique(assignment)
            if present[0] != 0 or present[-1] != len(present) - 1:
                raise InvalidParameterError("community ids must be dense in [0, k)")
        assignment.flags.writeable = False
        object.__setattr__(self, "assignment", assignment)

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        '''Relabel arbitrary labels to dense ids in order of first appearance.'''
        labels = np.asarray(labels)
        if len(labels) == 0:
            return cls(np.zeros(0, dtype=np.int64))
        _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
        remap = np.empty(len(first), dtype=np.int64)
        remap[np.argsort(first, kind="stable")] = np.arange(len(first))
        return cls(remap[inverse.ravel()])

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def k(self) -> int:
        return int(self.assignment.max()) + 1 if len(self.assignment) else 0

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == c)

    def communities(self):
        order = np.argsort(self.assignment, kind="stable")
        bounds = np.cumsum(self.sizes())[:-1]
        return np.split(order, bounds)

    def check_graph(self, g: Graph) -> None:
        if self.n != g.n:
            raise InvalidParameterError(
                f"partition covers {self.n} nodes, graph has {g.n}"
            )


# ---------------------------------------------------------------------------
# node ordering


def degree_ordering(g: Graph) -> NodeOrdering:
    '''Nodes by ascending degree, ties by ascending id.'''
    order = np.lexsort((np.arange(g.n), g.degrees))
    rank = np.empty(g.n, dtype=np.int64)
    rank[order] = np.arange(g.n)
    return NodeOrdering(rank=rank, order=order)


def forward_neighbors(g: Graph, o: NodeOrdering, u: int) -> np.ndarray:
    nb = g.neighbors(u)
    return nb[o.rank[nb] > o.rank[u]]


def forward_adjacency(g: Graph, o: NodeOrdering) -> Tuple[np.ndarray, np.ndarray]:
    '''
    CSR arrays of N+(u) for every u, each list sorted by node id.
    '''
    keep = o.rank[g.indices] > o.rank[g.slot_sources]
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(g.slot_sources[keep], minlength=g.n), out=indptr[1:])
    return indptr, g.indices[keep]


def subgraph_by_mask(g: Graph, keep) -> Tuple[Graph, np.ndarray]:
    '''
    Keep the masked edges and every node.

    Parameters
    ----------
    g : Graph
    keep : bool array of length m

    Returns
    -------
    (subgraph, edge_map) where edge_map[old_id] is the new id or -1
    '''
    keep = np.asarray(keep, dtype=bool)
    if keep.shape != (g.m,):
        raise InvalidParameterError(
            f"mask length must equal the edge count {g.m}. It was: {keep.shape}"
        )
    edge_map = np.full(g.m, -1, dtype=np.int64)
    edge_map[keep] = np.arange(int(keep.sum()), dtype=np.int64)
    # a subset of a lexicographically sorted pair list is still sorted
    sub = Graph._build(g.n, g.heads[keep], g.tails[keep])
    return sub, edge_map


# ---------------------------------------------------------------------------
# files


@dataclass(frozen=True, eq=False)
class LoadedGraph:
    '''
    A graph read from disk together with its original node labels.

    labels[i] is the id node i carried in the file.
    '''
    graph: Graph
    labels: np.ndarray
    self_loops: int = 0
    duplicates: int = 0
    path: Optional[str] = None
    index: Dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            object.__setattr__(
                self, "index", {int(lab): i for i, lab in enumerate(self.labels.tolist())}
            )


def _data_lines(path: PathLike):
    lineno = 0
    with open(path, "r", encoding="utf-8") as fh:
        try:
            for lineno, line in enumerate(fh, 1):
                text = line.strip()
                if not text:
                    continue
                if text.startswith("#"):
                    yield lineno, None, text
                    continue
                yield lineno, text.split(), text
        except UnicodeDecodeError as err:
            raise MalformedInputError(f"not valid UTF-8 text: {err.reason}", str(path),
                                      lineno + 1) from None


def _declared_nodes(text: str) -> Optional[int]:
    '''N for a "# nodes: N" header, None for any other comment.'''
    rest = text[len(NODES_HEADER):].strip()
    if not text.startswith(NODES_HEADER) or not (rest.isascii() and rest.isdigit()):
        return None
    return int(rest)


def _parse_id(token: str, path, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise MalformedInputError(f"not an integer node id: {token!r}", str(path), lineno) from None
    if value < 0:
        raise MalformedInputError(f"negative node id: {value}", str(path), lineno)
    return value


def load_edge_list(path: PathLike) -> LoadedGraph:
    '''
    Read a whitespace separated edge list.

    One edge per line, two non-negative integer tokens. Lines starting with
    '#' are comments; a comment of the form "# nodes: N" declares ids 0..N-1
    as nodes even when they have no edges. Node ids are compacted to
    [0, n) in ascending order of the original id.

    Parameters
    ----------
    path : str | Path
            File to read

    Returns
    -------
    LoadedGraph
    '''
    declared = 0
    pairs = []
    for lineno, tokens, text in _data_lines(path):
        if tokens is None:
            header = _declared_nodes(text)
            if header is not None:
                declared = header
            continue
        if len(tokens) != 2:
            raise MalformedInputError(
                f"expected two node ids, got {len(tokens)} tokens", str(path), lineno
            )
        pairs.append((_parse_id(tokens[0], path, lineno), _parse_id(tokens[1], path, lineno)))

    raw = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    labels = np.union1d(np.arange(declared, dtype=np.int64), raw.ravel())
    compact = np.searchsorted(labels, raw)
    heads, tails, self_loops, duplicates = _canonical_pairs(len(labels), compact)
    g = Graph._build(len(labels), heads, tails)
    if self_loops or duplicates:
        logger.warning(
            "%s: dropped %d self-loops and %d duplicate edges", path, self_loops, duplicates
        )
    logger.info("loaded %s: n=%d m=%d", path, g.n, g.m)
    return LoadedGraph(g, labels, self_loops, duplicates, str(path))


def write_edge_list(g: Graph, path: PathLike, labels: Optional[np.ndarray] = None) -> None:
    '''
    Write g as an edge list.

    Without labels the node count is recorded in a "# nodes:" header so that
    isolated nodes survive a round trip.
    '''
    with open(path, "w") as fh:
        if labels is None:
            fh.write(f"{NODES_HEADER} {g.n}\n")
            names = np.arange(g.n)
        else:
            names = np.asarray(labels)
        for u, v in zip(names[g.heads].tolist(), names[g.tails].tolist()):
            fh.write(f"{u} {v}\n")


def load_partition(path: PathLike, loaded: Optional[LoadedGraph] = None,
                   n: Optional[int] = None) -> Partition:
    '''
    Read a ground-truth file, one "node community" pair per line.

    Parameters
    ----------
    path : str | Path
            File to read
    loaded : LoadedGraph | None
            When given, node ids in the file are original labels of this
            graph and every one of its nodes must be listed.
            (default None)
    n : int | None
            Node count when node ids are already compact; defaults to the
            largest id plus one.

    Returns
    -------
    Partition
    '''
    nodes, comms, where = [], [], []
    for lineno, tokens, _ in _data_lines(path):
        if tokens is None:
            continue
        if len(tokens) != 2:
            raise MalformedInputError(
                f"expected 'node community', got {len(tokens)} tokens", str(path), lineno
            )
        node = _parse_id(tokens[0], path, lineno)
        if loaded is not None:
            if node not in loaded.index:
                raise MalformedInputError(f"unknown node {node}", str(path), lineno)
            node = loaded.index[node]
        nodes.append(node)
        comms.append(_parse_id(tokens[1], path, lineno))
        where.append(lineno)

    if loaded is not None:
        n = loaded.graph.n
    elif n is None:
        n = max(nodes) + 1 if nodes else 0
    labels = np.full(n, -1, dtype=np.int64)
    for node, comm, lineno in zip(nodes, comms, where):
        if node >= n:
            raise MalformedInputError(f"node {node} outside [0, {n})", str(path), lineno)
        if labels[node] != -1:
            raise MalformedInputError(f"node {node} listed twice", str(path), lineno)
        labels[node] = comm
    missing = np.flatnonzero(labels < 0)
    if len(missing):
        raise MalformedInputError(f"{len(missing)} nodes have no community, e.g. {missing[0]}", str(path))
    return Partition.from_labels(labels)


def write_partition(p: Partition, path: PathLike, labels: Optional[np.ndarray] = None) -> None:
    names = np.arange(p.n) if labels is None else np.asarray(labels)
    with open(path, "w") as fh:
        for node, comm in zip(names.tolist(), p.assignment.tolist()):
            fh.write(f"{node} {comm}\n")
