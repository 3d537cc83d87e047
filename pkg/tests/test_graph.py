import networkx as nx
import numpy as np
import pytest

from backbone.errors import InvalidParameterError, MalformedInputError
from backbone.graph import (
    EdgeScore,
    Graph,
    Partition,
    degree_ordering,
    forward_adjacency,
    forward_neighbors,
    load_edge_list,
    load_partition,
    subgraph_by_mask,
    write_edge_list,
    write_partition,
)


def test_edges_are_canonical_and_sorted():
    g = Graph.from_edges(4, [(3, 1), (0, 2), (1, 0), (2, 0), (2, 2)])
    assert g.m == 3
    assert g.edges().tolist() == [[0, 1], [0, 2], [1, 3]]
    assert g.edge_id(3, 1) == g.edge_id(1, 3) == 2


def test_adjacency_is_symmetric(gnp_small):
    g = gnp_small
    for u in range(g.n):
        nb = g.neighbors(u)
        assert np.all(np.diff(nb) > 0)
        for v, e in zip(nb, g.incident_edges(u)):
            assert u in g.neighbors(v)
            assert g.edge_id(v, u) == e
            assert sorted((g.heads[e], g.tails[e])) == sorted((u, v))
    assert g.degrees.sum() == 2 * g.m


def test_missing_edge():
    g = Graph.from_edges(3, [(0, 1)])
    assert g.has_edge(1, 0)
    assert not g.has_edge(0, 2)
    with pytest.raises(KeyError):
        g.edge_id(0, 2)


def test_endpoint_out_of_range():
    with pytest.raises(InvalidParameterError):
        Graph.from_edges(2, [(0, 2)])


def test_arrays_are_read_only(triangle):
    with pytest.raises(ValueError):
        triangle.indices[0] = 2


def test_networkx_interop(gnp_small):
    G = gnp_small.to_networkx()
    assert G.number_of_nodes() == gnp_small.n
    assert G.number_of_edges() == gnp_small.m
    assert Graph.from_networkx(G).same_structure(gnp_small)


def test_degree_ordering_breaks_ties_by_id(star4):
    o = degree_ordering(star4)
    assert o.order.tolist() == [1, 2, 3, 4, 0]
    assert o.rank[0] == 4
    assert forward_neighbors(star4, o, 0).tolist() == []
    assert forward_neighbors(star4, o, 3).tolist() == [0]


def test_forward_adjacency_orients_every_edge_once(gnp_small):
    o = degree_ordering(gnp_small)
    indptr, indices = forward_adjacency(gnp_small, o)
    assert len(indices) == gnp_small.m
    for u in range(gnp_small.n):
        assert indices[indptr[u]:indptr[u + 1]].tolist() == forward_neighbors(gnp_small, o, u).tolist()


def test_subgraph_by_mask_keeps_nodes_and_maps_ids(cycle6):
    keep = np.array([True, False, True, True, False, True])
    sub, edge_map = subgraph_by_mask(cycle6, keep)
    assert sub.n == 6
    assert sub.m == 4
    assert edge_map.tolist() == [0, -1, 1, 2, -1, 3]
    for old, new in enumerate(edge_map):
        if new >= 0:
            assert (cycle6.heads[old], cycle6.tails[old]) == (sub.heads[new], sub.tails[new])


def test_subgraph_mask_length_checked(cycle6):
    with pytest.raises(InvalidParameterError):
        subgraph_by_mask(cycle6, [True, False])


def test_edge_score_validation():
    with pytest.raises(InvalidParameterError):
        EdgeScore(np.array([1.0, np.nan]), "x")
    score = EdgeScore([1, 2], "x")
    assert score.values.dtype == np.float64
    with pytest.raises(InvalidParameterError):
        score.check_graph(Graph.from_edges(3, [(0, 1)]))


def test_partition_from_labels():
    p = Partition.from_labels([7, 7, 3, 9, 3])
    assert p.assignment.tolist() == [0, 0, 1, 2, 1]
    assert p.k == 3
    assert p.sizes().tolist() == [2, 2, 1]
    assert p.members(1).tolist() == [2, 4]
    assert [c.tolist() for c in p.communities()] == [[0, 1], [2, 4], [3]]


def test_partition_needs_dense_ids():
    with pytest.raises(InvalidParameterError):
        Partition([0, 2])


def test_load_edge_list_compacts_labels(write_lines):
    path = write_lines("g.txt", ["# a comment", "10 20", "", "20 30", "30 10", "20 10", "30 30"])
    loaded = load_edge_list(path)
    assert loaded.labels.tolist() == [10, 20, 30]
    assert loaded.graph.m == 3
    assert loaded.self_loops == 1
    assert loaded.duplicates == 1
    assert loaded.index[30] == 2


def test_load_edge_list_node_header(write_lines):
    loaded = load_edge_list(write_lines("g.txt", ["# nodes: 5", "0 1"]))
    assert loaded.graph.n == 5
    assert loaded.graph.degrees.tolist() == [1, 1, 0, 0, 0]


@pytest.mark.parametrize("comment", ["# nodes: 3 edges: 2", "# nodes: many", "# nodes:"])
def test_loose_node_comments_are_ignored(write_lines, comment):
    loaded = load_edge_list(write_lines("g.txt", [comment, "0 1", "1 2"]))
    assert loaded.graph.n == 3
    assert loaded.graph.m == 2


def test_load_edge_list_rejects_invalid_utf8(tmp_path):
    path = tmp_path / "binary.txt"
    path.write_bytes(b"0 1\n\xff\xfe 2\n")
    with pytest.raises(MalformedInputError) as info:
        load_edge_list(path)
    assert info.value.path == str(path)


@pytest.mark.parametrize("line", ["1 2 3", "1", "a b", "1 -2"])
def test_load_edge_list_rejects_malformed_lines(write_lines, line):
    path = write_lines("bad.txt", ["0 1", line])
    with pytest.raises(MalformedInputError) as info:
        load_edge_list(path)
    assert info.value.lineno == 2
    assert info.value.path == str(path)


def test_written_edge_list_loads_back(tmp_path):
    g = Graph.from_edges(6, [(0, 1), (1, 2), (4, 0)])
    write_edge_list(g, tmp_path / "out.txt")
    assert load_edge_list(tmp_path / "out.txt").graph.same_structure(g)


def test_partition_file_with_original_labels(write_lines):
    loaded = load_edge_list(write_lines("g.txt", ["10 20", "20 30"]))
    p = load_partition(write_lines("truth.txt", ["30 5", "10 1", "20 1"]), loaded)
    assert p.assignment.tolist() == [0, 0, 1]


def test_partition_file_round_trip(tmp_path):
    p = Partition([0, 1, 1, 2, 0])
    write_partition(p, tmp_path / "truth.txt")
    assert load_partition(tmp_path / "truth.txt").assignment.tolist() == p.assignment.tolist()


@pytest.mark.parametrize("lines", [["0 1", "0 2", "1 1"], ["0 1", "2 1"], ["0 1", "1 x"]])
def test_partition_file_errors(write_lines, lines):
    with pytest.raises(MalformedInputError):
        load_partition(write_lines("truth.txt", lines), n=3)


def test_partition_file_unknown_label(write_lines):
    loaded = load_edge_list(write_lines("g.txt", ["10 20"]))
    with pytest.raises(MalformedInputError):
        load_partition(write_lines("truth.txt", ["10 0", "20 0", "99 1"]), loaded)
