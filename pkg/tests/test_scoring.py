import networkx as nx
import numpy as np
import pytest
from scipy.stats import rankdata

from backbone.errors import InvalidParameterError
from backbone.generators import generate_gnp
from backbone.graph import EdgeScore, Graph
from backbone.scoring import (
    ForestFireParams,
    algebraic_coordinates,
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


def neighbour_sets(g):
    return [set(g.neighbors(u).tolist()) for u in range(g.n)]


def brute_triangles(g):
    nbrs = neighbour_sets(g)
    return np.array([len(nbrs[u] & nbrs[v]) for u, v in g.edges().tolist()])


def brute_quadrangles(g):
    '''4-cycles u-v-x-y-u through every edge by enumeration.'''
    nbrs = neighbour_sets(g)
    counts = []
    for u, v in g.edges().tolist():
        q = 0
        for x in nbrs[v] - {u}:
            for y in nbrs[u] - {v}:
                if len({u, v, x, y}) == 4 and y in nbrs[x]:
                    q += 1
        counts.append(q)
    return np.array(counts)


def brute_prefix_jaccard(g, source):
    '''Materialise every pair of top-k prefixes.'''
    def ranked(u):
        nb = g.neighbors(u).tolist()
        vals = {w: source[g.edge_id(u, w)] for w in nb}
        return {w: 1 + sum(1 for x in nb if vals[x] > vals[w]) for w in nb}

    ranks = [ranked(u) for u in range(g.n)]
    out = []
    for u, v in g.edges().tolist():
        best = 0.0
        for k in range(1, max(g.degree(u), g.degree(v)) + 1):
            pu = {w for w, r in ranks[u].items() if r <= k}
            pv = {w for w, r in ranks[v].items() if r <= k}
            best = max(best, len(pu & pv) / len(pu | pv))
        out.append(best)
    return np.array(out)


# ---------------------------------------------------------------------------
# random edge


def test_random_edge_is_seeded(gnp_small):
    a = score_random_edge(gnp_small, seed=5)
    b = score_random_edge(gnp_small, seed=5)
    assert np.array_equal(a.values, b.values)
    assert a.method_tag == "re"
    assert np.all((a.values >= 0) & (a.values < 1))


def test_random_edge_on_edgeless_graph():
    assert len(score_random_edge(Graph.from_edges(4, []))) == 0


def test_random_edge_mean():
    g = Graph.from_edges(100001, np.column_stack((np.zeros(100000, int), np.arange(1, 100001))))
    assert 0.49 <= score_random_edge(g, seed=1).values.mean() <= 0.51


# ---------------------------------------------------------------------------
# triangles


def test_triangles_small_graphs(triangle):
    assert count_triangles(triangle).values.tolist() == [1, 1, 1]
    k4 = Graph.from_networkx(nx.complete_graph(4))
    assert count_triangles(k4).values.tolist() == [2] * 6
    p3 = Graph.from_networkx(nx.path_graph(3))
    assert count_triangles(p3).values.tolist() == [0, 0]


def test_triangles_match_enumeration():
    g = generate_gnp(200, 0.05, seed=3)
    t = count_triangles(g)
    assert np.array_equal(t.values, brute_triangles(g))
    total = sum(nx.triangles(g.to_networkx()).values()) // 3
    assert t.total == total
    assert t.per_node(g).tolist() == [nx.triangles(g.to_networkx())[v] for v in range(g.n)]


def test_triangles_bounded_by_degree(gnp_small):
    t = count_triangles(gnp_small).values
    deg = gnp_small.degrees
    assert np.all(t <= np.minimum(deg[gnp_small.heads], deg[gnp_small.tails]) - 1)


@pytest.mark.parametrize("workers", [2, 4, 8])
def test_triangles_independent_of_workers(random_graphs, workers):
    for g in random_graphs:
        assert np.array_equal(count_triangles(g, 1).values, count_triangles(g, workers).values)


# ---------------------------------------------------------------------------
# jaccard


def test_jaccard_on_triangle_and_star(triangle, star4):
    assert np.allclose(score_jaccard(triangle, count_triangles(triangle)).values, 1 / 3)
    assert np.all(score_jaccard(star4, count_triangles(star4)).values == 0)


def test_jaccard_matches_set_operations(gnp_small):
    g = gnp_small
    nbrs = neighbour_sets(g)
    expected = [len(nbrs[u] & nbrs[v]) / len(nbrs[u] | nbrs[v]) for u, v in g.edges().tolist()]
    assert np.allclose(score_jaccard(g, count_triangles(g)).values, expected)


# ---------------------------------------------------------------------------
# quadrangles


def test_quadrangles_on_c4():
    c4 = Graph.from_networkx(nx.cycle_graph(4))
    q = count_quadrangles(c4)
    assert q.per_edge.tolist() == [1, 1, 1, 1]
    assert q.per_node.tolist() == [2, 2, 2, 2]
    assert np.allclose(score_quadrilateral_embeddedness(c4, q).values, 0.5)


def test_quadrangles_on_tree():
    tree = Graph.from_networkx(nx.balanced_tree(2, 3))
    q = count_quadrangles(tree)
    assert not q.per_edge.any()
    assert np.all(score_quadrilateral_embeddedness(tree, q).values == 0)


def test_quadrangles_match_enumeration():
    g = generate_gnp(100, 0.08, seed=5)
    q = count_quadrangles(g)
    assert np.array_equal(q.per_edge, brute_quadrangles(g))
    for u in range(g.n):
        assert q.per_node[u] == q.per_edge[g.incident_edges(u)].sum()


def test_quadrilateral_embeddedness_in_unit_interval(gnp_small):
    values = score_quadrilateral_embeddedness(gnp_small, count_quadrangles(gnp_small)).values
    assert np.all((values >= 0) & (values <= 1))


# ---------------------------------------------------------------------------
# simmelian


def test_simmelian_on_k4_keeps_endpoints():
    k4 = Graph.from_networkx(nx.complete_graph(4))
    assert np.allclose(score_simmelian(k4, count_triangles(k4)).values, 0.5)


def test_simmelian_disjoint_neighbourhoods():
    g = Graph.from_networkx(nx.path_graph(4))
    s = score_simmelian(g, count_triangles(g))
    assert s.values[g.edge_id(1, 2)] == 0


def test_triadic_simmelian_matches_prefix_oracle():
    g = generate_gnp(60, 0.15, seed=2)
    t = count_triangles(g)
    score = score_simmelian(g, t)
    assert score.method_tag == "ts"
    assert np.allclose(score.values, brute_prefix_jaccard(g, t.values))


def test_quadrilateral_simmelian_matches_prefix_oracle():
    g = generate_gnp(50, 0.15, seed=8)
    q = score_quadrilateral_embeddedness(g, count_quadrangles(g))
    score = score_simmelian(g, q, workers=3)
    assert score.method_tag == "qls"
    assert np.allclose(score.values, brute_prefix_jaccard(g, q.values))


def test_simmelian_ignores_monotone_transforms(gnp_small):
    q = score_quadrilateral_embeddedness(gnp_small, count_quadrangles(gnp_small))
    shifted = EdgeScore(rankdata(q.values, method="dense"), "qle")
    assert np.array_equal(score_simmelian(gnp_small, q).values,
                          score_simmelian(gnp_small, shifted).values)


# ---------------------------------------------------------------------------
# edge forest fire


def test_forest_fire_params_validation():
    with pytest.raises(InvalidParameterError):
        ForestFireParams(p=1.0)
    with pytest.raises(InvalidParameterError):
        ForestFireParams(target_burn_ratio=0)


def test_forest_fire_single_edge():
    g = Graph.from_edges(2, [(0, 1)])
    score = score_edge_forest_fire(g, ForestFireParams(target_burn_ratio=1.0, seed=4))
    assert score.values[0] >= 1


def test_forest_fire_is_seeded(gnp_small):
    params = ForestFireParams(seed=9)
    a = score_edge_forest_fire(gnp_small, params, workers=1)
    b = score_edge_forest_fire(gnp_small, params, workers=1)
    assert np.array_equal(a.values, b.values)


@pytest.mark.parametrize("workers", [1, 3])
def test_forest_fire_reaches_target(gnp_small, workers):
    params = ForestFireParams(p=0.6, target_burn_ratio=2.0, seed=1)
    values = score_edge_forest_fire(gnp_small, params, workers).values
    assert values.sum() >= gnp_small.m * 2.0
    assert np.all(values >= 0)
    assert np.array_equal(values, np.round(values))


def test_forest_fire_without_spread_scores_zero(triangle):
    score = score_edge_forest_fire(triangle, ForestFireParams(p=0.0))
    assert score.method_tag == "eff"
    assert score.values.tolist() == [0.0, 0.0, 0.0]


def test_forest_fire_rejects_empty_graph():
    with pytest.raises(InvalidParameterError):
        score_edge_forest_fire(Graph.from_edges(0, []))


# ---------------------------------------------------------------------------
# algebraic distance


def test_algebraic_distance_on_k2_components():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert score_algebraic_distance(g, seed=3).values.tolist() == [1.0, 1.0]


def test_algebraic_distance_bridge_scores_lowest(two_cliques):
    score = score_algebraic_distance(two_cliques, seed=11).values
    bridge = two_cliques.edge_id(4, 5)
    assert score[bridge] == score.min()
    assert np.sum(score == score.min()) == 1


def test_algebraic_distance_range_and_seed(gnp_small):
    a = score_algebraic_distance(gnp_small, seed=2).values
    b = score_algebraic_distance(gnp_small, seed=2).values
    assert np.array_equal(a, b)
    assert a.min() == 0.0 and a.max() <= 1.0


def test_algebraic_coordinates_workers_agree(gnp_small):
    one = algebraic_coordinates(gnp_small, systems=5, iterations=7, seed=4, workers=1)
    four = algebraic_coordinates(gnp_small, systems=5, iterations=7, seed=4, workers=4)
    assert one.dimension == 5
    assert np.allclose(one.coordinates, four.coordinates, rtol=0, atol=1e-15)


def test_algebraic_coordinates_isolated_nodes_keep_values():
    g = Graph.from_edges(3, [(0, 1)])
    start = algebraic_coordinates(g, systems=3, iterations=0, seed=6).coordinates
    end = algebraic_coordinates(g, systems=3, iterations=4, seed=6).coordinates
    assert np.array_equal(start[2], end[2])


# ---------------------------------------------------------------------------
# local degree


def test_local_degree_keeps_hub_edges():
    # hub 0 with a=1, b=2, c=3 and the extra edge a-b
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    score = score_local_degree(g)
    assert score.values[g.edge_id(1, 2)] == 0.0
    for v in (1, 2, 3):
        assert score.values[g.edge_id(0, v)] == 1.0


def test_local_degree_on_star(star4):
    assert np.all(score_local_degree(star4).values == 1.0)


def test_local_degree_ignores_edge_order(gnp_small):
    pairs = gnp_small.edges()
    shuffled = pairs[np.random.default_rng(0).permutation(len(pairs))][:, ::-1]
    other = Graph.from_edges(gnp_small.n, shuffled)
    assert np.array_equal(score_local_degree(gnp_small).values, score_local_degree(other).values)


def test_every_scorer_is_deterministic(gnp_small):
    from backbone.methods import SCORER_TAGS, compute_score
    for tag in SCORER_TAGS:
        a = compute_score(gnp_small, tag, seed=7, workers=1)
        b = compute_score(gnp_small, tag, seed=7, workers=1)
        assert np.array_equal(a.values, b.values), tag
        assert len(a) == gnp_small.m


def test_jaccard_zero_without_triangles():
    g = Graph.from_networkx(nx.cycle_graph(5))
    assert not score_jaccard(g, count_triangles(g)).values.any()
