import networkx as nx
import pytest

from backbone.generators import generate_gnp
from backbone.graph import Graph


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path5():
    return Graph.from_networkx(nx.path_graph(5))


@pytest.fixture
def cycle6():
    return Graph.from_networkx(nx.cycle_graph(6))


@pytest.fixture
def star4():
    '''Centre 0 with leaves 1..4.'''
    return Graph.from_networkx(nx.star_graph(4))


@pytest.fixture
def two_cliques():
    '''Two K5 on 0..4 and 5..9 joined by the bridge {4, 5}.'''
    pairs = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    pairs += [(a + 5, b + 5) for a, b in pairs]
    pairs.append((4, 5))
    return Graph.from_edges(10, pairs)


@pytest.fixture
def gnp_small():
    return generate_gnp(60, 0.15, seed=3)


@pytest.fixture
def random_graphs():
    return [generate_gnp(40 + 5 * s, 0.12, seed=s) for s in range(20)]


@pytest.fixture
def write_lines(tmp_path):
    '''Write lines to a file under tmp_path and return its path.'''
    def write(name, lines):
        path = tmp_path / name
        path.write_text("".join(f"{line}\n" for line in lines))
        return path
    return write
