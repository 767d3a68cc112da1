import networkx as nx
import pytest

from entities.config import SolverConfig
from entities.graph import Graph


def FromNetworkx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G, ordering='sorted')
    return Graph.FromEdges(G.number_of_nodes(), G.edges())


def Complete(n):
    return FromNetworkx(nx.complete_graph(n))


def Cycle(n):
    return FromNetworkx(nx.cycle_graph(n))


def Path(n):
    return FromNetworkx(nx.path_graph(n))


def Star(leaves):
    return FromNetworkx(nx.star_graph(leaves))


def Random(n, seed, probability=0.4):
    return FromNetworkx(nx.gnp_random_graph(n, probability, seed=seed))


def Structured():
    return {
        'K3': Complete(3), 'K4': Complete(4), 'K5': Complete(5),
        'C4': Cycle(4), 'C5': Cycle(5), 'C7': Cycle(7),
        'P3': Path(3), 'P4': Path(4), 'star4': Star(4),
        'petersen': FromNetworkx(nx.petersen_graph()),
    }


def Corpus(random_graphs=6):
    corpus = Structured()
    for seed in range(random_graphs):
        corpus[f'gnp{seed}'] = Random(6 + seed % 4, seed)
    return corpus


@pytest.fixture
def fast_config():
    return SolverConfig(restarts=3, max_iters=3000)


@pytest.fixture
def edge_file(tmp_path):
    def Write(text, name='graph.txt'):
        path = tmp_path / name
        path.write_text(text)
        return path
    return Write


def ErdosRenyi(count=50, smallest=5, largest=12):
    return {f'er{seed}': Random(smallest + seed % (largest - smallest + 1), seed) for seed in range(count)}
