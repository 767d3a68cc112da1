from fractions import Fraction

import networkx as nx
import pytest

from entities.errors import ContractViolation, ParseError
from entities.graph import (
    Connectivity, Graph, PairNumerator, ParseEdgeList, PsiOfPair, RemoveEdges,
    SignedIndicator, SubsetEdgeCounts, VertexSubsetPair,
)
from mechanics.rng import SplitMix64

from conftest import Complete, Corpus, Cycle, Path


def test_parse_triangle():
    g = ParseEdgeList("0 1\n1 2\n2 0")
    assert g.n == 3 and g.m == 3
    assert g.IsComplete() and g.IsOddCycle()


def test_parse_declared_count_and_comments():
    g = ParseEdgeList("# a comment\nn 4\n\n0 1\n# another\n")
    assert g.n == 4 and g.m == 1
    assert g.degrees == (1, 1, 0, 0)


def test_parse_collapses_duplicates():
    g = ParseEdgeList("0 1\n0 1\n1 0")
    assert g.edges == ((0, 1),)


@pytest.mark.parametrize("text, line", [
    ("0 1\n1 x", 2),
    ("0 0", 1),
    ("n 3\n0 3", 2),
    ("0 1\nn 3", 2),
    ("n 0", 1),
    ("0 1 2", 1),
    ("-1 2", 1),
    ("", None),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as error:
        ParseEdgeList(text)
    assert error.value.line == line


def test_graph_invariants():
    for g in Corpus().values():
        assert sum(g.degrees) == 2 * g.m
        for i, neighbours in enumerate(g.adjacency):
            assert list(neighbours) == sorted(neighbours)
            assert all(i in g.adjacency[j] for j in neighbours)


def test_from_edges_rejects_bad_input():
    with pytest.raises(ContractViolation):
        Graph.FromEdges(0, [])
    with pytest.raises(ContractViolation):
        Graph.FromEdges(2, [(1, 1)])
    with pytest.raises(ContractViolation):
        Graph.FromEdges(2, [(0, 2)])


def test_subset_edge_counts():
    assert SubsetEdgeCounts(Complete(3), VertexSubsetPair({0}, {1})) == (0, 0, 2)
    assert SubsetEdgeCounts(Cycle(5), VertexSubsetPair({0, 2}, {1, 3})) == (0, 0, 2)
    assert SubsetEdgeCounts(Cycle(5), VertexSubsetPair(set(), set())) == (0, 0, 0)


def test_overlapping_pair_is_rejected():
    with pytest.raises(ContractViolation):
        VertexSubsetPair({0, 1}, {1, 2})


def test_psi_of_pair():
    assert PsiOfPair(Complete(3), VertexSubsetPair({0}, {1})) == 1
    assert PsiOfPair(Cycle(5), VertexSubsetPair({0, 2}, {1, 3})) == Fraction(1, 2)
    assert PsiOfPair(Cycle(5), VertexSubsetPair({0, 2, 4}, {1, 3})) == Fraction(2, 5)
    assert PsiOfPair(Complete(4), VertexSubsetPair({0, 1}, {2, 3})) == 1
    assert PsiOfPair(Cycle(6), VertexSubsetPair({0, 2, 4}, {1, 3, 5})) == 0
    with pytest.raises(ContractViolation):
        PsiOfPair(Cycle(5), VertexSubsetPair(set(), set()))


def test_singleton_psi_is_the_degree():
    for g in Corpus().values():
        for v in range(g.n):
            assert PsiOfPair(g, VertexSubsetPair({v}, set())) == g.degrees[v]


def test_numerator_identity_on_random_pairs():
    stream = SplitMix64(7)
    for g in Corpus().values():
        for _ in range(10):
            labels = [stream.Below(3) for _ in range(g.n)]
            pair = VertexSubsetPair(
                [v for v in range(g.n) if labels[v] == 0],
                [v for v in range(g.n) if labels[v] == 1],
            )
            e_S, e_T, cut = SubsetEdgeCounts(g, pair)
            assert PairNumerator(g, pair) == 2 * e_S + 2 * e_T + cut
            assert 2 * e_S + 2 * e_T + cut <= sum(g.degrees[v] for v in pair.union)
            assert SubsetEdgeCounts(g, pair.Swapped())[2] == cut


def test_connectivity_small_graphs():
    assert [c.bipartite for c in Connectivity(Cycle(4))] == [True]
    assert [c.bipartite for c in Connectivity(Cycle(5))] == [False]
    union = Graph.FromEdges(5, [(0, 1), (1, 2), (2, 0), (3, 4)])
    assert [c.bipartite for c in Connectivity(union)] == [False, True]


def test_connectivity_matches_networkx():
    for g in Corpus(random_graphs=10).values():
        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(g.edges)
        components = Connectivity(g)
        assert len(components) == nx.number_connected_components(G)
        for component in components:
            assert component.bipartite == nx.is_bipartite(G.subgraph(component.vertices))
            if component.bipartite:
                classes = component.ColorClasses()
                assert PsiOfPair(g, classes) == 0
            else:
                cycle = component.odd_cycle
                assert len(cycle) % 2 == 1
                assert all(g.HasEdge(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle)))


def test_remove_edges():
    assert RemoveEdges(Complete(3), [(0, 1)]).edges == ((0, 2), (1, 2))
    assert RemoveEdges(Cycle(5), []) == Cycle(5)
    path = RemoveEdges(Cycle(5), [(4, 0)])
    assert path == Path(5)
    assert Connectivity(path)[0].bipartite
    with pytest.raises(ContractViolation):
        RemoveEdges(Path(3), [(0, 2)])


def test_signed_indicator():
    x = SignedIndicator(4, VertexSubsetPair({0, 3}, {1}))
    assert x.tolist() == [1.0, -1.0, 0.0, 1.0]
