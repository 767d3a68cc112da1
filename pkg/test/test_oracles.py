import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from entities.errors import OracleCapExceeded
from entities.graph import Graph, PsiOfPair, VertexSubsetPair
from mechanics.extractor import ThresholdSweep
from mechanics.functional import PNorm, QFunctional
from mechanics.rng import SplitMix64
from oracles import (
    BruteForcePsi, BuildGPrime, ChromaticNumber, DenseQ2Spectrum, HgRows, HgSweep, JacobiEigen,
    OptimalColoring, PlainDifferenceSum, SignlessLaplacian, VerifyGxInequality, VertexBipartiteness,
)

from conftest import Complete, Corpus, Cycle, FromNetworkx, Path, Random, Star


def ReferencePsi(g):
    best = None
    for labels in itertools.product((0, 1, 2), repeat=g.n):
        assigned = [v for v in range(g.n) if labels[v] != 2]
        if not assigned or labels[assigned[0]] != 0:
            continue
        pair = VertexSubsetPair([v for v in assigned if labels[v] == 0], [v for v in assigned if labels[v] == 1])
        value = PsiOfPair(g, pair)
        if best is None or value < best[0]:
            best = (value, pair)
    return best


def SmallGraphs():
    return [g for g in Corpus(random_graphs=8).values() if g.n <= 8 and g.m]


def test_psi_matches_exhaustive_reference():
    for g in SmallGraphs():
        assert BruteForcePsi(g) == ReferencePsi(g)


@pytest.mark.parametrize("g, expected", [
    (Complete(3), Fraction(2, 3)),
    (Complete(4), Fraction(1)),
    (Complete(5), Fraction(8, 5)),
    (Cycle(5), Fraction(2, 5)),
    (Cycle(7), Fraction(2, 7)),
    (Cycle(6), Fraction(0)),
    (Star(4), Fraction(0)),
    (Graph.FromEdges(3, []), Fraction(0)),
])
def test_psi_values(g, expected):
    assert BruteForcePsi(g)[0] == expected


def test_psi_witness_of_complete_graph():
    assert BruteForcePsi(Complete(4))[1] == VertexSubsetPair({0, 1}, {2, 3})


def test_psi_cap():
    with pytest.raises(OracleCapExceeded, match="n <= 16"):
        BruteForcePsi(Path(17))


def test_jacobi_matches_numpy():
    stream = SplitMix64(21)
    for n in (1, 2, 5, 8, 13):
        M = stream.Vector(n * n).reshape(n, n)
        A = M + M.T
        values, vectors = JacobiEigen(A)
        assert np.allclose(values, np.linalg.eigvalsh(A), atol=1e-9)
        assert np.allclose(A @ vectors, vectors * values, atol=1e-8)
        assert np.allclose(vectors.T @ vectors, np.eye(n), atol=1e-9)


def test_dense_spectrum():
    spectrum = DenseQ2Spectrum(Path(3))
    assert spectrum.values == pytest.approx([0.0, 1.0, 3.0], abs=1e-10)
    assert DenseQ2Spectrum(Complete(4)).smallest == pytest.approx(2.0)
    for g in Corpus().values():
        expected = np.linalg.eigvalsh(SignlessLaplacian(g))
        assert DenseQ2Spectrum(g).values == pytest.approx(expected, abs=1e-9)
    with pytest.raises(OracleCapExceeded):
        DenseQ2Spectrum(Path(6), cap=5)


def ReferenceChromatic(g):
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if all(colors[i] != colors[j] for i, j in g.edges):
                return k


@pytest.mark.parametrize("g, expected", [
    (Complete(5), 5), (Cycle(7), 3), (Cycle(6), 2), (Graph.FromEdges(4, []), 1),
])
def test_chromatic_number(g, expected):
    assert ChromaticNumber(g) == expected


def test_chromatic_number_matches_reference():
    for g in SmallGraphs():
        k, colors = OptimalColoring(g)
        assert k == ReferenceChromatic(g)
        assert len(set(colors)) == k
        assert all(colors[i] != colors[j] for i, j in g.edges)


def test_petersen_is_three_chromatic():
    assert ChromaticNumber(FromNetworkx(nx.petersen_graph())) == 3


def test_vertex_bipartiteness():
    assert VertexBipartiteness(Cycle(5))[0] == 1
    assert VertexBipartiteness(Complete(4))[0] == 2
    assert VertexBipartiteness(Path(5)) == (0, frozenset())
    for g in SmallGraphs():
        size, removed = VertexBipartiteness(g)
        G = nx.Graph()
        G.add_nodes_from(v for v in range(g.n) if v not in removed)
        G.add_edges_from((i, j) for i, j in g.edges if i not in removed and j not in removed)
        assert nx.is_bipartite(G)
    with pytest.raises(OracleCapExceeded):
        VertexBipartiteness(Path(21))


def test_gprime_construction():
    g = Complete(3)
    gp = BuildGPrime(g, np.array([1.0, 1.0, -1.0]))
    assert gp.index_map == {0: 3, 1: 4, 2: 5}
    assert sorted(gp.gprime.edges) == [(0, 2), (0, 4), (1, 2), (1, 3)]
    assert gp.gprime.max_degree == g.max_degree
    assert gp.g_vec.tolist() == [1.0, 1.0, 1.0, 0.0, 0.0, 0.0]


def test_gx_inequality_and_cut_identity():
    stream = SplitMix64(13)
    for g in Corpus().values():
        if not g.m:
            continue
        for p in (1.1, 1.5, 2.0, 3.0):
            x = stream.Vector(g.n)
            gp = BuildGPrime(g, x)
            assert gp.gprime.max_degree == g.max_degree
            lhs, rhs, holds = VerifyGxInequality(gp, x, p)
            assert holds and lhs == PlainDifferenceSum(gp, p) and rhs == pytest.approx(QFunctional(g, x, p))

            rows = HgRows(gp)
            assert all(row.identity for row in rows)
            h_g = HgSweep(gp)
            assert h_g == ThresholdSweep(g, x).psi_x
            assert h_g >= BruteForcePsi(g)[0]

            lower = (2 / g.max_degree) ** (p - 1) * (float(h_g) / p) ** p * PNorm(gp.g_vec, p) ** p
            assert lower <= PlainDifferenceSum(gp, p) + 1e-9


def test_dense_cross_check_on_random_graphs():
    for seed in range(5):
        g = Random(12, seed)
        assert DenseQ2Spectrum(g).values == pytest.approx(np.linalg.eigvalsh(SignlessLaplacian(g)), abs=1e-9)
