from fractions import Fraction

import numpy as np
import pytest

from entities.errors import ContractViolation
from entities.graph import PairNumerator, PsiOfPair, VertexSubsetPair
from mechanics.extractor import GreedyPsiPair, PairAtThreshold, PsiLimitTrace, RemovalCertificate, ThresholdSweep
from mechanics.rng import SplitMix64
from mechanics.solver import SpectralResult
from oracles import BruteForcePsi

from conftest import Complete, Corpus, Cycle, Path, Structured


def test_threshold_sweep_on_alternating_cycle():
    x = np.array([1.0, -1.0, 1.0, -1.0, 0.0])
    result = ThresholdSweep(Cycle(5), x)
    assert result.best_pair == VertexSubsetPair({0, 2}, {1, 3})
    assert result.psi_x == Fraction(1, 2)
    assert result.best_threshold == 0.0


def test_threshold_sweep_bipartite_vector():
    x = np.array([0.5, -0.3, 0.2, -0.9])
    result = ThresholdSweep(Path(4), x)
    assert result.psi_x == 0
    assert result.best_pair == VertexSubsetPair({0, 2}, {1, 3})


def test_trace_is_ascending_and_exact():
    g = Cycle(5)
    x = np.array([0.9, -0.7, 0.5, -0.3, 0.1])
    result = ThresholdSweep(g, x)
    ts = [point.t for point in result.trace]
    assert ts == sorted(ts)
    assert len(result.trace) == 5
    for point in result.trace:
        pair = PairAtThreshold(x, point.t)
        assert (len(pair.S), len(pair.T)) == (point.size_S, point.size_T)
        assert PsiOfPair(g, pair) == point.psi
    assert result.psi_x == min(point.psi for point in result.trace)


def test_ties_prefer_the_smallest_threshold():
    # every threshold of a positive vector on K_3 gives psi = 2
    g = Complete(3)
    result = ThresholdSweep(g, np.array([3.0, 2.0, 1.0]))
    assert result.psi_x == 2
    assert result.best_threshold == 0.0


def test_near_equal_magnitudes_share_a_threshold():
    x = np.array([1.0, -(1.0 - 1e-14), 0.5])
    result = ThresholdSweep(Path(3), x)
    assert len(result.trace) == 2


def test_sweep_rejects_zero_and_mismatched_vectors():
    with pytest.raises(ContractViolation):
        ThresholdSweep(Cycle(5), np.zeros(5))
    with pytest.raises(ContractViolation):
        ThresholdSweep(Cycle(5), np.ones(4))


def test_removal_certificate_makes_the_pair_bipartite():
    g = Complete(4)
    pair = VertexSubsetPair({0, 1}, {2, 3})
    assert RemovalCertificate(g, pair) == [(0, 1), (2, 3)]


def test_greedy_pair_is_a_valid_upper_bound():
    for g in Corpus(random_graphs=10).values():
        value, pair = GreedyPsiPair(g)
        assert value == PsiOfPair(g, pair)
        assert value >= BruteForcePsi(g)[0]


@pytest.mark.parametrize("name", ['K3', 'K4', 'C5', 'C7', 'P4', 'star4'])
def test_greedy_pair_is_optimal_on_structured_graphs(name):
    g = Structured()[name]
    assert GreedyPsiPair(g)[0] == BruteForcePsi(g)[0]


def test_psi_limit_trace_needs_decreasing_p():
    g = Cycle(5)
    x = np.array([1.0, -1.0, 1.0, -1.0, 1.0])
    results = [SpectralResult(p, 0.0, x, 0.0, 0, True) for p in (1.5, 2.0)]
    with pytest.raises(ContractViolation):
        PsiLimitTrace(results, g)
    trace = PsiLimitTrace(results[::-1], g)
    assert trace == [(2.0, Fraction(2, 5)), (1.5, Fraction(2, 5))]


def test_no_threshold_beats_the_sweep():
    stream = SplitMix64(17)
    graphs = [g for g in Corpus(random_graphs=10).values() if g.m]
    for k in range(1000):
        g = graphs[k % len(graphs)]
        x = stream.Vector(g.n)
        result = ThresholdSweep(g, x)
        t = stream.Uniform() * float(np.max(np.abs(x)))
        pair = PairAtThreshold(x, t)
        if pair.union:
            assert PsiOfPair(g, pair) >= result.psi_x


def test_threshold_pairs_shrink_as_t_grows():
    stream = SplitMix64(23)
    x = stream.Vector(12)
    ts = sorted(float(v) for v in np.abs(x))
    pairs = [PairAtThreshold(x, t) for t in [0.0] + ts]
    for low, high in zip(pairs, pairs[1:]):
        assert high.S <= low.S and high.T <= low.T
    assert not pairs[-1].union


def test_greedy_value_matches_the_volume_identity():
    for g in Corpus().values():
        value, pair = GreedyPsiPair(g)
        assert value == Fraction(PairNumerator(g, pair), len(pair.union))
