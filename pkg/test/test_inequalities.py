from fractions import Fraction

import pytest

from entities.config import SolverConfig
from entities.errors import ContractViolation, UsageError
from entities.graph import Graph, SignedIndicator
from mechanics.solver import MinimizeQ
from oracles import BruteForcePsi
from rules.inequalities import Checks, Compare, RunRegistry

from conftest import Complete, Cycle, Path, Random, Star

Ps = (1.5, 2.0)


def Failures(verdicts):
    return [v for v in verdicts if v.status == 'fail']


@pytest.mark.parametrize("g", [Complete(4), Cycle(5), Path(4), Star(3), Complete(3)], ids=['K4', 'C5', 'P4', 'star3', 'K3'])
def test_registry_passes(g, fast_config):
    verdicts = RunRegistry(g, Ps, fast_config, trials=3)
    assert Failures(verdicts) == []
    assert {v.name for v in verdicts} == set(Checks)


def test_degree_bound_equality_on_regular_graph(fast_config):
    verdicts = RunRegistry(Complete(4), (2.0,), fast_config, trials=2, names=['degree-bounds'])
    upper = [v for v in verdicts if v.relation == '<=']
    assert len(upper) == 1 and upper[0].equality
    assert all(v.status == 'pass' for v in verdicts)


def test_wilf_equality_on_odd_cycle(fast_config):
    verdicts = RunRegistry(Cycle(5), (2.0,), fast_config, names=['wilf'])
    assert all(v.status == 'pass' and v.equality for v in verdicts)


def test_wilf_strict_on_path(fast_config):
    verdicts = RunRegistry(Path(4), (2.0,), fast_config, names=['wilf'])
    assert all(v.status == 'pass' and not v.equality for v in verdicts)


def test_connected_premises_are_skipped(fast_config):
    g = Graph.FromEdges(5, [(0, 1), (1, 2), (2, 0), (3, 4)])
    verdicts = RunRegistry(g, (1.5,), fast_config, trials=2)
    assert Failures(verdicts) == []
    skipped = {v.name for v in verdicts if v.status == 'skipped'}
    assert {'perron', 'wilf', 'chromatic-q', 'spread', 'complete-graph-ratio'} <= skipped


def test_oracle_caps_skip_instead_of_failing(fast_config):
    verdicts = RunRegistry(Cycle(17), (2.0,), fast_config, names=['theorem-sandwich', 'basis-bounds'])
    statuses = {v.name: v.status for v in verdicts}
    assert statuses == {'theorem-sandwich': 'skipped', 'basis-bounds': 'pass'}
    sandwich = [v for v in verdicts if v.name == 'theorem-sandwich'][0]
    assert 'n <= 16' in sandwich.note


def test_edgeless_graph(fast_config):
    verdicts = RunRegistry(Graph.FromEdges(3, []), (2.0,), fast_config, trials=2)
    assert Failures(verdicts) == []


def test_bad_arguments(fast_config):
    with pytest.raises(UsageError):
        RunRegistry(Cycle(5), (1.0,), fast_config)
    with pytest.raises(UsageError):
        RunRegistry(Cycle(5), (2.0,), fast_config, names=['no-such-check'])


def test_exact_comparisons_accept_equal_rationals():
    assert Compare('x', None, '>=', Fraction(10, 9), Fraction(10, 9)).status == 'pass'
    assert Compare('x', None, '<=', Fraction(10, 9), Fraction(10, 9)).status == 'pass'
    assert Compare('x', None, '==', Fraction(1, 3), Fraction(2, 6)).status == 'pass'
    assert Compare('x', None, '>=', Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10 ** 30)).status == 'fail'
    with pytest.raises(ContractViolation):
        Compare('x', None, '<>', 1, 2)


def test_cut_identity_on_an_equality_graph(fast_config):
    verdicts = RunRegistry(Random(9, 8), (1.1, 1.5), fast_config, names=['hg-identity', 'psi-limits'])
    assert Failures(verdicts) == []


def test_perron_sign_check_near_p_one(fast_config):
    g = Random(9, 4)
    verdicts = RunRegistry(g, (1.1, 2.0), fast_config, names=['perron'])
    assert Failures(verdicts) == []
    floors = {v.p: v.rhs for v in verdicts if v.relation == '>'}
    assert floors == {1.1: 0.0, 2.0: 1e-10}


def test_upper_bound_lemma_reads_the_solver_value(fast_config):
    g = Cycle(5)
    verdicts = RunRegistry(g, (1.5,), fast_config, names=['upper-bound-lemma'])
    q = MinimizeQ(g, 1.5, fast_config, warm_starts=(SignedIndicator(g.n, BruteForcePsi(g)[1]),)).value
    scaled = [v for v in verdicts if v.note.startswith('q_p |S u T|')]
    assert len(scaled) == 1 and scaled[0].status == 'pass'
    assert scaled[0].lhs == pytest.approx(5 * q)
    # the optimal C_5 pair keeps one edge inside S or T
    assert scaled[0].rhs == pytest.approx(2 ** 1.5)


@pytest.mark.parametrize("n, seed", [(9, 8), (9, 4), (10, 4), (10, 9), (8, 12), (9, 3), (7, 10)])
def test_registry_passes_on_random_graphs(n, seed):
    verdicts = RunRegistry(Random(n, seed), (1.1, 1.5, 2.0, 3.0), SolverConfig(), trials=3)
    assert Failures(verdicts) == []
