"""
The auxiliary graph G' that turns the signless problem into a cut problem.

Given x, let S = {x_i > 0} and T = {x_i < 0}. G' has the vertices of G plus
primed copies i' of every i in S u T. Every edge ij with both ends in S (or
both in T) is replaced by the two edges i-j' and i'-j; every other edge of G
is kept. With g_i = |x_i| on S u T and 0 elsewhere,

    sum over E' of |g_i - g_j|^p  <=  sum over E of |x_i + x_j|^p

and for every threshold t the cut of C_t = {g_i > t} in G' equals
2e(S_t) + 2e(T_t) + cut(S_t u T_t) in G. Maximum degrees agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from entities.errors import ContractViolation
from entities.graph import Graph, VertexSubsetPair, SubsetEdgeCounts
from mechanics.functional import AbsPow, QFunctional


@dataclass(frozen=True, eq=False)
class GPrime:
	base: Graph
	gprime: Graph
	index_map: Dict[int, int]
	S: frozenset
	T: frozenset
	g_vec: np.ndarray

	@property
	def support(self) -> frozenset:
		return self.S | self.T


@dataclass(frozen=True)
class HgRow:
	t: float
	size: int
	cut_gprime: int
	cut_identity_rhs: int

	@property
	def identity(self) -> bool:
		return self.cut_gprime == self.cut_identity_rhs


def BuildGPrime(g: Graph, x) -> GPrime:
	x = np.asarray(x, dtype=float)
	if x.shape != (g.n,):
		raise ContractViolation(f"Vector of shape {x.shape} does not match a graph on {g.n} vertices")
	if not np.any(x != 0):
		raise ContractViolation("G' is undefined for the zero vector")

	S = frozenset(np.flatnonzero(x > 0).tolist())
	T = frozenset(np.flatnonzero(x < 0).tolist())
	index_map = {}
	for v in sorted(S) + sorted(T):
		index_map[v] = g.n + len(index_map)

	edges = []
	for i, j in g.edges:
		if (i in S and j in S) or (i in T and j in T):
			edges.append((i, index_map[j]))
			edges.append((index_map[i], j))
		else:
			edges.append((i, j))

	size = g.n + len(index_map)
	gprime = Graph.FromEdges(size, edges)
	if g.m and gprime.max_degree != g.max_degree:
		raise ContractViolation(f"G' has maximum degree {gprime.max_degree}, G has {g.max_degree}")

	g_vec = np.zeros(size)
	support = sorted(S | T)
	g_vec[support] = np.abs(x[support])
	return GPrime(g, gprime, index_map, S, T, g_vec)


def PlainDifferenceSum(gp: GPrime, p: float) -> float:
	graph = gp.gprime
	if graph.m == 0:
		return 0.0
	return float(np.sum(AbsPow(gp.g_vec[graph.heads] - gp.g_vec[graph.tails], p)))


def VerifyGxInequality(gp: GPrime, x, p: float) -> Tuple[float, float, bool]:
	lhs = PlainDifferenceSum(gp, p)
	rhs = QFunctional(gp.base, x, p)
	return lhs, rhs, lhs <= rhs + 1e-12 * max(1.0, rhs)


def _Cut(graph: Graph, members: frozenset) -> int:
	return sum(1 for i, j in graph.edges if (i in members) != (j in members))


def HgRows(gp: GPrime) -> List[HgRow]:
	values = gp.g_vec[sorted(gp.support)]
	if values.size == 0 or not np.any(values > 0):
		raise ContractViolation("h_g needs a non-zero g")
	top = float(values.max())
	thresholds = [0.0] + sorted(float(v) for v in np.unique(values) if v < top)

	rows = []
	for t in sorted(set(thresholds)):
		members = frozenset(v for v in gp.support if gp.g_vec[v] > t)
		pair = VertexSubsetPair(members & gp.S, members & gp.T)
		e_S, e_T, cut = SubsetEdgeCounts(gp.base, pair)
		rows.append(HgRow(t, len(members), _Cut(gp.gprime, members), 2 * e_S + 2 * e_T + cut))
	return rows


def HgSweep(gp: GPrime) -> Fraction:
	return min(Fraction(row.cut_gprime, row.size) for row in HgRows(gp))
