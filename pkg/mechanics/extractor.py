"""
Rounding vertex vectors to near-bipartite pairs.

A vector x induces, for every threshold t >= 0, the pair
S_t = {i : x_i > t}, T_t = {i : x_i < -t}. ThresholdSweep scores all of them
exactly and keeps the best. Scores use

    2e(S) + 2e(T) + cut(S u T) = vol(S u T) - 2e(S, T)

so a sweep only has to add one vertex at a time in decreasing |x_i| order.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from entities.errors import ContractViolation
from entities.graph import Graph, VertexSubsetPair, Connectivity, InternalEdges, Edge, PairNumerator

from main.config import Resolution
from utils.graphs import BreadthFirst

logger = logging.getLogger(__name__)

Unlabelled, InS, InT = 0, 1, 2


@dataclass(frozen=True)
class TracePoint:
	t: float
	size_S: int
	size_T: int
	psi: Fraction


@dataclass(frozen=True)
class ThresholdSweepResult:
	best_pair: VertexSubsetPair
	best_threshold: float
	psi_x: Fraction
	trace: Tuple[TracePoint, ...]


def PairAtThreshold(x, t: float) -> VertexSubsetPair:
	x = np.asarray(x, dtype=float)
	cut = t + Resolution
	return VertexSubsetPair(
		np.flatnonzero(x > cut).tolist(),
		np.flatnonzero(x < -cut).tolist(),
	)


def _Buckets(magnitude: np.ndarray) -> List[List[int]]:
	order = [int(i) for i in np.argsort(-magnitude, kind='stable') if magnitude[i] > Resolution]
	buckets = []
	for i in order:
		if buckets and magnitude[buckets[-1][-1]] - magnitude[i] <= Resolution:
			buckets[-1].append(i)
		else:
			buckets.append([i])
	return buckets


def ThresholdSweep(g: Graph, x) -> ThresholdSweepResult:
	x = np.asarray(x, dtype=float)
	if x.shape != (g.n,):
		raise ContractViolation(f"Vector of shape {x.shape} does not match a graph on {g.n} vertices")
	magnitude = np.abs(x)
	buckets = _Buckets(magnitude)
	if not buckets:
		raise ContractViolation("Cannot sweep thresholds of the zero vector")

	labels = [Unlabelled] * g.n
	volume = cross = 0
	sizes = {InS: 0, InT: 0}
	states = []

	for k, bucket in enumerate(buckets):
		for v in bucket:
			side = InS if x[v] > 0 else InT
			labels[v] = side
			sizes[side] += 1
			volume += g.degrees[v]
			cross += sum(1 for u in g.adjacency[v] if labels[u] not in (Unlabelled, side))
		t = float(magnitude[buckets[k + 1][0]]) if k + 1 < len(buckets) else 0.0
		states.append(TracePoint(t, sizes[InS], sizes[InT], Fraction(volume - 2 * cross, sizes[InS] + sizes[InT])))

	# later states have smaller t, so <= prefers the smallest threshold
	best = states[0]
	for state in states[1:]:
		if state.psi <= best.psi:
			best = state

	return ThresholdSweepResult(
		best_pair=PairAtThreshold(x, best.t),
		best_threshold=best.t,
		psi_x=best.psi,
		trace=tuple(reversed(states)),
	)


def PsiLimitTrace(sweep_results: Sequence, g: Graph) -> List[Tuple[float, Fraction]]:
	ps = [r.p for r in sweep_results]
	if any(a <= b for a, b in zip(ps, ps[1:])):
		raise ContractViolation(f"Sweep results must be ordered by decreasing p, got {ps}")
	trace = []
	for result in sweep_results:
		psi = ThresholdSweep(g, result.vector).psi_x
		logger.info("p=%g psi(x(p))=%s", result.p, psi)
		trace.append((result.p, psi))
	return trace


def RemovalCertificate(g: Graph, pair: VertexSubsetPair) -> List[Edge]:
	return InternalEdges(g, pair)


def _PairOf(labels: List[int]) -> VertexSubsetPair:
	return VertexSubsetPair(
		[v for v, side in enumerate(labels) if side == InS],
		[v for v, side in enumerate(labels) if side == InT],
	)


def _LocalSearch(g: Graph, labels: List[int]) -> Tuple[int, int, List[int]]:
	cS = [0] * g.n
	cT = [0] * g.n
	for v, side in enumerate(labels):
		for u in g.adjacency[v]:
			if side == InS:
				cS[u] += 1
			elif side == InT:
				cT[u] += 1
	N = PairNumerator(g, _PairOf(labels))
	size = sum(1 for side in labels if side != Unlabelled)

	for _ in range(4 * g.n + 4):
		BestN, BestSize, move = N, size, None
		for v in range(g.n):
			d, old = g.degrees[v], labels[v]
			removal = 0
			if old == InS:
				removal = -d + 2 * cT[v]
			elif old == InT:
				removal = -d + 2 * cS[v]
			for new in (Unlabelled, InS, InT):
				if new == old:
					continue
				dN = removal
				if new == InS:
					dN += d - 2 * cT[v]
				elif new == InT:
					dN += d - 2 * cS[v]
				NewSize = size - (old != Unlabelled) + (new != Unlabelled)
				if NewSize == 0:
					continue
				if (N + dN) * BestSize < BestN * NewSize:
					BestN, BestSize, move = N + dN, NewSize, (v, new)
		if move is None:
			break
		v, new = move
		old = labels[v]
		for u in g.adjacency[v]:
			if old == InS:
				cS[u] -= 1
			elif old == InT:
				cT[u] -= 1
			if new == InS:
				cS[u] += 1
			elif new == InT:
				cT[u] += 1
		labels[v] = new
		N, size = BestN, BestSize

	return N, size, labels


def GreedyPsiPair(g: Graph) -> Tuple[Fraction, VertexSubsetPair]:
	starts = []
	components = Connectivity(g)

	parity = [Unlabelled] * g.n
	for component in components:
		layers = component.coloring if component.bipartite else _Parity(g, component.vertices)
		for v, c in layers.items():
			parity[v] = InS if c == 0 else InT
	starts.append(parity)

	if len(components) > 1:
		for component in components:
			restricted = [Unlabelled] * g.n
			for v in component.vertices:
				restricted[v] = parity[v]
			starts.append(restricted)

	singleton = [Unlabelled] * g.n
	singleton[int(np.argmin(g.degrees))] = InS
	starts.append(singleton)

	best = None
	for labels in starts:
		N, size, labels = _LocalSearch(g, list(labels))
		pair = _PairOf(labels)
		candidate = (Fraction(N, size), pair.Key(), pair)
		if best is None or candidate[:2] < best[:2]:
			best = candidate

	logger.debug("greedy psi pair %s with value %s", best[1], best[0])
	return best[0], best[2]


def _Parity(g: Graph, vertices) -> dict:
	_, _, depth = BreadthFirst(vertices[0], g.adjacency, set())
	return {v: level % 2 for v, level in depth.items()}
