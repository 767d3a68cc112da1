from __future__ import annotations

import itertools
import logging
from typing import List, Optional, Tuple

from entities.errors import OracleCapExceeded
from entities.graph import Graph

from main.config import BipartitenessCap, ColoringCap

logger = logging.getLogger(__name__)


def GreedyColoring(g: Graph) -> Tuple[List[int], int]:
	# DSATUR: most saturated first, ties by degree
	colors = [-1] * g.n
	NeighborColors = [set() for _ in range(g.n)]
	uncolored = set(range(g.n))

	while uncolored:
		u = max(uncolored, key=lambda v: (len(NeighborColors[v]), g.degrees[v], -v))
		c = 0
		while c in NeighborColors[u]:
			c += 1
		colors[u] = c
		uncolored.remove(u)
		for v in g.adjacency[u]:
			if v in uncolored:
				NeighborColors[v].add(c)

	return colors, max(colors) + 1


def GreedyClique(g: Graph) -> List[int]:
	best = []
	order = sorted(range(g.n), key=lambda v: (-g.degrees[v], v))
	for seed in order:
		clique = [seed]
		for v in order:
			if v != seed and all(g.HasEdge(v, u) for u in clique):
				clique.append(v)
		if len(clique) > len(best):
			best = clique
	return best


def _Colorable(g: Graph, k: int, order: List[int]) -> Optional[List[int]]:
	colors = [-1] * g.n

	def Extend(position: int, used: int) -> bool:
		if position == len(order):
			return True
		v = order[position]
		taken = {colors[u] for u in g.adjacency[v]}
		# a fresh colour is interchangeable with any other fresh one
		for c in range(min(used + 1, k)):
			if c in taken:
				continue
			colors[v] = c
			if Extend(position + 1, max(used, c + 1)):
				return True
		colors[v] = -1
		return False

	return colors if Extend(0, 0) else None


def OptimalColoring(g: Graph, cap: int = ColoringCap) -> Tuple[int, List[int]]:
	if g.n > cap:
		raise OracleCapExceeded('chromatic_number', g.n, cap)
	if g.m == 0:
		return 1, [0] * g.n

	colors, upper = GreedyColoring(g)
	lower = len(GreedyClique(g))
	order = sorted(range(g.n), key=lambda v: (-g.degrees[v], v))

	for k in range(lower, upper):
		found = _Colorable(g, k, order)
		if found is not None:
			colors, upper = found, k
			break
	logger.info("chromatic number %d (clique bound %d)", upper, lower)
	return upper, colors


def ChromaticNumber(g: Graph, cap: int = ColoringCap) -> int:
	return OptimalColoring(g, cap)[0]


def _BipartiteWithout(g: Graph, removed: frozenset) -> bool:
	side = {}
	for start in range(g.n):
		if start in removed or start in side:
			continue
		side[start] = 0
		stack = [start]
		while stack:
			u = stack.pop()
			for v in g.adjacency[u]:
				if v in removed:
					continue
				if v not in side:
					side[v] = 1 - side[u]
					stack.append(v)
				elif side[v] == side[u]:
					return False
	return True


def VertexBipartiteness(g: Graph, cap: int = BipartitenessCap) -> Tuple[int, frozenset]:
	if g.n > cap:
		raise OracleCapExceeded('vertex_bipartiteness', g.n, cap)
	for size in range(g.n + 1):
		for removed in itertools.combinations(range(g.n), size):
			removed = frozenset(removed)
			if _BipartiteWithout(g, removed):
				logger.info("vertex bipartiteness %d, witness %s", size, sorted(removed))
				return size, removed
	raise AssertionError("removing every vertex always leaves a bipartite graph")
