"""
Simple undirected graphs and the exact counting primitives built on them.

Vertices are dense integer ids 0..n-1. A Graph is immutable once built;
every function here is a pure function of its arguments.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Optional, Tuple

import numpy as np

from entities.errors import ContractViolation, ParseError
from utils.graphs import Components, TwoColor

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
	n: int
	edges: Tuple[Edge, ...]
	adjacency: Tuple[Tuple[int, ...], ...]
	degrees: Tuple[int, ...]

	@classmethod
	def FromEdges(cls, n: int, edges: Iterable[Edge]) -> Graph:
		if n < 1:
			raise ContractViolation(f"A graph needs at least one vertex, got n={n}")
		EdgeSet = set()
		for i, j in edges:
			i, j = int(i), int(j)
			if i == j:
				raise ContractViolation(f"Self-loop at vertex {i}")
			if not (0 <= i < n and 0 <= j < n):
				raise ContractViolation(f"Edge {{{i},{j}}} leaves the vertex range 0..{n - 1}")
			EdgeSet.add((min(i, j), max(i, j)))

		neighbours = [[] for _ in range(n)]
		for i, j in EdgeSet:
			neighbours[i].append(j)
			neighbours[j].append(i)
		adjacency = tuple(tuple(sorted(nb)) for nb in neighbours)

		return cls(
			n=n,
			edges=tuple(sorted(EdgeSet)),
			adjacency=adjacency,
			degrees=tuple(len(nb) for nb in adjacency),
		)

	@property
	def m(self) -> int:
		return len(self.edges)

	@property
	def min_degree(self) -> int:
		return min(self.degrees)

	@property
	def max_degree(self) -> int:
		return max(self.degrees)

	@property
	def is_regular(self) -> bool:
		return self.min_degree == self.max_degree

	@cached_property
	def heads(self) -> np.ndarray:
		return np.fromiter((i for i, _ in self.edges), dtype=np.intp, count=self.m)

	@cached_property
	def tails(self) -> np.ndarray:
		return np.fromiter((j for _, j in self.edges), dtype=np.intp, count=self.m)

	@cached_property
	def degree_array(self) -> np.ndarray:
		return np.asarray(self.degrees, dtype=float)

	def HasEdge(self, i: int, j: int) -> bool:
		return (min(i, j), max(i, j)) in self._edge_set

	@cached_property
	def _edge_set(self) -> frozenset:
		return frozenset(self.edges)

	def IsComplete(self) -> bool:
		return self.m == self.n * (self.n - 1) // 2

	def IsOddCycle(self) -> bool:
		return (
			self.n >= 3 and self.n % 2 == 1 and self.m == self.n
			and all(d == 2 for d in self.degrees) and len(Connectivity(self)) == 1
		)

	def IsConnected(self) -> bool:
		return len(Connectivity(self)) == 1


@dataclass(frozen=True)
class VertexSubsetPair:
	S: frozenset
	T: frozenset

	def __post_init__(self):
		object.__setattr__(self, 'S', frozenset(int(i) for i in self.S))
		object.__setattr__(self, 'T', frozenset(int(i) for i in self.T))
		overlap = self.S & self.T
		if overlap:
			raise ContractViolation(f"S and T must be disjoint, both contain {sorted(overlap)}")

	@property
	def union(self) -> frozenset:
		return self.S | self.T

	def Swapped(self) -> VertexSubsetPair:
		return VertexSubsetPair(self.T, self.S)

	def Key(self):
		return tuple(sorted(self.S)), tuple(sorted(self.T))


@dataclass(frozen=True)
class Component:
	vertices: Tuple[int, ...]
	bipartite: bool
	coloring: Optional[dict] = None
	odd_cycle: Optional[Tuple[int, ...]] = None

	def ColorClasses(self) -> VertexSubsetPair:
		if not self.bipartite:
			raise ContractViolation("Only bipartite components have colour classes")
		return VertexSubsetPair(
			{v for v, c in self.coloring.items() if c == 0},
			{v for v, c in self.coloring.items() if c == 1},
		)


def ParseEdgeList(text: str) -> Graph:
	declared = None
	pairs = []
	seen_content = False
	MaxId = -1

	for number, raw in enumerate(text.splitlines(), start=1):
		line = raw.strip()
		if not line or line.startswith('#'):
			continue
		tokens = line.split()

		if tokens[0] == 'n':
			if seen_content:
				raise ParseError("the 'n <count>' header must be the first entry", number)
			if len(tokens) != 2:
				raise ParseError(f"malformed header {line!r}", number)
			try:
				declared = int(tokens[1])
			except ValueError:
				raise ParseError(f"vertex count {tokens[1]!r} is not an integer", number) from None
			if declared < 1:
				raise ParseError(f"vertex count must be positive, got {declared}", number)
			seen_content = True
			continue
		seen_content = True

		if len(tokens) != 2:
			raise ParseError(f"expected two vertex ids, got {line!r}", number)
		try:
			i, j = int(tokens[0]), int(tokens[1])
		except ValueError:
			raise ParseError(f"vertex ids must be integers, got {line!r}", number) from None
		if i < 0 or j < 0:
			raise ParseError(f"vertex ids must be non-negative, got {line!r}", number)
		if i == j:
			raise ParseError(f"self-loop at vertex {i} is not allowed", number)
		if declared is not None and max(i, j) >= declared:
			raise ParseError(f"vertex id {max(i, j)} out of range for n={declared}", number)
		MaxId = max(MaxId, i, j)
		pairs.append((i, j))

	n = declared if declared is not None else MaxId + 1
	if n < 1:
		raise ParseError("the edge list declares no vertices")
	return Graph.FromEdges(n, pairs)


def _CheckPair(g: Graph, pair: VertexSubsetPair):
	outside = [v for v in pair.union if not 0 <= v < g.n]
	if outside:
		raise ContractViolation(f"Vertices {sorted(outside)} are not in 0..{g.n - 1}")


def SubsetEdgeCounts(g: Graph, pair: VertexSubsetPair) -> Tuple[int, int, int]:
	_CheckPair(g, pair)
	S, T = pair.S, pair.T
	e_S = e_T = cut = 0
	for i, j in g.edges:
		if i in S and j in S:
			e_S += 1
		elif i in T and j in T:
			e_T += 1
		elif (i in S or i in T) != (j in S or j in T):
			cut += 1
	return e_S, e_T, cut


def PairNumerator(g: Graph, pair: VertexSubsetPair) -> int:
	# 2e(S) + 2e(T) + cut(S u T) == vol(S u T) - 2e(S,T)
	_CheckPair(g, pair)
	volume = sum(g.degrees[v] for v in pair.union)
	return volume - 2 * len(CrossEdges(g, pair))


def PsiOfPair(g: Graph, pair: VertexSubsetPair) -> Fraction:
	if not pair.union:
		raise ContractViolation("psi is undefined for an empty S u T")
	e_S, e_T, cut = SubsetEdgeCounts(g, pair)
	return Fraction(2 * e_S + 2 * e_T + cut, len(pair.union))


def CrossEdges(g: Graph, pair: VertexSubsetPair) -> List[Edge]:
	S, T = pair.S, pair.T
	return [(i, j) for i, j in g.edges if (i in S and j in T) or (i in T and j in S)]


def InternalEdges(g: Graph, pair: VertexSubsetPair) -> List[Edge]:
	S, T = pair.S, pair.T
	return [(i, j) for i, j in g.edges if (i in S and j in S) or (i in T and j in T)]


def SignedIndicator(n: int, pair: VertexSubsetPair) -> np.ndarray:
	x = np.zeros(n)
	x[sorted(pair.S)] = 1.0
	x[sorted(pair.T)] = -1.0
	return x


def Connectivity(g: Graph) -> List[Component]:
	components = []
	for vertices in Components(g.adjacency):
		coloring, cycle = TwoColor(vertices, g.adjacency)
		components.append(Component(
			vertices=tuple(vertices),
			bipartite=coloring is not None,
			coloring=coloring,
			odd_cycle=tuple(cycle) if cycle is not None else None,
		))
	return components


def RemoveEdges(g: Graph, edges_to_drop: Iterable[Edge]) -> Graph:
	drop = set()
	for i, j in edges_to_drop:
		edge = (min(i, j), max(i, j))
		if not g.HasEdge(*edge):
			raise ContractViolation(f"Cannot remove {edge}: it is not an edge of the graph")
		drop.add(edge)
	return Graph.FromEdges(g.n, (e for e in g.edges if e not in drop))
