"""
Exact bipartiteness ratio psi(G) by exhaustive enumeration.

Every vertex gets a label S, T or neither (digits 0, 1, 2). The vertex set is
split into a low half (vertices 0..L-1) and a high half; labelings of each
half are enumerated once with numpy and combined block by block, so the 3^n
assignments are scored as 3^L x 3^H integer matrices:

    numerator = vol(S u T) - 2 e(S, T),   size = |S u T|

Only canonical assignments are scored (the lowest labelled vertex is in S),
which removes the (S, T) <-> (T, S) duplicates. Ratios with denominators of
at most n differ by at least 1/n^2, so the float argmin is the exact one; the
returned value is rebuilt from the integers.

The witness is the minimiser whose label string, read from vertex 0 with
S < T < neither, is smallest.
"""
from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Tuple

import numpy as np

from entities.errors import OracleCapExceeded
from entities.graph import Graph, VertexSubsetPair

from main.config import OracleCap

logger = logging.getLogger(__name__)

LabelS, LabelT, LabelNone = 0, 1, 2
BlockColumns = 256


def _Labelings(k: int) -> np.ndarray:
	return np.array(list(itertools.product((LabelS, LabelT, LabelNone), repeat=k)), dtype=np.int8).reshape(-1, k)


def _Canonical(labels: np.ndarray) -> np.ndarray:
	# first labelled vertex is in S, or nothing is labelled
	if labels.shape[1] == 0:
		return np.ones(len(labels), dtype=bool)
	assigned = labels != LabelNone
	first = np.argmax(assigned, axis=1)
	anything = assigned.any(axis=1)
	return ~anything | (labels[np.arange(len(labels)), first] == LabelS)


def _HalfScores(labels: np.ndarray, degrees: np.ndarray, edges) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
	inS = labels == LabelS
	inT = labels == LabelT
	volume = (inS | inT) @ degrees
	cross = np.zeros(len(labels))
	for a, b in edges:
		cross += (inS[:, a] & inT[:, b]) | (inT[:, a] & inS[:, b])
	size = (inS | inT).sum(axis=1)
	return volume, cross, size


def BruteForcePsi(g: Graph, cap: int = OracleCap) -> Tuple[Fraction, VertexSubsetPair]:
	if g.n > cap:
		raise OracleCapExceeded('brute_force_psi', g.n, cap)
	if g.m == 0:
		return Fraction(0), VertexSubsetPair({0}, set())

	n = g.n
	L = (n + 1) // 2
	H = n - L
	degrees = np.asarray(g.degrees, dtype=float)
	LowEdges = [(i, j) for i, j in g.edges if j < L]
	HighEdges = [(i - L, j - L) for i, j in g.edges if i >= L]
	between = np.zeros((L, H))
	for i, j in g.edges:
		if i < L <= j:
			between[i, j - L] = 1.0

	low = _Labelings(L)
	LowCanonical = _Canonical(low)
	LowEmpty = np.flatnonzero(~(low != LabelNone).any(axis=1))
	rows = np.flatnonzero(LowCanonical)
	low = low[rows]
	EmptyRow = int(np.flatnonzero(rows == LowEmpty[0])[0])
	LowVolume, LowCross, LowSize = _HalfScores(low, degrees[:L], LowEdges)
	LowS = (low == LabelS).astype(float)
	LowT = (low == LabelT).astype(float)

	high = _Labelings(H)
	HighCanonical = _Canonical(high)
	HighVolume, HighCross, HighSize = _HalfScores(high, degrees[L:], HighEdges)
	HighS = (high == LabelS).astype(float)
	HighT = (high == LabelT).astype(float)

	best = None
	for start in range(0, len(high), BlockColumns):
		block = slice(start, min(start + BlockColumns, len(high)))
		# neighbours of each low vertex inside the high block's T (resp. S)
		CountT = HighT[block] @ between.T
		CountS = HighS[block] @ between.T
		across = LowS @ CountT.T + LowT @ CountS.T
		numerator = LowVolume[:, None] + HighVolume[None, block] - 2.0 * (LowCross[:, None] + HighCross[None, block] + across)
		size = LowSize[:, None] + HighSize[None, block]
		ratio = np.full(numerator.shape, np.inf)
		np.divide(numerator, size, out=ratio, where=size > 0)
		ratio[EmptyRow, ~HighCanonical[block]] = np.inf

		flat = int(np.argmin(ratio))
		r, c = divmod(flat, ratio.shape[1])
		candidate = (ratio[r, c], r, start + c)
		if best is None or candidate < best[:3]:
			best = candidate + (int(round(numerator[r, c])), int(size[r, c]))

	_, r, c, numerator, size = best
	labels = np.concatenate([low[r], high[c]])
	pair = VertexSubsetPair(np.flatnonzero(labels == LabelS).tolist(), np.flatnonzero(labels == LabelT).tolist())
	psi = Fraction(numerator, size)
	logger.info("psi oracle: %s on %d vertices, witness S=%s T=%s", psi, n, sorted(pair.S), sorted(pair.T))
	return psi, pair
