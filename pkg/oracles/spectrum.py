from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from entities.errors import NumericalFailure, OracleCapExceeded
from entities.graph import Graph

from main.config import DenseCap

logger = logging.getLogger(__name__)

OffDiagonalTolerance = 1e-12
PsdSlack = 1e-9
MaxSweeps = 60


@dataclass(frozen=True, eq=False)
class DenseSpectrum:
	values: np.ndarray
	vectors: np.ndarray

	@property
	def smallest(self) -> float:
		return float(self.values[0])

	@property
	def largest(self) -> float:
		return float(self.values[-1])


def SignlessLaplacian(g: Graph) -> np.ndarray:
	Q = np.diag(np.asarray(g.degrees, dtype=float))
	if g.m:
		Q[g.heads, g.tails] = 1.0
		Q[g.tails, g.heads] = 1.0
	return Q


def _RoundRobin(m: int):
	players = list(range(m))
	for _ in range(m - 1):
		yield [(players[i], players[m - 1 - i]) for i in range(m // 2)]
		players = [players[0], players[-1]] + players[1:-1]


def JacobiEigen(A: np.ndarray):
	"""
	Cyclic Jacobi on a symmetric matrix, parallel (round-robin) ordering.

	Each round applies n/2 disjoint plane rotations at once; n-1 rounds make a
	sweep touching every off-diagonal pair. Sweeps stop once the off-diagonal
	Frobenius mass drops below 1e-12 times the Frobenius norm of A.

	Returns eigenvalues ascending and the matching orthonormal eigenvectors as
	columns.
	"""
	A = np.array(A, dtype=float)
	n = A.shape[0]
	V = np.eye(n)
	norm = np.linalg.norm(A)
	m = n + (n % 2)

	for sweep in range(MaxSweeps):
		off = np.sqrt(max(np.sum(A * A) - np.sum(np.diag(A) ** 2), 0.0))
		if off <= OffDiagonalTolerance * norm:
			break
		for pairs in _RoundRobin(m):
			pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
			if not pairs:
				continue
			P = np.array([a for a, _ in pairs])
			Q = np.array([b for _, b in pairs])
			apq = A[P, Q]
			active = np.abs(apq) > 0
			if not active.any():
				continue
			P, Q, apq = P[active], Q[active], apq[active]
			tau = (A[Q, Q] - A[P, P]) / (2.0 * apq)
			t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
			c = 1.0 / np.sqrt(1.0 + t * t)
			s = t * c

			RowP, RowQ = A[P, :].copy(), A[Q, :].copy()
			A[P, :] = c[:, None] * RowP - s[:, None] * RowQ
			A[Q, :] = s[:, None] * RowP + c[:, None] * RowQ
			ColP, ColQ = A[:, P].copy(), A[:, Q].copy()
			A[:, P] = ColP * c - ColQ * s
			A[:, Q] = ColP * s + ColQ * c
			VecP, VecQ = V[:, P].copy(), V[:, Q].copy()
			V[:, P] = VecP * c - VecQ * s
			V[:, Q] = VecP * s + VecQ * c
	else:
		logger.warning("Jacobi stopped after %d sweeps with off-diagonal mass %.3e", MaxSweeps, off)

	values = np.diag(A).copy()
	order = np.argsort(values, kind='stable')
	return values[order], V[:, order]


def DenseQ2Spectrum(g: Graph, cap: int = DenseCap) -> DenseSpectrum:
	if g.n > cap:
		raise OracleCapExceeded('dense_q2_spectrum', g.n, cap)
	values, vectors = JacobiEigen(SignlessLaplacian(g))
	if values[0] < -PsdSlack:
		raise NumericalFailure(f"D+A came out indefinite: smallest eigenvalue {values[0]!r}")
	logger.info("dense spectrum of D+A: smallest %.12g, largest %.12g", values[0], values[-1])
	return DenseSpectrum(values, vectors)
