"""
The signless p-Laplacian functional and the quantities derived from it.

For a graph G=(V,E) and x in R^V:

    Q_p(x) = sum over edges ij of |x_i + x_j|^p
    R_p(x) = Q_p(x) / ||x||_p^p

grad_q returns (1/p) * grad Q_p, whose i-th entry is the sum of
phi_p(x_i + x_j) over the neighbours j of i, with phi_p(t) = sg(t)|t|^(p-1).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from entities.errors import ContractViolation
from entities.graph import Graph

# below this distance to 1 the sign formula replaces |t|^(p-1)
SignCutoff = 1e-9


@dataclass(frozen=True)
class PValue:
	p: float

	def __post_init__(self):
		if not np.isfinite(self.p) or self.p < 1:
			raise ContractViolation(f"p must be a real number >= 1, got {self.p}")

	@property
	def q(self) -> float:
		if self.p == 1:
			raise ContractViolation("The conjugate exponent is undefined for p = 1")
		return self.p / (self.p - 1)


def AbsPow(a, exponent: float) -> np.ndarray:
	"""|a|^exponent via exp(exponent * log|a|), flushing 0 and underflow to 0."""
	a = np.abs(np.asarray(a, dtype=float))
	out = np.zeros_like(a)
	positive = a > 0
	with np.errstate(over='ignore', under='ignore'):
		out[positive] = np.exp(exponent * np.log(a[positive]))
	return out


def SgnPow(t, p: float):
	if p < 1:
		raise ContractViolation(f"p must be >= 1, got {p}")
	scalar = np.ndim(t) == 0
	t = np.asarray(t, dtype=float)
	if p - 1 < SignCutoff:
		out = np.sign(t)
	else:
		out = np.sign(t) * AbsPow(t, p - 1)
	return float(out) if scalar else out


def _Vector(g: Graph, x) -> np.ndarray:
	x = np.asarray(x, dtype=float)
	if x.shape != (g.n,):
		raise ContractViolation(f"Vector of shape {x.shape} does not match a graph on {g.n} vertices")
	if not np.all(np.isfinite(x)):
		raise ContractViolation("Vector entries must be finite")
	return x


def PNorm(x, p: float) -> float:
	return float(np.sum(AbsPow(x, p)) ** (1.0 / p))


def Normalize(x, p: float) -> np.ndarray:
	x = np.asarray(x, dtype=float)
	norm = PNorm(x, p)
	if norm == 0:
		raise ContractViolation("Cannot normalise the zero vector")
	return x / norm


def QFunctional(g: Graph, x, p: float) -> float:
	PValue(p)
	x = _Vector(g, x)
	if g.m == 0:
		return 0.0
	return float(np.sum(AbsPow(x[g.heads] + x[g.tails], p)))


def GradQ(g: Graph, x, p: float) -> np.ndarray:
	PValue(p)
	x = _Vector(g, x)
	if g.m == 0:
		return np.zeros(g.n)
	phi = SgnPow(x[g.heads] + x[g.tails], p)
	return np.bincount(g.heads, phi, minlength=g.n) + np.bincount(g.tails, phi, minlength=g.n)


def Rayleigh(g: Graph, x, p: float) -> float:
	x = _Vector(g, x)
	denominator = float(np.sum(AbsPow(x, p)))
	if denominator == 0:
		raise ContractViolation("The Rayleigh quotient is undefined at x = 0")
	return QFunctional(g, x, p) / denominator


def Residual(g: Graph, x, mu: float, p: float) -> float:
	if p <= 1:
		raise ContractViolation(f"Eigenequations need p > 1, got {p}")
	x = Normalize(_Vector(g, x), p)
	return float(np.max(np.abs(GradQ(g, x, p) - mu * SgnPow(x, p))))
