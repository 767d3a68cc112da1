from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from entities.config import SolverConfig
from entities.errors import ContractViolation, MonotonicityError, NumericalFailure
from entities.graph import Graph, SignedIndicator, VertexSubsetPair

from main.config import OracleCap, Resolution, WitnessStartCap

from mechanics.extractor import GreedyPsiPair, ThresholdSweep
from mechanics.functional import GradQ, Normalize, PNorm, PValue, QFunctional, Rayleigh, Residual, SgnPow
from mechanics.rng import SplitMix64

from oracles.psi import BruteForcePsi

logger = logging.getLogger(__name__)

# slack allowed on monotone steps, relative to max(1, R_p)
MonotoneSlack = 1e-12
Armijo = 1e-4
# tie window between restarts
TieWindow = 1e-10

MaximizeStream = 0
RestartStreamBase = 1


@dataclass(frozen=True, eq=False)
class SpectralResult:
	p: float
	value: float
	vector: np.ndarray
	residual: Optional[float]
	iterations: int
	converged: bool
	kind: str = 'min'
	exact: Optional[Fraction] = None
	upper_bound: bool = False


def _EmptyGraphResult(g: Graph, p: float, kind: str) -> SpectralResult:
	vector = np.zeros(g.n)
	vector[0] = 1.0
	return SpectralResult(p, 0.0, vector, 0.0, 0, True, kind, exact=Fraction(0))


def _RequireSmooth(p: float):
	if not np.isfinite(p) or p <= 1:
		raise ContractViolation(f"The iterative solvers need p > 1, got {p}")


def MaximizeLambda(g: Graph, p: float, cfg: SolverConfig) -> SpectralResult:
	_RequireSmooth(p)
	if g.m == 0:
		return _EmptyGraphResult(g, p, 'max')

	stream = SplitMix64(cfg.seed).Spawn(MaximizeStream)
	x = Normalize(1.0 + 0.1 * stream.Vector(g.n, 'uniform'), p)
	R = QFunctional(g, x, p)
	conjugate = PValue(p).q
	residual = Residual(g, x, R, p)
	iterations = 0
	converged = residual < cfg.tol_residual

	while not converged and iterations < cfg.max_iters:
		y = GradQ(g, x, p)
		scale = np.max(np.abs(y))
		if scale == 0:
			break
		# Phi(y) = sg(y)|y|^(1/(p-1)); pre-scaling keeps the power finite
		candidate = Normalize(SgnPow(y / scale, conjugate), p)
		value = QFunctional(g, candidate, p)
		if value < R - MonotoneSlack * max(1.0, R):
			raise MonotonicityError(f"R_p decreased from {R!r} to {value!r} at iteration {iterations + 1}")
		x, R = candidate, value
		iterations += 1
		residual = Residual(g, x, R, p)
		converged = residual < cfg.tol_residual

	if not converged:
		logger.warning("power iteration for p=%g stopped after %d iterations, residual %.3e", p, iterations, residual)
	logger.info("lambda_p(p=%g)=%.12g after %d iterations", p, R, iterations)
	return SpectralResult(p, Rayleigh(g, x, p), x, residual, iterations, converged, 'max')


def _Descend(g: Graph, p: float, start: np.ndarray, cfg: SolverConfig) -> Optional[SpectralResult]:
	if PNorm(start, p) == 0 or not np.all(np.isfinite(start)):
		return None
	x = Normalize(start, p)
	R = QFunctional(g, x, p)
	step = cfg.initial_step
	iterations = 0
	converged = False

	while iterations < cfg.max_iters:
		G = GradQ(g, x, p)
		misfit = G - R * SgnPow(x, p)
		if np.max(np.abs(misfit)) < cfg.tol_residual:
			converged = True
			break
		grad = p * misfit
		slope = float(grad @ grad)

		accepted = None
		while step > 1e-300:
			trial = x - step * grad
			norm = PNorm(trial, p)
			if norm > 0 and np.isfinite(norm):
				trial = trial / norm
				value = QFunctional(g, trial, p)
				if not np.isfinite(value):
					return None
				if value <= R - Armijo * step * slope:
					accepted = (trial, value)
					break
			step *= cfg.shrink
		if accepted is None:
			break

		trial, value = accepted
		moved = float(np.max(np.abs(trial - x)))
		x, R = trial, value
		iterations += 1
		step = min(step / cfg.shrink, 1e6)
		if moved < cfg.tol_step:
			break

	value = Rayleigh(g, x, p)
	residual = Residual(g, x, value, p)
	return SpectralResult(p, value, x, residual, iterations, converged or residual < cfg.tol_residual, 'min')


def _SignPattern(x: np.ndarray) -> Tuple[int, ...]:
	return tuple(int(np.sign(v)) if abs(v) > Resolution else 0 for v in x)


def _Best(results: Sequence[SpectralResult]) -> SpectralResult:
	lowest = min(r.value for r in results)
	tied = [r for r in results if r.value - lowest <= TieWindow]
	return min(tied, key=lambda r: (_SignPattern(r.vector), r.value))


@lru_cache(maxsize=64)
def _ExactWitness(g: Graph) -> VertexSubsetPair:
	return BruteForcePsi(g, cap=WitnessStartCap)[1]


def Starts(g: Graph, p: float, cfg: SolverConfig, warm_starts: Iterable[np.ndarray] = ()) -> List[Tuple[str, np.ndarray]]:
	starts = []
	for k, w in enumerate(warm_starts):
		w = np.asarray(w, dtype=float)
		starts.append((f'warm-{k}', w))
		if np.any(np.abs(w) > Resolution):
			starts.append((f'warm-{k}-pair', SignedIndicator(g.n, ThresholdSweep(g, w).best_pair)))

	# R_p of a pair indicator is at most 2^(p-1) psi(S,T)
	if g.n <= WitnessStartCap:
		starts.append(('psi-witness', SignedIndicator(g.n, _ExactWitness(g))))
	_, pair = GreedyPsiPair(g)
	starts.append(('greedy-indicator', SignedIndicator(g.n, pair)))

	basis = np.zeros(g.n)
	basis[int(np.argmin(g.degrees))] = 1.0
	starts.append(('min-degree-basis', basis))

	root = SplitMix64(cfg.seed)
	for k in range(cfg.restarts):
		starts.append((f'random-{k}', root.Spawn(RestartStreamBase + k).Vector(g.n)))
	return starts


def MinimizeQ(g: Graph, p: float, cfg: SolverConfig, warm_starts: Iterable[np.ndarray] = ()) -> SpectralResult:
	_RequireSmooth(p)
	if g.m == 0:
		return _EmptyGraphResult(g, p, 'min')

	starts = Starts(g, p, cfg, warm_starts)

	def Run(start):
		name, vector = start
		result = _Descend(g, p, vector, cfg)
		if result is None:
			logger.debug("start %s diverged at p=%g", name, p)
		else:
			logger.debug("start %s: R_p=%.12g residual=%.3e iterations=%d", name, result.value, result.residual, result.iterations)
		return result

	if cfg.threads > 1:
		with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
			results = list(pool.map(Run, starts))
	else:
		results = [Run(start) for start in starts]

	finished = [r for r in results if r is not None]
	if not finished:
		raise NumericalFailure(f"All {len(starts)} starts produced non-finite values at p={p}")

	best = _Best(finished)
	if not best.converged:
		logger.warning("best minimiser for p=%g did not reach the residual tolerance (%.3e)", p, best.residual)
	logger.info("q_p(p=%g)=%.12g from %d starts", p, best.value, len(finished))
	return best


def ContinuationSweep(g: Graph, cfg: SolverConfig) -> List[SpectralResult]:
	if not g.IsConnected():
		logger.warning("continuation sweep on a disconnected graph with %d vertices", g.n)
	results = []
	warm = ()
	for p in cfg.continuation:
		result = MinimizeQ(g, p, cfg, warm_starts=warm)
		results.append(result)
		warm = (result.vector,)
	return results


def SmallestAtOne(g: Graph, cfg: SolverConfig, cap: int = OracleCap) -> SpectralResult:
	if g.m == 0:
		return _EmptyGraphResult(g, 1.0, 'min')

	if g.n <= cap:
		psi, pair = BruteForcePsi(g, cap=cap)
		upper_bound = False
	else:
		last = ContinuationSweep(g, cfg)[-1]
		sweep = ThresholdSweep(g, last.vector)
		psi, pair = sweep.psi_x, sweep.best_pair
		upper_bound = True
		logger.info("n=%d exceeds the psi oracle cap %d; q_1 reported as an upper bound", g.n, cap)

	vector = Normalize(SignedIndicator(g.n, pair), 1.0)
	return SpectralResult(1.0, float(psi), vector, None, 0, True, 'min', exact=psi, upper_bound=upper_bound)


def LargestAtOne(g: Graph) -> SpectralResult:
	if g.m == 0:
		return _EmptyGraphResult(g, 1.0, 'max')
	vector = np.zeros(g.n)
	vector[int(np.argmax(g.degrees))] = 1.0
	return SpectralResult(1.0, float(g.max_degree), vector, None, 0, True, 'max', exact=Fraction(g.max_degree))
