"""
Registry of the eigenvalue inequalities that the verify command checks.

Each check is a function (context, p) -> list of Verdict registered under a
stable name. Checks marked per_p run once per requested p > 1, the others
once per graph. Computed eigenvalues come from the iterative solvers, so a
computed q_p is an upper bound on the true value and a computed lambda_p a
lower bound; slacks below account for solver tolerance only.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from entities.config import SolverConfig
from entities.errors import ContractViolation, OracleCapExceeded, UsageError
from entities.graph import Graph, RemoveEdges, SignedIndicator, SubsetEdgeCounts

from main.config import SubgraphTrials

from mechanics.extractor import ThresholdSweep
from mechanics.functional import PNorm, PValue, Rayleigh
from mechanics.rng import SplitMix64
from mechanics.solver import MaximizeLambda, MinimizeQ, SpectralResult

from oracles import BruteForcePsi, BuildGPrime, ChromaticNumber, HgRows, HgSweep, PlainDifferenceSum, VertexBipartiteness, VerifyGxInequality

logger = logging.getLogger(__name__)

SolverSlack = 1e-6
LowerSlack = 1e-9
EqualityWindow = 1e-6
PerronFloor = 1e-10
# below this p the maximiser entries scale like t^(1/(p-1)) and only the sign is checked
PerronFloorFrom = 1.5

SubgraphStream = 1 << 20
PerronSeedOffset = 1

Number = Union[float, Fraction]


@dataclass(frozen=True)
class Verdict:
	name: str
	p: Optional[float]
	relation: str
	lhs: Optional[Number]
	rhs: Optional[Number]
	status: str
	equality: bool = False
	note: str = ''

	@property
	def failed(self) -> bool:
		return self.status == 'fail'


class Skip(Exception):
	pass


def Compare(name, p, relation, lhs, rhs, slack=0, equality=False, note='') -> Verdict:
	# zero slack compares Fractions exactly
	if relation == '<=':
		holds = lhs <= rhs + slack if slack else lhs <= rhs
	elif relation == '>=':
		holds = lhs >= rhs - slack if slack else lhs >= rhs
	elif relation == '==':
		holds = abs(lhs - rhs) <= slack if slack else lhs == rhs
	else:
		raise ContractViolation(f"Unknown relation: {relation}")
	return Verdict(name, p, relation, lhs, rhs, 'pass' if holds else 'fail', equality, note)


class Context:
	def __init__(self, g: Graph, cfg: SolverConfig, trials: int = SubgraphTrials):
		self.g = g
		self.cfg = cfg
		self.trials = trials
		self.minimum: Dict[float, SpectralResult] = {}
		self.maximum: Dict[float, SpectralResult] = {}

	@cached_property
	def connected(self) -> bool:
		return self.g.IsConnected()

	def Minimum(self, p: float) -> SpectralResult:
		if p not in self.minimum:
			self.minimum[p] = MinimizeQ(self.g, p, self.cfg, warm_starts=self._WitnessStart())
		return self.minimum[p]

	def _WitnessStart(self):
		if self.g.m == 0:
			return ()
		try:
			return (SignedIndicator(self.g.n, self.psi_witness),)
		except Skip:
			return ()

	def Maximum(self, p: float) -> SpectralResult:
		if p not in self.maximum:
			self.maximum[p] = MaximizeLambda(self.g, p, self.cfg)
		return self.maximum[p]

	def _Oracle(self, name, compute):
		key = '_oracle_' + name
		if key not in self.__dict__:
			try:
				self.__dict__[key] = compute(self.g)
			except OracleCapExceeded as refusal:
				self.__dict__[key] = refusal
		value = self.__dict__[key]
		if isinstance(value, OracleCapExceeded):
			raise Skip(str(value))
		return value

	@property
	def psi(self) -> Fraction:
		return self._Oracle('psi', BruteForcePsi)[0]

	@property
	def psi_witness(self):
		return self._Oracle('psi', BruteForcePsi)[1]

	@property
	def chi(self) -> int:
		return self._Oracle('chi', ChromaticNumber)

	@property
	def nu(self) -> int:
		return self._Oracle('nu', VertexBipartiteness)[0]

	def RequireEdges(self):
		if self.g.m == 0:
			raise Skip("graph has no edges")

	def RequireConnected(self):
		self.RequireEdges()
		if not self.connected:
			raise Skip("premise needs a connected graph")


@dataclass(frozen=True)
class Check:
	name: str
	run: Callable[[Context, Optional[float]], List[Verdict]]
	per_p: bool


Checks: Dict[str, Check] = {}


def Register(name: str, per_p: bool = True):
	def Decorate(function):
		Checks[name] = Check(name, function, per_p)
		return function
	return Decorate


def TheoremLower(psi: Number, delta: int, p: float) -> float:
	if delta == 0:
		return 0.0
	return (2.0 / delta) ** (p - 1) * (float(psi) / p) ** p


def ChromaticFactor(chi: int, p: float) -> float:
	return ((chi - 2) ** (p - 1) + 2 ** (p - 1)) / ((chi - 1) ** (p - 1) + 1)


@Register('basis-bounds')
def BasisBounds(ctx: Context, p: float) -> List[Verdict]:
	g = ctx.g
	return [
		Compare('basis-bounds', p, '<=', ctx.Minimum(p).value, float(g.min_degree), SolverSlack, note='q_p <= delta'),
		Compare('basis-bounds', p, '>=', ctx.Maximum(p).value, float(g.max_degree), SolverSlack, note='lambda_p >= Delta'),
	]


@Register('subgraph')
def Subgraph(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireEdges()
	g = ctx.g
	base_min, base_max = ctx.Minimum(p), ctx.Maximum(p)
	stream = SplitMix64(ctx.cfg.seed).Spawn(SubgraphStream + int(round(p * 1000)))
	light = ctx.cfg.With(restarts=0)
	WorstQ = WorstLambda = -np.inf

	for _ in range(ctx.trials):
		dropped = stream.Sample(g.edges, 1 + stream.Below(g.m))
		h = RemoveEdges(g, dropped)
		# G's minimiser is feasible for H with Q_H <= Q_G
		q = MinimizeQ(h, p, light, warm_starts=(base_min.vector,)).value
		lam = MaximizeLambda(h, p, light).value
		WorstQ = max(WorstQ, q - base_min.value)
		WorstLambda = max(WorstLambda, lam - base_max.value)

	return [
		Compare('subgraph', p, '<=', WorstQ, 0.0, SolverSlack, note=f'max q_p(H) - q_p(G) over {ctx.trials} edge deletions'),
		Compare('subgraph', p, '<=', WorstLambda, 0.0, SolverSlack, note=f'max lambda_p(H) - lambda_p(G) over {ctx.trials} edge deletions'),
	]


@Register('degree-bounds')
def DegreeBounds(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireEdges()
	g = ctx.g
	lam = ctx.Maximum(p).value
	lower = 2 ** (p - 1) * 2 * g.m / g.n
	upper = 2 ** (p - 1) * g.max_degree
	AtLower = abs(lam - lower) <= EqualityWindow
	AtUpper = abs(lam - upper) <= EqualityWindow
	verdicts = [
		Compare('degree-bounds', p, '>=', lam, lower, SolverSlack, AtLower, note='lambda_p >= 2^(p-1) 2m/n'),
		Compare('degree-bounds', p, '<=', lam, upper, SolverSlack, AtUpper, note='lambda_p <= 2^(p-1) Delta'),
	]
	if ctx.connected:
		matches = AtLower == g.is_regular and AtUpper == g.is_regular
		verdicts.append(Verdict(
			'degree-bounds', p, 'iff', float(AtLower and AtUpper), float(g.is_regular),
			'pass' if matches else 'fail', AtLower and AtUpper, note='equality iff regular',
		))
	return verdicts


@Register('holder')
def Holder(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireEdges()
	g = ctx.g
	q = PValue(p).q
	d = np.asarray(g.degrees, dtype=float)
	edgewise = ((d[g.heads] ** q + d[g.tails] ** q) / 2) ** (1 / q)
	bound = 2 ** (p - 1) * float(edgewise.max())
	lam = ctx.Maximum(p).value
	return [Compare('holder', p, '<=', lam, bound, SolverSlack, abs(lam - bound) <= EqualityWindow,
		note='lambda_p <= 2^(p-1) max ((d_i^q + d_j^q)/2)^(1/q)')]


@Register('perron')
def Perron(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireConnected()
	x = ctx.Maximum(p).vector
	other = MaximizeLambda(ctx.g, p, ctx.cfg.With(seed=ctx.cfg.seed + PerronSeedOffset)).vector
	floor = float(np.min(np.abs(x)))
	uniform = bool(np.all(x > 0) or np.all(x < 0))
	limit = PerronFloor if p >= PerronFloorFrom else 0.0
	gap = float(min(np.max(np.abs(x - other)), np.max(np.abs(x + other))))
	return [
		Verdict('perron', p, '>', floor, limit, 'pass' if uniform and floor > limit else 'fail',
			note='maximiser has one strict sign'),
		Compare('perron', p, '<=', gap, 0.0, SolverSlack, note='two seeds agree up to sign'),
	]


@Register('theorem-sandwich')
def TheoremSandwich(ctx: Context, p: float) -> List[Verdict]:
	psi = ctx.psi
	q = ctx.Minimum(p).value
	return [
		Compare('theorem-sandwich', p, '>=', q, TheoremLower(psi, ctx.g.max_degree, p), LowerSlack,
			note='q_p >= (2/Delta)^(p-1) (psi/p)^p'),
		Compare('theorem-sandwich', p, '<=', q, 2 ** (p - 1) * float(psi), SolverSlack, note='q_p <= 2^(p-1) psi'),
	]


@Register('sharper-lower-bound')
def SharperLowerBound(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireEdges()
	result = ctx.Minimum(p)
	h_g = HgSweep(BuildGPrime(ctx.g, result.vector))
	return [Compare('sharper-lower-bound', p, '>=', Rayleigh(ctx.g, result.vector, p),
		TheoremLower(h_g, ctx.g.max_degree, p), LowerSlack, note=f'R_p(x) >= (2/Delta)^(p-1) (psi(x)/p)^p, psi(x)={h_g}')]


@Register('upper-bound-lemma')
def UpperBoundLemma(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireEdges()
	minimum = ctx.Minimum(p)
	q = minimum.value
	try:
		pair = ctx.psi_witness
	except Skip:
		pair = ThresholdSweep(ctx.g, minimum.vector).best_pair
		# a warm descent also starts from this pair's indicator
		q = min(q, MinimizeQ(ctx.g, p, ctx.cfg.With(restarts=0), warm_starts=(minimum.vector,)).value)
	e_S, e_T, cut = SubsetEdgeCounts(ctx.g, pair)
	size = len(pair.union)
	formula = (2 ** p * (e_S + e_T) + cut) / size
	value = Rayleigh(ctx.g, SignedIndicator(ctx.g.n, pair), p)
	psi_pair = Fraction(2 * e_S + 2 * e_T + cut, size)
	return [
		Compare('upper-bound-lemma', p, '<=', q * size, 2 ** p * (e_S + e_T) + cut, SolverSlack * size,
			note='q_p |S u T| <= 2^p e(S) + 2^p e(T) + cut(S u T)'),
		Compare('upper-bound-lemma', p, '==', value, formula, LowerSlack, note='R_p(indicator) = (2^p e(S) + 2^p e(T) + cut)/|S u T|'),
		Compare('upper-bound-lemma', p, '<=', value, 2 ** (p - 1) * float(psi_pair), LowerSlack, note='R_p(indicator) <= 2^(p-1) psi(S,T)'),
	]


@Register('complete-graph-ratio')
def CompleteGraphRatio(ctx: Context, p: float) -> List[Verdict]:
	g = ctx.g
	if not (g.n >= 3 and g.IsComplete()):
		raise Skip("only complete graphs on at least 3 vertices")
	n = g.n
	x = -np.ones(n)
	x[0] = n - 1
	formula = (n - 2) * ((n - 2) ** (p - 1) + 2 ** (p - 1)) / ((n - 1) ** (p - 1) + 1)
	q = ctx.Minimum(p).value
	return [Compare('complete-graph-ratio', p, '==', Rayleigh(g, x, p), formula, LowerSlack,
		equality=abs(p - 2) < 1e-12, note=f'R_p(n-1,-1,...,-1); computed q_p={q:.12g} {"<" if q < formula else ">="} ratio')]


@Register('wilf')
def Wilf(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireConnected()
	chi = ctx.chi
	lam = ctx.Maximum(p).value
	bound = 2 ** (p - 1) * (chi - 1)
	equal = abs(lam - bound) <= EqualityWindow
	special = ctx.g.IsComplete() or ctx.g.IsOddCycle()
	return [
		Compare('wilf', p, '<=', bound, lam, SolverSlack, equal, note='2^(p-1)(chi-1) <= lambda_p'),
		Verdict('wilf', p, 'iff', float(equal), float(special), 'pass' if equal == special else 'fail', equal,
			note='equality iff complete or odd cycle'),
	]


@Register('chromatic-q')
def ChromaticQ(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireConnected()
	chi = ctx.chi
	if chi < 3:
		raise Skip("needs chi >= 3")
	g = ctx.g
	bound = (2 * g.m / g.n) * (chi - 2) / (chi - 1) * ChromaticFactor(chi, p)
	q = ctx.Minimum(p).value
	return [Compare('chromatic-q', p, '<=', q, bound, SolverSlack, abs(q - bound) <= EqualityWindow,
		note='q_p <= (2m/n)(chi-2)/(chi-1) ((chi-2)^(p-1)+2^(p-1))/((chi-1)^(p-1)+1)')]


@Register('spread')
def Spread(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireConnected()
	chi = ctx.chi
	if chi < 2:
		raise Skip("needs chi >= 2")
	bound = 2 ** (p - 1) * (chi - 1) - (chi - 2) * ChromaticFactor(chi, p)
	spread = ctx.Maximum(p).value - ctx.Minimum(p).value
	return [Compare('spread', p, '>=', spread, bound, SolverSlack, abs(spread - bound) <= EqualityWindow,
		note='lambda_p - q_p lower bound')]


@Register('vertex-bipartiteness')
def VertexBipartitenessBound(ctx: Context, p: float) -> List[Verdict]:
	nu = ctx.nu
	return [Compare('vertex-bipartiteness', p, '<=', ctx.Minimum(p).value, float(nu), SolverSlack, note='q_p <= nu')]


@Register('psi-limits', per_p=False)
def PsiLimits(ctx: Context, p: Optional[float]) -> List[Verdict]:
	g = ctx.g
	psi = ctx.psi
	verdicts = [Compare('psi-limits', None, '<=', psi, Fraction(ctx.nu), note='psi <= nu')]
	if ctx.connected and g.m:
		chi = ctx.chi
		verdicts.append(Compare('psi-limits', None, '<=', psi, Fraction(g.max_degree - 1), note='psi <= Delta - 1'))
		if chi >= 2:
			verdicts.append(Compare('psi-limits', None, '<=', psi, Fraction(2 * g.m, g.n) * Fraction(chi - 2, chi - 1),
				note='psi <= (2m/n)(chi-2)/(chi-1)'))
	return verdicts


@Register('gx')
def Gx(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireEdges()
	x = ctx.Minimum(p).vector
	lhs, rhs, holds = VerifyGxInequality(BuildGPrime(ctx.g, x), x, p)
	return [Verdict('gx', p, '<=', lhs, rhs, 'pass' if holds else 'fail', abs(lhs - rhs) <= 1e-12,
		note="sum over E' |g_i - g_j|^p <= sum over E |x_i + x_j|^p")]


@Register('lemma-est')
def LemmaEst(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireEdges()
	x = ctx.Minimum(p).vector
	gp = BuildGPrime(ctx.g, x)
	h_g = HgSweep(gp)
	lhs = TheoremLower(h_g, gp.gprime.max_degree, p) * PNorm(gp.g_vec, p) ** p
	return [Compare('lemma-est', p, '<=', lhs, PlainDifferenceSum(gp, p), LowerSlack,
		note="(2/Delta(G'))^(p-1) (h_g/p)^p ||g||^p <= sum over E' |g_i - g_j|^p")]


@Register('hg-identity')
def HgIdentity(ctx: Context, p: float) -> List[Verdict]:
	ctx.RequireEdges()
	gp = BuildGPrime(ctx.g, ctx.Minimum(p).vector)
	rows = HgRows(gp)
	broken = [row for row in rows if not row.identity]
	verdicts = [Verdict('hg-identity', p, '==', float(len(broken)), 0.0, 'fail' if broken else 'pass',
		note=f"cut_G'(C_t) = 2e(S_t)+2e(T_t)+cut(S_t u T_t) on {len(rows)} thresholds")]
	h_g = min(Fraction(row.cut_gprime, row.size) for row in rows)
	try:
		verdicts.append(Compare('hg-identity', p, '>=', h_g, ctx.psi, note='h_g >= psi'))
	except Skip as reason:
		verdicts.append(Verdict('hg-identity', p, '>=', h_g, None, 'skipped', note=str(reason)))
	return verdicts


def RunCheck(check: Check, ctx: Context, p: Optional[float]) -> List[Verdict]:
	try:
		verdicts = check.run(ctx, p)
	except Skip as reason:
		logger.info("check %s at p=%s skipped: %s", check.name, p, reason)
		return [Verdict(check.name, p, '', None, None, 'skipped', note=str(reason))]
	for verdict in verdicts:
		if verdict.failed:
			logger.warning("check %s at p=%s failed: %s %s %s (%s)", verdict.name, p, verdict.lhs, verdict.relation, verdict.rhs, verdict.note)
	return verdicts


def RunRegistry(g: Graph, p_list: Sequence[float], cfg: SolverConfig, trials: int = SubgraphTrials,
		names: Optional[Iterable[str]] = None) -> List[Verdict]:
	for p in p_list:
		if not p > 1:
			raise UsageError(f"verification needs every p > 1, got {p}")
	selected = list(Checks) if names is None else list(names)
	unknown = [name for name in selected if name not in Checks]
	if unknown:
		raise UsageError(f"Unknown checks: {unknown}")

	ctx = Context(g, cfg, trials)
	verdicts = []
	for name in selected:
		check = Checks[name]
		if check.per_p:
			for p in p_list:
				verdicts.extend(RunCheck(check, ctx, p))
		else:
			verdicts.extend(RunCheck(check, ctx, None))
	return verdicts
