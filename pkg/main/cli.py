"""
Command-line surface: spectrum, sweep, extract, verify and oracle.

Every command reads an edge-list file and writes one report (JSON schema v1
or CSV) to stdout or --out. Logging goes to stderr only.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from entities.config import ResolveSeed, SolverConfig
from entities.errors import ExitCode, ParseError, PLapError, UsageError
from entities.graph import Connectivity, Graph, ParseEdgeList

from main.config import DefaultSeed, SchemaVersion, SubgraphTrials, VectorDigits, VectorPrintLimit

from mechanics.extractor import PsiLimitTrace, RemovalCertificate, ThresholdSweep
from mechanics.solver import ContinuationSweep, LargestAtOne, MaximizeLambda, MinimizeQ, SmallestAtOne, SpectralResult

from oracles import BruteForcePsi, DenseQ2Spectrum, OptimalColoring, VertexBipartiteness

from rules.inequalities import Checks, RunRegistry

from utils.fields import Dict as Fields, FlattenFields, Plain

logger = logging.getLogger(__name__)

LogFormat = '%(levelname)s %(name)s: %(message)s'
DefaultPList = (1.1, 1.5, 2.0, 3.0)
DefaultExtractP = 1.05


@dataclass
class RunReport:
	command: str
	graph: dict
	config: dict
	payload: dict
	rows: List[dict] = field(default_factory=list)
	timings: Optional[Dict[str, float]] = None
	exit_code: int = ExitCode.Success

	def Dict(self) -> dict:
		report = {
			'schema_version': SchemaVersion,
			'command': self.command,
			'graph': self.graph,
			'config': self.config,
			self.command: self.payload,
		}
		if self.timings is not None:
			report['timings'] = self.timings
		return report

	def Json(self) -> str:
		return json.dumps(Plain(self.Dict()), indent=2) + '\n'

	def Csv(self) -> str:
		rows = [FlattenFields(Plain(row)) for row in self.rows]
		columns = []
		for row in rows:
			columns += [key for key in row if key not in columns]
		buffer = io.StringIO()
		writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n')
		writer.writeheader()
		writer.writerows(rows)
		return buffer.getvalue()


class Timer:
	def __init__(self, enabled: bool):
		self.enabled = enabled
		self.phases = {}

	@contextmanager
	def Phase(self, name: str):
		start = time.perf_counter()
		try:
			yield
		finally:
			self.phases[name] = self.phases.get(name, 0.0) + time.perf_counter() - start

	def Dict(self) -> Optional[Dict[str, float]]:
		return dict(self.phases) if self.enabled else None


class ArgumentParser(argparse.ArgumentParser):
	def error(self, message):
		raise UsageError(message)


def _Float(text: str) -> float:
	try:
		return float(text)
	except ValueError:
		raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None


def _FloatList(text: str) -> List[float]:
	try:
		return [float(token) for token in text.split(',') if token.strip()]
	except ValueError:
		raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of numbers") from None


def _Seed(text: str) -> int:
	try:
		return int(text, 0)
	except ValueError:
		raise argparse.ArgumentTypeError(f"{text!r} is not an integer seed") from None


def BuildParser() -> ArgumentParser:
	common = ArgumentParser(add_help=False)
	common.add_argument('graph_file', type=Path, help='edge-list file')
	common.add_argument('--seed', type=_Seed, default=None, help='seed for every random stream')
	common.add_argument('--config', default=None, help='YAML solver configuration')
	common.add_argument('--threads', type=int, default=None, help='worker threads for restarts')
	common.add_argument('--out', type=Path, default=None, help='write the report here instead of stdout')
	common.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG')
	common.add_argument('--timings', action='store_true', help='add wall-clock timings per phase')
	common.add_argument('--vector', action='store_true', help='print vectors even above the size limit')
	output = common.add_mutually_exclusive_group()
	output.add_argument('--json', dest='format', action='store_const', const='json', default='json')
	output.add_argument('--csv', dest='format', action='store_const', const='csv')

	parser = ArgumentParser(prog='plap', description='Signless p-Laplacian spectra and near-bipartite pairs')
	commands = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

	spectrum = commands.add_parser('spectrum', parents=[common], help='smallest and largest p-eigenvalues')
	spectrum.add_argument('--p', type=_Float, required=True)
	spectrum.add_argument('--which', choices=('min', 'max', 'both'), default='both')

	sweep = commands.add_parser('sweep', parents=[common], help='continuation in p with the psi trace')
	sweep.add_argument('--schedule', type=_FloatList, default=None, help='strictly decreasing p values, all > 1')

	extract = commands.add_parser('extract', parents=[common], help='best thresholded pair of a minimiser')
	extract.add_argument('--p', type=_Float, default=DefaultExtractP)

	verify = commands.add_parser('verify', parents=[common], help='run the inequality registry')
	verify.add_argument('--p-list', type=_FloatList, default=list(DefaultPList))
	verify.add_argument('--trials', type=int, default=SubgraphTrials, help='edge deletions per subgraph check')
	verify.add_argument('--checks', type=lambda text: [name.strip() for name in text.split(',') if name.strip()],
		default=None, help=f"comma-separated subset of: {', '.join(Checks)}")

	oracle = commands.add_parser('oracle', parents=[common], help='exact small-graph oracles')
	oracle.add_argument('--what', choices=('psi', 'q2', 'chi', 'nu'), required=True)

	return parser


def ConfigureLogging(verbosity: int):
	level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
	logging.basicConfig(level=level, format=LogFormat, stream=sys.stderr, force=True)


def LoadGraph(path: Path) -> Graph:
	try:
		text = path.read_text()
	except OSError as error:
		raise UsageError(f"Cannot read {path}: {error.strerror}") from None
	except UnicodeDecodeError:
		raise ParseError(f"{path} is not a text file") from None
	return ParseEdgeList(text)


def LoadConfig(args) -> SolverConfig:
	if args.config is not None:
		cfg = SolverConfig.Load(args.config)
		fallback = cfg.seed
	else:
		cfg = SolverConfig()
		fallback = DefaultSeed
	if args.threads is not None and args.threads < 1:
		raise UsageError(f"--threads must be at least 1, got {args.threads}")
	return cfg.With(seed=ResolveSeed(args.seed, fallback), threads=args.threads)


def GraphSummary(g: Graph) -> dict:
	components = Connectivity(g)
	return {
		'n': g.n,
		'm': g.m,
		'min_degree': g.min_degree,
		'max_degree': g.max_degree,
		'connected': len(components) == 1,
		'components': len(components),
		'bipartite_components': sum(1 for c in components if c.bipartite),
	}


def ConfigEcho(cfg: SolverConfig) -> dict:
	echo = cfg.Dict()
	echo.pop('threads')
	return echo


def _ShowVector(g: Graph, args) -> bool:
	return args.vector or g.n <= VectorPrintLimit


def ResultFields(result: SpectralResult, show_vector: bool) -> dict:
	fields = {
		'p': result.p,
		'kind': result.kind,
		'value': result.value,
		'exact': result.exact,
		'upper_bound': result.upper_bound,
		'residual': result.residual,
		'iterations': result.iterations,
		'converged': result.converged,
	}
	if show_vector:
		fields['vector'] = Plain(result.vector, VectorDigits)
	return fields


def PairFields(pair) -> dict:
	return {'S': sorted(pair.S), 'T': sorted(pair.T)}


def _RequireP(p: float):
	if not p >= 1:
		raise UsageError(f"p must be at least 1, got {p}")


def CmdSpectrum(g: Graph, cfg: SolverConfig, args, timer: Timer) -> RunReport:
	p = args.p
	_RequireP(p)
	payload = {'p': p, 'which': args.which}
	rows = []

	if args.which in ('min', 'both'):
		with timer.Phase('minimize'):
			result = SmallestAtOne(g, cfg) if p == 1 else MinimizeQ(g, p, cfg)
		payload['min'] = ResultFields(result, _ShowVector(g, args))
		rows.append(ResultFields(result, False))
	if args.which in ('max', 'both'):
		with timer.Phase('maximize'):
			result = LargestAtOne(g) if p == 1 else MaximizeLambda(g, p, cfg)
		payload['max'] = ResultFields(result, _ShowVector(g, args))
		rows.append(ResultFields(result, False))

	return RunReport('spectrum', GraphSummary(g), ConfigEcho(cfg), payload, rows)


def CmdSweep(g: Graph, cfg: SolverConfig, args, timer: Timer) -> RunReport:
	if args.schedule is not None:
		cfg = cfg.With(continuation=tuple(args.schedule))

	with timer.Phase('continuation'):
		results = ContinuationSweep(g, cfg)
	with timer.Phase('threshold-sweep'):
		trace = PsiLimitTrace(results, g)

	points = []
	rows = []
	for result, (p, psi) in zip(results, trace):
		rows.append({
			'p': p,
			'q_p_estimate': result.value,
			'psi_x_num': psi.numerator,
			'psi_x_den': psi.denominator,
			'residual': result.residual,
			'iterations': result.iterations,
		})
		point = ResultFields(result, _ShowVector(g, args))
		point['psi_x'] = psi
		points.append(point)

	payload = {'schedule': list(cfg.continuation), 'points': points}
	return RunReport('sweep', GraphSummary(g), ConfigEcho(cfg), payload, rows)


def CmdExtract(g: Graph, cfg: SolverConfig, args, timer: Timer) -> RunReport:
	p = args.p
	_RequireP(p)

	with timer.Phase('minimize'):
		if p == 1:
			result = SmallestAtOne(g, cfg)
		else:
			# continue down from the schedule entries above p
			schedule = tuple(s for s in cfg.continuation if s > p) + (p,)
			result = ContinuationSweep(g, cfg.With(continuation=schedule))[-1]
	with timer.Phase('threshold-sweep'):
		sweep = ThresholdSweep(g, result.vector)

	pair = sweep.best_pair
	certificate = RemovalCertificate(g, pair)
	payload = {
		'p': p,
		'q_p_estimate': result.value,
		'pair': PairFields(pair),
		'threshold': sweep.best_threshold,
		'psi_x': sweep.psi_x,
		'removal_certificate': {
			'size': len(certificate),
			'edges': [list(edge) for edge in certificate],
		},
		'trace': [Fields(point) for point in sweep.trace],
	}
	row = {'p': p, 'q_p_estimate': result.value, 'S': sorted(pair.S), 'T': sorted(pair.T),
		'threshold': sweep.best_threshold, 'psi_x': sweep.psi_x, 'removed_edges': len(certificate)}
	return RunReport('extract', GraphSummary(g), ConfigEcho(cfg), payload, [row])


def CmdVerify(g: Graph, cfg: SolverConfig, args, timer: Timer) -> RunReport:
	with timer.Phase('registry'):
		verdicts = RunRegistry(g, args.p_list, cfg, trials=args.trials, names=args.checks)

	counts = {status: sum(1 for v in verdicts if v.status == status) for status in ('pass', 'fail', 'skipped')}
	rows = [Fields(v) for v in verdicts]
	payload = {'p_list': list(args.p_list), 'summary': counts, 'verdicts': rows}
	report = RunReport('verify', GraphSummary(g), ConfigEcho(cfg), payload, rows)
	if counts['fail']:
		logger.warning("%d of %d checks failed", counts['fail'], len(verdicts))
		report.exit_code = ExitCode.Numerical
	return report


def CmdOracle(g: Graph, cfg: SolverConfig, args, timer: Timer) -> RunReport:
	with timer.Phase(args.what):
		if args.what == 'psi':
			value, pair = BruteForcePsi(g)
			witness = PairFields(pair)
		elif args.what == 'q2':
			spectrum = DenseQ2Spectrum(g)
			value = spectrum.smallest
			witness = Plain(spectrum.vectors[:, 0], VectorDigits) if _ShowVector(g, args) else None
		elif args.what == 'chi':
			value, colors = OptimalColoring(g)
			witness = colors
		else:
			value, removed = VertexBipartiteness(g)
			witness = sorted(removed)

	payload = {'what': args.what, 'value': value, 'witness': witness}
	if args.what == 'q2':
		payload['largest'] = spectrum.largest
		payload['eigenvalues'] = Plain(spectrum.values, VectorDigits)
	return RunReport('oracle', GraphSummary(g), ConfigEcho(cfg), payload, [{'what': args.what, 'value': value}])


Commands = {
	'spectrum': CmdSpectrum,
	'sweep': CmdSweep,
	'extract': CmdExtract,
	'verify': CmdVerify,
	'oracle': CmdOracle,
}


def Run(args) -> RunReport:
	timer = Timer(args.timings)
	with timer.Phase('parse'):
		g = LoadGraph(args.graph_file)
	cfg = LoadConfig(args)
	logger.info("%s on %s: n=%d m=%d seed=%#x", args.command, args.graph_file, g.n, g.m, cfg.seed)
	report = Commands[args.command](g, cfg, args, timer)
	report.timings = timer.Dict()
	return report


def Emit(report: RunReport, args):
	text = report.Csv() if args.format == 'csv' else report.Json()
	if args.out is not None:
		args.out.write_text(text)
	else:
		sys.stdout.write(text)


def Main(argv=None) -> int:
	ConfigureLogging(0)
	try:
		args = BuildParser().parse_args(argv)
		ConfigureLogging(args.verbose)
		report = Run(args)
		Emit(report, args)
	except PLapError as error:
		logger.error("%s", error)
		return int(error.code)
	return int(report.exit_code)
