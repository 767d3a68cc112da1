from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from entities.entity import YamlRecord
from entities.errors import UsageError
from entities.validator import ConfigValidator, ValidationCode

from main.config import DefaultSchedule, DefaultSeed, SeedVariable

@dataclass(frozen=True)
class SolverConfig(YamlRecord):
	tol_residual: float = 1e-8
	tol_step: float = 1e-10
	max_iters: int = 5000
	restarts: int = 8
	seed: int = DefaultSeed
	continuation: Tuple[float, ...] = DefaultSchedule
	shrink: float = 0.5
	initial_step: float = 1.0
	threads: int = 1

	def __post_init__(self):
		object.__setattr__(self, 'continuation', tuple(float(p) for p in self.continuation))
		Validation, Errors = ConfigValidator.Validate(self)
		if Validation == ValidationCode.Invalid:
			raise UsageError('Invalid solver configuration: ' + '; '.join(sorted(Errors)))

	def With(self, **changes) -> SolverConfig:
		return replace(self, **{k: v for k, v in changes.items() if v is not None})


def ResolveSeed(flag: Optional[int], fallback: int = DefaultSeed) -> int:
	if flag is not None:
		return flag
	value = os.environ.get(SeedVariable)
	if value is None or value.strip() == '':
		return fallback
	try:
		return int(value, 0)
	except ValueError:
		raise UsageError(f"{SeedVariable}={value!r} is not an integer seed") from None
