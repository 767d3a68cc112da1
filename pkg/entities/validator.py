from __future__ import annotations

from enum import IntEnum

class ValidationCode(IntEnum):
	Valid = 0
	Invalid = 1


class ConfigValidator:
	Positive = ('tol_residual', 'tol_step', 'initial_step')
	AtLeastOne = ('max_iters', 'threads')
	NonNegative = ('restarts',)

	# continuation must stay away from the non-smooth p = 1
	MinimumP = 1 + 1e-9

	@classmethod
	def ValidateFields(cls, config) -> set:
		ErrorsFound = set()

		for name in cls.Positive:
			if not getattr(config, name) > 0:
				ErrorsFound.add(f"{name} must be > 0, got {getattr(config, name)}")
		for name in cls.AtLeastOne:
			if getattr(config, name) < 1:
				ErrorsFound.add(f"{name} must be >= 1, got {getattr(config, name)}")
		for name in cls.NonNegative:
			if getattr(config, name) < 0:
				ErrorsFound.add(f"{name} must be >= 0, got {getattr(config, name)}")

		if not 0 < config.shrink < 1:
			ErrorsFound.add(f"shrink must lie in (0, 1), got {config.shrink}")

		return ErrorsFound

	@classmethod
	def ValidateSchedule(cls, schedule) -> set:
		ErrorsFound = set()
		if not schedule:
			ErrorsFound.add("continuation schedule is empty")
		for p in schedule:
			if p < cls.MinimumP:
				ErrorsFound.add(f"continuation value {p} is below {cls.MinimumP}")
		for a, b in zip(schedule, schedule[1:]):
			if not a > b:
				ErrorsFound.add(f"continuation must be strictly decreasing, found {a} then {b}")
		return ErrorsFound

	@classmethod
	def Validate(cls, config) -> tuple[ValidationCode, set]:
		ErrorsFound = cls.ValidateFields(config) | cls.ValidateSchedule(config.continuation)
		Validation = ValidationCode.Valid if ErrorsFound == set() else ValidationCode.Invalid
		return Validation, ErrorsFound
