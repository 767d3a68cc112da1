from enum import IntEnum

class ExitCode(IntEnum):
	Success = 0
	Usage = 1
	Parse = 2
	Numerical = 3
	OracleCap = 4

class PLapError(Exception):
	code = ExitCode.Usage

class UsageError(PLapError, ValueError):
	code = ExitCode.Usage

class ContractViolation(PLapError, ValueError):
	code = ExitCode.Usage

class ParseError(PLapError, ValueError):
	code = ExitCode.Parse

	def __init__(self, message: str, line: int | None = None):
		self.line = line
		if line is not None:
			message = f"line {line}: {message}"
		super().__init__(message)

class NumericalFailure(PLapError, ArithmeticError):
	code = ExitCode.Numerical

# R_p went down during power iteration; only a bug can cause this
class MonotonicityError(NumericalFailure):
	pass

class OracleCapExceeded(PLapError, ValueError):
	code = ExitCode.OracleCap

	def __init__(self, oracle: str, n: int, cap: int):
		self.oracle = oracle
		self.n = n
		self.cap = cap
		super().__init__(f"{oracle} refuses graphs with n={n}: the cap is n <= {cap}")
