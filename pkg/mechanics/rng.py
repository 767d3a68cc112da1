"""
SplitMix64: the single source of randomness in the toolkit.

State advance and output mixing, all arithmetic modulo 2^64:

    state = state + 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

Floats take the top 53 bits of an output. Child streams come from Spawn(k),
which seeds a new generator with the mixed value of seed + (k + 1) * golden,
so restart k sees the same numbers whatever order or thread runs it.
"""
import math
from typing import List, Optional, Sequence

import numpy as np

from entities.errors import ContractViolation

from main.config import DefaultSeed

Mask = (1 << 64) - 1
Golden = 0x9E3779B97F4A7C15


def Mix(z: int) -> int:
	z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & Mask
	z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & Mask
	return z ^ (z >> 31)


class SplitMix64:
	def __init__(self, seed: Optional[int] = None):
		self.seed = (seed if seed is not None else DefaultSeed) & Mask
		self.state = self.seed

	def Next(self) -> int:
		self.state = (self.state + Golden) & Mask
		return Mix(self.state)

	def Uniform(self) -> float:
		return (self.Next() >> 11) * 2.0 ** -53

	def Normal(self) -> float:
		# Box-Muller, one variate per call
		u1 = 1.0 - self.Uniform()
		u2 = self.Uniform()
		return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

	def Vector(self, n: int, kind: str = 'normal') -> np.ndarray:
		if kind == 'normal':
			return np.array([self.Normal() for _ in range(n)])
		elif kind == 'uniform':
			return np.array([self.Uniform() for _ in range(n)])
		raise ContractViolation(f"Unknown distribution: {kind}")

	def Below(self, bound: int) -> int:
		if bound < 1:
			raise ContractViolation("Bound must be positive.")
		# rejection keeps the draw unbiased
		limit = (Mask + 1) - ((Mask + 1) % bound)
		while True:
			value = self.Next()
			if value < limit:
				return value % bound

	def Sample(self, population: Sequence, k: int) -> List:
		if not 0 <= k <= len(population):
			raise ContractViolation(f"Cannot sample {k} items from {len(population)}.")
		pool = list(population)
		for i in range(k):
			j = i + self.Below(len(pool) - i)
			pool[i], pool[j] = pool[j], pool[i]
		return pool[:k]

	def Spawn(self, index: int) -> 'SplitMix64':
		return SplitMix64(Mix((self.seed + (index + 1) * Golden) & Mask))

	def __repr__(self):
		return f'SplitMix64 seeded with {self.seed}'
