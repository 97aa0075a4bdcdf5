# rollsieve - Empirical checks of the prime-sum estimates behind every log log n factor
from __future__ import annotations

from math import fsum, log

from rollsieve.errors import SieveRangeError
from rollsieve.sieve.baseline import base_primes

MIN_MERTENS_X = 16
MIN_PNT_X = 10_000


def mertens_check(x: int) -> float:
    """sum of 1/p over p <= x, minus ln ln x. Tends to a constant."""
    if x < MIN_MERTENS_X:
        raise SieveRangeError(f"mertens_check needs x >= {MIN_MERTENS_X}, got {x}")
    return fsum(1.0 / p for p in base_primes(x).primes) - log(log(x))


def pnt_check(x: int) -> float:
    """pi(x) ln x / x."""
    if x < MIN_PNT_X:
        raise SieveRangeError(f"pnt_check needs x >= {MIN_PNT_X}, got {x}")
    return len(base_primes(x).primes) * log(x) / x


def chebyshev_check(x: int) -> float:
    """theta(x) / x, theta(x) = sum of ln p over p <= x."""
    if x < MIN_PNT_X:
        raise SieveRangeError(f"chebyshev_check needs x >= {MIN_PNT_X}, got {x}")
    return fsum(log(p) for p in base_primes(x).primes) / x


def spread(values: list[float]) -> float:
    return max(values) - min(values)
