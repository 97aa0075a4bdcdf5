# rollsieve - Hard-coded primes below 100 fronting the incremental engines
from __future__ import annotations

from bisect import bisect_left, bisect_right

PRELUDE_LIMIT = 100

PRELUDE_PRIMES: tuple[int, ...] = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)


def prelude_primes(start: int, end: int) -> list[int]:
    """Primes in [start, end] that lie below PRELUDE_LIMIT."""
    lo = bisect_left(PRELUDE_PRIMES, start)
    hi = bisect_right(PRELUDE_PRIMES, end)
    return list(PRELUDE_PRIMES[lo:hi])
