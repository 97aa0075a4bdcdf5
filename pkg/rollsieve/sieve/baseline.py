# rollsieve - Reference sieves: trial division, Eratosthenes, segmented Eratosthenes
from __future__ import annotations

from math import isqrt
from typing import Iterator

import numpy as np

from rollsieve.errors import SieveRangeError
from rollsieve.models import FactoredInteger, PrimalityTable, PrimeList, SegmentBuffer, WorkMeter

logger = __import__("logging").getLogger("rollsieve.sieve.baseline")


def trial_division_is_prime(m: int) -> bool:
    """Root oracle: m >= 2 with no divisor d, 2 <= d <= sqrt(m)."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    for d in range(3, isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True


def simple_sieve(n: int, meter: WorkMeter | None = None) -> PrimalityTable:
    """Sieve of Eratosthenes over 0..n, crossing multiples from 2p."""
    if n < 2:
        raise SieveRangeError(f"simple_sieve needs n >= 2, got {n}")
    bits = np.ones(n + 1, dtype=bool)
    bits[0] = bits[1] = False
    for p in range(2, isqrt(n) + 1):
        if bits[p]:
            bits[2 * p :: p] = False
            if meter is not None:
                meter.crossings += n // p - 1
    return PrimalityTable(limit=n, bits=bits)


def base_primes(limit: int) -> PrimeList:
    """All primes <= limit, ascending."""
    if limit < 1:
        raise SieveRangeError(f"base_primes needs limit >= 1, got {limit}")
    if limit < 2:
        return PrimeList(limit=limit, primes=[])
    return PrimeList(limit=limit, primes=simple_sieve(limit).primes())


def _first_multiple(p: int, left: int) -> int:
    first = left + ((p - (left % p)) % p)
    # a prime inside the segment must not cross itself off
    if first == p:
        first = 2 * p
    return first


def sieve_segment(left: int, right: int, base: PrimeList, meter: WorkMeter | None = None) -> SegmentBuffer:
    """Primality of left..right using the base primes up to sqrt(right)."""
    if left < 2 or right < left:
        raise SieveRangeError(f"sieve_segment needs 2 <= left <= right, got [{left}, {right}]")
    if base.limit < isqrt(right):
        raise SieveRangeError(f"base primes reach {base.limit}, segment ending at {right} needs {isqrt(right)}")
    bits = np.ones(right - left + 1, dtype=bool)
    for p in base.primes:
        if p * p > right:
            break
        first = _first_multiple(p, left)
        if first > right:
            continue
        bits[first - left :: p] = False
        if meter is not None:
            meter.crossings += (right - first) // p + 1
    return SegmentBuffer(left=left, right=right, bits=bits)


def segmented_sieve(n: int, delta: int | None = None, meter: WorkMeter | None = None) -> Iterator[int]:
    """Stream the primes <= n: base primes first, then one segment at a time."""
    if n < 4:
        raise SieveRangeError(f"segmented_sieve needs n >= 4, got {n}")
    root = isqrt(n)
    delta = root if delta is None else delta
    if delta < 1:
        raise SieveRangeError(f"segment size must be >= 1, got {delta}")
    base = base_primes(root)
    yield from base.primes
    for left in range(root + 1, n + 1, delta):
        seg = sieve_segment(left, min(left + delta - 1, n), base, meter)
        yield from seg.primes()


def segmented_primes(start: int, end: int, delta: int | None = None, meter: WorkMeter | None = None) -> Iterator[int]:
    """Primes in [start, end], sieving only the segments that meet the range."""
    if start < 2 or end < start:
        raise SieveRangeError(f"need 2 <= start <= end, got [{start}, {end}]")
    root = isqrt(end)
    delta = max(root, 1) if delta is None else delta
    if delta < 1:
        raise SieveRangeError(f"segment size must be >= 1, got {delta}")
    base = base_primes(max(root, 1))
    for p in base.primes:
        if p >= start:
            yield p
    left = max(start, root + 1)
    while left <= end:
        right = min(left + delta - 1, end)
        yield from sieve_segment(left, right, base, meter).primes()
        left = right + 1


def factor_segment(left: int, right: int, base: PrimeList, meter: WorkMeter | None = None) -> list[FactoredInteger]:
    """Complete factorizations of left..right: the segment bit vector becomes an array of factor lists."""
    if left < 2 or right < left:
        raise SieveRangeError(f"factor_segment needs 2 <= left <= right, got [{left}, {right}]")
    if base.limit < isqrt(right):
        raise SieveRangeError(f"base primes reach {base.limit}, segment ending at {right} needs {isqrt(right)}")
    size = right - left + 1
    cofactor = list(range(left, right + 1))
    factors: list[list[tuple[int, int]]] = [[] for _ in range(size)]
    for p in base.primes:
        if p * p > right:
            break
        first = left + ((p - (left % p)) % p)
        for q in range(first, right + 1, p):
            j = q - left
            e = 0
            while cofactor[j] % p == 0:
                cofactor[j] //= p
                e += 1
            factors[j].append((p, e))
            if meter is not None:
                meter.crossings += 1
    out: list[FactoredInteger] = []
    for j in range(size):
        if cofactor[j] > 1:
            factors[j].append((cofactor[j], 1))
        out.append(FactoredInteger(value=left + j, factors=factors[j]))
    return out
