# rollsieve - Engine dispatch: one prime stream per engine over [start, end]
from __future__ import annotations

from typing import Iterator

import numpy as np

from rollsieve.errors import SieveRangeError
from rollsieve.models import Engine, WorkMeter
from rollsieve.sieve.baseline import segmented_primes, simple_sieve
from rollsieve.sieve.incremental import incremental_primes
from rollsieve.sieve.rolling import rolling_primes


def iter_primes(
    engine: Engine,
    start: int,
    end: int,
    meter: WorkMeter | None = None,
    segment_delta: int | None = None,
    budget: int | None = None,
    safety: float = 2.0,
    audit: bool = False,
) -> Iterator[int]:
    """All primes in [start, end] in ascending order, computed by ``engine``."""
    if start < 2 or end < start:
        raise SieveRangeError(f"need 2 <= start <= end, got [{start}, {end}]")
    if engine == Engine.SIMPLE:
        table = simple_sieve(end, meter)
        return iter((np.flatnonzero(table.bits[start:]) + start).tolist())
    if engine == Engine.SEGMENTED:
        return segmented_primes(start, end, segment_delta, meter)
    if engine == Engine.ROLLING:
        return rolling_primes(start, end, meter, audit=audit)
    if engine == Engine.ATKIN:
        return incremental_primes(start, end, meter, budget, safety)
    raise SieveRangeError(f"unknown engine {engine!r}")


def count_primes(engine: Engine, n: int, **kwargs) -> int:
    """pi(n) by the chosen engine."""
    if n < 2:
        raise SieveRangeError(f"pi(n) needs n >= 2, got {n}")
    if engine == Engine.SIMPLE:
        return simple_sieve(n, kwargs.get("meter")).count()
    return sum(1 for _ in iter_primes(engine, 2, n, **kwargs))
