# rollsieve - Work accounting for the rolling sieve and the incremental wrapper
from __future__ import annotations

from math import isqrt, log, sqrt
from typing import Any

from rollsieve.errors import SieveRangeError
from rollsieve.models import Engine, IncrementalCostReport, WorkMeter
from rollsieve.sieve.baseline import base_primes
from rollsieve.sieve.incremental import IncrementalSieve
from rollsieve.sieve.rolling import MIN_START, rolling_init

logger = __import__("logging").getLogger("rollsieve.instrumentation.work")


def _check_window(start: int, n: int) -> None:
    if start < MIN_START or n <= start:
        raise SieveRangeError(f"need {MIN_START} <= start < n, got start={start}, n={n}")


def multiples_in(p: int, a: int, n: int) -> int:
    """Multiples of p in [a, n]."""
    return n // p - (a - 1) // p


def expected_crossings(n: int) -> int:
    """Crossings simple_sieve(n) performs: sum over p <= sqrt(n) of (floor(n/p) - 1)."""
    if n < 2:
        raise SieveRangeError(f"n must be >= 2, got {n}")
    root = isqrt(n)
    if root < 2:
        return 0
    return sum(n // p - 1 for p in base_primes(root).primes)


def expected_pushes(start: int, n: int) -> int:
    """Pushes a rolling sieve makes classifying start..n, from arithmetic alone.

    A prime p is active from a_p on (a_p = start for primes <= sqrt(start), p^2 for
    primes activated later) and is pushed once for every multiple of p in [a_p, n].
    """
    _check_window(start, n)
    total = 0
    initial = isqrt(start)
    for p in base_primes(isqrt(n)).primes:
        a = start if p <= initial else p * p
        total += multiples_in(p, a, n)
    return total


def count_rolling_work(start: int, n: int, ring_size: int = 1024) -> WorkMeter:
    """Run the rolling sieve over [start, n] and return its meter (pushes, pops, peak nodes and delta)."""
    _check_window(start, n)
    meter = WorkMeter(ring_size=ring_size)
    state = rolling_init(start, meter)
    while state.n <= n:
        before = meter.total
        state.next()
        meter.record_call(meter.total - before)
    logger.debug("rolling work %d..%d: %s", start, n, meter.as_dict())
    return meter


def space_checkpoints(start: int, n: int, samples: int = 20) -> list[dict[str, Any]]:
    """Stack nodes against pi(floor(sqrt(m))) and delta against 4 sqrt(m) + 8 at evenly spaced m."""
    _check_window(start, n)
    stride = max(1, (n - start) // samples)
    marks = set(range(start + stride, n + 1, stride)) | {n}
    state = rolling_init(start)
    rows: list[dict[str, Any]] = []
    while state.n <= n:
        m = state.n
        state.next()
        if m in marks:
            rows.append({
                "n": m,
                "nodes": state.nodes,
                "pi_sqrt_n": len(base_primes(max(isqrt(m), 1)).primes),
                "delta": state.delta,
                "delta_bound": 4 * sqrt(state.n) + 8,
            })
    return rows


def incremental_profile(
    start: int,
    n: int,
    engine: Engine = Engine.ROLLING,
    budget: int | None = None,
) -> list[IncrementalCostReport]:
    """Work spent per nextprime call for every prime in (start, n].

    gap_length counts the integers one call classifies, i.e. the distance to the
    previous prime once the run is under way.
    """
    _check_window(start, n)
    meter = WorkMeter()
    reports: list[IncrementalCostReport] = []
    if engine == Engine.ROLLING:
        state = rolling_init(start, meter)
        while True:
            gap_start = state.n
            before = meter.total
            p = state.nextprime()
            if p > n:
                break
            reports.append(IncrementalCostReport(gap_start, p - gap_start + 1, meter.total - before))
    elif engine == Engine.ATKIN:
        inc = IncrementalSieve(start, meter, budget)
        while True:
            gap_start = inc.n
            p = inc.nextprime()
            if p > n:
                break
            reports.append(IncrementalCostReport(gap_start, p - gap_start + 1, inc.last_call_work))
    else:
        raise SieveRangeError(f"profiling needs an incremental engine, got {engine.value}")
    return reports


def summarize_profile(reports: list[IncrementalCostReport]) -> dict[str, float]:
    if not reports:
        raise SieveRangeError("no gaps in the profiled window")
    normalized = [r.normalized for r in reports]
    return {
        "gaps": len(reports),
        "max_work": max(r.work for r in reports),
        "max_normalized": max(normalized),
        "mean_normalized": sum(normalized) / len(normalized),
    }


def window_constant(reports: list[IncrementalCostReport], n: int) -> float:
    """c(W): max normalized gap cost over ln n / ln ln n."""
    return summarize_profile(reports)["max_normalized"] / (log(n) / log(log(n)))


def push_pop_ratio(meter: WorkMeter, n: int) -> float:
    """(pushes + pops) / (n ln ln n)."""
    return (meter.pushes + meter.pops) / (n * log(log(n)))
