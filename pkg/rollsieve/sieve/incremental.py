# rollsieve - Compact incremental sieve from two consecutive Atkin intervals
from __future__ import annotations

from math import ceil, isqrt, log, sqrt
from typing import Iterator

from rollsieve.errors import InvariantViolation, SieveRangeError
from rollsieve.models import ReadyInterval, WorkMeter
from rollsieve.prelude import PRELUDE_LIMIT, prelude_primes
from rollsieve.sieve.atkin import MAX_END, UNBOUNDED, WORD_BITS, BasePrimeCache, PendingInterval, finish, make_pending

logger = __import__("logging").getLogger("rollsieve.sieve.incremental")

MIN_START = PRELUDE_LIMIT
DEFAULT_SAFETY = 2.0


def loglog_factor(n: int) -> int:
    """max(1, floor(ln ln n))."""
    return max(1, int(log(log(n))))


class IncrementalSieve:
    """Answers queries from a ready interval while the next one is sieved under a per-call budget.

    ``current`` covers [current.lo, current.end) and always contains ``n``;
    ``pending`` covers the interval right after it. Each query invests a bounded
    number of work units in ``pending``; when ``current`` is used up, ``pending``
    must be complete and takes its place. Intervals stop at MAX_END: the last one
    is shortened to end there and ``pending`` is None from then on.
    """

    def __init__(
        self,
        start: int,
        meter: WorkMeter | None = None,
        budget: int | None = None,
        safety: float = DEFAULT_SAFETY,
    ) -> None:
        if start < MIN_START:
            raise SieveRangeError(f"incremental sieve starts at {MIN_START} or above, got {start}; smaller values come from the prelude")
        if start >= MAX_END:
            raise SieveRangeError(f"incremental sieve covers integers below 2^31, got start={start}")
        if budget is not None and budget < 1:
            raise SieveRangeError(f"budget must be >= 1, got {budget}")
        self.meter = meter
        self.safety = safety
        self._budget_override = budget
        self.n = start
        self.swaps = 0
        self.last_call_work = 0
        delta = isqrt(start) + 2
        self.cache = BasePrimeCache(isqrt(start + 2 * delta), meter)
        first = self._new_pending(start, delta)
        while not first.step(UNBOUNDED).completed:
            pass
        self.current: ReadyInterval = finish(first)
        self.budget_per_call = 1
        self.budget_per_gap_unit = 1.0
        self._calibrate(first)
        self.pending: PendingInterval | None = self._new_pending(self.current.end, isqrt(self.n) + 2)

    @property
    def exhausted(self) -> bool:
        """True once n has reached MAX_END."""
        return self.n >= MAX_END

    def _new_pending(self, lo: int, delta: int) -> PendingInterval | None:
        if lo >= MAX_END:
            return None
        delta = min(delta, MAX_END - lo)
        setup = self.cache.ensure(lo + delta)
        p = make_pending(lo, delta, base=self.cache.primes, meter=self.meter)
        p.setup = setup
        return p

    def _calibrate(self, finished: PendingInterval) -> None:
        """B from the units the last interval took; B' = B / max(1, floor(ln ln n))."""
        factor = loglog_factor(self.n)
        if self._budget_override is not None:
            self.budget_per_call = self._budget_override
        else:
            units = finished.spent + finished.setup
            self.budget_per_call = ceil(self.safety * factor * units / finished.delta) + 1
        self.budget_per_gap_unit = self.budget_per_call / factor
        logger.debug(
            "interval [%d, %d) took %d units; B=%d B'=%.2f",
            finished.lo, finished.lo + finished.delta, finished.spent + finished.setup,
            self.budget_per_call, self.budget_per_gap_unit,
        )

    def _invest(self, budget: int) -> int:
        if self.pending is None or self.pending.done:
            return 0
        return self.pending.step(budget).used

    def _swap(self) -> None:
        pending = self.pending
        if pending is None:
            # current ends at MAX_END; n has run off the covered range
            return
        if not pending.done:
            raise InvariantViolation(
                f"interval [{self.current.lo}, {self.current.end}) used up while [{pending.lo}, "
                f"{pending.lo + pending.delta}) is still in phase {pending.phase.name} "
                f"after {pending.spent} units (B={self.budget_per_call})"
            )
        self.current = finish(pending)
        self._calibrate(pending)
        self.pending = self._new_pending(self.current.end, isqrt(self.n) + 2)
        self.swaps += 1

    def _record(self, work: int) -> None:
        self.last_call_work = work
        if self.meter is not None:
            self.meter.record_call(work)

    def _check_range(self) -> None:
        if self.exhausted:
            raise SieveRangeError(f"incremental sieve stops below 2^31, n={self.n}")

    def next(self) -> bool:
        """Primality of n from the ready interval; advances to n + 1."""
        self._check_range()
        cur = self.current
        answer = bool(cur.bits[self.n - cur.lo])
        if answer:
            cur.cursor += 1
        self.n += 1
        work = self._invest(self.budget_per_call)
        self._record(work)
        if self.n == cur.end:
            self._swap()
        return answer

    def nextprime(self) -> int:
        """Smallest prime >= n, found through the ready interval's prime list."""
        self._check_range()
        work = 0
        while True:
            cur = self.current
            if cur.cursor < len(cur.primes):
                p = cur.primes[cur.cursor]
                gap = p - self.n
                cur.cursor += 1
                self.n = p + 1
                work += self._invest(max(1, ceil(gap * self.budget_per_gap_unit)))
                self._record(work)
                if self.n == cur.end:
                    self._swap()
                return p
            gap = cur.end - self.n
            self.n = cur.end
            work += self._invest(max(1, ceil(gap * self.budget_per_gap_unit)))
            self._swap()
            self._check_range()

    def live_words(self) -> int:
        """Words held at 64 bits per bit-vector word: both intervals, both prime lists, base primes, cursors."""
        cur, pend = self.current, self.pending
        words = -(-cur.delta // WORD_BITS) + len(cur.primes) + len(self.cache.primes.primes) + 16
        if pend is not None:
            words += -(-pend.delta // WORD_BITS) + len(pend.primes)
        return words

    def compactness(self) -> float:
        """live_words() / sqrt(n)."""
        return self.live_words() / sqrt(self.n)


def new_incremental(start: int, meter: WorkMeter | None = None, budget: int | None = None, safety: float = DEFAULT_SAFETY) -> IncrementalSieve:
    return IncrementalSieve(start, meter, budget, safety)


def inc_next(state: IncrementalSieve) -> bool:
    return state.next()


def inc_nextprime(state: IncrementalSieve) -> int:
    return state.nextprime()


def incremental_primes(
    start: int,
    end: int,
    meter: WorkMeter | None = None,
    budget: int | None = None,
    safety: float = DEFAULT_SAFETY,
) -> Iterator[int]:
    """Primes in [start, end]: prelude below 100, two-interval Atkin sieve above, end below 2^31."""
    if start < 2 or end < start:
        raise SieveRangeError(f"need 2 <= start <= end, got [{start}, {end}]")
    if end >= MAX_END:
        raise SieveRangeError(f"the atkin engine covers integers below 2^31 = {MAX_END}, got end={end}")
    yield from prelude_primes(start, end)
    if end < MIN_START:
        return
    state = IncrementalSieve(max(start, MIN_START), meter, budget, safety)
    while not state.exhausted:
        p = state.nextprime()
        if p > end:
            return
        yield p
