# rollsieve - Segmented Atkin-Bernstein sieve with a pausable, budgeted step interface
"""Mod-12 Atkin-Bernstein sieve over one interval [lo, lo + delta).

A pending interval toggles a parity byte per integer for every lattice point of
the three quadratic forms, clears multiples of p^2 for p >= 5, then sweeps the
parity vector word by word into a prime list. Every phase keeps its own cursor,
so ``step`` can stop after any number of work units and resume later with an
identical end result.

Work units: one per lattice point visited and one per column entered (form
phases), one per p^2 multiple cleared and one per prime entered (SQUAREFREE),
one per 64-slot word swept (SMALLPRIME). A WorkMeter books the SQUAREFREE and
SMALLPRIME units as crossings.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from rollsieve.errors import InvariantViolation, SieveRangeError
from rollsieve.models import Phase, PrimeList, ReadyInterval, WorkMeter
from rollsieve.sieve.baseline import base_primes, sieve_segment

logger = __import__("logging").getLogger("rollsieve.sieve.atkin")

MIN_LO = 7
MAX_END = 1 << 31
WORD_BITS = 64
UNBOUNDED = 1 << 62

_RESIDUES = {
    Phase.FORM1: (1, 5),
    Phase.FORM2: (7,),
    Phase.FORM3: (11,),
}


def _ceil_isqrt(m: int) -> int:
    return 0 if m <= 0 else isqrt(m - 1) + 1


@dataclass(frozen=True)
class StepResult:
    completed: bool
    used: int


class BasePrimeCache:
    """Base primes shared by consecutive intervals, grown by doubling when an interval outruns them."""

    def __init__(self, limit: int, meter: WorkMeter | None = None) -> None:
        self.meter = meter
        self.primes = base_primes(max(limit, 2))

    @property
    def limit(self) -> int:
        return self.primes.limit

    def ensure(self, end: int) -> int:
        """Cover every segment ending below ``end``; returns the crossings spent extending."""
        need = isqrt(end - 1)
        if need <= self.primes.limit:
            return 0
        old = self.primes.limit
        new = max(need, 2 * old)
        seg_meter = WorkMeter()
        if isqrt(new) <= old:
            seg = sieve_segment(old + 1, new, self.primes, seg_meter)
            self.primes = PrimeList(limit=new, primes=self.primes.primes + seg.primes())
        else:
            self.primes = base_primes(new)
            seg_meter.crossings = sum(new // p - 1 for p in self.primes.primes if p * p <= new)
        if self.meter is not None:
            self.meter.crossings += seg_meter.crossings
        logger.debug("base primes extended %d -> %d (%d crossings)", old, new, seg_meter.crossings)
        return seg_meter.crossings


class PendingInterval:
    def __init__(self, lo: int, delta: int, base: PrimeList | None = None, meter: WorkMeter | None = None) -> None:
        if lo < MIN_LO:
            raise SieveRangeError(f"Atkin intervals start at {MIN_LO} or above, got lo={lo}")
        if delta < 1:
            raise SieveRangeError(f"interval length must be >= 1, got {delta}")
        if lo + delta > MAX_END:
            raise SieveRangeError(f"interval end {lo + delta} exceeds 2^31")
        self.lo = lo
        self.delta = delta
        self.last = lo + delta - 1
        if base is None:
            base = base_primes(max(isqrt(self.last), 1))
        elif base.limit < isqrt(self.last):
            raise SieveRangeError(f"base primes reach {base.limit}, interval ending at {self.last} needs {isqrt(self.last)}")
        self.base = base
        self.meter = meter
        self.parity = bytearray(delta)
        self.phase = Phase.FORM1
        self.spent = 0
        self.setup = 0  # base-prime extension charged to this interval
        self.primes: list[int] = []
        # form cursor
        self._x = 1
        self._x_step = 1
        self._y: int | None = None
        self._y_end = 0
        self._col_base = 0
        # squarefree cursor
        self._prime_idx = 0
        self._square = 0
        self._multiple: int | None = None
        # sweep cursor
        self._word = 0

    @property
    def cursor(self) -> tuple[int, ...]:
        if self.phase <= Phase.FORM3:
            return (self._x, -1 if self._y is None else self._y)
        if self.phase == Phase.SQUAREFREE:
            return (self._prime_idx, -1 if self._multiple is None else self._multiple)
        return (self._word,)

    @property
    def done(self) -> bool:
        return self.phase == Phase.DONE

    def step(self, budget: int) -> StepResult:
        """Spend at most ``budget`` work units; completed once the phase reaches DONE."""
        if budget < 1:
            raise SieveRangeError(f"budget must be >= 1, got {budget}")
        used = 0
        while used < budget and self.phase != Phase.DONE:
            left = budget - used
            if self.phase <= Phase.FORM3:
                used += self._step_form(left)
            elif self.phase == Phase.SQUAREFREE:
                used += self._step_squarefree(left)
            else:
                used += self._step_sweep(left)
        self.spent += used
        return StepResult(completed=self.phase == Phase.DONE, used=used)

    # --- phases ---

    def _enter_phase(self, phase: Phase) -> None:
        self.phase = phase
        if phase == Phase.FORM2:
            self._x, self._x_step, self._y = 1, 2, None
        elif phase == Phase.FORM3:
            self._x, self._x_step, self._y = max(1, isqrt(self.lo // 3)), 1, None
        elif phase == Phase.SQUAREFREE:
            primes = self.base.primes
            idx = 0
            while idx < len(primes) and primes[idx] < 5:
                idx += 1
            self._prime_idx, self._multiple = idx, None

    def _column(self, x: int) -> tuple[int, int] | None:
        """(first y, last y) of column x, or None once the form has no more columns."""
        lo, last = self.lo, self.last
        if self.phase == Phase.FORM1:
            base = 4 * x * x
            if base + 1 > last:
                return None
            y0, y1, odd = _ceil_isqrt(lo - base), isqrt(last - base), 1
        elif self.phase == Phase.FORM2:
            base = 3 * x * x
            if base + 4 > last:
                return None
            y0, y1, odd = _ceil_isqrt(lo - base), isqrt(last - base), 0
        else:
            base = 3 * x * x
            if 2 * x * x + 2 * x - 1 > last:
                return None
            y0 = _ceil_isqrt(base - last)
            y1 = min(x - 1, isqrt(base - lo)) if base >= lo else -1
            odd = (x + 1) % 2
        self._col_base = base
        y0 = max(y0, 1)
        if y0 % 2 != odd:
            y0 += 1
        return y0, y1

    def _step_form(self, budget: int) -> int:
        used = 0
        parity, lo = self.parity, self.lo
        residues = _RESIDUES[self.phase]
        sign = -1 if self.phase == Phase.FORM3 else 1
        while used < budget:
            if self._y is None:
                col = self._column(self._x)
                if col is None:
                    self._enter_phase(Phase(self.phase + 1))
                    break
                self._y, self._y_end = col
                used += 1
                continue
            y = self._y
            if y > self._y_end:
                self._x += self._x_step
                self._y = None
                continue
            n = self._col_base + sign * y * y
            if n % 12 in residues:
                parity[n - lo] ^= 1
            self._y = y + 2
            used += 1
        if self.meter is not None:
            self.meter.lattice_visits += used
        return used

    def _step_squarefree(self, budget: int) -> int:
        used = 0
        parity, lo, last = self.parity, self.lo, self.last
        primes = self.base.primes
        while used < budget:
            if self._multiple is None:
                if self._prime_idx >= len(primes) or primes[self._prime_idx] ** 2 > last:
                    self._enter_phase(Phase.SMALLPRIME)
                    break
                q = primes[self._prime_idx] ** 2
                self._square = q
                self._multiple = -(-lo // q) * q
                used += 1
                continue
            m = self._multiple
            if m > last:
                self._prime_idx += 1
                self._multiple = None
                continue
            parity[m - lo] = 0
            self._multiple = m + self._square
            used += 1
        if self.meter is not None:
            self.meter.crossings += used
        return used

    def _step_sweep(self, budget: int) -> int:
        used = 0
        parity, lo, delta = self.parity, self.lo, self.delta
        words = -(-delta // WORD_BITS)
        while used < budget and self._word < words:
            a = self._word * WORD_BITS
            for j in range(a, min(a + WORD_BITS, delta)):
                if parity[j]:
                    n = lo + j
                    if n % 2 == 0 or n % 3 == 0:
                        raise InvariantViolation(f"{n} survived the form phases but is divisible by 2 or 3")
                    self.primes.append(n)
            self._word += 1
            used += 1
        if self._word >= words:
            self.phase = Phase.DONE
        # words swept count as crossings
        if self.meter is not None:
            self.meter.crossings += used
        return used


def make_pending(lo: int, delta: int, base: PrimeList | None = None, meter: WorkMeter | None = None) -> PendingInterval:
    return PendingInterval(lo, delta, base, meter)


def step(p: PendingInterval, budget: int) -> StepResult:
    return p.step(budget)


def finish(p: PendingInterval) -> ReadyInterval:
    """Ready interval built from a completed pending one."""
    if not p.done:
        raise SieveRangeError(f"interval [{p.lo}, {p.lo + p.delta}) still in phase {p.phase.name}")
    bits = np.frombuffer(bytes(p.parity), dtype=np.uint8).astype(bool)
    return ReadyInterval(lo=p.lo, delta=p.delta, bits=bits, primes=p.primes, cursor=0)


def atkin_segment_primes(lo: int, delta: int, meter: WorkMeter | None = None) -> ReadyInterval:
    p = make_pending(lo, delta, meter=meter)
    while not p.step(UNBOUNDED).completed:
        pass
    return finish(p)
