# rollsieve - Rolling sieve: an incremental sieve over a circular array of prime stacks
from __future__ import annotations

import struct
from math import isqrt
from pathlib import Path
from typing import Iterator

from filelock import FileLock

from rollsieve.errors import InvariantViolation, SieveRangeError
from rollsieve.models import FactoredInteger, WorkMeter
from rollsieve.prelude import PRELUDE_LIMIT, prelude_primes
from rollsieve.sieve.baseline import base_primes

logger = __import__("logging").getLogger("rollsieve.sieve.rolling")

MIN_START = PRELUDE_LIMIT
MAX_START = 1 << 60

SNAPSHOT_MAGIC = b"RSV1"
_HEADER = struct.Struct("<5Q")
_COUNT = struct.Struct("<I")


class RollingSieve:
    """Mutable rolling-sieve state.

    Slot ``(pos + k) % delta`` of ``stacks`` holds the primes whose next multiple
    is ``n + k``. Every prime up to r - 1 sits in exactly one stack, and r < delta,
    so a pushed prime never lands back on the slot being drained.

    Space is delta slot headers plus one node per stored prime: O(sqrt(n) log n) bits.
    """

    def __init__(
        self,
        n: int,
        pos: int,
        r: int,
        s: int,
        delta: int,
        stacks: list[list[int]],
        meter: WorkMeter | None = None,
    ) -> None:
        self.n = n
        self.pos = pos
        self.r = r
        self.s = s
        self.delta = delta
        self.stacks = stacks
        self.meter = meter
        self.nodes = sum(len(st) for st in stacks)

    # --- Stepping ---

    def next(self) -> bool:
        """Primality of n; advances to n + 1."""
        is_prime = True
        stacks = self.stacks
        pos = self.pos
        delta = self.delta
        stack = stacks[pos]
        if stack:
            moved = len(stack)
            while stack:
                p = stack.pop()
                stacks[(pos + p) % delta].append(p)
            is_prime = False
            if self.meter is not None:
                self.meter.pops += moved
                self.meter.pushes += moved
        if self.n == self.s:
            if is_prime:
                self._activate(pos)
                is_prime = False
            self.r += 1
            self.s = self.r * self.r
        self._advance()
        return is_prime

    def nextprime(self) -> int:
        """Smallest prime >= n; the state ends just past it."""
        while not self.next():
            pass
        return self.n - 1

    def next_factored(self) -> FactoredInteger:
        """Like next(), but also returns n with its complete factorization."""
        value = self.n
        rest = value
        factors: list[tuple[int, int]] = []
        stacks = self.stacks
        pos = self.pos
        delta = self.delta
        stack = stacks[pos]
        moved = len(stack)
        while stack:
            p = stack.pop()
            stacks[(pos + p) % delta].append(p)
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        if moved and self.meter is not None:
            self.meter.pops += moved
            self.meter.pushes += moved
        if self.n == self.s:
            if not moved:
                r = self._activate(pos)
                factors.append((r, 2))
                rest = 1
            self.r += 1
            self.s = self.r * self.r
        self._advance()
        # what remains has no prime factor <= sqrt(value): it is 1 or a prime
        if rest > 1:
            factors.append((rest, 1))
        factors.sort()
        return FactoredInteger(value=value, factors=factors)

    def _activate(self, pos: int) -> int:
        r = self.r
        self.stacks[(pos + r) % self.delta].append(r)
        self.nodes += 1
        if self.meter is not None:
            self.meter.pushes += 1
        logger.debug("activated prime %d at n=%d", r, self.n)
        return r

    def _advance(self) -> None:
        self.n += 1
        self.pos += 1
        if self.pos == self.delta:
            self.pos = 0
            # slot i now stands for n + i, so empty slots can be appended at the tail
            self.delta += 2
            self.stacks.append([])
            self.stacks.append([])
        if self.meter is not None:
            self.meter.observe_space(self.nodes, self.delta)

    # --- Checks ---

    def audit(self) -> None:
        """Verify geometry and stack-content exactness; raise InvariantViolation otherwise."""
        n, r, delta = self.n, self.r, self.delta
        if self.s != r * r:
            raise InvariantViolation(f"s={self.s} is not r^2 for r={r}")
        if not (r - 1) * (r - 1) <= n <= self.s:
            raise InvariantViolation(f"n={n} outside [(r-1)^2, r^2] for r={r}")
        if not r < delta:
            raise InvariantViolation(f"r={r} not below delta={delta}")
        if not delta * delta > n:
            raise InvariantViolation(f"delta={delta} too small for n={n}")
        if len(self.stacks) != delta or not 0 <= self.pos < delta:
            raise InvariantViolation(f"{len(self.stacks)} stacks, pos={self.pos}, delta={delta}")
        where: dict[int, int] = {}
        for i, stack in enumerate(self.stacks):
            for p in stack:
                if p in where:
                    raise InvariantViolation(f"prime {p} stored twice")
                where[p] = i
        expected = base_primes(r - 1).primes if r > 1 else []
        if sorted(where) != expected:
            raise InvariantViolation(f"stored primes {sorted(where)[:8]}... differ from primes <= {r - 1}")
        if self.nodes != len(expected):
            raise InvariantViolation(f"node count {self.nodes} != {len(expected)}")
        for p, i in where.items():
            m = -(-n // p) * p
            if i != (self.pos + m - n) % delta:
                raise InvariantViolation(f"prime {p} at slot {i}, next multiple {m} belongs elsewhere")

    # --- Snapshots ---

    def to_bytes(self) -> bytes:
        parts = [SNAPSHOT_MAGIC, _HEADER.pack(self.n, self.pos, self.r, self.s, self.delta)]
        for stack in self.stacks:
            parts.append(_COUNT.pack(len(stack)))
            parts.append(struct.pack(f"<{len(stack)}Q", *stack))
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data: bytes, meter: WorkMeter | None = None) -> RollingSieve:
        if data[:4] != SNAPSHOT_MAGIC:
            raise SieveRangeError("not a rolling-sieve snapshot (bad magic)")
        try:
            n, pos, r, s, delta = _HEADER.unpack_from(data, 4)
        except struct.error as e:
            raise SieveRangeError(f"truncated snapshot: {e}") from e
        _check_header(n, pos, r, s, delta)
        try:
            off = 4 + _HEADER.size
            stacks: list[list[int]] = []
            for _ in range(delta):
                (count,) = _COUNT.unpack_from(data, off)
                off += _COUNT.size
                stacks.append(list(struct.unpack_from(f"<{count}Q", data, off)))
                off += 8 * count
        except struct.error as e:
            raise SieveRangeError(f"truncated snapshot: {e}") from e
        if off != len(data):
            raise SieveRangeError(f"{len(data) - off} trailing bytes after snapshot")
        for stack in stacks:
            for p in stack:
                if not 2 <= p < r:
                    raise SieveRangeError(f"snapshot stores {p}, outside [2, {r - 1}]")
        return cls(n, pos, r, s, delta, stacks, meter)


def _check_header(n: int, pos: int, r: int, s: int, delta: int) -> None:
    if n < MIN_START:
        raise SieveRangeError(f"snapshot n={n} below {MIN_START}")
    if s != r * r or not (r - 1) * (r - 1) <= n <= s:
        raise SieveRangeError(f"snapshot geometry broken: n={n}, r={r}, s={s}")
    if not r < delta or delta * delta <= n:
        raise SieveRangeError(f"snapshot delta={delta} does not fit r={r}, n={n}")
    if not pos < delta:
        raise SieveRangeError(f"snapshot pos={pos} not below delta={delta}")


def rolling_init(start: int, meter: WorkMeter | None = None) -> RollingSieve:
    """Set up the stacks so that slot 0 corresponds to start."""
    if start < MIN_START:
        raise SieveRangeError(f"rolling sieve starts at {MIN_START} or above, got {start}; smaller values come from the prelude")
    if start > MAX_START:
        raise SieveRangeError(f"start {start} exceeds 2^60")
    r = isqrt(start) + 1
    delta = r + 2
    stacks: list[list[int]] = [[] for _ in range(delta)]
    for p in base_primes(r - 1).primes:
        stacks[(p - start % p) % p].append(p)
    state = RollingSieve(n=start, pos=0, r=r, s=r * r, delta=delta, stacks=stacks, meter=meter)
    if meter is not None:
        meter.observe_space(state.nodes, delta)
    logger.debug("rolling sieve at %d: r=%d delta=%d nodes=%d", start, r, delta, state.nodes)
    return state


def rolling_primes(start: int, end: int, meter: WorkMeter | None = None, audit: bool = False) -> Iterator[int]:
    """Primes in [start, end]: prelude below 100, rolling sieve above."""
    if start < 2 or end < start:
        raise SieveRangeError(f"need 2 <= start <= end, got [{start}, {end}]")
    yield from prelude_primes(start, end)
    if end < MIN_START:
        return
    state = rolling_init(max(start, MIN_START), meter)
    while state.n <= end:
        if state.next():
            yield state.n - 1
        if audit:
            state.audit()


def rolling_factored(start: int, end: int, meter: WorkMeter | None = None) -> Iterator[FactoredInteger]:
    if end < start:
        raise SieveRangeError(f"empty range [{start}, {end}]")
    state = rolling_init(start, meter)
    while state.n <= end:
        yield state.next_factored()


def save_snapshot(state: RollingSieve, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with FileLock(str(path) + ".lock"):
        path.write_bytes(state.to_bytes())
    return path


def load_snapshot(path: str | Path, meter: WorkMeter | None = None) -> RollingSieve:
    path = Path(path)
    with FileLock(str(path) + ".lock"):
        data = path.read_bytes()
    return RollingSieve.from_bytes(data, meter)
