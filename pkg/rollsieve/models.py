# rollsieve - Data models (tables, segments, factorizations, intervals, meters)
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from pathlib import Path
from typing import Any, Iterator

import numpy as np

# --- Enums ---


class Engine(str, Enum):
    SIMPLE = "simple"
    SEGMENTED = "segmented"
    ROLLING = "rolling"
    ATKIN = "atkin"


class OutputFormat(str, Enum):
    TEXT = "text"
    BITMAP = "bitmap"


class Phase(IntEnum):
    """Phases of a pending Atkin interval, in execution order."""

    FORM1 = 1  # 4x^2 + y^2, n = 1 (mod 4)
    FORM2 = 2  # 3x^2 + y^2, n = 7 (mod 12)
    FORM3 = 3  # 3x^2 - y^2, n = 11 (mod 12), x > y
    SQUAREFREE = 4
    SMALLPRIME = 5
    DONE = 6


# --- Baseline sieve results ---


@dataclass
class PrimalityTable:
    limit: int
    bits: np.ndarray  # bool, length limit + 1

    def is_prime(self, i: int) -> bool:
        return bool(self.bits[i])

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def primes(self) -> list[int]:
        return np.flatnonzero(self.bits).tolist()


@dataclass
class PrimeList:
    limit: int
    primes: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)


@dataclass
class SegmentBuffer:
    left: int
    right: int  # inclusive
    bits: np.ndarray

    @property
    def delta(self) -> int:
        return self.right - self.left + 1

    def is_prime(self, m: int) -> bool:
        return bool(self.bits[m - self.left])

    def primes(self) -> list[int]:
        return (np.flatnonzero(self.bits) + self.left).tolist()


# --- Factored form ---


@dataclass
class FactoredInteger:
    value: int
    factors: list[tuple[int, int]] = field(default_factory=list)

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def render(self) -> str:
        return f"{self.value} = " + " * ".join(f"{p}^{e}" for p, e in self.factors)


# --- Incremental wrapper intervals ---


@dataclass
class ReadyInterval:
    lo: int
    delta: int
    bits: np.ndarray
    primes: list[int]
    cursor: int = 0

    @property
    def end(self) -> int:
        """First integer past the interval."""
        return self.lo + self.delta

    def is_prime(self, m: int) -> bool:
        return bool(self.bits[m - self.lo])


# --- Instrumentation ---


@dataclass
class WorkMeter:
    """Unit-cost counters. total = pushes + pops + lattice_visits + crossings.

    lattice_visits holds the quadratic-form units of an Atkin interval (points
    and columns). crossings holds every other sieving unit: Eratosthenes
    crossings, base-prime extensions, and in an Atkin interval the p^2 clears,
    the primes entered by that pass and the 64-slot words swept.
    """

    pushes: int = 0
    pops: int = 0
    lattice_visits: int = 0
    crossings: int = 0
    ring_size: int = 1024
    recent: deque[int] = field(init=False, repr=False)
    calls: int = 0
    max_call: int = 0
    peak_nodes: int = 0
    peak_delta: int = 0

    def __post_init__(self) -> None:
        self.recent = deque(maxlen=self.ring_size)

    @property
    def total(self) -> int:
        return self.pushes + self.pops + self.lattice_visits + self.crossings

    def record_call(self, cost: int) -> None:
        self.calls += 1
        self.recent.append(cost)
        if cost > self.max_call:
            self.max_call = cost

    def observe_space(self, nodes: int, delta: int) -> None:
        if nodes > self.peak_nodes:
            self.peak_nodes = nodes
        if delta > self.peak_delta:
            self.peak_delta = delta

    def as_dict(self) -> dict[str, Any]:
        return {
            "pushes": self.pushes,
            "pops": self.pops,
            "lattice_visits": self.lattice_visits,
            "crossings": self.crossings,
            "total": self.total,
            "calls": self.calls,
            "max_call": self.max_call,
            "peak_nodes": self.peak_nodes,
            "peak_delta": self.peak_delta,
        }


@dataclass
class IncrementalCostReport:
    gap_start: int
    gap_length: int
    work: int

    @property
    def normalized(self) -> float:
        return self.work / self.gap_length


# --- CLI output ---


@dataclass
class OutputSpec:
    format: OutputFormat = OutputFormat.TEXT
    destination: Path | None = None  # None = standard output


def engine_from_str(s: str) -> Engine:
    return Engine(s.lower())
