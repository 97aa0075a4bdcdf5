# rollsieve - Sieve engines
from rollsieve.sieve.atkin import PendingInterval, StepResult, atkin_segment_primes, finish, make_pending, step
from rollsieve.sieve.baseline import (
    base_primes,
    factor_segment,
    segmented_primes,
    segmented_sieve,
    sieve_segment,
    simple_sieve,
    trial_division_is_prime,
)
from rollsieve.sieve.engines import count_primes, iter_primes
from rollsieve.sieve.incremental import IncrementalSieve, inc_next, inc_nextprime, new_incremental
from rollsieve.sieve.rolling import RollingSieve, load_snapshot, rolling_init, save_snapshot

__all__ = [
    "IncrementalSieve",
    "PendingInterval",
    "RollingSieve",
    "StepResult",
    "atkin_segment_primes",
    "base_primes",
    "count_primes",
    "factor_segment",
    "finish",
    "inc_next",
    "inc_nextprime",
    "iter_primes",
    "load_snapshot",
    "make_pending",
    "new_incremental",
    "rolling_init",
    "save_snapshot",
    "segmented_primes",
    "segmented_sieve",
    "sieve_segment",
    "simple_sieve",
    "step",
    "trial_division_is_prime",
]
