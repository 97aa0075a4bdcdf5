# rollsieve - Work accounting tests
import random
from math import isqrt, log

import pytest

from rollsieve.errors import SieveRangeError
from rollsieve.instrumentation.work import (
    count_rolling_work,
    expected_crossings,
    expected_pushes,
    incremental_profile,
    multiples_in,
    push_pop_ratio,
    space_checkpoints,
    summarize_profile,
    window_constant,
)
from rollsieve.models import Engine, WorkMeter
from rollsieve.sieve.baseline import base_primes, simple_sieve


@pytest.mark.parametrize("n", [10, 100, 10**4, 10**5 + 3])
def test_expected_crossings_match_simple_sieve(n):
    meter = WorkMeter()
    simple_sieve(n, meter)
    assert meter.crossings == expected_crossings(n)


def test_pushes_to_ten_thousand():
    meter = count_rolling_work(100, 10**4)
    assert meter.pushes == expected_pushes(100, 10**4)
    assert meter.peak_nodes == 25


def test_prime_two_contribution():
    # every even number from 100 through 10^4 pushes 2 once
    assert multiples_in(2, 100, 10**4) == 4951


def test_pushes_in_tiny_windows():
    assert expected_pushes(100, 101) == 2  # 100 pushes 2 and 5
    assert count_rolling_work(100, 101).pushes == 2
    # 121 adds exactly the activation push of 11
    assert expected_pushes(100, 121) - expected_pushes(100, 120) == 1
    assert count_rolling_work(100, 121).pushes == expected_pushes(100, 121)


def test_pushes_exact_on_random_windows():
    rng = random.Random(13)
    for _ in range(20):
        start = rng.randrange(100, 9000)
        n = rng.randrange(start + 1, 10**4 + 1)
        assert count_rolling_work(start, n).pushes == expected_pushes(start, n), (start, n)


def test_pops_match_pushes_less_activations():
    meter = count_rolling_work(100, 10**4)
    activated = [p for p in base_primes(100).primes if p > 10]
    assert meter.pushes - meter.pops == len(activated)


def test_window_validation():
    with pytest.raises(SieveRangeError):
        count_rolling_work(99, 1000)
    with pytest.raises(SieveRangeError):
        expected_pushes(1000, 1000)
    with pytest.raises(SieveRangeError):
        incremental_profile(500, 400)


def test_per_call_costs_recorded():
    meter = count_rolling_work(100, 2000, ring_size=16)
    assert meter.calls == 1901
    assert len(meter.recent) == 16
    assert meter.max_call >= max(meter.recent)
    assert meter.max_call <= 2 * len(base_primes(isqrt(2000)).primes) + 1


def test_space_checkpoints():
    rows = space_checkpoints(100, 10**5)
    assert len(rows) >= 20
    for row in rows:
        assert row["nodes"] == row["pi_sqrt_n"]
        assert row["delta"] <= row["delta_bound"]
        assert row["delta"] ** 2 > row["n"]


def test_push_pop_ratio_is_stable():
    ratios = [push_pop_ratio(count_rolling_work(100, n), n) for n in (10**5, 10**6)]
    assert max(ratios) / min(ratios) < 1.25


@pytest.mark.slow
def test_push_pop_ratio_to_ten_million():
    ratios = [push_pop_ratio(count_rolling_work(100, n), n) for n in (10**5, 10**6, 10**7)]
    assert max(ratios) / min(ratios) < 1.25


def test_rolling_profile():
    reports = incremental_profile(10**4, 10**5)
    assert len(reports) == 9592 - 1229
    assert all(r.gap_length >= 1 and r.work >= 1 for r in reports)
    # consecutive gaps tile the window
    for a, b in zip(reports, reports[1:]):
        assert b.gap_start == a.gap_start + a.gap_length
    summary = summarize_profile(reports)
    assert summary["gaps"] == len(reports)
    assert summary["max_normalized"] >= summary["mean_normalized"] > 0


def test_window_constant_is_stable():
    low = window_constant(incremental_profile(10**4, 10**5), 10**5)
    high = window_constant(incremental_profile(10**5, 10**6), 10**6)
    assert high <= 1.5 * low


@pytest.mark.slow
def test_window_constant_to_ten_million():
    windows = [(10**4, 10**5), (10**5, 10**6), (10**6, 10**7)]
    constants = [window_constant(incremental_profile(a, b), b) for a, b in windows]
    for earlier, later in zip(constants, constants[1:]):
        assert later <= 1.5 * earlier


def test_atkin_profile():
    reports = incremental_profile(10**4, 10**5, Engine.ATKIN)
    assert len(reports) == 9592 - 1229
    assert reports[0].gap_start == 10**4
    assert sum(r.gap_length for r in reports) == reports[-1].gap_start + reports[-1].gap_length - 10**4
    assert max(r.normalized for r in reports) < log(10**5) * 10


def test_profile_rejects_batch_engines():
    with pytest.raises(SieveRangeError):
        incremental_profile(1000, 2000, Engine.SIMPLE)
    with pytest.raises(SieveRangeError):
        summarize_profile([])


def test_meter_counts_every_unit_of_a_run():
    meter = count_rolling_work(100, 5000)
    assert meter.total == meter.pushes + meter.pops
    assert meter.peak_delta >= 13
    assert meter.peak_nodes == len(base_primes(isqrt(5000)).primes)
