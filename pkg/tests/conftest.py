# rollsieve - Shared test fixtures
from __future__ import annotations

import pytest

from rollsieve.sieve.baseline import simple_sieve

# pi(x) regression values, frozen from simple_sieve cross-checked against trial division
PI = {
    100: 25,
    10**4: 1229,
    10**5: 9592,
    10**6: 78498,
    10**7: 664579,
}


@pytest.fixture(scope="session")
def pi_values() -> dict[int, int]:
    return dict(PI)


@pytest.fixture(scope="session")
def primes_to_million() -> list[int]:
    return simple_sieve(10**6).primes()


@pytest.fixture(scope="session")
def table_to_million():
    return simple_sieve(10**6)


@pytest.fixture
def isolated_config(tmp_path, monkeypatch):
    """No user or environment config leaks into a test; returns a writable config path."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.delenv("ROLLSIEVE_CONFIG", raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path / "config.yaml"
