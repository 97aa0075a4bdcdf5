# rollsieve - CLI tests
import csv
import io
import json
import random

import pytest
import yaml

from rollsieve.cli import EXIT_INVARIANT, EXIT_OK, EXIT_USAGE, run
from rollsieve.instrumentation.work import expected_pushes
from rollsieve.reporter.output import decode_bitmap

ENGINES = ["simple", "segmented", "rolling", "atkin"]


@pytest.fixture(autouse=True)
def _isolated(isolated_config):
    return isolated_config


def _lines(capsys) -> list[str]:
    return capsys.readouterr().out.splitlines()


def test_primes_text(capsys):
    assert run(["primes", "2", "30", "--engine", "rolling"]) == EXIT_OK
    assert _lines(capsys) == ["2", "3", "5", "7", "11", "13", "17", "19", "23", "29"]


def test_primes_option_form(capsys):
    assert run(["primes", "--start", "100", "--end", "130", "--engine", "atkin"]) == EXIT_OK
    assert _lines(capsys) == ["101", "103", "107", "109", "113", "127"]


def test_engines_agree(capsys):
    outputs = []
    for engine in ENGINES:
        assert run(["primes", "2", "20000", "--engine", engine]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert all(o == outputs[0] for o in outputs)
    assert len(outputs[0].splitlines()) == 2262


@pytest.mark.slow
def test_engines_agree_to_a_million(capsys):
    outputs = []
    for engine in ENGINES:
        assert run(["primes", "2", "1000000", "--engine", engine]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert all(o == outputs[0] for o in outputs)
    assert len(outputs[0].splitlines()) == 78498


def _random_ranges(seed: int, count: int, below: int, longest: int) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    ranges = [(2, 150), (95, 5000)]
    while len(ranges) < count:
        start = rng.randrange(100, below - longest)
        ranges.append((start, start + rng.randrange(1, longest)))
    return ranges


def _agree_on(ranges: list[tuple[int, int]], capsys) -> None:
    for start, end in ranges:
        outputs = []
        for engine in ENGINES:
            assert run(["primes", str(start), str(end), "--engine", engine]) == EXIT_OK
            outputs.append(capsys.readouterr().out)
        assert all(o == outputs[0] for o in outputs), (start, end)


def test_engines_agree_on_random_ranges(capsys):
    _agree_on(_random_ranges(7, 6, 10**6, 5000), capsys)


@pytest.mark.slow
def test_engines_agree_on_fifty_random_ranges(capsys):
    # ranges span several sqrt(n)-sized Atkin intervals, so every one crosses swaps
    _agree_on(_random_ranges(50, 50, 10**7, 20_000), capsys)


def test_atkin_engine_reaches_the_top_of_its_range(capsys):
    args = ["primes", "2147480000", "2147483647"]
    assert run(args + ["--engine", "segmented"]) == EXIT_OK
    expected = capsys.readouterr().out
    assert run(args + ["--engine", "atkin"]) == EXIT_OK
    assert capsys.readouterr().out == expected
    assert expected.splitlines()[-1] == "2147483647"
    assert run(["primes", "2147480000", "2147483648", "--engine", "atkin"]) == EXIT_USAGE


def test_primes_bitmap(tmp_path, capsys):
    out = tmp_path / "p.pbm"
    assert run(["primes", "100", "163", "--format", "bitmap", "--out", str(out)]) == EXIT_OK
    lo, count, primes = decode_bitmap(out.read_bytes())
    assert (lo, count) == (100, 64)
    assert run(["primes", "100", "163"]) == EXIT_OK
    assert [str(p) for p in primes] == _lines(capsys)


@pytest.mark.parametrize("argv", [["primes", "30", "2"], ["primes", "50"], ["count", "1"], ["factor", "99", "120"], ["profile", "1000", "1000"], ["bench", "50"]])
def test_range_errors_exit_2(argv, capsys):
    assert run(argv) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_bad_engine_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["primes", "2", "30", "--engine", "wheel"])
    assert exc.value.code == 2


def test_invariant_violation_exits_1(capsys):
    assert run(["primes", "10000", "20000", "--engine", "atkin", "--budget", "1"]) == EXIT_INVARIANT
    assert "invariant violation" in capsys.readouterr().err


@pytest.mark.parametrize("n, engine, expected", [(100, "rolling", 25), (2, "atkin", 1), (10**4, "segmented", 1229), (10**6, "simple", 78498)])
def test_count(n, engine, expected, capsys):
    assert run(["count", str(n), "--engine", engine]) == EXIT_OK
    assert _lines(capsys) == [str(expected)]


def test_factor_lines(capsys):
    assert run(["factor", "100", "102"]) == EXIT_OK
    assert _lines(capsys) == ["100 = 2^2 * 5^2", "101 = 101^1", "102 = 2^1 * 3^1 * 17^1"]


def test_factor_engines_agree(capsys):
    assert run(["factor", "100", "5000", "--engine", "rolling"]) == EXIT_OK
    rolling = capsys.readouterr().out
    assert run(["factor", "100", "5000", "--engine", "segmented"]) == EXIT_OK
    assert capsys.readouterr().out == rolling


def test_bench_row(capsys):
    assert run(["bench", "1000", "10000"]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [int(r["n"]) for r in rows] == [1000, 10000]
    for row in rows:
        assert int(row["pushes"]) == int(row["expected_pushes"]) == expected_pushes(100, int(row["n"]))
        assert int(row["peak_nodes"]) == int(row["pi_sqrt_n"])
        assert int(row["crossings"]) == int(row["expected_crossings"])
        assert int(row["rss_bytes"]) > 0


def test_profile_summary_and_per_gap(tmp_path, capsys):
    assert run(["profile", "10000", "20000"]) == EXIT_OK
    (row,) = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert row["engine"] == "rolling"
    assert int(row["gaps"]) == 2262 - 1229
    assert float(row["max_normalized"]) >= float(row["mean_normalized"])
    out = tmp_path / "gaps.csv"
    assert run(["profile", "10000", "20000", "--engine", "atkin", "--per-gap", "--out", str(out)]) == EXIT_OK
    with open(out) as f:
        gaps = list(csv.DictReader(f))
    assert len(gaps) == 2262 - 1229
    assert int(gaps[0]["gap_start"]) == 10000


def test_config_show_validate_set(isolated_config, capsys):
    assert run(["--config", str(isolated_config), "config", "set", "incremental.safety", "3"]) == EXIT_OK
    assert yaml.safe_load(isolated_config.read_text())["incremental"]["safety"] == 3
    capsys.readouterr()
    assert run(["--config", str(isolated_config), "config", "show"]) == EXIT_OK
    assert yaml.safe_load(capsys.readouterr().out)["incremental"]["safety"] == 3
    assert run(["--config", str(isolated_config), "config", "validate"]) == EXIT_OK
    isolated_config.write_text(yaml.safe_dump({"sieve": {"default_engine": "wheel"}}))
    assert run(["--config", str(isolated_config), "config", "validate"]) == EXIT_INVARIANT
    assert run(["--config", str(isolated_config), "count", "100"]) == EXIT_USAGE


def test_config_set_rejects_invalid_value(isolated_config):
    assert run(["--config", str(isolated_config), "config", "set", "output.format", "png"]) == EXIT_USAGE
    assert not isolated_config.exists()


def test_default_engine_from_config(isolated_config, capsys):
    isolated_config.write_text(yaml.safe_dump({"sieve": {"default_engine": "atkin"}}))
    assert run(["--config", str(isolated_config), "--verbose", "count", "1000"]) == EXIT_OK
    assert _lines(capsys) == ["168"]


def test_activity_log(isolated_config, tmp_path):
    log_file = tmp_path / "activity.jsonl"
    isolated_config.write_text(yaml.safe_dump({"activity": {"enabled": True, "file": str(log_file)}}))
    assert run(["--config", str(isolated_config), "count", "100"]) == EXIT_OK
    assert run(["--config", str(isolated_config), "primes", "5", "2"]) == EXIT_USAGE
    records = [json.loads(line) for line in log_file.read_text().splitlines()]
    assert [r["command"] for r in records] == ["count", "primes"]
    assert records[0]["type"] == "command_run"
    assert records[0]["summary"] == {"engine": "rolling", "count": 25}
    assert records[0]["error"] is None
    assert records[1]["error"]


def _checker():
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parent.parent / "scripts" / "check_factorizations.py"
    spec = importlib.util.spec_from_file_location("check_factorizations", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def test_factor_output_passes_checker(capsys):
    assert run(["factor", "100", "10000"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    err = io.StringIO()
    assert _checker().check_stream(lines, err) == (9901, 0)
    assert err.getvalue() == ""


def test_checker_flags_bad_lines():
    checker = _checker()
    assert checker.check_line("12 = 2^2 * 3^1") is None
    assert checker.check_line("12 = 2^1 * 3^1") == "product is 6"
    assert checker.check_line("12 = 3^1 * 2^2") == "primes not ascending at 2"
    assert checker.check_line("16 = 4^2") == "4 is not prime"
    assert checker.check_line("twelve") == "unparseable"
