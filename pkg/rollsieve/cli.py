# rollsieve - CLI: primes, count, factor, bench, profile, config
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from math import isqrt, sqrt
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from rollsieve import __version__
from rollsieve.config import (
    ENV_VAR,
    get_default_config_path,
    load_config,
    save_config,
    set_config_key,
    validate_config,
)
from rollsieve.errors import InvariantViolation, SieveError, SieveRangeError
from rollsieve.models import Engine, OutputFormat, OutputSpec, WorkMeter, engine_from_str

logger = logging.getLogger("rollsieve.cli")

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2

FACTOR_CHUNK = 4096
BENCH_START = 100

BENCH_FIELDS = [
    "n", "pushes", "pops", "expected_pushes", "push_pop_ratio", "peak_nodes", "pi_sqrt_n",
    "peak_delta", "delta_bound", "max_call", "crossings", "expected_crossings", "rss_bytes",
]
PROFILE_FIELDS = [
    "engine", "start", "n", "gaps", "max_work", "max_normalized", "mean_normalized", "window_constant",
]
GAP_FIELDS = ["gap_start", "gap_length", "work", "normalized"]


def _out_path(value: str | None) -> Path | None:
    return Path(value) if value and value != "-" else None


# --- Sieve commands ---

def cmd_primes(
    config: dict[str, Any],
    start: int,
    end: int,
    engine: Engine,
    spec: OutputSpec,
    budget: int | None = None,
) -> dict[str, Any]:
    """Emit all primes in [start, end] through ``engine``."""
    from rollsieve.reporter.output import emit_primes
    from rollsieve.sieve.engines import iter_primes

    if start < 2 or end < start:
        raise SieveRangeError(f"need 2 <= start <= end, got [{start}, {end}]")
    sieve = config.get("sieve", {})
    inc = config.get("incremental", {})
    primes = iter_primes(
        engine,
        start,
        end,
        segment_delta=sieve.get("segment_delta") or None,
        budget=budget or inc.get("budget") or None,
        safety=float(inc.get("safety", 2.0)),
        audit=bool(sieve.get("audit", False)),
    )
    written = emit_primes(primes, spec, start, end, int(config.get("output", {}).get("flush_every", 4096)))
    return {"engine": engine.value, "format": spec.format.value, "written": written}


def cmd_count(config: dict[str, Any], n: int, engine: Engine) -> dict[str, Any]:
    """Print pi(n)."""
    from rollsieve.sieve.engines import count_primes

    if n < 2:
        raise SieveRangeError(f"pi(n) needs n >= 2, got {n}")
    kwargs: dict[str, Any] = {}
    if engine == Engine.SEGMENTED:
        kwargs["segment_delta"] = config.get("sieve", {}).get("segment_delta") or None
    elif engine == Engine.ATKIN:
        inc = config.get("incremental", {})
        kwargs["budget"] = inc.get("budget") or None
        kwargs["safety"] = float(inc.get("safety", 2.0))
    count = count_primes(engine, n, **kwargs)
    print(count)
    return {"engine": engine.value, "count": count}


def cmd_factor(config: dict[str, Any], start: int, end: int, engine: Engine) -> dict[str, Any]:
    """One `value = p1^e1 * ...` line per integer in [start, end]."""
    from rollsieve.sieve.baseline import base_primes, factor_segment
    from rollsieve.sieve.rolling import MIN_START, rolling_factored

    if start < MIN_START or end < start:
        raise SieveRangeError(f"factor needs {MIN_START} <= start <= end, got [{start}, {end}]")
    flush_every = int(config.get("output", {}).get("flush_every", 4096))
    out = sys.stdout
    lines = 0
    buf: list[str] = []

    def emit(text: str) -> None:
        nonlocal lines
        buf.append(text + "\n")
        lines += 1
        if len(buf) >= flush_every:
            out.write("".join(buf))
            buf.clear()

    if engine == Engine.ROLLING:
        for f in rolling_factored(start, end):
            emit(f.render())
    elif engine == Engine.SEGMENTED:
        base = base_primes(isqrt(end))
        for left in range(start, end + 1, FACTOR_CHUNK):
            for f in factor_segment(left, min(left + FACTOR_CHUNK - 1, end), base):
                emit(f.render())
    else:
        raise SieveRangeError(f"factor runs on the rolling or segmented engine, got {engine.value}")
    out.write("".join(buf))
    out.flush()
    return {"engine": engine.value, "lines": lines}


# --- Measurement commands ---

def _rss_bytes() -> int:
    import psutil
    return psutil.Process(os.getpid()).memory_info().rss


def cmd_bench(config: dict[str, Any], ns: list[int], destination: Path | None) -> dict[str, Any]:
    """Rolling-sieve work and space from 100 to each n, one CSV row per n."""
    from rollsieve.instrumentation.work import count_rolling_work, expected_crossings, expected_pushes, push_pop_ratio
    from rollsieve.reporter.csv_report import write_report
    from rollsieve.sieve.baseline import base_primes, simple_sieve

    ring_size = int(config.get("instrumentation", {}).get("ring_size", 1024))
    rows = []
    for n in ns:
        started = time.monotonic()
        meter = count_rolling_work(BENCH_START, n, ring_size)
        crossing_meter = WorkMeter()
        simple_sieve(n, crossing_meter)
        rows.append({
            "n": n,
            "pushes": meter.pushes,
            "pops": meter.pops,
            "expected_pushes": expected_pushes(BENCH_START, n),
            "push_pop_ratio": push_pop_ratio(meter, n),
            "peak_nodes": meter.peak_nodes,
            "pi_sqrt_n": len(base_primes(isqrt(n))),
            "peak_delta": meter.peak_delta,
            "delta_bound": 4 * sqrt(n) + 8,
            "max_call": meter.max_call,
            "crossings": crossing_meter.crossings,
            "expected_crossings": expected_crossings(n),
            "rss_bytes": _rss_bytes(),
        })
        logger.info("bench n=%d done in %.2fs", n, time.monotonic() - started)
    write_report(rows, BENCH_FIELDS, destination)
    return {"rows": len(rows)}


def cmd_profile(
    config: dict[str, Any],
    start: int,
    n: int,
    engine: Engine,
    per_gap: bool,
    destination: Path | None,
    budget: int | None = None,
) -> dict[str, Any]:
    """Per-gap incremental cost over [start, n], as a summary row or one row per gap."""
    from rollsieve.instrumentation.work import incremental_profile, summarize_profile, window_constant
    from rollsieve.reporter.csv_report import write_report

    budget = budget or config.get("incremental", {}).get("budget") or None
    reports = incremental_profile(start, n, engine, budget)
    summary = summarize_profile(reports)
    if per_gap:
        rows = [
            {"gap_start": r.gap_start, "gap_length": r.gap_length, "work": r.work, "normalized": r.normalized}
            for r in reports
        ]
        write_report(rows, GAP_FIELDS, destination)
    else:
        row = {
            "engine": engine.value,
            "start": start,
            "n": n,
            **summary,
            "window_constant": window_constant(reports, n),
        }
        write_report([row], PROFILE_FIELDS, destination)
    return {"engine": engine.value, "gaps": summary["gaps"]}


# --- Config commands ---

def cmd_config_show(config_path: str | None) -> None:
    """Print merged config as YAML."""
    import yaml
    config = load_config(config_path)
    print(yaml.safe_dump(config, default_flow_style=False, allow_unicode=True, sort_keys=False))


def cmd_config_validate(config_path: str | None) -> int:
    """Validate config file and print errors."""
    config = load_config(config_path)
    errs = validate_config(config)
    if not errs:
        print("Config is valid.")
        return EXIT_OK
    for e in errs:
        print(f"Error: {e}", file=sys.stderr)
    return EXIT_INVARIANT


def cmd_config_set(config_path: str | None, key: str, value: str, output_path: str | None) -> int:
    """Set a config key (dot notation) and save."""
    path = Path(config_path or os.environ.get(ENV_VAR) or get_default_config_path())
    config = load_config(path if path.exists() else None)
    try:
        set_config_key(config, key, value)
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    errs = validate_config(config)
    if errs:
        for e in errs:
            print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    out = Path(output_path or path)
    save_config(out, config)
    print(f"Set {key} = {value!r}; saved to {out}")
    return EXIT_OK


# --- Entry point ---

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rollsieve", description="rollsieve - incremental prime sieves and their work accounting")
    ap.add_argument("--config", "-c", help="Config file path")
    ap.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    engines = [e.value for e in Engine]

    p_primes = sub.add_parser("primes", help="Emit the primes in [start, end]")
    p_primes.add_argument("start", nargs="?", type=int)
    p_primes.add_argument("end", nargs="?", type=int)
    p_primes.add_argument("--start", dest="start_opt", type=int, help="Same as the positional start")
    p_primes.add_argument("--end", dest="end_opt", type=int, help="Same as the positional end")
    p_primes.add_argument("--engine", "-e", choices=engines, help="Sieve engine (default: sieve.default_engine)")
    p_primes.add_argument("--format", "-f", choices=[f.value for f in OutputFormat], help="text or bitmap")
    p_primes.add_argument("--out", "-o", help="Output file (default: stdout)")
    p_primes.add_argument("--budget", type=int, help="Work units per call for the atkin engine (overrides calibration)")

    p_count = sub.add_parser("count", help="Print pi(n)")
    p_count.add_argument("n", type=int)
    p_count.add_argument("--engine", "-e", choices=engines)

    p_factor = sub.add_parser("factor", help="Stream complete factorizations of [start, end]")
    p_factor.add_argument("start", type=int)
    p_factor.add_argument("end", type=int)
    p_factor.add_argument("--engine", "-e", choices=[Engine.ROLLING.value, Engine.SEGMENTED.value], default=Engine.ROLLING.value)

    p_bench = sub.add_parser("bench", help="Rolling-sieve work and space CSV, one row per n")
    p_bench.add_argument("n", type=int, nargs="+")
    p_bench.add_argument("--out", "-o", help="CSV file (default: stdout)")

    p_profile = sub.add_parser("profile", help="Per-gap incremental cost CSV over [start, n]")
    p_profile.add_argument("start", type=int)
    p_profile.add_argument("n", type=int)
    p_profile.add_argument("--engine", "-e", choices=[Engine.ROLLING.value, Engine.ATKIN.value], default=Engine.ROLLING.value)
    p_profile.add_argument("--per-gap", action="store_true", help="One row per gap instead of the window summary")
    p_profile.add_argument("--budget", type=int, help="Work units per call for the atkin engine")
    p_profile.add_argument("--out", "-o", help="CSV file (default: stdout)")

    p_config = sub.add_parser("config", help="config show|validate|set")
    p_config_sub = p_config.add_subparsers(dest="config_cmd", required=True)
    p_config_sub.add_parser("show", help="Show merged config (YAML)")
    p_config_sub.add_parser("validate", help="Validate config file")
    p_config_set = p_config_sub.add_parser("set", help="Set a key (e.g. incremental.safety 3)")
    p_config_set.add_argument("key", help="Dot-separated key")
    p_config_set.add_argument("value", help="Value (true/false and numbers auto-parsed)")
    p_config_set.add_argument("--output", "-o", help="Write to this path instead of --config")
    return ap


def _setup_logging(config: dict[str, Any], verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, str(config.get("logging", {}).get("level", "WARNING")).upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    logging.getLogger("rollsieve").setLevel(level)


def _dispatch(args: argparse.Namespace, config: dict[str, Any]) -> dict[str, Any]:
    sieve = config.get("sieve", {})
    if args.command == "primes":
        start = args.start if args.start is not None else args.start_opt
        end = args.end if args.end is not None else args.end_opt
        if start is None or end is None:
            raise SieveRangeError("primes needs a start and an end")
        engine = engine_from_str(args.engine or sieve.get("default_engine", Engine.ROLLING.value))
        fmt = OutputFormat(args.format or config.get("output", {}).get("format", OutputFormat.TEXT.value))
        return cmd_primes(config, start, end, engine, OutputSpec(fmt, _out_path(args.out)), args.budget)
    if args.command == "count":
        engine = engine_from_str(args.engine or sieve.get("default_engine", Engine.ROLLING.value))
        return cmd_count(config, args.n, engine)
    if args.command == "factor":
        return cmd_factor(config, args.start, args.end, engine_from_str(args.engine))
    if args.command == "bench":
        return cmd_bench(config, args.n, _out_path(args.out))
    if args.command == "profile":
        return cmd_profile(config, args.start, args.n, engine_from_str(args.engine), args.per_gap, _out_path(args.out), args.budget)
    raise SieveRangeError(f"unknown command {args.command}")


def run(argv: list[str] | None = None) -> int:
    """Parse, execute and return the exit status (argparse usage errors exit 2 on their own)."""
    load_dotenv()
    args = build_parser().parse_args(argv)
    config_path = getattr(args, "config", None)

    if args.command == "config":
        if args.config_cmd == "show":
            cmd_config_show(config_path)
            return EXIT_OK
        if args.config_cmd == "validate":
            return cmd_config_validate(config_path)
        return cmd_config_set(config_path, args.key, args.value, args.output)

    config = load_config(config_path)
    _setup_logging(config, args.verbose)
    errs = validate_config(config)
    if errs:
        for e in errs:
            print(f"Error: config: {e}", file=sys.stderr)
        return EXIT_USAGE

    from rollsieve.reporter.activity import ActivityLogger
    activity = ActivityLogger(config)
    activity.start()
    logged_args = {k: v for k, v in vars(args).items() if k not in ("command", "config", "verbose")}
    started = time.monotonic()
    summary: dict[str, Any] = {}
    error: str | None = None
    code = EXIT_OK
    logger.info("%s started", args.command)
    try:
        summary = _dispatch(args, config)
    except InvariantViolation as e:
        error, code = f"invariant violation: {e}", EXIT_INVARIANT
    except SieveRangeError as e:
        error, code = str(e), EXIT_USAGE
    except SieveError as e:
        error, code = str(e), EXIT_INVARIANT
    finally:
        duration = time.monotonic() - started
        activity.log_command_run(args.command, logged_args, duration, summary, error)
        activity.stop()
    if error:
        print(f"rollsieve: error: {error}", file=sys.stderr)
    else:
        logger.info("%s finished in %.3fs: %s", args.command, duration, summary)
    return code


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
