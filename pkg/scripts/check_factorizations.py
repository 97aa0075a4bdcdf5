#!/usr/bin/env python3
"""
rollsieve - check `rollsieve factor` output.

Reads lines of the form `value = p1^e1 * p2^e2 * ...` from a file or stdin and
verifies that each line re-multiplies to its value, that the primes ascend and
that every listed prime passes trial division.

  rollsieve factor 100 10000 | python scripts/check_factorizations.py
  python scripts/check_factorizations.py factors.txt
"""
from __future__ import annotations

import argparse
import sys
from functools import lru_cache
from typing import Iterable, TextIO

from rollsieve.sieve.baseline import trial_division_is_prime


@lru_cache(maxsize=65536)
def _is_prime(p: int) -> bool:
    return trial_division_is_prime(p)


def check_line(line: str) -> str | None:
    """Problem description for one line, or None when it checks out."""
    try:
        left, right = line.split("=", 1)
        value = int(left)
        factors = [tuple(int(x) for x in term.split("^")) for term in right.split("*")]
    except ValueError:
        return "unparseable"
    product = 1
    previous = 1
    for p, e in factors:
        if e < 1:
            return f"exponent {e} for {p}"
        if p <= previous:
            return f"primes not ascending at {p}"
        if not _is_prime(p):
            return f"{p} is not prime"
        product *= p**e
        previous = p
    if product != value:
        return f"product is {product}"
    return None


def check_stream(lines: Iterable[str], err: TextIO = sys.stderr) -> tuple[int, int]:
    checked = failed = 0
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        checked += 1
        problem = check_line(line)
        if problem:
            failed += 1
            print(f"BAD {line}: {problem}", file=err)
    return checked, failed


def main() -> None:
    ap = argparse.ArgumentParser(description="Verify `rollsieve factor` output")
    ap.add_argument("path", nargs="?", help="File with factor lines (default: stdin)")
    args = ap.parse_args()
    if args.path:
        with open(args.path) as f:
            checked, failed = check_stream(f)
    else:
        checked, failed = check_stream(sys.stdin)
    print(f"{checked} lines checked, {failed} bad")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
