# rollsieve - Prime stream writers: TEXT lines and the PBM1 bitmap
"""Output formats for ``rollsieve primes``.

TEXT is one decimal value per line. BITMAP is ``b"PBM1"``, lo and count as
little-endian u64, then ceil(count / 8) bytes where bit j of byte k (LSB first)
is the primality of lo + 8k + j.
"""
from __future__ import annotations

import struct
import sys
from pathlib import Path
from typing import BinaryIO, Iterable, TextIO

import numpy as np

from rollsieve.errors import SieveRangeError
from rollsieve.models import OutputFormat, OutputSpec

BITMAP_MAGIC = b"PBM1"
_BITMAP_HEADER = struct.Struct("<QQ")


def write_text(primes: Iterable[int], out: TextIO, flush_every: int = 4096) -> int:
    count = 0
    buf: list[str] = []
    for p in primes:
        buf.append(f"{p}\n")
        count += 1
        if len(buf) >= flush_every:
            out.write("".join(buf))
            buf.clear()
    if buf:
        out.write("".join(buf))
    out.flush()
    return count


def encode_bitmap(primes: Iterable[int], lo: int, hi: int) -> bytes:
    """PBM1 record for [lo, hi] marking the given primes."""
    if hi < lo:
        raise SieveRangeError(f"empty bitmap range [{lo}, {hi}]")
    count = hi - lo + 1
    bits = np.zeros(count, dtype=bool)
    idx = np.fromiter((p - lo for p in primes), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= count):
        raise SieveRangeError(f"prime outside bitmap range [{lo}, {hi}]")
    bits[idx] = True
    return BITMAP_MAGIC + _BITMAP_HEADER.pack(lo, count) + np.packbits(bits, bitorder="little").tobytes()


def decode_bitmap(data: bytes) -> tuple[int, int, list[int]]:
    """(lo, count, primes) from a PBM1 record."""
    if data[:4] != BITMAP_MAGIC:
        raise SieveRangeError("not a PBM1 bitmap (bad magic)")
    if len(data) < 4 + _BITMAP_HEADER.size:
        raise SieveRangeError("truncated bitmap header")
    lo, count = _BITMAP_HEADER.unpack_from(data, 4)
    payload = data[4 + _BITMAP_HEADER.size :]
    if len(payload) != -(-count // 8):
        raise SieveRangeError(f"bitmap payload is {len(payload)} bytes, expected {-(-count // 8)}")
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8), count=count, bitorder="little")
    return lo, count, (np.flatnonzero(bits) + lo).tolist()


def write_bitmap(primes: Iterable[int], lo: int, hi: int, out: BinaryIO) -> int:
    data = encode_bitmap(primes, lo, hi)
    out.write(data)
    out.flush()
    return hi - lo + 1


def emit_primes(primes: Iterable[int], spec: OutputSpec, lo: int, hi: int, flush_every: int = 4096) -> int:
    """Write the stream per ``spec``; returns primes written (TEXT) or bitmap slots (BITMAP)."""
    if spec.format == OutputFormat.TEXT:
        if spec.destination is None:
            return write_text(primes, sys.stdout, flush_every)
        spec.destination.parent.mkdir(parents=True, exist_ok=True)
        with open(spec.destination, "w", encoding="ascii") as f:
            return write_text(primes, f, flush_every)
    if spec.destination is None:
        return write_bitmap(primes, lo, hi, sys.stdout.buffer)
    Path(spec.destination).parent.mkdir(parents=True, exist_ok=True)
    with open(spec.destination, "wb") as f:
        return write_bitmap(primes, lo, hi, f)
