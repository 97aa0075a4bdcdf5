# rollsieve - Output format tests
import io
import random

import pytest

from rollsieve.errors import SieveRangeError
from rollsieve.models import OutputFormat, OutputSpec
from rollsieve.reporter.csv_report import write_rows
from rollsieve.reporter.output import BITMAP_MAGIC, decode_bitmap, emit_primes, encode_bitmap, write_text


def test_text_lines():
    out = io.StringIO()
    assert write_text([2, 3, 5, 7], out, flush_every=3) == 4
    assert out.getvalue() == "2\n3\n5\n7\n"


def test_bitmap_layout():
    data = encode_bitmap([101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163], 100, 163)
    assert data[:4] == BITMAP_MAGIC
    assert int.from_bytes(data[4:12], "little") == 100
    assert int.from_bytes(data[12:20], "little") == 64
    assert len(data) == 20 + 8
    # byte 0 covers 100..107: 101, 103, 107 -> bits 1, 3, 7
    assert data[20] == 0b10001010


def test_bitmap_decodes_random_vectors():
    rng = random.Random(4)
    for count in (1, 7, 8, 9, 1000):
        lo = rng.randrange(0, 10**6)
        marked = sorted(rng.sample(range(lo, lo + count), rng.randrange(0, count + 1)))
        assert decode_bitmap(encode_bitmap(marked, lo, lo + count - 1)) == (lo, count, marked)


def test_bitmap_rejects_bad_input():
    with pytest.raises(SieveRangeError):
        encode_bitmap([5], 10, 20)
    with pytest.raises(SieveRangeError):
        decode_bitmap(b"PBM0" + bytes(16))
    with pytest.raises(SieveRangeError):
        decode_bitmap(encode_bitmap([3], 2, 20)[:-1])


def test_emit_to_file(tmp_path):
    text = tmp_path / "p.txt"
    bitmap = tmp_path / "p.pbm"
    emit_primes(iter([2, 3, 5]), OutputSpec(OutputFormat.TEXT, text), 2, 6)
    emit_primes(iter([2, 3, 5]), OutputSpec(OutputFormat.BITMAP, bitmap), 2, 6)
    assert text.read_text() == "2\n3\n5\n"
    assert decode_bitmap(bitmap.read_bytes()) == (2, 5, [2, 3, 5])


def test_csv_rows_use_decimal_notation():
    out = io.StringIO()
    write_rows([{"n": 10**6, "ratio": 1.5e-7}], ["n", "ratio"], out)
    assert out.getvalue() == "n,ratio\n1000000,0.000000\n"
