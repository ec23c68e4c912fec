"""Bit strings, fixed-width fields and Elias gamma codes.

Labels are plain ``str`` objects over ``"0"``/``"1"``, most significant bit
first.  The labels file stores them as ``vertex hex bitlength``.
"""
from __future__ import annotations

from typing import Iterable

WIDTH_FIELD = 6
MAX_WIDTH = (1 << WIDTH_FIELD) - 1


class LabelFormatError(ValueError):
    pass


class BitWriter:
    def __init__(self):
        self.value = 0
        self.length = 0

    def write(self, value: int, width: int) -> None:
        if value < 0 or value >> width:
            raise OverflowError(f"{value} does not fit in {width} bits")
        self.value = (self.value << width) | value
        self.length += width

    def write_width(self, width: int) -> None:
        if width > MAX_WIDTH:
            raise OverflowError(f"field width {width} exceeds {MAX_WIDTH}")
        self.write(width, WIDTH_FIELD)

    def write_gamma(self, k: int) -> None:
        """Elias gamma code of ``k >= 1``: ``floor(log2 k)`` zeros, then ``k`` in binary."""
        if k < 1:
            raise ValueError("gamma code needs k >= 1")
        nbits = k.bit_length()
        self.write(0, nbits - 1)
        self.write(k, nbits)

    def bits(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""


class BitReader:
    def __init__(self, bits: str):
        if bits and set(bits) - {"0", "1"}:
            raise LabelFormatError("label must consist of 0/1 characters")
        self.value = int(bits, 2) if bits else 0
        self.remaining = len(bits)

    def read(self, width: int) -> int:
        if width > self.remaining:
            raise LabelFormatError("label truncated")
        self.remaining -= width
        return (self.value >> self.remaining) & ((1 << width) - 1)

    def read_gamma(self) -> int:
        zeros = 0
        while self.read(1) == 0:
            zeros += 1
        return (1 << zeros) | self.read(zeros)

    def done(self) -> None:
        if self.remaining:
            raise LabelFormatError(f"{self.remaining} trailing bits in label")


def gamma_length(k: int) -> int:
    return 2 * k.bit_length() - 1


def to_hex(bits: str) -> str:
    if not bits:
        return "0"
    return format(int(bits, 2), "x")


def from_hex(text: str, length: int) -> str:
    value = int(text, 16)
    if value.bit_length() > length:
        raise LabelFormatError(f"hex {text} longer than {length} bits")
    return format(value, f"0{length}b") if length else ""


def format_labels(scheme: str, labels: Iterable[tuple[int, str]]) -> str:
    lines = [f"# scheme {scheme}"]
    lines += [f"{vid} {to_hex(bits)} {len(bits)}" for vid, bits in labels]
    return "\n".join(lines) + "\n"


def parse_labels(text: str) -> tuple[str, dict[int, str]]:
    scheme = "L3"
    labels: dict[int, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "scheme":
                scheme = parts[1]
            continue
        vid, hexbits, length = line.split()
        labels[int(vid)] = from_hex(hexbits, int(length))
    return scheme, labels
