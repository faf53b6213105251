"""Key file formats.

text   one unsigned decimal per line, each line LF-terminated
binary b"APS1", an 8-byte little-endian count, then count 8-byte
       little-endian words
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"APS1"
HEADER = struct.Struct("<4sQ")
FORMATS = ("text", "binary")


class MalformedInput(ValueError):
    pass


def parse_text(data: bytes) -> np.ndarray:
    if not data:
        return np.zeros(0, dtype=np.uint64)
    if not data.endswith(b"\n"):
        raise MalformedInput("text input must end with a newline")
    lines = data[:-1].split(b"\n")
    out = np.empty(len(lines), dtype=np.uint64)
    for i, line in enumerate(lines):
        if not line.isdigit():
            raise MalformedInput(f"line {i + 1}: expected an unsigned decimal, got {line[:40]!r}")
        v = int(line)
        if v >= 1 << 64:
            raise MalformedInput(f"line {i + 1}: {v} does not fit in 64 bits")
        out[i] = v
    return out


def format_text(keys, columns=()) -> bytes:
    rows = zip(keys.tolist(), *(c.tolist() for c in columns))
    return b"".join(("\t".join(map(str, row)) + "\n").encode() for row in rows)


def parse_binary(data: bytes) -> np.ndarray:
    if len(data) < HEADER.size:
        raise MalformedInput("binary input shorter than its header")
    magic, count = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise MalformedInput(f"bad magic {magic!r}, expected {MAGIC!r}")
    if len(data) != HEADER.size + 8 * count:
        raise MalformedInput(
            f"header promises {count} words but {len(data) - HEADER.size} bytes follow"
        )
    return np.frombuffer(data, dtype="<u8", offset=HEADER.size).astype(np.uint64)


def format_binary(keys) -> bytes:
    keys = np.asarray(keys, dtype=np.uint64)
    return HEADER.pack(MAGIC, len(keys)) + keys.astype("<u8").tobytes()


def read_keys(path, fmt: str = "text") -> np.ndarray:
    data = Path(path).read_bytes()
    return parse_binary(data) if fmt == "binary" else parse_text(data)


def write_keys(path, keys, fmt: str = "text") -> None:
    keys = np.asarray(keys, dtype=np.uint64)
    Path(path).write_bytes(format_binary(keys) if fmt == "binary" else format_text(keys))
