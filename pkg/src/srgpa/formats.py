"""PGM images and seed files.

PGM reading accepts binary ``P5`` and plain ``P2`` with ``maxval`` up to
65535; writing always produces ``P5`` (16-bit big-endian when maxval > 255)
unless ``plain=True``.

Seed files hold one ``label x y`` (or ``label x y z``) line per pixel, where
``x`` is the column, ``y`` the row and ``z`` the plane. ``#`` starts a
comment. Labels must be exactly ``0..m-1``.
"""
from __future__ import annotations

import os
from typing import NamedTuple, Optional, Sequence

import numpy as np


class PGMError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} (byte offset {offset})")
        self.offset = offset


class UnsupportedMagicError(PGMError):
    pass


class MalformedHeaderError(PGMError):
    pass


class TruncatedPayloadError(PGMError):
    pass


class MalformedPayloadError(PGMError):
    pass


class SeedFileError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


class PGM(NamedTuple):
    pixels: np.ndarray
    maxval: int


_WS = b" \t\r\n\v\f"


def _tokens(data: bytes, pos: int, count: int):
    """Read ``count`` whitespace-separated tokens, skipping ``#`` comments."""
    out = []
    n = len(data)
    while len(out) < count:
        while pos < n and (data[pos] in _WS or data[pos] == ord("#")):
            if data[pos] == ord("#"):
                while pos < n and data[pos] not in b"\r\n":
                    pos += 1
            else:
                pos += 1
        start = pos
        while pos < n and data[pos] not in _WS and data[pos] != ord("#"):
            pos += 1
        if start == pos:
            return out, start
        out.append((data[start:pos], start))
    return out, pos


def parse_pgm(data: bytes) -> PGM:
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise UnsupportedMagicError(f"unsupported magic {magic!r}", 0)
    if len(data) < 3 or data[2] not in _WS:
        raise MalformedHeaderError("expected whitespace after magic", 2)
    toks, pos = _tokens(data, 2, 3)
    if len(toks) < 3:
        raise MalformedHeaderError("header needs width, height and maxval", pos)
    fields = []
    for (tok, off), name in zip(toks, ("width", "height", "maxval")):
        if not tok.isdigit():
            raise MalformedHeaderError(f"{name} is not a decimal integer: {tok!r}", off)
        fields.append(int(tok))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"bad dimensions {width}x{height}", toks[0][1])
    if not 1 <= maxval <= 65535:
        raise MalformedHeaderError(f"maxval {maxval} outside 1..65535", toks[2][1])
    dtype = np.uint8 if maxval < 256 else np.uint16
    count = width * height

    if magic == b"P5":
        if pos >= len(data) or data[pos] not in _WS:
            raise MalformedHeaderError("expected one whitespace byte before the raster", pos)
        pos += 1
        nbytes = count * (1 if maxval < 256 else 2)
        payload = data[pos:pos + nbytes]
        if len(payload) < nbytes:
            raise TruncatedPayloadError(
                f"raster needs {nbytes} bytes, found {len(payload)}", pos + len(payload)
            )
        values = np.frombuffer(payload, dtype=">u2" if maxval > 255 else np.uint8)
        values = values.astype(dtype)
        if values.size and int(values.max()) > maxval:
            k = int(np.argmax(values > maxval))
            raise MalformedPayloadError(
                f"sample {values[k]} exceeds maxval {maxval}",
                pos + k * (1 if maxval < 256 else 2),
            )
    else:
        toks, end = _tokens(data, pos, count)
        if len(toks) < count:
            raise TruncatedPayloadError(f"expected {count} samples, found {len(toks)}", end)
        vals = []
        for tok, off in toks:
            if not tok.isdigit() or int(tok) > maxval:
                raise MalformedPayloadError(f"bad sample {tok!r} for maxval {maxval}", off)
            vals.append(int(tok))
        values = np.asarray(vals, dtype=dtype)
    return PGM(values.reshape(height, width), maxval)


def read_pgm(path) -> PGM:
    with open(path, "rb") as f:
        return parse_pgm(f.read())


def format_pgm(pixels, maxval: int = 255, plain: bool = False) -> bytes:
    arr = np.asarray(pixels)
    if arr.ndim != 2:
        raise ValueError(f"PGM holds 2D images, got shape {arr.shape}")
    if not 1 <= maxval <= 65535:
        raise ValueError(f"maxval {maxval} outside 1..65535")
    if arr.size and (arr.min() < 0 or arr.max() > maxval):
        raise ValueError(f"values in [{arr.min()}, {arr.max()}] overflow maxval {maxval}")
    height, width = arr.shape
    if plain:
        rows = "\n".join(" ".join(str(int(v)) for v in row) for row in arr)
        return f"P2\n{width} {height}\n{maxval}\n{rows}\n".encode("ascii")
    header = f"P5\n{width} {height}\n{maxval}\n".encode("ascii")
    body = arr.astype(">u2" if maxval > 255 else np.uint8).tobytes()
    return header + body


def write_pgm(path, pixels, maxval: int = 255, plain: bool = False) -> None:
    data = format_pgm(pixels, maxval, plain)
    with open(path, "wb") as f:
        f.write(data)


def write_labels(path, labels) -> None:
    """Label map as 16-bit P5: 0 is unlabeled, region id + 1 otherwise."""
    write_pgm(path, labels, maxval=65535)


def read_seeds(path, shape: Optional[Sequence[int]] = None) -> list:
    """Parse a seed file into ``seeds[label] = [coords, ...]`` (row-major coords).

    When ``shape`` is given, coordinates are checked against it.
    """
    by_label: dict = {}
    ndim = None
    with open(path, "r", encoding="ascii") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (3, 4):
                raise SeedFileError(f"expected 'label x y [z]', got {line!r}", lineno)
            try:
                nums = [int(t) for t in parts]
            except ValueError:
                raise SeedFileError(f"non-integer field in {line!r}", lineno) from None
            if ndim is None:
                ndim = len(nums) - 1
            elif len(nums) - 1 != ndim:
                raise SeedFileError("mixed 2D and 3D coordinates", lineno)
            label, xyz = nums[0], nums[1:]
            if label < 0:
                raise SeedFileError(f"negative label {label}", lineno)
            coords = tuple(reversed(xyz))
            if shape is not None:
                if len(shape) != len(coords) or not all(
                    0 <= c < d for c, d in zip(coords, shape)
                ):
                    raise SeedFileError(f"coordinate {tuple(xyz)} off grid {tuple(shape)}", lineno)
            by_label.setdefault(label, []).append(coords)
    labels = sorted(by_label)
    if labels != list(range(len(labels))):
        missing = sorted(set(range(max(labels) + 1)) - set(labels)) if labels else []
        raise SeedFileError(f"labels must be 0..m-1; missing {missing}")
    return [by_label[k] for k in labels]


def write_seeds(path, seeds) -> None:
    lines = []
    for label, pixels in enumerate(seeds):
        for c in pixels:
            lines.append(" ".join(str(v) for v in (label, *reversed(tuple(c)))))
    with open(path, "w", encoding="ascii") as f:
        f.write("\n".join(lines) + "\n")


def frame_path(directory, index: int) -> str:
    return os.path.join(directory, f"frame_{index:06d}.pgm")
