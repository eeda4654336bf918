"""16-bit binary PGM (P5) reading and writing.

Luminance is stored as integer grey levels; a ``# cd_per_level=<scale>``
comment records how many cd/m^2 one level represents.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

DEFAULT_SCALE = 0.01  # cd/m^2 per level -> 655.35 cd/m^2 full scale
_MAXVAL = 65535
_SCALE_RE = re.compile(rb"cd_per_level\s*=\s*([0-9eE.+-]+)")


def write_pgm(path, image, scale: float = DEFAULT_SCALE) -> None:
    image = np.asarray(image, dtype=float)
    if image.ndim != 2:
        raise ValueError("PGM images must be 2-D")
    if scale <= 0:
        raise ValueError("scale must be positive")
    levels = np.rint(image / scale)
    if levels.min() < 0 or levels.max() > _MAXVAL:
        raise ValueError(
            f"luminance range [{image.min()}, {image.max()}] does not fit 16 bits at scale {scale}")
    height, width = image.shape
    header = f"P5\n# cd_per_level={scale!r}\n{width} {height}\n{_MAXVAL}\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(levels.astype(">u2").tobytes())


def _tokens(data: bytes):
    """Yield (token, end_offset) for header tokens, collecting comments."""
    pos = 0
    comments = []
    while True:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            end = data.index(b"\n", pos)
            comments.append(data[pos:end])
            pos = end + 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        yield data[start:pos], pos, comments


def read_pgm(path) -> np.ndarray:
    """Read a P5 file into a float luminance array in cd/m^2.

    Files without a ``cd_per_level`` comment are read at one cd/m^2 per level.
    """
    data = Path(path).read_bytes()
    tokens = _tokens(data)
    magic, _, _ = next(tokens)
    if magic != b"P5":
        raise ValueError(f"{path}: not a binary PGM (magic {magic!r})")
    width = int(next(tokens)[0])
    height = int(next(tokens)[0])
    maxval_tok, end, comments = next(tokens)
    maxval = int(maxval_tok)
    offset = end + 1  # exactly one whitespace byte before the raster
    dtype = ">u2" if maxval > 255 else "u1"
    count = width * height
    raster = np.frombuffer(data, dtype=dtype, count=count, offset=offset)
    scale = 1.0
    for comment in comments:
        match = _SCALE_RE.search(comment)
        if match:
            scale = float(match.group(1))
    return raster.reshape(height, width).astype(float) * scale
