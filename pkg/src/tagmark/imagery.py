"""Grayscale image representation, PGM I/O, and 8x8 block tiling.

Images are 2-D numpy arrays of dtype uint8, shape ``(height, width)``,
holding 8-bit luminance samples. Block grids are float64 arrays of shape
``(rows, cols, 8, 8)`` where ``grid[r, c, y, x]`` is the sample at image
coordinates ``(8*c + x, 8*r + y)``; all pipeline math happens on these
real-valued blocks and is only quantized back to 8 bits when an image is
materialized.

The only supported file format is binary PGM (magic ``P5``) with maxval
255. The writer emits the canonical form ``P5\\n<w> <h>\\n255\\n`` followed
by the raw samples, byte-reproducible for golden-file comparison. The
reader additionally tolerates ``#`` comment lines inside the header.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, PgmFormatError

BLOCK = 8

_WHITESPACE = b" \t\n\r\x0b\x0c"


def as_gray(img) -> np.ndarray:
    """Validate `img` as an 8-bit grayscale image and return it as uint8.

    Accepts any 2-D array-like of integer values in [0, 255].
    """
    a = np.asarray(img)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D grayscale image, got shape {a.shape}")
    if a.size == 0:
        raise DimensionError("empty image")
    if a.dtype == np.uint8:
        return a
    if not np.issubdtype(a.dtype, np.integer):
        if not np.all(a == np.floor(a)):
            raise DimensionError("image samples must be integer-valued")
    if a.min() < 0 or a.max() > 255:
        raise DimensionError("image samples must lie in [0, 255]")
    return a.astype(np.uint8)


def read_pgm(data: bytes) -> np.ndarray:
    """Parse binary PGM bytes into a (height, width) uint8 array.

    Only ``P5`` with maxval 255 is accepted; sample values pass through
    unscaled. Errors report the byte offset at which parsing failed.
    """
    if data[:2] != b"P5":
        raise PgmFormatError("not a binary PGM: missing P5 magic", 0)
    pos = 2

    def skip_separators(pos: int) -> int:
        while pos < len(data):
            c = data[pos : pos + 1]
            if c in _WHITESPACE:
                pos += 1
            elif c == b"#":
                nl = data.find(b"\n", pos)
                if nl < 0:
                    raise PgmFormatError("unterminated comment line", pos)
                pos = nl + 1
            else:
                break
        return pos

    def read_int(pos: int, what: str) -> tuple[int, int]:
        pos = skip_separators(pos)
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if pos == start:
            raise PgmFormatError(f"expected {what}", start)
        return int(data[start:pos]), pos

    width, pos = read_int(pos, "width")
    height, pos = read_int(pos, "height")
    maxval, pos = read_int(pos, "maxval")
    if width <= 0 or height <= 0:
        raise PgmFormatError(f"bad dimensions {width}x{height}", pos)
    if maxval != 255:
        raise PgmFormatError(f"unsupported maxval {maxval} (only 255)", pos)
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise PgmFormatError("missing whitespace after maxval", pos)
    pos += 1

    n = width * height
    if len(data) - pos < n:
        raise PgmFormatError(
            f"truncated payload: need {n} sample bytes, have {len(data) - pos}",
            len(data),
        )
    samples = np.frombuffer(data, dtype=np.uint8, count=n, offset=pos)
    return samples.reshape(height, width).copy()


def write_pgm(img) -> bytes:
    """Serialize an image to canonical binary PGM (no comments, maxval 255)."""
    a = as_gray(img)
    h, w = a.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + a.tobytes()


def load_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(path, img) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img))


def quantize(values) -> np.ndarray:
    """Materialize real values as 8-bit samples.

    Policy: round half-away-from-zero, then clamp to [0, 255]. This is the
    single quantization step of the whole pipeline; intermediates stay
    real. Clamping is total: +/-inf pin to the range ends and NaN maps
    to 0, so the result is a valid image for any input.
    """
    v = np.asarray(values, dtype=np.float64)
    v = np.nan_to_num(v, nan=0.0, posinf=255.0, neginf=0.0)
    rounded = np.copysign(np.floor(np.abs(v) + 0.5), v)
    return np.clip(rounded, 0.0, 255.0).astype(np.uint8)


def to_blocks(img) -> np.ndarray:
    """Tile an image into 8x8 blocks, shape (rows, cols, 8, 8), float64.

    Both image dimensions must be multiples of 8; there is no implicit
    padding.
    """
    a = as_gray(img)
    h, w = a.shape
    if h % BLOCK or w % BLOCK:
        raise DimensionError(
            f"image dimensions {w}x{h} are not multiples of {BLOCK}"
        )
    rows, cols = h // BLOCK, w // BLOCK
    return (
        a.astype(np.float64)
        .reshape(rows, BLOCK, cols, BLOCK)
        .swapaxes(1, 2)
        .copy()
    )


def from_blocks(blocks) -> np.ndarray:
    """Reassemble a (rows, cols, 8, 8) block grid into a uint8 image.

    Applies the standard quantization policy (see :func:`quantize`), so the
    result satisfies the image invariants for any real-valued input.
    """
    b = np.asarray(blocks, dtype=np.float64)
    if b.ndim != 4 or b.shape[2:] != (BLOCK, BLOCK):
        raise DimensionError(f"expected a (rows, cols, 8, 8) grid, got {b.shape}")
    rows, cols = b.shape[:2]
    flat = b.swapaxes(1, 2).reshape(rows * BLOCK, cols * BLOCK)
    return quantize(flat)
