"""Dual-layer tag embedding and extraction.

Embedding runs two stages over the 8x8 block grid of a cover image. Stage
one adds ``alpha * w`` (w = the mark pixel assigned to the block, one mark
pixel per block) to a fixed set of mid-frequency DCT coefficients and
inverts the transform. Stage two decomposes the resulting real-valued
block with the SVD and adds ``alpha * w`` to all eight singular values
before recomposing. Only the final image is quantized to 8 bits.

Extraction is non-blind and peels the layers in reverse. The side-info key
records, per block, the cover's original DCT coefficients at the embedding
positions and the singular values of the intermediate (post-DCT-embed)
block. From a possibly attacked image:

1. the SVD-layer mark is the mean of ``(sigma - orig_sigma) / alpha``;
2. restoring ``orig_sigma`` into the block's factorization recovers the
   intermediate image that carries only the DCT layer;
3. the DCT-layer mark is the mean of ``(coeff - orig_coeff) / alpha`` over
   the embedding positions.

Verification thresholds the PSNR between the two extracted marks: a forged
or mismatched key makes the layers disagree, a genuine one keeps them
within quantization and attack noise of each other.

The key serializes as the line-oriented text format ``TAGKEY v1``; floats
are printed with 17 significant digits so that write -> read -> write is
byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, KeyFormatError, ParameterError
from .imagery import as_gray, from_blocks, quantize, to_blocks
from .metrics import VerificationReport, psnr
from .svd import recompose_stack, svd_stack
from .transform import dct2, idct2

DEFAULT_ALPHA = 0.05
DEFAULT_THRESHOLD_DB = 30.0

# the anti-diagonal u + v = 7: the canonical mid-frequency band of an
# 8x8 spectrum, giving eightfold redundancy per block
MID_BAND = tuple((u, 7 - u) for u in range(8))

KEY_MAGIC = "TAGKEY v1"


@dataclass(frozen=True)
class EmbedParams:
    """Embedding strength and DCT coefficient positions."""

    alpha: float = DEFAULT_ALPHA
    dct_positions: tuple[tuple[int, int], ...] = MID_BAND

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0.0):
            raise ParameterError(f"alpha must be a finite positive number, got {self.alpha}")
        positions = tuple((int(u), int(v)) for u, v in self.dct_positions)
        if not positions:
            raise ParameterError("dct_positions must not be empty")
        if len(set(positions)) != len(positions):
            raise ParameterError("dct_positions contains duplicates")
        for u, v in positions:
            if not (0 <= u <= 7 and 0 <= v <= 7):
                raise ParameterError(f"dct position ({u}, {v}) out of range 0..7")
        object.__setattr__(self, "dct_positions", positions)


@dataclass(frozen=True)
class SideInfoKey:
    """Per-block reference data required for non-blind extraction.

    orig_dct holds the cover's DCT coefficients at dct_positions (in that
    order), orig_sigma the singular values of the intermediate blocks.
    perm records the singular-value sort order; keys produced by
    :func:`embed` always carry the identity since the uniform shift never
    reorders the spectrum.
    """

    alpha: float
    dct_positions: tuple[tuple[int, int], ...]
    grid_rows: int
    grid_cols: int
    orig_dct: np.ndarray    # (nblocks, len(dct_positions)) float64
    orig_sigma: np.ndarray  # (nblocks, 8) float64
    perm: np.ndarray        # (nblocks, 8) int

    @property
    def nblocks(self) -> int:
        return self.grid_rows * self.grid_cols

    def __post_init__(self):
        k = len(self.dct_positions)
        if self.orig_dct.shape != (self.nblocks, k):
            raise KeyFormatError(
                f"orig_dct shape {self.orig_dct.shape} does not match "
                f"{self.nblocks} blocks x {k} positions"
            )
        if self.orig_sigma.shape != (self.nblocks, 8):
            raise KeyFormatError(f"orig_sigma shape {self.orig_sigma.shape} invalid")
        if self.perm.shape != (self.nblocks, 8):
            raise KeyFormatError(f"perm shape {self.perm.shape} invalid")


@dataclass(frozen=True)
class ExtractedMarks:
    """Real-valued marks recovered from the two layers, one value per block."""

    from_svd: np.ndarray
    from_dct: np.ndarray

    def images(self) -> tuple[np.ndarray, np.ndarray]:
        """Materialize both marks as 8-bit images (round, clamp to [0, 255])."""
        return quantize(self.from_svd), quantize(self.from_dct)


def _position_arrays(positions) -> tuple[np.ndarray, np.ndarray]:
    us = np.array([u for u, _ in positions], dtype=np.intp)
    vs = np.array([v for _, v in positions], dtype=np.intp)
    return us, vs


def embed_blocks(blocks: np.ndarray, mark_values: np.ndarray,
                 params: EmbedParams) -> tuple[np.ndarray, SideInfoKey]:
    """Run both embedding stages on a real-valued block grid.

    Returns the stage-two blocks (not quantized) and the side-info key.
    """
    rows, cols = blocks.shape[:2]
    w = np.asarray(mark_values, dtype=np.float64)
    if w.shape != (rows, cols):
        raise DimensionError(
            f"mark is {w.shape[1]}x{w.shape[0]} pixels but the cover has "
            f"{cols}x{rows} blocks; one mark pixel per block is required"
        )
    us, vs = _position_arrays(params.dct_positions)

    spectra = dct2(blocks)
    orig_dct = spectra[..., us, vs].copy()
    spectra[..., us, vs] += params.alpha * w[..., None]
    stage1 = idct2(spectra)

    u, sigma, vt = svd_stack(stage1)
    orig_sigma = sigma.copy()
    stage2 = recompose_stack(u, sigma + params.alpha * w[..., None], vt)

    nblocks = rows * cols
    key = SideInfoKey(
        alpha=params.alpha,
        dct_positions=params.dct_positions,
        grid_rows=rows,
        grid_cols=cols,
        orig_dct=orig_dct.reshape(nblocks, -1),
        orig_sigma=orig_sigma.reshape(nblocks, 8),
        perm=np.tile(np.arange(8, dtype=np.int64), (nblocks, 1)),
    )
    return stage2, key


def embed(cover, mark, params: EmbedParams | None = None) -> tuple[np.ndarray, SideInfoKey]:
    """Embed a mark into a cover image.

    The cover's dimensions must be multiples of 8 and the mark must have
    exactly one pixel per 8x8 cover block. Returns the watermarked image
    (quantized to 8 bits) and the key needed to extract and verify.
    """
    if params is None:
        params = EmbedParams()
    blocks = to_blocks(cover)
    mark_values = as_gray(mark).astype(np.float64)
    stage2, key = embed_blocks(blocks, mark_values, params)
    return from_blocks(stage2), key


def _check_key(key: SideInfoKey) -> None:
    if not (math.isfinite(key.alpha) and key.alpha > 0.0):
        raise KeyFormatError(f"corrupt key: alpha must be positive, got {key.alpha}")


def extract_blocks(blocks: np.ndarray, key: SideInfoKey) -> ExtractedMarks:
    """Recover both marks from a real-valued block grid."""
    _check_key(key)
    rows, cols = blocks.shape[:2]
    if (rows, cols) != (key.grid_rows, key.grid_cols):
        raise DimensionError(
            f"image has {cols}x{rows} blocks but key records "
            f"{key.grid_cols}x{key.grid_rows}"
        )
    us, vs = _position_arrays(key.dct_positions)
    orig_sigma = key.orig_sigma.reshape(rows, cols, 8)
    orig_dct = key.orig_dct.reshape(rows, cols, len(key.dct_positions))

    u, sigma, vt = svd_stack(blocks)
    from_svd = np.mean(sigma - orig_sigma, axis=-1) / key.alpha

    peeled = recompose_stack(u, orig_sigma, vt)
    spectra = dct2(peeled)
    from_dct = np.mean(spectra[..., us, vs] - orig_dct, axis=-1) / key.alpha

    return ExtractedMarks(from_svd=from_svd, from_dct=from_dct)


def extract(image, key: SideInfoKey) -> ExtractedMarks:
    """Recover both marks from a (possibly attacked) watermarked image."""
    return extract_blocks(to_blocks(image), key)


def verify(image, key: SideInfoKey,
           threshold_db: float = DEFAULT_THRESHOLD_DB) -> VerificationReport:
    """Decide tag authenticity: PSNR between the two extracted marks.

    The image is authentic iff the inter-mark PSNR reaches the threshold.
    """
    marks = extract(image, key)
    mark_svd, mark_dct = marks.images()
    value = psnr(mark_svd, mark_dct)
    details = {
        "mark_rows": key.grid_rows,
        "mark_cols": key.grid_cols,
        "svd_mark_min": float(mark_svd.min()),
        "svd_mark_max": float(mark_svd.max()),
        "svd_mark_mean": float(mark_svd.mean()),
        "dct_mark_min": float(mark_dct.min()),
        "dct_mark_max": float(mark_dct.max()),
        "dct_mark_mean": float(mark_dct.mean()),
    }
    return VerificationReport(
        psnr_db=value,
        threshold_db=float(threshold_db),
        authentic=value >= threshold_db,
        details=details,
    )


# --- TAGKEY v1 serialization ------------------------------------------------


def render_key(key: SideInfoKey) -> str:
    """Serialize a key to TAGKEY v1 text."""
    _check_key(key)
    lines = [KEY_MAGIC]
    lines.append(f"alpha {key.alpha:.17g}")
    lines.append(f"grid {key.grid_rows} {key.grid_cols}")
    pos = " ".join(f"{u} {v}" for u, v in key.dct_positions)
    lines.append(f"dctpos {len(key.dct_positions)} {pos}")
    for i in range(key.nblocks):
        dct_part = " ".join(f"{x:.17g}" for x in key.orig_dct[i])
        sigma_part = " ".join(f"{x:.17g}" for x in key.orig_sigma[i])
        perm_part = " ".join(str(int(p)) for p in key.perm[i])
        lines.append(f"blk {i} dct {dct_part} sigma {sigma_part} perm {perm_part}")
    return "\n".join(lines) + "\n"


def _parse_finite(token: str, what: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise KeyFormatError(f"bad {what} value {token!r}", lineno) from None
    if not math.isfinite(value):
        raise KeyFormatError(f"{what} must be finite, got {token!r}", lineno)
    return value


def _parse_int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise KeyFormatError(f"bad {what} value {token!r}", lineno) from None


def parse_key(text: str) -> SideInfoKey:
    """Parse TAGKEY v1 text; errors carry the first malformed line number."""
    lines = text.splitlines()
    if not lines or lines[0] != KEY_MAGIC:
        raise KeyFormatError(f"missing {KEY_MAGIC!r} magic line", 1)

    if len(lines) < 4:
        raise KeyFormatError("truncated key: header incomplete", len(lines) + 1)

    tok = lines[1].split()
    if len(tok) != 2 or tok[0] != "alpha":
        raise KeyFormatError("expected 'alpha <float>'", 2)
    alpha = _parse_finite(tok[1], "alpha", 2)
    if alpha <= 0.0:
        raise KeyFormatError(f"alpha must be positive, got {alpha}", 2)

    tok = lines[2].split()
    if len(tok) != 3 or tok[0] != "grid":
        raise KeyFormatError("expected 'grid <rows> <cols>'", 3)
    rows = _parse_int(tok[1], "grid rows", 3)
    cols = _parse_int(tok[2], "grid cols", 3)
    if rows <= 0 or cols <= 0:
        raise KeyFormatError(f"grid dimensions must be positive, got {rows}x{cols}", 3)

    tok = lines[3].split()
    if len(tok) < 2 or tok[0] != "dctpos":
        raise KeyFormatError("expected 'dctpos <k> u0 v0 ...'", 4)
    k = _parse_int(tok[1], "position count", 4)
    if k < 1 or len(tok) != 2 + 2 * k:
        raise KeyFormatError(f"dctpos expects {2 * k} indices after the count", 4)
    indices = [_parse_int(t, "dct position", 4) for t in tok[2:]]
    positions = tuple(zip(indices[0::2], indices[1::2]))
    for u, v in positions:
        if not (0 <= u <= 7 and 0 <= v <= 7):
            raise KeyFormatError(f"dct position ({u}, {v}) out of range 0..7", 4)
    if len(set(positions)) != k:
        raise KeyFormatError("duplicate dct positions", 4)

    nblocks = rows * cols
    orig_dct = np.empty((nblocks, k), dtype=np.float64)
    orig_sigma = np.empty((nblocks, 8), dtype=np.float64)
    perm = np.empty((nblocks, 8), dtype=np.int64)
    expected_tokens = 2 + 1 + k + 1 + 8 + 1 + 8

    for i in range(nblocks):
        lineno = 5 + i
        if lineno - 1 >= len(lines):
            raise KeyFormatError(
                f"truncated key: expected {nblocks} block lines, found {i}", lineno
            )
        tok = lines[lineno - 1].split()
        if (
            len(tok) != expected_tokens
            or tok[0] != "blk"
            or tok[2] != "dct"
            or tok[3 + k] != "sigma"
            or tok[12 + k] != "perm"
        ):
            raise KeyFormatError(
                "expected 'blk <i> dct <k floats> sigma <8 floats> perm <8 ints>'",
                lineno,
            )
        if _parse_int(tok[1], "block index", lineno) != i:
            raise KeyFormatError(f"block index out of order: expected {i}", lineno)
        orig_dct[i] = [_parse_finite(t, "dct coefficient", lineno) for t in tok[3 : 3 + k]]
        sigma = [_parse_finite(t, "sigma", lineno) for t in tok[4 + k : 12 + k]]
        if any(s < 0.0 for s in sigma):
            raise KeyFormatError("sigma values must be non-negative", lineno)
        if any(a < b for a, b in zip(sigma, sigma[1:])):
            raise KeyFormatError("sigma values must be non-increasing", lineno)
        orig_sigma[i] = sigma
        p = [_parse_int(t, "perm", lineno) for t in tok[13 + k :]]
        if sorted(p) != list(range(8)):
            raise KeyFormatError("perm is not a permutation of 0..7", lineno)
        perm[i] = p

    for extra, line in enumerate(lines[4 + nblocks :], start=5 + nblocks):
        if line.strip():
            raise KeyFormatError("unexpected trailing data", extra)

    return SideInfoKey(
        alpha=alpha,
        dct_positions=positions,
        grid_rows=rows,
        grid_cols=cols,
        orig_dct=orig_dct,
        orig_sigma=orig_sigma,
        perm=perm,
    )


def load_key(path) -> SideInfoKey:
    with open(path, "r", encoding="ascii") as fh:
        return parse_key(fh.read())


def save_key(path, key: SideInfoKey) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(render_key(key))
