"""Singular value decomposition of 8x8 real blocks.

Factors a block A into U * diag(sigma) * Vt with orthogonal U, V and
non-negative singular values sorted in non-increasing order. On top of
LAPACK's deterministic factorization we pin a sign convention -- the first
nonzero entry of every column of U is non-negative, with the matching row
of Vt flipped in tandem -- so that key files and extracted marks are
byte-reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericInputError

N = 8


@dataclass(frozen=True)
class SvdFactors:
    """One block's factorization: u @ diag(sigma) @ vt reconstructs it."""

    u: np.ndarray      # (8, 8) orthogonal
    sigma: np.ndarray  # (8,) non-negative, non-increasing
    vt: np.ndarray     # (8, 8) orthogonal (V transposed)


def _fix_signs(u: np.ndarray, vt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # First nonzero entry of each U column decides the column's sign; the
    # paired Vt row flips with it, leaving u @ diag(s) @ vt unchanged.
    nonzero = u != 0.0
    first = np.argmax(nonzero, axis=-2)
    lead = np.take_along_axis(u, first[..., None, :], axis=-2)[..., 0, :]
    flip = np.where(lead < 0.0, -1.0, 1.0)
    return u * flip[..., None, :], vt * flip[..., :, None]


def svd_stack(blocks) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Decompose a stack of blocks shaped (..., 8, 8).

    Returns (u, sigma, vt) with shapes (..., 8, 8), (..., 8), (..., 8, 8),
    sign-normalized as described in the module docstring.
    """
    a = np.asarray(blocks, dtype=np.float64)
    if a.ndim < 2 or a.shape[-2:] != (N, N):
        raise DimensionError(f"blocks must be shaped (..., {N}, {N}), got {a.shape}")
    if not np.isfinite(a).all():
        raise NumericInputError("block contains non-finite values")
    u, s, vt = np.linalg.svd(a)
    u, vt = _fix_signs(u, vt)
    return u, s, vt


def svd8(block) -> SvdFactors:
    """Decompose a single 8x8 block."""
    a = np.asarray(block, dtype=np.float64)
    if a.shape != (N, N):
        raise DimensionError(f"expected an {N}x{N} block, got {a.shape}")
    u, s, vt = svd_stack(a)
    return SvdFactors(u=u, sigma=s, vt=vt)


def recompose(factors: SvdFactors) -> np.ndarray:
    """Rebuild the block u @ diag(sigma) @ vt."""
    return recompose_stack(factors.u, factors.sigma, factors.vt)


def recompose_stack(u, sigma, vt) -> np.ndarray:
    """Stack form of :func:`recompose`: (u * sigma) @ vt, broadcasting."""
    u = np.asarray(u, dtype=np.float64)
    sigma = np.asarray(sigma, dtype=np.float64)
    vt = np.asarray(vt, dtype=np.float64)
    return (u * sigma[..., None, :]) @ vt
