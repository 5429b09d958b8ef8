"""Forward and inverse 2-D DCT on 8x8 blocks.

Scaling convention: the DC term is the plain block mean times N, edge
coefficients carry sqrt(2)/N, interior ones 2/N -- i.e. the orthonormal
DCT-II, computed here in separable matrix form. A coefficient array is
indexed ``coeffs[u, v]`` where u pairs with the horizontal pixel index x
and v with the vertical index y of ``block[y, x]``.

Both functions accept a single (8, 8) block or any stack shaped
``(..., 8, 8)`` and transform the blocks independently.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, NumericInputError

N = 8


def _basis(n: int) -> np.ndarray:
    # rows: frequency k; columns: sample t
    k = np.arange(n)[:, None]
    t = np.arange(n)[None, :]
    c = np.cos((2 * t + 1) * k * np.pi / (2 * n)) * np.sqrt(2.0 / n)
    c[0] /= np.sqrt(2.0)
    return c


_C = _basis(N)


def _check(a, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim < 2 or a.shape[-2:] != (N, N):
        raise DimensionError(f"{name} must be shaped (..., {N}, {N}), got {a.shape}")
    if not np.isfinite(a).all():
        raise NumericInputError(f"{name} contains non-finite values")
    return a


def dct2(block) -> np.ndarray:
    """Transform block samples into DCT coefficients, coeffs[u, v]."""
    b = _check(block, "block")
    return _C @ np.swapaxes(b, -1, -2) @ _C.T


def idct2(coeffs) -> np.ndarray:
    """Invert :func:`dct2`; reconstructs block samples block[y, x]."""
    f = _check(coeffs, "coefficients")
    return np.swapaxes(_C.T @ f @ _C, -1, -2)
