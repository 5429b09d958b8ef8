"""Mean squared error and PSNR for 8-bit images.

PSNR uses MAX = 255 and is reported in decibels; identical inputs yield
``math.inf``, which serializes as the string ``inf`` in CLI output and
compares greater than every finite threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError

MAX_SAMPLE = 255.0


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of comparing the two extracted marks against a threshold."""

    psnr_db: float
    threshold_db: float
    authentic: bool
    details: dict = field(default_factory=dict)


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"image shapes differ: {a.shape} vs {b.shape}")
    return a, b


def mse(a, b) -> float:
    """Mean squared sample difference, computed in float64."""
    x, y = _pair(a, b)
    return float(np.mean((x - y) ** 2))


def psnr(a, b) -> float:
    """10*log10(255^2 / MSE) in dB; math.inf when the images are identical."""
    m = mse(a, b)
    if m == 0.0:
        return math.inf
    return 10.0 * math.log10(MAX_SAMPLE * MAX_SAMPLE / m)
