"""Seeded noise channels: gaussian, salt-and-pepper, and sparse uniform.

Every attack is a pure function of (image, spec). Randomness comes from a
fixed, documented generator rather than a platform default:

* word ``i`` of the stream for a given seed is the SplitMix64 finalizer
  applied to ``seed + (i + 1) * 0x9E3779B97F4A7C15`` (all mod 2**64);
* a word becomes a double in [0, 1) from its top 53 bits;
* pixel ``k`` (row-major) consumes exactly words ``2k`` and ``2k + 1``,
  so per-pixel noise is index-derived and any parallel schedule
  reproduces the sequential output bit for bit;
* gaussian deviates use the Box-Muller transform
  ``sigma * sqrt(-2 ln(1 - u1)) * cos(2 pi u2)``.

Additive attacks round half-away-from-zero and clamp to [0, 255], the same
materialization policy used everywhere else in the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .imagery import as_gray, quantize

GAUSSIAN = "gaussian"
SALT_PEPPER = "salt_pepper"
RANDOM_UNIFORM = "random_uniform"
KINDS = (GAUSSIAN, SALT_PEPPER, RANDOM_UNIFORM)

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class AttackSpec:
    """Noise channel description.

    sigma applies to ``gaussian`` (standard deviation in luminance units),
    density to ``salt_pepper`` and ``random_uniform`` (fraction of pixels
    hit), amplitude to ``random_uniform`` (uniform deviate range in
    luminance units). The seed is reduced mod 2**64.
    """

    kind: str
    sigma: float = 0.0
    density: float = 0.0
    amplitude: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown attack kind {self.kind!r}; expected one of {KINDS}")
        if not 0.0 <= self.density <= 1.0:
            raise ParameterError(f"density must be in [0, 1], got {self.density}")
        if self.sigma < 0.0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}")
        if self.amplitude < 0.0:
            raise ParameterError(f"amplitude must be >= 0, got {self.amplitude}")


def _stream_words(seed: int, indices: np.ndarray) -> np.ndarray:
    """SplitMix64 output words at the given stream indices (vectorized)."""
    x = (indices.astype(np.uint64) + np.uint64(1)) * _GAMMA
    x = x + np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    x = (x ^ (x >> np.uint64(30))) * _MIX1
    x = (x ^ (x >> np.uint64(27))) * _MIX2
    return x ^ (x >> np.uint64(31))


def _unit_doubles(words: np.ndarray) -> np.ndarray:
    # top 53 bits -> [0, 1)
    return (words >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def _pixel_uniforms(seed: int, npixels: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(npixels, dtype=np.uint64)
    two = np.uint64(2)
    one = np.uint64(1)
    u1 = _unit_doubles(_stream_words(seed, k * two))
    u2 = _unit_doubles(_stream_words(seed, k * two + one))
    return u1, u2


def apply_attack(img, spec: AttackSpec) -> np.ndarray:
    """Apply the noise channel to an image; deterministic in (img, spec)."""
    a = as_gray(img)
    h, w = a.shape
    u1, u2 = _pixel_uniforms(spec.seed, h * w)
    u1 = u1.reshape(h, w)
    u2 = u2.reshape(h, w)
    samples = a.astype(np.float64)

    if spec.kind == GAUSSIAN:
        radius = np.sqrt(-2.0 * np.log1p(-u1))
        noise = spec.sigma * radius * np.cos(2.0 * np.pi * u2)
        return quantize(samples + noise)
    if spec.kind == SALT_PEPPER:
        extreme = np.where(u2 < 0.5, 0, 255).astype(np.uint8)
        return np.where(u1 < spec.density, extreme, a)
    # sparse additive uniform noise in [-amplitude, +amplitude]
    deviate = (2.0 * u2 - 1.0) * spec.amplitude
    noise = np.where(u1 < spec.density, deviate, 0.0)
    return quantize(samples + noise)
