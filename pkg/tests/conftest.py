import numpy as np
import pytest

from tagmark import EmbedParams, embed


def synthetic_cover(size=256):
    """Deterministic mid-range cover: mixed sinusoids, no values near 0/255."""
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    values = (
        128.0
        + 60.0 * np.sin(2 * np.pi * x / 97.0) * np.cos(2 * np.pi * y / 61.0)
        + 30.0 * np.sin(2 * np.pi * (x + y) / 149.0)
    )
    return np.clip(np.round(values), 0, 255).astype(np.uint8)


def checker_mark(rows=32, cols=32, cell=4):
    """Binary mark, half white: checkerboard of `cell`-pixel squares."""
    y, x = np.mgrid[0:rows, 0:cols]
    return ((y // cell + x // cell) % 2 * 255).astype(np.uint8)


@pytest.fixture(scope="session")
def cover256():
    return synthetic_cover(256)


@pytest.fixture(scope="session")
def mark32():
    return checker_mark(32, 32)


@pytest.fixture(scope="session")
def embedded(cover256, mark32):
    """(watermarked, key) for the default alpha on the standard fixture."""
    return embed(cover256, mark32, EmbedParams(alpha=0.05))
