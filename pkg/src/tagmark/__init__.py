"""tagmark: dual-layer image tagging with blockwise DCT and SVD.

Embeds a small identification mark twice into a grayscale cover image --
into mid-frequency DCT coefficients and into singular values of 8x8
blocks -- and verifies authenticity by comparing the two independently
extracted marks.
"""

from .attacks import GAUSSIAN, RANDOM_UNIFORM, SALT_PEPPER, AttackSpec, apply_attack
from .errors import (
    DimensionError,
    KeyFormatError,
    NumericInputError,
    ParameterError,
    PgmFormatError,
    TagmarkError,
)
from .imagery import (
    BLOCK,
    as_gray,
    from_blocks,
    load_pgm,
    quantize,
    read_pgm,
    save_pgm,
    to_blocks,
    write_pgm,
)
from .metrics import VerificationReport, mse, psnr
from .svd import SvdFactors, recompose, recompose_stack, svd8, svd_stack
from .transform import dct2, idct2
from .watermark import (
    DEFAULT_ALPHA,
    DEFAULT_THRESHOLD_DB,
    MID_BAND,
    EmbedParams,
    ExtractedMarks,
    SideInfoKey,
    embed,
    embed_blocks,
    extract,
    extract_blocks,
    load_key,
    parse_key,
    render_key,
    save_key,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "AttackSpec",
    "BLOCK",
    "DEFAULT_ALPHA",
    "DEFAULT_THRESHOLD_DB",
    "DimensionError",
    "EmbedParams",
    "ExtractedMarks",
    "GAUSSIAN",
    "KeyFormatError",
    "MID_BAND",
    "NumericInputError",
    "ParameterError",
    "PgmFormatError",
    "RANDOM_UNIFORM",
    "SALT_PEPPER",
    "SideInfoKey",
    "SvdFactors",
    "TagmarkError",
    "VerificationReport",
    "apply_attack",
    "as_gray",
    "dct2",
    "embed",
    "embed_blocks",
    "extract",
    "extract_blocks",
    "from_blocks",
    "idct2",
    "load_key",
    "load_pgm",
    "mse",
    "parse_key",
    "psnr",
    "quantize",
    "read_pgm",
    "recompose",
    "recompose_stack",
    "render_key",
    "save_key",
    "save_pgm",
    "svd8",
    "svd_stack",
    "to_blocks",
    "verify",
    "write_pgm",
]
