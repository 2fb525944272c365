"""RKHS edge-preserving image denoising.

Images are 2-D float arrays of shape (height, width) with intensities in
[0, 255]; inputs outside that range are clamped.
"""

from ._core import (
    ConfigError,
    EngineConfig,
    PgmParseError,
    PgmUnsupportedError,
    add_gaussian_noise,
    add_impulse_noise,
    add_mixed_noise,
    decode_pgm,
    denoise,
    design_matrix,
    encode_pgm,
    erf,
    gaussian_kernel,
    gram_matrix,
    mse,
    psnr,
    read_pgm,
    solve_patch,
    write_pgm,
)

__all__ = [
    "ConfigError",
    "EngineConfig",
    "PgmParseError",
    "PgmUnsupportedError",
    "add_gaussian_noise",
    "add_impulse_noise",
    "add_mixed_noise",
    "decode_pgm",
    "denoise",
    "design_matrix",
    "encode_pgm",
    "erf",
    "gaussian_kernel",
    "gram_matrix",
    "mse",
    "psnr",
    "read_pgm",
    "solve_patch",
    "write_pgm",
]
