"""Periodic points, Mahler measure, unitary varieties and homoclinic kernels."""

from ._algdyn import (
    CrossCheckError,
    InputError,
    PrecisionError,
    RegimeError,
    entropy,
    fft_kernel,
    g3_convolution_exact,
    harmonic_value,
    multiplier_diagnostic,
    normalize,
    pcount,
    periodic_approx,
    run_cli,
    shell_sums,
    snf_count,
    symbolic_cover,
    unitary,
    verify_point,
)

__all__ = [
    "CrossCheckError",
    "InputError",
    "PrecisionError",
    "RegimeError",
    "entropy",
    "fft_kernel",
    "g3_convolution_exact",
    "harmonic_value",
    "multiplier_diagnostic",
    "normalize",
    "pcount",
    "periodic_approx",
    "run_cli",
    "shell_sums",
    "snf_count",
    "symbolic_cover",
    "unitary",
    "verify_point",
]
