"""Sharp constants, optimal profiles, linearized spectra and symmetry-breaking
regions for weighted Hardy, logarithmic Hardy and Caffarelli-Kohn-Nirenberg
interpolation inequalities, with independent numerical verification on the
cylinder R x S^{d-1}.
"""
from .constants import Params, Mode, Region
from .errors import (
    AccuracyError,
    CylHardyError,
    DegenerateInputError,
    DomainError,
    DomainTooSmallError,
    NoExtremalError,
    ResolutionError,
    SpectrumError,
)

__version__ = "0.1.0"

__all__ = [
    "Params", "Mode", "Region",
    "AccuracyError", "CylHardyError", "DegenerateInputError", "DomainError",
    "DomainTooSmallError", "NoExtremalError", "ResolutionError", "SpectrumError",
]
