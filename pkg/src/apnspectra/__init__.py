"""Fourier spectra of quadratic APN families over GF(2^n)."""

from .boolfn import Family, FamilyParams, TruthTable, build, differential_uniformity, evaluate, is_apn
from .gf2n import FieldSpec, make_field
from .walsh import SpectrumHistogram, full_spectrum, nonlinearity, spectrum_values

__all__ = [
    "Family",
    "FamilyParams",
    "FieldSpec",
    "SpectrumHistogram",
    "TruthTable",
    "build",
    "differential_uniformity",
    "evaluate",
    "full_spectrum",
    "is_apn",
    "make_field",
    "nonlinearity",
    "spectrum_values",
]
