"""Spherical Schwartz functions and Fourier transform on [P,P]\\Sp_2n."""

from .exact_algebra import MellinSymbol, ScalarQV, parse_expression
from .schwartz_nonarch import CoefficientFunction, basic_function, fourier, indicator
from .weyl_lfactors import WeylCosetDatum, a_w, c_w, d_factor

__all__ = [
    "CoefficientFunction", "MellinSymbol", "ScalarQV", "WeylCosetDatum",
    "a_w", "basic_function", "c_w", "d_factor", "fourier", "indicator", "parse_expression",
]
