"""Exact counts of Frobenius-fixed irreducible local systems on curves."""

from .laurent import CurveInput, LaurentPoly, evaluate_at_curve, graeffe_power, pic_polynomial
from .counting import ATable, CSymbol, CTable, FreePoly, a_from_c, c_from_a

__all__ = [
    "ATable",
    "CSymbol",
    "CTable",
    "CurveInput",
    "FreePoly",
    "LaurentPoly",
    "a_from_c",
    "c_from_a",
    "evaluate_at_curve",
    "graeffe_power",
    "pic_polynomial",
]

__version__ = "0.1.0"
