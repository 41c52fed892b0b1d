"""Computational toolkit for the genus-2 Goeritz group."""
from .classify import Verdict, classify, scan_subgroup
from .freegroup import F2Word, is_primitive, reduce
from .group import NormalForm, is_conjugate, normal_form, parse
from .recognize import recognize
from .slopes import Monodromy, Slope, SL2Matrix, vertical_primitive_scan

__all__ = [
    "F2Word",
    "Monodromy",
    "NormalForm",
    "SL2Matrix",
    "Slope",
    "Verdict",
    "classify",
    "is_conjugate",
    "is_primitive",
    "normal_form",
    "parse",
    "recognize",
    "reduce",
    "scan_subgroup",
    "vertical_primitive_scan",
]
