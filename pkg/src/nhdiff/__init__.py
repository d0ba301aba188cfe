"""Differential analysis of the Ness-Helleseth family over F_q, q = 3 (mod 4)."""

from .field import FieldCtx, FieldElement, make_field, parse_element
from .nh import (
    NHParams,
    apn_predicate,
    classify_u,
    f_eval,
    f_table,
    solve_derivative,
    spectrum_formula,
    uniformity_formula,
)
from .oracle import Spectrum, differ, spectrum_oracle, uniformity_oracle

__version__ = "0.1.0"

__all__ = [
    "FieldCtx", "FieldElement", "make_field", "parse_element",
    "NHParams", "apn_predicate", "classify_u", "f_eval", "f_table",
    "solve_derivative", "spectrum_formula", "uniformity_formula",
    "Spectrum", "differ", "spectrum_oracle", "uniformity_oracle",
]
