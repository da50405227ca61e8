"""Exact computations for the x^- algebra of quantum affine sl(2).

The package covers the coefficient ring, PBW normal forms, the Omega
operators, words in the Kashiwara algebra, the invariant bilinear form and
the level-zero reduced imaginary Verma module.
"""
from .form import gram, gram_rank_report, pair
from .kashiwara import KElement, alpha_bar, k_act
from .nqminus import Element, Weight, basis_enum, multiply, normal_form, weight_of, x
from .omega import omega_phi, omega_psi
from .parse import DomainError, ParseError, parse_element, parse_word
from .scalar import Scalar, TruncatedSeries, check_identity_18, g_coeff, q_integer, series_exp
from .verma import VermaVector, act_a, act_phi, act_psi, act_xplus, lemma62_scan, psi_expansion_oracle, singular_probe

__version__ = "0.1.0"

__all__ = [
    "Element", "KElement", "Scalar", "TruncatedSeries", "VermaVector", "Weight",
    "act_a", "act_phi", "act_psi", "act_xplus", "alpha_bar", "basis_enum", "check_identity_18",
    "DomainError", "g_coeff", "gram", "gram_rank_report", "k_act", "lemma62_scan", "multiply",
    "normal_form", "omega_phi", "omega_psi", "pair", "parse_element", "parse_word", "ParseError",
    "psi_expansion_oracle", "q_integer", "series_exp", "singular_probe", "weight_of", "x",
]
