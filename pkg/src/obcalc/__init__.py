"""Exact computations for open books on the punctured torus and their contact invariants."""

from __future__ import annotations

from .certify import Certificate, theorem_report, verify_certificate
from .contact import ContactSurgeryDiagram, LegendrianUnknot, d3, figure3_diagram, openbook_to_handles
from .exactlinalg import IntMatrix, determinant, signature, smith_normal_form, solve_rational
from .seifert import SeifertInvariants, classify_three_binding, ym_seifert
from .words import CurveClass, TwistWord, factored_phi, garside_normal_form, parse_word, phi_family, words_equal

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ContactSurgeryDiagram",
    "CurveClass",
    "IntMatrix",
    "LegendrianUnknot",
    "SeifertInvariants",
    "TwistWord",
    "classify_three_binding",
    "d3",
    "determinant",
    "factored_phi",
    "figure3_diagram",
    "garside_normal_form",
    "openbook_to_handles",
    "parse_word",
    "phi_family",
    "signature",
    "smith_normal_form",
    "solve_rational",
    "theorem_report",
    "verify_certificate",
    "words_equal",
    "ym_seifert",
]
