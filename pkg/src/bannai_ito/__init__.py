"""Exact-arithmetic Bannai-Ito polynomials built from a Dunkl shift operator."""
from .bipoly import (
    RecurrenceTable,
    coeff_A,
    coeff_C,
    expansion_coeffs,
    generate_P,
    hypergeometric_form,
    recurrence_coeffs,
    truncation_even,
    truncation_odd,
)
from .cbi import cbi_table, christoffel, wilson_4F3
from .certificate import full_certificate
from .dunklop import BIParams, apply_L, lambda_n, verify_algebra
from .errors import ExactDivisionError, InvariantError, NearSingularError, ParameterError, PoleError
from .limits import aw_to_bi_limit, aw_to_cbi_limit, contraction_sweep
from .numcore import GaussRat, format_rat, parse_rat, pochhammer
from .polyring import Poly, RationalFunction, phi_basis
from .report import VerificationReport
from .spectra import bi_grid, exact_weights, node_grid

__all__ = [
    "BIParams", "Poly", "RationalFunction", "GaussRat", "RecurrenceTable", "VerificationReport",
    "ExactDivisionError", "InvariantError", "NearSingularError", "ParameterError", "PoleError",
    "apply_L", "lambda_n", "verify_algebra", "coeff_A", "coeff_C", "recurrence_coeffs", "generate_P",
    "expansion_coeffs", "hypergeometric_form", "truncation_even", "truncation_odd",
    "christoffel", "cbi_table", "wilson_4F3", "bi_grid", "node_grid", "exact_weights",
    "aw_to_bi_limit", "aw_to_cbi_limit", "contraction_sweep", "full_certificate",
    "parse_rat", "format_rat", "pochhammer", "phi_basis",
]
