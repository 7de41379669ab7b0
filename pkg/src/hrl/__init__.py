"""Reality of the zeros of polynomials from a three-term recurrence."""

from .criterion import full_verdict, hyperbolicity_sweep, support_intervals
from .errors import ConvergenceError, HRLError, InvalidInput, ParseError, ValidationError
from .numeric import RootConfig, all_complex_roots, max_imag_deviation
from .parse import parse_poly
from .poly import RatPoly, render
from .recurrence import RecurrencePair, RecurrenceSpec, generate_sequence
from .spectral import levels, zeros_via_levels

__all__ = [
    "ConvergenceError", "HRLError", "InvalidInput", "ParseError", "RatPoly", "RecurrencePair",
    "RecurrenceSpec", "RootConfig", "ValidationError", "all_complex_roots", "full_verdict",
    "generate_sequence", "hyperbolicity_sweep", "levels", "max_imag_deviation", "parse_poly",
    "render", "support_intervals", "zeros_via_levels",
]
