"""Relative class numbers h^- of imaginary abelian fields of prime conductor,
Dedekind-sum mean squares, and numerical checks of the accompanying bounds."""

from .bounded import BoundedValue, VerificationReport, Verdict
from .classnumber import FieldSpec, relative_class_number_exact, relative_class_number_float
from .dedekind import N_value, dedekind_sum, mean_square_M

__all__ = [
    "BoundedValue",
    "FieldSpec",
    "N_value",
    "VerificationReport",
    "Verdict",
    "dedekind_sum",
    "mean_square_M",
    "relative_class_number_exact",
    "relative_class_number_float",
]

__version__ = "0.1.0"
