"""q-Euler number and polynomial families: closed forms, series, identities."""
from .closed_forms import (
    classical_limit,
    closed_form,
    closed_form_variants,
    euler_barnes,
    euler_barnes_twisted,
    euler_chi,
    euler_chi_barnes_twisted,
    euler_chi_distribution,
    euler_chi_order,
    euler_q,
    euler_q_hr,
    euler_q_order,
)
from .identities import distribution_residual_chi, distribution_residual_hr, recurrence_residual
from .limits import classical_euler_polynomial, extrapolate_to_zero
from .series import euler_q_hr_series, series_partial, series_value
from .spec import KINDS, Evaluation, FamilySpec

__all__ = [
    "KINDS", "Evaluation", "FamilySpec",
    "euler_q", "euler_q_order", "euler_q_hr", "euler_barnes", "euler_barnes_twisted",
    "euler_chi", "euler_chi_distribution", "euler_chi_order", "euler_chi_barnes_twisted",
    "closed_form", "closed_form_variants", "classical_limit",
    "distribution_residual_chi", "distribution_residual_hr", "recurrence_residual",
    "series_value", "series_partial", "euler_q_hr_series",
    "classical_euler_polynomial", "extrapolate_to_zero",
]
