"""Applications: factorials, orthogonal polynomials, series, partial
polynomial arithmetic."""

from .factorial import multi_factorial
from .orthogonal import OrthogonalFamily, FAMILIES, family, ortho_eval, ortho_recurrence
from .series import SeriesSpec, series_eval, terms_for_error
from .partial import (power_top_coeffs, inverse_top_coeffs, power_coeffs_at,
                      inverse_coeff_range, mixed_coeffs, power_recurrence,
                      inverse_recurrence, INVERSE)

__all__ = ["multi_factorial", "OrthogonalFamily", "FAMILIES", "family",
           "ortho_eval", "ortho_recurrence", "SeriesSpec", "series_eval",
           "terms_for_error", "power_top_coeffs", "inverse_top_coeffs",
           "power_coeffs_at", "inverse_coeff_range", "mixed_coeffs",
           "power_recurrence", "inverse_recurrence", "INVERSE"]
