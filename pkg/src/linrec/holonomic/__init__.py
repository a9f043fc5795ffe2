"""Holonomic (P-finite) recurrences: evaluation and closure operations."""

from .ratfunc import RationalFunction
from .recurrence import (HolonomicRecurrence, to_system, multi_eval,
                         iterate_terms, stream_terms, scale_inverses, residual,
                         annihilates)
from .linalg import nullrow, symbolic_inverse, first_dependency, bareiss_det
from .closure import (closure_sum, closure_product, closure_convolution,
                      rec_to_theta, theta_to_rec, zero_recurrence,
                      is_zero_sequence)

__all__ = ["RationalFunction", "HolonomicRecurrence", "to_system", "multi_eval",
           "iterate_terms", "stream_terms", "scale_inverses", "residual",
           "annihilates", "nullrow", "symbolic_inverse", "first_dependency",
           "bareiss_det", "closure_sum", "closure_product", "closure_convolution",
           "rec_to_theta", "theta_to_rec", "zero_recurrence", "is_zero_sequence"]
