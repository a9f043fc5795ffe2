"""Coefficient domains and dense polynomial arithmetic."""

from .domains import (OpCountReport, OpCounter, Domain, PrimeField, Rationals,
                      Float64, char_at_least, require_char, is_probable_prime,
                      domain_from_descriptor)
from .polynomial import (DensePolynomial, poly_mul, mul_lists, schoolbook,
                         karatsuba, ntt_mul, trim, horner)
from .series import (rev, trunc_high, shift_low, newton_inverse, powmod,
                     newton_inverse_lists)
from .newton import (to_newton, from_newton, eval_progression,
                     interp_progression)

__all__ = [
    "OpCountReport", "OpCounter", "Domain", "PrimeField", "Rationals",
    "Float64", "char_at_least", "require_char", "is_probable_prime",
    "domain_from_descriptor", "DensePolynomial", "poly_mul", "mul_lists",
    "schoolbook", "karatsuba", "ntt_mul", "trim", "horner", "rev",
    "trunc_high", "shift_low", "newton_inverse", "newton_inverse_lists",
    "powmod", "to_newton", "from_newton", "eval_progression",
    "interp_progression",
]
