"""Selected coefficients of p^m and 1/p without expanding them."""

from linrec.algebra import DensePolynomial, PrimeField, Rationals
from linrec.apps import INVERSE, inverse_coeff_range, mixed_coeffs, power_coeffs_at, power_top_coeffs

Q = Rationals()
F = PrimeField(1000000007)

p = DensePolynomial(F, [1, 1, 1])
print("central trinomial coefficient of (1+X+X^2)^10^6 mod p:",
      power_coeffs_at(p, 10 ** 6, [10 ** 6])[0])
print("top coefficients of (1+X)^1000:", power_top_coeffs(DensePolynomial(Q, [1, 1]), 1000, 3))
print("Fibonacci 10^5 and 10^5+1 mod p:",
      inverse_coeff_range(DensePolynomial(F, [1, -1, -1]), 10 ** 5 - 1, 2))
print("[X^0..X^5] (1+X)^3 / (1-2X):", mixed_coeffs([1, 1], 3, [1, -2], INVERSE, range(6), Q))
