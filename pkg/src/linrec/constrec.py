"""Linear recurrences with constant coefficients.

``P_n = a_1 P_{n-1} + ... + a_k P_{n-k}`` with initial values
``P_0, ..., P_{k-1}``.  Single terms come from ``X^n mod f`` for the
characteristic polynomial ``f``; many scattered terms come from batched
products with the binary powers of the companion matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.matrices import mat_mul, transpose
from .algebra.polynomial import DensePolynomial
from .algebra.series import powmod_x, mulmod_x
from .companion import CompanionMatrix

__all__ = ["ConstRecurrence", "nth_term", "consecutive_terms", "multi_terms",
           "iterate_terms"]


@dataclass(frozen=True)
class ConstRecurrence:
    domain: object
    coeffs: tuple    # a_1, ..., a_k
    initial: tuple   # P_0, ..., P_{k-1}

    def __init__(self, domain, coeffs, initial):
        coeffs = tuple(domain(a) for a in coeffs)
        initial = tuple(domain(x) for x in initial)
        if not coeffs:
            raise ValueError("depth k must be at least 1")
        if len(initial) != len(coeffs):
            raise ValueError(f"need exactly {len(coeffs)} initial values, "
                             f"got {len(initial)}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "initial", initial)

    @property
    def k(self):
        return len(self.coeffs)

    def charpoly(self):
        """``X^k - (a_1 X^{k-1} + ... + a_k)`` as a monic polynomial."""
        dom = self.domain
        c = [dom._neg(a) for a in reversed(self.coeffs)] + [dom.one]
        return DensePolynomial._raw(dom, c)

    def companion(self):
        return CompanionMatrix(self.domain, list(self.coeffs))


def iterate_terms(rec, count):
    """``P_0 .. P_{count-1}`` by plain iteration (the reference oracle)."""
    dom, k = rec.domain, rec.k
    out = list(rec.initial[:count])
    rev = list(reversed(rec.coeffs))
    while len(out) < count:
        out.append(dom.dot(rev, out[-k:]))
    return out


def _check_index(n):
    if n < 0:
        raise ValueError(f"negative index {n}")


def nth_term(rec, n):
    """``P_n`` as the scalar product of the initial values with ``X^n mod f``."""
    _check_index(n)
    if n < rec.k:
        return rec.initial[n]
    dom = rec.domain
    r = powmod_x(dom, n, list(rec.charpoly().coeffs))
    return dom.dot(r, list(rec.initial[:len(r)]))


def consecutive_terms(rec, n, ell):
    """``P_n, ..., P_{n+ell-1}``: one modular power, then O(k) per step."""
    _check_index(n)
    if ell < 1:
        raise ValueError("ell must be positive")
    dom = rec.domain
    f = list(rec.charpoly().coeffs)
    r = powmod_x(dom, n, f)
    init = list(rec.initial)
    out = []
    for _ in range(ell):
        out.append(dom.dot(r, init[:len(r)]) if r else dom.zero)
        r = mulmod_x(dom, r, f)
    return out


def multi_terms(rec, indices):
    """``P_{n_1}, ..., P_{n_l}`` for ascending indices.

    Bits are consumed least significant first.  After phase j the partial
    state of index n is ``A^(n mod 2^(j+1)) V_0``; indices sharing those low
    bits share one state, and every phase multiplies all states that need
    ``A^(2^j)`` as one k x batch matrix product.
    """
    indices = list(indices)
    if any(i < 0 for i in indices):
        raise ValueError("indices must be non-negative")
    if any(b < a for a, b in zip(indices, indices[1:])):
        raise ValueError("indices must be sorted ascending")
    if not indices:
        return []
    dom = rec.domain
    top = max(indices)
    if top <= rec.k * len(indices):
        # dense targets: k multiplications per step beat the doubling phases
        seq = iterate_terms(rec, top + 1)
        return [seq[n] for n in indices]
    v0 = list(reversed(rec.initial))   # (P_{k-1}, ..., P_0)
    states = {0: v0}
    power = rec.companion().dense()
    j = 0
    while (1 << j) <= top:
        mask = (1 << (j + 1)) - 1
        bit = 1 << j
        wanted = sorted({n & mask for n in indices})
        movers = [v for v in wanted if v & bit]
        new_states = {v: states[v] for v in wanted if not v & bit}
        if movers:
            cols = [states[v ^ bit] for v in movers]
            prod = mat_mul(dom, power, transpose(cols))
            for v, col in zip(movers, transpose(prod)):
                new_states[v] = list(col)
        states = new_states
        j += 1
        if (1 << j) <= top:
            power = mat_mul(dom, power, power)
    return [states[n][-1] for n in indices]
