"""Truncated power-series operations: reversal, truncation, Newton inversion,
modular powering."""

from __future__ import annotations

from ..errors import ConstantTermNotInvertible, NotMonic
from .polynomial import (DensePolynomial, mul_lists, trim, divmod_monic,
                         ntt_cyclic, ntt_supported, SCHOOLBOOK_THRESHOLD)

__all__ = [
    "rev", "trunc_high", "shift_low", "newton_inverse", "newton_inverse_lists",
    "powmod", "powmod_x", "fast_divmod_monic", "mulmod_x",
]

FAST_DIVISION_THRESHOLD = 64


def rev(p, N):
    """``sum a_n X^n  ->  sum a_{N-n} X^n``; requires ``N >= deg p``."""
    if N < p.degree:
        raise ValueError(f"N={N} is below deg(p)={p.degree}")
    z = p.domain.zero
    c = list(p.coeffs) + [z] * (N + 1 - len(p.coeffs))
    return DensePolynomial._raw(p.domain, c[::-1])


def trunc_high(p, ell):
    """Keep the terms of index ``< ell``."""
    return DensePolynomial._raw(p.domain, list(p.coeffs[:max(ell, 0)]))


def shift_low(p, ell):
    """Drop the ``ell`` lowest terms and shift down."""
    return DensePolynomial._raw(p.domain, list(p.coeffs[max(ell, 0):]))


def newton_inverse_lists(dom, p, n):
    """Coefficients of ``1/p mod X^n`` by the doubling Newton iteration."""
    if n <= 0:
        return []
    if not p or not dom.is_unit(p[0]):
        raise ConstantTermNotInvertible("p(0) is not invertible")
    q = [dom.inv(p[0])]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        # q <- q + q*(1 - p*q)  (mod X^prec)
        e = mul_lists(dom, list(p[:prec]), q)[:prec]
        e = dom.vneg(e)
        e[0] = dom._add(e[0], dom.one)
        corr = mul_lists(dom, q, e)[:prec]
        q = q + [dom.zero] * (prec - len(q))
        q = dom.vadd(q, corr + [dom.zero] * (prec - len(corr)))
    return q[:n]


def newton_inverse(p, n):
    """Polynomial ``q`` with ``p*q == 1 mod X^n``."""
    dom = p.domain
    return DensePolynomial._raw(dom, newton_inverse_lists(dom, list(p.coeffs), n))


class _Divisor:
    """Monic divisor with a cached reversed inverse for fast reduction."""

    def __init__(self, dom, f):
        if not f or f[-1] != dom.one:
            raise NotMonic("modulus polynomial must be monic")
        self.dom = dom
        self.f = list(f)
        self.k = len(f) - 1
        self._inv = None
        self._inv_len = 0

    def reduce(self, a):
        dom, k = self.dom, self.k
        if len(a) <= k:
            return trim(dom, list(a))
        if k < FAST_DIVISION_THRESHOLD:
            return divmod_monic(dom, a, self.f)[1]
        return fast_divmod_monic(dom, a, self.f, self)[1]

    def inverse_of_rev(self, length):
        if self._inv_len < length:
            rf = self.f[::-1]
            self._inv = newton_inverse_lists(self.dom, rf, max(length, 2 * self._inv_len))
            self._inv_len = len(self._inv)
        return self._inv[:length]


def fast_divmod_monic(dom, a, f, cache=None):
    """Division by a monic ``f`` via one power-series inversion."""
    k = len(f) - 1
    a = trim(dom, list(a))
    if len(a) <= k:
        return [], a
    m = len(a) - k  # number of quotient coefficients
    if cache is None:
        inv = newton_inverse_lists(dom, f[::-1], m)
    else:
        inv = cache.inverse_of_rev(m)
    rq = mul_lists(dom, a[::-1][:m], inv)[:m]
    rq = rq + [dom.zero] * (m - len(rq))
    q = rq[::-1]
    qf = _low_product_known_high(dom, q, f, a, k)
    r = dom.vsub(a[:k], qf)
    return trim(dom, q), trim(dom, r)


def _fold(dom, a, S):
    if len(a) <= S:
        return list(a)
    out = list(a[:S])
    for i in range(S, len(a)):
        out[i % S] = dom._add(out[i % S], a[i])
    dom.counter.tally(adds=len(a) - S)
    return out


def _low_product_known_high(dom, q, f, a, k):
    """``(q*f mod X^k)`` when every coefficient of ``q*f`` from index k on
    equals the matching coefficient of ``a``: a cyclic product of size about
    k suffices, the wrapped part is subtracted using ``a``."""
    full = len(q) + len(f) - 1
    S = 1
    while S < k:
        S <<= 1
    if (S >= SCHOOLBOOK_THRESHOLD and ntt_supported(dom, S)
            and S < _pow2(full)):
        c = ntt_cyclic(dom, _fold(dom, q, S), _fold(dom, f, S), S)
        out = c[:k]
        for i in range(k):
            j = i + S
            while j < full:
                out[i] = dom._sub(out[i], a[j] if j < len(a) else dom.zero)
                j += S
        dom.counter.tally(adds=max(full - S, 0))
        return out
    qf = mul_lists(dom, q, f)[:k]
    return qf + [dom.zero] * (k - len(qf))


def _pow2(n):
    S = 1
    while S < n:
        S <<= 1
    return S


def mulmod_x(dom, r, f):
    """``r*X mod f`` for monic ``f`` of degree k and ``deg r < k``: O(k)."""
    k = len(f) - 1
    r = list(r) + [dom.zero] * (k - len(r))
    top = r[-1]
    shifted = [dom.zero] + r[:-1]
    if dom.is_zero(top):
        return trim(dom, shifted)
    return trim(dom, dom.vsub(shifted, dom.vscale(top, f[:k])))


def powmod_x(dom, n, f):
    """Coefficients of ``X^n mod f``; exponents below deg f cost nothing."""
    div = _Divisor(dom, f)
    k = div.k
    if k == 0:
        return []
    bits = bin(n)[2:] if n > 0 else ""
    e, r, i = 0, None, 0
    # consume leading bits while the exponent stays below k
    while i < len(bits) and 2 * e + int(bits[i]) < k:
        e = 2 * e + int(bits[i])
        i += 1
    r = [dom.zero] * e + [dom.one]
    for bit in bits[i:]:
        r = div.reduce(mul_lists(dom, r, r))
        if bit == "1":
            r = mulmod_x(dom, r, div.f)
    return trim(dom, r)


def powmod(base, n, f):
    """``base^n mod f`` by repeated squaring with reduction after each product."""
    dom = base.domain
    dom.check_same(f.domain)
    fl = list(f.coeffs)
    if not fl or fl[-1] != dom.one or len(fl) < 2:
        raise NotMonic("f must be monic of degree >= 1")
    if n < 0:
        raise ValueError("negative exponent")
    if list(base.coeffs) == [dom.zero, dom.one]:
        return DensePolynomial._raw(dom, powmod_x(dom, n, fl))
    div = _Divisor(dom, fl)
    b = div.reduce(list(base.coeffs))
    if n == 0:
        return DensePolynomial._raw(dom, div.reduce([dom.one]))
    r = list(b)
    for bit in bin(n)[3:]:
        r = div.reduce(mul_lists(dom, r, r))
        if bit == "1":
            r = div.reduce(mul_lists(dom, r, b))
    return DensePolynomial._raw(dom, r)
