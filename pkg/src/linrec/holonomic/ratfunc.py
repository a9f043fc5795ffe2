"""Rational functions in one variable over an exact field."""

from __future__ import annotations

from ..algebra.polynomial import DensePolynomial, trim
from .polyops import (padd, peval, pexact_div, pgcd, pmul, pscale,
                      pshift, psub, pderiv)

__all__ = ["RationalFunction"]


class RationalFunction:
    """``num / den`` with the gcd removed and a monic denominator."""

    __slots__ = ("domain", "num", "den")

    def __init__(self, domain, num, den=None, reduce=True):
        self.domain = domain
        num = _coeffs(domain, num)
        den = [domain.one] if den is None else _coeffs(domain, den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = [domain.one]
        elif reduce and len(den) > 1:
            g = pgcd(domain, num, den)
            if len(g) > 1:
                num = pexact_div(domain, num, g)
                den = pexact_div(domain, den, g)
        if den[-1] != domain.one:
            inv = domain.inv(den[-1])
            num, den = pscale(domain, inv, num), pscale(domain, inv, den)
        self.num, self.den = num, den

    @classmethod
    def zero(cls, domain):
        return cls(domain, [])

    @classmethod
    def one(cls, domain):
        return cls(domain, [domain.one])

    def is_zero(self):
        return not self.num

    @property
    def numerator(self):
        return DensePolynomial._raw(self.domain, list(self.num))

    @property
    def denominator(self):
        return DensePolynomial._raw(self.domain, list(self.den))

    def _other(self, other):
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(self.domain, other)

    def __add__(self, other):
        o, dom = self._other(other), self.domain
        if self.den == o.den:
            return RationalFunction(dom, padd(dom, self.num, o.num), self.den)
        return RationalFunction(dom, padd(dom, pmul(dom, self.num, o.den),
                                          pmul(dom, o.num, self.den)),
                                pmul(dom, self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        dom = self.domain
        return RationalFunction(dom, dom.vneg(self.num), self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __mul__(self, other):
        o, dom = self._other(other), self.domain
        if self.is_zero() or o.is_zero():
            return RationalFunction.zero(dom)
        return RationalFunction(dom, pmul(dom, self.num, o.num),
                                pmul(dom, self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o, dom = self._other(other), self.domain
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(dom, pmul(dom, self.num, o.den),
                                pmul(dom, self.den, o.num))

    def shift(self, s):
        """``f(N + s)``."""
        dom = self.domain
        return RationalFunction(dom, pshift(dom, self.num, s),
                                pshift(dom, self.den, s), reduce=False)

    def derivative(self):
        dom = self.domain
        num = psub(dom, pmul(dom, pderiv(dom, self.num), self.den),
                   pmul(dom, self.num, pderiv(dom, self.den)))
        return RationalFunction(dom, num, pmul(dom, self.den, self.den))

    def __call__(self, x):
        dom = self.domain
        x = dom(x)
        return dom.div(peval(dom, self.num, x), peval(dom, self.den, x))

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(self.domain, other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def __repr__(self):
        return f"RationalFunction({self.num} / {self.den})"


def _coeffs(dom, p):
    if isinstance(p, DensePolynomial):
        return list(p.coeffs)
    if isinstance(p, (list, tuple)):
        return trim(dom, [dom(c) for c in p])
    return trim(dom, [dom(p)])
