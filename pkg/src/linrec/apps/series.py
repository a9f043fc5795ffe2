"""Partial sums of power series whose coefficients are holonomic."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..algebra.polynomial import DensePolynomial
from ..companion import PolyMatrix
from ..errors import DomainError, RadiusViolated, ScaleVanishes
from ..holonomic.recurrence import HolonomicRecurrence, _reduced, scale_inverses
from ..polyrec import ITERATION_THRESHOLD, multi_apply

__all__ = ["SeriesSpec", "series_eval", "terms_for_error", "series_system"]


@dataclass(frozen=True)
class SeriesSpec:
    """Coefficients ``c_n`` given by ``recurrence``; either ``terms`` (the
    number N of summed terms) or ``eps`` with a Cauchy bound
    ``|c_n| <= M / rho^n``."""

    recurrence: HolonomicRecurrence
    terms: int | None = None
    eps: float | None = None
    M: float | None = None
    rho: float | None = None

    def __post_init__(self):
        if (self.terms is None) == (self.eps is None):
            raise ValueError("give exactly one of terms and eps")
        if self.terms is not None and self.terms < 0:
            raise ValueError("terms must be non-negative")
        if self.eps is not None:
            if not self.eps > 0:
                raise ValueError("eps must be positive")
            if self.M is None or self.rho is None or not (self.M > 0 and self.rho > 0):
                raise ValueError("an eps target needs M > 0 and rho > 0")


def terms_for_error(M, rho, absx, eps):
    """Smallest N with ``M (|x|/rho)^N / (1 - |x|/rho) <= eps``."""
    r = absx / rho
    if r >= 1:
        raise RadiusViolated(f"|x| = {absx} is not inside the radius {rho}")
    if r == 0:
        return 1
    tail = lambda N: M * r ** N / (1 - r)
    N = max(0, math.ceil(math.log(eps * (1 - r) / M) / math.log(r)))
    while N > 0 and tail(N - 1) <= eps:
        N -= 1
    while tail(N) > eps:
        N += 1
    return N


def series_system(rec, x):
    """Matrix ``B(n)`` acting on ``(S_n, u_{n+k-1}, ..., u_n)`` scaled by
    ``a_0``, where ``u_n = c_n x^n`` and ``S_n = u_0 + ... + u_{n-1}``."""
    dom, k = rec.domain, rec.k
    a = [list(c.coeffs) for c in rec.coeffs]
    zero = DensePolynomial(dom, [])
    a0 = DensePolynomial(dom, a[0])
    rows = [[a0] + [zero] * (k - 1) + [a0]]
    xp = dom.one
    top = [zero]
    for i in range(1, k + 1):
        xp = dom.mul(xp, x)
        top.append(DensePolynomial(dom, dom.vscale(dom.neg(xp), a[i])))
    rows.append(top)
    for i in range(1, k):
        row = [zero] * (k + 1)
        row[i] = a0
        rows.append(row)
    return PolyMatrix(dom, rows)


def series_eval(spec, x, threshold=ITERATION_THRESHOLD):
    """``(sum_{n<N} c_n x^n, N)``."""
    rec = _reduced(spec.recurrence)
    dom = rec.domain
    x = dom(x)
    if spec.terms is not None:
        N = spec.terms
    else:
        if dom.characteristic != 0:
            raise DomainError("an error target needs a real coefficient domain")
        N = terms_for_error(spec.M, spec.rho, abs(float(x)), spec.eps)
    k, off = rec.k, rec.offset
    if N <= off + k:
        u, xp = [], dom.one
        for c in rec.initial[:N]:
            u.append(dom.mul(c, xp))
            xp = dom.mul(xp, x)
        return _sum(dom, u), N
    if not dom.exact and rec.coeffs[0].degree > 0:
        return _float_sum(rec, x, N), N
    u, xp = [], dom.one
    for c in rec.initial:
        u.append(dom.mul(c, xp))
        xp = dom.mul(xp, x)
    W0 = [_sum(dom, u[:off])] + u[off:][::-1]
    t = N - off
    B = series_system(rec, x).shifted(off - 1)
    mode = "general" if dom.exact else "vector"
    W = multi_apply(B, W0, [t], mode=mode, threshold=threshold)[0]
    inv = scale_inverses(rec, [t], threshold)[0]
    return dom.mul(W[0], inv), N


def _sum(dom, xs):
    acc = dom.zero
    for v in xs:
        acc = dom.add(acc, v)
    return acc


def _float_sum(rec, x, N):
    """Plain summation with one division per term; the deferred scale of
    the exact path would overflow in floating point."""
    dom, k = rec.domain, rec.k
    c = list(rec.initial)
    acc, xp = dom.zero, dom.one
    for n in range(N):
        if n >= len(c):
            m = n - k
            vals = rec.relation_at(m)
            if dom.is_zero(vals[0]):
                raise ScaleVanishes(m)
            s = dom.dot(vals[1:], c[-1:-k - 1:-1])
            c.append(dom.neg(dom.div(s, vals[0])))
            c.pop(0)
            term = c[-1]
        else:
            term = c[n]
        acc = dom.add(acc, dom.mul(term, xp))
        xp = dom.mul(xp, x)
    return acc
