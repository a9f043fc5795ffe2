"""Sums, products and convolutions of holonomic sequences.

Sum and product: the shifts ``R_n, R_{n+1}, ...`` of the target sequence
are written in a finite-dimensional space over ``K(N)`` spanned by the
shifts of the operands (their direct sum for ``P + Q``, their tensor
product for ``P Q``).  The first shift that depends on the earlier ones
gives the annihilating recurrence.

Convolution goes through generating functions: each operand recurrence is
turned into a linear differential equation for its series in the operator
``theta = x d/dx``, the equation of the product series is found the same
way in the space spanned by ``theta^i F theta^j G``, and the result is read
back as a recurrence on coefficients.  Constant-coefficient operands skip
all of this: their series are rational and the denominators multiply.

Vectors are kept as polynomial numerators over one common denominator.
"""

from __future__ import annotations

from ..errors import DegenerateOperand, DomainError
from .linalg import first_dependency
from .polyops import (content_normalize, integer_roots, padd, pderiv, pmul,
                      pscale, pshift, psub)
from .recurrence import HolonomicRecurrence, iterate_terms, residual

__all__ = ["closure_sum", "closure_product", "closure_convolution",
           "rec_to_theta", "theta_to_rec",
           "zero_recurrence", "is_zero_sequence", "VERIFY_WINDOW"]

# window over which a closure result is checked against the target sequence
VERIFY_WINDOW = 64


def _require_exact(*recs):
    dom = recs[0].domain
    for r in recs[1:]:
        dom.check_same(r.domain)
    if not dom.exact:
        raise DomainError("closure operations need an exact domain")
    return dom


def zero_recurrence(dom):
    return HolonomicRecurrence(dom, [[dom.one], []], [dom.zero])


def is_zero_sequence(rec):
    dom = rec.domain
    return all(dom.is_zero(x) for x in rec.initial)


# -- common-denominator vectors ---------------------------------------------

def _reduce(dom, nums, den):
    out = content_normalize(dom, [den] + list(nums))
    return out[1:], out[0]


def _shift_rows(rec):
    """Numerators of ``P_{n+1+i}`` in the basis ``P_n, ..., P_{n+k-1}``,
    all over the denominator ``a_0(n)``."""
    dom, k = rec.domain, rec.k
    a = [list(c.coeffs) for c in rec.coeffs]
    a0 = a[0]
    rows = []
    for i in range(k - 1):
        row = [[] for _ in range(k)]
        row[i + 1] = list(a0)
        rows.append(row)
    rows.append([dom.vneg(a[k - j]) for j in range(k)])
    return rows, a0


def _contract(dom, v, rows, size):
    """``w_j = sum_i v_i rows[i][j]``."""
    w = [[] for _ in range(size)]
    for i, vi in enumerate(v):
        if not vi:
            continue
        for j in range(size):
            if rows[i][j]:
                w[j] = padd(dom, w[j], pmul(dom, vi, rows[i][j]))
    return w


def _sum_step(dom, specs):
    (SP, aP, k), (SQ, aQ, l) = specs

    def step(nums, den):
        v = [pshift(dom, x, 1) for x in nums]
        den = pshift(dom, den, 1)
        wP = _contract(dom, v[:k], SP, k)
        wQ = _contract(dom, v[k:], SQ, l)
        out = [pmul(dom, x, aQ) for x in wP] + [pmul(dom, x, aP) for x in wQ]
        return _reduce(dom, out, pmul(dom, den, pmul(dom, aP, aQ)))
    return step


def _product_step(dom, specs):
    (SP, aP, k), (SQ, aQ, l) = specs

    def step(nums, den):
        v = [pshift(dom, x, 1) for x in nums]
        den = pshift(dom, den, 1)
        # v[i*l + j] multiplies P_{n+i} Q_{n+j}
        t = []
        for j in range(l):
            t.append(_contract(dom, [v[i * l + j] for i in range(k)], SP, k))
        out = [[] for _ in range(k * l)]
        for a in range(k):
            col = _contract(dom, [t[j][a] for j in range(l)], SQ, l)
            for b in range(l):
                out[a * l + b] = col[b]
        return _reduce(dom, out, pmul(dom, den, pmul(dom, aP, aQ)))
    return step


def _dependency(dom, dim, step, start):
    """Columns ``start, step(start), ...`` until one depends on the earlier
    ones; returns polynomial ``lambda_0..lambda_K``."""
    nums, den = start, [dom.one]
    cols, dens = [nums], [den]
    for _ in range(dim):
        nums, den = step(nums, den)
        cols.append(nums)
        dens.append(den)
    # dim + 1 vectors in a space of dimension dim: elimination stops at the
    # first dependent one
    K, mu = first_dependency(dom, cols)
    lam = [pmul(dom, m, D) for m, D in zip(mu, dens)]
    return content_normalize(dom, lam)


# -- result assembly ----------------------------------------------------------

def _finalize(dom, coeffs, target, min_offset):
    """Build the recurrence, moving the offset past integer roots of a_0 and
    past any index where the relation fails on the target sequence."""
    coeffs = content_normalize(dom, coeffs)
    K = len(coeffs) - 1
    roots = integer_roots(dom, coeffs[0])
    off = max([min_offset] + [r + 1 for r in roots])
    while True:
        seq = target(off + K + VERIFY_WINDOW)
        probe = HolonomicRecurrence(dom, coeffs, seq[:off + K], off)
        bad = [n for n in range(off, off + VERIFY_WINDOW)
               if not dom.is_zero(residual(probe, seq, n))]
        if not bad:
            return probe
        off = bad[-1] + 1


def closure_sum(r1, r2):
    """Recurrence annihilating ``P_n + Q_n``."""
    dom = _require_exact(r1, r2)
    if is_zero_sequence(r2):
        return r1
    if is_zero_sequence(r1):
        return r2
    k, l = r1.k, r2.k
    SP, aP = _shift_rows(r1)
    SQ, aQ = _shift_rows(r2)
    start = [[] for _ in range(k + l)]
    start[0] = [dom.one]
    start[k] = [dom.one]
    lam = _dependency(dom, k + l, _sum_step(dom, ((SP, aP, k), (SQ, aQ, l))), start)

    def target(count):
        return [dom.add(x, y) for x, y in zip(iterate_terms(r1, count),
                                              iterate_terms(r2, count))]
    return _finalize(dom, lam[::-1], target, max(r1.offset, r2.offset))


def closure_product(r1, r2):
    """Recurrence annihilating ``P_n Q_n``."""
    dom = _require_exact(r1, r2)
    if is_zero_sequence(r1) or is_zero_sequence(r2):
        return zero_recurrence(dom)
    k, l = r1.k, r2.k
    SP, aP = _shift_rows(r1)
    SQ, aQ = _shift_rows(r2)
    start = [[] for _ in range(k * l)]
    start[0] = [dom.one]
    lam = _dependency(dom, k * l, _product_step(dom, ((SP, aP, k), (SQ, aQ, l))),
                      start)

    def target(count):
        return [dom.mul(x, y) for x, y in zip(iterate_terms(r1, count),
                                              iterate_terms(r2, count))]
    return _finalize(dom, lam[::-1], target, max(r1.offset, r2.offset))


# -- generating-function side -------------------------------------------------

def _trim_ode(q):
    while q and not q[-1]:
        q.pop()
    return q


def _trim_lists(dom, a):
    a = list(a)
    while a and dom.is_zero(a[-1]):
        a.pop()
    return a


def _theta(dom, v):
    return [dom.zero] + pderiv(dom, v) if len(v) > 1 else []


def rec_to_theta(rec):
    """Operator ``sum_m q_m(x) theta^m`` with ``theta = x d/dx`` annihilating
    ``F(x) = sum P_n x^n``."""
    dom, k = rec.domain, rec.k
    a = [list(c.coeffs) for c in rec.coeffs]
    shifted = [pshift(dom, a[i], i - k) for i in range(k + 1)]
    q = [[] for _ in range(max(len(s) for s in shifted))]
    for i, c in enumerate(shifted):
        for m, cm in enumerate(c):
            if not dom.is_zero(cm):
                q[m] = padd(dom, q[m], [dom.zero] * i + [cm])
    q = _trim_ode(q)
    h = _inhomogeneity(rec)
    if not h:
        return q
    th = _theta(dom, h)
    out = [[] for _ in range(len(q) + 1)]
    for m, qm in enumerate(q):
        out[m] = padd(dom, out[m], psub(dom, pmul(dom, h, _theta(dom, qm)),
                                          pmul(dom, th, qm)))
        out[m + 1] = padd(dom, out[m + 1], pmul(dom, h, qm))
    return _trim_ode(out)


def theta_to_rec(dom, lam):
    """Coefficient recurrence of the series annihilated by
    ``sum_s lam[s](x) theta^s``; valid for every n >= 0."""
    js = [j for ls in lam for j, c in enumerate(ls) if not dom.is_zero(c)]
    lo, hi = min(js), max(js)
    K = hi - lo
    out = [[] for _ in range(K + 1)]
    for s, ls in enumerate(lam):
        for j, c in enumerate(ls):
            if dom.is_zero(c):
                continue
            i = j - lo
            # x^j theta^s contributes (n + hi - j)^s c_{n+hi-j}
            lin = [dom(hi - j), dom.one]
            pw = [dom.one]
            for _ in range(s):
                pw = pmul(dom, pw, lin)
            out[i] = padd(dom, out[i], pscale(dom, c, pw))
    return out


def _inhomogeneity(rec):
    dom, k = rec.domain, rec.k
    P = list(rec.initial)
    h = []
    for t in range(k + rec.offset):
        vals = rec.relation_at(t - k)
        h.append(dom.dot(vals[:min(t, k) + 1], P[t::-1][:min(t, k) + 1]))
    return _trim_lists(dom, h)


def _theta_product_step(dom, qF, qG):
    r1, r2 = len(qF) - 1, len(qG) - 1

    def der(v):
        return _theta(dom, v)

    def reduce_top(vec_top, q, size):
        # contribution of c * F^(size) rewritten in lower derivatives
        return [[] if not vec_top else dom.vneg(pmul(dom, vec_top, q[j]))
                for j in range(size)]

    def step(nums, den):
        # theta (sum v_ij F^(i) G^(j)) over the common denominator den^2 qF_r qG_r
        dden = der(den)
        scale = pmul(dom, qF[r1], qG[r2])
        out = [[] for _ in range(r1 * r2)]
        for idx, v in enumerate(nums):
            if not v:
                continue
            i, j = divmod(idx, r2)
            dv = psub(dom, pmul(dom, der(v), den), pmul(dom, v, dden))
            out[idx] = padd(dom, out[idx], pmul(dom, dv, scale))
            vd = pmul(dom, v, den)
            # F^(i+1) G^(j)
            if i + 1 < r1:
                t = i + 1
                out[t * r2 + j] = padd(dom, out[t * r2 + j], pmul(dom, vd, scale))
            else:
                for a, c in enumerate(reduce_top(pmul(dom, vd, qG[r2]), qF, r1)):
                    out[a * r2 + j] = padd(dom, out[a * r2 + j], c)
            # F^(i) G^(j+1)
            if j + 1 < r2:
                out[i * r2 + j + 1] = padd(dom, out[i * r2 + j + 1], pmul(dom, vd, scale))
            else:
                for b, c in enumerate(reduce_top(pmul(dom, vd, qF[r1]), qG, r2)):
                    out[i * r2 + b] = padd(dom, out[i * r2 + b], c)
        return _reduce(dom, out, pmul(dom, pmul(dom, den, den), scale))
    return step


def closure_convolution(r1, r2):
    """Recurrence annihilating ``c_n = sum_{m<=n} P_m Q_{n-m}``."""
    dom = _require_exact(r1, r2)
    if is_zero_sequence(r1) or is_zero_sequence(r2):
        return zero_recurrence(dom)

    def target(count):
        P, Q = iterate_terms(r1, count), iterate_terms(r2, count)
        return [dom.dot(P[:n + 1], Q[n::-1]) for n in range(count)]

    if r1.d == 0 and r2.d == 0:
        return _rational_convolution(dom, r1, r2, target)
    qF, qG = rec_to_theta(r1), rec_to_theta(r2)
    if len(qF) < 2 or len(qG) < 2:
        raise DegenerateOperand("operand series satisfies no differential equation")
    r1d, r2d = len(qF) - 1, len(qG) - 1
    start = [[] for _ in range(r1d * r2d)]
    start[0] = [dom.one]
    lam = _dependency(dom, r1d * r2d, _theta_product_step(dom, qF, qG), start)
    coeffs = theta_to_rec(dom, lam)
    return _finalize(dom, coeffs, target, 0)


def _rational_convolution(dom, r1, r2, target):
    """Constant coefficients: both series are rational, ``F = h_F / L_F``,
    and the product has denominator ``L_F L_G``."""
    L = pmul(dom, [c.coeffs[0] if c.coeffs else dom.zero for c in r1.coeffs],
             [c.coeffs[0] if c.coeffs else dom.zero for c in r2.coeffs])
    h = pmul(dom, _inhomogeneity(r1), _inhomogeneity(r2))
    K = len(L) - 1
    # sum_i L_i c_{t-i} = h_t vanishes once t > deg h
    return _finalize(dom, [[x] if not dom.is_zero(x) else [] for x in L],
                     target, max(0, len(h) - K))

