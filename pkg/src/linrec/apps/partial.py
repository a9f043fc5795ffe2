"""Selected coefficients of powers and reciprocals of polynomials.

Nothing here expands ``p^m`` or ``1/p`` in full: the top coefficients come
from truncated arithmetic on reversed polynomials, scattered coefficients
from holonomic recurrences for ``p^m`` and ``1/p``.
"""

from __future__ import annotations

import math

from ..algebra.domains import require_char
from ..algebra.polynomial import DensePolynomial, mul_lists, trim
from ..algebra.series import newton_inverse_lists
from ..companion import PolyMatrix
from ..constrec import ConstRecurrence, consecutive_terms
from ..errors import CharacteristicTooSmall, ConstantTermNotInvertible
from ..holonomic.closure import VERIFY_WINDOW, closure_convolution
from ..holonomic.polyops import falling, pmul, pscale, pshift
from ..holonomic.recurrence import HolonomicRecurrence, multi_eval
from ..polyrec import multi_apply
from .factorial import multi_factorial

__all__ = ["power_top_coeffs", "inverse_top_coeffs", "power_coeffs_at",
           "inverse_coeff_range", "mixed_coeffs", "power_recurrence",
           "inverse_recurrence", "INVERSE"]

INVERSE = -1


def _split(p, domain=None):
    if isinstance(p, DensePolynomial):
        return p.domain, list(p.coeffs)
    if domain is None:
        raise ValueError("a coefficient list needs an explicit domain")
    return domain, trim(domain, [domain(c) for c in p])


def _ordered(indices):
    indices = [int(i) for i in indices]
    if any(i < 0 for i in indices):
        raise ValueError("indices must be non-negative")
    return indices, sorted(set(indices))


def _trunc_pow(dom, a, e, ell):
    """``a^e mod X^ell`` by square and multiply."""
    result = [dom.one]
    base = a[:ell]
    while e:
        if e & 1:
            result = mul_lists(dom, result, base)[:ell]
        e >>= 1
        if e:
            base = mul_lists(dom, base, base)[:ell]
    return result


# -- most significant coefficients ------------------------------------------

def power_top_coeffs(p, n, ell, domain=None):
    """Coefficients of ``X^{nd}, X^{nd-1}, ..., X^{nd-ell+1}`` in ``p^n``.

    Reversal turns the top of a product into the bottom of the product of
    the reversals, so only ``ell`` low coefficients are ever carried.
    """
    dom, a = _split(p, domain)
    if not a:
        raise ValueError("p must be nonzero")
    if n < 0 or ell < 1:
        raise ValueError("need n >= 0 and ell >= 1")
    d = len(a) - 1
    if ell < d:
        raise ValueError(f"ell={ell} is below deg(p)={d}")
    r = a[::-1]
    if d == 0:
        return [dom.pow(a[0], n)] + [dom.zero] * (ell - 1)
    m0 = -(-ell // d)
    if n <= m0:
        out = _trunc_pow(dom, r, n, ell)
    else:
        # q = p^m0 already has degree >= ell; then n = m0 s + t
        q = _trunc_pow(dom, r, m0, ell)
        s, t = divmod(n, m0)
        out = mul_lists(dom, _trunc_pow(dom, q, s, ell), _trunc_pow(dom, r, t, ell))[:ell]
    return out + [dom.zero] * (ell - len(out))


def inverse_top_coeffs(p, n, ell, domain=None):
    """Coefficients of ``X^{n-1}, ..., X^{n-ell}`` in ``1/p mod X^n``.

    Newton's step ``q <- 2q - p q^2`` sends the top ``w + d`` coefficients
    of ``q mod X^m`` to the top ``w`` coefficients of ``q mod X^{2m}``.  The
    iteration runs in full up to size ``n / 2^I`` and then carries only
    shrinking windows.
    """
    dom, a = _split(p, domain)
    if not a or not dom.is_unit(a[0]):
        raise ConstantTermNotInvertible("p(0) is not invertible")
    d = len(a) - 1
    if not (max(d, 1) <= ell <= n):
        raise ValueError(f"need deg(p) <= ell <= n, got ell={ell}, n={n}")
    J = max(0, (n - 1).bit_length())
    size = 1 << J
    w_final = ell + size - n
    ratio = n / ell
    I = 0
    if ratio > 2:
        I = max(0, math.ceil(math.log2(ratio) - math.log2(math.log2(ratio))))
    I = min(I, J)
    while I and w_final + d * I > size >> I:
        I -= 1
    m = size >> I
    q = newton_inverse_lists(dom, a, m)
    q += [dom.zero] * (m - len(q))
    W = w_final + d * I
    win = q[m - W:]
    for i in range(I - 1, -1, -1):
        m2, w2 = 2 * m, W - d
        lo = m2 - w2 - d
        sq = mul_lists(dom, win, win)
        base = 2 * (m - W)
        sq = sq[lo - base:m2 - base]
        sq += [dom.zero] * (w2 + d - len(sq))
        r = mul_lists(dom, a, sq)[d:d + w2]
        r += [dom.zero] * (w2 - len(r))
        new = []
        for j, rj in zip(range(m2 - w2, m2), r):
            v = dom.neg(rj)
            if j < m:
                v = dom.add(v, dom.add(win[j - (m - W)], win[j - (m - W)]))
            new.append(v)
        win, m, W = new, m2, w2
    return win[:ell][::-1]


# -- scattered coefficients ---------------------------------------------------

def _strip(dom, a):
    v = 0
    while v < len(a) and dom.is_zero(a[v]):
        v += 1
    return v, a[v:]


def power_coeffs_at(p, m, indices, domain=None):
    """Coefficients of ``p^m`` at ``X^{n_i}``, in the order given.

    With ``R_n = n! p(0)^n [X^n] p^m`` the relation ``p (p^m)' = m p' p^m``
    becomes a companion recurrence of depth ``deg p`` with a constant
    subdiagonal and ``deg(top_j) <= j``.
    """
    dom, a = _split(p, domain)
    indices, targets = _ordered(indices)
    if m < 0:
        raise ValueError("m must be non-negative")
    if not a:
        return [dom.one if (m == 0 and i == 0) else dom.zero for i in indices]
    v, b = _strip(dom, a)
    shift = v * m
    d = len(b) - 1
    local = sorted({t - shift for t in targets if shift <= t <= shift + d * m})
    table = {}
    if m == 0 or d == 0:
        for t in local:
            table[t] = dom.pow(b[0], m) if t == 0 else dom.zero
    elif local:
        require_char(dom, local[-1] + 1)
        table = dict(zip(local, _power_scattered(dom, b, m, local)))
    return [table.get(i - shift, dom.zero) for i in indices]


def _power_scattered(dom, b, m, local):
    d = len(b) - 1
    p0 = b[0]
    # g_j(n) = ((m+1) j - n - 1) p_j p0^(j-1) n(n-1)...(n-j+2)
    gs = []
    for j in range(1, d + 1):
        lin = [dom((m + 1) * j - 1), dom(-1)]
        c = dom.mul(b[j], dom.pow(p0, j - 1))
        gs.append(pscale(dom, c, pmul(dom, lin, falling(dom, 0, j - 1))))
    R = [dom.pow(p0, m)]
    for n in range(d - 1):
        acc = dom.zero
        for j in range(1, min(n + 1, d) + 1):
            acc = dom.add(acc, dom.mul(_at(dom, gs[j - 1], n), R[n + 1 - j]))
        R.append(acc)
    A = PolyMatrix.from_companion(dom, [pshift(dom, g, d - 2) for g in gs])
    far = [t - d + 1 for t in local if t >= d]
    values = dict(enumerate(R))
    if far:
        V0 = R[::-1]
        got = multi_apply(A, V0, far, mode="companion-restricted-degree")
        for t, vec in zip(far, got):
            values[t + d - 1] = vec[0]
    facts = multi_factorial(local, dom)
    scales = dom.batch_inv([dom.mul(f, dom.pow(p0, t)) for f, t in zip(facts, local)])
    return [dom.mul(values[t], s) for t, s in zip(local, scales)]


def _at(dom, poly, n):
    acc = dom.zero
    x = dom(n)
    for c in reversed(poly):
        acc = dom.add(dom.mul(acc, x), c)
    return acc


def inverse_coeff_range(p, n, ell, domain=None):
    """Coefficients ``n, ..., n+ell-1`` of the power series ``1/p``."""
    dom, a = _split(p, domain)
    if not a or not dom.is_unit(a[0]):
        raise ConstantTermNotInvertible("p(0) is not invertible")
    if n < 0 or ell < 1:
        raise ValueError("need n >= 0 and ell >= 1")
    d = len(a) - 1
    if d == 0:
        c = dom.inv(a[0])
        return [c if n + i == 0 else dom.zero for i in range(ell)]
    ninv = dom.neg(dom.inv(a[0]))
    rec = ConstRecurrence(dom, [dom.mul(ninv, c) for c in a[1:]],
                          newton_inverse_lists(dom, a, d))
    return consecutive_terms(rec, n, ell)


def power_recurrence(p, m, domain=None):
    """Recurrence of depth ``deg p`` for the coefficients of ``p^m``;
    requires ``p(0) != 0`` and ``deg p >= 1``.

    The relation at ``N`` is ``sum_j p_j (N + d - (m+1) j) f_{N+d-j} = 0``.
    """
    dom, a = _split(p, domain)
    d = len(a) - 1
    if d < 1 or dom.is_zero(a[0]):
        raise ValueError("need deg(p) >= 1 and p(0) != 0")
    coeffs = [pscale(dom, c, [dom(d - (m + 1) * j), dom.one]) for j, c in enumerate(a)]
    init = _trunc_pow(dom, a, m, d)
    init += [dom.zero] * (d - len(init))
    return HolonomicRecurrence(dom, coeffs, init)


def inverse_recurrence(q, domain=None):
    """Constant-coefficient recurrence for the series ``1/q`` as a
    holonomic recurrence; requires ``deg q >= 1``."""
    dom, a = _split(q, domain)
    if not a or not dom.is_unit(a[0]):
        raise ConstantTermNotInvertible("q(0) is not invertible")
    d = len(a) - 1
    if d < 1:
        raise ValueError("need deg(q) >= 1")
    return HolonomicRecurrence(dom, [[c] if not dom.is_zero(c) else [] for c in a],
                               newton_inverse_lists(dom, a, d))


def mixed_coeffs(p, m1, q, m2, indices, domain=None):
    """Coefficients of ``p^{m1} q^{m2}`` at the given indices, where
    ``m2 = INVERSE`` (that is, -1) selects ``p^{m1} / q``.
    """
    dom, a = _split(p, domain)
    dom2, b = _split(q, dom)
    dom.check_same(dom2)
    indices, targets = _ordered(indices)
    if m1 < 0 or m2 < INVERSE:
        raise ValueError("need m1 >= 0 and m2 >= 0 or m2 == INVERSE")
    if not a or not b:
        if not b and m2 == INVERSE:
            raise ConstantTermNotInvertible("q(0) is not invertible")
        zero_p = (not a and m1 > 0) or (not b and m2 > 0)
        if zero_p:
            return [dom.zero] * len(indices)
    if m2 == INVERSE and (not b or not dom.is_unit(b[0])):
        raise ConstantTermNotInvertible("q(0) is not invertible")
    if dom.characteristic:
        bound = max(targets, default=0) + m1 * len(a) + max(m2, 1) * len(b)
        if dom.characteristic < bound + 4 * VERIFY_WINDOW:
            raise CharacteristicTooSmall(dom.characteristic, bound + 4 * VERIFY_WINDOW)
    # factor out powers of X and constants; each side is then a sequence
    # given by a recurrence, or a single constant
    shift, scale, recs = 0, dom.one, []
    for poly, e, inverse in ((a, m1, False), (b, max(m2, 0), m2 == INVERSE)):
        if not poly or e == 0 and not inverse:
            continue
        if inverse:
            if len(poly) == 1:
                scale = dom.mul(scale, dom.inv(poly[0]))
            else:
                recs.append(inverse_recurrence(poly, dom))
            continue
        v, core = _strip(dom, poly)
        shift += v * e
        if len(core) == 1:
            scale = dom.mul(scale, dom.pow(core[0], e))
        else:
            recs.append(power_recurrence(core, e, dom))
    local = sorted({t - shift for t in targets if t >= shift})
    if not recs:
        vals = [scale if t == 0 else dom.zero for t in local]
    else:
        rec = recs[0] if len(recs) == 1 else closure_convolution(recs[0], recs[1])
        vals = [dom.mul(scale, v) for v in multi_eval(rec, local)] if local else []
    table = dict(zip(local, vals))
    return [table.get(i - shift, dom.zero) for i in indices]
