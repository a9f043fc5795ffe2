"""Coefficient-list polynomial helpers over an exact field.

Lists are lowest degree first and kept trimmed.  These are the building
blocks of rational-function arithmetic and the closure constructions, where
sizes are small and classical algorithms are adequate.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..algebra.polynomial import add_lists, mul_lists, sub_lists, trim

__all__ = [
    "padd", "psub", "pmul", "pscale", "pneg", "pdivmod", "pexact_div", "pgcd",
    "pshift", "peval", "pderiv", "falling", "integer_roots",
    "content_normalize",
]


def padd(dom, a, b):
    return trim(dom, add_lists(dom, a, b))


def psub(dom, a, b):
    return trim(dom, sub_lists(dom, a, b))


def pmul(dom, a, b):
    return trim(dom, mul_lists(dom, a, b))


def pscale(dom, c, a):
    if dom.is_zero(c):
        return []
    return trim(dom, dom.vscale(c, a))


def pneg(dom, a):
    return dom.vneg(a)


def pdivmod(dom, a, b):
    """Quotient and remainder for a nonzero divisor ``b``."""
    b = trim(dom, list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(dom, list(a))
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    if dom.kind == "rational":
        res = _int_divmod(a, b)
        if res is not None:
            dom.counter.tally(adds=(len(a) - db) * (db + 1),
                              muls=(len(a) - db) * (db + 2))
            return res
    lc_inv = dom.inv(b[-1])
    r = list(a)
    q = [dom.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if dom.is_zero(c):
            continue
        c = dom._mul(c, lc_inv)
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] = dom._sub(r[i - db + j], dom._mul(c, b[j]))
    dom.counter.tally(adds=(len(a) - db) * (db + 1), muls=(len(a) - db) * (db + 2))
    return trim(dom, q), trim(dom, r[:db])


def _int_divmod(a, b):
    """Division in Z[X] when every quotient coefficient is integral, else
    None."""
    if not all(type(x) is int for x in a) or not all(type(x) is int for x in b):
        return None
    db, lc = len(b) - 1, b[-1]
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        c, rem = divmod(c, lc)
        if rem:
            return None
        q[i - db] = c
        base = i - db
        for j in range(db + 1):
            r[base + j] -= c * b[j]
    r = r[:db]
    while r and not r[-1]:
        r.pop()
    while q and not q[-1]:
        q.pop()
    return q, r


def pexact_div(dom, a, b):
    q, r = pdivmod(dom, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def _monic(dom, a):
    if not a:
        return a
    return pscale(dom, dom.inv(a[-1]), a)


def pgcd(dom, a, b):
    """Monic greatest common divisor (zero if both are zero)."""
    a, b = trim(dom, list(a)), trim(dom, list(b))
    if dom.kind == "rational" and a and b:
        return _monic(dom, _primitive_gcd(_primitive(_integer_poly(a)),
                                          _primitive(_integer_poly(b))))
    while b:
        a, b = b, pdivmod(dom, a, b)[1]
    return _monic(dom, a)


def _primitive(c):
    g = math.gcd(*c)
    if c[-1] < 0:
        g = -g
    return [x // g for x in c]


def _eval_int(c, x):
    acc = 0
    for v in reversed(c):
        acc = acc * x + v
    return acc


def _heuristic_gcd(a, b):
    """gcd of primitive integer polynomials by evaluation at a large integer
    and balanced digit expansion; None when the heuristic gives up."""
    bound = min(max(abs(v) for v in a), max(abs(v) for v in b))
    xi = 2 * bound + 29
    for _ in range(6):
        h = math.gcd(_eval_int(a, xi), _eval_int(b, xi))
        g = []
        while h:
            r = h % xi
            if r > xi // 2:
                r -= xi
            g.append(r)
            h = (h - r) // xi
        if g and any(g):
            while not g[-1]:
                g.pop()
            g = _primitive(g)
            qa, qb = _int_divmod(a, g), _int_divmod(b, g)
            if qa is not None and qb is not None and not qa[1] and not qb[1]:
                return g
        xi = xi * 73794 // 27011
    return None


def _primitive_gcd(a, b):
    """gcd of primitive integer polynomials."""
    g = _heuristic_gcd(a, b)
    if g is not None:
        return g
    return _prs_gcd(a, b)


def _prs_gcd(a, b):
    """Primitive remainder sequence over the integers."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        # pseudo-remainder of a by b
        r = list(a)
        lb, db = b[-1], len(b) - 1
        while len(r) > db:
            c = r[-1]
            r = [x * lb for x in r]
            for j in range(db + 1):
                r[len(r) - 1 - db + j] -= c * b[j]
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        a, b = b, (_primitive(r) if r else [])
    return a


def pshift(dom, a, s):
    """Coefficients of ``a(X + s)``."""
    a = list(a)
    if not a or dom.is_zero(dom(s)):
        return trim(dom, a)
    s = dom(s)
    acc = [a[-1]]
    for c in reversed(a[:-1]):
        nxt = [dom.zero] * (len(acc) + 1)
        for i, x in enumerate(acc):
            nxt[i + 1] = dom._add(nxt[i + 1], x)
            nxt[i] = dom._add(nxt[i], dom._mul(x, s))
        nxt[0] = dom._add(nxt[0], c)
        acc = nxt
    n = len(a)
    dom.counter.tally(adds=n * n, muls=n * n // 2)
    return trim(dom, acc)


def peval(dom, a, x):
    acc = dom.zero
    for c in reversed(a):
        acc = dom._add(dom._mul(acc, x), c)
    dom.counter.tally(adds=len(a), muls=len(a))
    return acc


def pderiv(dom, a):
    return trim(dom, [dom._mul(dom(i), a[i]) for i in range(1, len(a))])


def falling(dom, shift, m):
    """Coefficients of the falling factorial ``(X + shift)(X + shift - 1) ...``
    with m factors."""
    out = [dom.one]
    for i in range(m):
        out = pmul(dom, out, [dom(shift - i), dom.one])
    return out


def content_normalize(dom, vec):
    """Divide a list of polynomials by their gcd and make the first nonzero
    entry monic (over the rationals: integral, primitive, with a positive
    leading coefficient)."""
    if dom.kind == "rational":
        return _content_normalize_int(vec)
    g = []
    for v in vec:
        g = pgcd(dom, g, v)
        if len(g) == 1:
            break
    if not g:
        return [list(v) for v in vec]
    out = [pexact_div(dom, v, g) if v else [] for v in vec]
    first = next((v for v in out if v), None)
    if first is not None:
        inv = dom.inv(first[-1])
        out = [pscale(dom, inv, v) for v in out]
    return out


def _content_normalize_int(vec):
    flat = [c for v in vec for c in v]
    if not any(flat):
        return [[] for _ in vec]
    den = 1
    for c in flat:
        if type(c) is not int:
            d = Fraction(c).denominator
            den = den * d // math.gcd(den, d)
    vec = [[int(c * den) for c in v] for v in vec]
    g = []
    for v in vec:
        if not v:
            continue
        g = _primitive(v) if not g else _primitive_gcd(g, _primitive(v))
        if len(g) == 1:
            break
    if len(g) > 1:
        vec = [_int_divmod(v, g)[0] if v else [] for v in vec]
    cont = 0
    for v in vec:
        for c in v:
            cont = math.gcd(cont, c)
    first = next(v for v in vec if v)
    if first[-1] < 0:
        cont = -cont
    return [[c // cont for c in v] for v in vec]


def _integer_poly(coeffs):
    """Integer multiple of a rational coefficient list."""
    den = 1
    for c in coeffs:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    return [int(Fraction(c) * den) for c in coeffs]


def integer_roots(dom, a, horizon=4096):
    """Non-negative integer roots of ``a``.

    Over the rationals this is exact: candidates are divisors of the lowest
    nonzero coefficient below Fujiwara's root bound.  Over a prime field
    every ``n`` in ``[0, horizon)`` is tested.
    """
    a = trim(dom, list(a))
    if not a:
        raise ValueError("the zero polynomial has every integer as a root")
    if dom.kind == "prime-field":
        return [n for n in range(min(horizon, dom.p)) if dom.is_zero(peval(dom, a, dom(n)))]
    if not dom.exact:
        raise ValueError("integer roots need an exact domain")
    c = _integer_poly(a)
    roots = []
    v = 0
    while c[v] == 0:
        v += 1
    if v:
        roots.append(0)
    c = c[v:]
    if len(c) == 1:
        return roots
    lead = abs(c[-1])
    deg = len(c) - 1
    # Fujiwara: |root| <= 2 max |c_{deg-i}/c_deg|^(1/i)
    logb = max((math.log(abs(c[deg - i])) - math.log(lead)) / i
               for i in range(1, deg + 1) if c[deg - i])
    bound = int(2 * math.exp(min(logb, 60))) + 2
    c0 = abs(c[0])
    for r in range(1, bound + 1):
        if c0 % r == 0:
            acc = 0
            for x in reversed(c):
                acc = acc * r + x
            if acc == 0:
                roots.append(r)
    return roots
