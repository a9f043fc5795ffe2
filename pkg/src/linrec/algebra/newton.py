"""Newton (falling factorial) bases and arithmetic-progression evaluation.

For nodes ``x_j = start + j*step`` the Newton basis element ``i`` is
``prod_{j<i} (X - x_j)``.  Conversions to and from the monomial basis go
through a subproduct tree (O(M(D) log D)); conversions between Newton
coefficients and values on the same progression are a single convolution
with the (signed) exponential series.
"""

from __future__ import annotations

from .domains import require_char
from .polynomial import (DensePolynomial, mul_lists, add_lists, horner,
                         divmod_monic, trim, mul_monic, ntt_supported,
                         ntt_forward, ntt_inverse, ntt_pointwise,
                         SCHOOLBOOK_THRESHOLD)
from .series import fast_divmod_monic, FAST_DIVISION_THRESHOLD, _Divisor

__all__ = [
    "to_newton", "from_newton", "eval_progression", "interp_progression",
    "to_newton_lists", "from_newton_lists", "newton_to_values",
    "values_to_newton", "eval_progression_lists", "factorial_tables",
    "HORNER_DEGREE_LIMIT", "ProgressionTree", "eval_progression_many",
    "walk_progression",
]

# below this degree a progression is evaluated point by point
HORNER_DEGREE_LIMIT = 8


def _nodes(dom, start, step, count):
    out = []
    x = start
    for _ in range(count):
        out.append(x)
        x = dom._add(x, step)
    dom.counter.tally(adds=max(count - 1, 0))
    return out


def _linear(dom, x):
    return [dom._neg(x), dom.one]


class ProgressionTree:
    """Subproduct tree over the nodes ``start + j*step`` (``j < size``).

    One tree serves any number of conversions to and from the Newton basis
    on the same nodes, so the k^2 entries of a polynomial matrix share it.
    """

    def __init__(self, dom, start, step, size):
        self.dom, self.size = dom, size
        self.nodes = _nodes(dom, start, step, size)
        dom.counter.tally(adds=size)
        self.prod = {}
        self.div = {}
        if size > 1:
            self._build(0, size)

    def _build(self, lo, hi):
        if hi - lo == 1:
            p = _linear(self.dom, self.nodes[lo])
        else:
            mid = (lo + hi) // 2
            p = mul_monic(self.dom, self._build(lo, mid), self._build(mid, hi))
        self.prod[lo, hi] = p
        return p

    def _divisor(self, lo, hi):
        d = self.div.get((lo, hi))
        if d is None:
            d = self.div[lo, hi] = _Divisor(self.dom, self.prod[lo, hi])
        return d

    @property
    def root(self):
        """Monic ``prod_j (X - x_j)`` over all nodes."""
        if self.size == 1:
            return _linear(self.dom, self.nodes[0])
        return self.prod[0, self.size]

    def to_newton(self, a):
        """Newton coefficients of monomial ``a`` (``len(a) <= size + 1``)."""
        dom = self.dom
        a = trim(dom, list(a))
        if len(a) > self.size + 1:
            raise ValueError("polynomial longer than the tree")
        if not a:
            return []
        if len(a) == self.size + 1:
            # the last basis element is the full product of the nodes
            lead = a[-1]
            rest = dom.vsub(a[:-1], dom.vscale(lead, self.root[:-1]))
            head = self.to_newton(rest)
            return head + [dom.zero] * (self.size - len(head)) + [lead]

        def rec(poly, lo, hi):
            if len(poly) == 0:
                return [dom.zero] * (hi - lo)
            if hi - lo == 1:
                return [poly[0]]
            mid = (lo + hi) // 2
            div = self.prod[lo, mid]
            if len(poly) < len(div):
                q, r = [], poly
            elif len(div) - 1 < FAST_DIVISION_THRESHOLD:
                q, r = divmod_monic(dom, poly, div)
            else:
                q, r = fast_divmod_monic(dom, poly, div, self._divisor(lo, mid))
            return rec(r, lo, mid) + rec(q, mid, hi)

        return trim(dom, rec(a, 0, self.size))

    def from_newton(self, c):
        """Monomial coefficients of ``sum c_i prod_{j<i}(X - x_j)``."""
        dom = self.dom
        c = trim(dom, list(c))
        if len(c) > self.size + 1:
            raise ValueError("too many Newton coefficients for the tree")
        if not c:
            return []
        if len(c) == self.size + 1:
            low = self.from_newton(c[:-1])
            top = dom.vscale(c[-1], self.root)
            return trim(dom, add_lists(dom, top, low))
        dom.counter.tally(adds=len(c))

        def rec(lo, hi):
            if lo >= len(c):
                return []
            if hi - lo == 1:
                return [c[lo]]
            mid = (lo + hi) // 2
            low = rec(lo, mid)
            high = rec(mid, hi)
            if not high:
                return low
            return add_lists(dom, low, mul_lists(dom, self.prod[lo, mid], high))

        return trim(dom, rec(0, self.size))


def from_newton_lists(dom, c, start, step):
    """Monomial coefficients of ``sum c_i prod_{j<i}(X - x_j)``."""
    c = trim(dom, list(c))
    if not c:
        return []
    return ProgressionTree(dom, start, step, len(c)).from_newton(c)


def to_newton_lists(dom, a, start, step):
    """Newton coefficients (on ``start + j*step``) of monomial ``a``."""
    a = trim(dom, list(a))
    if not a:
        return []
    return ProgressionTree(dom, start, step, len(a)).to_newton(a)


def factorial_tables(dom, n):
    """Lists ``[0!, ..., (n-1)!]`` and their inverses."""
    if n <= 0:
        return [], []
    require_char(dom, n)
    fact = [dom.one] * n
    for i in range(1, n):
        fact[i] = dom._mul(fact[i - 1], dom(i))
    inv = [dom.one] * n
    inv[-1] = dom.inv(fact[-1])
    for i in range(n - 1, 0, -1):
        inv[i - 1] = dom._mul(inv[i], dom(i))
    dom.counter.tally(muls=2 * (n - 1))
    return fact, inv


def _conv_window(dom, g, E, K):
    """``out[i] = sum_j g[j] * E[i-j]`` for ``i < K`` (E zero at negatives)."""
    L = len(g)
    if K <= 0:
        return []
    if (L >= SCHOOLBOOK_THRESHOLD and K >= SCHOOLBOOK_THRESHOLD
            and ntt_supported(dom, L + K - 1)):
        return _conv_window_ntt(dom, g, E, K)
    if K <= 2 * L:
        return (mul_lists(dom, g, E[:K]) + [dom.zero] * K)[:K]
    out = []
    for b in range(0, K, L):
        B = min(L, K - b)
        lo = b - (L - 1)
        seg = E[max(lo, 0):b + B]
        if lo < 0:
            seg = [dom.zero] * (-lo) + seg
        prod = mul_lists(dom, g, seg)
        prod = prod + [dom.zero] * (L - 1 + B - len(prod))
        out.extend(prod[L - 1:L - 1 + B])
    return out


def _conv_window_ntt(dom, g, E, K):
    """Blocked version: each block of B outputs is a cyclic product of size
    ``B + L - 1``; the transform of ``g`` is shared by all blocks."""
    L = len(g)
    best = None
    S = 1
    while S < L:
        S <<= 1
    top = 1
    while top < L + K - 1:
        top <<= 1
    while S <= top:
        B = S - L + 1
        if B >= 1:
            blocks = -(-K // B)
            cost = (2 * blocks + 1) * (S // 2) * S.bit_length() + blocks * S
            if best is None or cost < best[0]:
                best = (cost, S, B)
        S <<= 1
    _, S, B = best
    fg = ntt_forward(dom, g, S)
    out = []
    for b in range(0, K, B):
        cnt = min(B, K - b)
        lo = b - (L - 1)
        seg = E[max(lo, 0):b + cnt]
        if lo < 0:
            seg = [dom.zero] * (-lo) + seg
        c = ntt_inverse(dom, ntt_pointwise(dom, ntt_forward(dom, seg, S), fg))
        out.extend(c[L - 1:L - 1 + cnt])
    return out


def newton_to_values(dom, c, step, K):
    """Values at ``start + i*step``, ``i < K``, of Newton coefficients ``c``."""
    if not c:
        return [dom.zero] * K
    c = list(c[:K]) if len(c) > K else list(c)
    fact, inv_fact = factorial_tables(dom, max(K, len(c)))
    return _newton_to_values(dom, c, step, K, fact, inv_fact)


def _newton_to_values(dom, c, step, K, fact, inv_fact):
    if not c:
        return [dom.zero] * K
    c = c[:K]
    g, h = [], dom.one
    for cj in c:
        g.append(dom._mul(cj, h))
        h = dom._mul(h, step)
    dom.counter.tally(muls=2 * len(c))
    conv = _conv_window(dom, g, inv_fact, K)
    return dom.vmul(conv, fact[:K])


def values_to_newton(dom, values, step):
    """Newton coefficients on ``start + i*step`` of the interpolant."""
    L = len(values)
    if L == 0:
        return []
    fact, inv_fact = factorial_tables(dom, L)
    g = _values_to_newton(dom, values, fact, inv_fact)
    if step == dom.one:
        return g
    step_inv = dom.inv(step)
    out, h = [], dom.one
    for gj in g:
        out.append(dom._mul(gj, h))
        h = dom._mul(h, step_inv)
    dom.counter.tally(muls=2 * len(g))
    return trim(dom, out)


def _values_to_newton(dom, values, fact, inv_fact):
    """Newton coefficients on ``0, 1, 2, ...`` (shifted nodes alike)."""
    L = len(values)
    scaled = dom.vmul(list(values), inv_fact[:L])
    signed = [x if i % 2 == 0 else dom._neg(x) for i, x in enumerate(inv_fact[:L])]
    dom.counter.tally(adds=L // 2)
    g = _conv_window(dom, scaled, signed, L)
    return trim(dom, g)


def eval_progression_lists(dom, a, start, step, K):
    """Values of monomial ``a`` at ``start + i*step`` for ``i < K``."""
    a = trim(dom, list(a))
    if K <= 0:
        return []
    if len(a) <= 1:
        return [a[0] if a else dom.zero] * K
    D = len(a) - 1
    if D <= HORNER_DEGREE_LIMIT or K < 2:
        pts = _nodes(dom, start, step, K)
        return [horner(dom, a, x) for x in pts]
    require_char(dom, max(K, D + 1))
    c = to_newton_lists(dom, a, start, step)
    return newton_to_values(dom, c, step, K)


def to_newton(p, start, step):
    """Same polynomial function in the Newton basis on ``start + j*step``."""
    dom = p.domain
    start, step = dom(start), dom(step)
    if not p.is_monomial_basis:
        p = from_newton(p)
    c = to_newton_lists(dom, list(p.coeffs), start, step)
    return DensePolynomial._raw(dom, c, ("newton", start, step))


def from_newton(p):
    """Monomial form of a Newton-basis polynomial."""
    if p.is_monomial_basis:
        return p
    _, start, step = p.basis
    return DensePolynomial._raw(
        p.domain, from_newton_lists(p.domain, list(p.coeffs), start, step))


def eval_progression(p, start, step, count):
    """``[p(start), p(start+step), ..., p(start+(count-1)*step)]``."""
    dom = p.domain
    start, step = dom(start), dom(step)
    if p.basis == ("newton", start, step):
        if len(p.coeffs) <= 1:
            return [p[0]] * count
        require_char(dom, max(count, len(p.coeffs)))
        return newton_to_values(dom, list(p.coeffs), step, count)
    if not p.is_monomial_basis:
        p = from_newton(p)
    return eval_progression_lists(dom, list(p.coeffs), start, step, count)


def interp_progression(values, start, step, domain=None, basis="monomial"):
    """Unique polynomial of degree ``< len(values)`` through the progression.

    With ``basis="newton"`` the result is left in the Newton basis on
    ``(start, step)``, which is what the baby-step/giant-step engine wants.
    """
    if domain is None:
        raise ValueError("domain is required")
    dom = domain
    start, step = dom(start), dom(step)
    c = values_to_newton(dom, [dom(v) for v in values], step)
    p = DensePolynomial._raw(dom, c, ("newton", start, step))
    if basis == "newton":
        return p
    return from_newton(p)


def eval_progression_many(dom, polys, start, step, K):
    """Values of several monomial polynomials on one progression.

    The subproduct tree and factorial tables are built once and shared.
    """
    polys = [trim(dom, list(a)) for a in polys]
    if K <= 0:
        return [[] for _ in polys]
    D = max((len(a) for a in polys), default=0) - 1
    if D <= HORNER_DEGREE_LIMIT or K < 2:
        pts = _nodes(dom, start, step, K)
        return [[horner(dom, a, x) for x in pts] if len(a) > 1
                else [a[0] if a else dom.zero] * K for a in polys]
    require_char(dom, max(K, D + 1))
    tree = ProgressionTree(dom, start, step, D + 1)
    fact, inv_fact = factorial_tables(dom, max(K, D + 1))
    out = []
    for a in polys:
        if len(a) <= 1:
            out.append([a[0] if a else dom.zero] * K)
            continue
        out.append(_newton_to_values(dom, tree.to_newton(a), step, K, fact, inv_fact))
    return out


def walk_progression(dom, polys, start):
    """Yield ``[p(start), ...]``, then the values at ``start + 1``, and so on.

    On exact domains every step after the first ``deg + 1`` points costs
    ``deg`` additions per polynomial (forward differences).  Floats use
    Horner at every point, since difference tables lose accuracy there.
    """
    polys = [trim(dom, list(a)) for a in polys]
    if not dom.exact:
        x = dom(start)
        while True:
            yield [horner(dom, a, x) if a else dom.zero for a in polys]
            x = dom.add(x, dom.one)
    tables = []
    for a in polys:
        D = len(a) - 1
        if D < 1:
            tables.append([a[0] if a else dom.zero])
            continue
        t = [horner(dom, a, dom(start + i)) for i in range(D + 1)]
        for j in range(1, D + 1):
            for i in range(D, j - 1, -1):
                t[i] = dom.sub(t[i], t[i - 1])
        tables.append(t)
    while True:
        yield [t[0] for t in tables]
        for t in tables:
            for j in range(len(t) - 1):
                t[j] = dom.add(t[j], t[j + 1])
