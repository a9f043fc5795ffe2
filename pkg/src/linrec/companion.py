"""Companion matrices, polynomial matrices, and products of companion chains.

A :class:`CompanionMatrix` is stored by its first row ``(f_1, ..., f_k)`` and
a subdiagonal scalar ``sub`` (``1`` for the textbook companion form)::

    f_1 f_2 ... f_{k-1} f_k
    sub  0  ...    0     0
     0  sub ...    0     0
              ...
     0   0  ...   sub    0

Multiplying it with a vector or a dense matrix costs O(k) per column, which
is what makes the chain products below run in O(m k^2).
"""

from __future__ import annotations

from .algebra.matrices import mat_mul
from .algebra.polynomial import DensePolynomial, mul_lists, add_lists, horner
from .errors import DimensionMismatch, NonInvertibleFactor

__all__ = [
    "CompanionMatrix", "PolyMatrix", "chain_product", "chain_product_blocked",
    "sliding_window_products", "degree_pattern_check", "naive_chain",
]


class CompanionMatrix:
    __slots__ = ("domain", "top", "sub")

    def __init__(self, domain, top, sub=None):
        self.domain = domain
        self.top = list(top)
        self.sub = domain.one if sub is None else sub
        if not self.top:
            raise DimensionMismatch("companion matrix needs k >= 1")

    @property
    def k(self):
        return len(self.top)

    def dense(self):
        dom, k = self.domain, self.k
        rows = [list(self.top)]
        for i in range(1, k):
            row = [dom.zero] * k
            row[i - 1] = self.sub
            rows.append(row)
        return rows

    def is_invertible(self):
        dom = self.domain
        return dom.is_unit(self.top[-1]) and dom.is_unit(self.sub)

    def inverse_dense(self):
        dom, k = self.domain, self.k
        if not self.is_invertible():
            raise ZeroDivisionError("companion matrix is singular")
        fk_inv = dom.inv(self.top[-1])
        s_inv = dom.inv(self.sub)
        rows = []
        for i in range(k - 1):
            row = [dom.zero] * k
            row[i + 1] = s_inv
            rows.append(row)
        scale = dom.mul(fk_inv, s_inv)
        last = [fk_inv] + [dom.neg(dom.mul(f, scale)) for f in self.top[:-1]]
        rows.append(last)
        return rows

    def apply(self, v):
        """``F @ v`` in O(k)."""
        dom = self.domain
        head = dom.dot(self.top, v)
        if self.sub == dom.one:
            return [head] + list(v[:-1])
        return [head] + dom.vscale(self.sub, v[:-1])

    def left_mul(self, M):
        """``F @ M`` for a dense k x c matrix M."""
        dom = self.domain
        cols = list(zip(*M))
        head = [dom.dot(self.top, col) for col in cols]
        if self.sub == dom.one:
            return [head] + [list(r) for r in M[:-1]]
        return [head] + [dom.vscale(self.sub, r) for r in M[:-1]]

    def right_mul(self, M):
        """``M @ F`` for a dense r x k matrix M."""
        dom, k = self.domain, self.k
        out = []
        one = self.sub == dom.one
        for row in M:
            r0 = row[0]
            new = dom.vscale(r0, self.top)
            rest = row[1:] if one else dom.vscale(self.sub, row[1:])
            new[:k - 1] = dom.vadd(new[:k - 1], rest)
            out.append(new)
        return out

    def inv_left_mul(self, M, fk_inv=None, s_inv=None):
        """``F^{-1} @ M`` in O(k) per column."""
        dom, k = self.domain, self.k
        if fk_inv is None:
            fk_inv = dom.inv(self.top[-1])
        one = self.sub == dom.one
        if not one and s_inv is None:
            s_inv = dom.inv(self.sub)
        shifted = [list(r) for r in M[1:]] if one else [dom.vscale(s_inv, r) for r in M[1:]]
        out = shifted
        # last row: (M_0 - sum_{i<k} f_i * shifted_{i}) / f_k
        last = list(M[0])
        for i in range(k - 1):
            last = dom.vsub(last, dom.vscale(self.top[i], shifted[i]))
        out.append(dom.vscale(fk_inv, last))
        return out

    def __repr__(self):
        return f"CompanionMatrix(top={self.top}, sub={self.sub})"


def _check(Fs):
    if not Fs:
        raise DimensionMismatch("empty chain")
    k = Fs[0].k
    dom = Fs[0].domain
    for F in Fs:
        if F.k != k:
            raise DimensionMismatch(f"dimension {F.k} != {k}")
        dom.check_same(F.domain)
    return dom, k


def naive_chain(dom, mats):
    """Left-to-right dense product; used as an oracle."""
    P = mats[0]
    for M in mats[1:]:
        P = mat_mul(dom, P, M)
    return P


def chain_product(Fs):
    """Dense ``F_1 @ F_2 @ ... @ F_m`` in O(m k^2)."""
    dom, k = _check(Fs)
    P = Fs[0].dense()
    for F in Fs[1:]:
        P = F.right_mul(P)
    return P


def _block_product(block):
    """``F_1 ... F_k`` for exactly k textbook companions via (I - L)^{-1} R.

    Row i of the product equals row 1 of ``F_i ... F_k``; writing ``r_i`` for
    that row gives ``r_i = sum_t f^{(i)}_t r_{i+t}`` for ``i+t <= k`` plus unit
    rows otherwise, i.e. ``(I - L) r = R`` with L strictly upper and R lower
    triangular.  Solved by back substitution.
    """
    dom = block[0].domain
    k = len(block)
    R = [[dom.zero] * k for _ in range(k)]
    for i in range(k):
        f = block[i].top
        for c in range(i + 1):  # column c (0-based) <-> t = k - i - 1 + c + 1
            t = k - i + c  # 1-based index into f
            R[i][c] = f[t - 1]
    rows = [None] * k
    for i in range(k - 1, -1, -1):
        acc = list(R[i])
        f = block[i].top
        for j in range(i + 1, k):
            coeff = f[j - i - 1]
            acc = dom.vadd(acc, dom.vscale(coeff, rows[j]))
        rows[i] = acc
    return rows


def chain_product_blocked(Fs):
    """Same product as :func:`chain_product` via blocks of k factors."""
    dom, k = _check(Fs)
    m = len(Fs)
    if m < k or any(F.sub != dom.one for F in Fs):
        return chain_product(Fs)
    P = None
    full = (m // k) * k
    for b in range(0, full, k):
        B = _block_product(Fs[b:b + k])
        P = B if P is None else mat_mul(dom, P, B)
    if full < m:
        tail = Fs[full:]
        for F in tail:
            P = F.right_mul(P)
    return P


def sliding_window_products(Fs, window):
    """All products ``F_j ... F_{j+window-1}`` via ``P_{j+1} = F_j^{-1} P_j F_{j+window}``."""
    dom, k = _check(Fs)
    m = len(Fs)
    if not 1 <= window <= m:
        raise ValueError(f"window {window} outside [1, {m}]")
    for j in range(m - window):
        if not Fs[j].is_invertible():
            raise NonInvertibleFactor(j + 1)
    P = chain_product(Fs[:window])
    out = [P]
    for j in range(m - window):
        P = Fs[j].inv_left_mul(P)
        P = Fs[j + window].right_mul(P)
        out.append(P)
    return out


class PolyMatrix:
    """k x k matrix of monomial-basis polynomials in the index variable N.

    ``d`` is a strict degree bound (every entry has degree ``< d``).  When the
    matrix has (generalised) companion shape, ``companion`` holds
    ``(top_polys, sub_poly)`` so that evaluation can produce
    :class:`CompanionMatrix` values.
    """

    def __init__(self, domain, entries, d=None, companion=None):
        self.domain = domain
        self.entries = [[e if isinstance(e, DensePolynomial)
                         else DensePolynomial(domain, e) for e in row]
                        for row in entries]
        k = len(self.entries)
        if any(len(row) != k for row in self.entries):
            raise DimensionMismatch("PolyMatrix must be square")
        for row in self.entries:
            for e in row:
                domain.check_same(e.domain)
        actual = max((e.degree for row in self.entries for e in row), default=-1)
        self.d = max(actual + 1, 1) if d is None else d
        if actual >= self.d:
            raise ValueError(f"entry degree {actual} violates bound d={self.d}")
        self.companion = companion

    @classmethod
    def from_companion(cls, domain, top, sub=None, d=None):
        top = [t if isinstance(t, DensePolynomial) else DensePolynomial(domain, t)
               for t in top]
        if sub is None:
            sub = DensePolynomial.constant(domain, 1)
        elif not isinstance(sub, DensePolynomial):
            sub = DensePolynomial(domain, sub)
        k = len(top)
        zero = DensePolynomial(domain, [])
        rows = [list(top)]
        for i in range(1, k):
            row = [zero] * k
            row[i - 1] = sub
            rows.append(row)
        return cls(domain, rows, d=d, companion=(top, sub))

    @classmethod
    def constant(cls, domain, M):
        return cls(domain, [[[x] for x in row] for row in M])

    @property
    def k(self):
        return len(self.entries)

    @property
    def max_degree(self):
        return max((e.degree for row in self.entries for e in row), default=-1)

    def is_constant(self):
        return self.max_degree <= 0

    def __call__(self, n):
        dom = self.domain
        x = dom(n)
        return [[horner(dom, list(e.coeffs), x) for e in row] for row in self.entries]

    def companion_at(self, n):
        dom = self.domain
        x = dom(n)
        top, sub = self.companion
        return CompanionMatrix(dom, [horner(dom, list(t.coeffs), x) for t in top],
                               horner(dom, list(sub.coeffs), x))

    def shifted(self, s):
        """Matrix ``A(N + s)`` (Taylor shift of every entry)."""
        dom = self.domain
        ent = [[_taylor_shift(dom, e, dom(s)) for e in row] for row in self.entries]
        comp = None
        if self.companion is not None:
            top, sub = self.companion
            comp = ([_taylor_shift(dom, t, dom(s)) for t in top],
                    _taylor_shift(dom, sub, dom(s)))
        return PolyMatrix(dom, ent, d=self.d, companion=comp)

    def __matmul__(self, other):
        dom, k = self.domain, self.k
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = []
                for t in range(k):
                    acc = add_lists(dom, acc, mul_lists(
                        dom, list(self.entries[i][t].coeffs),
                        list(other.entries[t][j].coeffs)))
                row.append(DensePolynomial._raw(dom, acc))
            out.append(row)
        return PolyMatrix(dom, out)

    def degrees(self):
        return [[e.degree for e in row] for row in self.entries]

    def __repr__(self):
        return f"PolyMatrix(k={self.k}, d={self.d}, entries={self.entries})"


def _taylor_shift(dom, p, s):
    """Coefficients of ``p(N + s)`` by Horner on polynomials (O(deg^2))."""
    c = list(p.coeffs)
    if not c:
        return p
    acc = [c[-1]]
    lin = [s, dom.one]
    for a in reversed(c[:-1]):
        acc = add_lists(dom, mul_lists(dom, acc, lin), [a])
    return DensePolynomial._raw(dom, acc)


def degree_pattern_check(B, m):
    """True iff every entry satisfies ``deg(b_ij) <= m + j - i`` (1-based)."""
    for i, row in enumerate(B.entries):
        for j, e in enumerate(row):
            if e.is_zero():
                continue
            if e.degree > m + j - i:
                return False
    return True
