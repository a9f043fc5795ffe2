"""Holonomic recurrences and their rescaled multi-evaluation.

A recurrence of depth k is ``a_0(n) P_{n+k} + a_1(n) P_{n+k-1} + ... +
a_k(n) P_n = 0``, asserted for every ``n >= offset``.  The stored initial
values are ``P_0 .. P_{offset+k-1}``, which determine the sequence whenever
``a_0`` has no root in ``[offset, oo)``.

Division by ``a_0`` is deferred: the vectors ``Q_n = sigma_n V_n`` with
``sigma_n = a_0(offset) ... a_0(n-1)`` obey a recurrence with polynomial
entries only, so they can be pushed through the baby-step/giant-step
engine.  The scale ``sigma`` is evaluated at the same indices by a 1 x 1
instance of the same engine.
"""

from __future__ import annotations

from ..algebra.polynomial import DensePolynomial, horner
from ..companion import PolyMatrix
from ..constrec import ConstRecurrence, multi_terms, nth_term
from ..errors import DegenerateOperand, ScaleVanishes
from ..algebra.newton import walk_progression
from ..polyrec import DENSE_FACTOR, ITERATION_THRESHOLD, multi_apply
from .polyops import pshift

__all__ = ["HolonomicRecurrence", "to_system", "multi_eval", "iterate_terms",
           "residual", "annihilates", "stream_terms", "scale_inverses",
           "walk_terms"]

# chunk length for batched inversion of a_0 along a walk
WALK_CHUNK = 1024


def _poly(dom, p):
    if isinstance(p, DensePolynomial):
        dom.check_same(p.domain)
        return p
    if isinstance(p, (list, tuple)):
        return DensePolynomial(dom, p)
    return DensePolynomial(dom, [p])


class HolonomicRecurrence:
    __slots__ = ("domain", "coeffs", "initial", "offset")

    def __init__(self, domain, coeffs, initial, offset=0):
        coeffs = tuple(_poly(domain, a) for a in coeffs)
        if len(coeffs) < 2:
            raise ValueError("need coefficients a_0, ..., a_k with k >= 1")
        if coeffs[0].is_zero():
            raise DegenerateOperand("leading coefficient a_0 is the zero polynomial")
        offset = int(offset)
        if offset < 0:
            raise ValueError("offset must be non-negative")
        k = len(coeffs) - 1
        initial = tuple(domain(x) for x in initial)
        if len(initial) != offset + k:
            raise ValueError(f"need exactly {offset + k} initial values "
                             f"(offset {offset} + depth {k}), got {len(initial)}")
        self.domain = domain
        self.coeffs = coeffs
        self.initial = initial
        self.offset = offset

    @property
    def k(self):
        return len(self.coeffs) - 1

    depth = k

    @property
    def d(self):
        return max(max(a.degree for a in self.coeffs), 0)

    degree = d

    def coeff_lists(self):
        return [list(a.coeffs) for a in self.coeffs]

    def relation_at(self, n):
        """Values ``a_0(n), ..., a_k(n)``."""
        dom = self.domain
        x = dom(n)
        return [horner(dom, list(a.coeffs), x) for a in self.coeffs]

    def terms(self, count):
        return iterate_terms(self, count)

    def __eq__(self, other):
        return (isinstance(other, HolonomicRecurrence)
                and self.domain.same(other.domain)
                and self.coeffs == other.coeffs
                and self.initial == other.initial
                and self.offset == other.offset)

    def __hash__(self):
        return hash((self.coeffs, self.initial, self.offset))

    def __repr__(self):
        cs = [list(a.coeffs) for a in self.coeffs]
        return (f"HolonomicRecurrence(k={self.k}, coeffs={cs}, "
                f"initial={list(self.initial)}, offset={self.offset})")


def iterate_terms(rec, count):
    """``P_0 .. P_{count-1}`` by direct rational iteration (the oracle)."""
    dom, k = rec.domain, rec.k
    out = list(rec.initial[:count])
    n = len(out) - k
    while len(out) < count:
        vals = rec.relation_at(n)
        if dom.is_zero(vals[0]):
            raise ScaleVanishes(n)
        acc = dom.dot(vals[1:], out[-1:-k - 1:-1])
        out.append(dom.neg(dom.div(acc, vals[0])))
        n += 1
    return out


def stream_terms(rec, indices):
    """``P_n`` at ascending indices by iteration, keeping only a window."""
    dom, k = rec.domain, rec.k
    out = []
    window = list(rec.initial)
    first = 0                 # index of window[0]
    n = len(window) - k
    for i in indices:
        while first + len(window) <= i:
            vals = rec.relation_at(n)
            if dom.is_zero(vals[0]):
                raise ScaleVanishes(n)
            acc = dom.dot(vals[1:], window[-1:-k - 1:-1])
            window.append(dom.neg(dom.div(acc, vals[0])))
            n += 1
            if len(window) > 2 * k + 64:
                drop = len(window) - k
                window = window[drop:]
                first += drop
        out.append(window[i - first])
    return out


def walk_terms(rec, indices):
    """``P_n`` at ascending indices by stepping through every index.

    The coefficients are walked by forward differences and the values of
    ``a_0`` are inverted in batches, so a step costs about ``k + 4``
    multiplications (``k`` when ``a_0`` is 1).
    """
    dom, k = rec.domain, rec.k
    polys = [list(a.coeffs) for a in rec.coeffs]
    monic = len(polys[0]) == 1 and polys[0][0] == dom.one
    window = list(rec.initial)
    first, n = 0, len(window) - k
    walk = walk_progression(dom, polys, n)
    pending, out = [], []
    left = max(indices[-1] + 1 - len(window), 0) if indices else 0

    def refill():
        nonlocal left
        size = min(WALK_CHUNK, left)
        left -= size
        vals = [next(walk) for _ in range(size)]
        if monic:
            return [(v[1:], None) for v in vals]
        root = next((i for i, v in enumerate(vals) if dom.is_zero(v[0])), None)
        if root is not None:
            # the walk cannot continue past a root: end the batch there
            vals = vals[:root]
            invs = dom.batch_inv([v[0] for v in vals])
            return [(v[1:], iv) for v, iv in zip(vals, invs)] + [(None, None)]
        invs = dom.batch_inv([v[0] for v in vals])
        return [(v[1:], iv) for v, iv in zip(vals, invs)]

    for i in indices:
        while first + len(window) <= i:
            if not pending:
                pending = refill()[::-1]
            rest, iv = pending.pop()
            if rest is None:
                raise ScaleVanishes(n)
            acc = dom.neg(dom.dot(rest, window[-1:-k - 1:-1]))
            window.append(acc if iv is None else dom.mul(acc, iv))
            n += 1
            if len(window) > 2 * k + 64:
                drop = len(window) - k
                window = window[drop:]
                first += drop
        out.append(window[i - first])
    return out


def residual(rec, seq, n):
    """``sum_i a_i(n) seq[n+k-i]``."""
    vals = rec.relation_at(n)
    k = rec.k
    return rec.domain.dot(vals, [seq[n + k - i] for i in range(k + 1)])


def annihilates(rec, seq, start=None, count=None):
    """True iff the relation holds at ``n = start, ..., start+count-1``
    (default: every ``n >= offset`` that fits in ``seq``)."""
    dom = rec.domain
    start = rec.offset if start is None else start
    stop = len(seq) - rec.k if count is None else start + count
    if stop + rec.k > len(seq):
        raise ValueError("sequence too short for the requested check")
    return all(dom.is_zero(residual(rec, seq, n)) for n in range(start, stop))


def to_system(rec):
    """Companion matrix ``A(N)`` and scale ``s(N) = a_0(N)``.

    ``A`` has top row ``(-a_1, ..., -a_k)`` and ``a_0`` on the subdiagonal,
    so with ``V_n = (P_{n+k-1}, ..., P_n)`` and ``Q_n = sigma_n V_n`` one
    has ``Q_{n+1} = A(n) Q_n``.  For ``a_0 = 1`` this is the ordinary
    companion matrix.
    """
    dom = rec.domain
    a = rec.coeffs
    top = [DensePolynomial._raw(dom, dom.vneg(list(c.coeffs))) for c in a[1:]]
    return PolyMatrix.from_companion(dom, top, a[0]), a[0]


def _reduced(rec):
    """Drop trailing identically-zero coefficients (``a_k = 0``): the
    relation then has depth k-1 in the variable ``n+1``."""
    dom = rec.domain
    coeffs = [list(a.coeffs) for a in rec.coeffs]
    offset = rec.offset
    while len(coeffs) > 2 and not coeffs[-1]:
        coeffs = [pshift(dom, c, -1) for c in coeffs[:-1]]
        offset += 1
    if offset == rec.offset:
        return rec
    return HolonomicRecurrence(dom, coeffs, rec.initial, offset)


def _check_indices(indices):
    indices = [int(i) for i in indices]
    if any(i < 0 for i in indices):
        raise ValueError("indices must be non-negative")
    if any(b < a for a, b in zip(indices, indices[1:])):
        raise ValueError("indices must be sorted ascending")
    return indices


def _first_root(rec, lo, hi):
    dom = rec.domain
    a0 = list(rec.coeffs[0].coeffs)
    for n in range(lo, hi):
        if dom.is_zero(horner(dom, a0, dom(n))):
            return n
    return lo


def scale_inverses(rec, steps, threshold=ITERATION_THRESHOLD):
    """``1 / sigma_t`` for ascending ``t`` in ``steps``, where ``sigma_t =
    a_0(offset) ... a_0(offset + t - 1)``; raises :class:`ScaleVanishes` at
    the first root of ``a_0`` that would be divided by."""
    dom, off = rec.domain, rec.offset
    a0 = list(rec.coeffs[0].coeffs)
    if len(a0) == 1:
        sig = [dom.one if a0[0] == dom.one else dom.pow(a0[0], t) for t in steps]
    else:
        S = PolyMatrix(dom, [[pshift(dom, a0, off - 1)]])
        sig = [v[0] for v in multi_apply(S, [dom.one], steps, mode="vector",
                                         threshold=threshold)]
    bad = next((t for t, x in zip(steps, sig) if dom.is_zero(x)), None)
    if bad is not None:
        raise ScaleVanishes(_first_root(rec, off, off + bad))
    return dom.batch_inv(sig) if dom.exact else [dom.inv(x) for x in sig]


def _constant_terms(rec, indices):
    """Constant coefficients: the log n route of :mod:`linrec.constrec`."""
    dom, k, off = rec.domain, rec.k, rec.offset
    a = [c.coeffs[0] if c.coeffs else dom.zero for c in rec.coeffs]
    iv = dom.neg(dom.inv(a[0]))
    const = ConstRecurrence(dom, [dom.mul(iv, c) for c in a[1:]], rec.initial[off:off + k])
    far = [i - off for i in indices if i >= off]
    if len(far) <= k:
        vals = [nth_term(const, t) for t in far]
    else:
        vals = multi_terms(const, far)
    head = [rec.initial[i] for i in indices if i < off]
    return head + vals


def multi_eval(rec, indices, mode=None, threshold=ITERATION_THRESHOLD):
    """``P_{n_1}, ..., P_{n_l}`` for ascending indices.

    ``mode`` is passed to :func:`linrec.polyrec.multi_apply`; the default is
    ``companion`` on exact domains and ``vector`` on floats.
    """
    indices = _check_indices(indices)
    if not indices:
        return []
    dom = rec.domain
    if mode is None:
        mode = "companion" if dom.exact else "vector"
    work = _reduced(rec)
    if not dom.exact and work.coeffs[0].degree > 0:
        # the scale sigma overflows in floating point: divide as we go
        return stream_terms(work, indices)
    if dom.exact and indices[-1] * (work.k + 4) <= DENSE_FACTOR * work.k ** 3 * len(indices):
        return walk_terms(work, indices)
    k, off = work.k, work.offset
    if dom.exact and work.d == 0:
        return _constant_terms(work, indices)
    base = off + k - 1
    far = [i - base for i in indices if i > base]
    values = {}
    if far:
        A, _ = to_system(work)
        B = A.shifted(off - 1)
        Q0 = list(reversed(work.initial[off:off + k]))
        Q = multi_apply(B, Q0, far, mode=mode, threshold=threshold)
        invs = scale_inverses(work, far, threshold)
        for t, q, iv in zip(far, Q, invs):
            values[t + base] = dom.mul(q[0], iv)
    init = work.initial
    return [values[i] if i > base else init[i] for i in indices]
