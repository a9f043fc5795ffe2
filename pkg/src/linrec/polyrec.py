"""Baby-step/giant-step products of polynomial matrices.

For a k x k matrix ``A(N)`` with polynomial entries the engine computes
matrix factorials ``A(n) ... A(1)``, products over many index intervals and
the vectors ``A(n_i) ... A(1) P_0`` for many indices.  The giant-step
polynomial ``C(N) = A(N+nu) ... A(N+1)`` is obtained from its values on
consecutive integers and interpolated in the Newton basis; evaluating it on
the grid ``0, nu, 2nu, ...`` leaves about ``n/nu`` matrix products.

Interval convention: ``(m, n)`` denotes ``A(n) A(n-1) ... A(m)``, both ends
included.  Internally half-open ranges ``(a, b]`` are used, i.e. the
factors ``A(a+1) ... A(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.domains import require_char
from .algebra.matrices import identity, mat_mul, mat_vec
from .algebra.newton import (HORNER_DEGREE_LIMIT, ProgressionTree,
                             _newton_to_values, _values_to_newton,
                             eval_progression_many, factorial_tables,
                             walk_progression)
from .algebra.polynomial import DensePolynomial, horner
from .companion import CompanionMatrix, PolyMatrix, sliding_window_products
from .errors import NonInvertibleFactor

__all__ = [
    "BsgsPlan", "IntervalSet", "ApplyResult", "choose_nu", "giant_step_poly",
    "matrix_factorial", "multi_products", "multi_apply", "iterate_product",
    "ITERATION_THRESHOLD", "MODES",
]

ITERATION_THRESHOLD = 256
# iterate when stepping through every index is estimated to be cheaper than
# DENSE_FACTOR * k^3 multiplications per requested index
DENSE_FACTOR = 16
MODES = ("general", "vector", "companion", "companion-restricted-degree")


@dataclass(frozen=True)
class BsgsPlan:
    nu: int
    n: int
    d: int
    ell: int = 1
    mode: str = "general"

    def __post_init__(self):
        if self.nu < 1 or self.nu & (self.nu - 1):
            raise ValueError(f"nu={self.nu} is not a power of 2")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


def _floor_pow2(x):
    return 1 << (x.bit_length() - 1) if x >= 1 else 1


def choose_nu(n, d=1, ell=1, mode="general"):
    """Giant-step size: a power of 2 near ``sqrt(n/d)``, or near ``n/ell``
    once there are more than ``sqrt(n d)`` requests."""
    n, d, ell = max(int(n), 1), max(int(d), 1), max(int(ell), 1)
    j = 0
    while d * 4 ** (j + 1) <= n:
        j += 1
    cap = 1 << j
    if ell * ell <= n * d:
        nu = cap
    else:
        nu = min(cap, _floor_pow2(max(n // ell, 1)))
    return BsgsPlan(nu=nu, n=n, d=d, ell=ell, mode=mode)


class IntervalSet:
    """Well-formed index intervals ``(m_i, n_i)``, kept sorted by ``m_i``."""

    def __init__(self, pairs):
        pairs = [(int(m), int(n)) for m, n in pairs]
        for m, n in pairs:
            if not 0 <= m <= n:
                raise ValueError(f"malformed interval ({m}, {n})")
        self.pairs = sorted(pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def top(self):
        return max((n for _, n in self.pairs), default=0)


class ApplyResult(list):
    """List of result vectors with a ``meta`` dict (mode used, warnings)."""

    def __init__(self, items=(), meta=None):
        super().__init__(items)
        self.meta = dict(meta or {})


# -- helpers -----------------------------------------------------------------

def _entry_lists(A):
    return [[list(e.coeffs) for e in row] for row in A.entries]


def _value(A, x):
    """Dense ``A(x)`` for a domain element x."""
    dom = A.domain
    return [[horner(dom, list(e.coeffs), x) for e in row] for row in A.entries]


def _mat_power(dom, M, e):
    k = len(M)
    R = identity(dom, k)
    if not dom.exact:
        # squaring amplifies rounding badly for near-defective M (for
        # example the Chebyshev matrix near x = 1); plain products do not
        for _ in range(e):
            R = mat_mul(dom, M, R)
        return R
    for bit in bin(e)[2:]:
        R = mat_mul(dom, R, R)
        if bit == "1":
            R = mat_mul(dom, M, R)
    return R


def _degree(A):
    return max(A.max_degree, 0)


def _walk(A, start):
    """``A(start), A(start+1), ...`` as companion or dense matrices."""
    dom, k = A.domain, A.k
    if A.companion is not None:
        top, sub = A.companion
        polys = [list(t.coeffs) for t in top] + [list(sub.coeffs)]
        for vals in walk_progression(dom, polys, start):
            yield CompanionMatrix(dom, vals[:-1], vals[-1])
    else:
        polys = [e for row in _entry_lists(A) for e in row]
        for vals in walk_progression(dom, polys, start):
            yield [vals[i * k:(i + 1) * k] for i in range(k)]


def _step_left(dom, M, P):
    return M.left_mul(P) if isinstance(M, CompanionMatrix) else mat_mul(dom, M, P)


def _step_vec(dom, M, v):
    return M.apply(v) if isinstance(M, CompanionMatrix) else mat_vec(dom, M, v)


def iterate_product(A, a, b):
    """``A(b) ... A(a+1)`` by plain iteration (``a <= b``)."""
    dom, k = A.domain, A.k
    P = identity(dom, k)
    if b <= a:
        return P
    walk = _walk(A, a + 1)
    for _ in range(b - a):
        P = _step_left(dom, next(walk), P)
    return P


def _values_on_progression(A, start, count):
    """Dense matrices ``A(start + t)`` for ``t < count``."""
    dom, k = A.domain, A.k
    flat = [e for row in _entry_lists(A) for e in row]
    vals = eval_progression_many(dom, flat, dom(start), dom.one, count)
    return [[[vals[i * k + j][t] for j in range(k)] for i in range(k)]
            for t in range(count)]


def _companions_on_progression(A, start, count):
    dom = A.domain
    top, sub = A.companion
    polys = [list(t.coeffs) for t in top] + [list(sub.coeffs)]
    vals = eval_progression_many(dom, polys, dom(start), dom.one, count)
    return [CompanionMatrix(dom, [v[t] for v in vals[:-1]], vals[-1][t])
            for t in range(count)]


def _window_products(dom, V, nu, L):
    """``W_m = V[m+nu-1] ... V[m]`` for ``m < L`` (V[t] is the factor t+1).

    Each window meets at most two aligned blocks of length nu: it is a
    prefix product of the later block times a suffix product of the
    earlier one.
    """
    suffix = {}   # (b, i) -> V[b-1] ... V[i]   for i in [b-nu, b)
    prefix = {}   # (b, j) -> V[b+j-1] ... V[b] for j in [1, nu]
    need_suffix = set()
    need_prefix = {}
    for m in range(L):
        if m % nu == 0:
            need_prefix[m] = max(need_prefix.get(m, 0), nu)
        else:
            b = (m // nu + 1) * nu
            need_suffix.add(b)
            need_prefix[b] = max(need_prefix.get(b, 0), m + nu - b)
    for b in need_suffix:
        P = V[b - 1]
        suffix[b, b - 1] = P
        for i in range(b - 2, b - nu - 1, -1):
            P = mat_mul(dom, P, V[i])
            suffix[b, i] = P
    for b, jmax in need_prefix.items():
        P = V[b]
        prefix[b, 1] = P
        for j in range(2, jmax + 1):
            P = mat_mul(dom, V[b + j - 1], P)
            prefix[b, j] = P
    out = []
    for m in range(L):
        if m % nu == 0:
            out.append(prefix[m, nu])
        else:
            b = (m // nu + 1) * nu
            out.append(mat_mul(dom, prefix[b, m + nu - b], suffix[b, m]))
    return out


def _interpolate_entries(dom, values, start, L, lead=None):
    """Monomial coefficient lists of the k x k interpolants of ``values``.

    With ``lead`` (the matrix of degree-L coefficients) the interpolants
    have degree L: on the L nodes the top Newton basis element vanishes,
    so its coefficient is exactly the leading coefficient.
    """
    k = len(values[0])
    tree = ProgressionTree(dom, dom(start), dom.one, L)
    fact, inv_fact = factorial_tables(dom, L)
    out = []
    for i in range(k):
        row = []
        for j in range(k):
            c = _values_to_newton(dom, [values[t][i][j] for t in range(L)],
                                  fact, inv_fact)
            if lead is not None and not dom.is_zero(lead[i][j]):
                c = c + [dom.zero] * (L - len(c)) + [lead[i][j]]
            row.append(DensePolynomial._raw(dom, tree.from_newton(c)))
        out.append(row)
    return out, tree


def _restricted_ok(A):
    """True if ``A`` is a textbook-shaped companion with ``deg(top_j) <= j``."""
    if A.companion is None:
        return False
    top, sub = A.companion
    if sub.degree > 0:
        return False
    return all(t.is_zero() or t.degree <= j for j, t in enumerate(top, start=1))


def giant_step_poly(A, nu, shift=0, mode="general"):
    """``C(N) = A(N+nu) A(N+nu-1) ... A(N+1)`` as a :class:`PolyMatrix`.

    The product is evaluated at ``N = shift, shift+1, ...`` and
    interpolated.  ``mode="companion"`` forms the window products by
    sliding (requires invertible factors); ``mode="companion-restricted-degree"``
    uses the sharper degree bound ``nu + k - 1`` valid when
    ``deg(top_j) <= j``.
    """
    return _giant(A, nu, shift, mode)[0]


def _giant(A, nu, shift=0, mode="general"):
    dom, k = A.domain, A.k
    if nu < 1:
        raise ValueError("nu must be positive")
    e = A.max_degree
    if e <= 0:
        M = _value(A, dom.zero)
        return PolyMatrix.constant(dom, _mat_power(dom, M, nu)), None
    lead = None
    if mode == "companion-restricted-degree":
        if not _restricted_ok(A):
            raise ValueError("restricted-degree mode needs deg(top_j) <= j "
                             "and a constant subdiagonal")
        L = nu + k
        D = L - 1
    else:
        D = L = nu * e
        Lm = [[e_.coeffs[e] if e_.degree == e else dom.zero for e_ in row]
              for row in A.entries]
        lead = _mat_power(dom, Lm, nu)
    require_char(dom, L + nu)
    T = L + nu - 1
    if mode in ("companion", "companion-restricted-degree"):
        if A.companion is None:
            raise ValueError("companion mode needs a companion-shaped matrix")
        Fs = _companions_on_progression(A, shift + 1, T)
        windows = sliding_window_products(Fs[::-1], nu)
        W = windows[::-1]
    else:
        V = _values_on_progression(A, shift + 1, T)
        W = _window_products(dom, V, nu, L)
    entries, tree = _interpolate_entries(dom, W, shift, L, lead)
    return PolyMatrix(dom, entries, d=D + 1), (tree if shift == 0 else None)


# -- the engine --------------------------------------------------------------

def _pieces(a, b, nu):
    """Split ``(a, b]`` into aligned dyadic pieces ``(x, x+s]``, ``s <= nu``."""
    out = []
    x = a
    while x < b:
        s = nu
        while s > 1 and (x % s or x + s > b):
            s >>= 1
        out.append((x, s))
        x += s
    return out


class _Engine:
    """Shared state for one batch of products over ``(0, top]``."""

    def __init__(self, A, top, ell, mode, threshold, nu=None):
        self.A, self.dom, self.k = A, A.domain, A.k
        self.top = top
        self.mode = mode
        self.meta = {"mode": mode}
        e = A.max_degree
        self.iterate = (top < threshold or
                        (not self.dom.exact and e > 0))
        if self.iterate:
            self.meta["strategy"] = "iteration"
            return
        if mode == "companion-restricted-degree":
            plan = choose_nu(top, 1, ell, mode)
        else:
            plan = choose_nu(top, max(A.d, 1), ell, mode)
        if nu is not None:
            plan = BsgsPlan(nu=nu, n=top, d=plan.d, ell=ell, mode=mode)
        self.plan = plan
        self.nu = plan.nu
        self.meta.update(strategy="bsgs", nu=self.nu)
        self._grid = None
        self._cascade = {}
        self.C, self.tree = self._giant(self.nu)

    def _giant(self, s):
        mode = self.mode
        if mode == "vector":
            mode = "general"
        if mode in ("companion", "companion-restricted-degree"):
            try:
                return _giant(self.A, s, mode=mode)
            except NonInvertibleFactor as exc:
                self.meta["warning"] = (f"non-invertible factor ({exc}); "
                                        "fell back to general mode")
                self.meta["fallback"] = "general"
                self.mode = "general"
        return _giant(self.A, s)

    def grid(self, count):
        """Values ``C(t nu)`` for ``t < count`` (computed once, extended lazily)."""
        if self._grid is None or len(self._grid) < count:
            dom, k = self.dom, self.k
            flat = [list(self.C.entries[i][j].coeffs)
                    for i in range(k) for j in range(k)]
            D = max(self.C.max_degree, 0)
            if self.tree is None or D <= HORNER_DEGREE_LIMIT:
                vals = eval_progression_many(dom, flat, dom.zero, dom(self.nu), count)
            else:
                vals = self._dilated_values(flat, D, count)
            self._grid = [[[vals[i * k + j][t] for j in range(k)] for i in range(k)]
                          for t in range(count)]
        return self._grid

    def _dilated_values(self, flat, D, count):
        """``C(nu M)`` at ``M = 0 .. count-1`` through the polynomial in M,
        reusing the subproduct tree on ``0 .. L-1`` from the interpolation."""
        dom = self.dom
        require_char(dom, max(count, D + 1))
        powers = [dom.one]
        nu = dom(self.nu)
        for _ in range(D):
            powers.append(dom._mul(powers[-1], nu))
        dom.counter.tally(muls=D)
        fact, inv_fact = factorial_tables(dom, max(count, D + 1))
        out = []
        for c in flat:
            if len(c) <= 1:
                out.append([c[0] if c else dom.zero] * count)
                continue
            g = dom.vmul(c, powers[:len(c)])
            newton = self.tree.to_newton(g)
            out.append(_newton_to_values(dom, newton, dom.one, count, fact, inv_fact))
        return out

    def cascade_values(self, requests):
        """Matrices for pieces ``(x, x+s]`` with ``s < nu``."""
        dom, k = self.dom, self.k
        by_size = {}
        for x, s in requests:
            by_size.setdefault(s, set()).add(x)
        out = {}
        for s, xs in by_size.items():
            xs = sorted(xs)
            if s == 1:
                for x in xs:
                    out[x, 1] = _value(self.A, dom(x + 1))
                continue
            if s not in self._cascade:
                self._cascade[s] = self._giant(s)[0]
            Cs = self._cascade[s]
            D = max(Cs.max_degree, 0)
            span = (xs[-1] - xs[0]) // s + 1
            horner_cost = len(xs) * D
            lg = max(1, (D + span).bit_length())
            prog_cost = 6 * (D + span) * lg + 3 * D * lg * lg
            if D <= 1 or horner_cost <= prog_cost or not dom.exact:
                for x in xs:
                    out[x, s] = _value(Cs, dom(x))
            else:
                flat = [list(Cs.entries[i][j].coeffs)
                        for i in range(k) for j in range(k)]
                vals = eval_progression_many(dom, flat, dom(xs[0]), dom(s), span)
                for x in xs:
                    t = (x - xs[0]) // s
                    out[x, s] = [[vals[i * k + j][t] for j in range(k)]
                                 for i in range(k)]
        return out


def _ordered_segments(pieces, nu):
    """Group consecutive full blocks into runs ``("run", g0, g1)``."""
    segs = []
    for x, s in pieces:
        if s == nu:
            g = x // nu
            if segs and segs[-1][0] == "run" and segs[-1][2] == g:
                segs[-1] = ("run", segs[-1][1], g + 1)
            else:
                segs.append(("run", g, g + 1))
        else:
            segs.append(("piece", x, s))
    return segs


class _RangeTree:
    """Products of grid blocks over arbitrary runs ``[g0, g1)``.

    Elementary segments lie between consecutive sorted run endpoints; a
    segment tree over them answers each run with O(log) matrix products.
    """

    def __init__(self, dom, blocks, runs):
        self.dom = dom
        pts = sorted({p for g0, g1 in runs for p in (g0, g1)})
        self.pts = pts
        self.index = {p: i for i, p in enumerate(pts)}
        segs = []
        for lo, hi in zip(pts, pts[1:]):
            P = blocks[lo]
            for g in range(lo + 1, hi):
                P = mat_mul(dom, blocks[g], P)
            segs.append(P)
        self.r = len(segs)
        self.tree = {}
        if self.r:
            self._build(1, 0, self.r, segs)

    def _build(self, node, lo, hi, segs):
        if hi - lo == 1:
            self.tree[node] = segs[lo]
        else:
            mid = (lo + hi) // 2
            self._build(2 * node, lo, mid, segs)
            self._build(2 * node + 1, mid, hi, segs)
            self.tree[node] = mat_mul(self.dom, self.tree[2 * node + 1],
                                      self.tree[2 * node])
        return self.tree[node]

    def _collect(self, node, lo, hi, u, v, acc):
        if v <= lo or hi <= u:
            return
        if u <= lo and hi <= v:
            acc.append(self.tree[node])
            return
        mid = (lo + hi) // 2
        self._collect(2 * node, lo, mid, u, v, acc)
        self._collect(2 * node + 1, mid, hi, u, v, acc)

    def query(self, g0, g1):
        acc = []
        self._collect(1, 0, self.r, self.index[g0], self.index[g1], acc)
        P = acc[0]
        for M in acc[1:]:
            P = mat_mul(self.dom, M, P)
        return P


def _half_open_products(eng, ranges):
    """Dense products over half-open ranges ``(a, b]`` with ``0 <= a <= b``."""
    dom, k = eng.dom, eng.k
    if eng.iterate:
        return [iterate_product(eng.A, a, b) for a, b in ranges]
    nu = eng.nu
    plans = [_ordered_segments(_pieces(a, b, nu), nu) for a, b in ranges]
    runs = [(s[1], s[2]) for plan in plans for s in plan if s[0] == "run"]
    small = [(s[1], s[2]) for plan in plans for s in plan if s[0] == "piece"]
    tree = None
    if runs:
        blocks = eng.grid(max(g1 for _, g1 in runs))
        tree = _RangeTree(dom, blocks, runs)
    vals = eng.cascade_values(small)
    out = []
    for plan in plans:
        P = identity(dom, k)
        for seg in plan:
            M = tree.query(seg[1], seg[2]) if seg[0] == "run" else vals[seg[1], seg[2]]
            P = mat_mul(dom, M, P)
        out.append(P)
    return out


def matrix_factorial(A, n, threshold=ITERATION_THRESHOLD, nu=None):
    """``A(n) A(n-1) ... A(1)`` (the identity for ``n = 0``)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    dom, k = A.domain, A.k
    if n == 0:
        return identity(dom, k)
    eng = _Engine(A, n, 1, "general", threshold, nu)
    if eng.iterate:
        return iterate_product(A, 0, n)
    nu = eng.nu
    I = n // nu
    P = identity(dom, k)
    if I:
        for M in eng.grid(I):
            P = mat_mul(dom, M, P)
    if I * nu < n:
        P = mat_mul(dom, iterate_product(A, I * nu, n), P)
    return P


def multi_products(A, intervals, threshold=ITERATION_THRESHOLD, nu=None):
    """``[A(n_i) ... A(m_i)]`` for each interval, in input order."""
    pairs = list(intervals) if not isinstance(intervals, IntervalSet) else intervals.pairs
    checked = IntervalSet(pairs)
    pairs = [(int(m), int(n)) for m, n in pairs]
    dom = A.domain
    if not pairs:
        return []
    eng = _Engine(A, checked.top, len(pairs), "general", threshold, nu)
    ranges = [(max(m - 1, 0), n) for m, n in pairs]
    prods = _half_open_products(eng, ranges)
    out = []
    A0 = None
    for (m, _), P in zip(pairs, prods):
        if m == 0:
            if A0 is None:
                A0 = _value(A, dom.zero)
            P = mat_mul(dom, P, A0)
        out.append(P)
    return out


def _check_indices(indices):
    indices = [int(i) for i in indices]
    if any(i < 0 for i in indices):
        raise ValueError("indices must be non-negative")
    if any(b < a for a, b in zip(indices, indices[1:])):
        raise ValueError("indices must be sorted ascending")
    return indices


def _walk_apply(A, P0, indices):
    dom = A.domain
    out, v, x = [], P0, 0
    walk = _walk(A, 1)
    for t in indices:
        while x < t:
            x += 1
            v = _step_vec(dom, next(walk), v)
        out.append(list(v))
    return out


def multi_apply(A, P0, indices, mode="general", threshold=ITERATION_THRESHOLD,
                nu=None):
    """``[A(n_i) ... A(1) P0]`` for ascending indices.

    Modes: ``general`` (interval products, then matrix-vector),
    ``vector`` (matrix-vector products only), ``companion`` (window
    products by sliding; falls back to general on a singular factor and
    records a warning in ``result.meta``) and
    ``companion-restricted-degree`` (giant step of degree ``nu + k - 1``).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    indices = _check_indices(indices)
    dom, k = A.domain, A.k
    P0 = [dom(x) for x in P0]
    if len(P0) != k:
        raise ValueError(f"P0 has length {len(P0)}, expected {k}")
    if not indices:
        return ApplyResult([], {"mode": mode})
    top = indices[-1]
    if mode in ("companion", "companion-restricted-degree") and A.companion is None:
        raise ValueError(f"mode {mode!r} needs a companion-shaped matrix")
    eff = mode
    note = None
    if mode == "companion-restricted-degree":
        if not _restricted_ok(A):
            raise ValueError("restricted-degree mode needs deg(top_j) <= j "
                             "and a constant subdiagonal")
        if top < k * k:
            eff, note = "companion", "n < k^2: used companion mode"
    step_cost = k if A.companion is not None else k * k
    if nu is None and top * step_cost <= DENSE_FACTOR * k ** 3 * len(indices):
        # the targets are dense: walking through every index is cheaper
        meta = {"mode": eff, "strategy": "iteration", "requested_mode": mode}
        return ApplyResult(_walk_apply(A, P0, indices), meta)
    eng = _Engine(A, top, len(indices), eff, threshold, nu)
    if note:
        eng.meta["note"] = note
    meta = dict(eng.meta, requested_mode=mode)
    if eng.iterate:
        return ApplyResult(_walk_apply(A, P0, indices), meta)

    # consecutive ranges between sorted targets
    ranges, x = [], 0
    for t in indices:
        ranges.append((x, t))
        x = t
    out, v = [], P0
    if eff == "vector":
        nu = eng.nu
        plans = [_ordered_segments(_pieces(a, b, nu), nu) for a, b in ranges]
        small = [(s[1], s[2]) for plan in plans for s in plan if s[0] == "piece"]
        vals = eng.cascade_values(small)
        gmax = max((s[2] for plan in plans for s in plan if s[0] == "run"), default=0)
        blocks = eng.grid(gmax) if gmax else []
        for plan in plans:
            for seg in plan:
                if seg[0] == "run":
                    for g in range(seg[1], seg[2]):
                        v = mat_vec(dom, blocks[g], v)
                else:
                    v = mat_vec(dom, vals[seg[1], seg[2]], v)
            out.append(list(v))
    else:
        for P in _half_open_products(eng, ranges):
            v = mat_vec(dom, P, v)
            out.append(list(v))
    meta.update(eng.meta)
    return ApplyResult(out, meta)
