"""Dense univariate polynomials and fast multiplication.

Coefficient lists are stored lowest degree first.  The list-level helpers
(``mul_lists``, ``divmod_monic`` ...) are what the rest of the package uses in
its inner loops; :class:`DensePolynomial` is the immutable user-facing wrapper.
"""

from __future__ import annotations

from ..errors import DomainMismatch, NotMonic

__all__ = [
    "SCHOOLBOOK_THRESHOLD", "DensePolynomial", "trim", "mul_lists",
    "schoolbook", "karatsuba", "ntt_mul", "ntt_supported", "add_lists",
    "sub_lists", "horner", "divmod_monic", "MONOMIAL", "middle_product",
    "mul_monic", "ntt_cyclic", "ntt_forward", "ntt_inverse",
]

SCHOOLBOOK_THRESHOLD = 32
MONOMIAL = ("monomial",)


def trim(dom, a):
    """Drop trailing zero coefficients in place and return ``a``."""
    while a and dom.is_zero(a[-1]):
        a.pop()
    return a


def add_lists(dom, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dom.vadd(a[:len(b)], b) + list(a[len(b):])
    return out


def sub_lists(dom, a, b):
    n = max(len(a), len(b))
    z = dom.zero
    a = list(a) + [z] * (n - len(a))
    b = list(b) + [z] * (n - len(b))
    return dom.vsub(a, b)


def schoolbook(dom, a, b):
    return dom.conv(a, b)


def karatsuba(dom, a, b):
    """Karatsuba product; falls back to schoolbook below the threshold."""
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        return []
    if min(na, nb) < SCHOOLBOOK_THRESHOLD:
        return dom.conv(a, b)
    if na < nb:
        a, b, na, nb = b, a, nb, na
    m = na // 2
    if nb <= m:
        # unbalanced: split only the longer operand
        lo = karatsuba(dom, a[:m], b)
        hi = karatsuba(dom, a[m:], b)
        out = list(lo) + [dom.zero] * (na + nb - 1 - len(lo))
        tail = add_lists(dom, out[m:m + len(hi)], hi)
        out[m:m + len(hi)] = tail
        return out
    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = karatsuba(dom, a0, b0)
    z2 = karatsuba(dom, a1, b1)
    z1 = karatsuba(dom, add_lists(dom, a0, a1), add_lists(dom, b0, b1))
    z1 = sub_lists(dom, sub_lists(dom, z1, z0), z2)
    out = [dom.zero] * (na + nb - 1)
    out[:len(z0)] = z0
    seg = add_lists(dom, out[m:m + len(z1)], z1)
    out[m:m + len(seg)] = seg
    seg = add_lists(dom, out[2 * m:2 * m + len(z2)], z2)
    out[2 * m:2 * m + len(seg)] = seg
    return out[:na + nb - 1]


def ntt_supported(dom, length):
    if dom.kind != "prime-field":
        return False
    size = 1
    while size < length:
        size <<= 1
    return size <= (1 << dom.two_adicity)


def _ntt(a, p, roots, invert=False):
    """In-place iterative radix-2 transform; ``roots[s]`` is a 2^s-th root."""
    n = len(a)
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]
    length, level = 2, 1
    while length <= n:
        w_len = roots[level]
        if invert:
            w_len = pow(w_len, p - 2, p)
        half = length >> 1
        ws = [1] * half
        for k in range(1, half):
            ws[k] = ws[k - 1] * w_len % p
        for start in range(0, n, length):
            u, v = a[start], a[start + half]
            a[start], a[start + half] = (u + v) % p, (u - v) % p
            for k in range(1, half):
                u = a[start + k]
                v = a[start + k + half] * ws[k] % p
                a[start + k] = (u + v) % p
                a[start + k + half] = (u - v) % p
        length <<= 1
        level += 1
    return a


def _ntt_log(size):
    log = size.bit_length() - 1
    if size != 1 << log:
        raise ValueError(f"transform size {size} is not a power of two")
    return log


def _tally_transform(dom, size):
    log = _ntt_log(size)
    # twiddle factor 1 is free: each stage of length L saves size/L products
    dom.counter.tally(adds=size * log, muls=(size // 2) * log - (size - 1))


def _roots(dom, log):
    return [dom.root_of_unity(1 << s) for s in range(log + 1)]


def ntt_forward(dom, a, size):
    """Transform of ``a`` zero-padded to ``size`` (a power of two)."""
    log = _ntt_log(size)
    if len(a) > size:
        raise ValueError("input longer than the transform")
    _tally_transform(dom, size)
    return _ntt(list(a) + [0] * (size - len(a)), dom.p, _roots(dom, log))


def ntt_inverse(dom, f, keep=None):
    """Inverse transform; returns the first ``keep`` coefficients."""
    size = len(f)
    log = _ntt_log(size)
    keep = size if keep is None else keep
    _tally_transform(dom, size)
    p = dom.p
    out = _ntt(list(f), p, _roots(dom, log), invert=True)
    n_inv = pow(size, p - 2, p)
    dom.counter.tally(muls=keep, invs=1)
    return [x * n_inv % p for x in out[:keep]]


def ntt_pointwise(dom, fa, fb):
    p = dom.p
    dom.counter.tally(muls=len(fa))
    return [x * y % p for x, y in zip(fa, fb)]


def ntt_cyclic(dom, a, b, size, fb=None):
    """Cyclic convolution of ``a`` and ``b`` modulo ``X^size - 1``.

    ``fb`` may carry a precomputed transform of ``b``.
    """
    fa = ntt_forward(dom, a, size)
    if fb is None:
        fb = ntt_forward(dom, b, size)
    return ntt_inverse(dom, ntt_pointwise(dom, fa, fb))


def _pow2_at_least(n):
    size = 1
    while size < n:
        size <<= 1
    return size


def ntt_mul(dom, a, b):
    """Product over an NTT-friendly prime field."""
    if not a or not b:
        return []
    out_len = len(a) + len(b) - 1
    size = _pow2_at_least(out_len)
    fa = ntt_forward(dom, a, size)
    fb = ntt_forward(dom, b, size)
    return ntt_inverse(dom, ntt_pointwise(dom, fa, fb), out_len)


def middle_product(dom, a, b, lo, count):
    """Coefficients ``lo .. lo+count-1`` of ``a*b``.

    With a transform-friendly field the product is taken cyclically with
    the smallest size that leaves the requested window uncontaminated.
    """
    if not a or not b:
        return [dom.zero] * count
    full = len(a) + len(b) - 1
    hi = min(lo + count, full)
    if (min(len(a), len(b)) >= SCHOOLBOOK_THRESHOLD
            and ntt_supported(dom, full)):
        # index i aliases with i + size; need lo + size >= full
        size = _pow2_at_least(max(hi, full - lo, len(a), len(b)))
        if size < _pow2_at_least(full):
            c = ntt_cyclic(dom, a, b, size)
            out = c[lo:hi]
            return out + [dom.zero] * (count - len(out))
    c = mul_lists(dom, a, b)
    out = c[lo:hi]
    return out + [dom.zero] * (count - len(out))


def mul_monic(dom, f, g):
    """Product of two monic polynomials; the known leading term saves a
    transform size doubling."""
    if len(f) < 2 or len(g) < 2:
        return mul_lists(dom, f, g)
    a, b = len(f) - 1, len(g) - 1
    if (min(a, b) >= SCHOOLBOOK_THRESHOLD and ntt_supported(dom, a + b)
            and _pow2_at_least(a + b) < _pow2_at_least(a + b + 1)):
        size = _pow2_at_least(a + b)
        # f*g = X^(a+b) + (f*g mod X^(a+b)); the wrapped coefficient of
        # X^(a+b) is the leading 1, removed from slot 0
        c = ntt_cyclic(dom, f, g, size)
        c[0] = dom._sub(c[0], dom.one)
        dom.counter.tally(adds=1)
        return c[:a + b] + [dom.one]
    return mul_lists(dom, f, g)


def mul_lists(dom, a, b):
    """Exact product of coefficient lists using the cost-model dispatch."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < SCHOOLBOOK_THRESHOLD:
        return dom.conv(a, b)
    if ntt_supported(dom, len(a) + len(b) - 1):
        return ntt_mul(dom, a, b)
    return karatsuba(dom, a, b)


def horner(dom, coeffs, x):
    n = len(coeffs)
    if n == 0:
        return dom.zero
    dom.counter.tally(adds=n - 1, muls=n - 1)
    mul, add = dom._mul, dom._add
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = add(mul(acc, x), c)
    return acc


def divmod_monic(dom, a, f):
    """Schoolbook division of ``a`` by the monic polynomial ``f``."""
    k = len(f) - 1
    if k < 0 or f[-1] != dom.one:
        raise NotMonic("divisor must be monic")
    if len(a) <= k:
        return [], list(a)
    r = list(a)
    q = [dom.zero] * (len(a) - k)
    mul, sub = dom._mul, dom._sub
    muls = 0
    for i in range(len(a) - 1, k - 1, -1):
        c = r[i]
        q[i - k] = c
        if dom.is_zero(c):
            continue
        for j in range(k):
            r[i - k + j] = sub(r[i - k + j], mul(c, f[j]))
        muls += k
    dom.counter.tally(adds=muls, muls=muls)
    return trim(dom, q), trim(dom, r[:k])


class DensePolynomial:
    """Immutable dense polynomial over a :class:`~linrec.algebra.domains.Domain`.

    ``basis`` is ``("monomial",)`` or ``("newton", start, step)``; in the
    latter case coefficient ``i`` multiplies ``prod_{j<i} (X - (start + j*step))``.
    The zero polynomial has an empty coefficient list and degree ``-inf``
    (reported here as ``-1``).
    """

    __slots__ = ("domain", "coeffs", "basis")

    def __init__(self, domain, coeffs, basis=MONOMIAL):
        c = [domain(x) for x in coeffs]
        trim(domain, c)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "basis", tuple(basis))

    def __setattr__(self, name, value):
        raise AttributeError("DensePolynomial is immutable")

    @classmethod
    def _raw(cls, domain, coeffs, basis=MONOMIAL):
        obj = cls.__new__(cls)
        c = list(coeffs)
        trim(domain, c)
        object.__setattr__(obj, "domain", domain)
        object.__setattr__(obj, "coeffs", tuple(c))
        object.__setattr__(obj, "basis", tuple(basis))
        return obj

    @classmethod
    def x(cls, domain):
        return cls._raw(domain, [domain.zero, domain.one])

    @classmethod
    def constant(cls, domain, c):
        return cls._raw(domain, [domain(c)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def is_monomial_basis(self):
        return self.basis[0] == "monomial"

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero

    def _check(self, other):
        self.domain.check_same(other.domain)
        if self.basis != other.basis:
            raise DomainMismatch(f"basis {self.basis} vs {other.basis}")

    def __add__(self, other):
        self._check(other)
        return DensePolynomial._raw(
            self.domain, add_lists(self.domain, self.coeffs, other.coeffs),
            self.basis)

    def __sub__(self, other):
        self._check(other)
        return DensePolynomial._raw(
            self.domain, sub_lists(self.domain, self.coeffs, other.coeffs),
            self.basis)

    def __neg__(self):
        return DensePolynomial._raw(self.domain, self.domain.vneg(self.coeffs),
                                    self.basis)

    def __mul__(self, other):
        if not isinstance(other, DensePolynomial):
            return self.scale(other)
        return poly_mul(self, other)

    def scale(self, c):
        return DensePolynomial._raw(self.domain,
                                    self.domain.vscale(c, self.coeffs),
                                    self.basis)

    def __call__(self, x):
        dom = self.domain
        if self.is_monomial_basis:
            return horner(dom, list(self.coeffs), x)
        _, start, step = self.basis
        c = self.coeffs
        if not c:
            return dom.zero
        acc = c[-1]
        for i in range(len(c) - 2, -1, -1):
            node = dom.add(start, dom.mul(dom(i), step))
            acc = dom.add(dom.mul(acc, dom.sub(x, node)), c[i])
        return acc

    def __eq__(self, other):
        if not isinstance(other, DensePolynomial):
            return NotImplemented
        return (self.domain.same(other.domain) and self.basis == other.basis
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.domain.kind, self.domain.modulus, self.basis,
                     self.coeffs))

    def __repr__(self):
        tag = "" if self.is_monomial_basis else f", basis={self.basis}"
        return f"DensePolynomial({list(self.coeffs)}{tag})"


def poly_mul(p, q):
    """Exact product of two monomial-basis polynomials."""
    p.domain.check_same(q.domain)
    if not (p.is_monomial_basis and q.is_monomial_basis):
        raise DomainMismatch("poly_mul needs monomial-basis operands")
    return DensePolynomial._raw(p.domain,
                                mul_lists(p.domain, list(p.coeffs),
                                          list(q.coeffs)))


__all__.append("poly_mul")
