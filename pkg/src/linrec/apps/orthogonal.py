"""Three-term recurrences of classical orthogonal polynomials.

Every family is stored as ``P_{n+1} = (A_n X + B_n) P_n - C_n P_{n-1}``
for ``n >= start`` together with the explicit polynomials ``P_0 .. P_start``.
Evaluation at a point clears the denominators of ``A, B, C`` and hands the
resulting depth-2 holonomic recurrence to :func:`multi_eval`, so all
families share one code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.domains import Float64, Rationals
from ..algebra.polynomial import horner
from ..holonomic.polyops import pexact_div, pgcd, pmul, pshift, padd
from ..holonomic.ratfunc import RationalFunction
from ..holonomic.recurrence import HolonomicRecurrence, multi_eval

__all__ = ["OrthogonalFamily", "FAMILIES", "family", "ortho_eval",
           "ortho_recurrence"]

_Q = Rationals()
F = Fraction


def _rf(num, den=(1,)):
    return RationalFunction(_Q, [F(c) for c in num], [F(c) for c in den])


@dataclass(frozen=True)
class OrthogonalFamily:
    name: str
    normalization: str
    A: RationalFunction
    B: RationalFunction
    C: RationalFunction
    start: int
    initial: tuple   # P_0 .. P_start as rational coefficient lists in X

    def __post_init__(self):
        if self.normalization not in ("classical", "monic"):
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if self.start < 1 or len(self.initial) != self.start + 1:
            raise ValueError("need the polynomials P_0 .. P_start, start >= 1")
        if self.A.is_zero():
            raise ValueError("A_n must not vanish identically")

    def coefficients(self, n):
        """``(A_n, B_n, C_n)`` as exact rationals."""
        return self.A(n), self.B(n), self.C(n)


def _table():
    T = {}

    def add(name, norm, A, B, C, init):
        T[name, norm] = OrthogonalFamily(name, norm, A, B, C, len(init) - 1,
                                         tuple(tuple(F(c) for c in p) for p in init))

    zero = _rf([])
    add("chebyshev-t", "classical", _rf([2]), zero, _rf([1]), [[1], [0, 1]])
    add("chebyshev-u", "classical", _rf([2]), zero, _rf([1]), [[1], [0, 2]])
    add("legendre", "classical", _rf([1, 2], [1, 1]), zero, _rf([0, 1], [1, 1]),
        [[1], [0, 1]])
    add("hermite", "classical", _rf([2]), zero, _rf([0, 2]), [[1], [0, 2]])
    add("laguerre", "classical", _rf([-1], [1, 1]), _rf([1, 2], [1, 1]),
        _rf([0, 1], [1, 1]), [[1], [1, -1]])
    # monic T only settles into its constant pattern from n = 2 on
    add("chebyshev-t", "monic", _rf([1]), zero, _rf([F(1, 4)]),
        [[1], [0, 1], [F(-1, 2), 0, 1]])
    add("chebyshev-u", "monic", _rf([1]), zero, _rf([F(1, 4)]), [[1], [0, 1]])
    add("legendre", "monic", _rf([1]), zero, _rf([0, 0, 1], [-1, 0, 4]),
        [[1], [0, 1]])
    add("hermite", "monic", _rf([1]), zero, _rf([0, F(1, 2)]), [[1], [0, 1]])
    add("laguerre", "monic", _rf([1]), _rf([-1, -2]), _rf([0, 0, 1]),
        [[1], [-1, 1]])
    return T


FAMILIES = _table()


def family(name, normalization="classical"):
    try:
        return FAMILIES[name, normalization]
    except KeyError:
        names = sorted({n for n, _ in FAMILIES})
        raise ValueError(f"unknown family {name!r}/{normalization!r}; "
                         f"known: {', '.join(names)}") from None


def _lcm(a, b):
    return pmul(_Q, a, pexact_div(_Q, b, pgcd(_Q, a, b)))


def ortho_recurrence(fam, x, domain):
    """Holonomic recurrence of ``n -> P_n(x)`` over ``domain``.

    With ``L`` the common denominator of ``A, B, C`` the relation at index
    ``m`` is ``L P_{m+2} - (A L x + B L) P_{m+1} + C L P_m = 0`` with all
    polynomials taken at ``m + 1``; it holds from ``m = start - 1`` on.
    """
    L = _lcm(_lcm(fam.A.den, fam.B.den), fam.C.den)
    parts = [pexact_div(_Q, pmul(_Q, f.num, L), f.den) for f in (fam.A, fam.B, fam.C)]
    AL, BL, CL = (pshift(_Q, c, 1) for c in parts)
    L = pshift(_Q, L, 1)
    conv = lambda c: [domain(v) for v in c]
    x = domain(x)
    a1 = padd(domain, [domain.mul(x, v) for v in conv(AL)], conv(BL))
    coeffs = [conv(L), domain.vneg(a1), conv(CL)]
    init = [horner(domain, conv(p), x) for p in fam.initial]
    return HolonomicRecurrence(domain, coeffs, init, offset=fam.start - 1)


def ortho_eval(fam, x, indices, domain=None, mode=None):
    """``P_{n_1}(x), ..., P_{n_l}(x)`` in the order given."""
    if isinstance(fam, str):
        fam = family(fam)
    if domain is None:
        domain = Float64() if isinstance(x, float) else _Q
    indices = [int(i) for i in indices]
    if any(i < 0 for i in indices):
        raise ValueError("indices must be non-negative")
    targets = sorted(set(indices))
    if not targets:
        return []
    rec = ortho_recurrence(fam, x, domain)
    table = dict(zip(targets, multi_eval(rec, targets, mode=mode)))
    return [table[i] for i in indices]
