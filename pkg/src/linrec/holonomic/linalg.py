"""Fraction-free linear algebra over K[N] and K(N).

Matrices of rational functions are handled column by column: each column is
brought to a common denominator, elimination runs on the numerators with
Bareiss' exact divisions, and the denominators are folded back in at the
end.  No gcd is taken during elimination.
"""

from __future__ import annotations

from ..errors import NoDependency
from .polyops import (content_normalize, padd, pexact_div, pgcd, pmul, psub,
                      pscale)
from .ratfunc import RationalFunction

__all__ = ["bareiss_det", "first_dependency", "nullrow", "symbolic_inverse",
           "column_numerators"]


def _lcm(dom, a, b):
    g = pgcd(dom, a, b)
    return pmul(dom, a, pexact_div(dom, b, g))


def column_numerators(dom, M):
    """Split a rational matrix into polynomial columns and column
    denominators: ``M[i][j] = num[j][i] / den[j]``."""
    rows = [[_as_rf(dom, x) for x in row] for row in M]
    ncols = len(rows[0]) if rows else 0
    nums, dens = [], []
    for j in range(ncols):
        D = [dom.one]
        for row in rows:
            D = _lcm(dom, D, row[j].den)
        col = [pmul(dom, row[j].num, pexact_div(dom, D, row[j].den)) for row in rows]
        nums.append(col)
        dens.append(D)
    return nums, dens


def _as_rf(dom, x):
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(dom, x)


def bareiss_det(dom, M):
    """Determinant of a square polynomial matrix (entries are lists)."""
    n = len(M)
    if n == 0:
        return [dom.one]
    W = [list(map(list, row)) for row in M]
    prev, sign = [dom.one], 1
    for j in range(n):
        piv = next((i for i in range(j, n) if W[i][j]), None)
        if piv is None:
            return []
        if piv != j:
            W[j], W[piv] = W[piv], W[j]
            sign = -sign
        for i in range(j + 1, n):
            for c in range(j + 1, n):
                W[i][c] = pexact_div(dom, psub(dom, pmul(dom, W[j][j], W[i][c]),
                                               pmul(dom, W[i][j], W[j][c])), prev)
            W[i][j] = []
        prev = W[j][j]
    return prev if sign > 0 else dom.vneg(prev)


def first_dependency(dom, columns):
    """Smallest K such that column K depends on columns ``0..K-1``, together
    with polynomial ``mu_0..mu_K`` (``mu_K != 0``) and
    ``sum_j mu_j columns[j] = 0``.

    Bareiss elimination with row pivoting; back substitution in the
    fraction-free triangular form is exact because every ``mu_j`` is a
    maximal minor (Cramer).
    """
    if not columns:
        raise NoDependency("no columns")
    r = len(columns[0])
    c = len(columns)
    W = [[list(columns[j][i]) for j in range(c)] for i in range(r)]
    prev = [dom.one]
    K = None
    for j in range(c):
        piv = next((i for i in range(j, r) if W[i][j]), None)
        if piv is None:
            K = j
            break
        if piv != j:
            W[j], W[piv] = W[piv], W[j]
        for i in range(j + 1, r):
            for cc in range(j + 1, c):
                W[i][cc] = pexact_div(dom, psub(dom, pmul(dom, W[j][j], W[i][cc]),
                                                pmul(dom, W[i][j], W[j][cc])), prev)
            W[i][j] = []
        prev = W[j][j]
    if K is None:
        raise NoDependency(f"the {c} columns are linearly independent")
    mu = [None] * (K + 1)
    mu[K] = prev if K else [dom.one]
    for j in range(K - 1, -1, -1):
        acc = pmul(dom, W[j][K], mu[K])
        for t in range(j + 1, K):
            acc = padd(dom, acc, pmul(dom, W[j][t], mu[t]))
        mu[j] = dom.vneg(pexact_div(dom, acc, W[j][j]))
    return K, mu


def nullrow(M, cols=None, domain=None):
    """Nonzero polynomial vector v (gcd 1, first nonzero entry monic) with
    ``M v = 0``, supported on the shortest dependent prefix of the columns.

    ``M`` is a list of rows whose entries are :class:`RationalFunction`,
    coefficient lists or scalars; ``cols`` restricts to the first columns.
    """
    dom = domain
    if dom is None:
        dom = next(x.domain for row in M for x in row if isinstance(x, RationalFunction))
    if cols is not None:
        M = [row[:cols] for row in M]
    nums, dens = column_numerators(dom, M)
    K, mu = first_dependency(dom, nums)
    lam = [pmul(dom, m, D) for m, D in zip(mu, dens)]
    lam = content_normalize(dom, lam)
    lam += [[] for _ in range(len(nums) - K - 1)]
    return [RationalFunction(dom, v) for v in lam]


def symbolic_inverse(dom, nums, dens):
    """Inverse of the matrix whose column j is ``nums[j] / dens[j]``.

    Returns ``(numerators, common_denominator)`` with ``inverse[i][j] =
    numerators[i][j] / common_denominator``: the adjugate of the numerator
    matrix, rows rescaled by the column denominators, over its determinant.
    """
    k = len(nums)
    N = [[nums[j][i] for j in range(k)] for i in range(k)]
    det = bareiss_det(dom, N)
    if not det:
        raise ZeroDivisionError("singular matrix")
    out = []
    for i in range(k):
        row = []
        for j in range(k):
            minor = [[N[a][b] for b in range(k) if b != i] for a in range(k) if a != j]
            cof = bareiss_det(dom, minor)
            if (i + j) % 2:
                cof = dom.vneg(cof)
            row.append(pmul(dom, list(dens[i]), cof))
        out.append(row)
    inv = dom.inv(det[-1])
    return [[pscale(dom, inv, x) for x in row] for row in out], pscale(dom, inv, det)
