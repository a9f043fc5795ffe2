"""Small dense matrices over a domain, as lists of rows (classical arithmetic)."""

from __future__ import annotations

__all__ = ["identity", "mat_mul", "mat_vec", "mat_add", "transpose", "zeros"]


def identity(dom, k):
    z, o = dom.zero, dom.one
    return [[o if i == j else z for j in range(k)] for i in range(k)]


def zeros(dom, r, c):
    return [[dom.zero] * c for _ in range(r)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_mul(dom, A, B):
    if not A:
        return []
    Bt = transpose(B)
    dot = dom.dot
    return [[dot(row, col) for col in Bt] for row in A]


def mat_vec(dom, A, v):
    dot = dom.dot
    return [dot(row, v) for row in A]


def mat_add(dom, A, B):
    return [dom.vadd(a, b) for a, b in zip(A, B)]
