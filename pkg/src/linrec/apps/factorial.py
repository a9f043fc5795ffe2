"""Factorials at many scattered indices."""

from __future__ import annotations

from ..companion import PolyMatrix
from ..polyrec import ITERATION_THRESHOLD, multi_apply

__all__ = ["multi_factorial", "factorial_matrix"]


def factorial_matrix(domain):
    """The 1 x 1 matrix ``A(N) = (N)``."""
    return PolyMatrix.from_companion(domain, [[domain.zero, domain.one]])


def multi_factorial(indices, domain, threshold=ITERATION_THRESHOLD):
    """``n_1!, ..., n_l!`` in the order given (repeats allowed)."""
    indices = [int(i) for i in indices]
    if any(i < 0 for i in indices):
        raise ValueError("indices must be non-negative")
    targets = sorted(set(indices))
    if not targets:
        return []
    vals = multi_apply(factorial_matrix(domain), [domain.one], targets,
                       mode="general", threshold=threshold)
    table = {t: v[0] for t, v in zip(targets, vals)}
    return [table[i] for i in indices]
