import random

import pytest

from linrec.algebra import PrimeField, Rationals
from linrec.algebra.matrices import identity, mat_mul, mat_vec

P7 = 1000000007
NTT = 998244353


@pytest.fixture(params=["mod", "rat"])
def exact(request):
    return PrimeField(P7) if request.param == "mod" else Rationals()


def rand_poly(rng, dom, deg, bound=9):
    c = [dom(rng.randint(-bound, bound)) for _ in range(deg + 1)]
    if deg >= 0 and dom.is_zero(c[-1]):
        c[-1] = dom.one
    return c


def horner_eval(dom, c, x):
    acc = dom.zero
    for v in reversed(c):
        acc = dom.add(dom.mul(acc, x), v)
    return acc


def dense_product(dom, A, lo, hi):
    """``A(hi) ... A(lo)`` by plain iteration (identity when empty)."""
    P = identity(dom, A.k)
    for j in range(lo, hi + 1):
        P = mat_mul(dom, A(j), P)
    return P


def iterate_vectors(dom, A, P0, top):
    out, v = [list(P0)], list(P0)
    for j in range(1, top + 1):
        v = mat_vec(dom, A(j), v)
        out.append(v)
    return out


def seeded(seed):
    return random.Random(seed)
