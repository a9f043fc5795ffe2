import pytest

from linrec.algebra import PrimeField, Rationals
from linrec.algebra.matrices import identity, mat_mul
from linrec.companion import (CompanionMatrix, PolyMatrix, chain_product,
                              chain_product_blocked, degree_pattern_check,
                              naive_chain, sliding_window_products)
from linrec.errors import DimensionMismatch, NonInvertibleFactor

from conftest import P7, seeded

Q = Rationals()
F = PrimeField(P7)


def rand_companion(rng, dom, k, invertible=False, sub=None):
    top = [dom(rng.randint(-9, 9)) for _ in range(k)]
    if invertible and dom.is_zero(top[-1]):
        top[-1] = dom.one
    return CompanionMatrix(dom, top, sub)


def test_dense_form():
    C = CompanionMatrix(Q, [1, 2, 3])
    assert C.dense() == [[1, 2, 3], [1, 0, 0], [0, 1, 0]]


def test_chain_examples():
    C = CompanionMatrix(Q, [5, 7])
    assert chain_product([C]) == C.dense()
    assert chain_product([CompanionMatrix(Q, [j]) for j in range(1, 5)]) == [[24]]


@pytest.mark.parametrize("dom", [F, Q], ids=["mod", "rat"])
def test_chain_variants_agree(dom):
    rng = seeded(11)
    for k in range(1, 5):
        for m in range(1, 11):
            for _ in range(5):
                Fs = [rand_companion(rng, dom, k) for _ in range(m)]
                ref = naive_chain(dom, [f.dense() for f in Fs])
                assert chain_product(Fs) == ref
                assert chain_product_blocked(Fs) == ref


def test_blocked_tail_and_square():
    rng = seeded(12)
    for m, k in ((2, 2), (7, 3)):
        Fs = [rand_companion(rng, Q, k) for _ in range(m)]
        assert chain_product_blocked(Fs) == chain_product(Fs)


def test_generalised_subdiagonal():
    rng = seeded(13)
    Fs = [rand_companion(rng, Q, 3, sub=Q(rng.randint(1, 5))) for _ in range(6)]
    assert chain_product(Fs) == naive_chain(Q, [f.dense() for f in Fs])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        chain_product([CompanionMatrix(Q, [1]), CompanionMatrix(Q, [1, 2])])


def test_sliding_examples():
    Fs = [CompanionMatrix(Q, [j]) for j in range(1, 5)]
    assert sliding_window_products(Fs, 2) == [[[2]], [[6]], [[12]]]
    assert sliding_window_products(Fs, 4) == [chain_product(Fs)]


@pytest.mark.parametrize("dom", [F, Q], ids=["mod", "rat"])
def test_sliding_windows_match_dense(dom):
    rng = seeded(14)
    for k in range(1, 5):
        for m in range(1, 11):
            for _ in range(5):
                Fs = [rand_companion(rng, dom, k, invertible=True) for _ in range(m)]
                w = rng.randint(1, m)
                got = sliding_window_products(Fs, w)
                assert len(got) == m - w + 1
                for j, P in enumerate(got):
                    assert P == naive_chain(dom, [f.dense() for f in Fs[j:j + w]])


def test_sliding_reports_singular_factor():
    Fs = [CompanionMatrix(Q, [1, 1]), CompanionMatrix(Q, [1, 0]), CompanionMatrix(Q, [2, 1])]
    with pytest.raises(NonInvertibleFactor) as info:
        sliding_window_products(Fs, 1)
    assert info.value.index == 2


@pytest.mark.parametrize("dom", [F, Q], ids=["mod", "rat"])
def test_inverse(dom):
    rng = seeded(15)
    for _ in range(100):
        k = rng.randint(1, 5)
        C = rand_companion(rng, dom, k, invertible=True,
                           sub=dom(rng.randint(1, 4)) if rng.random() < .3 else None)
        assert mat_mul(dom, C.dense(), C.inverse_dense()) == identity(dom, k)


def _poly_companion(rng, k, deg_of):
    top = [[Q(rng.randint(-5, 5)) for _ in range(deg_of(j) + 1)] for j in range(1, k + 1)]
    return PolyMatrix.from_companion(Q, top)


def test_degree_growth_by_one_per_factor():
    # a vector with deg(b_j) <= m - j maps to one with deg(c_j) <= m + 1 - j
    from linrec.algebra.polynomial import DensePolynomial
    rng = seeded(16)
    for _ in range(50):
        k, m = rng.randint(1, 4), rng.randint(3, 8)
        A = _poly_companion(rng, k, lambda j: rng.randint(0, j))
        b = [DensePolynomial(Q, [rng.randint(-5, 5) for _ in range(m - j + 1)])
             for j in range(1, k + 1)]
        c = []
        for row in A.entries:
            acc = DensePolynomial(Q, [])
            for e, v in zip(row, b):
                acc = acc + e * v
            c.append(acc)
        for j, cj in enumerate(c, start=1):
            assert cj.is_zero() or cj.degree <= m + 1 - j


def test_degree_pattern_examples():
    rng = seeded(17)
    A = _poly_companion(rng, 3, lambda j: j)
    assert degree_pattern_check(A, 1)
    B = A
    for _ in range(2):
        B = B @ _poly_companion(rng, 3, lambda j: rng.randint(0, j))
    assert degree_pattern_check(B, 3)
    bad = PolyMatrix(Q, [[[1], [0]], [[0, 0, 0, 1], [1]]])
    assert not degree_pattern_check(bad, 1)
