import pytest
from hypothesis import given, settings, strategies as st

from linrec.algebra import PrimeField, Rationals
from linrec.algebra.matrices import identity, mat_vec
from linrec.algebra.polynomial import DensePolynomial
from linrec.companion import PolyMatrix
from linrec.errors import CharacteristicTooSmall
from linrec.polyrec import (BsgsPlan, IntervalSet, choose_nu, giant_step_poly,
                            matrix_factorial, multi_apply, multi_products)

from conftest import NTT, P7, dense_product, iterate_vectors, seeded

Q = Rationals()
F = PrimeField(P7)
G = PrimeField(NTT)


def fact(dom):
    return PolyMatrix.from_companion(dom, [[0, 1]])


def rand_matrix(rng, dom, k, d):
    return PolyMatrix(dom, [[[rng.randint(-5, 5) for _ in range(rng.randint(0, d + 1))]
                             for _ in range(k)] for _ in range(k)])


def rand_companion(rng, dom, k, d, restricted=False):
    top = []
    for j in range(1, k + 1):
        deg = min(d, j) if restricted else d
        c = [rng.randint(-5, 5) for _ in range(deg + 1)]
        top.append(c)
    top[-1][0] = top[-1][0] or 1
    return PolyMatrix.from_companion(dom, top)


# -- nu selection ------------------------------------------------------------

def test_choose_nu_examples():
    assert choose_nu(100, 1, 1).nu == 8
    assert choose_nu(16, 4, 1).nu == 2
    assert choose_nu(2 ** 20, 1, 2 ** 15).nu == 32


@given(st.integers(1, 10 ** 9), st.integers(1, 50), st.integers(1, 10 ** 6))
def test_choose_nu_invariants(n, d, ell):
    nu = choose_nu(n, d, ell).nu
    assert nu & (nu - 1) == 0
    assert nu == 1 or nu * nu * d <= n


def test_plan_validation():
    with pytest.raises(ValueError):
        BsgsPlan(nu=3, n=10, d=1)
    with pytest.raises(ValueError):
        IntervalSet([(5, 3)])


# -- giant steps ---------------------------------------------------------------

def test_giant_step_examples():
    C = giant_step_poly(fact(Q), 2)
    assert [list(e.coeffs) for e in C.entries[0]] == [[2, 3, 1]]
    M = PolyMatrix.constant(Q, [[1, 1], [1, 0]])
    C = giant_step_poly(M, 4)
    assert C(0) == [[5, 3], [3, 2]]


def test_giant_step_pointwise():
    rng = seeded(31)
    A = rand_matrix(rng, Q, 2, 2)
    C = giant_step_poly(A, 4)
    for j in range(6):
        assert C(j) == dense_product(Q, A, j + 1, j + 4)
    C = giant_step_poly(A, 4, shift=7)
    for j in range(7, 12):
        assert C(j) == dense_product(Q, A, j + 1, j + 4)


def test_giant_step_needs_characteristic():
    with pytest.raises(CharacteristicTooSmall):
        giant_step_poly(fact(PrimeField(7)), 8)


# -- matrix factorials -----------------------------------------------------------

def test_matrix_factorial_examples():
    assert matrix_factorial(fact(Q), 5) == [[120]]
    assert matrix_factorial(fact(Q), 0) == [[1]]
    rng = seeded(32)
    A = rand_matrix(rng, F, 2, 2)
    assert matrix_factorial(A, 1000) == dense_product(F, A, 1, 1000)


@pytest.mark.parametrize("dom", [F, Q], ids=["mod", "rat"])
def test_matrix_factorial_vs_iteration(dom):
    rng = seeded(33)
    top = 2000 if dom is F else 400
    for _ in range(4):
        k, d = rng.randint(1, 3), rng.randint(1, 3)
        A = rand_matrix(rng, dom, k, d)
        n = rng.randint(0, top)
        assert matrix_factorial(A, n, threshold=8) == dense_product(dom, A, 1, n)


# -- interval products -------------------------------------------------------------

def test_multi_products_examples():
    assert multi_products(fact(Q), [(1, 5), (3, 6)]) == [[[120]], [[360]]]
    assert multi_products(fact(Q), [(4, 4)]) == [[[4]]]


def test_multi_products_random_intervals():
    rng = seeded(34)
    A = rand_matrix(rng, F, 2, 1)
    pairs = []
    for _ in range(20):
        m = rng.randint(0, 10 ** 4)
        pairs.append((m, rng.randint(m, 10 ** 4)))
    got = multi_products(A, pairs)
    for (m, n), P in zip(pairs, got):
        assert P == dense_product(F, A, m, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3000), st.data())
def test_multi_products_partition(m, data):
    n = data.draw(st.integers(m, 3000))
    t = data.draw(st.integers(m, n))
    rng = seeded(m + 7 * n)
    A = rand_matrix(rng, F, 2, 2)
    whole, left, right = multi_products(A, [(m, n), (m, t), (t + 1, n)] if t < n
                                        else [(m, n), (m, t), (m, t)])
    if t < n:
        from linrec.algebra.matrices import mat_mul
        assert whole == mat_mul(F, right, left)
    else:
        assert whole == left


# -- vectors -------------------------------------------------------------------

def test_multi_apply_examples():
    assert multi_apply(fact(Q), [1], [1, 2, 3, 6]) == [[1], [2], [6], [720]]
    assert multi_apply(fact(Q), [7], [0]) == [[7]]
    fib = PolyMatrix.constant(Q, [[1, 1], [1, 0]])
    assert multi_apply(fib, [1, 0], [10, 20]) == [[89, 55], [10946, 6765]]
    assert multi_apply(fib, [1, 0], [9, 19]) == [[55, 34], [6765, 4181]]


@pytest.mark.parametrize("mode", ["general", "vector", "companion"])
def test_modes_agree(mode):
    rng = seeded(35)
    for _ in range(6):
        k, d = rng.randint(1, 3), rng.randint(0, 3)
        A = rand_companion(rng, F, k, d)
        P0 = [rng.randint(-9, 9) for _ in range(k)]
        idx = sorted(rng.randint(0, 3000) for _ in range(rng.randint(1, 6)))
        ref = iterate_vectors(F, A, P0, idx[-1])
        assert multi_apply(A, P0, idx, mode=mode, threshold=8) == [ref[i] for i in idx]


def test_restricted_degree_mode():
    rng = seeded(36)
    for _ in range(6):
        k, d = rng.randint(1, 3), 3
        A = rand_companion(rng, F, k, d, restricted=True)
        P0 = [rng.randint(-9, 9) for _ in range(k)]
        idx = sorted(rng.randint(0, 3000) for _ in range(4))
        ref = iterate_vectors(F, A, P0, idx[-1])
        got = multi_apply(A, P0, idx, mode="companion-restricted-degree", threshold=8)
        assert got == [ref[i] for i in idx]
        assert got == multi_apply(A, P0, idx, mode="general", threshold=8)


def test_restricted_mode_rejects_wrong_shape():
    A = PolyMatrix.from_companion(Q, [[0, 0, 1]])
    with pytest.raises(ValueError):
        multi_apply(A, [1], [1000], mode="companion-restricted-degree")


def test_companion_mode_singular_factor_falls_back():
    # f_k(N) = N - 3 vanishes inside the interpolation range
    A = PolyMatrix.from_companion(F, [[1], [-3, 1]])
    idx = [100, 1500, 2999]
    ref = iterate_vectors(F, A, [1, 2], idx[-1])
    res = multi_apply(A, [1, 2], idx, mode="companion", threshold=8)
    assert res == [ref[i] for i in idx]
    assert "warning" in res.meta


def test_single_index_matches_factorial():
    rng = seeded(37)
    A = rand_matrix(rng, F, 3, 2)
    P0 = [1, 2, 3]
    for n in (0, 5, 300, 2500):
        assert multi_apply(A, P0, [n])[0] == mat_vec(F, matrix_factorial(A, n), P0)


def test_many_indices_linear_regime():
    A = fact(G)
    n = 2 ** 12
    idx = list(range(1, n + 1))
    G.counter.reset()
    out = multi_apply(A, [1], idx)
    assert G.counter.report().muls <= 8 * n
    f = 1
    for i, v in zip(idx, out):
        f = f * i % NTT
        assert v == [f]


def test_factorial_sqrt_signature():
    counts = []
    for e in (12, 14, 16, 18):
        G.counter.reset()
        multi_apply(fact(G), [1], [2 ** e])
        counts.append(G.counter.report().muls)
    for a, b in zip(counts, counts[1:]):
        assert b <= 3.0 * a
    assert counts[2] < 2 ** 16


def test_identity_for_empty_product():
    A = PolyMatrix.constant(Q, [[2, 0], [0, 3]])
    assert matrix_factorial(A, 0) == identity(Q, 2)


def test_polymatrix_shift():
    A = PolyMatrix(Q, [[[1, 2, 3]]])
    assert A.shifted(2)(5) == A(7)
    assert isinstance(A.entries[0][0], DensePolynomial)


def test_dense_targets_iterate():
    rng = seeded(38)
    A = rand_matrix(rng, F, 2, 2)
    idx = list(range(0, 2000, 3))
    ref = iterate_vectors(F, A, [1, 2], idx[-1])
    res = multi_apply(A, [1, 2], idx)
    assert res == [ref[i] for i in idx]
    assert res.meta["strategy"] == "iteration"
    sparse = multi_apply(A, [1, 2], [5000, 90000])
    assert sparse.meta["strategy"] == "bsgs"
