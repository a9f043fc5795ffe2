import pytest
from hypothesis import given, settings, strategies as st

from linrec.algebra import PrimeField, Rationals
from linrec.constrec import (ConstRecurrence, consecutive_terms, iterate_terms,
                             multi_terms, nth_term)

from conftest import NTT, P7, seeded

Q = Rationals()
F = PrimeField(P7)
G = PrimeField(NTT)

fib = ConstRecurrence(Q, [1, 1], [0, 1])


def rand_rec(rng, dom, k):
    return ConstRecurrence(dom, [dom(rng.randint(-9, 9)) for _ in range(k)],
                           [dom(rng.randint(-9, 9)) for _ in range(k)])


def test_examples():
    assert nth_term(fib, 10) == 55
    assert nth_term(fib, 1) == 1
    assert consecutive_terms(fib, 10, 3) == [55, 89, 144]
    assert consecutive_terms(fib, 0, 2) == [0, 1]
    assert multi_terms(fib, [10, 20]) == [55, 6765]
    assert multi_terms(fib, [0, 1]) == [0, 1]
    rec = ConstRecurrence(F, [3, 1, 4], [1, 5, 9])
    assert nth_term(rec, 100) == iterate_terms(rec, 101)[100]


def test_validation():
    with pytest.raises(ValueError):
        ConstRecurrence(Q, [], [])
    with pytest.raises(ValueError):
        ConstRecurrence(Q, [1, 1], [0])
    with pytest.raises(ValueError):
        multi_terms(fib, [5, 3])
    with pytest.raises(ValueError):
        nth_term(fib, -1)


@pytest.mark.parametrize("dom", [F, Q], ids=["mod", "rat"])
def test_consecutive_matches_iteration(dom):
    rng = seeded(21)
    for _ in range(10):
        k = rng.randint(1, 6)
        rec = rand_rec(rng, dom, k)
        T = 1000 if dom is F else 200
        assert consecutive_terms(rec, 0, T) == iterate_terms(rec, T)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 3000), st.integers(1, 8), st.randoms())
def test_single_index_consistency(k, n, ell, rnd):
    rec = rand_rec(rnd, F, k)
    ref = iterate_terms(rec, n + ell)
    assert nth_term(rec, n) == ref[n]
    assert multi_terms(rec, [n]) == [ref[n]]
    assert consecutive_terms(rec, n, ell) == ref[n:n + ell]


def test_multi_terms_random_k4():
    rng = seeded(22)
    rec = rand_rec(rng, G, 4)
    idx = sorted(rng.randint(0, 10**5) for _ in range(50))
    assert multi_terms(rec, idx) == [nth_term(rec, n) for n in idx]


def test_multi_terms_with_repeats_and_small_k():
    rng = seeded(23)
    rec = rand_rec(rng, F, 5)
    idx = [0, 0, 2, 3, 3, 4, 17, 17, 1000]
    ref = iterate_terms(rec, 1001)
    assert multi_terms(rec, idx) == [ref[i] for i in idx]


def test_nth_term_log_signature():
    rng = seeded(24)
    rec = rand_rec(rng, G, 4)
    counts = []
    for n in (2 ** 10, 2 ** 20, 2 ** 40):
        G.counter.reset()
        nth_term(rec, n)
        counts.append(G.counter.report().muls)
    assert counts[1] <= 2.2 * counts[0]
    assert counts[2] <= 2.2 * counts[1]


def test_multi_terms_dense_targets():
    rng = seeded(63)
    rec = rand_rec(rng, G, 3)
    idx = list(range(0, 3000, 2))
    seq = iterate_terms(rec, idx[-1] + 1)
    G.counter.reset()
    assert multi_terms(rec, idx) == [seq[i] for i in idx]
    assert G.counter.report().muls <= 3 * idx[-1] + 3
