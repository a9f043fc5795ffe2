import math
from fractions import Fraction

import pytest

from linrec.algebra import Float64, PrimeField, Rationals
from linrec.errors import DomainError
from linrec.holonomic import (HolonomicRecurrence, annihilates, closure_convolution,
                              closure_product, closure_sum, iterate_terms, multi_eval,
                              rec_to_theta, theta_to_rec)
from linrec.holonomic.closure import VERIFY_WINDOW
from linrec.holonomic.polyops import integer_roots

from conftest import P7, seeded

Q = Rationals()
TERMS = 50


def fib(dom=Q):
    return HolonomicRecurrence(dom, [[1], [-1], [-1]], [0, 1])


def geometric(r, dom=Q):
    return HolonomicRecurrence(dom, [[1], [-r]], [1])


def factorial(dom=Q):
    return HolonomicRecurrence(dom, [[1], [-1, -1]], [1])


def ones(dom=Q):
    return geometric(1, dom)


def delta(dom=Q):
    return HolonomicRecurrence(dom, [[1], []], [1])


def zero(dom=Q):
    return HolonomicRecurrence(dom, [[1], [-1]], [0])


def target(op, r1, r2, count):
    dom = r1.domain
    P, R = iterate_terms(r1, count), iterate_terms(r2, count)
    if op is closure_sum:
        return [dom.add(a, b) for a, b in zip(P, R)]
    if op is closure_product:
        return [dom.mul(a, b) for a, b in zip(P, R)]
    return [dom.dot(P[:n + 1], R[n::-1]) for n in range(count)]


def check(op, r1, r2):
    out = op(r1, r2)
    seq = target(op, r1, r2, out.offset + out.k + TERMS)
    assert list(out.initial) == seq[:out.offset + out.k]
    assert annihilates(out, seq, out.offset, TERMS)
    assert iterate_terms(out, len(seq)) == seq
    return out


def rand_rec(rng, dom, k, d):
    a0 = [dom(rng.randint(1, 4))] + [dom(rng.randint(0, 3)) for _ in range(d)]
    rest = [[dom(rng.randint(-4, 4)) for _ in range(d + 1)] for _ in range(k)]
    if all(dom.is_zero(c) for c in rest[-1]):
        rest[-1][0] = dom.one
    return HolonomicRecurrence(dom, [a0] + rest, [dom(rng.randint(-3, 3)) for _ in range(k)])


# -- examples -----------------------------------------------------------------

def test_sum_fib_fib():
    out = check(closure_sum, fib(), fib())
    assert out.k == 2 and out.d == 0


def test_sum_factorial_and_powers():
    out = check(closure_sum, factorial(), geometric(2))
    assert out.k <= 2


def test_sum_fib_and_geometric_is_exact_relation():
    out = check(closure_sum, fib(), geometric(2))
    assert out.k == 3


def test_sum_with_zero_returns_operand():
    out = closure_sum(fib(), zero())
    assert annihilates(out, iterate_terms(fib(), 60))


def test_product_factorial_powers():
    out = check(closure_product, factorial(), geometric(2))
    assert out.k == 1
    # R_{n+1} = 2 (n+1) R_n up to a constant factor
    a0, a1 = out.coeff_lists()
    assert len(a0) == 1 and a1 == [-2 * a0[0], -2 * a0[0]]


def test_product_with_ones():
    out = check(closure_product, fib(), ones())
    assert annihilates(out, iterate_terms(fib(), 60))


def test_product_fib_squared():
    out = check(closure_product, fib(), fib())
    assert out.k <= 4


def test_product_with_zero():
    out = closure_product(fib(), zero())
    assert all(x == 0 for x in iterate_terms(out, 20))


def test_convolution_ones():
    out = check(closure_convolution, ones(), ones())
    assert iterate_terms(out, 10) == list(range(1, 11))
    assert out.k == 1 or out.k == 2


def test_convolution_delta():
    out = check(closure_convolution, delta(), fib())
    assert annihilates(out, iterate_terms(fib(), 60))


def test_convolution_fib_geometric():
    check(closure_convolution, fib(), geometric(2))


def test_convolution_hypergeometric():
    # sum_m 1/m! * 1/(n-m)! = 2^n / n!
    inv_fact = HolonomicRecurrence(Q, [[1, 1], [-1]], [1])
    out = check(closure_convolution, inv_fact, inv_fact)
    assert multi_eval(out, [30]) == [Fraction(2 ** 30, math.factorial(30))]


def test_geometric_convolution_needs_depth_two():
    # 2^n * 3^n (convolution) = 3^{n+1} - 2^{n+1}: depth 1 + 1 = 2 is forced
    out = check(closure_convolution, geometric(2), geometric(3))
    assert out.k == 2


@pytest.mark.parametrize("op", [closure_sum, closure_product, closure_convolution])
def test_float_domain_rejected(op):
    F = Float64()
    with pytest.raises(DomainError):
        op(fib(F), fib(F))


def test_mixed_domains_rejected():
    with pytest.raises(DomainError):
        closure_sum(fib(), fib(PrimeField(P7)))


# -- properties ----------------------------------------------------------------

@pytest.mark.parametrize("op", [closure_sum, closure_product, closure_convolution])
def test_random_pairs_annihilate(op, exact):
    rng = seeded(hash(op.__name__) % 1000)
    for _ in range(10):
        r1 = rand_rec(rng, exact, rng.randint(1, 3), rng.randint(0, 2))
        r2 = rand_rec(rng, exact, rng.randint(1, 3), rng.randint(0, 2))
        check(op, r1, r2)


def test_sum_bounds_hold():
    rng = seeded(61)
    for _ in range(15):
        k, l, d = rng.randint(1, 3), rng.randint(1, 3), rng.randint(0, 2)
        out = closure_sum(rand_rec(rng, Q, k, d), rand_rec(rng, Q, l, d))
        assert out.k <= k + l
        assert out.d <= (k + l) ** 2 * d


def test_product_depth_bound_holds():
    rng = seeded(62)
    for _ in range(15):
        k, l, d = rng.randint(1, 3), rng.randint(1, 3), rng.randint(0, 2)
        out = closure_product(rand_rec(rng, Q, k, d), rand_rec(rng, Q, l, d))
        assert out.k <= k * l


def test_offset_moves_past_integer_roots(exact):
    rng = seeded(63)
    for _ in range(25):
        r1 = rand_rec(rng, exact, rng.randint(1, 3), rng.randint(1, 2))
        r2 = rand_rec(rng, exact, rng.randint(1, 3), rng.randint(1, 2))
        for op in (closure_sum, closure_product):
            out = op(r1, r2)
            assert all(r < out.offset for r in integer_roots(exact, out.coeff_lists()[0]))


def test_operand_offset_is_respected():
    # n P_{n+1} = (n+1) P_n holds only from n = 1 on: P_n = n
    ident = HolonomicRecurrence(Q, [[0, 1], [-1, -1]], [0, 1], offset=1)
    for op in (closure_sum, closure_product, closure_convolution):
        out = check(op, ident, ones())
        assert all(r < out.offset for r in integer_roots(Q, out.coeff_lists()[0]))


def test_output_usable_by_multi_eval():
    out = closure_product(fib(PrimeField(P7)), fib(PrimeField(P7)))
    ref = iterate_terms(out, 3001)
    assert multi_eval(out, [10, 2999, 3000], threshold=8) == [ref[10], ref[2999], ref[3000]]


# -- generating-function conversions ---------------------------------------------

def _apply_theta_operator(dom, lam, coeffs):
    """Coefficients of sum_s lam[s](x) theta^s applied to a series."""
    n = len(coeffs)
    out = [dom.zero] * n
    for s, ls in enumerate(lam):
        for j, c in enumerate(ls):
            for m in range(n - j):
                t = dom.mul(dom.pow(dom(m), s), coeffs[m])
                out[m + j] = dom.add(out[m + j], dom.mul(c, t))
    return out


@pytest.mark.parametrize("rec", [fib(), factorial(), ones(),
                                 HolonomicRecurrence(Q, [[1, 1], [-1]], [1]),
                                 HolonomicRecurrence(Q, [[2, 1], [0], [-1, 3]], [1, 2, 7], 1)])
def test_theta_operator_annihilates_series(rec):
    lam = rec_to_theta(rec)
    seq = iterate_terms(rec, 80)
    residue = _apply_theta_operator(Q, lam, seq)
    # the truncation only disturbs the top few coefficients
    assert all(x == 0 for x in residue[:60])


def test_theta_round_trip_gives_valid_relation():
    rec = HolonomicRecurrence(Q, [[1, 1], [-2], [0, 1]], [1, 3])
    coeffs = theta_to_rec(Q, rec_to_theta(rec))
    K = len(coeffs) - 1
    seq = iterate_terms(rec, 80)
    probe = HolonomicRecurrence(Q, coeffs, seq[:K])
    assert annihilates(probe, seq)


def test_verify_window_covers_checked_terms():
    assert VERIFY_WINDOW >= TERMS
