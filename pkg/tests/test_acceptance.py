"""Acceptance checks; each test prints one PASS/FAIL line."""

import math
import random
from fractions import Fraction

from linrec.algebra import DensePolynomial, Float64, PrimeField, Rationals, newton_inverse_lists
from linrec.algebra.matrices import mat_vec
from linrec.algebra.polynomial import mul_lists
from linrec.apps import (INVERSE, SeriesSpec, family, inverse_coeff_range,
                         inverse_top_coeffs, mixed_coeffs, multi_factorial, ortho_eval,
                         power_coeffs_at, power_top_coeffs, series_eval)
from linrec.apps import orthogonal
from linrec.companion import PolyMatrix
from linrec.constrec import ConstRecurrence, multi_terms, nth_term
from linrec.constrec import iterate_terms as const_iterate
from linrec.errors import ScaleVanishes
from linrec.holonomic import (HolonomicRecurrence, annihilates, closure_convolution,
                              closure_product, closure_sum, iterate_terms, multi_eval)
from linrec.polyrec import matrix_factorial, multi_apply, multi_products

from conftest import NTT, P7, dense_product, iterate_vectors

Q = Rationals()


def report(capsys, num, title, ok, detail=""):
    with capsys.disabled():
        print(f"\ncriterion {num} {'PASS' if ok else 'FAIL'}: {title}"
              + (f" ({detail})" if detail else ""))
    assert ok, detail


def counted(dom, fn):
    dom.counter.reset()
    fn()
    return dom.counter.report().muls


# -- 1. oracle equivalence ---------------------------------------------------------

def _rand_matrix(rng, dom, k, d):
    return PolyMatrix(dom, [[[rng.randint(-5, 5) for _ in range(rng.randint(0, d + 1))]
                             for _ in range(k)] for _ in range(k)])


def _rand_holonomic(rng, dom, k, d):
    a0 = [rng.randint(1, 5) for _ in range(d + 1)]
    rest = [[rng.randint(-5, 5) for _ in range(rng.randint(0, d + 1))] for _ in range(k)]
    if not rest[-1]:
        rest[-1] = [1]
    return HolonomicRecurrence(dom, [a0] + rest, [rng.randint(-5, 5) for _ in range(k)])


def _indices(rng, top, count):
    return sorted(rng.sample(range(top + 1), count))


def _instance(rng, dom, top, kind):
    k, d = rng.randint(1, 4), rng.randint(0, 3)
    if kind == "nth_term":
        rec = ConstRecurrence(dom, [rng.randint(-9, 9) for _ in range(k)],
                              [rng.randint(-9, 9) for _ in range(k)])
        n = rng.randint(0, top)
        return nth_term(rec, n) == const_iterate(rec, n + 1)[n]
    if kind == "multi_terms":
        rec = ConstRecurrence(dom, [rng.randint(-9, 9) for _ in range(k)],
                              [rng.randint(-9, 9) for _ in range(k)])
        idx = _indices(rng, top, rng.randint(1, 8))
        seq = const_iterate(rec, idx[-1] + 1)
        return multi_terms(rec, idx) == [seq[i] for i in idx]
    A = _rand_matrix(rng, dom, k, d)
    if kind == "matrix_factorial":
        n = rng.randint(0, top)
        return matrix_factorial(A, n) == dense_product(dom, A, 1, n)
    if kind == "multi_products":
        pairs = []
        for _ in range(rng.randint(1, 4)):
            m = rng.randint(0, top)
            pairs.append((m, rng.randint(m, top)))
        return multi_products(A, pairs) == [dense_product(dom, A, m, n) for m, n in pairs]
    if kind == "multi_apply":
        P0 = [rng.randint(-9, 9) for _ in range(k)]
        idx = _indices(rng, top, rng.randint(1, 6))
        ref = iterate_vectors(dom, A, P0, idx[-1])
        return multi_apply(A, P0, idx) == [ref[i] for i in idx]
    rec = _rand_holonomic(rng, dom, k, d)
    idx = _indices(rng, top, rng.randint(1, 6))
    try:
        seq = iterate_terms(rec, idx[-1] + 1)
        want = [seq[i] for i in idx]
    except ScaleVanishes as e:
        want = ("vanishes", e.n)
    try:
        got = multi_eval(rec, idx)
    except ScaleVanishes as e:
        got = ("vanishes", e.n)
    return got == want


KINDS = ["nth_term", "multi_terms", "matrix_factorial", "multi_products",
         "multi_apply", "multi_eval"]


def test_criterion_1_oracle_equivalence(capsys):
    rng = random.Random(2024)
    bad = []
    # 150 instances over Z/p up to 10^4 and 50 over Q up to 2000
    plan = [(PrimeField(P7), 10 ** 4)] * 150 + [(Q, 2000)] * 50
    for i, (dom, top) in enumerate(plan):
        kind = KINDS[i % len(KINDS)]
        if not _instance(rng, dom, top, kind):
            bad.append((i, kind, dom.kind))
    report(capsys, 1, "200 random instances equal naive iteration", not bad,
           f"mismatches {bad}" if bad else "150 over Z/1000000007, 50 over Q")


# -- 2. square-root signature -------------------------------------------------------

def test_criterion_2_sqrt_signature(capsys):
    dom = PrimeField(NTT)
    T = family("chebyshev-t")
    exps = (12, 14, 16, 18)
    fact = [counted(dom, lambda: multi_factorial([1 << e], dom)) for e in exps]
    cheb = [counted(dom, lambda: ortho_eval(T, dom(3), [1 << e], dom)) for e in exps]
    # with x fixed Chebyshev has constant coefficients; Legendre keeps n in them
    leg = [counted(dom, lambda: ortho_eval(family("legendre"), dom(3), [1 << e], dom))
           for e in exps]
    series = (fact, cheb, leg)
    ratios = [b / a for c in series for a, b in zip(c, c[1:])]
    ok = max(ratios) <= 3.0 and fact[2] < 1 << 16 and cheb[2] < 1 << 16
    report(capsys, 2, "single-index counts grow like sqrt(n)", ok,
           f"factorial {fact}, chebyshev {cheb}, legendre {leg}, "
           f"max ratio {max(ratios):.2f}")


# -- 3. logarithmic signature -------------------------------------------------------

def test_criterion_3_log_signature(capsys):
    dom = PrimeField(P7)
    rec = ConstRecurrence(dom, [3, 1, 4, 1], [2, 7, 1, 8])
    counts = [counted(dom, lambda: nth_term(rec, 1 << e)) for e in (10, 20, 40)]
    ratios = [b / a for a, b in zip(counts, counts[1:])]
    report(capsys, 3, "nth_term count(n^2) <= 2.2 count(n) for k = 4", max(ratios) <= 2.2,
           f"counts {counts}, ratios {[round(r, 2) for r in ratios]}")


# -- 4. multi-evaluation consistency ------------------------------------------------

def test_criterion_4_multi_consistency(capsys):
    dom = PrimeField(NTT)
    rng = random.Random(4)
    n = 1 << 12
    every = list(range(1, n + 1))
    some = _indices(rng, 20000, 12)
    crec = ConstRecurrence(dom, [3, 1, 4, 1], [2, 7, 1, 8])
    hrec = HolonomicRecurrence(dom, [[1, 2], [-3, 1], [5, 0, 1]], [1, 2])
    A = PolyMatrix(dom, [[[1, 1], [2]], [[0, 3], [1, 0, 1]]])
    T, P = family("chebyshev-t"), family("legendre")
    x = dom(3)
    cases = {
        "multi_terms": (lambda idx: multi_terms(crec, idx),
                        lambda i: nth_term(crec, i)),
        "multi_eval": (lambda idx: multi_eval(hrec, idx),
                       lambda i: multi_eval(hrec, [i])[0]),
        "multi_apply": (lambda idx: multi_apply(A, [1, 1], idx),
                        lambda i: mat_vec(dom, matrix_factorial(A, i), [1, 1])),
        "factorial": (lambda idx: multi_factorial(idx, dom),
                      lambda i: multi_factorial([i], dom)[0]),
        "chebyshev": (lambda idx: ortho_eval(T, x, idx, dom),
                      lambda i: ortho_eval(T, x, [i], dom)[0]),
        "legendre": (lambda idx: ortho_eval(P, x, idx, dom),
                     lambda i: ortho_eval(P, x, [i], dom)[0]),
    }
    bad, counts = [], {}
    for name, (multi, single) in cases.items():
        if list(multi(some)) != [single(i) for i in some]:
            bad.append(name)
        dom.counter.reset()
        out = list(multi(every))
        counts[name] = dom.counter.report().muls
        probe = rng.sample(every, 8)
        if [out[i - 1] for i in probe] != [single(i) for i in probe]:
            bad.append(name + " (all indices)")
    worst = max(counts.values())
    ok = not bad and worst <= 8 * n
    report(capsys, 4, "multi equals single evaluation, all of 1..4096 within 8n", ok,
           f"mismatches {bad}, counts {counts}, limit {8 * n}")


# -- 5. closure bounds --------------------------------------------------------------

def _closure_operand(rng, k, d):
    a0 = [rng.randint(1, 4)] + [rng.randint(0, 3) for _ in range(d)]
    rest = [[rng.randint(-4, 4) for _ in range(d + 1)] for _ in range(k)]
    if not any(rest[-1]):
        rest[-1][0] = 1
    return HolonomicRecurrence(Q, [a0] + rest, [rng.randint(-3, 3) for _ in range(k)])


def _target(op, r1, r2, count):
    P, R = iterate_terms(r1, count), iterate_terms(r2, count)
    if op is closure_sum:
        return [a + b for a, b in zip(P, R)]
    if op is closure_product:
        return [a * b for a, b in zip(P, R)]
    return [sum(P[i] * R[n - i] for i in range(n + 1)) for n in range(count)]


def test_criterion_5_closure_bounds(capsys):
    rng = random.Random(5)
    ops = {"sum": closure_sum, "product": closure_product, "convolution": closure_convolution}
    violations, wrong, worst = [], [], {}
    for pair in range(25):
        k, l, d = rng.randint(1, 3), rng.randint(1, 3), rng.randint(0, 2)
        r1, r2 = _closure_operand(rng, k, d), _closure_operand(rng, l, d)
        for name, op in ops.items():
            out = op(r1, r2)
            depth = k + l if name == "sum" else k * l
            degree = (k + l) ** 2 * d if name == "sum" else k * k * l * l * d
            seq = _target(op, r1, r2, out.offset + out.k + 50)
            if list(out.initial) != seq[:out.offset + out.k] or \
                    not annihilates(out, seq, out.offset, 50):
                wrong.append((pair, name))
            for what, got, bound in (("depth", out.k, depth), ("degree", out.d, degree)):
                key = f"{name} {what}"
                worst[key] = max(worst.get(key, 0), got - bound)
                if got > bound:
                    violations.append((pair, key, got, bound))
    over = {key: v for key, v in worst.items() if v > 0}
    report(capsys, 5, "closure outputs annihilate the target within the depth and degree bounds",
           not wrong and not violations,
           f"annihilation failures {wrong}; {len(violations)} bound violations, "
           f"largest excess per bound {over}")


# -- 6. partial polynomial arithmetic ---------------------------------------------

def _full_power(dom, a, m):
    out = [dom.one]
    for _ in range(m):
        out = mul_lists(dom, out, a)
    return out


def _series_mul(dom, a, b, n):
    return (mul_lists(dom, a[:n], b[:n]) + [dom.zero] * n)[:n]


def test_criterion_6_partial_arithmetic(capsys):
    rng = random.Random(6)
    bad = []
    one_x = DensePolynomial(Q, [1, 1])
    for m in range(61):
        if power_coeffs_at(one_x, m, range(m + 1)) != [math.comb(m, i) for i in range(m + 1)]:
            bad.append(("binomial", m))
    fib = [0, 1]
    while len(fib) < 1003:
        fib.append(fib[-1] + fib[-2])
    if inverse_coeff_range(DensePolynomial(Q, [1, -1, -1]), 0, 1001) != fib[1:1002]:
        bad.append("fibonacci")
    for trial in range(20):
        d = rng.randint(1, 5)
        a = [rng.randint(-9, 9) for _ in range(d + 1)]
        a[0], a[-1] = a[0] or 1, a[-1] or 1
        p = DensePolynomial(Q, a)
        m = rng.randint(1, 512 // d)
        ell = rng.randint(1, d + 8)
        full = _full_power(Q, a, m)
        if power_top_coeffs(p, m, max(ell, d)) != (full[::-1] + [0] * 20)[:max(ell, d)]:
            bad.append(("power_top", trial))
        n = rng.randint(d, 512)
        ell = rng.randint(d, n)
        inv = newton_inverse_lists(Q, a, n)
        inv += [Q.zero] * (n - len(inv))
        if inverse_top_coeffs(p, n, ell) != inv[n - ell:][::-1]:
            bad.append(("inverse_top", trial))
    for trial in range(6):
        a = [1] + [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))]
        b = [1] + [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))]
        m1, m2, n = rng.randint(0, 6), rng.randint(1, 5), 201
        num = (_full_power(Q, a, m1) + [Q.zero] * n)[:n]
        if mixed_coeffs(a, m1, b, INVERSE, range(n), Q) != \
                _series_mul(Q, num, newton_inverse_lists(Q, b, n), n):
            bad.append(("mixed inverse", trial))
        if mixed_coeffs(a, m1, b, m2, range(n), Q) != \
                _series_mul(Q, num, (_full_power(Q, b, m2) + [Q.zero] * n)[:n], n):
            bad.append(("mixed power", trial))
    report(capsys, 6, "partial coefficients equal full expansions", not bad,
           f"mismatches {bad}" if bad else "")


# -- 7. orthogonal uniformity -------------------------------------------------------

def test_criterion_7_orthogonal_uniformity(capsys, monkeypatch):
    seen = []
    real = orthogonal.multi_eval
    monkeypatch.setattr(orthogonal, "multi_eval",
                        lambda rec, idx, **kw: seen.append(rec) or real(rec, idx, **kw))
    x = Fraction(3, 7)
    names = ["chebyshev-t", "chebyshev-u", "legendre", "hermite", "laguerre"]
    # each family must agree with its own iteration through one shared route
    bad = []
    for name in names:
        got = ortho_eval(family(name), x, [0, 5, 90, 1000])
        rec = seen[-1]
        seq = iterate_terms(rec, 1001)
        if got != [seq[i] for i in (0, 5, 90, 1000)]:
            bad.append(name)
    routed = len(seen)
    uniform = routed == len(names)

    rng = random.Random(7)
    T = family("chebyshev-t")
    idx = sorted(rng.sample(range(1, 10001), 40)) + [10000]
    err = 0.0
    for _ in range(25):
        th = rng.uniform(0, math.pi)
        vals = ortho_eval(T, math.cos(th), idx)
        err = max(err, max(abs(v - math.cos(n * th)) for v, n in zip(vals, idx)))
    legendre = ortho_eval(family("legendre"), 1, range(1001)) == [1] * 1001
    ok = uniform and not bad and err <= 1e-9 and legendre
    report(capsys, 7, "one code path for all families, Chebyshev and Legendre identities", ok,
           f"families via multi_eval {routed}/{len(names)}, mismatches {bad}, "
           f"max Chebyshev error {err:.2e}, Legendre P_n(1) = 1 {legendre}")


# -- 8. series approximation --------------------------------------------------------

def test_criterion_8_series(capsys):
    rec = HolonomicRecurrence(Float64(), [[1, 1], [-1]], [1.0])
    spec = SeriesSpec(rec, eps=1e-12, M=math.e, rho=1.0)
    val, N = series_eval(spec, 0.5)
    ref = math.fsum(Fraction(1, 2 ** n * math.factorial(n)) for n in range(2 * N))
    err = abs(val - ref)
    report(capsys, 8, "exp(1/2) within 1e-12 with O(log 1/eps) terms",
           err <= 1e-12 and N <= 60, f"N_used {N}, error {err:.2e}")
