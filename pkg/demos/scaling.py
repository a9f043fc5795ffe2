"""Prints multiplication counts that show the sqrt(n) and log(n) growth."""

from linrec.algebra import PrimeField
from linrec.apps import family, multi_factorial, ortho_eval
from linrec.constrec import ConstRecurrence, nth_term

dom = PrimeField(998244353)


def muls(fn):
    dom.counter.reset()
    fn()
    return dom.counter.report().muls


print("n          n!      T_n(3)")
for e in range(10, 21, 2):
    n = 1 << e
    f = muls(lambda: multi_factorial([n], dom))
    t = muls(lambda: ortho_eval(family("chebyshev-t"), dom(3), [n], dom))
    print(f"2^{e:<6} {f:>8} {t:>10}")

rec = ConstRecurrence(dom, [3, 1, 4, 1], [2, 7, 1, 8])
print("\nn          depth-4 nth term")
for e in (10, 20, 40, 80):
    print(f"2^{e:<6} {muls(lambda: nth_term(rec, 1 << e)):>8}")
