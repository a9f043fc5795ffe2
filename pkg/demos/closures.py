"""Builds recurrences for a sum, a product and a convolution and checks them."""

from linrec.algebra import Rationals
from linrec.holonomic import (HolonomicRecurrence, annihilates, closure_convolution,
                              closure_product, closure_sum, iterate_terms, multi_eval)

Q = Rationals()
fib = HolonomicRecurrence(Q, [[1], [-1], [-1]], [0, 1])
fact = HolonomicRecurrence(Q, [[1], [-1, -1]], [1])

for name, op, combine in (
        ("fib + n!", closure_sum, lambda a, b, n: a[n] + b[n]),
        ("fib * n!", closure_product, lambda a, b, n: a[n] * b[n]),
        ("fib (*) n!", closure_convolution,
         lambda a, b, n: sum(a[i] * b[n - i] for i in range(n + 1)))):
    out = op(fib, fact)
    a, b = iterate_terms(fib, 80), iterate_terms(fact, 80)
    seq = [combine(a, b, n) for n in range(80)]
    print(f"{name}: depth {out.k}, degree {out.d}, offset {out.offset}, "
          f"holds on 80 terms: {annihilates(out, seq)}")
    print("  term 60 via the new recurrence matches:", multi_eval(out, [60])[0] == seq[60])
