"""Command-line interface.

Recurrence files are line-oriented JSON: one object per line, one field per
object, with every number written as a decimal string::

    {"ring": {"kind": "prime-field", "modulus": "1000000007"}}
    {"depth": 2}
    {"degree": 0}
    {"coeffs": [["1"], ["-1"], ["-1"]]}
    {"initial": ["0", "1"]}
    {"offset": 0}

``coeffs`` lists ``a_0 .. a_k`` with the constant term first; ``initial``
holds ``P_0 .. P_{offset+k-1}``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .algebra.domains import Float64, PrimeField, Rationals, domain_from_descriptor
from .algebra.polynomial import DensePolynomial, mul_lists
from .algebra.series import newton_inverse_lists
from .apps import (FAMILIES, SeriesSpec, family, inverse_coeff_range,
                   inverse_top_coeffs, multi_factorial, ortho_eval,
                   power_coeffs_at, series_eval)
from .errors import LinrecError
from .holonomic import (HolonomicRecurrence, annihilates, closure_convolution,
                        closure_product, closure_sum, iterate_terms, multi_eval)

__all__ = ["main", "run", "read_recurrence", "write_recurrence",
           "format_recurrence", "parse_recurrence", "RecurrenceFormatError"]

ORACLE_LIMIT = 10 ** 7
FIELDS = ("ring", "depth", "degree", "coeffs", "initial", "offset")


class RecurrenceFormatError(LinrecError, ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = (", ".join(where) + ": ") if where else ""
        super().__init__(prefix + message)
        self.line, self.field = line, field


class UsageError(Exception):
    pass


def _allow_big_ints():
    # exact terms routinely run past the default 4300-digit str/int limit
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)


# -- recurrence files ---------------------------------------------------------

def format_recurrence(rec):
    _allow_big_ints()
    dom = rec.domain
    lines = [
        {"ring": dom.descriptor()},
        {"depth": rec.k},
        {"degree": rec.d},
        {"coeffs": [[dom.format(c) for c in a] for a in rec.coeff_lists()]},
        {"initial": [dom.format(x) for x in rec.initial]},
        {"offset": rec.offset},
    ]
    return "".join(json.dumps(obj) + "\n" for obj in lines)


def parse_recurrence(text):
    _allow_big_ints()
    seen, where = {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecurrenceFormatError(f"invalid JSON ({exc.msg})", lineno) from None
        if not isinstance(obj, dict) or len(obj) != 1:
            raise RecurrenceFormatError("expected an object with one field", lineno)
        (key, value), = obj.items()
        if key not in FIELDS:
            raise RecurrenceFormatError("unknown field", lineno, key)
        if key in seen:
            raise RecurrenceFormatError("duplicate field", lineno, key)
        seen[key], where[key] = value, lineno
    for key in FIELDS:
        if key not in seen:
            raise RecurrenceFormatError("missing field", None, key)

    def fail(key, msg):
        raise RecurrenceFormatError(msg, where[key], key)

    try:
        dom = domain_from_descriptor(seen["ring"])
    except (LinrecError, KeyError, TypeError, ValueError) as exc:
        fail("ring", f"bad ring descriptor ({exc})")

    def number(key, text):
        if not isinstance(text, str):
            fail(key, f"expected a decimal string, got {text!r}")
        try:
            return dom.parse(text)
        except (ValueError, ZeroDivisionError, LinrecError):
            fail(key, f"cannot parse {text!r}")

    def count(key):
        v = seen[key]
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            fail(key, f"expected a non-negative integer, got {v!r}")
        return v

    depth, degree, offset = count("depth"), count("degree"), count("offset")
    coeffs = seen["coeffs"]
    if not isinstance(coeffs, list) or not all(isinstance(a, list) for a in coeffs):
        fail("coeffs", "expected a list of coefficient lists")
    coeffs = [[number("coeffs", c) for c in a] for a in coeffs]
    if len(coeffs) != depth + 1:
        fail("depth", f"depth {depth} needs {depth + 1} coefficient lists, "
                      f"found {len(coeffs)}")
    initial = seen["initial"]
    if not isinstance(initial, list):
        fail("initial", "expected a list")
    initial = [number("initial", x) for x in initial]
    try:
        rec = HolonomicRecurrence(dom, coeffs, initial, offset)
    except (LinrecError, ValueError) as exc:
        fail("initial" if "initial" in str(exc) else "coeffs", str(exc))
    if rec.d != degree:
        fail("degree", f"stated degree {degree} but the coefficients have degree {rec.d}")
    return rec


def read_recurrence(path):
    with open(path, encoding="utf-8") as fh:
        return parse_recurrence(fh.read())


def write_recurrence(rec, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_recurrence(rec))


# -- argument parsing ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _csv_ints(text):
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None
    if any(i < 0 for i in out):
        raise argparse.ArgumentTypeError("indices must be non-negative")
    return out


def _csv(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--count-ops", action="store_true",
                        help="report domain operation counts on stderr")
    common.add_argument("--oracle", action="store_true",
                        help="cross-check against naive iteration")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    ring = argparse.ArgumentParser(add_help=False)
    g = ring.add_mutually_exclusive_group()
    g.add_argument("--mod", type=int, help="work modulo this prime")
    g.add_argument("--float", action="store_true", help="work in floating point")

    p = _Parser(prog="linrec", description="Fast evaluation of recurrent sequences.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("term", parents=[common], help="one term of a recurrence")
    s.add_argument("--rec", required=True)
    s.add_argument("--n", required=True, type=_nonneg)

    s = sub.add_parser("multi", parents=[common], help="several terms of a recurrence")
    s.add_argument("--rec", required=True)
    s.add_argument("--indices", required=True, type=_csv_ints)

    s = sub.add_parser("factorial", parents=[common], help="factorials")
    s.add_argument("--indices", required=True, type=_csv_ints)
    s.add_argument("--mod", type=int)

    s = sub.add_parser("ortho", parents=[common, ring], help="orthogonal polynomials")
    s.add_argument("--family", required=True,
                   choices=sorted({name for name, _ in FAMILIES}))
    s.add_argument("--x", required=True)
    s.add_argument("--indices", required=True, type=_csv_ints)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--classical", dest="normalization", action="store_const",
                   const="classical")
    g.add_argument("--monic", dest="normalization", action="store_const", const="monic")
    s.set_defaults(normalization="classical")

    s = sub.add_parser("powcoeff", parents=[common, ring], help="coefficients of p^m")
    s.add_argument("--poly", required=True, type=_csv)
    s.add_argument("--m", required=True, type=_nonneg)
    s.add_argument("--indices", required=True, type=_csv_ints)

    s = sub.add_parser("invcoeff", parents=[common, ring], help="coefficients of 1/p")
    s.add_argument("--poly", required=True, type=_csv)
    s.add_argument("--start", type=_nonneg)
    s.add_argument("--count", type=_nonneg)
    s.add_argument("--top", type=_nonneg)
    s.add_argument("--prec", type=_nonneg)

    s = sub.add_parser("series", parents=[common], help="partial sum of a series")
    s.add_argument("--rec", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--terms", type=_nonneg)
    s.add_argument("--eps", type=float)
    s.add_argument("--rho", type=float)
    s.add_argument("--bigm", type=float)

    s = sub.add_parser("closure", parents=[common], help="sum/product/convolution")
    s.add_argument("--op", required=True, choices=["sum", "product", "convolution"])
    s.add_argument("--rec1", required=True)
    s.add_argument("--rec2", required=True)
    s.add_argument("--out", required=True)
    return p


GLOBAL_FLAGS = ("--count-ops", "--oracle", "--json")


_NEGATIVE = re.compile(r"^-[\d.]")


def _hoist(argv):
    """Global flags may precede the subcommand; option values that start
    with a minus sign (``--poly -1,0,1``) are attached to their option."""
    glued = []
    for a in argv:
        if (_NEGATIVE.match(a) and glued and glued[-1].startswith("--")
                and "=" not in glued[-1] and glued[-1] not in GLOBAL_FLAGS):
            glued[-1] += "=" + a
        else:
            glued.append(a)
    front = [a for a in glued if a in GLOBAL_FLAGS]
    rest = [a for a in glued if a not in GLOBAL_FLAGS]
    return rest + front


# -- commands -----------------------------------------------------------------

class _Ctx:
    def __init__(self, args, out, err):
        self.args, self.out, self.err = args, out, err
        self.domains = []

    def use(self, dom):
        if not any(d is dom for d in self.domains):
            self.domains.append(dom)
        return dom


class OracleMismatch(Exception):
    pass


def _ring(args):
    if getattr(args, "float", False):
        return Float64()
    if getattr(args, "mod", None) is not None:
        return PrimeField(args.mod)
    return Rationals()


def _close(dom, a, b):
    if dom.exact:
        return a == b
    return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


def _check(dom, got, expected, what):
    for i, (g, e) in enumerate(zip(got, expected)):
        if not _close(dom, g, e):
            raise OracleMismatch(f"{what}: entry {i}: got {dom.format(g)}, "
                                 f"oracle {dom.format(e)}")


def _oracle_allowed(ctx, n):
    if n > ORACLE_LIMIT:
        print(f"oracle skipped: index {n} exceeds {ORACLE_LIMIT}", file=ctx.err)
        return False
    return True


def _emit(ctx, dom, indices, values, extra=None):
    if ctx.args.json:
        obj = {"values": [dom.format(v) for v in values]}
        if indices is not None:
            obj["indices"] = indices
        if extra:
            obj.update(extra)
        print(json.dumps(obj), file=ctx.out)
    else:
        for v in values:
            print(dom.format(v), file=ctx.out)


def _by_index(fn, indices):
    targets = sorted(set(indices))
    table = dict(zip(targets, fn(targets)))
    return [table[i] for i in indices]


def _cmd_term(ctx):
    ctx.args.indices = [ctx.args.n]
    return _cmd_multi(ctx)


def _cmd_multi(ctx):
    a = ctx.args
    rec = read_recurrence(a.rec)
    dom = ctx.use(rec.domain)
    vals = _by_index(lambda t: multi_eval(rec, t), a.indices)
    if a.oracle and a.indices and _oracle_allowed(ctx, max(a.indices)):
        seq = iterate_terms(rec, max(a.indices) + 1)
        _check(dom, vals, [seq[i] for i in a.indices], "term")
    _emit(ctx, dom, a.indices, vals)


def _cmd_factorial(ctx):
    a = ctx.args
    dom = ctx.use(PrimeField(a.mod) if a.mod is not None else Rationals())
    vals = multi_factorial(a.indices, dom)
    if a.oracle and a.indices and _oracle_allowed(ctx, max(a.indices)):
        f, table = dom.one, {0: dom.one}
        for n in range(1, max(a.indices) + 1):
            f = dom.mul(f, dom(n))
            table[n] = f
        _check(dom, vals, [table[i] for i in a.indices], "factorial")
    _emit(ctx, dom, a.indices, vals)


def _cmd_ortho(ctx):
    a = ctx.args
    dom = ctx.use(_ring(a))
    fam = family(a.family, a.normalization)
    x = dom.parse(a.x)
    vals = ortho_eval(fam, x, a.indices, dom)
    if a.oracle and a.indices and _oracle_allowed(ctx, max(a.indices)):
        prev = [_horner(dom, [dom(c) for c in p], x) for p in fam.initial]
        for n in range(fam.start, max(a.indices)):
            A, B, C = (dom(v) for v in fam.coefficients(n))
            nxt = dom.sub(dom.mul(dom.add(dom.mul(A, x), B), prev[-1]),
                          dom.mul(C, prev[-2]))
            prev.append(nxt)
        _check(dom, vals, [prev[i] for i in a.indices], "ortho")
    _emit(ctx, dom, a.indices, vals)


def _horner(dom, c, x):
    acc = dom.zero
    for v in reversed(c):
        acc = dom.add(dom.mul(acc, x), v)
    return acc


def _poly(dom, texts):
    try:
        return DensePolynomial(dom, [dom.parse(t) for t in texts])
    except ValueError as exc:
        raise UsageError(f"bad polynomial: {exc}") from None


def _cmd_powcoeff(ctx):
    a = ctx.args
    dom = ctx.use(_ring(a))
    p = _poly(dom, a.poly)
    vals = power_coeffs_at(p, a.m, a.indices)
    if a.oracle and _oracle_allowed(ctx, a.m * max(p.degree, 0)):
        full = [dom.one]
        for _ in range(a.m):
            full = mul_lists(dom, full, list(p.coeffs))
        _check(dom, vals, [full[i] if i < len(full) else dom.zero for i in a.indices],
               "powcoeff")
    _emit(ctx, dom, a.indices, vals)


def _cmd_invcoeff(ctx):
    a = ctx.args
    dom = ctx.use(_ring(a))
    p = _poly(dom, a.poly)
    ranged = a.start is not None or a.count is not None
    topped = a.top is not None or a.prec is not None
    if ranged == topped or (ranged and (a.start is None or a.count is None)) \
            or (topped and (a.top is None or a.prec is None)):
        raise UsageError("invcoeff needs either --start and --count or --top and --prec")
    if ranged:
        vals = inverse_coeff_range(p, a.start, a.count)
        indices = list(range(a.start, a.start + a.count))
        hi = a.start + a.count
    else:
        vals = inverse_top_coeffs(p, a.prec, a.top)
        indices = list(range(a.prec - 1, a.prec - a.top - 1, -1))
        hi = a.prec
    if a.oracle and _oracle_allowed(ctx, hi):
        ref = newton_inverse_lists(dom, list(p.coeffs), hi)
        _check(dom, vals, [ref[i] for i in indices], "invcoeff")
    _emit(ctx, dom, indices, vals)


def _cmd_series(ctx):
    a = ctx.args
    rec = read_recurrence(a.rec)
    dom = ctx.use(rec.domain)
    if (a.terms is None) == (a.eps is None):
        raise UsageError("series needs exactly one of --terms and --eps")
    if a.eps is not None and (a.rho is None or a.bigm is None):
        raise UsageError("--eps needs --rho and --bigm")
    spec = SeriesSpec(rec, terms=a.terms, eps=a.eps, M=a.bigm, rho=a.rho)
    x = dom.parse(a.x)
    value, N = series_eval(spec, x)
    if a.oracle and _oracle_allowed(ctx, N):
        c = iterate_terms(rec, N)
        acc, xp = dom.zero, dom.one
        for v in c:
            acc = dom.add(acc, dom.mul(v, xp))
            xp = dom.mul(xp, x)
        _check(dom, [value], [acc], "series")
    _emit(ctx, dom, None, [value], {"terms": N})
    if not a.json:
        print(f"terms used: {N}", file=ctx.err)


CHECK_TERMS = 50


def _cmd_closure(ctx):
    a = ctx.args
    r1, r2 = read_recurrence(a.rec1), read_recurrence(a.rec2)
    dom = ctx.use(r1.domain)
    if not dom.same(r2.domain):
        raise UsageError("the two recurrences live over different rings")
    ctx.use(r2.domain)
    op = {"sum": closure_sum, "product": closure_product,
          "convolution": closure_convolution}[a.op]
    rec = op(r1, r2)
    write_recurrence(rec, a.out)
    if a.oracle:
        n = CHECK_TERMS + rec.offset + rec.k
        P, Q = iterate_terms(r1, n), iterate_terms(r2, n)
        if a.op == "sum":
            seq = [dom.add(x, y) for x, y in zip(P, Q)]
        elif a.op == "product":
            seq = [dom.mul(x, y) for x, y in zip(P, Q)]
        else:
            seq = [dom.dot(P[:i + 1], Q[i::-1]) for i in range(n)]
        if list(rec.initial) != seq[:len(rec.initial)]:
            raise OracleMismatch("closure: initial values differ from the target")
        if not annihilates(rec, seq, rec.offset, CHECK_TERMS):
            raise OracleMismatch("closure: output does not annihilate the target")
    info = {"depth": rec.k, "degree": rec.d, "offset": rec.offset, "out": a.out}
    if a.json:
        print(json.dumps(info), file=ctx.out)
    else:
        print(f"depth {rec.k} degree {rec.d} offset {rec.offset}", file=ctx.out)


COMMANDS = {
    "term": _cmd_term, "multi": _cmd_multi, "factorial": _cmd_factorial,
    "ortho": _cmd_ortho, "powcoeff": _cmd_powcoeff, "invcoeff": _cmd_invcoeff,
    "series": _cmd_series, "closure": _cmd_closure,
}


def _threads():
    raw = os.environ.get("LINREC_THREADS")
    if raw is None:
        return 1
    try:
        v = int(raw)
    except ValueError:
        raise UsageError(f"LINREC_THREADS must be a positive integer, got {raw!r}") from None
    if v < 1:
        raise UsageError("LINREC_THREADS must be a positive integer")
    return v


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    out = sys.stdout if stdout is None else stdout
    err = sys.stderr if stderr is None else stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    _allow_big_ints()
    parser = _build_parser()
    try:
        _threads()
        args = parser.parse_args(_hoist(argv))
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        ctx = _Ctx(args, out, err)
        try:
            COMMANDS[args.command](ctx)
        finally:
            if getattr(args, "count_ops", False):
                total = {"adds": 0, "muls": 0, "invs": 0}
                for dom in ctx.domains:
                    for key, v in dom.counter.report().to_dict().items():
                        total[key] += v
                print(json.dumps(total), file=err)
    except UsageError as exc:
        print(str(exc), file=err)
        return 1
    except RecurrenceFormatError as exc:
        print(f"linrec: {exc}", file=err)
        return 1
    except OSError as exc:
        print(f"linrec: {exc}", file=err)
        return 1
    except OracleMismatch as exc:
        print(f"linrec: oracle mismatch: {exc}", file=err)
        return 3
    except LinrecError as exc:
        print(f"linrec: {type(exc).__name__}: {exc}", file=err)
        return 2
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        print(f"linrec: {exc}", file=err)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
