"""Coefficient domains with ring-operation accounting.

Three kinds of domains are provided:

* :class:`PrimeField` -- integers modulo an odd prime (elements are ``int`` in
  ``[0, p)``),
* :class:`Rationals` -- exact rationals (elements are ``int`` or
  :class:`fractions.Fraction` in lowest terms; integral values are kept as
  plain ``int`` for speed),
* :class:`Float64` -- binary floating point, only meant for approximation.

Every domain owns an :class:`OpCounter` that records the additions,
multiplications and inversions performed through it.  Scalar methods count one
operation per call; the list-valued helpers (``vadd``, ``dot``, ``conv`` ...)
count in bulk.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError, DomainMismatch, CharacteristicTooSmall

__all__ = [
    "OpCountReport", "OpCounter", "Domain", "PrimeField", "Rationals",
    "Float64", "char_at_least", "require_char", "is_probable_prime",
    "domain_from_descriptor",
]


@dataclass(frozen=True)
class OpCountReport:
    adds: int = 0
    muls: int = 0
    invs: int = 0

    def __add__(self, other):
        return OpCountReport(self.adds + other.adds, self.muls + other.muls,
                             self.invs + other.invs)

    def __sub__(self, other):
        return OpCountReport(self.adds - other.adds, self.muls - other.muls,
                             self.invs - other.invs)

    @property
    def total(self):
        return self.adds + self.muls + self.invs

    def to_dict(self):
        return {"adds": self.adds, "muls": self.muls, "invs": self.invs}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["adds"]), int(d["muls"]), int(d["invs"]))


class OpCounter:
    """Monotone, lock-protected tally of domain operations."""

    def __init__(self):
        self._lock = threading.Lock()
        self._adds = 0
        self._muls = 0
        self._invs = 0

    def tally(self, adds=0, muls=0, invs=0):
        with self._lock:
            self._adds += adds
            self._muls += muls
            self._invs += invs

    def report(self):
        with self._lock:
            return OpCountReport(self._adds, self._muls, self._invs)

    def reset(self):
        with self._lock:
            self._adds = self._muls = self._invs = 0


def is_probable_prime(n):
    """Deterministic Miller-Rabin for n < 3.3e24, probabilistic beyond."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Domain:
    """Common interface of all coefficient domains."""

    kind = "abstract"
    exact = True
    modulus = None

    def __init__(self):
        self.counter = OpCounter()

    # -- identity -----------------------------------------------------------
    @property
    def characteristic(self):
        return 0

    def same(self, other):
        return (self.kind, self.modulus) == (other.kind, other.modulus)

    def check_same(self, other):
        if not self.same(other):
            raise DomainMismatch(f"{self!r} vs {other!r}")

    def descriptor(self):
        d = {"kind": self.kind}
        if self.modulus is not None:
            d["modulus"] = str(self.modulus)
        return d

    # -- constants and conversion ------------------------------------------
    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        raise NotImplementedError

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self(Fraction(int(num), int(den)))
        return self(int(text))

    def format(self, x):
        return str(x)

    # -- raw (uncounted) primitives ----------------------------------------
    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        raise NotImplementedError

    # -- counted scalar operations -----------------------------------------
    def add(self, a, b):
        self.counter.tally(adds=1)
        return self._add(a, b)

    def sub(self, a, b):
        self.counter.tally(adds=1)
        return self._sub(a, b)

    def neg(self, a):
        self.counter.tally(adds=1)
        return self._neg(a)

    def mul(self, a, b):
        self.counter.tally(muls=1)
        return self._mul(a, b)

    def inv(self, a):
        if self.is_zero(a) or not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not invertible in {self!r}")
        self.counter.tally(invs=1)
        return self._inv(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """a**e by square-and-multiply; negative e inverts first."""
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return self.one
        result, muls = a, 0
        for bit in bin(e)[3:]:
            result = self._mul(result, result)
            muls += 1
            if bit == "1":
                result = self._mul(result, a)
                muls += 1
        self.counter.tally(muls=muls)
        return result

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return not self.is_zero(a)

    def eq(self, a, b):
        return a == b

    # -- bulk operations -----------------------------------------------------
    def vadd(self, u, v):
        self.counter.tally(adds=len(u))
        f = self._add
        return [f(a, b) for a, b in zip(u, v)]

    def vsub(self, u, v):
        self.counter.tally(adds=len(u))
        f = self._sub
        return [f(a, b) for a, b in zip(u, v)]

    def vneg(self, u):
        self.counter.tally(adds=len(u))
        f = self._neg
        return [f(a) for a in u]

    def vscale(self, c, u):
        self.counter.tally(muls=len(u))
        f = self._mul
        return [f(c, a) for a in u]

    def vmul(self, u, v):
        self.counter.tally(muls=len(u))
        f = self._mul
        return [f(a, b) for a, b in zip(u, v)]

    def dot(self, u, v):
        n = len(u)
        if n == 0:
            return self.zero
        self.counter.tally(adds=n - 1, muls=n)
        mul, add = self._mul, self._add
        acc = mul(u[0], v[0])
        for i in range(1, n):
            acc = add(acc, mul(u[i], v[i]))
        return acc

    def conv(self, a, b):
        """Schoolbook product of coefficient lists (no trimming)."""
        if not a or not b:
            return []
        na, nb = len(a), len(b)
        self.counter.tally(adds=(na - 1) * (nb - 1), muls=na * nb)
        mul, add = self._mul, self._add
        out = [self.zero] * (na + nb - 1)
        for i, x in enumerate(a):
            if self.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return out

    def batch_inv(self, xs):
        """Invert every element of ``xs`` with a single inversion."""
        n = len(xs)
        if n == 0:
            return []
        prefix = [xs[0]]
        for x in xs[1:]:
            prefix.append(self._mul(prefix[-1], x))
        inv = self.inv(prefix[-1])
        out = [None] * n
        for i in range(n - 1, 0, -1):
            out[i] = self._mul(inv, prefix[i - 1])
            inv = self._mul(inv, xs[i])
        out[0] = inv
        self.counter.tally(muls=3 * (n - 1))
        return out

    def random_element(self, rng, bound=10):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}()"


class PrimeField(Domain):
    kind = "prime-field"

    def __init__(self, modulus, check=True):
        super().__init__()
        modulus = int(modulus)
        if check and (modulus % 2 == 0 or not is_probable_prime(modulus)):
            raise DomainError(f"modulus {modulus} is not an odd prime")
        self.modulus = modulus
        self.p = modulus
        s, t = 0, modulus - 1
        while t % 2 == 0:
            t //= 2
            s += 1
        self.two_adicity = s
        self._odd_part = t
        self._root = None

    @property
    def characteristic(self):
        return self.p

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, float):
            raise DomainError("floats cannot be mapped into a prime field")
        return int(x) % self.p

    def format(self, x):
        return str(x)

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def vadd(self, u, v):
        self.counter.tally(adds=len(u))
        p = self.p
        return [(a + b) % p for a, b in zip(u, v)]

    def vsub(self, u, v):
        self.counter.tally(adds=len(u))
        p = self.p
        return [(a - b) % p for a, b in zip(u, v)]

    def vscale(self, c, u):
        self.counter.tally(muls=len(u))
        p = self.p
        return [c * a % p for a in u]

    def vmul(self, u, v):
        self.counter.tally(muls=len(u))
        p = self.p
        return [a * b % p for a, b in zip(u, v)]

    def dot(self, u, v):
        n = len(u)
        if n == 0:
            return 0
        self.counter.tally(adds=n - 1, muls=n)
        return sum(a * b for a, b in zip(u, v)) % self.p

    def conv(self, a, b):
        if not a or not b:
            return []
        na, nb = len(a), len(b)
        self.counter.tally(adds=(na - 1) * (nb - 1), muls=na * nb)
        p = self.p
        out = [0] * (na + nb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [c % p for c in out]

    def root_of_unity(self, order):
        """Primitive ``order``-th root of unity, ``order`` a power of two."""
        if order & (order - 1) or order > (1 << self.two_adicity):
            raise DomainError(f"no primitive {order}-th root of unity mod {self.p}")
        if self._root is None:
            s = self.two_adicity
            for a in range(2, self.p):
                w = pow(a, self._odd_part, self.p)
                if s == 0 or pow(w, 1 << (s - 1), self.p) == self.p - 1:
                    self._root = w
                    break
        return pow(self._root, (1 << self.two_adicity) // order, self.p)

    def random_element(self, rng, bound=None):
        return rng.randrange(self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"


def _q(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class Rationals(Domain):
    kind = "rational"

    def __call__(self, x):
        if isinstance(x, float):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return _q(x)
        return int(x)

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return _q(Fraction(int(num), int(den)))
        try:
            return int(text)
        except ValueError:
            return _q(Fraction(text))

    def format(self, x):
        if type(x) is Fraction:
            return f"{x.numerator}/{x.denominator}"
        return str(x)

    def _add(self, a, b):
        return _q(a + b)

    def _sub(self, a, b):
        return _q(a - b)

    def _mul(self, a, b):
        return _q(a * b)

    def _inv(self, a):
        if type(a) is int:
            return _q(Fraction(1, a))
        return _q(1 / a)

    def conv(self, a, b):
        if not a or not b:
            return []
        na, nb = len(a), len(b)
        self.counter.tally(adds=(na - 1) * (nb - 1), muls=na * nb)
        out = [0] * (na + nb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [_q(c) for c in out]

    def dot(self, u, v):
        n = len(u)
        if n == 0:
            return 0
        self.counter.tally(adds=n - 1, muls=n)
        return _q(sum(a * b for a, b in zip(u, v)))

    def random_element(self, rng, bound=10):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, 3)
        return _q(Fraction(num, den))

    def __repr__(self):
        return "Rationals()"


class Float64(Domain):
    kind = "float64"
    exact = False

    def __call__(self, x):
        return float(x)

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return float(Fraction(int(num), int(den)))
        return float(text)

    def format(self, x):
        return repr(float(x))

    def _inv(self, a):
        return 1.0 / a

    def random_element(self, rng, bound=1.0):
        return rng.uniform(-bound, bound)

    def __repr__(self):
        return "Float64()"


def char_at_least(domain, bound):
    """True iff the characteristic of ``domain`` is zero or at least ``bound``."""
    c = domain.characteristic
    return c == 0 or c >= bound


def require_char(domain, bound):
    if not char_at_least(domain, bound):
        raise CharacteristicTooSmall(domain.characteristic, bound)


def domain_from_descriptor(desc):
    kind = desc["kind"]
    if kind == "prime-field":
        return PrimeField(int(desc["modulus"]))
    if kind == "rational":
        return Rationals()
    if kind == "float64":
        return Float64()
    raise DomainError(f"unknown ring kind {kind!r}")
