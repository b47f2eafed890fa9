"""Exact coefficient fields: the rationals QQ and prime fields GF(p).

Elements are ``Scalar`` values carrying a reference to their ``Field`` and a
canonical representation: a reduced ``fractions.Fraction`` over QQ, a residue
in ``[0, p)`` over GF(p).  All arithmetic is exact; operations that would need
roots the field does not contain fail loudly instead of approximating.

Root conventions (used consistently by the series and covering modules):

* ``roots_of_unity(n)`` lists all solutions of ``x^n = 1`` in canonical order
  (numeric order over QQ, residue order over GF(p)) and designates, when one
  exists, the primitive n-th root with the smallest canonical representative.
* ``nth_roots(c, n)`` returns every n-th root of ``c`` that the field
  contains, sorted canonically; possibly none.
* the *principal* root of ``c`` is the largest root over QQ (the nonnegative
  one when n is even) and the smallest residue over GF(p).
"""

from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple, Optional

from .errors import DivisionByZero, FieldMismatch, TameViolation

_ARITH_OPS = ("add", "sub", "mul", "div")


def is_prime(n):
    """Deterministic Miller-Rabin, valid for all 64-bit integers."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def integer_nth_root(x, n):
    """Return ``(r, exact)`` with ``r = floor(x ** (1/n))`` for x >= 0."""
    if x < 0 or n < 1:
        raise ValueError("integer_nth_root needs x >= 0, n >= 1")
    if x in (0, 1) or n == 1:
        return x, True
    if n == 2:
        r = isqrt(x)
        return r, r * r == x
    lo, hi = 0, 1 << (x.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** n <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo, lo ** n == x


class RootsOfUnity(NamedTuple):
    roots: tuple
    primitive: Optional["Scalar"]


class Field:
    """The rationals (characteristic 0) or a prime field GF(p).

    ``Field`` objects are lightweight descriptors; calling one coerces an
    int, ``Fraction`` or digit string into a canonical ``Scalar``.
    """

    __slots__ = ("characteristic", "_generator", "_baby_table", "_baby_step")

    def __init__(self, characteristic=0):
        if characteristic != 0 and not is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        self.characteristic = characteristic
        self._generator = None
        self._baby_table = None
        self._baby_step = None

    @property
    def kind(self):
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __call__(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not an element of {self!r}")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if self.characteristic == 0:
            return Scalar(self, Fraction(value))
        p = self.characteristic
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DivisionByZero(f"denominator of {value} vanishes in {self!r}")
            return Scalar(self, value.numerator * pow(value.denominator, -1, p) % p)
        return Scalar(self, int(value) % p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def arith(self, op, a, b):
        """Dispatch an arithmetic op by name; ``op`` in {add, sub, mul, div}."""
        if op not in _ARITH_OPS:
            raise ValueError(f"unknown arithmetic op {op!r}")
        a, b = self(a), self(b)
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        return a / b

    # -- multiplicative structure of GF(p) ------------------------------

    def generator(self):
        """A fixed generator of GF(p)^*, the smallest one."""
        p = self.characteristic
        if p == 0:
            raise ValueError("the rationals have no finite multiplicative generator")
        if self._generator is None:
            if p == 2:
                self._generator = 1
            else:
                factors = _prime_factors(p - 1)
                g = 2
                while any(pow(g, (p - 1) // q, p) == 1 for q in factors):
                    g += 1
                self._generator = g
        return self._generator

    def _discrete_log(self, a):
        """Solve g^y = a in GF(p)^* by baby-step giant-step."""
        p = self.characteristic
        g = self.generator()
        if self._baby_table is None:
            m = isqrt(p - 1) + 1
            table = {}
            x = 1
            for j in range(m):
                table.setdefault(x, j)
                x = x * g % p
            self._baby_table = table
            self._baby_step = m
        m, table = self._baby_step, self._baby_table
        giant = pow(g, -m, p)
        x = a % p
        for i in range(m + 1):
            if x in table:
                return (i * m + table[x]) % (p - 1)
            x = x * giant % p
        raise ArithmeticError(f"discrete log of {a} failed in {self!r}")

    def roots_of_unity(self, n):
        """All solutions of ``x^n = 1``, canonically ordered.

        The designated primitive root (``.primitive``) is the smallest
        canonical representative of full multiplicative order n, or None when
        the field contains no primitive n-th root.
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        p = self.characteristic
        if p != 0 and n % p == 0:
            raise TameViolation(f"order {n} is divisible by the characteristic {p}")
        if p == 0:
            roots = (self(-1), self(1)) if n % 2 == 0 else (self(1),)
            primitive = self(1) if n == 1 else (self(-1) if n == 2 else None)
            return RootsOfUnity(roots, primitive)
        d = gcd(n, p - 1)
        z = pow(self.generator(), (p - 1) // d, p)
        roots = sorted(pow(z, k, p) for k in range(d))
        primitive = None
        if d == n:
            primitive = self(min(pow(z, k, p) for k in range(n) if gcd(k, n) == 1))
        return RootsOfUnity(tuple(self(r) for r in roots), primitive)

    def nth_roots(self, c, n):
        """The set of x with ``x^n = c``, as a canonically sorted tuple."""
        if n < 1:
            raise ValueError("n must be >= 1")
        c = self(c)
        p = self.characteristic
        if p != 0 and n % p == 0:
            raise TameViolation(f"order {n} is divisible by the characteristic {p}")
        if p == 0:
            q = c.value
            if q == 0:
                return (self.zero,)
            if q < 0 and n % 2 == 0:
                return ()
            rn, exact_n = integer_nth_root(abs(q.numerator), n)
            rd, exact_d = integer_nth_root(q.denominator, n)
            if not (exact_n and exact_d):
                return ()
            r = Fraction(rn, rd)
            if n % 2 == 1:
                return (self(r if q > 0 else -r),)
            return (self(-r), self(r))
        if c.value == 0:
            return (self.zero,)
        d = gcd(n, p - 1)
        if pow(c.value, (p - 1) // d, p) != 1:
            return ()
        y = self._discrete_log(c.value)
        step = (p - 1) // d
        z0 = (y // d) * pow(n // d, -1, step) % step
        g = self.generator()
        return tuple(self(r) for r in sorted(pow(g, z0 + k * step, p) for k in range(d)))

    def principal_nth_root(self, c, n):
        """The documented canonical choice among ``nth_roots``; None if empty."""
        roots = self.nth_roots(c, n)
        if not roots:
            return None
        return roots[-1] if self.characteristic == 0 else roots[0]


def _prime_factors(n):
    factors = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors.add(d)
            n //= d
        d += 1
    if n > 1:
        factors.add(n)
    return factors


class Scalar:
    """An exact element of a ``Field``, stored in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.field.characteristic == 0:
            return Scalar(self.field, self.value + other.value)
        return Scalar(self.field, (self.value + other.value) % self.field.characteristic)

    __radd__ = __add__

    def __neg__(self):
        if self.field.characteristic == 0:
            return Scalar(self.field, -self.value)
        return Scalar(self.field, -self.value % self.field.characteristic)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.field.characteristic == 0:
            return Scalar(self.field, self.value * other.value)
        return Scalar(self.field, self.value * other.value % self.field.characteristic)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero(f"zero has no inverse in {self.field!r}")
        if self.field.characteristic == 0:
            return Scalar(self.field, 1 / self.value)
        return Scalar(self.field, pow(self.value, -1, self.field.characteristic))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.field.characteristic == 0:
            return Scalar(self.field, self.value ** k)
        return Scalar(self.field, pow(self.value, k, self.field.characteristic))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.value < other.value

    def __le__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.value <= other.value

    def is_zero(self):
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    __repr__ = __str__
