"""Truncated multivariate Puiseux series with exact coefficients.

A series lives over a ``Field`` in variables ``t1 .. tm``.  Every exponent is
a tuple of m nonnegative rationals whose denominators divide a shared *root
denominator* N, and the series stands for its residue class modulo terms of
total degree > D (the *truncation order*).  Ring operations take the lcm of
the root denominators and the min of the truncation orders.

Fractional powers are ordinary rational exponents, so the compatibility
``(t_i^(1/(k*l)))^l = t_i^(1/k)`` holds definitionally: both sides carry the
exponent ``l/(k*l) = 1/k``.  Raising the root denominator is the lattice
refinement ``e/k = (e*l)/(k*l)``.

n-th roots of unit-times-monomial series are computed by Newton iteration
``y <- y - (y^n - a) / (n*y^(n-1))``, which only ever divides by n and by
units; this is exactly the tameness requirement that n be prime to the
characteristic.
"""

from fractions import Fraction
from math import lcm

from .errors import (
    ArityMismatch,
    DivisionByZero,
    ExponentDenominatorExceedsN,
    FieldMismatch,
    LeadingCoefficientRootInvalid,
    NotAUnit,
    NotUnitTimesMonomial,
    OrderExceedsTruncation,
    ParseError,
    TameViolation,
    VariableOutOfRange,
)


class _Infinity:
    """Distinguished +infinity sentinel, the valuation of the zero series."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "+infinity"


INFINITY = _Infinity()


def total_degree(exponents):
    return sum(exponents, start=Fraction(0))


class PuiseuxSeries:
    """One truncated Puiseux series; immutable after construction.

    ``terms`` maps exponent tuples to nonzero ``Scalar`` coefficients; the
    constructor drops zero coefficients and terms beyond the truncation
    order, and rejects exponents outside the ``(1/N)``-lattice.
    """

    __slots__ = ("field", "num_vars", "root_denominator", "truncation_order", "terms")

    def __init__(self, field, num_vars, root_denominator, truncation_order, terms):
        if num_vars < 1:
            raise ValueError("need at least one variable")
        if root_denominator < 1:
            raise ValueError("root denominator must be >= 1")
        truncation_order = Fraction(truncation_order)
        if truncation_order < 0:
            raise ValueError("truncation order must be >= 0")
        clean = {}
        for exponents, coeff in terms.items():
            exponents = tuple(Fraction(e) for e in exponents)
            if len(exponents) != num_vars:
                raise ArityMismatch(
                    f"exponent tuple {exponents} does not have {num_vars} entries")
            coeff = field(coeff)
            if coeff.is_zero():
                continue
            for e in exponents:
                if e < 0:
                    raise ValueError(f"negative exponent {e}")
                if root_denominator % e.denominator != 0:
                    raise ExponentDenominatorExceedsN(
                        f"exponent {e} has denominator {e.denominator}, "
                        f"not a divisor of N = {root_denominator}")
            if total_degree(exponents) > truncation_order:
                continue
            clean[exponents] = coeff
        self.field = field
        self.num_vars = num_vars
        self.root_denominator = root_denominator
        self.truncation_order = truncation_order
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field, num_vars, root_denominator=1, truncation_order=0):
        return cls(field, num_vars, root_denominator, truncation_order, {})

    @classmethod
    def constant(cls, field, num_vars, root_denominator, truncation_order, value):
        zero_exp = (Fraction(0),) * num_vars
        return cls(field, num_vars, root_denominator, truncation_order,
                   {zero_exp: field(value)})

    @classmethod
    def monomial(cls, field, num_vars, root_denominator, truncation_order,
                 coeff, exponents):
        return cls(field, num_vars, root_denominator, truncation_order,
                   {tuple(exponents): field(coeff)})

    @classmethod
    def variable(cls, field, num_vars, root_denominator, truncation_order, index):
        """The generator ``t<index>`` (1-based)."""
        if not 1 <= index <= num_vars:
            raise VariableOutOfRange(f"t{index} with only {num_vars} variables")
        exps = tuple(Fraction(1) if i == index - 1 else Fraction(0)
                     for i in range(num_vars))
        return cls.monomial(field, num_vars, root_denominator, truncation_order, 1, exps)

    def one(self):
        return self.constant(self.field, self.num_vars, self.root_denominator,
                             self.truncation_order, 1)

    # -- basic queries ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        """Terms in canonical order: total degree, then lexicographic exponents."""
        return sorted(self.terms.items(), key=lambda kv: (total_degree(kv[0]), kv[0]))

    def valuation(self):
        """Minimum total degree of a stored term; INFINITY for the zero series."""
        if not self.terms:
            return INFINITY
        return min(total_degree(e) for e in self.terms)

    def constant_coefficient(self):
        zero_exp = (Fraction(0),) * self.num_vars
        return self.terms.get(zero_exp, self.field.zero)

    # -- ring structure ----------------------------------------------------

    def _check_compatible(self, other):
        if not isinstance(other, PuiseuxSeries):
            raise TypeError(f"expected a PuiseuxSeries, got {type(other).__name__}")
        if self.field != other.field:
            raise FieldMismatch(f"series over {self.field!r} and {other.field!r}")
        if self.num_vars != other.num_vars:
            raise ArityMismatch(
                f"series in {self.num_vars} and {other.num_vars} variables")

    def _combined_params(self, other):
        return (lcm(self.root_denominator, other.root_denominator),
                min(self.truncation_order, other.truncation_order))

    def __add__(self, other):
        self._check_compatible(other)
        n, d = self._combined_params(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            terms[e] = c if acc is None else acc + c
        return PuiseuxSeries(self.field, self.num_vars, n, d, terms)

    def __sub__(self, other):
        self._check_compatible(other)
        n, d = self._combined_params(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            terms[e] = -c if acc is None else acc - c
        return PuiseuxSeries(self.field, self.num_vars, n, d, terms)

    def __mul__(self, other):
        self._check_compatible(other)
        n, d = self._combined_params(other)
        terms = {}
        by_degree = [(total_degree(e), e, c) for e, c in self.terms.items()]
        other_by_degree = [(total_degree(e), e, c) for e, c in other.terms.items()]
        for da, ea, ca in by_degree:
            for db, eb, cb in other_by_degree:
                if da + db > d:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                acc = terms.get(e)
                terms[e] = c if acc is None else acc + c
        return PuiseuxSeries(self.field, self.num_vars, n, d, terms)

    def scale(self, scalar):
        """Multiply every coefficient by a scalar of the same field."""
        scalar = self.field(scalar)
        return PuiseuxSeries(self.field, self.num_vars, self.root_denominator,
                             self.truncation_order,
                             {e: c * scalar for e, c in self.terms.items()})

    def __neg__(self):
        return self.scale(-self.field.one)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def combine(self, op, other):
        """Dispatch add/sub/mul by name."""
        if op == "add":
            return self + other
        if op == "sub":
            return self - other
        if op == "mul":
            return self * other
        raise ValueError(f"unknown series op {op!r}")

    # -- inversion and roots ------------------------------------------------

    def inverse(self):
        """Invert a unit (valuation 0); see ``inverse_factored`` otherwise."""
        if self.is_zero():
            raise DivisionByZero("the zero series has no inverse")
        if self.valuation() != 0:
            raise NotAUnit(
                f"valuation {self.valuation()} > 0; request monomial factoring instead")
        c = self.constant_coefficient()
        h = self.scale(c.inverse()) - self.one()
        # 1/(1+h) = sum (-h)^k, truncated; val(h) >= 1/N so this terminates
        result = self.one()
        power = self.one()
        minus_h = -h
        while True:
            power = power * minus_h
            if power.is_zero():
                break
            result = result + power
        return result.scale(c.inverse())

    def inverse_factored(self):
        """Invert unit * monomial: returns ``(shift, series)`` representing
        ``self**-1 = t**(-shift) * series`` with all-nonnegative exponents."""
        c, shift, unit = self.decompose_unit_monomial()
        return shift, unit.inverse().scale(c.inverse())

    def decompose_unit_monomial(self):
        """Split ``self = c * t^e * (1 + h)``; returns ``(c, e, 1 + h)``.

        Raises NotUnitTimesMonomial when the series does not have this shape
        (zero series, several terms of minimal total degree, or a term whose
        exponent is not componentwise >= e).
        """
        if self.is_zero():
            raise NotUnitTimesMonomial("zero series")
        v = self.valuation()
        leading = [(e, c) for e, c in self.terms.items() if total_degree(e) == v]
        if len(leading) != 1:
            raise NotUnitTimesMonomial(
                f"{len(leading)} terms of minimal total degree {v}")
        e0, c0 = leading[0]
        unit_terms = {}
        for e, c in self.terms.items():
            shifted = tuple(x - y for x, y in zip(e, e0))
            if any(x < 0 for x in shifted):
                raise NotUnitTimesMonomial(
                    f"exponent {tuple(map(str, e))} not componentwise >= "
                    f"{tuple(map(str, e0))}")
            unit_terms[shifted] = c * c0.inverse()
        unit = PuiseuxSeries(self.field, self.num_vars, self.root_denominator,
                             self.truncation_order, unit_terms)
        return c0, e0, unit

    def nth_root(self, n, root_choice):
        """The n-th root with leading coefficient ``root_choice``.

        Requires unit-times-monomial shape ``c * t^e * (1 + h)`` and
        ``root_choice^n = c``; the result has leading term
        ``root_choice * t^(e/n)`` and root denominator ``lcm(N, n*den(e))``.
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        p = self.field.characteristic
        if p != 0 and n % p == 0:
            raise TameViolation(f"root order {n} divisible by characteristic {p}")
        c, e, unit = self.decompose_unit_monomial()
        root_choice = self.field(root_choice)
        if root_choice ** n != c:
            raise LeadingCoefficientRootInvalid(
                f"({root_choice})^{n} != {c}, the leading coefficient")
        den_e = lcm(*(x.denominator for x in e)) if any(e) else 1
        n_out = lcm(self.root_denominator, n * den_e)
        n_scalar = self.field(n)
        # Newton iteration for the unit part, started at 1
        unit = PuiseuxSeries(self.field, self.num_vars, n_out,
                             self.truncation_order, unit.terms)
        y = unit.one()
        for _ in range(64):
            residual = y ** n - unit
            if residual.is_zero():
                break
            correction = residual * (y ** (n - 1)).inverse().scale(n_scalar.inverse())
            y = y - correction
        else:
            raise ArithmeticError("Newton iteration for the n-th root did not settle")
        shifted = PuiseuxSeries.monomial(
            self.field, self.num_vars, n_out, self.truncation_order,
            root_choice, tuple(x / n for x in e))
        return shifted * y

    # -- comparisons ---------------------------------------------------------

    def equal_mod(self, other, order):
        """True iff self - other has no term of total degree <= order."""
        self._check_compatible(other)
        order = Fraction(order)
        if order > min(self.truncation_order, other.truncation_order):
            raise OrderExceedsTruncation(
                f"order {order} exceeds truncation "
                f"{min(self.truncation_order, other.truncation_order)}")
        for e in set(self.terms) | set(other.terms):
            if total_degree(e) > order:
                continue
            if self.terms.get(e, self.field.zero) != other.terms.get(e, self.field.zero):
                return False
        return True

    def __eq__(self, other):
        """Termwise equality (field, arity and term map); ignores N and D."""
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (self.field == other.field and self.num_vars == other.num_vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.num_vars, frozenset(self.terms.items())))

    # -- printing --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        rational = self.field.characteristic == 0
        pieces = []
        for exponents, coeff in self.sorted_terms():
            mono = "*".join(_format_power(i + 1, e)
                            for i, e in enumerate(exponents) if e != 0)
            if rational and coeff.value < 0:
                sign, mag = "-", -coeff
            else:
                sign, mag = "+", coeff
            if not mono:
                body = str(mag)
            elif mag == self.field.one:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"<{self} (N={self.root_denominator}, D={self.truncation_order})>"


def _format_power(index, exponent):
    if exponent == 1:
        return f"t{index}"
    if exponent.denominator == 1:
        return f"t{index}^{exponent.numerator}"
    return f"t{index}^({exponent.numerator}/{exponent.denominator})"


# -- parser ---------------------------------------------------------------------

_TOKEN_CHARS = {"+": "PLUS", "-": "MINUS", "*": "STAR", "^": "CARET",
                "/": "SLASH", "(": "LPAREN", ")": "RPAREN"}


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((_TOKEN_CHARS[ch], ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch == "t":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(f"variable name without index at position {i}")
            tokens.append(("VAR", int(text[i + 1:j]), i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("END", None, n))
    return tokens


class _SeriesParser:
    """Recursive descent over: series := [sign] term ((+|-) term)*,
    term := factor (* factor)*, factor := INT [/ INT] | VAR [^ exponent],
    exponent := INT | ( INT [/ INT] )."""

    def __init__(self, text, num_vars, field, root_denominator):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.num_vars = num_vars
        self.field = field
        self.root_denominator = root_denominator

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(
                f"expected {kind}, found {tok[1]!r} at position {tok[2]}")
        self.pos += 1
        return tok

    def parse(self):
        terms = {}
        sign = 1
        if self.peek()[0] in ("PLUS", "MINUS"):
            sign = -1 if self.take()[0] == "MINUS" else 1
        self.term(terms, sign)
        while self.peek()[0] != "END":
            kind, value, pos = self.peek()
            if kind not in ("PLUS", "MINUS"):
                raise ParseError(f"expected '+' or '-', found {value!r} at position {pos}")
            sign = -1 if self.take()[0] == "MINUS" else 1
            self.term(terms, sign)
        return terms

    def term(self, terms, sign):
        coeff = self.field(sign)
        exponents = [Fraction(0)] * self.num_vars
        while True:
            kind, value, pos = self.peek()
            if kind == "INT":
                coeff = coeff * self.field(self.rational())
            elif kind == "VAR":
                index, exponent = self.variable_power()
                exponents[index - 1] += exponent
            else:
                raise ParseError(
                    f"expected a coefficient or variable, found {value!r} at position {pos}")
            if self.peek()[0] != "STAR":
                break
            self.take("STAR")
        acc = terms.get(tuple(exponents))
        coeff = coeff if acc is None else acc + coeff
        terms[tuple(exponents)] = coeff

    def rational(self):
        num = self.take("INT")[1]
        if self.peek()[0] == "SLASH":
            self.take("SLASH")
            den_tok = self.take("INT")
            if den_tok[1] == 0:
                raise ParseError(f"zero denominator at position {den_tok[2]}")
            return Fraction(num, den_tok[1])
        return Fraction(num)

    def variable_power(self):
        kind, index, pos = self.take("VAR")
        if not 1 <= index <= self.num_vars:
            raise VariableOutOfRange(
                f"t{index} at position {pos}, but the series has "
                f"{self.num_vars} variable(s)")
        exponent = Fraction(1)
        if self.peek()[0] == "CARET":
            self.take("CARET")
            if self.peek()[0] == "LPAREN":
                self.take("LPAREN")
                exponent = self.rational()
                self.take("RPAREN")
            else:
                exponent = Fraction(self.take("INT")[1])
        if self.root_denominator % exponent.denominator != 0:
            raise ExponentDenominatorExceedsN(
                f"exponent {exponent} at position {pos} has denominator "
                f"{exponent.denominator}, not a divisor of N = {self.root_denominator}")
        return index, exponent


def parse_series(text, num_vars, field, root_denominator, truncation_order):
    """Parse the textual series grammar into a normalized PuiseuxSeries."""
    parser = _SeriesParser(text, num_vars, field, root_denominator)
    terms = parser.parse()
    return PuiseuxSeries(field, num_vars, root_denominator, truncation_order,
                         {e: c for e, c in terms.items() if not c.is_zero()})
