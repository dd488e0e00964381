"""Exact coefficient arithmetic in the base variable x = q^(1/6).

Two coefficient fields are provided.  :class:`SymbolicField` works with
:class:`FieldScalar`, rational functions in ``x`` over the rationals kept in
reduced canonical form.  :class:`RationalField` evaluates at a rational
sample ``x = r`` (so ``q = r**6``) and works with ``flint.fmpq``.  Every other
module only touches scalars through ``field.q(e)``, ``field(c)``, integer
literals and the ordinary arithmetic operators, so the two are interchangeable.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

import flint

Rational = Union[int, Fraction]

#: q-exponents live on this lattice: thirds from the K-matrix, halves from
#: the q-exponential weights and the symmetric form.
EXPONENT_DENOMINATOR = 6


class LatticeError(ValueError):
    """A q-exponent does not lie on the (1/6)Z lattice."""


def qexponent(value: Rational | str) -> Fraction:
    """Validate and return a q-exponent as a reduced fraction."""
    e = Fraction(value)
    if EXPONENT_DENOMINATOR % e.denominator:
        raise LatticeError(f"q-exponent {e} is not a multiple of 1/{EXPONENT_DENOMINATOR}")
    return e


def _x_power(e: Rational) -> int:
    return int(qexponent(e) * EXPONENT_DENOMINATOR)


def _fmpq(c: Rational) -> flint.fmpq:
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq(c)


def _to_fraction(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _low_degree(p: flint.fmpq_poly) -> int:
    m = 0
    while p[m] == 0:
        m += 1
    return m


_ONE_POLY = flint.fmpq_poly([1])
_ZERO_POLY = flint.fmpq_poly([])


def _format_exponent(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"


class LaurentScalar:
    """Laurent polynomial in x = q^(1/6) with rational coefficients.

    Stored as ``x**val * poly`` with ``poly(0) != 0`` (or the zero polynomial).
    """

    __slots__ = ("val", "poly")

    def __init__(self, terms: dict[Fraction, Rational] | None = None) -> None:
        self.val = 0
        self.poly = _ZERO_POLY
        if terms:
            items = [(_x_power(e), c) for e, c in terms.items() if c]
            if items:
                low = min(k for k, _ in items)
                coeffs = [0] * (max(k for k, _ in items) - low + 1)
                for k, c in items:
                    coeffs[k - low] += _fmpq(c)
                self._set(low, flint.fmpq_poly(coeffs))

    def _set(self, val: int, poly: flint.fmpq_poly) -> None:
        if poly.is_zero():
            self.val, self.poly = 0, _ZERO_POLY
            return
        m = _low_degree(poly)
        self.val = val + m
        self.poly = poly.right_shift(m) if m else poly

    @classmethod
    def _raw(cls, val: int, poly: flint.fmpq_poly) -> LaurentScalar:
        out = cls.__new__(cls)
        out._set(val, poly)
        return out

    @classmethod
    def monomial(cls, e: Rational, c: Rational = 1) -> LaurentScalar:
        return cls({qexponent(e): c})

    def terms(self) -> dict[Fraction, Fraction]:
        """Map q-exponent -> coefficient, ascending exponents, no zeros."""
        out = {}
        for i, c in enumerate(self.poly.coeffs()):
            if c != 0:
                out[Fraction(self.val + i, EXPONENT_DENOMINATOR)] = _to_fraction(c)
        return out

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentScalar({Fraction(0): other})
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.val == other.val and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.val, str(self.poly)))

    def _aligned(self, other: LaurentScalar) -> tuple[int, flint.fmpq_poly, flint.fmpq_poly]:
        v = min(self.val, other.val)
        a = self.poly.left_shift(self.val - v) if self.val > v else self.poly
        b = other.poly.left_shift(other.val - v) if other.val > v else other.poly
        return v, a, b

    def __add__(self, other: LaurentScalar) -> LaurentScalar:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        v, a, b = self._aligned(other)
        return LaurentScalar._raw(v, a + b)

    def __neg__(self) -> LaurentScalar:
        return LaurentScalar._raw(self.val, -self.poly)

    def __sub__(self, other: LaurentScalar) -> LaurentScalar:
        return self + (-other)

    def __mul__(self, other: LaurentScalar | int) -> LaurentScalar:
        if isinstance(other, int):
            return LaurentScalar._raw(self.val, self.poly * other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return LaurentScalar._raw(self.val + other.val, self.poly * other.poly)

    __rmul__ = __mul__

    def dump(self) -> list[list[str]]:
        return [[_format_exponent(e), str(c)] for e, c in self.terms().items()]

    def __repr__(self) -> str:
        if not self:
            return "0"
        return " + ".join(f"({c})*q^({_format_exponent(e)})" for e, c in self.terms().items())


class FieldScalar:
    """Element of Q(x), x = q^(1/6), in reduced canonical form.

    Represents ``x**val * num / den`` where ``num(0) != 0``, ``den(0) == 1`` and
    ``gcd(num, den) == 1``; zero is ``num == 0, val == 0, den == 1``.  With this
    normalization equality of values is equality of representations.
    """

    __slots__ = ("val", "num", "den")

    def __init__(self, value: Rational | LaurentScalar | FieldScalar = 0) -> None:
        if isinstance(value, FieldScalar):
            self.val, self.num, self.den = value.val, value.num, value.den
        elif isinstance(value, LaurentScalar):
            self.val, self.num, self.den = value.val, value.poly, _ONE_POLY
        else:
            c = _fmpq(value)
            self.val, self.num, self.den = 0, (flint.fmpq_poly([c]) if c != 0 else _ZERO_POLY), _ONE_POLY

    @classmethod
    def _new(cls, val: int, num: flint.fmpq_poly, den: flint.fmpq_poly) -> FieldScalar:
        out = cls.__new__(cls)
        out.val, out.num, out.den = val, num, den
        return out

    @classmethod
    def _normalized(cls, val: int, num: flint.fmpq_poly, den: flint.fmpq_poly) -> FieldScalar:
        if num.is_zero():
            return ZERO
        m = _low_degree(num)
        if m:
            num = num.right_shift(m)
            val += m
        if den.is_one():
            return cls._new(val, num, _ONE_POLY)
        m = _low_degree(den)
        if m:
            den = den.right_shift(m)
            val -= m
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        c = den[0]
        if c != 1:
            num = num / c
            den = den / c
        if den.is_one():
            den = _ONE_POLY
        return cls._new(val, num, den)

    @classmethod
    def qpow(cls, e: Rational) -> FieldScalar:
        """The monomial q**e."""
        return cls._new(_x_power(e), _ONE_POLY, _ONE_POLY)

    # -- structure -------------------------------------------------------
    @property
    def numerator(self) -> LaurentScalar:
        return LaurentScalar._raw(self.val, self.num)

    @property
    def denominator(self) -> LaurentScalar:
        return LaurentScalar._raw(0, self.den)

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def normalize(self) -> FieldScalar:
        return FieldScalar._normalized(self.val, self.num, self.den)

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldScalar):
            if isinstance(other, (int, Fraction)):
                other = FieldScalar(other)
            else:
                return NotImplemented
        return self.val == other.val and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.val, str(self.num), str(self.den)))

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other: object) -> FieldScalar | None:
        if isinstance(other, FieldScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldScalar(other)
        if isinstance(other, LaurentScalar):
            return FieldScalar(other)
        return None

    def __add__(self, other: object) -> FieldScalar:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        v = min(self.val, o.val)
        a = self.num.left_shift(self.val - v) if self.val > v else self.num
        b = o.num.left_shift(o.val - v) if o.val > v else o.num
        if self.den == o.den:
            if self.den.is_one():
                s = a + b
                if s.is_zero():
                    return ZERO
                m = _low_degree(s)
                return FieldScalar._new(v + m, s.right_shift(m) if m else s, _ONE_POLY)
            return FieldScalar._normalized(v, a + b, self.den)
        return FieldScalar._normalized(v, a * o.den + b * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> FieldScalar:
        if not self.num:
            return self
        return FieldScalar._new(self.val, -self.num, self.den)

    def __sub__(self, other: object) -> FieldScalar:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> FieldScalar:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> FieldScalar:
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return FieldScalar._new(self.val, self.num * other, self.den) if self.num else self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return ZERO
        val = self.val + o.val
        if self.den.is_one() and o.den.is_one():
            return FieldScalar._new(val, self.num * o.num, _ONE_POLY)
        # cross cancellation keeps the gcds small
        n1, d2 = self.num, o.den
        n2, d1 = o.num, self.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 // g, d2 // g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        c = den[0]
        if c != 1:
            num, den = num / c, den / c
        return FieldScalar._new(val, num, _ONE_POLY if den.is_one() else den)

    __rmul__ = __mul__

    def inverse(self) -> FieldScalar:
        if not self.num:
            raise ZeroDivisionError("inverse of zero FieldScalar")
        c = self.num[0]
        return FieldScalar._new(-self.val, self.den / c, self.num / c) if not self.num.is_constant() \
            else FieldScalar._new(-self.val, self.den / c, _ONE_POLY)

    def __truediv__(self, other: object) -> FieldScalar:
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return FieldScalar._new(self.val, self.num / other, self.den) if self.num else self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> FieldScalar:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> FieldScalar:
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- evaluation and output -------------------------------------------
    def evaluate(self, r: Rational | flint.fmpq) -> flint.fmpq:
        """Value at x = r (q = r**6)."""
        r = r if isinstance(r, flint.fmpq) else _fmpq(r)
        den = self.den(r)
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes at x = {r}")
        return r ** self.val * self.num(r) / den

    def dump(self) -> dict[str, list[list[str]]]:
        """Canonical JSON-ready form: ascending exponents as 'p/q', coefficients as rationals."""
        return {"num": self.numerator.dump(), "den": self.denominator.dump()}

    def __repr__(self) -> str:
        if self.den.is_one():
            return repr(self.numerator)
        return f"({self.numerator!r}) / ({self.denominator!r})"


ZERO = FieldScalar._new(0, _ZERO_POLY, _ONE_POLY)
ONE = FieldScalar._new(0, _ONE_POLY, _ONE_POLY)


# ---------------------------------------------------------------------------
# coefficient fields


class SymbolicField:
    """Q(q^(1/6)) with q an indeterminate."""

    name = "symbolic"
    zero = ZERO
    one = ONE

    def __call__(self, c: Rational | FieldScalar | LaurentScalar) -> FieldScalar:
        return c if isinstance(c, FieldScalar) else FieldScalar(c)

    def q(self, e: Rational) -> FieldScalar:
        return FieldScalar.qpow(e)

    @property
    def kappa(self) -> FieldScalar:
        return FieldScalar.qpow(1) - FieldScalar.qpow(-1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymbolicField)

    def __hash__(self) -> int:
        return hash("symbolic")

    def __repr__(self) -> str:
        return "SymbolicField()"


class SampleError(ValueError):
    """A rational sample point makes a required denominator vanish."""


class RationalField:
    """Exact evaluation at x = r, i.e. q = r**6, with fmpq arithmetic."""

    def __init__(self, r: Rational | str, order: int = 6) -> None:
        self.r = Fraction(r)
        self._x = _fmpq(self.r)
        if self.r == 0:
            raise SampleError("sample r must be nonzero")
        bad = [d for d in critical_denominators(order) if d.evaluate(self._x) == 0]
        if bad:
            raise SampleError(f"sample r = {self.r} annihilates {bad[0]!r}")
        self.zero = flint.fmpq(0)
        self.one = flint.fmpq(1)

    @property
    def name(self) -> str:
        return f"rational:{self.r}"

    def __call__(self, c: Rational | FieldScalar | LaurentScalar | flint.fmpq) -> flint.fmpq:
        if isinstance(c, flint.fmpq):
            return c
        if isinstance(c, LaurentScalar):
            c = FieldScalar(c)
        if isinstance(c, FieldScalar):
            return c.evaluate(self._x)
        return _fmpq(c)

    def q(self, e: Rational) -> flint.fmpq:
        return self._x ** _x_power(e)

    @property
    def kappa(self) -> flint.fmpq:
        return self.q(1) - self.q(-1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField) and other.r == self.r

    def __hash__(self) -> int:
        return hash(("rational", self.r))

    def __repr__(self) -> str:
        return f"RationalField({self.r})"


Field = Union[SymbolicField, RationalField]


def make_field(mode: str | None = None, order: int = 6) -> Field:
    """``None``/'symbolic' gives the symbolic field, anything else is read as a rational r."""
    if mode is None or mode == "symbolic":
        return SymbolicField()
    return RationalField(Fraction(mode), order)


# ---------------------------------------------------------------------------
# q-numbers and the series used throughout


def kappa() -> FieldScalar:
    return FieldScalar.qpow(1) - FieldScalar.qpow(-1)


def qnum(n: int) -> LaurentScalar:
    """[n]_q = (q^n - q^-n) / (q - q^-1), expanded."""
    if n < 0:
        return -qnum(-n)
    return LaurentScalar({Fraction(n - 1 - 2 * j): 1 for j in range(n)})


def qnum_at(n: int, base: Rational = 1) -> FieldScalar:
    """[n]_{q^base} as a field element."""
    if n == 0:
        return ZERO
    num = FieldScalar.qpow(base * n) - FieldScalar.qpow(-base * n)
    return num / (FieldScalar.qpow(base) - FieldScalar.qpow(-base))


def qfactorial(n: int, base: Rational = 1) -> FieldScalar:
    out = ONE
    for k in range(1, n + 1):
        out = out * qnum_at(k, base)
    return out


def qexp_coefficient(n: int, base: Rational = 1) -> FieldScalar:
    """Coefficient of x**n in exp_{q^base}(x): t^(-(n-1)n/4) / [n]_t! with t = q^base."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return FieldScalar.qpow(-Fraction((n - 1) * n, 4) * base) / qfactorial(n, base)


def three_q(k: int) -> FieldScalar:
    """q^{2k} + 1 + q^{-2k}."""
    return FieldScalar.qpow(2 * k) + 1 + FieldScalar.qpow(-2 * k)


def critical_denominators(order: int) -> list[FieldScalar]:
    """Everything the library ever divides by, up to series order ``order``."""
    out = [kappa(), qnum_at(2)]
    for k in range(1, max(order, 3) + 1):
        out.append(three_q(k))
        out.append(qnum_at(k))
        out.append(FieldScalar.qpow(4 * k) + FieldScalar.qpow(2 * k) + 1)
    return out


def as_fraction_list(values: Iterable[flint.fmpq]) -> list[Fraction]:
    return [_to_fraction(v) for v in values]
