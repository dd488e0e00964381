"""Truncated power series in a single variable with scalar or matrix coefficients.

The variable is whatever the caller says it is; in the monodromy code it is
``t = zeta**s_delta`` and the integer ``prefactor`` records an extra power of
``zeta`` multiplying the whole series.  Coefficients only need ``+``, ``*``,
``/ int`` and truthiness (zero test), so the same class carries
:class:`~qmonodromy.scalars.FieldScalar`, ``fmpq`` and
:class:`~qmonodromy.linalg.Mat` coefficients.  Products never look past the
common order.
"""
from __future__ import annotations

from typing import Any, Callable, Sequence

from .scalars import FieldScalar, three_q


class SeriesError(ValueError):
    pass


class ZetaSeries:
    __slots__ = ("coeffs", "prefactor")

    def __init__(self, coeffs: Sequence[Any], prefactor: int = 0) -> None:
        if not coeffs:
            raise SeriesError("a series needs at least the constant coefficient")
        self.coeffs = tuple(coeffs)
        self.prefactor = prefactor

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Any:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    @classmethod
    def constant(cls, c: Any, zero: Any, order: int) -> ZetaSeries:
        return cls([c] + [zero] * order)

    def _zero(self) -> Any:
        return self.coeffs[0] * 0

    def _check(self, other: ZetaSeries) -> int:
        if self.prefactor != other.prefactor:
            raise SeriesError(f"prefactor mismatch {self.prefactor} != {other.prefactor}")
        return min(self.order, other.order)

    def __add__(self, other: ZetaSeries) -> ZetaSeries:
        n = self._check(other)
        return ZetaSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], self.prefactor)

    def __sub__(self, other: ZetaSeries) -> ZetaSeries:
        n = self._check(other)
        return ZetaSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)], self.prefactor)

    def __neg__(self) -> ZetaSeries:
        return ZetaSeries([-c for c in self.coeffs], self.prefactor)

    def __mul__(self, other: Any) -> ZetaSeries:
        if not isinstance(other, ZetaSeries):
            return ZetaSeries([c * other for c in self.coeffs], self.prefactor)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        zero = None
        out = []
        for k in range(n + 1):
            acc = None
            for i in range(k + 1):
                if not a[i] or not b[k - i]:
                    continue
                term = a[i] * b[k - i]
                acc = term if acc is None else acc + term
            if acc is None:
                if zero is None:
                    zero = a[0] * b[0] * 0
                acc = zero
            out.append(acc)
        return ZetaSeries(out, self.prefactor + other.prefactor)

    def __rmul__(self, other: Any) -> ZetaSeries:
        return ZetaSeries([other * c for c in self.coeffs], self.prefactor)

    def __truediv__(self, n: int) -> ZetaSeries:
        return ZetaSeries([c / n for c in self.coeffs], self.prefactor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZetaSeries):
            return NotImplemented
        if self.prefactor != other.prefactor:
            return False
        n = min(self.order, other.order)
        return all(self.coeffs[k] == other.coeffs[k] for k in range(n + 1))

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return any(bool(c) for c in self.coeffs)

    def map(self, fn: Callable[[Any], Any]) -> ZetaSeries:
        return ZetaSeries([fn(c) for c in self.coeffs], self.prefactor)

    def truncate(self, order: int) -> ZetaSeries:
        return ZetaSeries(self.coeffs[: order + 1], self.prefactor)

    def subs(self, c: Any) -> ZetaSeries:
        """The series in ``c * t``: coefficient k picks up ``c**k``."""
        out = [self.coeffs[0]]
        power = c
        for k in range(1, len(self.coeffs)):
            out.append(self.coeffs[k] * power)
            power = power * c
        return ZetaSeries(out, self.prefactor)

    def shift(self, m: int) -> ZetaSeries:
        """Multiply by t**m, dropping what falls beyond the order."""
        if m == 0:
            return self
        zero = self._zero()
        return ZetaSeries(([zero] * m + list(self.coeffs))[: len(self.coeffs)], self.prefactor)

    def first_difference(self, other: ZetaSeries) -> int | None:
        n = min(self.order, other.order)
        for k in range(n + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def __repr__(self) -> str:
        return f"ZetaSeries(order={self.order}, prefactor={self.prefactor})"


def series_log(s: ZetaSeries) -> ZetaSeries:
    """log(s) for s with constant term equal to the unit, as sum (-1)^(n+1) X^n / n."""
    unit = s.coeffs[0]
    if not _is_unit(unit):
        raise SeriesError("log needs a unital constant term")
    zero = unit * 0
    x = ZetaSeries([zero] + list(s.coeffs[1:]), s.prefactor)
    out = ZetaSeries.constant(zero, zero, s.order)
    power = x
    for n in range(1, s.order + 1):
        term = power / n
        out = out + term if n % 2 else out - term
        power = power * x
    return out


def series_exp(s: ZetaSeries, unit: Any = None) -> ZetaSeries:
    """exp(s) for s with zero constant term, as sum X^n / n!."""
    if s.coeffs[0]:
        raise SeriesError("exp needs a zero constant term")
    if unit is None:
        unit = _unit_like(s.coeffs[0])
    zero = unit * 0
    out = ZetaSeries.constant(unit, zero, s.order)
    power = ZetaSeries.constant(unit, zero, s.order)
    fact = 1
    for n in range(1, s.order + 1):
        power = power * s
        fact *= n
        out = out + power / fact
    return out


def series_inverse(s: ZetaSeries, c0_inverse: Any = None) -> ZetaSeries:
    """Multiplicative inverse, geometric series in the part beyond the constant term.

    The constant term must be the unit unless its inverse is supplied.
    """
    c0 = s.coeffs[0]
    if c0_inverse is None:
        if not _is_unit(c0):
            raise SeriesError("inverse needs the unit constant term or an explicit inverse")
        c0_inverse = c0
    zero = c0 * 0
    # s = c0 (1 + y), y = c0^-1 (s - c0)
    y = ZetaSeries([zero] + [c0_inverse * c for c in s.coeffs[1:]], 0)
    acc = ZetaSeries.constant(c0_inverse * c0, zero, s.order)
    unit = acc
    power = unit
    for n in range(1, s.order + 1):
        power = power * y
        acc = acc + power if n % 2 == 0 else acc - power
    return ZetaSeries((acc * c0_inverse).coeffs, -s.prefactor)


def _unit_like(c: Any) -> Any:
    if hasattr(c, "identity_like"):
        return c.identity_like()
    return c * 0 + 1


def _is_unit(c: Any) -> bool:
    if hasattr(c, "is_identity"):
        return c.is_identity()
    return c == 1


def f3_series(order: int, field: Any = None) -> ZetaSeries:
    """sum_{k>=1} t^k / (k (q^{2k} + 1 + q^{-2k})), constant term 0."""
    if order < 1:
        raise SeriesError("f3 needs order >= 1")
    conv = field if field is not None else (lambda c: c)
    coeffs = [conv(FieldScalar(0))]
    for k in range(1, order + 1):
        coeffs.append(conv(three_q(k).inverse() / k))
    return ZetaSeries(coeffs)
