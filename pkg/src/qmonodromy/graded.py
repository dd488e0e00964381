"""3x3 matrices over End(V) with the monodromy spectral-degree pattern.

Entry (a, b) of every matrix in the factorization carries a fixed power
``zeta**p_ab`` times a power series in ``t = zeta**s_delta`` with

    p_ab = c_a - c_b + s_delta * [a < b],   c = (0, s_alpha, s_alpha + s_beta).

Only the series in ``t`` is stored.  Since p_ab + p_bc - p_ac is
``s_delta * ([a<b] + [b<c] - [a<c])`` with the bracket always 0 or 1, the
product of two such matrices has the same pattern and the stored data never
depend on the grading integers.
"""
from __future__ import annotations

from typing import Any, Callable

from .linalg import Mat
from .series import ZetaSeries

Index = tuple[int, int]


def shift(a: int, b: int, c: int) -> int:
    return int(a < b) + int(b < c) - int(a < c)


def pattern(a: int, b: int, s: tuple[int, int, int]) -> int:
    """The zeta exponent p_ab for grading (s0, s1, s2), 0-based indices."""
    s0, s1, s2 = s
    c = (0, s1, s1 + s2)
    return c[a] - c[b] + (s0 + s1 + s2) * int(a < b)


def pattern_vector(a: int, b: int) -> tuple[int, int, int]:
    """p_ab as multiplicities of (s0, s1, s2)."""
    c = ((0, 0, 0), (0, 1, 0), (0, 1, 1))
    d = int(a < b)
    return tuple(c[a][i] - c[b][i] + d for i in range(3))  # type: ignore[return-value]


def zero_series(dim: int, field: Any, order: int) -> ZetaSeries:
    z = Mat.zeros(dim, field)
    return ZetaSeries([z] * (order + 1))


def const_series(m: Mat, order: int) -> ZetaSeries:
    z = Mat.zeros(m.n, m.field)
    return ZetaSeries([m] + [z] * order)


def poly_series(coeffs: dict[int, Mat], dim: int, field: Any, order: int) -> ZetaSeries:
    z = Mat.zeros(dim, field)
    return ZetaSeries([coeffs.get(k, z) for k in range(order + 1)])


class GradedMatrix:
    __slots__ = ("entries", "dim", "field", "order")

    def __init__(self, entries: dict[Index, ZetaSeries], dim: int, field: Any, order: int) -> None:
        self.entries = {k: v for k, v in entries.items() if v}
        self.dim = dim
        self.field = field
        self.order = order

    @classmethod
    def identity(cls, dim: int, field: Any, order: int) -> GradedMatrix:
        one = const_series(Mat.identity(dim, field), order)
        return cls({(a, a): one for a in range(3)}, dim, field, order)

    @classmethod
    def zero(cls, dim: int, field: Any, order: int) -> GradedMatrix:
        return cls({}, dim, field, order)

    def __getitem__(self, ab: Index) -> ZetaSeries:
        s = self.entries.get(ab)
        return s if s is not None else zero_series(self.dim, self.field, self.order)

    def __mul__(self, other: GradedMatrix) -> GradedMatrix:
        out: dict[Index, ZetaSeries] = {}
        for (a, b), x in self.entries.items():
            for c in range(3):
                y = other.entries.get((b, c))
                if y is None:
                    continue
                term = (x * y).shift(shift(a, b, c))
                prev = out.get((a, c))
                out[(a, c)] = term if prev is None else prev + term
        return GradedMatrix(out, self.dim, self.field, min(self.order, other.order))

    def __add__(self, other: GradedMatrix) -> GradedMatrix:
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return GradedMatrix(out, self.dim, self.field, min(self.order, other.order))

    def __neg__(self) -> GradedMatrix:
        return GradedMatrix({k: -v for k, v in self.entries.items()}, self.dim, self.field, self.order)

    def __sub__(self, other: GradedMatrix) -> GradedMatrix:
        return self + (-other)

    def scale_left(self, s: ZetaSeries) -> GradedMatrix:
        """Multiply every entry on the left by the series ``s`` in t."""
        return GradedMatrix({k: s * v for k, v in self.entries.items()}, self.dim, self.field, self.order)

    def map(self, fn: Callable[[Index, ZetaSeries], ZetaSeries]) -> GradedMatrix:
        return GradedMatrix({k: fn(k, v) for k, v in self.entries.items()}, self.dim, self.field, self.order)

    def truncate(self, order: int) -> GradedMatrix:
        return GradedMatrix({k: v.truncate(order) for k, v in self.entries.items()}, self.dim, self.field, order)

    def first_difference(self, other: GradedMatrix) -> str | None:
        n = min(self.order, other.order)
        for a in range(3):
            for b in range(3):
                x, y = self[(a, b)], other[(a, b)]
                for k in range(n + 1):
                    d = x[k] - y[k]
                    if d:
                        return f"({a + 1},{b + 1}) t^{k} entry {d.first_nonzero()}"
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None  # type: ignore[assignment]

    def is_lower_unitriangular(self) -> bool:
        ident = Mat.identity(self.dim, self.field)
        for (a, b), v in self.entries.items():
            if a < b:
                return False
            if a == b and not (v[0] == ident and not any(v[k] for k in range(1, len(v)))):
                return False
        return True

    def is_upper_unitriangular(self) -> bool:
        return self.transpose_pattern().is_lower_unitriangular()

    def transpose_pattern(self) -> GradedMatrix:
        return GradedMatrix({(b, a): v for (a, b), v in self.entries.items()}, self.dim, self.field, self.order)

    def is_diagonal(self) -> bool:
        return all(a == b for a, b in self.entries)

    def explicit(self, s: tuple[int, int, int]) -> dict[Index, dict[int, Mat]]:
        """Expand to zeta exponents for grading ``s`` (t-coefficients beyond the order are absent)."""
        sd = sum(s)
        out: dict[Index, dict[int, Mat]] = {}
        for (a, b), v in self.entries.items():
            p = pattern(a, b, s)
            terms: dict[int, Mat] = {}
            for k in range(len(v)):
                if v[k]:
                    e = p + k * sd
                    terms[e] = terms[e] + v[k] if e in terms else v[k]
            if terms:
                out[(a, b)] = terms
        return out
