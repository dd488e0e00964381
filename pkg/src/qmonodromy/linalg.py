"""Sparse square matrices over an exact coefficient field.

Representation matrices here are extremely sparse (a tensor cube generator
has a few dozen nonzeros out of 729), so rows are stored as dicts and zero
entries are never kept.
"""
from __future__ import annotations

from typing import Any, Iterable, Iterator

Row = dict[int, Any]


class Mat:
    __slots__ = ("n", "rows", "field")

    def __init__(self, n: int, rows: dict[int, Row] | None, field: Any) -> None:
        self.n = n
        self.rows = rows if rows is not None else {}
        self.field = field

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, n: int, field: Any) -> Mat:
        return cls(n, {}, field)

    @classmethod
    def identity(cls, n: int, field: Any) -> Mat:
        return cls(n, {i: {i: field.one} for i in range(n)}, field)

    @classmethod
    def diag(cls, values: Iterable[Any], field: Any) -> Mat:
        vals = list(values)
        return cls(len(vals), {i: {i: v} for i, v in enumerate(vals) if v}, field)

    @classmethod
    def unit(cls, n: int, a: int, b: int, field: Any, c: Any = None) -> Mat:
        """c * E_ab (0-based indices)."""
        return cls(n, {a: {b: field.one if c is None else c}}, field)

    @classmethod
    def from_dense(cls, dense: list[list[Any]], field: Any) -> Mat:
        rows = {}
        for i, line in enumerate(dense):
            r = {j: field(v) for j, v in enumerate(line) if v}
            if r:
                rows[i] = r
        return cls(len(dense), rows, field)

    def identity_like(self) -> Mat:
        return Mat.identity(self.n, self.field)

    def is_identity(self) -> bool:
        if len(self.rows) != self.n:
            return False
        for i, r in self.rows.items():
            if len(r) != 1 or r.get(i) != 1:
                return False
        return True

    # -- access ----------------------------------------------------------
    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self.rows.get(i, {}).get(j, self.field.zero)

    def entries(self) -> Iterator[tuple[int, int, Any]]:
        for i in sorted(self.rows):
            r = self.rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def to_dense(self) -> list[list[Any]]:
        out = [[self.field.zero] * self.n for _ in range(self.n)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def first_nonzero(self) -> tuple[int, int] | None:
        for i, j, _ in self.entries():
            return i, j
        return None

    def diagonal(self) -> list[Any]:
        return [self[i, i] for i in range(self.n)]

    def is_diagonal(self) -> bool:
        return all(set(r) == {i} for i, r in self.rows.items())

    # -- arithmetic ------------------------------------------------------
    def _same(self, other: Mat) -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch {self.n} != {other.n}")

    def __add__(self, other: Mat) -> Mat:
        if not isinstance(other, Mat):
            return NotImplemented
        self._same(other)
        if not other.rows:
            return self
        if not self.rows:
            return other
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            target = rows.get(i)
            if target is None:
                rows[i] = dict(r)
                continue
            for j, v in r.items():
                w = target.get(j)
                if w is None:
                    target[j] = v
                else:
                    s = w + v
                    if s:
                        target[j] = s
                    else:
                        del target[j]
            if not target:
                del rows[i]
        return Mat(self.n, rows, self.field)

    def __neg__(self) -> Mat:
        return Mat(self.n, {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()}, self.field)

    def __sub__(self, other: Mat) -> Mat:
        if not isinstance(other, Mat):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Any) -> Mat:
        if not c:
            return Mat(self.n, {}, self.field)
        rows = {}
        for i, r in self.rows.items():
            nr = {}
            for j, v in r.items():
                w = v * c
                if w:
                    nr[j] = w
            if nr:
                rows[i] = nr
        return Mat(self.n, rows, self.field)

    def __mul__(self, other: Any) -> Mat:
        if not isinstance(other, Mat):
            return self.scale(other)
        self._same(other)
        orows = other.rows
        rows = {}
        for i, r in self.rows.items():
            acc: Row = {}
            for k, a in r.items():
                rk = orows.get(k)
                if rk is None:
                    continue
                for j, b in rk.items():
                    w = acc.get(j)
                    acc[j] = a * b if w is None else w + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return Mat(self.n, rows, self.field)

    def __rmul__(self, c: Any) -> Mat:
        return self.scale(c)

    def __truediv__(self, c: Any) -> Mat:
        return Mat(self.n, {i: {j: v / c for j, v in r.items()} for i, r in self.rows.items()}, self.field)

    def __pow__(self, k: int) -> Mat:
        out = self.identity_like()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.rows)

    def map(self, fn: Any, field: Any = None) -> Mat:
        rows = {}
        for i, r in self.rows.items():
            nr = {j: fn(v) for j, v in r.items()}
            nr = {j: v for j, v in nr.items() if v}
            if nr:
                rows[i] = nr
        return Mat(self.n, rows, field if field is not None else self.field)

    def apply(self, vec: Row) -> Row:
        out: Row = {}
        for i, r in self.rows.items():
            acc = None
            for j, a in r.items():
                v = vec.get(j)
                if v is not None:
                    acc = a * v if acc is None else acc + a * v
            if acc is not None and acc:
                out[i] = acc
        return out

    def transpose(self) -> Mat:
        rows: dict[int, Row] = {}
        for i, j, v in self.entries():
            rows.setdefault(j, {})[i] = v
        return Mat(self.n, rows, self.field)

    def __repr__(self) -> str:
        return f"Mat(n={self.n}, nnz={self.nnz})"


def commutator(a: Mat, b: Mat) -> Mat:
    return a * b - b * a


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product, basis index i*b.n + j for e_i (x) e_j."""
    n = a.n * b.n
    rows: dict[int, Row] = {}
    for i, k, x in a.entries():
        for j, l, y in b.entries():
            w = x * y
            if w:
                rows.setdefault(i * b.n + j, {})[k * b.n + l] = w
    return Mat(n, rows, a.field)


def nullspace(rows: list[Row], columns: list[int], field: Any) -> list[Row]:
    """Basis of {v : row . v = 0 for all rows} with support in ``columns``.

    Exact Gauss-Jordan elimination; the pivot is the first nonzero entry in
    row order, scanning columns in the given order, so results are stable
    across runs.
    """
    work = [{c: r[c] for c in columns if c in r and r[c]} for r in rows]
    work = [r for r in work if r]
    pivots: list[tuple[int, Row]] = []
    for r in work:
        for c, pr in pivots:
            if c in r:
                f = r[c]
                for cc, v in pr.items():
                    w = r.get(cc, field.zero) - f * v
                    if w:
                        r[cc] = w
                    else:
                        r.pop(cc, None)
        if not r:
            continue
        c = next(cc for cc in columns if cc in r)
        inv = field.one / r[c]
        r = {cc: v * inv for cc, v in r.items()}
        # back-substitute into earlier pivots
        for idx, (pc, pr) in enumerate(pivots):
            if c in pr:
                f = pr[c]
                for cc, v in r.items():
                    w = pr.get(cc, field.zero) - f * v
                    if w:
                        pr[cc] = w
                    else:
                        pr.pop(cc, None)
        pivots.append((c, r))
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in columns:
        if free in pivot_cols:
            continue
        v: Row = {free: field.one}
        for c, pr in pivots:
            if free in pr:
                v[c] = -pr[free]
        basis.append(v)
    return basis
