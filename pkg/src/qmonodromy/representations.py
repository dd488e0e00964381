"""Finite-dimensional weight representations of U_q(gl3)."""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable

from .algebra import AlgebraExpression, AutomorphismSpec, ConfigError, GENERATORS, composite_generators
from .linalg import Mat, kron, nullspace
from .scalars import Field, qexponent

Weight = tuple[Fraction, Fraction, Fraction]

#: tensor powers above this need an explicit override
MAX_TENSOR_POWER = 3


class Representation:
    """Generator matrices for E1, E2, F1, F2 plus the G-weight of every basis vector.

    Cartan monomials act diagonally through the weight table, so the object is
    a weight representation by construction.
    """

    def __init__(self, name: str, field: Field, gens: dict[str, Mat], weights: Iterable[Iterable[Any]]) -> None:
        self.name = name
        self.field = field
        self.weights: list[Weight] = [tuple(Fraction(x) for x in w) for w in weights]  # type: ignore[misc]
        self.dim = len(self.weights)
        missing = set(GENERATORS) - set(gens)
        if missing:
            raise ValueError(f"missing generators {sorted(missing)}")
        for g, m in gens.items():
            if m.n != self.dim:
                raise ValueError(f"generator {g} has dimension {m.n}, weight table has {self.dim}")
        self._gens = dict(gens)
        self._cartan: dict[tuple[Fraction, ...], Mat] = {}

    def gen(self, name: str) -> Mat:
        m = self._gens.get(name)
        if m is None:
            if name not in ("E3", "F3"):
                raise KeyError(name)
            e3, f3 = composite_generators()
            m = (e3 if name == "E3" else f3).evaluate(self)
            self._gens[name] = m
        return m

    def cartan(self, a: Any = 0, b: Any = 0, c: Any = 0) -> Mat:
        """q^(a G1 + b G2 + c G3) as a diagonal matrix."""
        key = (qexponent(a), qexponent(b), qexponent(c))
        m = self._cartan.get(key)
        if m is None:
            q = self.field.q
            m = Mat.diag([q(key[0] * w[0] + key[1] * w[1] + key[2] * w[2]) for w in self.weights], self.field)
            self._cartan[key] = m
        return m

    def total_degree(self) -> Fraction | None:
        """Eigenvalue of G = G1 + G2 + G3 if it is constant, else None."""
        vals = {sum(w) for w in self.weights}
        return vals.pop() if len(vals) == 1 else None

    def evaluate(self, expr: AlgebraExpression) -> Mat:
        return expr.evaluate(self)

    def weight_spaces(self) -> dict[Weight, list[int]]:
        out: dict[Weight, list[int]] = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, []).append(i)
        return out

    def replace(self, name: str | None = None, **gens: Mat) -> Representation:
        """Copy with some generator matrices swapped out (used for falsifiability probes)."""
        new = {g: self._gens[g] for g in GENERATORS}
        new.update(gens)
        return Representation(name or self.name, self.field, new, self.weights)

    def __repr__(self) -> str:
        return f"Representation({self.name!r}, dim={self.dim})"


def fundamental(field: Field) -> Representation:
    one = field.one
    gens = {
        "E1": Mat.unit(3, 0, 1, field, one),
        "E2": Mat.unit(3, 1, 2, field, one),
        "F1": Mat.unit(3, 1, 0, field, one),
        "F2": Mat.unit(3, 2, 1, field, one),
    }
    return Representation("fund", field, gens, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def trivial(field: Field) -> Representation:
    gens = {g: Mat.zeros(1, field) for g in GENERATORS}
    return Representation("trivial", field, gens, [(0, 0, 0)])


def tensor(r1: Representation, r2: Representation, name: str | None = None) -> Representation:
    """Tensor product through E -> E(x)1 + q^-H (x) E, F -> F (x) q^H + 1 (x) F."""
    if r1.field != r2.field:
        raise ValueError("representations live over different fields")
    i1, i2 = Mat.identity(r1.dim, r1.field), Mat.identity(r2.dim, r2.field)
    gens = {}
    for i, h in ((1, (1, -1, 0)), (2, (0, 1, -1))):
        mh = tuple(-x for x in h)
        gens[f"E{i}"] = kron(r1.gen(f"E{i}"), i2) + kron(r1.cartan(*mh), r2.gen(f"E{i}"))
        gens[f"F{i}"] = kron(r1.gen(f"F{i}"), r2.cartan(*h)) + kron(i1, r2.gen(f"F{i}"))
    weights = [tuple(a + b for a, b in zip(w1, w2)) for w1 in r1.weights for w2 in r2.weights]
    return Representation(name or f"({r1.name})x({r2.name})", r1.field, gens, weights)


def tensor_power(r: Representation, n: int, name: str | None = None) -> Representation:
    if n < 1:
        raise ValueError("tensor power must be >= 1")
    out = r
    for _ in range(n - 1):
        out = tensor(out, r)
    out.name = name or (r.name if n == 1 else f"tensor:{n}")
    return out


def make_representation(label: str, field: Field, allow_large: bool = False) -> Representation:
    """Parse a CLI label: ``fund``, ``trivial`` or ``tensor:n``."""
    if label == "fund":
        return fundamental(field)
    if label == "trivial":
        return trivial(field)
    if label.startswith("tensor:"):
        try:
            n = int(label.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"bad tensor power in {label!r}") from exc
        if n < 1:
            raise ConfigError(f"tensor power must be positive in {label!r}")
        if n > MAX_TENSOR_POWER and not allow_large:
            raise ConfigError(f"tensor power {n} exceeds {MAX_TENSOR_POWER}; pass the override flag")
        return tensor_power(fundamental(field), n, label)
    raise ConfigError(f"unknown representation {label!r}")


def twisted(rep: Representation, spec: AutomorphismSpec) -> Representation:
    """The pull-back of ``rep`` along the automorphism ``spec``."""
    img = spec.images()
    gens = {g: img[g].evaluate(rep) for g in GENERATORS}
    return Representation(f"{rep.name}^aut", rep.field, gens, rep.weights)


def highest_weight_vectors(rep: Representation) -> list[tuple[Weight, dict[int, Any]]]:
    """Basis of ker E1 ∩ ker E2, organised by weight (weights in descending order)."""
    e1, e2 = rep.gen("E1"), rep.gen("E2")
    out = []
    for w, cols in sorted(rep.weight_spaces().items(), reverse=True):
        colset = set(cols)
        rows = []
        for m in (e1, e2):
            for i in sorted(m.rows):
                r = {j: v for j, v in m.rows[i].items() if j in colset}
                if r:
                    rows.append(r)
        for v in nullspace(rows, cols, rep.field):
            out.append((w, v))
    return out
