"""Symbolic expressions in the generators of U_q(gl3).

An expression is a finite linear combination of words.  A word is a tuple of
factors, each either a generator name (``E1``, ``E2``, ``F1``, ``F2`` and the
composite root vectors ``E3``, ``F3``) or a Cartan monomial ``q^(a G1 + b G2 + c G3)``
stored as a triple of exponents.  No normal form is attempted: two
expressions are compared by evaluating them in representations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Protocol, Union

from .linalg import Mat
from .report import Residual, mat_residual
from .scalars import ONE, ZERO, FieldScalar, LatticeError, kappa, qexponent, qnum_at

Cartan = tuple[Fraction, Fraction, Fraction]
Factor = Union[str, Cartan]
Word = tuple[Factor, ...]

GENERATORS = ("E1", "E2", "F1", "F2")
COMPOSITES = ("E3", "F3")

#: alpha_i(G_j): the G-weight shift carried by E_i.
ROOT_SHIFT = {1: (1, -1, 0), 2: (0, 1, -1)}


def cartan_key(a: Any, b: Any, c: Any) -> Cartan:
    return (qexponent(a), qexponent(b), qexponent(c))


def _merge(word: Iterable[Factor]) -> Word:
    out: list[Factor] = []
    for f in word:
        if isinstance(f, tuple):
            if out and isinstance(out[-1], tuple):
                prev = out.pop()
                f = (prev[0] + f[0], prev[1] + f[1], prev[2] + f[2])
            if f != (0, 0, 0):
                out.append(f)
        else:
            out.append(f)
    return tuple(out)


class AlgebraExpression:
    """Linear combination of words with :class:`FieldScalar` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, FieldScalar] | None = None) -> None:
        self.terms: dict[Word, FieldScalar] = {}
        for w, c in (terms or {}).items():
            self._add_term(_merge(w), c)

    def _add_term(self, word: Word, c: FieldScalar) -> None:
        if not c:
            return
        prev = self.terms.get(word)
        s = c if prev is None else prev + c
        if s:
            self.terms[word] = s
        else:
            self.terms.pop(word, None)

    # -- constructors ----------------------------------------------------
    @classmethod
    def gen(cls, name: str) -> AlgebraExpression:
        if name not in GENERATORS + COMPOSITES:
            raise ValueError(f"unknown generator {name!r}")
        return cls({(name,): ONE})

    @classmethod
    def cartan(cls, a: Any = 0, b: Any = 0, c: Any = 0, coef: Any = 1) -> AlgebraExpression:
        return cls({(cartan_key(a, b, c),): FieldScalar(coef)})

    @classmethod
    def scalar(cls, c: Any) -> AlgebraExpression:
        return cls({(): FieldScalar(c)})

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: AlgebraExpression) -> AlgebraExpression:
        out = AlgebraExpression()
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            out._add_term(w, c)
        return out

    def __neg__(self) -> AlgebraExpression:
        out = AlgebraExpression()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: AlgebraExpression) -> AlgebraExpression:
        return self + (-other)

    def __mul__(self, other: Any) -> AlgebraExpression:
        out = AlgebraExpression()
        if isinstance(other, AlgebraExpression):
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out._add_term(_merge(w1 + w2), c1 * c2)
        else:
            c = FieldScalar(other) if not isinstance(other, FieldScalar) else other
            for w, c1 in self.terms.items():
                out._add_term(w, c1 * c)
        return out

    def __rmul__(self, other: Any) -> AlgebraExpression:
        return self * other

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return " + ".join(f"({c!r})*{format_word(w)}" for w, c in self.terms.items()) or "0"

    # -- structure -------------------------------------------------------
    def expand(self) -> AlgebraExpression:
        """Rewrite E3 and F3 in terms of the simple generators."""
        e3, f3 = composite_generators()
        sub = {"E3": e3, "F3": f3}
        out = AlgebraExpression()
        for w, c in self.terms.items():
            acc = AlgebraExpression.scalar(c)
            for f in w:
                if isinstance(f, str) and f in sub:
                    acc = acc * sub[f]
                else:
                    acc = acc * AlgebraExpression({(f,): ONE})
            out = out + acc
        return out

    def evaluate(self, rep: RepresentationLike) -> Mat:
        acc = Mat.zeros(rep.dim, rep.field)
        conv = rep.field
        for w, c in self.terms.items():
            m = None
            for f in w:
                fm = rep.cartan(*f) if isinstance(f, tuple) else rep.gen(f)
                m = fm if m is None else m * fm
            if m is None:
                m = Mat.identity(rep.dim, rep.field)
            acc = acc + m.scale(conv(c))
        return acc

    def dump(self) -> list[dict[str, Any]]:
        return [{"word": [format_factor(f) for f in w], "coef": c.dump()} for w, c in self.terms.items()]


class RepresentationLike(Protocol):
    dim: int
    field: Any

    def gen(self, name: str) -> Mat: ...

    def cartan(self, a: Any, b: Any, c: Any) -> Mat: ...


def format_factor(f: Factor) -> str:
    if isinstance(f, tuple):
        return "Q(" + ",".join(str(x) for x in f) + ")"
    return f


def format_word(w: Word) -> str:
    return "*".join(format_factor(f) for f in w) or "1"


# ---------------------------------------------------------------------------
# named elements

E1 = AlgebraExpression.gen("E1")
E2 = AlgebraExpression.gen("E2")
F1 = AlgebraExpression.gen("F1")
F2 = AlgebraExpression.gen("F2")
E3 = AlgebraExpression.gen("E3")
F3 = AlgebraExpression.gen("F3")


def Q(a: Any = 0, b: Any = 0, c: Any = 0, const: Any = 0) -> AlgebraExpression:
    """q^(const + a G1 + b G2 + c G3)."""
    return AlgebraExpression({(cartan_key(a, b, c),): FieldScalar.qpow(const)})


def QH(h1: Any = 0, h2: Any = 0, const: Any = 0) -> AlgebraExpression:
    """q^(const + h1 H1 + h2 H2) with H1 = G1 - G2, H2 = G2 - G3."""
    h1, h2 = Fraction(h1), Fraction(h2)
    return Q(h1, h2 - h1, -h2, const)


def qs(e: Any) -> FieldScalar:
    return FieldScalar.qpow(e)


def composite_generators() -> tuple[AlgebraExpression, AlgebraExpression]:
    """E3 = E1 E2 - q^-1 E2 E1 and F3 = F2 F1 - q F1 F2."""
    e3 = E1 * E2 - E2 * E1 * qs(-1)
    f3 = F2 * F1 - F1 * F2 * qs(1)
    return e3, f3


def casimir(k: int) -> AlgebraExpression:
    """The three central elements generating the scalar prefactor of the monodromy."""
    kap = kappa()
    if k == 1:
        return (Q(-2, 0, 0, -2) + Q(0, -2, 0) + Q(0, 0, -2, 2)
                + F1 * E1 * Q(-1, -1, 0, -1) * kap ** 2
                + F2 * E2 * Q(0, -1, -1, 1) * kap ** 2
                + F3 * E3 * Q(-1, 0, -1, 1) * kap ** 2
                - F3 * E1 * E2 * Q(-1, 0, -1) * kap ** 3)
    if k == 2:
        return (-Q(-2, -2, 0, -2) - Q(-2, 0, -2) - Q(0, -2, -2, 2)
                - F1 * E1 * Q(-1, -1, -2, 1) * kap ** 2
                - F2 * E2 * Q(-2, -1, -1, -1) * kap ** 2
                - F3 * E3 * Q(-1, -2, -1, 1) * kap ** 2
                - F1 * F2 * E3 * Q(-1, -2, -1, 1) * kap ** 3)
    if k == 3:
        return Q(-2, -2, -2)
    raise ValueError(f"Casimir index must be 1, 2 or 3, got {k}")


# ---------------------------------------------------------------------------
# automorphisms E_i -> nu_i E_i q^(sum nu_ij G_j), F_i -> nu_i^-1 q^(-sum nu_ij G_j) F_i


class ConfigError(ValueError):
    """Invalid user-supplied configuration."""


@dataclass(frozen=True)
class AutomorphismSpec:
    nu1: FieldScalar
    nu2: FieldScalar
    nu: tuple[tuple[Fraction, Fraction, Fraction], tuple[Fraction, Fraction, Fraction]]

    def __post_init__(self) -> None:
        if not self.nu1 or not self.nu2:
            raise ConfigError("nu_1 and nu_2 must be nonzero")
        try:
            rows = tuple(tuple(qexponent(x) for x in row) for row in self.nu)
        except LatticeError as exc:
            raise ConfigError(str(exc)) from exc
        if len(rows) != 2 or any(len(r) != 3 for r in rows):
            raise ConfigError("nu_ij must be a 2x3 array")
        object.__setattr__(self, "nu", rows)
        (n11, n12, n13), (n21, n22, n23) = rows
        if n12 - n13 != n21 - n22:
            raise ConfigError(f"automorphism constraint violated: nu12 - nu13 = {n12 - n13} but nu21 - nu22 = {n21 - n22}")

    @classmethod
    def identity(cls) -> AutomorphismSpec:
        return cls(ONE, ONE, ((0, 0, 0), (0, 0, 0)))

    @classmethod
    def symmetric(cls) -> AutomorphismSpec:
        """The normalization that makes the monodromy matrix look symmetric in E and F."""
        h = Fraction(1, 2)
        return cls(qs(-h), qs(-h), ((-h, h, 0), (0, -h, h)))

    def images(self) -> dict[str, AlgebraExpression]:
        out = {}
        for i, nu_i in ((1, self.nu1), (2, self.nu2)):
            row = self.nu[i - 1]
            out[f"E{i}"] = AlgebraExpression.gen(f"E{i}") * Q(*row) * nu_i
            out[f"F{i}"] = Q(*(-x for x in row)) * AlgebraExpression.gen(f"F{i}") * nu_i.inverse()
        return out


def apply_automorphism(spec: AutomorphismSpec, e: AlgebraExpression) -> AlgebraExpression:
    img = spec.images()
    out = AlgebraExpression()
    for w, c in e.expand().terms.items():
        acc = AlgebraExpression.scalar(c)
        for f in w:
            acc = acc * (img[f] if isinstance(f, str) else AlgebraExpression({(f,): ONE}))
        out = out + acc
    return out


# ---------------------------------------------------------------------------
# defining relations, evaluated in a representation


def _weight_support(m: Mat, weights: list[tuple[Fraction, ...]], shift: tuple[int, int, int]) -> str | None:
    for i, j, _ in m.entries():
        d = tuple(weights[i][k] - weights[j][k] for k in range(3))
        if d != shift:
            return f"entry {(i, j)} shifts weight by {d}"
    return None


def check_gl3_relations(rep: Any) -> list[Residual]:
    """Every defining relation of U_q(gl3) as an exact matrix residual."""
    n = rep.dim
    for g in GENERATORS:
        if rep.gen(g).n != n:
            raise ValueError(f"generator {g} has dimension {rep.gen(g).n}, expected {n}")
    field = rep.field
    out: list[Residual] = []
    ident = Mat.identity(n, field)
    # q^{X1} q^{X2} = q^{X1+X2} on a few sample exponents
    samples = [(1, 0, 0), (0, Fraction(1, 3), 0), (0, 0, Fraction(-1, 2)), (1, 1, 1)]
    for x in samples:
        for y in samples:
            s = tuple(a + b for a, b in zip(x, y))
            fx, fy = (",".join(str(Fraction(v)) for v in t) for t in (x, y))
            out.append(mat_residual(f"xx ({fx})+({fy})", rep.cartan(*x) * rep.cartan(*y), rep.cartan(*s)))
    out.append(mat_residual("xx q^0 = 1", rep.cartan(0, 0, 0), ident))
    # q^X E_i q^-X = q^{alpha_i(X)} E_i, likewise for F_i, X = G_j
    for i in (1, 2):
        shift = ROOT_SHIFT[i]
        for j in range(3):
            x = [0, 0, 0]
            x[j] = 1
            qx, qmx = rep.cartan(*x), rep.cartan(*(-v for v in x))
            a = shift[j]
            e, f = rep.gen(f"E{i}"), rep.gen(f"F{i}")
            out.append(mat_residual(f"xexf E{i} G{j + 1}", qx * e * qmx, e.scale(field.q(a))))
            out.append(mat_residual(f"xexf F{i} G{j + 1}", qx * f * qmx, f.scale(field.q(-a))))
        bad = _weight_support(rep.gen(f"E{i}"), rep.weights, shift)
        out.append(Residual(f"weight shift E{i}", bad is None, bad))
        bad = _weight_support(rep.gen(f"F{i}"), rep.weights, tuple(-v for v in shift))
        out.append(Residual(f"weight shift F{i}", bad is None, bad))
    # [E_i, F_j] = delta_ij [H_i]
    kap_inv = field.one / field.kappa
    for i in (1, 2):
        h = [0, 0, 0]
        h[i - 1], h[i] = 1, -1
        qh, qmh = rep.cartan(*h), rep.cartan(*(-v for v in h))
        for j in (1, 2):
            comm = rep.gen(f"E{i}") * rep.gen(f"F{j}") - rep.gen(f"F{j}") * rep.gen(f"E{i}")
            rhs = (qh - qmh).scale(kap_inv) if i == j else Mat.zeros(n, field)
            out.append(mat_residual(f"ef E{i} F{j}", comm, rhs))
    # Serre relations
    two = field(qnum_at(2))
    for x in ("E", "F"):
        for i, j in ((1, 2), (2, 1)):
            a, b = rep.gen(f"{x}{i}"), rep.gen(f"{x}{j}")
            res = a * a * b - (a * b * a).scale(two) + b * a * a
            out.append(mat_residual(f"serre {x}{i}{x}{j}", res))
    return out


__all__ = [
    "AlgebraExpression", "AutomorphismSpec", "ConfigError", "E1", "E2", "E3", "F1", "F2", "F3",
    "Q", "QH", "apply_automorphism", "casimir", "check_gl3_relations", "composite_generators",
    "qs", "ZERO",
]
