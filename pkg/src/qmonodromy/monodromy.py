"""Closed-form monodromy operators and the central prefactor series.

A :class:`MonodromyForm` stores each of the nine entries as a polynomial in
``t = zeta**s_delta`` with :class:`AlgebraExpression` coefficients.  The fixed
zeta power of entry (a, b) is implied by its position (see :mod:`.graded`), so
a form evaluates in a representation to a :class:`GradedMatrix`.  The scalar
prefactor (an exponential of a central series) is kept apart and evaluated on
request.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Callable

import flint

from .algebra import (E1, E2, E3, F1, F2, F3, AlgebraExpression, AutomorphismSpec, Q, QH, apply_automorphism,
                      casimir, qs)
from .graded import GradedMatrix
from .linalg import Mat
from .representations import Representation
from .scalars import LatticeError, kappa, three_q
from .series import ZetaSeries, series_exp, series_log

Poly = dict[int, AlgebraExpression]
Index = tuple[int, int]

PREFACTORS = ("F", "Fbar", "none")

#: cyclic relabelling of the auxiliary basis, 0-based: 1 -> 2 -> 3 -> 1
SIGMA = (1, 2, 0)


# ---------------------------------------------------------------------------
# small polynomial helpers over AlgebraExpression


def _const(e: AlgebraExpression) -> Poly:
    return {0: e}


def _lin(c0: AlgebraExpression, c1: AlgebraExpression) -> Poly:
    """c0 + t c1."""
    return {0: c0, 1: c1}


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out[i + j] + x * y if i + j in out else x * y
    return {k: v for k, v in out.items() if v}


def _padd(*ps: Poly) -> Poly:
    out: Poly = {}
    for p in ps:
        for k, v in p.items():
            out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if v}


def _pscale(p: Poly, e: AlgebraExpression | Any, left: bool = True) -> Poly:
    return {k: (e * v if left else v * e) for k, v in p.items()}


def _shift(p: Poly, m: int) -> Poly:
    return {k + m: v for k, v in p.items()}


# ---------------------------------------------------------------------------


@dataclass
class MonodromyForm:
    """A 3x3 matrix of polynomials in t with algebra coefficients, times a central prefactor."""

    name: str
    entries: dict[Index, Poly]
    prefactor: str = "F"
    variant: str = "gl3"
    notes: list[str] = dc_field(default_factory=list)

    def evaluate(self, rep: Representation, order: int) -> GradedMatrix:
        """The polynomial part in ``rep``; t-powers above ``order`` are dropped."""
        zero = Mat.zeros(rep.dim, rep.field)
        out = {}
        for ab, poly in self.entries.items():
            coeffs = [zero] * (order + 1)
            for k, e in poly.items():
                if k <= order:
                    coeffs[k] = coeffs[k] + e.evaluate(rep)
            out[ab] = ZetaSeries(coeffs)
        return GradedMatrix(out, rep.dim, rep.field, order)

    def evaluate_full(self, rep: Representation, order: int) -> GradedMatrix:
        return self.evaluate(rep, order).scale_left(prefactor_series(rep, order, self.prefactor, self.variant))

    def map(self, fn: Callable[[Index, int, AlgebraExpression], AlgebraExpression], name: str | None = None) -> MonodromyForm:
        entries = {ab: {k: fn(ab, k, e) for k, e in p.items()} for ab, p in self.entries.items()}
        return MonodromyForm(name or self.name, entries, self.prefactor, self.variant, list(self.notes))

    def max_degree(self) -> int:
        return max((k for p in self.entries.values() for k in p), default=0)

    def dump(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "prefactor": self.prefactor,
            "variant": self.variant,
            "entries": {
                f"{a + 1}{b + 1}": {str(k): e.dump() for k, e in sorted(p.items())}
                for (a, b), p in sorted(self.entries.items())
            },
        }


# ---------------------------------------------------------------------------
# the N'-ansatz and D, for both variants


@dataclass
class Ansatz:
    """Entries of N' (diagonal N'_aa(t) = 1 - t * diag[a]), D and the three central elements."""

    variant: str
    diag: list[AlgebraExpression]
    off: dict[Index, AlgebraExpression]
    cartan: list[AlgebraExpression]
    casimirs: list[AlgebraExpression]


def ansatz(variant: str = "gl3", flip_sign: bool = False) -> Ansatz:
    kap = kappa()
    third = Fraction(1, 3)
    if variant == "gl3":
        diag = [Q(-2, 0, 0), Q(0, -2, 0), Q(0, 0, -2)]
        off = {
            (0, 1): F1 * Q(-1, -1, 0, 1) * kap,
            (1, 2): F2 * Q(0, -1, -1, 1) * kap,
            (0, 2): F3 * Q(-1, 0, -1, 1) * kap,
            (1, 0): E1 * kap,
            (2, 1): E2 * kap,
            (2, 0): E3 * kap,
        }
        d = [Q(1 - third, -third, -third), Q(-third, 1 - third, -third), Q(-third, -third, 1 - third)]
        cas = [casimir(k) for k in (1, 2, 3)]
    elif variant == "sl3":
        t = lambda n: Fraction(n, 3)  # noqa: E731
        diag = [QH(t(-4), t(-2), t(-2)), QH(t(2), t(-2), t(-2)), QH(t(2), t(4), t(-2))]
        off = {
            (0, 1): F1 * QH(t(-1), t(-2), t(1)) * kap,
            (1, 2): F2 * QH(t(2), t(1), t(1)) * kap,
            (0, 2): F3 * QH(t(-1), t(1), t(1)) * kap,
            (1, 0): E1 * kap,
            (2, 1): E2 * kap,
            (2, 0): E3 * kap,
        }
        d = [QH(t(2), t(1)), QH(t(-1), t(1)), QH(t(-1), t(-2))]
        cas = sl3_casimirs()
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if flip_sign:
        off[(1, 0)] = -off[(1, 0)]
    return Ansatz(variant, diag, off, d, cas)


def sl3_casimirs() -> list[AlgebraExpression]:
    """The central elements in the H-variables, for the sl3-valued homomorphism."""
    kap = kappa()
    t = lambda n: Fraction(n, 3)  # noqa: E731
    c1 = (QH(t(-4), t(-2), t(-8)) + QH(t(2), t(-2), t(-2)) + QH(t(2), t(4), t(4))
          + F1 * E1 * QH(t(-1), t(-2), t(-5)) * kap ** 2
          + F2 * E2 * QH(t(2), t(1), t(1)) * kap ** 2
          + F3 * E3 * QH(t(-1), t(1), t(1)) * kap ** 2
          - F3 * E1 * E2 * QH(t(-1), t(1), t(-2)) * kap ** 3)
    c2 = (-QH(t(-2), t(-4), t(-10)) - QH(t(-2), t(2), t(-4)) - QH(t(4), t(2), t(2))
          - F1 * E1 * QH(t(1), t(2), t(-1)) * kap ** 2
          - F2 * E2 * QH(t(-2), t(-1), t(-7)) * kap ** 2
          - F3 * E3 * QH(t(1), t(-1), t(-1)) * kap ** 2
          - F1 * F2 * E3 * QH(t(1), t(-1), t(-1)) * kap ** 3)
    c3 = AlgebraExpression.scalar(qs(-2))
    return [c1, c2, c3]


def ansatz_form(variant: str = "gl3", flip_sign: bool = False) -> MonodromyForm:
    """e^F N' D with the entries of N' and D as displayed for the variant."""
    a = ansatz(variant, flip_sign)
    one = AlgebraExpression.scalar(1)
    entries: dict[Index, Poly] = {}
    for r in range(3):
        for c in range(3):
            if r == c:
                p = _lin(one, -a.diag[r])
            else:
                p = _const(a.off[(r, c)])
            entries[(r, c)] = _pscale(p, a.cartan[c], left=False)
    return MonodromyForm(f"ansatz-{variant}", entries, "F", variant)


# ---------------------------------------------------------------------------
# the closed forms


def closed_form_M(flip_sign: bool = False) -> MonodromyForm:
    """q^(-G/3) e^F times the matrix with q^(G_a) - t q^(-G_a) on the diagonal."""
    kap = kappa()
    pre = Q(-Fraction(1, 3), -Fraction(1, 3), -Fraction(1, 3))
    g = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    entries: dict[Index, Poly] = {}
    for a in range(3):
        entries[(a, a)] = _lin(Q(*g[a]), -Q(*(-x for x in g[a])))
    entries[(0, 1)] = _const(Q(-1, 0, 0) * F1 * kap)
    entries[(0, 2)] = _const(Q(-1, 0, 0) * F3 * kap)
    entries[(1, 2)] = _const(Q(0, -1, 0) * F2 * kap)
    entries[(1, 0)] = _const(E1 * Q(1, 0, 0) * kap)
    entries[(2, 0)] = _const(E3 * Q(1, 0, 0) * kap)
    entries[(2, 1)] = _const(E2 * Q(0, 1, 0) * kap)
    if flip_sign:
        entries[(1, 0)] = _pscale(entries[(1, 0)], -1)
    form = MonodromyForm("M", {ab: _pscale(p, pre) for ab, p in entries.items()}, "F", "gl3")
    if flip_sign:
        form.notes.append("debug: sign of entry (2,1) flipped")
    return form


def symmetric_display() -> MonodromyForm:
    """The E/F-symmetric normalization of the closed form, entries as displayed."""
    kap = kappa()
    h = Fraction(1, 2)
    pre = Q(-Fraction(1, 3), -Fraction(1, 3), -Fraction(1, 3))
    g = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    entries: dict[Index, Poly] = {}
    for a in range(3):
        entries[(a, a)] = _lin(Q(*g[a]), -Q(*(-x for x in g[a])))
    entries[(0, 1)] = _const(Q(-h, -h, 0, h) * F1 * kap)
    entries[(0, 2)] = _const(Q(-h, 0, -h, h) * F3 * kap)
    entries[(1, 2)] = _const(Q(0, -h, -h, h) * F2 * kap)
    entries[(1, 0)] = _const(E1 * Q(h, h, 0, -h) * kap)
    entries[(2, 0)] = _const(E3 * Q(h, 0, h, -h) * kap)
    entries[(2, 1)] = _const(E2 * Q(0, h, h, -h) * kap)
    return MonodromyForm("M-symmetric", {ab: _pscale(p, pre) for ab, p in entries.items()}, "F", "gl3")


def twisted_form(form: MonodromyForm, spec: AutomorphismSpec) -> MonodromyForm:
    return form.map(lambda _ab, _k, e: apply_automorphism(spec, e), name=f"{form.name}^aut")


#: one-sign alternatives for the barred operator, keyed by a short label
BAR_ALTERNATIVES = ("display", "11:G2+1->G2-1", "31:G2-1->G2+1", "33:G2-1->G2+1")


def bar_M(alternative: str = "display", flip_sign: bool = False) -> MonodromyForm:
    """The operator built from the diagram-automorphism twist, entries as displayed.

    ``alternative`` replaces one exponent by its sign-flipped version; it only
    exists so that the consistency checks can report which reading survives.
    """
    if alternative not in BAR_ALTERNATIVES:
        raise ValueError(f"unknown alternative {alternative!r}")
    kap = kappa()
    k2 = kap ** 2

    def a1() -> Poly:  # q^G1 + t q^(-G1-1)
        return _lin(Q(1, 0, 0), Q(-1, 0, 0, -1))

    def a2(c: int) -> Poly:  # q^G2 + t q^(-G2+c)
        return _lin(Q(0, 1, 0), Q(0, -1, 0, c))

    def a3() -> Poly:  # q^G3 + t q^(-G3+1)
        return _lin(Q(0, 0, 1), Q(0, 0, -1, 1))

    c11 = -1 if alternative == "11:G2+1->G2-1" else 1
    c31 = 1 if alternative == "31:G2-1->G2+1" else -1
    c33 = 1 if alternative == "33:G2-1->G2+1" else -1
    t = lambda e: {1: e}  # noqa: E731
    m: dict[Index, Poly] = {
        (0, 0): _padd(_pmul(a1(), a2(c11)), t(F1 * E1 * k2)),
        (0, 1): _padd(_pscale(_pscale(a1(), -kap * qs(2)), F2 * Q(0, -1, 0), left=False), _const(F3 * E1 * k2)),
        (0, 2): _padd(_pscale(_pscale(a2(1), kap * qs(1)), F3 * Q(-1, 0, 0), left=False),
                      t(F1 * F2 * Q(-1, -1, 0) * k2 * qs(2))),
        (1, 0): _padd(_pscale(_pscale(a1(), kap), E2 * Q(0, 1, 0), left=False), t(F1 * E3 * k2)),
        (1, 1): _padd(_pmul(a1(), a3()), t(F3 * E3 * k2)),
        (1, 2): _padd(_pscale(_pscale(a3(), -kap), F1 * Q(-1, 0, 0), left=False),
                      _const(F3 * E2 * Q(-1, 1, 0) * k2 * qs(1))),
        (2, 0): _padd(_pscale(_pscale(a2(c31), -kap * qs(1)), E3 * Q(1, 0, 0), left=False),
                      _const(E1 * E2 * Q(1, 1, 0) * k2)),
        (2, 1): _padd(_pscale(_pscale(a3(), kap), E1 * Q(1, 0, 0), left=False), t(F2 * E3 * Q(1, -1, 0) * k2 * qs(1))),
        (2, 2): _padd(_pmul(a2(c33), a3()), t(F2 * E2 * k2)),
    }
    if flip_sign:
        m[(1, 0)] = _pscale(m[(1, 0)], -1)
    tt = Fraction(-2, 3)
    form = MonodromyForm("Mbar" if alternative == "display" else f"Mbar[{alternative}]",
                         {ab: _pscale(p, Q(tt, tt, tt)) for ab, p in m.items()}, "Fbar", "gl3")
    return form


def sl3_substitution(form: MonodromyForm) -> MonodromyForm:
    """t -> t q^((2G - 2)/3) applied to every delta in the entries (the prefactor follows separately)."""
    two3 = Fraction(2, 3)

    def fn(ab: Index, k: int, e: AlgebraExpression) -> AlgebraExpression:
        n = k + int(ab[0] < ab[1])
        return Q(n * two3, n * two3, n * two3, -n * two3) * e if n else e

    out = form.map(fn, name=f"{form.name}-sl3-sub")
    out.prefactor = "F-sub"
    return out


def require_integer_degree(rep: Representation) -> int:
    """The substitution needs G to act as one integer on the whole representation."""
    g = rep.total_degree()
    if g is None or Fraction(g).denominator != 1:
        raise LatticeError(f"{rep.name}: total degree {g} is not a single integer")
    return int(g)


# ---------------------------------------------------------------------------
# central series in a representation


def casimir_matrices(rep: Representation, variant: str = "gl3") -> list[Mat]:
    exprs = [casimir(k) for k in (1, 2, 3)] if variant == "gl3" else sl3_casimirs()
    return [e.evaluate(rep) for e in exprs]


def casimir_polynomial(cs: list[Any], order: int) -> ZetaSeries:
    """1 - C1 t - C2 t^2 - C3 t^3 truncated to ``order``."""
    unit = cs[0].identity_like() if hasattr(cs[0], "identity_like") else cs[0] * 0 + 1
    zero = unit * 0
    coeffs = [unit] + [-c for c in cs] + [zero] * max(0, order - 3)
    return ZetaSeries(coeffs[: order + 1])


def log_series(rep: Representation, order: int, variant: str = "gl3") -> ZetaSeries:
    """-log(1 - C1 t - C2 t^2 - C3 t^3) in ``rep``."""
    return -series_log(casimir_polynomial(casimir_matrices(rep, variant), order))


def f_series(rep: Representation, order: int, variant: str = "gl3") -> ZetaSeries:
    """F(t) in ``rep``: coefficient k of the log series divided by q^{2k} + 1 + q^{-2k}."""
    lg = log_series(rep, order, variant)
    field = rep.field
    coeffs = [lg[0]] + [lg[k].scale(field.one / field(three_q(k))) for k in range(1, order + 1)]
    return ZetaSeries(coeffs)


def prefactor_series(rep: Representation, order: int, kind: str, variant: str = "gl3") -> ZetaSeries:
    ident = Mat.identity(rep.dim, rep.field)
    if kind == "none":
        return ZetaSeries([ident] + [ident * 0] * order)
    q = rep.field.q
    if kind == "F":
        return series_exp(f_series(rep, order, variant), ident)
    if kind == "Fbar":
        f = f_series(rep, order, variant)
        return series_exp(f.subs(-q(-1)) + f.subs(-q(1)), ident)
    if kind == "F-sub":
        g = Fraction(2, 3)
        return series_exp(f_series(rep, order, "gl3").subs(rep.cartan(g, g, g).scale(q(-g))), ident)
    raise ValueError(f"unknown prefactor {kind!r}")


def f_scalar_series(order: int, field: Any, shifts: tuple[int, ...] = (-4, 0, 2)) -> ZetaSeries:
    """Sum of f3(q^s t) over ``shifts``, as field scalars."""
    out = None
    for s in shifts:
        coeffs = [field.zero] + [field(three_q(k).inverse() / k) * field.q(s * k) for k in range(1, order + 1)]
        term = ZetaSeries(coeffs)
        out = term if out is None else out + term
    assert out is not None
    return out


# ---------------------------------------------------------------------------
# symbolic F_k as polynomials in the three central elements


def f_polynomials(order: int) -> list[Any]:
    """F_k (k = 1..order) as polynomials in C1, C2, C3 from sum F_k t^k / k = -log(1 - sum C_i t^i)."""
    ctx = flint.fmpq_mpoly_ctx.get(("C1", "C2", "C3"), "lex")
    gens = ctx.gens()
    lg = -series_log(casimir_polynomial(list(gens), order))
    return [lg[k] * k for k in range(1, order + 1)]


# ---------------------------------------------------------------------------
# explicit zeta form and the cyclic family


ExplicitMatrix = dict[Index, dict[int, Mat]]


def relabel_grading(s: tuple[int, int, int], steps: int = 1) -> tuple[int, int, int]:
    """(s0, s1, s2) -> (s1, s2, s0): s_alpha -> s_beta -> s_delta - s_alpha - s_beta."""
    for _ in range(steps % 3):
        s = (s[1], s[2], s[0])
    return s


def sigma_family(form: MonodromyForm, rep: Representation, i: int, s: tuple[int, int, int],
                 displayed: bool = False) -> ExplicitMatrix:
    """The i-th rotated operator in explicit zeta form (polynomial part only).

    The operator is built with the relabelled grading and then conjugated on the
    auxiliary side: entry (a, b) is entry (sigma^-(i-1)(a), sigma^-(i-1)(b)) of
    the relabelled operator, i.e. Sigma^(i-1) M Sigma^-(i-1).  ``displayed=True``
    conjugates the other way round, Sigma^-(i-1) M Sigma^(i-1).
    """
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    n = i - 1
    base = form.evaluate(rep, form.max_degree()).explicit(relabel_grading(s, n))
    step = SIGMA if displayed else tuple(SIGMA.index(x) for x in range(3))
    perm = list(range(3))
    for _ in range(n):
        perm = [step[p] for p in perm]
    out: ExplicitMatrix = {}
    for a in range(3):
        for b in range(3):
            src = base.get((perm[a], perm[b]))
            if src:
                out[(a, b)] = src
    return out


def sigma_matrix() -> list[list[int]]:
    """The permutation matrix with ones at (1,3), (2,1), (3,2)."""
    return [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
