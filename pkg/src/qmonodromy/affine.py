"""The loop-algebra side: Jimbo images, root vectors and the factorized R-matrix pieces.

Root vectors of the quantum loop algebra are never built abstractly.  The
generators are mapped into a representation first (through the Jimbo
homomorphism, optionally precomposed with the diagram automorphism that swaps
the labels 1 and 2) and the recursive definitions are run on matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

from .algebra import AlgebraExpression, E3, F3, Q, QH, ConfigError
from .graded import GradedMatrix, pattern_vector
from .linalg import Mat
from .report import Residual, mat_residual
from .representations import Representation
from .scalars import FieldScalar, qexp_coefficient, qnum_at, three_q
from .series import ZetaSeries, series_exp, series_log

VARIANTS = ("gl3", "sl3")

#: loop Cartan matrix, alpha_j(h_i)
AFFINE_CARTAN = ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))

#: h_i as G-vectors (same for both variants: -(H1 + H2) = G3 - G1)
H_IMAGE = {0: (-1, 0, 1), 1: (1, -1, 0), 2: (0, 1, -1)}

#: the three positive roots of sl3, and which simple labels they contain
GAMMAS = ("a", "b", "ab")
ROOT_MULT = {"a": (0, 1, 0), "b": (0, 0, 1), "ab": (0, 1, 1)}
DELTA = (1, 1, 1)


class GradingError(ValueError):
    """A factor would be placed at a matrix position with the wrong spectral degree."""


def jimbo_phi(name: str, variant: str = "gl3") -> AlgebraExpression:
    """Image of e_i / f_i (i = 0, 1, 2) in U_q(gl3)."""
    if variant not in VARIANTS:
        raise ConfigError(f"unknown variant {variant!r}")
    table = {
        "e1": AlgebraExpression.gen("E1"), "e2": AlgebraExpression.gen("E2"),
        "f1": AlgebraExpression.gen("F1"), "f2": AlgebraExpression.gen("F2"),
    }
    third = Fraction(1, 3)
    if variant == "gl3":
        table["e0"] = F3 * Q(-1, 0, -1)
        table["f0"] = E3 * Q(1, 0, 1)
    else:
        table["e0"] = F3 * QH(-third, third)
        table["f0"] = E3 * QH(third, -third)
    if name not in table:
        raise ValueError(f"unknown affine generator {name!r}")
    return table[name]


def jimbo_cartan(i: int, nu: Any = 1) -> tuple[Fraction, Fraction, Fraction]:
    """G-exponents of the image of q^(nu h_i)."""
    return tuple(Fraction(nu) * x for x in H_IMAGE[i])  # type: ignore[return-value]


@dataclass
class AffineImages:
    """Matrices of e_i, f_i and the G-vectors of h_i in a representation.

    ``tau`` precomposes with the diagram automorphism swapping labels 1 and 2.
    """

    rep: Representation
    variant: str
    tau: bool
    e: dict[int, Mat]
    f: dict[int, Mat]
    h: dict[int, tuple[Fraction, Fraction, Fraction]]

    @property
    def field(self) -> Any:
        return self.rep.field

    def cartan_h(self, i: int, nu: Any = 1) -> Mat:
        return self.rep.cartan(*(Fraction(nu) * x for x in self.h[i]))


def affine_images(rep: Representation, variant: str = "gl3", tau: bool = False) -> AffineImages:
    perm = {0: 0, 1: 2, 2: 1} if tau else {0: 0, 1: 1, 2: 2}
    e = {i: jimbo_phi(f"e{perm[i]}", variant).evaluate(rep) for i in range(3)}
    f = {i: jimbo_phi(f"f{perm[i]}", variant).evaluate(rep) for i in range(3)}
    h = {i: tuple(Fraction(x) for x in H_IMAGE[perm[i]]) for i in range(3)}
    return AffineImages(rep, variant, tau, e, f, h)  # type: ignore[arg-type]


def affine_relation_check(img: AffineImages) -> list[Residual]:
    """Defining relations of U_q(L(sl3)) on the images, as exact matrix residuals."""
    field = img.field
    n = img.rep.dim
    out: list[Residual] = []
    ident = Mat.identity(n, field)
    for i in range(3):
        out.append(mat_residual(f"lxx q^h{i} q^-h{i}", img.cartan_h(i) * img.cartan_h(i, -1), ident))
        for j in range(3):
            a = AFFINE_CARTAN[j][i]
            qh, qmh = img.cartan_h(j), img.cartan_h(j, -1)
            out.append(mat_residual(f"lxexf e{i} h{j}", qh * img.e[i] * qmh, img.e[i].scale(field.q(a))))
            out.append(mat_residual(f"lxexf f{i} h{j}", qh * img.f[i] * qmh, img.f[i].scale(field.q(-a))))
    kap_inv = field.one / field.kappa
    for i in range(3):
        for j in range(3):
            comm = img.e[i] * img.f[j] - img.f[j] * img.e[i]
            rhs = (img.cartan_h(i) - img.cartan_h(i, -1)).scale(kap_inv) if i == j else Mat.zeros(n, field)
            out.append(mat_residual(f"lef e{i} f{j}", comm, rhs))
    two = field(qnum_at(2))
    for gens, tag in ((img.e, "e"), (img.f, "f")):
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                a, b = gens[i], gens[j]
                out.append(mat_residual(f"lsr {tag}{i}{tag}{j}", a * a * b - (a * b * a).scale(two) + b * a * a))
    for nu in (1, Fraction(1, 3), Fraction(1, 2)):
        tot = tuple(sum(Fraction(nu) * img.h[i][k] for i in range(3)) for k in range(3))
        out.append(mat_residual(f"qh0h1 nu={nu}", img.rep.cartan(*tot), ident))
    return out


# ---------------------------------------------------------------------------
# root vectors


@dataclass
class RootVectors:
    """Images of root vectors up to ``order`` multiples of delta.

    ``real[g][k]`` is the vector of gamma + k delta, ``dual[g][k]`` the vector of
    (delta - gamma) + k delta, ``prime[g]`` the series sum_k x'_{k delta, gamma} t^k
    and ``imag[g]`` the logarithmic series of the second kind.  ``mult`` maps
    every real root key to its multiplicities of (alpha0, alpha1, alpha2).
    """

    side: str
    order: int
    real: dict[str, list[Mat]]
    dual: dict[str, list[Mat]]
    prime: dict[str, ZetaSeries]
    imag: dict[str, ZetaSeries]
    weight_shift: dict[str, tuple[int, int, int]] = dc_field(default_factory=dict)

    def real_series(self, g: str) -> ZetaSeries:
        return ZetaSeries(self.real[g])

    def dual_series(self, g: str) -> ZetaSeries:
        return ZetaSeries(self.dual[g])


def root_multiplicity(kind: str, g: str, k: int) -> tuple[int, int, int]:
    base = ROOT_MULT[g]
    if kind == "dual":
        base = tuple(DELTA[i] - base[i] for i in range(3))
    return tuple(base[i] + k * DELTA[i] for i in range(3))  # type: ignore[return-value]


def _qcomm(x: Mat, y: Mat, c: Any) -> Mat:
    """x y - c y x."""
    return x * y - (y * x).scale(c)


def e_root_vectors(img: AffineImages, order: int) -> RootVectors:
    """Raising root vectors from e_0, e_1, e_2 by the q-commutator recursions."""
    field = img.field
    q = field.q
    e0, ea, eb = img.e[0], img.e[1], img.e[2]
    first = {"a": ea, "b": eb, "ab": _qcomm(ea, eb, q(-1))}
    dual0 = {"a": _qcomm(eb, e0, q(-1)), "b": _qcomm(ea, e0, q(-1)), "ab": e0}
    inv2 = field.one / field(qnum_at(2))
    real: dict[str, list[Mat]] = {}
    dual: dict[str, list[Mat]] = {}
    prime: dict[str, ZetaSeries] = {}
    imag: dict[str, ZetaSeries] = {}
    zero = Mat.zeros(img.rep.dim, field)
    for g in GAMMAS:
        ep1 = _qcomm(first[g], dual0[g], q(-2))
        r, d = [first[g]], [dual0[g]]
        for _ in range(order):
            r.append((r[-1] * ep1 - ep1 * r[-1]).scale(inv2))
            d.append((ep1 * d[-1] - d[-1] * ep1).scale(inv2))
        real[g], dual[g] = r, d
        # x'_{k delta} = x_{gamma + (k-1) delta} x_{delta - gamma} - q^-2 x_{delta - gamma} x_{gamma + (k-1) delta}
        pcoef = [zero] + [_qcomm(r[k - 1], dual0[g], q(-2)) for k in range(1, order + 1)]
        prime[g] = ZetaSeries(pcoef)
        imag[g] = _log_kind(prime[g], field, +1)
    return RootVectors("e", order, real, dual, prime, imag)


def f_root_vectors(img: AffineImages, order: int) -> RootVectors:
    """Lowering root vectors from f_0, f_1, f_2.

    The imaginary vectors use x' = f_{delta-gamma} f_{gamma+(k-1)delta} - q^2 f_{gamma+(k-1)delta} f_{delta-gamma}
    for every k >= 1, including k = 1.
    """
    field = img.field
    q = field.q
    f0, fa, fb = img.f[0], img.f[1], img.f[2]
    first = {"a": fa, "b": fb, "ab": _qcomm(fb, fa, q(1))}
    dual0 = {"a": _qcomm(f0, fb, q(1)), "b": _qcomm(f0, fa, q(1)), "ab": f0}
    inv2 = field.one / field(qnum_at(2))
    real: dict[str, list[Mat]] = {}
    dual: dict[str, list[Mat]] = {}
    prime: dict[str, ZetaSeries] = {}
    imag: dict[str, ZetaSeries] = {}
    zero = Mat.zeros(img.rep.dim, field)
    for g in GAMMAS:
        fp1 = _qcomm(dual0[g], first[g], q(2))
        r, d = [first[g]], [dual0[g]]
        for _ in range(order):
            r.append((fp1 * r[-1] - r[-1] * fp1).scale(inv2))
            d.append((d[-1] * fp1 - fp1 * d[-1]).scale(inv2))
        real[g], dual[g] = r, d
        pcoef = [zero] + [_qcomm(dual0[g], r[k - 1], q(2)) for k in range(1, order + 1)]
        prime[g] = ZetaSeries(pcoef)
        imag[g] = _log_kind(prime[g], field, -1)
    return RootVectors("f", order, real, dual, prime, imag)


def _log_kind(prime: ZetaSeries, field: Any, sign: int) -> ZetaSeries:
    """sign * kappa^-1 log(1 + sign * kappa x'(t))."""
    kap = field.kappa
    ident = Mat.identity(prime[0].n, field)
    arg = ZetaSeries([ident] + [c.scale(kap * sign) for c in prime.coeffs[1:]])
    lg = series_log(arg)
    return lg.map(lambda c: c.scale(field.one / kap * sign))


def root_weight_check(img: AffineImages, rv: RootVectors) -> list[Residual]:
    """Every root vector shifts G-weights by the image of its root."""
    weights = img.rep.weights
    alpha_img = {i: H_IMAGE[i] for i in range(3)}  # alpha_i and h_i have the same G-vector image here
    if img.tau:
        alpha_img = {0: H_IMAGE[0], 1: H_IMAGE[2], 2: H_IMAGE[1]}
    sign = 1 if rv.side == "e" else -1
    out = []
    for kind, table in (("real", rv.real), ("dual", rv.dual)):
        for g, vecs in table.items():
            for k, m in enumerate(vecs):
                mult = root_multiplicity(kind, g, k)
                want = tuple(sign * sum(mult[i] * alpha_img[i][c] for i in range(3)) for c in range(3))
                bad = None
                for r, c, _ in m.entries():
                    d = tuple(weights[r][x] - weights[c][x] for x in range(3))
                    if d != want:
                        bad = f"entry {(r, c)} shifts by {d}, expected {want}"
                        break
                out.append(Residual(f"root weight {rv.side} {kind} {g} k={k}", bad is None, bad))
    return out


def imaginary_commutation_check(rv: RootVectors) -> list[Residual]:
    """All coefficients of the alpha and beta logarithmic series commute."""
    coeffs = [(g, k, rv.imag[g][k]) for g in ("a", "b") for k in range(1, rv.order + 1)]
    out = []
    for i, (g1, k1, x) in enumerate(coeffs):
        for g2, k2, y in coeffs[i + 1:]:
            out.append(mat_residual(f"[{rv.side}_{k1}d,{g1}, {rv.side}_{k2}d,{g2}]", x * y - y * x))
    return out


# ---------------------------------------------------------------------------
# displayed images in the three-dimensional auxiliary space


def _unit(a: int, b: int, c: FieldScalar, field: Any) -> Mat:
    return Mat.unit(3, a - 1, b - 1, field, field(c))


def expected_aux_images(field: Any, order: int, tau: bool = False) -> dict[tuple[str, str, int], Mat]:
    """Closed forms for the lowering root vectors in the defining representation."""
    q = FieldScalar.qpow
    out: dict[tuple[str, str, int], Mat] = {}
    for k in range(order + 1):
        sg = (-1) ** k
        if not tau:
            out[("real", "a", k)] = _unit(2, 1, q(2 * k) * sg, field)
            out[("dual", "a", k)] = _unit(1, 2, q(2 * k + 1) * sg, field)
            out[("real", "b", k)] = _unit(3, 2, q(3 * k), field)
            out[("dual", "b", k)] = _unit(2, 3, -q(3 * k + 2), field)
            out[("real", "ab", k)] = _unit(3, 1, q(2 * k) * sg, field)
            out[("dual", "ab", k)] = _unit(1, 3, q(2 * k + 1) * sg, field)
        else:
            out[("real", "a", k)] = _unit(3, 2, q(3 * k), field)
            out[("dual", "a", k)] = _unit(2, 3, -q(3 * k + 2), field)
            out[("real", "b", k)] = _unit(2, 1, q(2 * k) * sg, field)
            out[("dual", "b", k)] = _unit(1, 2, q(2 * k + 1) * sg, field)
            out[("real", "ab", k)] = _unit(3, 1, -q(3 * k + 1), field)
            out[("dual", "ab", k)] = _unit(1, 3, q(3 * k + 1), field)
    for k in range(1, order + 1):
        ck = qnum_at(k) / k
        ia = Mat.diag([field(ck * q(k) * (-1) ** (k - 1)), field(-ck * q(3 * k) * (-1) ** (k - 1)), field.zero], field)
        ib = Mat.diag([field.zero, field(-ck * q(2 * k)), field(ck * q(4 * k))], field)
        out[("imag", "b" if tau else "a", k)] = ia
        out[("imag", "a" if tau else "b", k)] = ib
    return out


def aux_image_check(rv: RootVectors, field: Any, tau: bool = False) -> list[Residual]:
    want = expected_aux_images(field, rv.order, tau)
    out = []
    for (kind, g, k), m in want.items():
        got = rv.real[g][k] if kind == "real" else rv.dual[g][k] if kind == "dual" else rv.imag[g][k]
        out.append(mat_residual(f"aux f {kind} {g} k={k}", got, m))
    return out


# ---------------------------------------------------------------------------
# Khoroshkin-Tolstoy factors in a representation


@dataclass
class KTFactors:
    U: GradedMatrix
    V: GradedMatrix
    W: GradedMatrix
    D: list[Mat]
    placements: list[tuple[str, tuple[int, int], int]]


def _placement(mult: tuple[int, int, int], a: int, b: int) -> int:
    p = pattern_vector(a, b)
    diff = [mult[i] - p[i] for i in range(3)]
    if diff[0] != diff[1] or diff[1] != diff[2] or diff[0] < 0:
        raise GradingError(f"degree {mult} cannot sit at position ({a + 1},{b + 1})")
    return diff[0]


def _qexp_factor(x: GradedMatrix, cache: dict[int, Any], field: Any) -> GradedMatrix:
    """exp_{q^-2}(x) for nilpotent x."""
    out = GradedMatrix.identity(x.dim, x.field, x.order)
    power = x
    n = 1
    while power.entries:
        if n not in cache:
            cache[n] = field(qexp_coefficient(n, -2))
        out = out + power.map(lambda _k, v, c=cache[n]: v.map(lambda m: m.scale(c)))
        n += 1
        if n > 4:
            raise ValueError("auxiliary factor is not nilpotent")
        power = power * x
    return out


def _single_root_factor(e: Mat, f: Mat, mult: tuple[int, int, int], order: int,
                        placements: list, label: str) -> GradedMatrix:
    field = e.field
    kap = field.kappa
    entries: dict[tuple[int, int], ZetaSeries] = {}
    for a, b, c in f.entries():
        k = _placement(mult, a, b)
        placements.append((label, (a + 1, b + 1), k))
        if k > order:
            continue
        z = Mat.zeros(e.n, field)
        coeffs = [z] * (order + 1)
        coeffs[k] = e.scale(kap * c)
        entries[(a, b)] = ZetaSeries(coeffs)
    return GradedMatrix(entries, e.n, field, order)


def u_matrix_entries(k: int) -> tuple[FieldScalar, FieldScalar]:
    """Diagonal and off-diagonal entries of u_k."""
    base = qnum_at(k).inverse() * k / three_q(k)
    return base * (FieldScalar.qpow(k) + FieldScalar.qpow(-k)), base * (-1) ** k


def kt_factors(quantum_img: AffineImages, quantum: RootVectors, aux_img: AffineImages, aux: RootVectors,
               quantum_swap: bool = False) -> KTFactors:
    """U, V, W and D with the quantum side in an arbitrary representation.

    ``quantum_swap`` exchanges s_alpha and s_beta in the spectral degree of the
    quantum factor (the conjugated grading used for the barred operator).
    """
    order = quantum.order
    field = quantum.real["a"][0].field
    dim = quantum.real["a"][0].n
    placements: list = []
    cache: dict[int, Any] = {}

    def mult_of(kind: str, g: str, k: int) -> tuple[int, int, int]:
        m = root_multiplicity(kind, g, k)
        return (m[0], m[2], m[1]) if quantum_swap else m

    def factor(kind: str, g: str, k: int) -> GradedMatrix:
        e = (quantum.real if kind == "real" else quantum.dual)[g][k]
        f = (aux.real if kind == "real" else aux.dual)[g][k]
        x = _single_root_factor(e, f, mult_of(kind, g, k), order, placements, f"{kind}:{g}+{k}d")
        return _qexp_factor(x, cache, field)

    U = GradedMatrix.identity(dim, field, order)
    for k in range(order + 1):
        U = U * factor("real", "a", k)
        U = U * factor("real", "ab", k)
    for k in range(order + 1):
        U = U * factor("real", "b", k)

    W = GradedMatrix.identity(dim, field, order)
    for k in range(order, -1, -1):
        W = W * factor("dual", "b", k)
    for k in range(order, -1, -1):
        W = W * factor("dual", "a", k)
        W = W * factor("dual", "ab", k)

    # V = exp(kappa sum_k sum_ij u_k,ij e_{k delta, i} (x) f_{k delta, j}) with diagonal auxiliary images
    kap = field.kappa
    labels = ("a", "b")
    diag: dict[tuple[int, int], ZetaSeries] = {}
    zero = Mat.zeros(dim, field)
    for a in range(3):
        coeffs = [zero]
        for k in range(1, order + 1):
            ud, uo = u_matrix_entries(k)
            u = {("a", "a"): ud, ("b", "b"): ud, ("a", "b"): uo, ("b", "a"): uo}
            acc = zero
            for gi in labels:
                for gj in labels:
                    fm = aux.imag[gj][k]
                    if not fm.is_diagonal():
                        raise GradingError(f"auxiliary imaginary image f_{k}d,{gj} is not diagonal")
                    c = fm[a, a]
                    if c:
                        acc = acc + quantum.imag[gi][k].scale(kap * field(u[(gi, gj)]) * c)
            coeffs.append(acc)
        diag[(a, a)] = series_exp(ZetaSeries(coeffs), Mat.identity(dim, field))
    V = GradedMatrix(diag, dim, field, order)

    D = cartan_factor(quantum_img, aux_img)
    return KTFactors(U, V, W, D, placements)


#: inverse of the sl3 Cartan matrix
INVERSE_CARTAN = ((Fraction(2, 3), Fraction(1, 3)), (Fraction(1, 3), Fraction(2, 3)))


def cartan_factor(quantum_img: AffineImages, aux_img: AffineImages) -> list[Mat]:
    """Diagonal entries of q^(sum_ij b_ij h_i (x) h_j), one quantum-side matrix per auxiliary basis vector."""
    out = []
    for w in aux_img.rep.weights:
        lam = [sum(aux_img.h[j][c] * w[c] for c in range(3)) for j in (1, 2)]
        g = [sum(quantum_img.h[i][c] * INVERSE_CARTAN[i - 1][j] * lam[j] for i in (1, 2) for j in range(2))
             for c in range(3)]
        out.append(quantum_img.rep.cartan(*g))
    return out
