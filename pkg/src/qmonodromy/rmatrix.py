"""The fundamental R-matrix, Yang-Baxter and the RLL exchange relation.

Everything here works with explicit zeta exponents.  The common scalar
prefactors (e^f for R, e^F for the monodromy) are left out: once they are
gone every entry is a Laurent polynomial, so the identities are checked
exactly and for all orders at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .graded import GradedMatrix, pattern
from .linalg import Mat
from .report import Residual
from .series import ZetaSeries

Pair = tuple[int, int]
#: ((a, b), (c, d)) -> {zeta exponent: scalar}
ScalarMatrix9 = dict[tuple[Pair, Pair], dict[int, Any]]
ExplicitMatrix = dict[Pair, dict[int, Mat]]

PAIRS = [(a, b) for a in range(3) for b in range(3)]


@dataclass
class RMatrix:
    """R_{ab|cd}(t) = B_{ab|cd}(t) K_{cd|cd} without the common factor e^f.

    ``B`` and ``R`` map ((a,b),(c,d)) to a list of t-coefficients; the fixed
    zeta power of the entry is ``pattern(b, d, s)``.
    """

    field: Any
    B: dict[tuple[Pair, Pair], list[Any]]
    K: dict[Pair, Any]

    @property
    def R(self) -> dict[tuple[Pair, Pair], list[Any]]:
        return {(ab, cd): [c * self.K[cd] for c in v] for (ab, cd), v in self.B.items()}

    def explicit(self, s: tuple[int, int, int]) -> ScalarMatrix9:
        sd = sum(s)
        out: ScalarMatrix9 = {}
        for (ab, cd), coeffs in self.R.items():
            p = pattern(ab[1], cd[1], s)
            out[(ab, cd)] = {p + k * sd: c for k, c in enumerate(coeffs) if c}
        return out

    def explicit_hat(self, s: tuple[int, int, int]) -> ScalarMatrix9:
        """R-hat = R P, i.e. R-hat_{ab|cd} = R_{ab|dc}."""
        r = self.explicit(s)
        return {(ab, (cd[1], cd[0])): v for (ab, cd), v in r.items()}

    def graded(self, order: int) -> GradedMatrix:
        """The 3x3 block form: block (a,b) has (c,d) entry R_{ca|db}."""
        field = self.field
        entries: dict[Pair, ZetaSeries] = {}
        zero = Mat.zeros(3, field)
        for a in range(3):
            for b in range(3):
                coeffs = [zero] * (order + 1)
                for c in range(3):
                    for d in range(3):
                        v = self.R.get(((c, a), (d, b)))
                        if not v:
                            continue
                        for k, x in enumerate(v[: order + 1]):
                            if x:
                                coeffs[k] = coeffs[k] + Mat.unit(3, c, d, field, x)
                entries[(a, b)] = ZetaSeries(coeffs)
        return GradedMatrix(entries, 3, field, order)

    def nonzero_B(self) -> int:
        return sum(1 for v in self.B.values() if any(v))


def r_matrix(field: Any) -> RMatrix:
    q = field.q
    kap = field.kappa
    B: dict[tuple[Pair, Pair], list[Any]] = {}
    K: dict[Pair, Any] = {}
    for a in range(3):
        for b in range(3):
            if a == b:
                B[((a, a), (a, a))] = [field.one, -q(-2)]
                K[(a, a)] = q(Fraction(2, 3))
            else:
                B[((a, b), (a, b))] = [field.one, -field.one]
                B[((a, b), (b, a))] = [kap]
                K[(a, b)] = q(Fraction(-1, 3))
    return RMatrix(field, B, K)


# ---------------------------------------------------------------------------
# bivariate / trivariate Laurent bookkeeping


def _acc(d: dict, key: Any, val: Any) -> None:
    if key in d:
        v = d[key] + val
        if v:
            d[key] = v
        else:
            del d[key]
    elif val:
        d[key] = val


def boxtimes(A: ExplicitMatrix, B: ExplicitMatrix) -> dict[tuple[Pair, Pair], dict[Pair, Mat]]:
    """(A boxtimes B)_{(ab),(cd)} = A_ac B_bd with A in the first spectral variable, B in the second."""
    out: dict[tuple[Pair, Pair], dict[Pair, Mat]] = {}
    for (a, c), xa in A.items():
        for (b, d), xb in B.items():
            acc: dict[Pair, Mat] = {}
            for i, ma in xa.items():
                for j, mb in xb.items():
                    _acc(acc, (i, j), ma * mb)
            if acc:
                out[((a, b), (c, d))] = acc
    return out


def boxtimes_swapped(A: ExplicitMatrix, B: ExplicitMatrix) -> dict[tuple[Pair, Pair], dict[Pair, Mat]]:
    """A boxtimes B with A in the second spectral variable and B in the first."""
    out: dict[tuple[Pair, Pair], dict[Pair, Mat]] = {}
    for (a, c), xa in A.items():
        for (b, d), xb in B.items():
            acc: dict[Pair, Mat] = {}
            for i, ma in xa.items():
                for j, mb in xb.items():
                    _acc(acc, (j, i), ma * mb)
            if acc:
                out[((a, b), (c, d))] = acc
    return out


def _ratio(n: int) -> Pair:
    return (n, -n)


def rll_residual(M: ExplicitMatrix, rhat: ScalarMatrix9) -> dict[tuple[Pair, Pair], dict[Pair, Mat]]:
    """R-hat(z1/z2) (M(z1) boxtimes M(z2)) - (M(z2) boxtimes M(z1)) R-hat(z1/z2), keyed by (z1, z2) exponents."""
    left = boxtimes(M, M)
    right = boxtimes_swapped(M, M)
    out: dict[tuple[Pair, Pair], dict[Pair, Mat]] = {}
    for (ab, ef), r in rhat.items():
        for cd in PAIRS:
            x = left.get((ef, cd))
            if not x:
                continue
            acc = out.setdefault((ab, cd), {})
            for n, c in r.items():
                rn = _ratio(n)
                for (i, j), m in x.items():
                    _acc(acc, (i + rn[0], j + rn[1]), m.scale(c))
    for ab in PAIRS:
        for ef in PAIRS:
            x = right.get((ab, ef))
            if not x:
                continue
            for cd in PAIRS:
                r = rhat.get((ef, cd))
                if not r:
                    continue
                acc = out.setdefault((ab, cd), {})
                for n, c in r.items():
                    rn = _ratio(n)
                    for (i, j), m in x.items():
                        _acc(acc, (i + rn[0], j + rn[1]), -m.scale(c))
    return {k: v for k, v in out.items() if v}


def rll_check(name: str, M: ExplicitMatrix, rhat: ScalarMatrix9) -> Residual:
    res = rll_residual(M, rhat)
    if not res:
        return Residual(name, True)
    (ab, cd), terms = min(res.items())
    (i, j), m = min(terms.items())
    where = (f"block ({ab[0] + 1}{ab[1] + 1}),({cd[0] + 1}{cd[1] + 1}) at zeta1^{i} zeta2^{j}, "
             f"entry {m.first_nonzero()}")
    return Residual(name, False, where)


def ybe_residual(rm: RMatrix, s: tuple[int, int, int]) -> dict[tuple[int, int], dict[tuple[int, int, int], Any]]:
    """R12(z1/z2) R13(z1/z3) R23(z2/z3) - R23 R13 R12 on C^3 (x) C^3 (x) C^3, prefactors dropped."""
    r = rm.explicit(s)
    # R(z) as an operator: <(a,b)| R |(c,d)> = R_{ab|cd}
    def emb(i: int, j: int) -> dict[tuple[int, int], dict[tuple[int, int, int], Any]]:
        out: dict[tuple[int, int], dict[tuple[int, int, int], Any]] = {}
        for x in range(27):
            xs = (x // 9, (x // 3) % 3, x % 3)
            for (ab, cd), terms in r.items():
                if xs[i] != ab[0] or xs[j] != ab[1]:
                    continue
                ys = list(xs)
                ys[i], ys[j] = cd
                y = ys[0] * 9 + ys[1] * 3 + ys[2]
                acc = out.setdefault((x, y), {})
                for n, c in terms.items():
                    e = [0, 0, 0]
                    e[i] += n
                    e[j] -= n
                    _acc(acc, tuple(e), c)
        return out

    def mul(A: dict, B: dict) -> dict:
        out: dict = {}
        rows: dict[int, list] = {}
        for (x, y), v in B.items():
            rows.setdefault(x, []).append((y, v))
        for (x, y), u in A.items():
            for z, v in rows.get(y, []):
                acc = out.setdefault((x, z), {})
                for e1, c1 in u.items():
                    for e2, c2 in v.items():
                        _acc(acc, (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]), c1 * c2)
        return {k: v for k, v in out.items() if v}

    r12, r13, r23 = emb(0, 1), emb(0, 2), emb(1, 2)
    lhs = mul(mul(r12, r13), r23)
    rhs = mul(mul(r23, r13), r12)
    out: dict = {}
    for k in set(lhs) | set(rhs):
        acc: dict = {}
        for e, c in lhs.get(k, {}).items():
            _acc(acc, e, c)
        for e, c in rhs.get(k, {}).items():
            _acc(acc, e, -c)
        if acc:
            out[k] = acc
    return out


def ybe_check(rm: RMatrix, s: tuple[int, int, int]) -> Residual:
    res = ybe_residual(rm, s)
    if not res:
        return Residual(f"yang-baxter s={s}", True, note="prefactor-free entries are Laurent polynomials; the identity holds to every order")
    (x, y), terms = min(res.items())
    return Residual(f"yang-baxter s={s}", False, f"entry {(x, y)} at exponent {min(terms)}")


def mixed_product_check(A: ExplicitMatrix, B: ExplicitMatrix, C: ExplicitMatrix, D: ExplicitMatrix) -> bool:
    """(A boxtimes B)(C boxtimes D) = AC boxtimes BD, valid when B's entries commute with C's."""
    def mat_mul(X: ExplicitMatrix, Y: ExplicitMatrix) -> ExplicitMatrix:
        out: ExplicitMatrix = {}
        for (a, b), xs in X.items():
            for c in range(3):
                ys = Y.get((b, c))
                if not ys:
                    continue
                acc = out.setdefault((a, c), {})
                for i, m in xs.items():
                    for j, n in ys.items():
                        _acc(acc, i + j, m * n)
        return {k: v for k, v in out.items() if v}

    def box_mul(X: dict, Y: dict) -> dict:
        out: dict = {}
        for (ab, ef), xs in X.items():
            for cd in PAIRS:
                ys = Y.get((ef, cd))
                if not ys:
                    continue
                acc = out.setdefault((ab, cd), {})
                for (i, j), m in xs.items():
                    for (k, l), n in ys.items():
                        _acc(acc, (i + k, j + l), m * n)
        return {k: v for k, v in out.items() if v}

    lhs = box_mul(boxtimes(A, B), boxtimes(C, D))
    rhs = boxtimes(mat_mul(A, C), mat_mul(B, D))
    keys = set(lhs) | set(rhs)
    for k in keys:
        x, y = lhs.get(k, {}), rhs.get(k, {})
        for e in set(x) | set(y):
            if x.get(e, Mat.zeros(_dim(A), _field(A))) != y.get(e, Mat.zeros(_dim(A), _field(A))):
                return False
    return True


def _dim(A: ExplicitMatrix) -> int:
    return next(iter(next(iter(A.values())).values())).n


def _field(A: ExplicitMatrix) -> Any:
    return next(iter(next(iter(A.values())).values())).field

