from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qmonodromy.affine import (GradingError, _placement, affine_images, affine_relation_check, cartan_factor,
                               e_root_vectors, f_root_vectors, jimbo_cartan, jimbo_phi, kt_factors)
from qmonodromy.algebra import E1, E3, F3, Q, QH, ConfigError
from qmonodromy.graded import pattern
from qmonodromy.linalg import Mat
from qmonodromy.monodromy import closed_form_M
from qmonodromy.series import ZetaSeries, series_inverse, series_log

ORDER = 4


@pytest.fixture(scope="module")
def fund_kt(fund):
    qi, ai = affine_images(fund), affine_images(fund)
    qv, av = e_root_vectors(qi, ORDER), f_root_vectors(ai, ORDER)
    return qv, av, kt_factors(qi, qv, ai, av)


def test_jimbo_images(fund):
    assert jimbo_phi("e1").evaluate(fund) == E1.evaluate(fund)
    assert jimbo_phi("e0").evaluate(fund) == (F3 * Q(-1, 0, -1)).evaluate(fund)
    assert jimbo_phi("f0").evaluate(fund) == (E3 * Q(1, 0, 1)).evaluate(fund)
    third = Fraction(1, 3)
    assert jimbo_phi("f0", "sl3").evaluate(fund) == (E3 * QH(third, -third)).evaluate(fund)
    assert jimbo_cartan(0) == (-1, 0, 1)
    with pytest.raises(ValueError):
        jimbo_phi("e3")
    with pytest.raises(ConfigError):
        jimbo_phi("e1", "so3")


@pytest.mark.parametrize("variant", ["gl3", "sl3"])
@pytest.mark.parametrize("tau", [False, True])
def test_affine_relations(fund, t2, variant, tau):
    for rep in (fund, t2):
        res = affine_relation_check(affine_images(rep, variant, tau))
        assert [r.name for r in res if not r.ok] == []


def test_sl3_cartan_sum_is_identity(field, fund):
    img = affine_images(fund, "sl3")
    total = img.cartan_h(0) * img.cartan_h(1) * img.cartan_h(2)
    assert total == Mat.identity(3, field)


def test_seed_and_k1(fund, fund_kt):
    qv, _, _ = fund_kt
    assert qv.real["a"][0] == fund.gen("E1")
    for g in ("a", "b", "ab"):
        assert qv.imag[g][1] == qv.prime[g][1]


def test_second_imaginary_vector(field, t2):
    qv = e_root_vectors(affine_images(t2), 2)
    kap = field.kappa
    for g in ("a", "b"):
        e1 = qv.prime[g][1]
        assert qv.imag[g][2] == qv.prime[g][2] - (e1 * e1).scale(kap / 2)


def test_imaginary_vectors_commute(fund, t2):
    for rep in (fund, t2):
        qv = e_root_vectors(affine_images(rep), 3)
        mats = [qv.imag[g][k] for g in ("a", "b") for k in range(1, 4)]
        assert all(x * y == y * x for x in mats for y in mats)


def test_f_side_closed_forms(field, fund_kt):
    _, av, _ = fund_kt
    q = field.q
    for k in range(ORDER + 1):
        assert av.real["a"][k] == Mat.unit(3, 1, 0, field, q(2 * k) * (-1) ** k)
        assert av.real["b"][k] == Mat.unit(3, 2, 1, field, q(3 * k))


def test_log_definition(field, fund_kt):
    qv, _, _ = fund_kt
    kap = field.kappa
    ident = Mat.identity(3, field)
    for g in ("a", "b"):
        one_plus = ZetaSeries([ident] + [qv.prime[g][k].scale(kap) for k in range(1, ORDER + 1)])
        assert series_log(one_plus) == qv.imag[g].map(lambda m: m.scale(kap))


def test_unitriangular_and_diagonal(fund_kt):
    _, _, kt = fund_kt
    assert kt.U.is_lower_unitriangular()
    assert kt.W.is_upper_unitriangular()
    assert kt.V.is_diagonal()


def test_cartan_factor_fundamental(field, fund):
    q = field.q
    third = Fraction(1, 3)
    D = cartan_factor(affine_images(fund), affine_images(fund))
    assert D[0] == Mat.diag([q(2 * third), q(-third), q(-third)], field)
    assert D[2] == Mat.diag([q(-third), q(-third), q(2 * third)], field)


def test_vvv(field, fund_kt):
    _, _, kt = fund_kt
    q = field.q
    v = [kt.V[(a, a)] for a in range(3)]
    prod = v[0].subs(q(2)) * v[1] * v[2].subs(q(-2))
    assert prod == ZetaSeries([Mat.identity(3, field)] + [Mat.zeros(3, field)] * ORDER)


def test_bea(field, fund_kt):
    qv, _, kt = fund_kt
    q, kap = field.q, field.kappa
    ident = Mat.identity(3, field)
    lhs = ZetaSeries([ident] + [qv.prime["a"][k].scale(kap) for k in range(1, ORDER + 1)])
    v11, v22 = kt.V[(0, 0)].subs(-q(-2)), kt.V[(1, 1)].subs(-q(-2))
    assert lhs == series_inverse(v11) * v22


def test_emb_closed_form(field, fund, fund_kt):
    qv, _, _ = fund_kt
    q, kap = field.q, field.kappa
    ident, zero = Mat.identity(3, field), Mat.zeros(3, field)
    n11 = ZetaSeries([ident, -fund.cartan(-2, 0, 0)] + [zero] * (ORDER - 1))
    n21 = (E1 * kap).evaluate(fund)
    rhs = (ZetaSeries([n21] + [zero] * ORDER) * series_inverse(n11.subs(-q(-2)))).map(lambda m: m.scale(field.one / kap))
    assert qv.real_series("a") == rhs


def test_placement_rejects_bad_degrees():
    assert _placement((0, 1, 0), 1, 0) == 0
    assert _placement((1, 2, 1), 1, 0) == 1
    assert _placement((1, 0, 1), 0, 1) == 0
    with pytest.raises(GradingError):
        _placement((0, 1, 0), 0, 1)
    with pytest.raises(GradingError):
        _placement((1, 2, 0), 1, 0)


@settings(max_examples=20, deadline=None)
@given(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(lambda s: sum(s) > 0))
def test_graded_product_matches_explicit_powers(fund, s):
    """Multiplying stored t-series reproduces the product of the explicit zeta polynomials."""
    g = closed_form_M().evaluate(fund, 6)
    prod = (g * g).explicit(s)
    e = g.explicit(s)
    want: dict = {}
    for (a, b), xs in e.items():
        for c in range(3):
            for i, x in xs.items():
                for j, y in e.get((b, c), {}).items():
                    acc = want.setdefault((a, c), {})
                    acc[i + j] = acc[i + j] + x * y if i + j in acc else x * y
    want = {k: {e_: m for e_, m in v.items() if m} for k, v in want.items()}
    assert {k: v for k, v in want.items() if v} == prod
    for (a, b), xs in e.items():
        assert min(xs) >= pattern(a, b, s)
