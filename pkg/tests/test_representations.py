from __future__ import annotations

from collections import Counter
from fractions import Fraction

import pytest

from qmonodromy.algebra import ConfigError, check_gl3_relations
from qmonodromy.linalg import Mat, kron
from qmonodromy.representations import (fundamental, highest_weight_vectors, make_representation, tensor,
                                        tensor_power)
from qmonodromy.scalars import LatticeError, RationalField


def _rank(rows: list[list[Fraction]]) -> int:
    """Plain Gaussian elimination over the rationals (independent oracle)."""
    rows = [r[:] for r in rows if any(r)]
    rank, col = 0, 0
    ncol = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncol:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _dense(m: Mat) -> list[list[Fraction]]:
    return [[Fraction(str(x)) for x in row] for row in m.to_dense()]


def test_fundamental(field, fund):
    q = field.q
    assert fund.dim == 3
    assert fund.cartan(Fraction(1, 2), 0, 0) == Mat.diag([q(Fraction(1, 2)), field.one, field.one], field)
    assert fund.cartan(0, 2, 0) == Mat.diag([field.one, q(2), field.one], field)
    assert fund.gen("E1") == Mat.unit(3, 0, 1, field, field.one)
    assert fund.gen("F2") == Mat.unit(3, 2, 1, field, field.one)
    assert fund.weights == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_tensor_square_structure(field, fund, t2):
    assert t2.dim == 9
    assert t2.weights[0] == (2, 0, 0)
    i3 = Mat.identity(3, field)
    # E1 -> E1 (x) 1 + q^-H1 (x) E1
    assert t2.gen("E1") == kron(fund.gen("E1"), i3) + kron(fund.cartan(-1, 1, 0), fund.gen("E1"))
    assert t2.gen("F2") == kron(fund.gen("F2"), fund.cartan(0, 1, -1)) + kron(i3, fund.gen("F2"))
    assert all(r.ok for r in check_gl3_relations(t2))


def test_weight_spaces_complete(fund, t2, t3):
    for rep in (fund, t2, t3):
        spaces = rep.weight_spaces()
        assert sum(len(v) for v in spaces.values()) == rep.dim


def test_cartan_eval(field, fund, t2):
    q = field.q
    third = Fraction(1, 3)
    assert fund.cartan(0, 0, 0) == Mat.identity(3, field)
    assert fund.cartan(1 - third, -third, -third) == Mat.diag([q(2 * third), q(-third), q(-third)], field)
    assert t2.cartan(third, third, third) == Mat.identity(9, field).scale(q(2 * third))
    with pytest.raises(LatticeError):
        fund.cartan(Fraction(1, 4), 0, 0)


def test_highest_weights(fund, t2, t3):
    def weights(rep):
        return Counter(tuple(int(x) for x in w) for w, _ in highest_weight_vectors(rep))
    assert weights(fund) == Counter({(1, 0, 0): 1})
    assert weights(t2) == Counter({(2, 0, 0): 1, (1, 1, 0): 1})
    w3 = weights(t3)
    assert w3[(1, 1, 1)] == 1 and w3[(3, 0, 0)] == 1 and w3[(2, 1, 0)] == 2


@pytest.mark.parametrize("n", [2, 3])
def test_highest_weight_count_matches_rank_oracle(n):
    rf = RationalField("3/2")
    rep = tensor_power(fundamental(rf), n)
    got = Counter(w for w, _ in highest_weight_vectors(rep))
    e1, e2 = _dense(rep.gen("E1")), _dense(rep.gen("E2"))
    for w, cols in rep.weight_spaces().items():
        rows = [[e[i][j] for j in cols] for e in (e1, e2) for i in range(rep.dim)]
        assert got.get(w, 0) == len(cols) - _rank(rows)


def test_highest_weight_vectors_are_killed(t3):
    for w, v in highest_weight_vectors(t3):
        assert not t3.gen("E1").apply(v) and not t3.gen("E2").apply(v)
        assert all(t3.weights[i] == w for i in v)


def test_labels(field):
    assert make_representation("trivial", field).dim == 1
    assert make_representation("tensor:1", field).dim == 3
    for bad in ("tensor:x", "tensor:0", "adjoint", "tensor:4"):
        with pytest.raises(ConfigError):
            make_representation(bad, field)
    assert make_representation("tensor:4", RationalField(2), allow_large=True).dim == 81


def test_tensor_of_mixed_fields(field):
    with pytest.raises(ValueError):
        tensor(fundamental(field), fundamental(RationalField(2)))
