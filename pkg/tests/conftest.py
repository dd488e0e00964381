from __future__ import annotations

import pytest

from qmonodromy.representations import fundamental, make_representation, trivial
from qmonodromy.scalars import RationalField, SymbolicField


@pytest.fixture(scope="session")
def field() -> SymbolicField:
    return SymbolicField()


@pytest.fixture(scope="session")
def rfield() -> RationalField:
    return RationalField("3/2", 6)


@pytest.fixture(scope="session")
def fund(field):
    return fundamental(field)


@pytest.fixture(scope="session")
def triv(field):
    return trivial(field)


@pytest.fixture(scope="session")
def t2(field):
    return make_representation("tensor:2", field)


@pytest.fixture(scope="session")
def t3(field):
    return make_representation("tensor:3", field)
