from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jgroups.nilpotent import (
    LinearFunctional,
    NilpotentElement,
    UnitriangularMatrix,
    basis,
    bch_product,
    bracket,
    center_basis,
    elementary,
    nil_exp,
    nil_log,
    nilpotent_jstructure,
    parse_elementary,
    random_nilpotent,
)


def test_type_invariants():
    with pytest.raises(ValueError):
        NilpotentElement([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        UnitriangularMatrix([[1, 0], [1, 1]])
    with pytest.raises(ValueError):
        NilpotentElement.zero(9)
    x = random_nilpotent(4, random.Random(0))
    acc = x.entries
    for _ in range(3):
        acc = acc @ x.entries
    assert all(v == 0 for v in acc.flat)


def test_inverse():
    g = nil_exp(random_nilpotent(4, random.Random(1)))
    assert g @ g.inverse() == UnitriangularMatrix.identity(4)


def test_bch_example():
    x, y = elementary(3, 1, 2), elementary(3, 2, 3)
    assert bch_product(x, y) == x + y + Fraction(1, 2) * elementary(3, 1, 3)
    with pytest.raises(ValueError):
        bch_product(x, elementary(4, 1, 2))


def test_center_examples():
    assert center_basis(2) == [elementary(2, 1, 2)]
    assert center_basis(3) == [elementary(3, 1, 3)]
    assert center_basis(4) == [elementary(4, 1, 4)]
    for n in range(2, 7):
        for c in center_basis(n):
            assert all(not bracket(c, b) for b in basis(n))


def test_nilpotent_structure_examples():
    w = parse_elementary("E13", 3)
    s = nilpotent_jstructure(3, w, LinearFunctional.from_name("E13", 3))
    x = elementary(3, 1, 2) + 2 * elementary(3, 1, 3)
    fx = s(x)
    assert fx == 2 * elementary(3, 1, 2) + elementary(3, 1, 3)
    assert s(bch_product(x, w)) == fx + x == bch_product(fx, x)
    zero = NilpotentElement.zero(3)
    assert s(zero) == zero
    assert s(w) == s(zero) == zero


def test_nilpotent_structure_errors():
    with pytest.raises(ValueError):
        nilpotent_jstructure(3, elementary(3, 1, 2), LinearFunctional.from_name("E12", 3))
    with pytest.raises(ValueError):
        nilpotent_jstructure(3, elementary(3, 1, 3), LinearFunctional.from_name("E12", 3))
    with pytest.raises(ValueError):
        nilpotent_jstructure(3, NilpotentElement.zero(3), LinearFunctional.from_name("E13", 3))


def test_structure_from_coefficient_matrix():
    n = 4
    P = [[0] * n for _ in range(n)]
    P[0][3] = Fraction(1, 2)
    P[1][2] = 5
    s = nilpotent_jstructure(n, 2 * elementary(n, 1, 4), P)
    assert s.verify_samples(30, random.Random(2)).valid


def _elements(n):
    entries = st.fractions(min_value=-20, max_value=20, max_denominator=20)
    k = n * (n - 1) // 2

    def build(vals):
        a = [[0] * n for _ in range(n)]
        it = iter(vals)
        for i in range(n):
            for j in range(i + 1, n):
                a[i][j] = next(it)
        return NilpotentElement(a)

    return st.lists(entries, min_size=k, max_size=k).map(build)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_lie_and_group_laws(data):
    n = data.draw(st.integers(2, 5))
    x, y, z = (data.draw(_elements(n)) for _ in range(3))
    assert bracket(x, y) == -bracket(y, x)
    assert bracket(x + y, z) == bracket(x, z) + bracket(y, z)
    assert nil_log(nil_exp(x)) == x
    assert bch_product(bch_product(x, y), z) == bch_product(x, bch_product(y, z))
    assert bch_product(x, -x) == NilpotentElement.zero(n)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_axiom_property(data):
    n = data.draw(st.integers(2, 5))
    s = nilpotent_jstructure(n, elementary(n, 1, n), LinearFunctional.coordinate(n, 1, n))
    assert s.check(data.draw(_elements(n)))
