from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jgroups.groups import (
    FiniteGroup,
    GroupError,
    centralizer,
    element_order,
    generated_subgroup,
    group_from_dict,
    group_to_dict,
    load_group,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_metacyclic,
    make_symmetric,
    make_unitriangular_mod,
    nilpotency_class,
    parse_group_spec,
    save_group,
)


def test_cyclic_examples():
    assert make_cyclic(1).table.tolist() == [[0]]
    assert make_cyclic(3).table[1].tolist() == [1, 2, 0]
    Z9 = make_cyclic(9)
    assert element_order(Z9, 3) == 3
    assert element_order(Z9, 1) == 9


def test_cyclic_rejects_nonpositive():
    with pytest.raises(GroupError):
        make_cyclic(0)


def test_direct_products():
    G = make_direct_product(make_cyclic(3), make_cyclic(3))
    assert G.order == 9 and G.exponent() == 3
    V = make_direct_product(make_cyclic(2), make_cyclic(2))
    assert V.order == 4
    assert sorted(V.element_orders.tolist()) == [1, 2, 2, 2]
    H = make_direct_product(make_cyclic(3), make_symmetric(3))
    assert H.order == 18 and not H.is_abelian
    a, b = next((a, b) for a in range(18) for b in range(18) if not H.commutes(a, b))
    assert H.mul(a, b) != H.mul(b, a)


def test_other_constructors():
    assert make_symmetric(3).order == 6
    assert make_dihedral(4).order == 8
    U = make_unitriangular_mod(3, 3)
    assert U.order == 27
    assert nilpotency_class(U) == 2
    M = make_metacyclic(7, 3, 2)
    assert M.order == 21 and not M.is_abelian


def test_orders_and_centralizers():
    S3 = make_symmetric(3)
    orders = S3.element_orders
    t = int(np.flatnonzero(orders == 2)[0])
    c = int(np.flatnonzero(orders == 3)[0])
    assert element_order(S3, 0) == 1
    assert element_order(S3, t) == 2
    assert centralizer(S3, c).elements() == sorted(generated_subgroup(S3, [c]).elements())
    assert len(centralizer(S3, c)) == 3
    assert len(centralizer(S3, 0)) == 6
    Z5 = make_cyclic(5)
    assert len(centralizer(Z5, 2)) == 5


def test_invalid_tables_rejected():
    with pytest.raises(GroupError):
        FiniteGroup(np.array([[0, 1], [1, 1]]))  # not a Latin square
    with pytest.raises(GroupError):
        # Latin square with identity 0 but not associative
        FiniteGroup(np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]))


def test_spec_grammar():
    assert parse_group_spec("cyclic:5") == make_cyclic(5)
    assert parse_group_spec("Z5") == make_cyclic(5)
    assert parse_group_spec("S3") == make_symmetric(3)
    assert parse_group_spec("dihedral:4").order == 8
    assert parse_group_spec("unitri:3:3").order == 27
    assert parse_group_spec("product:cyclic:3xsym:3").order == 18
    assert parse_group_spec("product:cyclic:3xcyclic:3xcyclic:5").order == 45
    for bad in ["", "cyclic:x", "frob:3", "product:cyclic:3", "sym:9"]:
        with pytest.raises(GroupError):
            parse_group_spec(bad)


def test_json_roundtrip(tmp_path):
    G = make_dihedral(5)
    assert group_from_dict(group_to_dict(G)) == G
    path = tmp_path / "d5.json"
    save_group(G, path)
    assert load_group(path) == G
    assert parse_group_spec(f"file:{path}") == G


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(-30, 30), st.integers(-30, 30))
def test_power_laws(n, m, a, b):
    G = make_direct_product(make_cyclic(n), make_cyclic(m))
    for x in range(0, G.order, max(1, G.order // 5)):
        assert G.mul(G.power(x, a), G.power(x, b)) == G.power(x, a + b)
        assert G.power(x, G.element_orders[x]) == G.identity


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 9))
def test_dihedral_orders(n):
    D = make_dihedral(n)
    assert D.order == 2 * n
    assert D.is_abelian is False
    # reflections have order 2
    assert all(D.element_orders[k + n] == 2 for k in range(n))


CORPUS = [make_cyclic(9), make_symmetric(4), make_dihedral(5), make_unitriangular_mod(3, 3), make_metacyclic(7, 3, 2),
          make_direct_product(make_cyclic(3), make_symmetric(3))]


@pytest.mark.parametrize("G", CORPUS, ids=lambda G: G.name)
def test_lagrange_and_centralizers(G):
    for x in range(G.order):
        assert G.order % element_order(G, x) == 0
        c = centralizer(G, x)
        assert G.identity in c and x in c
        assert all(G.power(x, k) in c for k in range(element_order(G, x)))
