from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jgroups.exactnum import TruncatedPAdicInt as T
from jgroups.jrings import (
    EvenCharacteristicError,
    FunctionalJStructure,
    MultiplesOf,
    NotUnitalSubringError,
    ProfiniteProductDescriptor,
    RingDescriptor,
    binomial_map,
    parse_padic_factors,
    parse_torsion,
    profinite_product,
    ring_to_jgroup,
    subring_restriction_check,
)
from jgroups.jstruct import JStructure, verify_axiom


def test_characteristic():
    assert RingDescriptor.mod(9).characteristic == 9
    assert RingDescriptor.integers().characteristic == 0
    assert RingDescriptor.padic(3, 12).characteristic == 0


def test_binomial_map_examples():
    assert binomial_map(RingDescriptor.mod(9), 2) == 1
    Z = RingDescriptor.integers()
    assert binomial_map(Z, 0) == 0 and binomial_map(Z, 1) == 0
    with pytest.raises(EvenCharacteristicError):
        binomial_map(RingDescriptor.mod(6), 3)


def test_ring_to_jgroup_examples():
    s = ring_to_jgroup(RingDescriptor.mod(9))
    assert isinstance(s, JStructure) and verify_axiom(s).valid
    assert list(s.fmap) == [5 * x * (x - 1) % 9 for x in range(9)]
    t = ring_to_jgroup(RingDescriptor.mod(1))
    assert t.group.order == 1 and t.fmap == (0,)
    f = ring_to_jgroup(RingDescriptor.padic(2, 12))
    assert isinstance(f, FunctionalJStructure)
    assert f.verify_samples(1000, random.Random(1)).valid
    assert f(T.of(5, 2, 12)).precision == 11
    with pytest.raises(EvenCharacteristicError):
        ring_to_jgroup(RingDescriptor.mod(6))


def test_rational_and_integer_structures():
    rng = random.Random(3)
    for R in (RingDescriptor.integers(), RingDescriptor.rational()):
        assert ring_to_jgroup(R).verify_samples(300, rng).valid


def test_subring_examples():
    assert subring_restriction_check(RingDescriptor.rational(), RingDescriptor.integers())
    assert subring_restriction_check(RingDescriptor.padic_field(2, 6), RingDescriptor.padic(2, 6))
    with pytest.raises(NotUnitalSubringError):
        subring_restriction_check(RingDescriptor.integers(), MultiplesOf(2, RingDescriptor.integers()))


def test_profinite_examples():
    s = profinite_product(ProfiniteProductDescriptor(torsion=parse_torsion("3:2:1,5:1:2")))
    assert isinstance(s, JStructure) and s.group.order == 225 and verify_axiom(s).valid
    f = profinite_product(ProfiniteProductDescriptor(padic=((2, 1),), truncation=12))
    assert f.verify_samples(200, random.Random(0)).valid
    with pytest.raises(EvenCharacteristicError):
        profinite_product(ProfiniteProductDescriptor(torsion=((2, 1, 1),)))
    with pytest.raises(ValueError):
        ProfiniteProductDescriptor(torsion=((5, 1, 2),), padic=((3, 1),))


def test_factor_parsers():
    assert parse_torsion("3:2:1,5:1:2") == ((3, 2, 1), (5, 1, 2))
    assert parse_padic_factors("2,3:2") == ((2, 1), (3, 2))
    with pytest.raises(ValueError):
        parse_torsion("3:2")


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(-(10**20), 10**20))
def test_padic_axiom_exact(p, a):
    R = RingDescriptor.padic(p, 12)
    x = T.of(a, p, 12)
    lhs = binomial_map(R, x + 1)
    rhs = binomial_map(R, x) + x
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(st.fractions(max_denominator=1000))
def test_rational_axiom(q):
    R = RingDescriptor.rational()
    assert binomial_map(R, q + 1) == binomial_map(R, q) + q
    if q.denominator == 1:
        assert binomial_map(R, q).denominator == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 30).map(lambda k: 2 * k + 1))
def test_odd_moduli_give_structures(m):
    assert verify_axiom(ring_to_jgroup(RingDescriptor.mod(m))).valid


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 30).map(lambda k: 2 * k))
def test_even_moduli_rejected(m):
    with pytest.raises(EvenCharacteristicError):
        ring_to_jgroup(RingDescriptor.mod(m))
