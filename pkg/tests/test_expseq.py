from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jgroups.exactnum import TruncatedPAdicInt as T
from jgroups.groups import make_cyclic, make_symmetric
from jgroups.jrings import RingDescriptor, ring_to_jgroup
from jgroups.expseq import (
    ExponentSequence,
    SequenceRejected,
    check_exponent_sequence_finite,
    check_exponent_sequence_padic,
    pointwise_propagation_demo,
)


def test_sequence_type():
    with pytest.raises(ValueError):
        ExponentSequence((3, 0, 9))
    with pytest.raises(ValueError):
        ExponentSequence(())
    assert ExponentSequence.parse("geometric:3:4").terms == (3, 9, 27, 81)
    assert ExponentSequence.parse("constant:7:3").terms == (7, 7, 7)
    assert ExponentSequence.parse("2,4,8").terms == (2, 4, 8)


def test_finite_examples():
    Z5 = make_cyclic(5)
    assert check_exponent_sequence_finite(Z5, 1, ExponentSequence.constant(5))
    assert not check_exponent_sequence_finite(Z5, 1, ExponentSequence.constant(2))
    S3 = make_symmetric(3)
    assert check_exponent_sequence_finite(S3, 0, ExponentSequence((1, 2, 3)))


def test_padic_examples():
    one = T.of(1, 3, 12)
    assert check_exponent_sequence_padic(3, 12, one, ExponentSequence((3, 9, 27, 81)), 4)
    assert not check_exponent_sequence_padic(3, 12, one, ExponentSequence.constant(2), 1)
    zero = T.of(0, 3, 12)
    assert check_exponent_sequence_padic(3, 12, zero, ExponentSequence.constant(2), 5)
    with pytest.raises(ValueError):
        check_exponent_sequence_padic(3, 12, one, ExponentSequence.constant(3), 13)


def test_demo_examples():
    s3 = ring_to_jgroup(RingDescriptor.padic(3, 12))
    r = pointwise_propagation_demo(s3, ExponentSequence.geometric(3, 10), 100, random.Random(0))
    assert r.all_passed and r.binom_track == list(range(1, 11))
    z7 = ring_to_jgroup(RingDescriptor.mod(7))
    r = pointwise_propagation_demo(z7, ExponentSequence.constant(7), 10)
    assert r.all_passed and r.samples == 7
    with pytest.raises(SequenceRejected):
        pointwise_propagation_demo(s3, ExponentSequence.geometric(2, 10), 10)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 10))
def test_binom_valuation_of_prime_powers(p, k):
    # for odd p the p-adic valuation of binom(p^k, 2) is exactly k
    v = T.of((p**k) * (p**k - 1) // 2, p, 12).valuation()
    assert v == k


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10).map(lambda k: 2 * k + 1), st.integers(1, 20))
def test_group_order_kills_every_element(m, count):
    G = make_cyclic(m)
    seq = ExponentSequence.constant(m, count)
    assert all(check_exponent_sequence_finite(G, x, seq) for x in range(m))
