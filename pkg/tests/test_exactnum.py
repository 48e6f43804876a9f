from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jgroups.exactnum import (
    SQRT2,
    NotInvertibleError,
    QuadRat,
    TruncatedPAdicInt as T,
    binom2,
    default_precision,
    mod_inverse,
    padic_add,
    padic_binom2,
    padic_exact_div2,
    padic_mul,
    parse_quadrat,
    quad_floor,
)


def test_binom2_examples():
    assert binom2(5) == 10
    assert binom2(0) == 0 and binom2(1) == 0
    assert binom2(-1) == 1


def test_mod_inverse_examples():
    assert mod_inverse(2, 9) == 5
    assert mod_inverse(2, 3) == 2
    with pytest.raises(NotInvertibleError):
        mod_inverse(2, 6)


def test_padic_arithmetic_examples():
    assert padic_add(T(3, 4, 5), T(3, 4, 4)) == T(3, 4, 9)
    assert padic_mul(T(3, 4, 5), T(3, 2, 4)) == T(3, 2, 2)
    assert padic_add(T(2, 4, 15), T(2, 4, 1)) == T(2, 4, 0)


def test_exact_div2_examples():
    assert padic_exact_div2(T(2, 4, 6)) == T(2, 3, 3)
    assert padic_exact_div2(T(2, 4, 0)) == T(2, 3, 0)
    with pytest.raises(NotInvertibleError):
        padic_exact_div2(T(2, 4, 5))


def test_padic_binom2_examples():
    assert padic_binom2(T(3, 4, 5)) == T(3, 4, 10)
    assert padic_binom2(T(2, 4, 3)) == T(2, 3, 3)


def test_padic_rejects_mixed_primes():
    with pytest.raises(ValueError):
        T(3, 4, 1) + T(5, 4, 1)


def test_default_precision_env(monkeypatch):
    monkeypatch.delenv("JGROUP_PRECISION", raising=False)
    assert default_precision() == 12
    monkeypatch.setenv("JGROUP_PRECISION", "20")
    assert default_precision() == 20


def test_quad_floor_examples():
    assert quad_floor(QuadRat(Fraction(3, 2), 2)) == 4
    assert quad_floor(QuadRat(5)) == 5
    assert quad_floor(QuadRat(Fraction(-1, 2), -1)) == -2


def test_parse_quadrat():
    assert parse_quadrat("sqrt2/2") == QuadRat(0, Fraction(1, 2))
    assert parse_quadrat("3/2+2*sqrt2") == QuadRat(Fraction(3, 2), 2)
    assert parse_quadrat("-1") == QuadRat(-1)
    assert SQRT2 * SQRT2 == QuadRat(2)


primes = st.sampled_from([2, 3, 5, 7])
ints = st.integers(-(10**30), 10**30)
rats = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**9)


@settings(max_examples=200, deadline=None)
@given(primes, st.integers(1, 20), ints, ints)
def test_padic_ring_homomorphism(p, n, a, b):
    x, y = T.of(a, p, n), T.of(b, p, n)
    assert x + y == T.of(a + b, p, n)
    assert x * y == T.of(a * b, p, n)
    assert x - y == T.of(a - b, p, n)


@settings(max_examples=200, deadline=None)
@given(primes, st.integers(2, 20), ints)
def test_padic_binom2_matches_integer(p, n, a):
    b = padic_binom2(T.of(a, p, n))
    out_prec = n - 1 if p == 2 else n
    assert b.precision == out_prec
    assert b.residue == binom2(a) % p**out_prec


@settings(max_examples=200, deadline=None)
@given(primes, st.integers(1, 20), ints)
def test_valuation(p, n, a):
    v = T.of(a, p, n).valuation()
    if a % p**n == 0:
        assert v == n
    else:
        assert a % p**v == 0 and a % p ** (v + 1) != 0


@settings(max_examples=300, deadline=None)
@given(rats, rats)
def test_quad_floor_bracket(a, b):
    x = QuadRat(a, b)
    k = quad_floor(x)
    assert QuadRat(k) <= x < QuadRat(k + 1)
    if abs(float(a)) + abs(float(b)) < 1e6:
        approx = float(a) + float(b) * math.sqrt(2)
        if abs(approx - round(approx)) > 1e-6:
            assert k == math.floor(approx)


@settings(max_examples=200, deadline=None)
@given(rats, rats, rats, rats)
def test_quadrat_field(a, b, c, d):
    x, y = QuadRat(a, b), QuadRat(c, d)
    assert (x + y) - y == x
    assert x * y == y * x
    if y:
        assert (x / y) * y == x
