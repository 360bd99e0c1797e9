from fractions import Fraction

import pytest
from hypothesis import given, settings

from hahnfield import DomainError, HahnSeries, StructuralError, TruncationBudget, dominance, invert, truncate
from hahnfield.hahn import asymptotic_equiv, field_compare, in_maximal_ideal, in_valuation_ring

from conftest import G, S, series

ONE = (0, 0)


def test_mul_examples():
    f = S(2, {ONE: 1, (1, 0): 1})
    g = S(2, {ONE: 1, (1, 0): -1})
    assert f * g == S(2, {ONE: 1, (2, 0): -1})
    assert (f + (-f)).is_zero() and (f + (-f)).terms == ()
    assert S(2, {(0, 1): 2, (1, 0): 1}) * S(2, {(0, 1): 3}) == S(2, {(0, 2): 6, (1, 1): 3})


def test_valuation_examples():
    f = S(2, {ONE: 3, (0, 1): 1})
    assert f.valuation() == G(0, 0) and f.leading() == (G(0, 0), 3)
    assert S(2, {(-1, 0): 1, ONE: 5}).valuation() == G(-1, 0)
    assert S(2, {(0, 1): 3, (0, 2): 5}).valuation() == G(0, 1)
    with pytest.raises(DomainError):
        HahnSeries.zero(2).valuation()


def test_dominance_examples():
    assert dominance(S(2, {(0, 1): 1}), S(2, {ONE: 1})) == "<<"
    assert asymptotic_equiv(S(2, {(0, 1): 3, (0, 2): 5}), S(2, {(0, 1): 3}))
    big = S(2, {(-1, 0): 2})
    assert dominance(big, S(2, {ONE: 1})) == ">>" and big > 0
    with pytest.raises(DomainError):
        dominance(big, HahnSeries.zero(2))


def test_invert_examples():
    r, b = invert(S(2, {ONE: 1, (1, 0): -1}), 4)
    assert r == S(2, {ONE: 1, (1, 0): 1, (2, 0): 1, (3, 0): 1}) and b == G(4, 0)
    r, b = invert(S(2, {(0, 1): 1}), 3)
    assert r == S(2, {(0, -1): 1}) and b is None
    f = S(2, {ONE: 2, (0, 1): 1})
    r, b = invert(f, 3)
    assert r == S(2, {ONE: Fraction(1, 2), (0, 1): Fraction(-1, 4), (0, 2): Fraction(1, 8)})
    assert b == G(0, 3)
    assert (f * r - 1) == S(2, {(0, 3): Fraction(1, 8)})
    with pytest.raises(DomainError):
        invert(HahnSeries.zero(2), 3)


def test_invert_with_cutoff():
    f = S(2, {ONE: 1, (0, 1): 1})
    r, b = invert(f, TruncationBudget(10, valuation_cutoff=G(0, 2)))
    assert r == S(2, {ONE: 1, (0, 1): -1}) and b == G(0, 2)


def test_truncate_examples():
    f = S(2, {ONE: 1, (1, 0): 1, (2, 0): 1})
    assert truncate(f, 2) == S(2, {ONE: 1, (1, 0): 1})
    assert truncate(HahnSeries.zero(2), 3).is_zero()
    assert truncate(f, 5) == f
    assert truncate(truncate(f, 2), 2) == truncate(f, 2)
    with pytest.raises(ValueError):
        TruncationBudget(0)


def test_json_round_trip_and_rejects():
    f = S(2, {(0, 1): 3, (-1, 0): "1/2"})
    doc = f.to_json()
    assert doc[0] == {"exp": ["-1", "0"], "coef": "1/2"}
    assert HahnSeries.from_json(doc) == f
    with pytest.raises(StructuralError, match="duplicate"):
        HahnSeries.from_json([{"exp": ["0"], "coef": "1"}, {"exp": ["0"], "coef": "2"}])
    with pytest.raises(StructuralError, match="zero"):
        HahnSeries.from_json([{"exp": ["0"], "coef": "0"}])
    assert HahnSeries.from_json([], 2).is_zero()


def test_structural_mismatch():
    with pytest.raises(StructuralError):
        S(2, {ONE: 1}) + S(3, {(0, 0, 0): 1})


@given(series(2), series(2), series(2))
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@given(series(2), series(2))
def test_valuation_laws(f, g):
    if f and g:
        assert (f * g).valuation() == f.valuation() + g.valuation()
        if f + g:
            assert (f + g).valuation() >= min(f.valuation(), g.valuation())
        if f.valuation() != g.valuation():
            assert (f + g).valuation() == min(f.valuation(), g.valuation())


@given(series(2), series(2), series(2))
def test_ordered_field(f, g, h):
    assert f * f >= 0
    if f > g:
        assert f + h > g + h
        if h > 0:
            assert f * h > g * h
    assert field_compare(f, g) == -field_compare(g, f)


@settings(max_examples=60)
@given(series(2, 5))
def test_invert_contract(f):
    if not f:
        return
    for n in (1, 2, 4, 8):
        r, b = invert(f, n)
        res = f * r - 1
        if b is None:
            assert res.is_zero()
        else:
            assert b.sign() > 0 and res.valuation() >= b


@given(series(2))
def test_valuation_ring_is_k_plus_infinitesimals(f):
    if in_valuation_ring(f):
        f0 = f.constant_term()
        assert in_maximal_ideal(f - f0)
        # convex hull of k: bounded by constants
        bound = abs(f0) + 1
        assert -bound <= f <= bound
    elif f:
        assert f.valuation().sign() < 0
        big = 10**9
        assert f > big or f < -big
