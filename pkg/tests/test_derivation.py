import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hahnfield import (
    AsymptoticCouple,
    DerivationContext,
    DomainError,
    HahnSeries,
    PreconditionError,
    example_couple,
    check_hfield,
    extract_couple,
    leading_term_law,
    power_dagger,
)
from hahnfield.couples import decide_a1, decide_a3, check_hardy_type, random_table
from hahnfield.derivation import extract_one, prime
from hahnfield.sampling import make_rng

from conftest import G, S, elements, series, scalars

ONE = (0, 0)


def test_derive_monomial_examples(ctx2):
    assert ctx2.derive_monomial(G(-1, 0)) == S(2, {ONE: 1})
    assert ctx2.derive_monomial(G(0, 1)) == S(2, {(1, 2): -1})
    assert ctx2.derive_monomial(G(0, 0)).is_zero()


def test_derive_examples(ctx2):
    assert ctx2.derive(S(2, {ONE: 5})).is_zero()
    assert ctx2.derive(S(2, {(1, 0): 1, (0, 1): 2})) == S(2, {(2, 0): -1, (1, 2): -2})
    x = S(2, {(-1, 0): 1})
    assert ctx2.derive(x * x) == S(2, {(-1, 0): 2})


def test_log_derivative_examples(ctx2):
    assert ctx2.log_derivative(S(2, {(0, 1): 1})) == (S(2, {(1, 1): -1}), None)
    assert ctx2.log_derivative(S(2, {(-1, 0): 1})) == (S(2, {(1, 0): 1}), None)
    assert ctx2.log_derivative(S(2, {ONE: 1})) == (HahnSeries.zero(2), None)
    with pytest.raises(DomainError):
        ctx2.log_derivative(HahnSeries.zero(2))


def test_log_derivative_residual_is_exact(ctx2):
    f = S(2, {(0, 1): 3, (0, 2): 1, (1, 0): -2})
    for n in (1, 2, 4):
        dag, bound = ctx2.log_derivative(f, n)
        err = dag * f - ctx2.derive(f)  # = f * (dag - f'/f)
        assert err.valuation() - f.valuation() == bound


def test_leading_term_law_examples(ctx2):
    r = leading_term_law(ctx2, S(2, {(0, 1): 3, (0, 2): 5}))
    assert r.passed and r.witness["got"] == [G(1, 2), -3]
    r = leading_term_law(ctx2, S(2, {(-1, 0): 1}))
    assert r.passed and r.witness["got"][0] == G(0, 0) == G(-1, 0) + G(1, 0)
    r = leading_term_law(ctx2, S(2, {(2, 0): 1}))
    assert r.passed and r.witness["got"] == [G(3, 0), -2]
    with pytest.raises(PreconditionError):
        leading_term_law(ctx2, S(2, {ONE: 1, (0, 1): 1}))


def test_power_dagger_examples(ctx2):
    r = power_dagger(ctx2, G(0, 1), 2)
    assert r.passed and r.witness["lhs"] == S(2, {(1, 1): -2})
    r = power_dagger(ctx2, G(1, 0), Fraction(-1, 2))
    assert r.passed and r.witness["lhs"] == S(2, {(1, 0): Fraction(1, 2)})
    r = power_dagger(ctx2, G(1, 0), 0)
    assert r.passed and r.witness["lhs"].is_zero()


def test_check_hfield_examples(ctx2):
    assert ctx2.derive(S(2, {(-1, 0): 2})) == S(2, {ONE: 2})
    assert ctx2.derive(S(2, {(0, 1): 1})) < 0
    assert ctx2.derive(S(2, {ONE: 7})).is_zero()
    assert check_hfield(ctx2, 100, 42).ok


def test_extract_couple_examples(ctx2):
    dag, _ = extract_one(ctx2, S(2, {(0, 1): 1}))
    assert dag.valuation() == G(1, 1)
    dag, bound = extract_one(ctx2, S(2, {(0, 1): 3, (0, 2): 1}))
    assert dag.valuation() == G(1, 1) and bound > G(1, 1)
    r = extract_couple(ctx2, hs=[S(2, {ONE: 1, (0, 1): 1})])
    assert r["psi_of_valuation"].status == "skipped"
    assert "vh = 0" in r["psi_of_valuation"].detail


def test_context_rejects_invalid_couples():
    with pytest.raises(PreconditionError):
        DerivationContext(AsymptoticCouple.from_table([[1, 0], [1, 0]]))
    with pytest.raises(PreconditionError):
        DerivationContext(AsymptoticCouple.from_table([[0, 1], [0, 0]]))


def valid_couples(count=20, seed=1):
    rng = make_rng(seed)
    out = [example_couple(n) for n in (1, 2, 3)]
    while len(out) < count:
        c = random_table(rng, int(rng.integers(1, 4)), -2, 2)
        if decide_a1(c) is None and decide_a3(c) is None and check_hardy_type(c)[0]:
            out.append(c)
    return out


@pytest.mark.parametrize("couple", valid_couples(), ids=str)
def test_laws_for_many_couples(couple):
    ctx = DerivationContext(couple)
    rng = make_rng(4)
    from hahnfield.derivation import random_series
    for _ in range(40):
        f, g = random_series(rng, ctx.size), random_series(rng, ctx.size)
        d = ctx.derive
        assert d(f * g) == d(f) * g + f * d(g)
        assert d(f + g) == d(f) + d(g)
        if f and f.valuation():
            assert leading_term_law(ctx, f).passed
            assert d(f).valuation() == prime(ctx, f.valuation())


@given(series(3), series(3))
def test_leibniz(f, g):
    ctx = DerivationContext(example_couple(3))
    assert ctx.derive(f * g) == ctx.derive(f) * g + f * ctx.derive(g)


@given(series(2), scalars)
def test_k_linear(f, c):
    ctx = DerivationContext(example_couple(2))
    assert ctx.derive(f.scale(c)) == ctx.derive(f).scale(c)


@given(st.lists(series(2), max_size=5))
def test_finite_strong_additivity(fs):
    ctx = DerivationContext(example_couple(2))
    total = sum(fs, HahnSeries.zero(2))
    assert ctx.derive(total) == sum((ctx.derive(f) for f in fs), HahnSeries.zero(2))


@given(series(2))
def test_constants_kernel(f):
    ctx = DerivationContext(example_couple(2))
    assert ctx.derive(f).is_zero() == f.is_constant()


@given(elements(3), elements(3))
def test_dagger_additive_on_monomials(a, b):
    ctx = DerivationContext(example_couple(3))
    da, _ = ctx.log_derivative(HahnSeries.monomial(a))
    db, _ = ctx.log_derivative(HahnSeries.monomial(b))
    dab, _ = ctx.log_derivative(HahnSeries.monomial(a + b))
    assert dab == da + db


def test_leading_term_exhaustive_two_term_grid(ctx2):
    exps = [G(*p) for p in itertools.product((-1, 0, 1), repeat=2)]
    for a in exps:
        for c in (1, -2):
            f = HahnSeries.monomial(a, c)
            if a:
                assert leading_term_law(ctx2, f).passed
        for b in exps:
            if a < b and a:
                assert leading_term_law(ctx2, HahnSeries(2, {a: 1, b: -1})).passed
