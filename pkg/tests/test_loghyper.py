from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from hahnfield import DerivationContext, LogMonomial, LogSeries, PreconditionError, example_couple, h_map, oracle_diff
from hahnfield.couples import AsymptoticCouple
from hahnfield.loghyper import format_log_series, h_inverse, verify_isomorphism

from conftest import G, S, series

L = LogMonomial


def test_h_map_examples():
    assert h_map(S(2, {(1, 2): 1})) == LogSeries({L({0: -1, 1: -2}): 1})
    assert h_map(S(2, {(-1, 0): 1})) == LogSeries({L({0: 1}): 1})
    assert h_map(S(2, {(0, 0): 3, (0, 1): 1})) == LogSeries({L(): 3, L({1: -1}): 1})


def test_oracle_diff_examples():
    assert oracle_diff(L({0: 1})) == LogSeries({L(): 1})
    assert oracle_diff(L({1: -1})) == LogSeries({L({0: -1, 1: -2}): -1})
    assert oracle_diff(L({0: 2})) == LogSeries({L({0: 1}): 2})


def _sympy_value(m: LogMonomial, x):
    ells = [x]
    for _ in range(4):
        ells.append(sp.log(ells[-1]))
    return sp.Mul(*[ells[i] ** sp.Rational(r.numerator, r.denominator) for i, r in m.exponents])


@pytest.mark.parametrize("exps", [
    {0: 1}, {1: -1}, {0: 2, 2: Fraction(1, 2)}, {0: -1, 1: 3, 3: -2}, {2: Fraction(-3, 4)}, {},
])
def test_oracle_matches_calculus(exps):
    # independent check of the chain-rule oracle against symbolic calculus
    x = sp.Symbol("x", positive=True)
    m = L(exps)
    want = sp.diff(_sympy_value(m, x), x)
    got = sum((sp.Rational(c.numerator, c.denominator) * _sympy_value(k, x)
               for k, c in oracle_diff(m).terms.items()), sp.Integer(0))
    assert sp.simplify(want - got) == 0


@given(st.dictionaries(st.integers(0, 3), st.fractions(-3, 3, max_denominator=4), max_size=3),
       st.dictionaries(st.integers(0, 3), st.fractions(-3, 3, max_denominator=4), max_size=3))
def test_oracle_leibniz(a, b):
    m, n = LogSeries({L(a): 1}), LogSeries({L(b): 1})
    assert oracle_diff(m * n) == oracle_diff(m) * n + m * oracle_diff(n)


@given(series(3, 5))
def test_commutes_with_derivation(f):
    ctx = DerivationContext(example_couple(3))
    assert h_map(ctx.derive(f)) == oracle_diff(h_map(f))
    assert h_inverse(h_map(f), 3) == f


@given(series(3), series(3))
def test_h_is_ring_morphism(f, g):
    assert h_map(f * g) == h_map(f) * h_map(g)
    assert h_map(f + g) == h_map(f) + h_map(g)


def test_isomorphism_examples():
    ctx = DerivationContext(example_couple(2))
    f = S(2, {(0, 1): 1})
    assert h_map(ctx.derive(f)) == oracle_diff(h_map(f)) == LogSeries({L({0: -1, 1: -2}): -1})
    f = S(2, {(-2, 0): 1})
    assert h_map(ctx.derive(f)) == oracle_diff(h_map(f)) == LogSeries({L({0: 1}): 2})
    assert oracle_diff(h_map(S(2, {(0, 0): 5}))).is_zero()
    assert verify_isomorphism(DerivationContext(example_couple(3)), 100, 3).ok


def test_verify_rejects_other_couples():
    c = AsymptoticCouple.from_table([[1, 0], [1, 2]])
    with pytest.raises(PreconditionError):
        verify_isomorphism(DerivationContext(c), 5, 0)


def test_ell_daggers_decrease():
    # valuations of l_i-dagger, pulled back, grow with i (so the daggers shrink)
    n = 4
    vals = []
    for i in range(n):
        d = oracle_diff(L({i: 1})) * LogSeries({L({i: -1}): 1})
        vals.append(h_inverse(d, n).valuation())
    assert vals == sorted(vals) and len(set(vals)) == n
    assert vals == list(example_couple(n).psi_table)


def test_pretty_printer():
    s = h_map(S(2, {(0, 0): 3, (1, 2): 1, (-1, 0): -2}))
    assert format_log_series(s, 2) == "-2*l0 + 3 + l0^-1*l1^-2"
    assert format_log_series(LogSeries(), 2) == "0"
