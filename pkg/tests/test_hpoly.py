import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st
import sympy

from qtop.hpoly import HSeries, NotAUnit, qint, qpow

N = 5
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(
    lambda f: mpq(f.numerator, f.denominator))
series = st.lists(rationals, min_size=N, max_size=N).map(lambda c: HSeries(c, N))
units = series.filter(lambda s: s[0] != 0)


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == HSeries.zero(N)


@given(units)
def test_inverse(a):
    assert a * a.inv() == HSeries.one(N)


def test_non_unit_has_no_inverse():
    with pytest.raises(NotAUnit):
        HSeries([0, 1, 0], 3).inv()


def test_mixed_order_truncates_to_minimum():
    a = HSeries([1, 1, 1, 1], 4)
    b = HSeries([1, 1], 2)
    assert (a * b).order == 2


h = sympy.Symbol("h")


def _sympy_series(expr, order):
    poly = sympy.series(expr, h, 0, order).removeO()
    return HSeries([mpq(str(poly.coeff(h, k))) for k in range(order)], order)


@pytest.mark.parametrize("x", [1, -1, 3, mpq(1, 2), mpq(-3, 2)])
def test_qpow_matches_sympy(x):
    assert qpow(x, N) == _sympy_series(sympy.exp(sympy.Rational(str(x)) * h), N)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bracket_factorial_matches_sympy(n):
    q = sympy.exp(h)
    expr = sympy.Integer(1)
    for k in range(1, n + 1):
        expr *= (q**k - 1) / (q - 1)
    assert qint("bracket-fact", n, order=N) == _sympy_series(expr, N)


@pytest.mark.parametrize("i,n", [(3, 1), (4, 2), (5, 3)])
def test_qbinom_at_h0_is_binomial(i, n):
    assert qint("qbinom", i, n, order=N)[0] == sympy.binomial(i, n)


def test_string_round_trip():
    a = HSeries([mpq(1, 3), 0, mpq(-7, 2)], 3)
    assert HSeries.from_strings(a.to_strings()) == a
