from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motheight.exactring import ONE, ZERO, L, LaurentPoly, PowerSeries1, PowerSeriesMulti, TruncationError, binomial_elem

coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
laurent = st.dictionaries(st.integers(-4, 4), coef, max_size=5).map(LaurentPoly)
nonzero_int_laurent = st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), min_size=1, max_size=4).map(
    LaurentPoly).filter(bool)


def test_examples():
    assert (L - 1) * (1 + L) == L**2 - 1
    assert ((1 - L**-2) ** 2).eval(4) == Fraction(225, 256)
    assert binomial_elem(1 + L, 2) == LaurentPoly({2: Fraction(1, 2), 1: Fraction(1, 2)})
    assert (L**2 - L + 3).vdim() == 2
    assert str(LaurentPoly({2: Fraction(1, 2), 1: Fraction(-1, 2)})) == "1/2*L^2 - 1/2*L"
    assert str(L**2 - 2 + L**-2) == "L^2 - 2 + L^-2"
    assert str(ZERO) == "0"


def test_vdim_of_zero_raises():
    with pytest.raises(ValueError, match="undefined filtration level"):
        ZERO.vdim()


def test_eval_pole_at_zero():
    with pytest.raises(ZeroDivisionError, match="pole at zero"):
        (L**-1).eval(0)


def test_division_only_by_monomials():
    assert (L**3 - L) / L == L**2 - 1
    assert (L + 1) / 2 == LaurentPoly({1: Fraction(1, 2), 0: Fraction(1, 2)})
    with pytest.raises(TypeError):
        (L + 1) / (L - 1)


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(nonzero_int_laurent, nonzero_int_laurent)
def test_vdim_additive(a, b):
    assert (a * b).vdim() == a.vdim() + b.vdim()


@given(laurent, laurent, st.sampled_from([2, 3, Fraction(5, 2), -7]))
def test_eval_is_ring_morphism(a, b, x):
    assert (a * b).eval(x) == a.eval(x) * b.eval(x)
    assert (a + b).eval(x) == a.eval(x) + b.eval(x)


@given(laurent)
def test_parse_roundtrip(a):
    assert LaurentPoly.parse(str(a)) == a


@given(laurent, st.integers(1, 3))
def test_substitute_power(a, k):
    assert a.substitute_power(k).eval(2) == a.eval(2**k)


def test_hash_consistent():
    assert hash(L + 1) == hash(LaurentPoly({0: 1, 1: 1}))
    assert {L + 1: 1}[1 + L] == 1


# power series in one variable

series = st.lists(laurent, min_size=1, max_size=7)


def test_truncation_error():
    s = PowerSeries1([ONE, L], 3)
    assert s[3] == ZERO
    with pytest.raises(TruncationError):
        s[4]


def test_inverse_needs_unit():
    with pytest.raises(ValueError, match="non-invertible constant term"):
        PowerSeries1([1 + L, ONE], 4).inverse()
    assert (PowerSeries1([L, ONE], 5) * PowerSeries1([L, ONE], 5).inverse()) == PowerSeries1.one(5)


@given(series)
def test_exp_log_roundtrip(cs):
    s = PowerSeries1([ZERO] + cs, 6)
    assert s.exp().log() == s
    t = PowerSeries1([ONE] + cs, 6)
    assert t.log().exp() == t
    assert t * t.inverse() == PowerSeries1.one(6)


def test_log_needs_constant_one():
    with pytest.raises(ValueError):
        PowerSeries1([L, ONE], 3).log()
    with pytest.raises(ValueError):
        PowerSeries1([ONE, ONE], 3).exp()


def test_compose_scale_truncation():
    s = PowerSeries1([ONE, ONE, ONE], 2)
    t = s.compose_scale(L, 2)
    assert t.trunc == 2 * 2 + 1
    assert t[2] == L and t[4] == L**2 and t[1] == ZERO


def test_log_derivative_geometric():
    # d/dT log 1/(1-LT) = L/(1-LT): T * that = sum L^n T^n
    g = PowerSeries1([L**n for n in range(8)], 7)
    ld = g.log_derivative()
    assert all(ld[n] == L**n for n in range(1, 7))


# multivariate


def test_multi_inverse_exp_log():
    V = ("T0", "T1")
    s = PowerSeriesMulti(V, {(0, 0): ONE, (1, 1): -L, (1, 0): ONE, (0, 2): Fraction(1, 3) * L}, 6)
    assert s * s.inverse() == PowerSeriesMulti.one(V, 6)
    assert s.log().exp() == s
    assert (s - 1).valuation() == 1
    assert PowerSeriesMulti.one(V, 4).valuation() is None


def test_multi_truncation():
    V = ("T0", "T1")
    s = PowerSeriesMulti(V, {(0, 0): ONE, (1, 1): ONE}, 3)
    with pytest.raises(TruncationError):
        s[(2, 2)]
