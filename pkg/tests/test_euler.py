from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motheight.euler import (
    CellularClass,
    PhiPsiSeq,
    euler_product,
    kapranov_zeta,
    mobius_int,
    phi_explicit,
    phi_psi,
    psi_integrality,
)
from motheight.exactring import ONE, ZERO, L, LaurentPoly, PowerSeries1, PowerSeriesMulti

P1 = CellularClass.projective(1)


def proj(n):
    return LaurentPoly({i: 1 for i in range(n + 1)})


def test_mobius_int():
    assert [mobius_int(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_cellular_class_validation():
    with pytest.raises(ValueError, match="virtual"):
        CellularClass({0: 1, 1: -1})
    t = CellularClass.torus(1)
    assert t.virtual and t.value == L - 1
    assert (P1 * P1).value == (1 + L) ** 2
    assert CellularClass.from_laurent(L**2 + 1).dim == 2


def test_kapranov_examples():
    z = kapranov_zeta(P1, 10)
    assert all(z[n] == proj(n) for n in range(11))
    za = kapranov_zeta(CellularClass.affine(2), 6)
    assert all(za[n] == L ** (2 * n) for n in range(7))
    assert kapranov_zeta(CellularClass.point(), 5) == PowerSeries1([ONE] * 6, 5)
    with pytest.raises(ValueError):
        kapranov_zeta(CellularClass.torus(1), 3)


def test_phi_psi_p1():
    seq = phi_psi(P1, 8)
    for n in range(1, 9):
        assert seq.Phi(n) == 1 + L**n
    assert seq.Psi(1) == 1 + L
    assert seq.Psi(2) == (L**2 - L) / 2
    assert psi_integrality(P1, 3) == [True, False, False]


def test_psi_specializes_to_closed_points():
    seq = phi_psi(P1, 6)
    expected = {(2, 1): 3, (2, 2): 1, (3, 2): 3}
    for (p, n), v in expected.items():
        assert seq.Psi(n).eval(p) == v


@pytest.mark.parametrize("x", [P1, CellularClass.affine(1), CellularClass.projective(2), P1 * P1,
                               CellularClass({0: 1, 1: 2, 2: 1})])
def test_phi_explicit_matches_log_derivative(x):
    z = kapranov_zeta(x, 6)
    seq = phi_psi(x, 6)
    for n in range(1, 7):
        assert phi_explicit(z.coeffs, n) == seq.Phi(n)


def test_phi_explicit_small():
    assert phi_explicit(kapranov_zeta(P1, 2).coeffs, 2) == 1 + L**2
    assert phi_explicit(kapranov_zeta(CellularClass.affine(1), 3).coeffs, 3) == L**3


cells = st.dictionaries(st.integers(0, 3), st.integers(1, 2), min_size=1, max_size=3)


@given(cells, cells)
def test_phi_multiplicative(a, b):
    x, y = CellularClass(a), CellularClass(b)
    sx, sy, sxy = phi_psi(x, 5), phi_psi(y, 5), phi_psi(x * y, 5)
    for n in range(1, 6):
        assert sxy.Phi(n) == sx.Phi(n) * sy.Phi(n)


@given(cells)
def test_phi_filtration_bound(a):
    x = CellularClass(a)
    seq = phi_psi(x, 5)
    for n in range(1, 6):
        assert seq.Phi(n).vdim() == n * x.dim
        if seq.Psi(n):
            assert seq.Psi(n).vdim() <= n * x.dim


def test_from_psi_from_phi_inverse():
    seq = phi_psi(P1, 7)
    assert PhiPsiSeq.from_psi(seq.psi).phi == seq.phi


@pytest.mark.parametrize("algo", ["direct", "closed_form"])
def test_euler_geometric_gives_zeta(algo):
    geom = PowerSeries1([ONE] * 21, 20)
    z = euler_product(phi_psi(P1, 20), geom, 20, algo=algo)
    for n in range(21):
        assert z[(n,)] == proj(n)


@pytest.mark.parametrize("algo", ["direct", "closed_form"])
def test_euler_two_variable(algo):
    V = ("T1", "T2")
    P = PowerSeriesMulti(V, {(0, 0): ONE, (1, 1): -ONE}, 8)
    z = euler_product(phi_psi(P1, 8), P, 8, algo=algo)
    expected = PowerSeriesMulti(V, {(0, 0): ONE, (1, 1): -(1 + L), (2, 2): L}, 8)
    assert z == expected


def test_euler_zero_psi():
    P = PowerSeries1([ONE, L, ONE], 4)
    z = euler_product([ZERO] * 4, P, 4)
    assert z == PowerSeriesMulti.one(("T",), 4)


def test_euler_errors():
    with pytest.raises(ValueError, match="non-invertible"):
        euler_product(phi_psi(P1, 3), PowerSeries1([L, ONE], 3), 3)
    with pytest.raises(ValueError, match="Psi known"):
        euler_product(phi_psi(P1, 2), PowerSeries1([ONE, ONE], 5), 5)


laurent_small = st.dictionaries(st.integers(-2, 2), st.fractions(-3, 3, max_denominator=3), max_size=3).map(
    LaurentPoly)


@given(st.lists(laurent_small, min_size=6, max_size=6),
       st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda k: 1 <= sum(k) <= 4),
                       laurent_small, max_size=4))
def test_algorithms_agree(psi, terms):
    V = ("T0", "T1")
    P = PowerSeriesMulti(V, {(0, 0): ONE, **terms}, 6)
    assert euler_product(psi, P, 6, "direct") == euler_product(psi, P, 6, "closed_form")
