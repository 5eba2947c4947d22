import pytest

from motheight.errors import StructuralError
from motheight.euler import CellularClass
from motheight.exactring import ONE, ZERO, L, LaurentPoly, TruncationError
from motheight.fan import BUNDLED_FANS, ObstructionSet, b_sigma, builtin_fan
from motheight.moebius import (
    P1,
    MultiDegreeTable,
    mobius_special_case,
    mobius_table,
    mu_x_single,
    proj_class,
    xb_class_at,
    xb_classes,
)


def test_mu_single():
    assert mu_x_single(P1, 4) == [ONE, -(1 + L), L, ZERO, ZERO]
    assert mu_x_single(CellularClass.point(), 3) == [ONE, -ONE, ZERO, ZERO]
    assert mu_x_single(CellularClass.affine(1), 3) == [ONE, -L, ZERO, ZERO]


def test_diagonal_case():
    B = ObstructionSet(2, [(1, 1)])
    mu = mobius_table(B, 8)
    m1 = mu_x_single(P1, 4)
    for d in mu.keys():
        assert d[0] == d[1]
    for k in range(5):
        assert mu[(k, k)] == m1[k]
    assert mu[(1, 0)] == ZERO


def test_xb_examples():
    B3 = ObstructionSet(3, [(1, 1, 1)])
    assert xb_class_at(mobius_table(B3, 3), (1, 1, 1)) == L**3 + 3 * L**2 + 2 * L
    assert xb_class_at(mobius_table(B3, 3), (0, 0, 0)) == ONE
    B = b_sigma(builtin_fan("p1xp1"))
    assert xb_class_at(mobius_table(B, 2), (1, 1, 0, 0)) == L**2 + L


@pytest.mark.parametrize("name", BUNDLED_FANS)
def test_special_cases_and_integrality(name):
    B = b_sigma(builtin_fan(name))
    mu = mobius_table(B, 8)
    assert all(v.is_integral() for _, v in mu.items())
    assert mobius_special_case(B, 8) == mu
    assert mobius_table(B, 8, algo="closed_form") == mu


def test_special_case_with_free_coordinate():
    # the last coordinate lies in no minimal element
    B = ObstructionSet(3, [(1, 1, 0)])
    assert mobius_special_case(B, 6) == mobius_table(B, 6)
    with pytest.raises(ValueError, match="overlap"):
        mobius_special_case(ObstructionSet(3, [(1, 1, 0), (0, 1, 1)]), 4)


def test_overlapping_b():
    B = ObstructionSet(3, [(1, 1, 0), (0, 1, 1)])
    assert xb_classes(B, 5, "both") == xb_classes(B, 5, "euler_QB")


@pytest.mark.parametrize("name", ["p1", "p2", "p1xp1", "hirzebruch:1"])
def test_xb_paths_agree(name):
    B = b_sigma(builtin_fan(name))
    t = xb_classes(B, 6, "both")
    assert t[(0,) * B.size] == ONE


def test_empty_b_is_product_of_projective_spaces():
    B = ObstructionSet(2, [])
    t = xb_classes(B, 4, "both")
    assert t[(2, 1)] == proj_class(2) * proj_class(1)


def test_filtration_decay():
    for name in BUNDLED_FANS:
        for e, v in mobius_table(b_sigma(builtin_fan(name)), 10).items():
            assert v.vdim() <= sum(e) // 2


def test_table_io():
    mu = mobius_table(b_sigma(builtin_fan("hirzebruch:1")), 6)
    assert MultiDegreeTable.from_json(mu.to_json()) == mu
    assert mu.to_csv().splitlines()[0] == "d,value"
    with pytest.raises(TruncationError):
        mu[(4, 4, 0, 0)]
    with pytest.raises(KeyError):
        mu[(1, 1)]
    assert mu.restrict(2).trunc == 2
    with pytest.raises(TruncationError):
        xb_class_at(mu, (4, 4, 0, 0))
