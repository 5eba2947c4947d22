from itertools import product

import pytest

from motheight.errors import BudgetExceeded
from motheight.fan import BUNDLED_FANS, ObstructionSet, b_sigma, builtin_fan, nstar_enumerate
from motheight.fforacle import (
    _gcd_degree,
    check_ff_euler,
    closed_points_p1,
    count_divisor_tuples,
    count_u0d,
    normalized_forms,
)
from motheight.moebius import xb_classes, proj_class


def test_closed_points():
    assert closed_points_p1(2, 1) == 3
    assert closed_points_p1(2, 2) == 1
    assert closed_points_p1(3, 2) == 3
    with pytest.raises(ValueError):
        closed_points_p1(2, 0)


def test_normalized_forms_are_projective_points():
    for p in (2, 3, 5):
        for k in range(3):
            assert len(normalized_forms(p, k)) == (p ** (k + 1) - 1) // (p - 1)


def test_gcd_degree():
    # (x+1)^2 and (x+1)(x+2) over F_3
    assert _gcd_degree([(1, 2, 1), (2, 0, 1)], 3) == 1
    assert _gcd_degree([(1, 1), (0, 1)], 2) == 0


def test_tuple_counts():
    assert count_divisor_tuples(ObstructionSet(2, [(1, 1)]), 2, (1, 1)) == 6
    assert count_divisor_tuples(ObstructionSet(3, [(1, 1, 1)]), 2, (1, 1, 1)) == 24
    assert count_divisor_tuples(ObstructionSet(3, [(1, 1, 1)]), 3, (0, 0, 0)) == 1


def test_empty_b_sanity():
    B = ObstructionSet(3, [])
    for d in [(1, 0, 2), (2, 2, 1)]:
        expect = 1
        for k in d:
            expect *= proj_class(k).eval(3)
        assert count_divisor_tuples(B, 3, d) == expect


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        count_divisor_tuples(ObstructionSet(2, [(1, 1)]), 3, (8, 8), budget=1000)
    with pytest.raises(ValueError, match="not prime"):
        count_divisor_tuples(ObstructionSet(2, [(1, 1)]), 4, (1, 1))


def test_u0d_counts():
    assert count_u0d(builtin_fan("p1"), 2, 2) == 6
    assert count_u0d(builtin_fan("p2"), 2, 3) == 24
    for name in BUNDLED_FANS[:5]:
        f = builtin_fan(name)
        assert count_u0d(f, 3, 0) == 2**f.rank


@pytest.mark.parametrize("name", ["p1", "hirzebruch:1", "p2"])
def test_ff_euler(name):
    rep = check_ff_euler(b_sigma(builtin_fan(name)), 2, 4)
    assert rep.ok, rep.mismatches
    assert check_ff_euler(ObstructionSet(2, [(1, 1)]), 2, 4).ok
    assert check_ff_euler(ObstructionSet(2, []), 2, 4).ok


@pytest.mark.parametrize("name", BUNDLED_FANS)
@pytest.mark.parametrize("q", [2, 3])
def test_specialization_soundness(name, q):
    f = builtin_fan(name)
    B = b_sigma(f)
    table = xb_classes(B, 6, "convolution")
    for d in range(7):
        for v in nstar_enumerate(f, d):
            assert table[v].eval(q) == count_divisor_tuples(B, q, v)


# an oracle for the first Hirzebruch surface that never uses Cox coordinates:
# F_1 is P^2 blown up at [0:0:1], so a map P^1 -> F_1 meeting the torus is a
# triple of nonzero plane forms of degree k with no common zero, up to scalar,
# of anticanonical degree 3k - deg gcd(Fx, Fy)


def _plane_map_counts(q, dmax):
    def forms(k):
        return [c for c in product(range(q), repeat=k + 1) if any(c)]

    def hgcd(fs, k):
        at_inf = min(k - max(i for i, c in enumerate(f) if c) for f in fs)
        return _gcd_degree(fs, q) + at_inf

    counts = [0] * (dmax + 1)
    counts[0] = (q - 1) ** 2
    for k in range(1, dmax // 2 + 1):
        F = forms(k)
        for fx in F:
            if next(c for c in fx if c) != 1:
                continue
            for fy in F:
                d = 3 * k - hgcd([fx, fy], k)
                if d > dmax:
                    continue
                counts[d] += sum(1 for fz in F if hgcd([fx, fy, fz], k) == 0)
    return counts


@pytest.mark.parametrize("q,dmax", [(2, 8), (3, 6)])
def test_hirzebruch_one_against_plane_oracle(q, dmax):
    from motheight.curves import height_series
    from motheight.fan import hirzebruch_fan

    hs = height_series(hirzebruch_fan(1), dmax)
    assert [int(c.eval(q)) for c in hs.classes] == _plane_map_counts(q, dmax)
