from fractions import Fraction

import numpy as np
import pytest

from onecyl.origami import (SquareTiledSurface, census_weighted, cumulative, enumerate_sts,
                            from_cylinders, h2_census, h2_surfaces, volume_fit)
from onecyl.perms import BudgetExceeded, parse_stratum

# weighted H(2) census (one-cylinder, two-cylinder) for N = 3..7, frozen
H2_CENSUS = {3: (1, 2), 4: (4, 5), 5: (10, 17), 6: (21, 24), 7: (35, 55)}


def test_three_square_l_shape():
    s = SquareTiledSurface((1, 2, 0), (1, 0, 2))
    assert s.N == 3 and s.is_connected()
    assert s.stratum() == parse_stratum("H(2)")
    assert s.horizontal_cylinders() == [(3, 1)]


def test_torus():
    s = SquareTiledSurface((0,), (0,))
    assert s.stratum(marked=True) == parse_stratum("H(0)")
    assert s.automorphism_count() == 1


def test_invalid():
    with pytest.raises(ValueError):
        SquareTiledSurface((0, 1), (0,))


def test_merging_zeroes_example():
    # one row of eight squares glued on top by 4 3 2 5 8 7 6 1
    h = (1, 2, 3, 4, 5, 6, 7, 0)
    v = tuple(x - 1 for x in (4, 3, 2, 5, 8, 7, 6, 1))
    s = SquareTiledSurface(h, v)
    assert s.stratum() == parse_stratum("H(1^4)")
    assert s.horizontal_cylinders() == [(8, 1)]


def test_vertical_cylinders_are_horizontal_after_rotation():
    s = SquareTiledSurface((1, 2, 0, 4, 3), (3, 4, 2, 0, 1))
    rotated = SquareTiledSurface(s.v, tuple(np.argsort(s.h)))
    assert sorted(s.vertical_cylinders()) == sorted(rotated.horizontal_cylinders())


def test_from_cylinders_two_cylinder_h2():
    s = from_cylinders([(1, 0, [("A", 1)], [("B", 1)]),
                        (1, 1, [("B", 1), ("C", 2)], [("A", 1), ("C", 2)])])
    assert s.N == 4
    assert s.stratum() == parse_stratum("H(2)")
    assert sorted(s.horizontal_cylinders()) == [(1, 1), (3, 1)]


@pytest.mark.parametrize("N", range(3, 8))
def test_h2_census_goldens(N):
    assert h2_census(7)[N] == tuple(Fraction(x) for x in H2_CENSUS[N])


def test_h2_census_matches_brute_force():
    brute = census_weighted("H(2)", 6)
    c = h2_census(6)
    for N in range(1, 7):
        assert (brute.get((N, 1), 0), brute.get((N, 2), 0)) == c[N]


def test_h2_surfaces_reproduce_census():
    totals = {}
    for surf, wt, k in h2_surfaces(8):
        assert surf.stratum() == parse_stratum("H(2)")
        assert len(surf.horizontal_cylinders()) == k
        key = (surf.N, k)
        totals[key] = totals.get(key, 0) + wt
    c = h2_census(8)
    for N in range(3, 9):
        assert (totals.get((N, 1), 0), totals.get((N, 2), 0)) == c[N]


@pytest.mark.parametrize("name, n_max", [("H(2)", 6), ("H(1,1)", 6)])
def test_census_strategies_agree(name, n_max):
    a = enumerate_sts(name, n_max, strategy="canonical")
    b = enumerate_sts(name, n_max, strategy="burnside")
    assert a == b and a


def test_census_invariants():
    s = parse_stratum("H(1,1)")
    counts = enumerate_sts(s, 6)
    assert all(1 <= k <= s.genus + 2 - 1 for _, k in counts)
    for surf, _, k in h2_surfaces(7):
        assert sum(w * h for w, h in surf.horizontal_cylinders()) == surf.N
        assert sum(w * h for w, h in surf.vertical_cylinders()) == surf.N


def test_unweighted_h2_counts():
    # isomorphism classes of three- and four-square surfaces in H(2): the
    # three-square ones are one long cylinder and an L with two twists; all
    # together they form orbits of sizes 3 and 9 under the modular group
    counts = enumerate_sts("H(2)", 4)
    assert counts == {(3, 1): 1, (3, 2): 2, (4, 1): 4, (4, 2): 5}


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_sts("H(2)", 12)


def test_volume_fit_on_synthetic_data():
    ns = np.arange(61, dtype=float)
    c, resid = volume_fit(0.3 * ns ** 4 / 8 + 5 * ns ** 3, 4, extra_terms=1)
    assert abs(c - 0.3) < 1e-9 and resid < 1e-12
    assert list(cumulative([0, 1, 2, 3])) == [0, 1, 3, 6]
    with pytest.raises(ValueError):
        volume_fit(np.ones(3), 4)


def test_h2_fit_close_to_volume():
    c = h2_census(60)
    total, _ = volume_fit(cumulative([float(a + b) for a, b in c]), 4, extra_terms=1)
    assert abs(total / (np.pi ** 4 / 120) - 1) < 0.01
