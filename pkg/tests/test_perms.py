import math
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onecyl.perms import (Stratum, StratumParseError, abelian_strata, compose,
                          conjugacy_class_size, cycle_type, cycles, exterior_characters,
                          identity, inverse, parse_stratum, partitions, several_components,
                          sign)


def test_compose_applies_right_factor_first():
    p, q = (1, 2, 0), (1, 0, 2)
    assert compose(p, q) == tuple(p[q[i]] for i in range(3))
    assert compose(p, inverse(p)) == identity(3)


def test_cycles_and_type():
    assert cycle_type((1, 0, 3, 4, 2)) == (3, 2)
    assert sorted(len(c) for c in cycles((1, 0, 3, 4, 2))) == [2, 3]


@pytest.mark.parametrize("n", range(1, 8))
def test_class_sizes_partition_factorial(n):
    assert sum(conjugacy_class_size(n, t) for t in partitions(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_class_sizes_by_brute_force(n):
    counts = {}
    for p in permutations(range(n)):
        t = cycle_type(p)
        counts[t] = counts.get(t, 0) + 1
    assert counts == {t: conjugacy_class_size(n, t) for t in partitions(n)}


def test_known_characters():
    assert exterior_characters(4, (2, 2)) == (1, -1, -1, 1)
    assert exterior_characters(3, (1, 1, 1)) == (1, 2, 1)
    # the standard representation has character (fixed points - 1)
    assert exterior_characters(5, (2, 1, 1, 1))[1] == 2


@pytest.mark.parametrize("n", range(2, 9))
def test_top_exterior_power_is_sign(n):
    for t in partitions(n):
        p = []
        start = 0
        for ln in t:
            p.extend(start + (i + 1) % ln for i in range(ln))
            start += ln
        assert exterior_characters(n, t)[n - 1] == sign(tuple(p))


@pytest.mark.parametrize("m", range(1, 21))
def test_alternating_sum_vanishes_off_long_cycles(m):
    # sum_j (-1)^j chi_j = prod over cycles (1 - (-1)^l ... ) / (1 + 1): it is
    # the trace of the alternating sum, zero unless the permutation fixes a
    # line; for a long cycle it equals m, otherwise it is zero
    for t in partitions(m):
        total = sum((-1) ** j * c for j, c in enumerate(exterior_characters(m, t)))
        assert total == (m if t == (m,) else 0)


@given(st.integers(1, 30).flatmap(lambda n: st.tuples(st.just(n), st.sampled_from(list(partitions(n))) if n <= 12 else st.just((n,)))))
@settings(max_examples=200, deadline=None)
def test_character_dimensions(nt):
    n, _ = nt
    chi = exterior_characters(n, (1,) * n)
    assert chi == tuple(math.comb(n - 1, j) for j in range(n))


def test_parse_stratum_forms():
    s = parse_stratum(" Q(1^3, -1^3) ")
    assert s.orders == (1, 1, 1, -1, -1, -1)
    assert s.kind == "Q" and s.genus == 1 and s.dimension == 6
    h = parse_stratum("H(3,1)")
    assert (h.genus, h.dimension, h.n, h.cycle_type()) == (3, 7, 6, (4, 2))
    assert str(parse_stratum("H(1,1)")) == "H(1^2)"
    assert parse_stratum(h) is h


@pytest.mark.parametrize("text", ["H(1)", "Q(1)", "X(2)", "H(2", "Q(2,-2)", "H(-1,3)", "Q(1,1,1,1,-1^3)"])
def test_parse_stratum_rejects(text):
    with pytest.raises(StratumParseError):
        parse_stratum(text)


def test_marked_points_are_dropped_by_unmarked():
    assert parse_stratum("H(2,0)").unmarked() == parse_stratum("H(2)")


def test_abelian_strata_small():
    assert {str(s) for s in abelian_strata(6)} == {"H(3,1)", "H(2^2)"}
    assert all(s.n == 8 for s in abelian_strata(8))


def test_empty_abelian_stratum_is_the_torus():
    assert parse_stratum("H()").genus == 1
    # the torus keeps one marked point so that it is not empty
    assert parse_stratum("H(0)").unmarked() == parse_stratum("H(0)")
    assert parse_stratum("H(0,0)").unmarked() == parse_stratum("H(0)")


@pytest.mark.parametrize("name, split", [
    ("H(2)", False), ("H(1^2)", False), ("H(4)", True), ("H(3,1)", False),
    ("H(2^2)", True), ("H(3^2)", True), ("H(4,2)", True), ("H(2,1^2)", False),
    ("H(4,0)", True), ("Q(1^3,-1^3)", False), ("Q(8)", False), ("Q(6,-1^2)", True),
    ("Q(3^2,-1^2)", True), ("Q(6,2)", True), ("Q(9,-1)", True), ("Q(12)", True),
    ("Q(3^4)", True), ("Q(2^2)", False), ("Q(10,2)", True), ("Q(7^2,2)", True),
    ("Q(10,1^2)", True), ("Q(7^2,1^2)", True), ("Q(5,3)", False),
])
def test_several_components(name, split):
    assert several_components(name) is split
