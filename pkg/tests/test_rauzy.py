from collections import deque

import pytest

from onecyl.diagrams import diagrams_of_class
from onecyl.perms import parse_stratum
from onecyl.rauzy import (CATALOGUE, ClassTooLarge, GeneralizedPermutation, MoveUndefined,
                          rauzy_class, rauzy_move, representative, standard_members,
                          stratum_of)

GP = GeneralizedPermutation.from_string


def test_relabeling_is_canonical():
    assert GP("a b c / c b a") == GP("0 1 2 / 2 1 0")
    assert GP("5 7 / 7 5").top == (0, 1)


@pytest.mark.parametrize("text", ["0 1 / 0", "0 1 1 / 0 2", "0 1 / 1 1"])
def test_invalid_permutations(text):
    with pytest.raises(ValueError):
        GP(text)


def test_right_moves_on_rotation():
    p = GP("0 1 2 / 2 1 0")
    assert rauzy_move(p, "tr") == GP("0 1 2 / 2 0 1")
    assert rauzy_move(p, "br") == GP("0 2 1 / 2 1 0")


def test_move_undefined_when_ends_coincide():
    with pytest.raises(MoveUndefined):
        rauzy_move(GP("0 1 2 / 1 0 2"), "tr")


def test_torus_class():
    c = rauzy_class(GP("0 1 / 1 0"))
    assert len(c) == 1
    assert standard_members(c) == c.members


def test_h2_class():
    c = rauzy_class(representative("H(2)"))
    assert len(c) == 7
    assert len(standard_members(c)) == 3
    assert sum(d.orbit_size for d in diagrams_of_class(c)) == 3


def test_q113_class_sizes():
    c = rauzy_class(representative("Q(1^3,-1^3)"))
    assert len(c) == 2010
    assert len(standard_members(c)) == 158
    assert sum(d.orbit_size for d in diagrams_of_class(c)) == 158


def test_class_budget():
    with pytest.raises(ClassTooLarge):
        rauzy_class(representative("Q(1^3,-1^3)"), max_size=100)


def _strongly_connected(c):
    def reach(adj, start):
        seen = {start}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for q in adj.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen

    fwd = {p: list(c.moves[p].values()) for p in c.members}
    bwd = {}
    for p, qs in fwd.items():
        for q in qs:
            bwd.setdefault(q, []).append(p)
    start = c.members[0]
    return len(reach(fwd, start)) == len(c) == len(reach(bwd, start))


@pytest.mark.parametrize("name", ["H(2)", "H(1,1)", "H(3,1)", "Q(1,-1^5)", "Q(1^2,-1^2)",
                                  "Q(2^2)", "Q(5,-1)", "Q(1^3,-1^3)"])
def test_moves_injective_and_class_strongly_connected(name):
    c = rauzy_class(representative(name))
    for kind in c.kinds:
        images = [c.moves[p][kind] for p in c.members if kind in c.moves[p]]
        assert len(images) == len(set(images))
    assert _strongly_connected(c)


@pytest.mark.parametrize("name", ["H(2)", "H(1,1)", "Q(1,-1^5)", "Q(2^2)", "Q(3,-1^3)"])
def test_stratum_is_constant_on_classes(name):
    c = rauzy_class(representative(name))
    expected = parse_stratum(name)
    assert all(stratum_of(p) == expected for p in c.members)


def test_stratum_of_does_not_depend_on_seed():
    p = representative("Q(3,1,-1^4)")
    assert len({stratum_of(p, seed=s) for s in range(5)}) == 1


def test_marked_points():
    assert stratum_of(GP("0 1 2 / 2 1 0"), marked=True) == parse_stratum("H(0,0)")
    assert stratum_of(GP("0 1 2 / 2 1 0")) == parse_stratum("H(0)")


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_catalogue_entries_lie_in_their_stratum(name):
    assert stratum_of(CATALOGUE[name]) == parse_stratum(name)


@pytest.mark.parametrize("g", range(2, 7))
def test_generated_representatives(g):
    for name in (f"H({2 * g - 2})", f"H(1^{2 * g - 2})", f"H({g - 1},{g - 1})"):
        p = representative(name)
        assert p.is_standard()
        assert stratum_of(p) == parse_stratum(name)


def test_representative_doctest_value():
    assert str(representative("H(2)")) == "0 1 2 3 / 3 2 1 0"


def test_linear_involution_relation():
    p = GP("0 1 1 / 2 3 2 3 0")
    assert p.relation() == [0, 1, -1, -1]
    assert not p.is_ordinary() and p.is_standard()
