"""One-cylinder separatrix diagrams.

A standard permutation ``(0 T / B 0)`` describes a single flat cylinder: once
the distinguished symbol ``0`` is removed, the word ``T`` lists the saddle
connections along the top boundary and ``B`` those along the bottom boundary.
Two standard permutations describe the same diagram when they differ by a
cyclic rotation of ``T``, of ``B``, and (for quadratic differentials) by the
exchange of the two boundary components.

Example: the stratum ``Q(1^3,-1^3)`` has four diagrams.

>>> ds = diagrams_of_stratum("Q(1^3,-1^3)")
>>> sorted((d.symmetry_order, d.lmn) for d in ds)
[(1, (2, 3, 1)), (1, (3, 2, 1)), (2, (0, 1, 5)), (18, (0, 3, 3))]
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .perms import BudgetExceeded, Stratum, parse_stratum
from .rauzy import GeneralizedPermutation, standard_members

__all__ = [
    "SeparatrixDiagram", "cylinder_profile", "stratum_of_standard", "lmn_of",
    "standard_orbit", "diagrams_of_class", "diagrams_of_stratum",
    "iter_standard_permutations", "weighted_count", "symmetry_group_size",
    "random_abelian_cylinder", "enumeration_size",
]


def _words(p):
    if not p.is_standard():
        raise ValueError(f"{p} is not standard")
    return p.top[1:], p.bot[:-1]


def _from_words(top, bot):
    z = -1
    return GeneralizedPermutation((z,) + tuple(top), tuple(bot) + (z,))


def cylinder_profile(top, bot):
    """Sizes of the classes of boundary points of a cylinder.

    The top boundary is cut into the saddle connections of ``top`` and the
    bottom one into those of ``bot``; equal symbols are glued, by a
    translation when they sit on opposite boundaries and by a half-turn
    otherwise.  Every boundary point carries an angle ``pi``, so a class of
    ``c`` points is a singularity of total angle ``c*pi``.

    >>> cylinder_profile((1, 2, 3), (3, 2, 1))
    [6]
    >>> cylinder_profile((1, 1), (2, 2))
    [1, 1, 1, 1]
    """
    k, j = len(top), len(bot)
    parent = list(range(k + j))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[a] = b

    # segment i of a row runs from point i to point i+1 (cyclically)
    seg = {}
    for i, s in enumerate(top):
        seg.setdefault(s, []).append((0, i, (i + 1) % k))
    for i, s in enumerate(bot):
        seg.setdefault(s, []).append((1, k + i, k + (i + 1) % j))
    for s, pair in seg.items():
        if len(pair) != 2:
            raise ValueError(f"symbol {s} does not occur exactly twice")
        (r1, a1, b1), (r2, a2, b2) = pair
        if r1 != r2:
            union(a1, a2)
            union(b1, b2)
        else:
            union(a1, b2)
            union(b1, a2)
    sizes = {}
    for x in range(k + j):
        r = find(x)
        sizes[r] = sizes.get(r, 0) + 1
    return sorted(sizes.values(), reverse=True)


def _stratum_from_words(top, bot, marked=True):
    prof = cylinder_profile(top, bot)
    if set(top) == set(bot):
        if any(c % 2 for c in prof):
            raise ArithmeticError("odd class size for an orientable cylinder")
        s = Stratum("H", tuple(c // 2 - 1 for c in prof))
    else:
        s = Stratum("Q", tuple(c - 2 for c in prof))
    return s if marked else s.unmarked()


def stratum_of_standard(p, marked=False):
    """Stratum of the one-cylinder surface encoded by a standard permutation.

    >>> stratum_of_standard(GeneralizedPermutation.from_string("0 1 1 / 2 3 2 3 0"))
    Q(2,-1^2)
    """
    top, bot = _words(p)
    return _stratum_from_words(top, bot, marked)


def lmn_of(p):
    """``(l, m, n)``: symbols of ``p`` (other than the distinguished one)
    shared by both boundaries, doubled on the top, doubled on the bottom.

    >>> lmn_of(GeneralizedPermutation.from_string("0 1 1 / 2 3 2 3 0"))
    (0, 1, 2)
    """
    top, bot = _words(p)
    st, sb = set(top), set(bot)
    return len(st & sb), len(st - sb), len(sb - st)


def _rotations(w):
    return [w[i:] + w[:i] for i in range(len(w))]


def standard_orbit(p, swap=None):
    """All standard permutations describing the same diagram as ``p``.

    ``swap`` controls the exchange of the two boundaries; by default it is
    used exactly for non-orientable diagrams.
    """
    top, bot = _words(p)
    if swap is None:
        swap = set(top) != set(bot)
    out = set()
    pairs = [(top, bot), (bot, top)] if swap else [(top, bot)]
    for t, b in pairs:
        for t2 in _rotations(t):
            for b2 in _rotations(b):
                out.add(_from_words(t2, b2))
    return out


def symmetry_group_size(p):
    """``|Gamma|`` for the diagram of ``p``: the number of relabeling
    operations divided by the orbit size."""
    top, bot = _words(p)
    group = len(top) * len(bot) * (2 if set(top) != set(bot) else 1)
    orbit = len(standard_orbit(p))
    if group % orbit:
        raise ArithmeticError("orbit size does not divide the group order")
    return group // orbit


@dataclass(frozen=True)
class SeparatrixDiagram:
    """A one-cylinder separatrix diagram.

    ``lmn`` is ``None`` for Abelian diagrams; for quadratic ones ``m`` is
    the number of symbols doubled on the top of the canonical representative.
    """

    stratum: Stratum
    canonical_rep: GeneralizedPermutation
    orbit_size: int
    symmetry_order: int
    lmn: tuple | None

    @property
    def kind(self):
        return self.stratum.kind

    @property
    def weight(self):
        return Fraction(1, self.symmetry_order)

    def contribution(self):
        from .volumes import contribution_abelian, contribution_quadratic

        if self.lmn is None:
            return contribution_abelian(self.symmetry_order, self.stratum)
        return contribution_quadratic(self.symmetry_order, *self.lmn, self.stratum)

    def to_dict(self):
        c = self.contribution()
        coeff, zeta = c.as_zeta_multiple()
        out = {
            "stratum": str(self.stratum),
            "canonical_rep": str(self.canonical_rep),
            "orbit_size": self.orbit_size,
            "symmetry_order": self.symmetry_order,
            "contribution": {"coeff": str(coeff), "zeta": zeta},
        }
        if self.lmn is not None:
            out["l"], out["m"], out["n"] = self.lmn
        return out


def _group(perms, stratum):
    """Partition standard permutations into diagram orbits."""
    remaining = set(perms)
    out = []
    while remaining:
        p = min(remaining)
        orbit = standard_orbit(p)
        if not orbit <= remaining:
            raise ValueError("standard permutations are not closed under the relabeling operations")
        remaining -= orbit
        rep = min(orbit)
        top, bot = _words(rep)
        group = len(top) * len(bot) * (1 if stratum.is_abelian else 2)
        out.append(SeparatrixDiagram(
            stratum=stratum,
            canonical_rep=rep,
            orbit_size=len(orbit),
            symmetry_order=group // len(orbit),
            lmn=None if stratum.is_abelian else lmn_of(rep),
        ))
    out.sort(key=lambda d: (d.canonical_rep.top, d.canonical_rep.bot))
    return out


def diagrams_of_class(c):
    """Diagrams represented by the standard members of a Rauzy class."""
    std = standard_members(c)
    if not std:
        return []
    s = stratum_of_standard(std[0])
    return _group(std, s)


def _perfect_matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in _perfect_matchings(rest):
            yield [(a, items[i])] + m


def iter_standard_permutations(stratum):
    """All standard permutations whose cylinder lies in ``stratum``
    (every connected component)."""
    s = parse_stratum(stratum)
    if any(m == 0 for m in s.orders) and s != Stratum("H", (0,)):
        raise ValueError("strata with marked points are not supported")
    k = s.n
    seen = set()
    if s.is_abelian:
        top = tuple(range(1, k + 1))
        for bot in itertools.permutations(top):
            if _stratum_from_words(top, bot) == s:
                yield _from_words(top, bot)
        return
    cells = list(range(2 * k))
    for matching in _perfect_matchings(cells):
        word = [0] * (2 * k)
        for sym, (a, b) in enumerate(matching, start=1):
            word[a] = word[b] = sym
        for cut in range(1, 2 * k):
            top, bot = tuple(word[:cut]), tuple(word[cut:])
            st, sb = set(top), set(bot)
            if st <= sb or sb <= st:
                continue
            if _stratum_from_words(top, bot) != s:
                continue
            p = _from_words(top, bot)
            if p not in seen:
                seen.add(p)
                yield p


def enumeration_size(stratum):
    """Number of candidate boundary words examined by
    :func:`iter_standard_permutations`."""
    s = parse_stratum(stratum)
    k = s.n
    if s.is_abelian:
        return math.factorial(k)
    matchings = 1
    for j in range(2 * k - 1, 0, -2):
        matchings *= j
    return matchings * (2 * k - 1)


def random_abelian_cylinder(stratum, seed=0, max_tries=100_000):
    """One standard permutation of an Abelian stratum, built directly.

    With the top word ``1..n`` and the bottom word read as a permutation
    ``b`` of positions, the cone points on the top boundary are permuted by
    ``R b R^-1 b^-1`` where ``R`` is the rotation.  So pick a random ``tau``
    of the right cycle type such that ``R^-1 tau`` is an ``n``-cycle, and
    solve ``b R^-1 b^-1 = R^-1 tau`` for ``b``.

    >>> stratum_of_standard(random_abelian_cylinder("H(1^6)"))
    H(1^6)
    """
    s = parse_stratum(stratum)
    if not s.is_abelian or any(m == 0 for m in s.orders):
        raise ValueError("Abelian stratum without marked points expected")
    t = s.cycle_type()
    n = sum(t)
    rng = random.Random(seed)
    for _ in range(max_tries):
        pts = list(range(n))
        rng.shuffle(pts)
        tau = [0] * n
        pos = 0
        for ln in t:
            block = pts[pos:pos + ln]
            for i, x in enumerate(block):
                tau[x] = block[(i + 1) % ln]
            pos += ln
        c = [(tau[x] - 1) % n for x in range(n)]
        # c must be a single n-cycle
        x, steps = 0, 0
        while True:
            x = c[x]
            steps += 1
            if x == 0:
                break
        if steps != n:
            continue
        b = [0] * n
        x, y = 0, 0
        for _ in range(n):
            b[x] = y
            x, y = (x - 1) % n, c[y]
        bot = [0] * n
        for sym in range(n):
            bot[b[sym]] = sym + 1
        top = tuple(range(1, n + 1))
        if _stratum_from_words(top, tuple(bot)) == s:
            return _from_words(top, tuple(bot))
    raise RuntimeError(f"no cylinder found for {s}")


def diagrams_of_stratum(stratum, budget=2 * 10**7):
    """All one-cylinder diagrams of a stratum, found by direct enumeration
    of cylinder boundary words (all connected components)."""
    s = parse_stratum(stratum)
    size = enumeration_size(s)
    if size > budget:
        raise BudgetExceeded(f"{size} candidate words exceed the budget {budget}")
    return _group(list(iter_standard_permutations(s)), s)


def weighted_count(diagrams, lmn=None):
    """Sum of ``1/|Gamma|``, optionally restricted to one ``(l, m, n)``
    (compared with ``m`` and ``n`` unordered).

    >>> weighted_count(diagrams_of_stratum("H(2)"))
    Fraction(1, 3)
    """
    total = Fraction(0)
    for d in diagrams:
        if lmn is not None:
            l, m, n = lmn
            if d.lmn is None or d.lmn[0] != l or sorted(d.lmn[1:]) != sorted((m, n)):
                continue
        total += d.weight
    return total
