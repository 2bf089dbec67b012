"""Generalized permutations, Rauzy induction and Rauzy classes.

A generalized permutation is a pair of rows of symbols in which every symbol
occurs exactly twice.  Ordinary permutations (each symbol once per row) encode
interval exchanges; the others encode linear involutions.  All permutations
handled here are *reduced*: symbols are renumbered by order of first
appearance, top row first, so two permutations that differ by a relabeling
compare equal.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field

from .perms import BudgetExceeded, Stratum, parse_stratum

__all__ = [
    "GeneralizedPermutation", "MoveUndefined", "RauzyClass", "MOVES",
    "rauzy_move", "rauzy_class", "standard_members", "stratum_of",
    "representative", "RepresentativeNotFound", "ClassTooLarge",
]

#: move kinds: (winner row, side)
MOVES = {"tr": (0, "right"), "br": (1, "right"), "tl": (0, "left"), "bl": (1, "left")}


class MoveUndefined(ValueError):
    """The requested Rauzy move does not exist for this permutation."""


class ClassTooLarge(BudgetExceeded):
    pass


class RepresentativeNotFound(LookupError):
    pass


class _NoSuspension(ValueError):
    pass


class _Infeasible(_NoSuspension):
    pass


def _canonical(top, bot):
    labels = {}
    for s in top:
        if s not in labels:
            labels[s] = len(labels)
    for s in bot:
        if s not in labels:
            labels[s] = len(labels)
    return tuple(labels[s] for s in top), tuple(labels[s] for s in bot)


@dataclass(frozen=True, order=True)
class GeneralizedPermutation:
    top: tuple
    bot: tuple

    def __post_init__(self):
        top, bot = _canonical(tuple(self.top), tuple(self.bot))
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bot", bot)
        counts = [0] * (len(set(top) | set(bot)))
        for s in top + bot:
            counts[s] += 1
        if any(c != 2 for c in counts):
            raise ValueError("every symbol must occur exactly twice")
        if not top or not bot:
            raise ValueError("both rows must be non-empty")
        st, sb = set(top), set(bot)
        if (st < sb) or (sb < st):
            raise ValueError("the symbols of one row form a strict subset of the other row")

    @classmethod
    def from_string(cls, text):
        """Parse ``"0 1 1 / 2 3 2 3 0"``."""
        if "/" in text:
            a, b = text.split("/")
        else:
            a, b = text.strip().splitlines()
        return cls(tuple(a.split()), tuple(b.split()))

    def __str__(self):
        return " ".join(map(str, self.top)) + " / " + " ".join(map(str, self.bot))

    def __repr__(self):
        return f"GeneralizedPermutation('{self}')"

    @property
    def nsymbols(self):
        return (len(self.top) + len(self.bot)) // 2

    def is_ordinary(self):
        return len(self.top) == len(self.bot) and set(self.top) == set(self.bot)

    def is_standard(self):
        return self.top[0] == self.bot[-1]

    def relation(self):
        """Coefficients ``c`` with ``sum c[a] * length[a] == 0`` for admissible
        lengths (``+1`` for a symbol doubled on top, ``-1`` doubled on bottom).
        """
        c = [0] * self.nsymbols
        for s in self.top:
            c[s] += 1
        for s in self.bot:
            c[s] -= 1
        return [x // 2 for x in c]

    def is_irreducible(self):
        """Irreducibility of an ordinary permutation (no invariant prefix)."""
        if not self.is_ordinary():
            raise NotImplementedError("irreducibility test only for ordinary permutations")
        n = len(self.top)
        for k in range(1, n):
            if set(self.top[:k]) == set(self.bot[:k]):
                return False
        return True


def _right_move(top, bot, winner):
    rows = [list(top), list(bot)]
    w, l = winner, 1 - winner
    alpha, beta = rows[w][-1], rows[l][-1]
    if alpha == beta:
        raise MoveUndefined("winner and loser coincide")
    alpha_twin_row = l if alpha in rows[l] else w
    if alpha_twin_row == w and beta in rows[l][:-1]:
        # beta leaves the loser row; it must keep some doubled symbol
        doubled = [s for s in set(rows[l]) if rows[l].count(s) == 2]
        if doubled == [beta]:
            raise MoveUndefined("loser row would lose its last doubled symbol")
    rows[l].pop()
    if alpha_twin_row == l:
        j = rows[l].index(alpha)
        rows[l].insert(j + 1, beta)
    else:
        j = rows[w].index(alpha)
        rows[w].insert(j, beta)
    return rows[0], rows[1]


def rauzy_move(p, kind):
    """Apply a Rauzy move of kind ``tr``, ``br``, ``tl`` or ``bl``.

    ``t``/``b`` names the winner row and ``r``/``l`` the end of the interval
    that is induced on.  Raises :class:`MoveUndefined` when the move does not
    exist.

    >>> rauzy_move(GeneralizedPermutation((0, 1, 2), (2, 1, 0)), "tr")
    GeneralizedPermutation('0 1 2 / 2 0 1')
    """
    winner, side = MOVES[kind]
    if side == "right":
        top, bot = _right_move(p.top, p.bot, winner)
    else:
        top, bot = _right_move(p.top[::-1], p.bot[::-1], winner)
        top, bot = top[::-1], bot[::-1]
    try:
        return GeneralizedPermutation(tuple(top), tuple(bot))
    except ValueError as exc:
        raise MoveUndefined(str(exc)) from None


@dataclass
class RauzyClass:
    """Closure of a permutation under Rauzy moves.

    ``members`` is sorted; ``moves[p]`` maps a move kind to the image of ``p``.
    """

    members: list
    moves: dict = field(repr=False)
    kinds: tuple = ("tr", "br", "tl", "bl")

    def __len__(self):
        return len(self.members)

    def __contains__(self, p):
        return p in self.moves

    def __iter__(self):
        return iter(self.members)


def rauzy_class(seed, use_left=True, use_right=True, max_size=10**6):
    """Breadth-first closure of ``seed`` under the enabled Rauzy moves."""
    if isinstance(seed, str):
        seed = GeneralizedPermutation.from_string(seed)
    kinds = tuple(k for k in ("tr", "br", "tl", "bl")
                  if (use_right and k[1] == "r") or (use_left and k[1] == "l"))
    moves = {seed: {}}
    queue = deque([seed])
    while queue:
        p = queue.popleft()
        out = moves[p]
        for k in kinds:
            try:
                q = rauzy_move(p, k)
            except MoveUndefined:
                continue
            out[k] = q
            if q not in moves:
                if len(moves) >= max_size:
                    raise ClassTooLarge(f"Rauzy class exceeds {max_size} permutations")
                moves[q] = {}
                queue.append(q)
    return RauzyClass(sorted(moves), moves, kinds)


def standard_members(c):
    """Members whose first top symbol equals the last bottom symbol."""
    return [p for p in c.members if p.is_standard()]


# --- singularity profile -------------------------------------------------

def _random_lengths(p, rng):
    """Random positive lengths satisfying the linear relation."""
    rel = p.relation()
    lam = [rng.uniform(0.5, 1.5) for _ in rel]
    pos = sum(x for x, c in zip(lam, rel) if c > 0)
    neg = sum(x for x, c in zip(lam, rel) if c < 0)
    if pos:
        lam = [x * neg / pos if c > 0 else x for x, c in zip(lam, rel)]
    return lam


def _random_heights(p, rng):
    """Heights ``tau`` with positive top and negative bottom partial sums.

    Linear involutions also need ``tau`` to satisfy the relation.  A point is
    found by a small linear program with a random objective, then perturbed
    so that no edge is horizontal.
    """
    from scipy.optimize import linprog

    n = p.nsymbols
    a_ub, b_ub = [], []
    for i in range(1, len(p.top)):
        row = [0.0] * n
        for s in p.top[:i]:
            row[s] -= 1
        a_ub.append(row)
        b_ub.append(-1.0)
    for j in range(1, len(p.bot)):
        row = [0.0] * n
        for s in p.bot[:j]:
            row[s] += 1
        a_ub.append(row)
        b_ub.append(-1.0)
    rel = p.relation()
    a_eq = [list(map(float, rel))] if any(rel) else None
    b_eq = [0.0] if any(rel) else None
    obj = [rng.uniform(-1, 1) for _ in range(n)]
    res = linprog(c=obj, A_ub=a_ub or None, b_ub=b_ub or None, A_eq=a_eq, b_eq=b_eq,
                  bounds=[(-4.0 * n, 4.0 * n)] * n, method="highs")
    if res.status != 0:
        raise _Infeasible(p)
    eps = [rng.uniform(-0.3, 0.3) / n for _ in range(n)]
    if any(rel):
        # project the perturbation onto the relation hyperplane
        dot = sum(e * c for e, c in zip(eps, rel)) / sum(c * c for c in rel)
        eps = [e - dot * c for e, c in zip(eps, rel)]
    return [x + e for x, e in zip(res.x, eps)]


def _path(word, lengths, tau):
    pts = [(0.0, 0.0)]
    for s in word:
        x, y = pts[-1]
        pts.append((x + lengths[s], y + tau[s]))
    return pts


def _interp(pts, x):
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    raise ValueError(x)


def _is_simple(tpts, bpts):
    """Both paths are x-monotone, so the polygon is simple iff the top path
    stays strictly above the bottom one away from the common endpoints."""
    xs = {x for x, _ in tpts[1:-1]} | {x for x, _ in bpts[1:-1]}
    return all(_interp(tpts, x) > _interp(bpts, x) + 1e-9 for x in xs)


def _polygon_profile(p, lengths, tau):
    top, bot = p.top, p.bot
    L, M = len(top), len(bot)
    # polygon vertices: 0..L are top points, L+1..L+M-1 interior bottom points
    # bottom point j (0 <= j <= M) -> index
    def bidx(j):
        if j == 0:
            return 0
        if j == M:
            return L
        return L + j

    tpts = _path(top, lengths, tau)
    bpts = _path(bot, lengths, tau)
    if abs(tpts[-1][1] - bpts[-1][1]) > 1e-9 or abs(tpts[-1][0] - bpts[-1][0]) > 1e-9:
        raise _NoSuspension(p)
    if any(y <= 0 for _, y in tpts[1:-1]) or any(y >= 0 for _, y in bpts[1:-1]):
        raise _NoSuspension(p)
    if not _is_simple(tpts, bpts):
        raise _NoSuspension(p)

    nv = L + M
    coords = [None] * nv
    for i in range(L + 1):
        coords[i] = tpts[i]
    for j in range(1, M):
        coords[L + j] = bpts[j]
    # counter-clockwise cycle: bottom left->right then top right->left
    ccw = [bidx(j) for j in range(M + 1)] + [i for i in range(L - 1, 0, -1)]
    pos = {v: k for k, v in enumerate(ccw)}

    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[a] = b

    edges = {}
    for i, s in enumerate(top):
        edges.setdefault(s, []).append((0, i, i + 1))
    for j, s in enumerate(bot):
        edges.setdefault(s, []).append((1, bidx(j), bidx(j + 1)))
    for s, ((r1, a1, b1), (r2, a2, b2)) in edges.items():
        if r1 != r2:
            union(a1, a2)
            union(b1, b2)
        else:
            union(a1, b2)
            union(b1, a2)

    prongs = {}
    two_pi = 2 * math.pi
    for v in range(nv):
        k = pos[v]
        nxt = ccw[(k + 1) % nv]
        prv = ccw[(k - 1) % nv]
        x, y = coords[v]
        a0 = math.atan2(coords[nxt][1] - y, coords[nxt][0] - x)
        a1 = math.atan2(coords[prv][1] - y, coords[prv][0] - x)
        sweep = (a1 - a0) % two_pi
        count = 0
        for theta in (0.0, math.pi):
            if 1e-12 < (theta - a0) % two_pi < sweep - 1e-12:
                count += 1
        r = find(v)
        prongs[r] = prongs.get(r, 0) + count
    return sorted(prongs.values(), reverse=True)


def _try_profile(p, rng, attempts):
    for _ in range(attempts):
        try:
            return _polygon_profile(p, _random_lengths(p, rng), _random_heights(p, rng))
        except _Infeasible:
            return None
        except _NoSuspension:
            continue
    return None


def stratum_of(p, marked=False, attempts=8, seed=0):
    """Singularity profile of the suspensions over ``p``.

    Marked points (regular vertices of the suspension) are dropped unless
    ``marked`` is true; the torus is reported as ``H(0)``.

    >>> stratum_of(GeneralizedPermutation((0, 1, 2, 3), (3, 2, 1, 0)))
    H(2)
    """
    if isinstance(p, str):
        p = GeneralizedPermutation.from_string(p)
    rng = random.Random(seed)
    prongs = None
    # the stratum is constant on a Rauzy class; when p itself has no polygon
    # suspension, walk the Rauzy graph to the nearest one that does
    seen = {p}
    queue = deque([p])
    while queue and prongs is None:
        q = queue.popleft()
        prongs = _try_profile(q, rng, attempts)
        if prongs is None:
            for k in MOVES:
                try:
                    r = rauzy_move(q, k)
                except MoveUndefined:
                    continue
                if r not in seen and len(seen) < 10000:
                    seen.add(r)
                    queue.append(r)
    if prongs is None:
        raise ValueError(f"{p} has no suspension in its Rauzy class")
    if p.is_ordinary():
        if any(k % 2 for k in prongs):
            raise ArithmeticError("odd prong count on a translation surface")
        s = Stratum("H", tuple(k // 2 - 1 for k in prongs))
    else:
        s = Stratum("Q", tuple(k - 2 for k in prongs))
    return s if marked else s.unmarked()


# --- representatives -----------------------------------------------------

def _cyl(top, bot):
    """Standard permutation from the two boundary words of a 1-cylinder
    diagram (the distinguished symbol is added)."""
    z = "z"
    return GeneralizedPermutation((z,) + tuple(top), tuple(bot) + (z,))


def _minimal_rep(g):
    n = 2 * g - 1
    return GeneralizedPermutation(tuple(range(n + 1)), tuple(range(n, -1, -1)))


_CATALOGUE_TEXT = {
    "H(0)": "0 1 / 1 0",
    "H(1^4)": "0 1 2 3 4 5 6 7 8 / 4 3 2 5 8 7 6 1 0",
    "Q(2,-1^2)": "0 1 1 / 2 3 2 3 0",
    "Q(1^3,-1^3)": "0 1 2 3 1 2 3 / 4 4 5 5 6 6 0",
    "Q(1,-1^5)": "0 1 1 / 2 2 3 3 4 4 0",
    "Q(1^2,-1^2)": "0 1 1 2 3 / 2 4 4 3 0",
    "Q(3,-1^3)": "0 1 1 2 / 2 3 3 4 4 0",
    "Q(2^2)": "0 1 2 1 2 / 3 4 3 4 0",
    "Q(5,-1)": "0 1 1 2 / 2 3 4 3 4 0",
    "Q(2,-1^6)": "0 1 1 / 2 2 3 3 4 4 5 5 0",
    "Q(2,1,-1^3)": "0 1 1 2 2 3 3 / 4 5 4 5 0",
    "Q(4,-1^4)": "0 1 1 2 / 2 3 3 4 4 5 5 0",
    "Q(2,1^2)": "0 1 2 1 2 / 3 4 5 3 4 5 0",
    "Q(4,1,-1)": "0 1 1 2 / 2 3 4 5 3 4 5 0",
    "Q(3,2,-1)": "0 1 1 2 / 2 3 4 3 5 4 5 0",
    "Q(6,-1^2)": "0 1 1 2 / 2 3 3 4 5 4 5 0",
    "Q(8)": "0 1 2 1 2 3 / 3 4 5 4 5 0",
    "Q(1^2,-1^6)": "0 1 1 2 2 3 3 / 4 4 5 5 6 6 0",
    "Q(3,-1^7)": "0 1 1 / 2 2 3 3 4 4 5 5 6 6 0",
    "Q(3,1,-1^4)": "0 1 1 2 2 3 3 / 4 4 5 6 5 6 0",
    "Q(2^2,-1^4)": "0 1 1 2 2 3 3 4 4 / 5 6 5 6 0",
    "Q(5,-1^5)": "0 1 1 2 / 2 3 3 4 4 5 5 6 6 0",
    "Q(1^4)": "0 1 2 3 1 2 3 / 4 5 6 4 5 6 0",
    "Q(3,1^2,-1)": "0 1 1 2 / 2 3 4 5 3 6 4 5 6 0",
    "Q(2^2,1,-1)": "0 1 1 2 / 2 3 4 5 4 6 5 6 3 0",
    "Q(5,1,-1^2)": "0 1 1 2 / 2 3 3 4 5 6 4 5 6 0",
    "Q(4,2,-1^2)": "0 1 1 2 / 2 3 3 4 5 4 6 5 6 0",
    "Q(3^2,-1^2)": "0 1 1 2 / 2 3 3 4 5 6 5 6 4 0",
    "Q(7,-1^3)": "0 1 1 2 / 2 3 3 4 4 5 6 5 6 0",
    "Q(7,1)": "0 1 2 1 2 3 / 3 4 5 6 4 5 6 0",
    "Q(6,2)": "0 1 2 1 2 3 / 3 4 5 4 6 5 6 0",
    "Q(5,3)": "0 1 2 1 2 3 / 3 4 5 6 5 6 4 0",
    "Q(4^2)": "0 1 2 1 2 3 4 / 3 5 6 5 6 4 0",
    "Q(9,-1)": "0 1 1 2 / 2 3 4 3 4 5 6 5 6 0",
}

#: representatives of small strata, every entry checked by the test suite
CATALOGUE = {k: GeneralizedPermutation.from_string(v) for k, v in _CATALOGUE_TEXT.items()}
_FOUND = {}


def representative(stratum, search_limit=12):
    """A permutation whose suspensions lie in ``stratum``.

    Looks up a small built-in catalogue, then the minimal strata.  Other
    Abelian strata get a one-cylinder permutation built directly; other
    quadratic strata are searched among standard permutations (1-cylinder
    diagrams of the stratum) with at most ``search_limit`` symbols.

    >>> representative("H(2)")
    GeneralizedPermutation('0 1 2 3 / 3 2 1 0')
    """
    s = parse_stratum(stratum)
    key = str(s)
    if key in CATALOGUE:
        return CATALOGUE[key]
    if key in _FOUND:
        return _FOUND[key]
    if s.is_abelian and len(s.orders) == 1 and s.orders[0] > 0:
        return _minimal_rep(s.genus)
    from .diagrams import iter_standard_permutations, random_abelian_cylinder

    if s.is_abelian and all(m > 0 for m in s.orders):
        p = random_abelian_cylinder(s)
        _FOUND[key] = p
        return p

    nsym = s.n + 1
    if nsym > search_limit:
        raise RepresentativeNotFound(f"{s} needs {nsym} symbols (> {search_limit})")
    for p in iter_standard_permutations(s):
        _FOUND[key] = p
        return p
    raise RepresentativeNotFound(f"no permutation found for {s}")
