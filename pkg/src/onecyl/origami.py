"""Square-tiled surfaces.

A square-tiled surface with ``N`` squares is a pair of permutations
``(h, v)`` of ``range(N)``: ``h[i]`` is the square to the right of ``i`` and
``v[i]`` the square above it.

>>> s = SquareTiledSurface((1, 2, 0), (1, 0, 2))
>>> s.stratum()
H(2)
>>> s.horizontal_cylinders()
[(3, 1)]
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .perms import BudgetExceeded, Stratum, compose, cycle_type, cycles, inverse, parse_stratum, partitions

__all__ = [
    "SquareTiledSurface", "BudgetExceeded", "from_cylinders", "enumerate_sts",
    "census_weighted", "h2_census", "h2_surfaces", "volume_fit", "cumulative",
]


@dataclass(frozen=True)
class SquareTiledSurface:
    h: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(self.h))
        object.__setattr__(self, "v", tuple(self.v))
        n = len(self.h)
        if len(self.v) != n or sorted(self.h) != list(range(n)) or sorted(self.v) != list(range(n)):
            raise ValueError("h and v must be permutations of the same size")

    @property
    def N(self):
        return len(self.h)

    def is_connected(self):
        return _transitive(self.h, self.v)

    def commutator(self):
        """``v^-1 h^-1 v h`` (apply ``h`` first): the monodromy around the
        corners."""
        hi, vi = inverse(self.h), inverse(self.v)
        return compose(vi, compose(hi, compose(self.v, self.h)))

    def stratum(self, marked=False):
        """Orders of the cone points: a commutator cycle of length ``k+1`` is
        a zero of order ``k``; fixed points are regular corners."""
        orders = [k - 1 for k in cycle_type(self.commutator())]
        s = Stratum("H", tuple(orders))
        return s if marked else s.unmarked()

    def horizontal_cylinders(self):
        """``(width, height)`` of each maximal horizontal cylinder.

        Rows are cycles of ``h``; a row merges with the row above when no
        corner on their common boundary is a cone point.
        """
        return _cylinders(self.h, self.v)

    def vertical_cylinders(self):
        """Horizontal cylinders of the surface turned by a quarter turn."""
        return _cylinders(self.v, inverse(self.h))

    def canonical(self):
        """Canonical form under relabeling: the smallest relabeled pair over
        all breadth-first numberings."""
        best = None
        for start in range(self.N):
            lab = _bfs_labels(self.h, self.v, start)
            if lab is None:
                raise ValueError("surface is not connected")
            h2 = [0] * self.N
            v2 = [0] * self.N
            for i in range(self.N):
                h2[lab[i]] = lab[self.h[i]]
                v2[lab[i]] = lab[self.v[i]]
            cand = (tuple(h2), tuple(v2))
            if best is None or cand < best:
                best = cand
        return best

    def automorphism_count(self):
        """Number of relabelings commuting with both ``h`` and ``v``."""
        count = 0
        for start in range(self.N):
            if _extends_to_automorphism(self.h, self.v, start):
                count += 1
        return count


def _transitive(h, v):
    n = len(h)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    cnt = 1
    while stack:
        i = stack.pop()
        for j in (h[i], v[i]):
            if not seen[j]:
                seen[j] = True
                cnt += 1
                stack.append(j)
    return cnt == n


def _bfs_labels(h, v, start):
    n = len(h)
    lab = [-1] * n
    lab[start] = 0
    order = [start]
    k = 0
    while k < len(order):
        i = order[k]
        k += 1
        for j in (h[i], v[i]):
            if lab[j] < 0:
                lab[j] = len(order)
                order.append(j)
    return lab if len(order) == n else None


def _extends_to_automorphism(h, v, target):
    n = len(h)
    f = [-1] * n
    f[0] = target
    stack = [0]
    while stack:
        i = stack.pop()
        for perm in (h, v):
            j, fj = perm[i], perm[f[i]]
            if f[j] < 0:
                f[j] = fj
                stack.append(j)
            elif f[j] != fj:
                return False
    return True


def _cylinders(h, v):
    rows = cycles(h)
    row_of = {}
    for k, r in enumerate(rows):
        for i in r:
            row_of[i] = k
    parent = list(range(len(rows)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, r in enumerate(rows):
        if all(v[h[i]] == h[v[i]] for i in r):
            a, b = find(k), find(row_of[v[r[0]]])
            if a != b:
                parent[a] = b
    out = Counter()
    width = {}
    for k, r in enumerate(rows):
        root = find(k)
        out[root] += 1
        width[root] = len(r)
    return sorted(((width[k], hgt) for k, hgt in out.items()), reverse=True)


def from_cylinders(cyls):
    """Build a square-tiled surface from cylinder data.

    ``cyls`` is a list of ``(height, twist, bottom, top)`` where ``bottom``
    and ``top`` are lists of ``(label, length)`` read left to right.  Every
    label occurs once on some top boundary and once on some bottom boundary
    with the same length.  The twist shifts the top row against the top
    boundary.
    """
    offset = []
    n = 0
    widths = []
    for hgt, tw, bottom, top in cyls:
        w = sum(x for _, x in bottom)
        if w != sum(x for _, x in top):
            raise ValueError("top and bottom of a cylinder differ in length")
        widths.append(w)
        offset.append(n)
        n += w * hgt
    h = [0] * n
    v = [0] * n
    bottom_start = {}
    for k, (hgt, tw, bottom, top) in enumerate(cyls):
        pos = 0
        for lab, ln in bottom:
            bottom_start[lab] = (k, pos, ln)
            pos += ln
    for k, (hgt, tw, bottom, top) in enumerate(cyls):
        w = widths[k]
        base = offset[k]
        for r in range(hgt):
            for c in range(w):
                i = base + r * w + c
                h[i] = base + r * w + (c + 1) % w
                if r + 1 < hgt:
                    v[i] = i + w
        # glue the top row along the top boundary
        segs = []
        pos = 0
        for lab, ln in top:
            segs.append((pos, lab, ln))
            pos += ln
        for c in range(w):
            p = (c + tw) % w
            for start, lab, ln in segs:
                if start <= p < start + ln:
                    kk, bpos, bln = bottom_start[lab]
                    if bln != ln:
                        raise ValueError(f"segment {lab} has two different lengths")
                    v[base + (hgt - 1) * w + c] = offset[kk] + bpos + (p - start)
                    break
    return SquareTiledSurface(h, v)


def _rep_of_type(t):
    """A permutation with cycle type ``t``: consecutive blocks."""
    h = []
    start = 0
    for ln in t:
        h.extend(start + (i + 1) % ln for i in range(ln))
        start += ln
    return tuple(h)


def _centralizer_order(t):
    out = 1
    for ln, mult in Counter(t).items():
        out *= ln ** mult * factorial(mult)
    return out


def enumerate_sts(stratum, n_max, marked=False, budget=10**7, strategy="canonical"):
    """Census of connected square-tiled surfaces of ``stratum`` with at most
    ``n_max`` squares: ``{(N, cylinders): number of isomorphism classes}``.

    ``strategy='canonical'`` collects canonical forms; ``strategy='burnside'``
    sums automorphism counts (orbit counting).  Both agree; the first is the
    reference and the second the independent check.
    """
    s = parse_stratum(stratum)
    work = sum(sum(1 for _ in partitions(N)) * factorial(N) for N in range(1, n_max + 1))
    if work > budget:
        raise BudgetExceeded(f"about {work} pairs to examine (> {budget})")
    out = Counter()
    for N in range(1, n_max + 1):
        forms = {}
        burn = defaultdict(Fraction)
        for t in partitions(N):
            h = _rep_of_type(t)
            z = _centralizer_order(t)
            for v in itertools.permutations(range(N)):
                if not _transitive(h, v):
                    continue
                surf = SquareTiledSurface(h, v)
                if surf.stratum(marked) != s:
                    continue
                k = len(surf.horizontal_cylinders())
                if strategy == "canonical":
                    forms[surf.canonical()] = k
                else:
                    burn[k] += Fraction(surf.automorphism_count(), z)
        if strategy == "canonical":
            for k in forms.values():
                out[(N, k)] += 1
        else:
            for k, val in burn.items():
                if val.denominator != 1:
                    raise ArithmeticError("orbit count is not an integer")
                out[(N, k)] += int(val)
    return dict(out)


def census_weighted(stratum, n_max, marked=False):
    """Census weighted by ``1/|Aut|``, i.e. pairs ``(h, v)`` divided by ``N!``:
    ``{(N, cylinders): Fraction}``."""
    s = parse_stratum(stratum)
    out = defaultdict(Fraction)
    for N in range(1, n_max + 1):
        for t in partitions(N):
            h = _rep_of_type(t)
            z = _centralizer_order(t)
            for v in itertools.permutations(range(N)):
                if not _transitive(h, v):
                    continue
                surf = SquareTiledSurface(h, v)
                if surf.stratum(marked) != s:
                    continue
                out[(N, len(surf.horizontal_cylinders()))] += Fraction(1, z)
    return dict(out)


def h2_census(n_max):
    """Weighted census of ``H(2)`` from its two cylinder diagrams.

    Returns a list ``c`` of length ``n_max + 1`` where ``c[N] = (one, two)``
    are the exact weighted counts of surfaces with ``N`` squares and one or
    two horizontal cylinders.

    >>> h2_census(4)[3:]
    [(Fraction(1, 1), Fraction(2, 1)), (Fraction(4, 1), Fraction(5, 1))]
    """
    c = [(Fraction(0), Fraction(0))]
    for N in range(1, n_max + 1):
        # one cylinder: width w, height N/w, three saddle connections, twist
        one = 0
        for w in range(3, N + 1):
            if N % w == 0:
                one += (w - 1) * (w - 2) // 2 * w
        two = 0
        for l1 in range(1, N + 1):
            for l2 in range(1, N + 1):
                w2 = l1 + l2
                if l1 + w2 > N:
                    break
                for h1 in range(1, N // l1 + 1):
                    rest = N - l1 * h1
                    if rest >= w2 and rest % w2 == 0:
                        two += l1 * w2
        c.append((Fraction(one, 3), Fraction(two)))
    return c


def h2_surfaces(n_max):
    """Yield ``(surface, weight, cylinders)`` for every ``H(2)`` surface with
    at most ``n_max`` squares.  One-cylinder surfaces are produced three
    times (once per cyclic relabeling of the saddle connections) with weight
    ``1/3``; the weighted totals match :func:`h2_census`.
    """
    for w in range(3, n_max + 1):
        for hgt in range(1, n_max // w + 1):
            for l1 in range(1, w - 1):
                for l2 in range(1, w - l1):
                    l3 = w - l1 - l2
                    for tw in range(w):
                        cyl = [(hgt, tw, [("c", l3), ("b", l2), ("a", l1)],
                                [("a", l1), ("b", l2), ("c", l3)])]
                        yield from_cylinders(cyl), Fraction(1, 3), 1
    for l1 in range(1, n_max + 1):
        for l2 in range(1, n_max + 1):
            w2 = l1 + l2
            if l1 + w2 > n_max:
                break
            for h1 in range(1, n_max + 1):
                for h2 in range(1, n_max + 1):
                    if l1 * h1 + w2 * h2 > n_max:
                        break
                    for t1 in range(l1):
                        for t2 in range(w2):
                            cyl = [
                                (h1, t1, [("A", l1)], [("B", l1)]),
                                (h2, t2, [("B", l1), ("C", l2)], [("A", l1), ("C", l2)]),
                            ]
                            yield from_cylinders(cyl), Fraction(1), 2


def cumulative(counts):
    """Running sums of a per-``N`` sequence (index 0 ignored)."""
    return np.cumsum(np.asarray(counts, dtype=float))


def volume_fit(cum, d, lower=None, extra_terms=0):
    """Fit ``cum[N] ~ (c / 2d) N^d`` over ``N`` in the top half of the range.

    ``extra_terms`` adds lower powers ``N^(d-1), ...`` to absorb finite-size
    corrections.  Returns ``(c, residual)`` with the relative RMS residual.

    >>> ns = np.arange(61)
    >>> round(volume_fit(ns.astype(float) ** 4 / 8, 4)[0], 12)
    1.0
    """
    cum = np.asarray(cum, dtype=float)
    n_max = len(cum) - 1
    if n_max < 4:
        raise ValueError("need at least four data points")
    lo = lower if lower is not None else max(1, n_max // 2)
    ns = np.arange(lo, n_max + 1, dtype=float)
    y = cum[lo:]
    cols = [ns ** (d - j) for j in range(extra_terms + 1)]
    a = np.array(cols).T
    sol, *_ = np.linalg.lstsq(a, y, rcond=None)
    fit = a @ sol
    resid = float(np.sqrt(np.mean(((y - fit) / y) ** 2)))
    return float(sol[0] * 2 * d), resid
