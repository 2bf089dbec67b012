"""Cylinder statistics from integer interval exchanges and linear involutions.

With integer lengths every trajectory of the vertical flow through a unit
cell of the base interval is closed.  The flow is tracked on *states*: a
cell together with a direction (crossing the interval upwards or
downwards), which is the orientation double cover of the foliation.  Two
neighbouring states lie in the same band when their whole orbits stay
neighbours.  A band is a class of states modulo reversal of the direction.

>>> band_count("0 1 / 1 0", [1, 1])
1
>>> band_count("0 1 2 3 / 3 2 1 0", [1, 1, 1, 1])
2
"""
from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numba
import numpy as np

if "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
    # prefer OpenMP: an outdated TBB only produces a warning and no speedup
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

from .perms import BudgetExceeded, parse_stratum
from .rauzy import GeneralizedPermutation, rauzy_class, representative

__all__ = [
    "band_count", "BandStatistics", "pk_exhaustive", "pk_random",
    "uncorrelatedness_report", "max_cylinders", "admissible_lengths",
    "BudgetExceeded", "DEFAULT_SAMPLES", "DEFAULT_WALK", "DEFAULT_GRID",
]

DEFAULT_SAMPLES = 100_000
DEFAULT_WALK = 500
DEFAULT_GRID = 64


@numba.njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@numba.njit(cache=True)
def _bands(top, bot, lam):
    """Band count of the linear involution with rows ``top``/``bot`` (symbol
    arrays) and integer lengths ``lam`` indexed by symbol."""
    nsym = lam.shape[0]
    nt, nb = top.shape[0], bot.shape[0]
    # start of every occurrence; row 0 = top, 1 = bottom
    occ_row = np.full((nsym, 2), -1, np.int64)
    occ_start = np.zeros((nsym, 2), np.int64)
    cnt = np.zeros(nsym, np.int64)
    w = 0
    for i in range(nt):
        s = top[i]
        occ_row[s, cnt[s]] = 0
        occ_start[s, cnt[s]] = w
        cnt[s] += 1
        w += lam[s]
    wb = 0
    for i in range(nb):
        s = bot[i]
        occ_row[s, cnt[s]] = 1
        occ_start[s, cnt[s]] = wb
        cnt[s] += 1
        wb += lam[s]
    if w != wb:
        return -1
    n = 2 * w
    f = np.empty(n, np.int64)
    # states: x (crossing the top side upwards), w + x (bottom side downwards)
    for s in range(nsym):
        ln = lam[s]
        for k in range(2):
            row = occ_row[s, k]
            a = occ_start[s, k]
            orow = occ_row[s, 1 - k]
            b = occ_start[s, 1 - k]
            for o in range(ln):
                if row == 0:
                    if orow == 1:
                        f[a + o] = b + o
                    else:
                        f[a + o] = w + b + ln - 1 - o
                else:
                    if orow == 0:
                        f[w + a + o] = w + b + o
                    else:
                        f[w + a + o] = b + ln - 1 - o
    # right neighbour with respect to the direction of motion
    right = np.empty(n, np.int64)
    for x in range(w):
        right[x] = x + 1 if x + 1 < w else -1
        right[w + x] = w + x - 1 if x > 0 else -1
    good = np.zeros(n, np.bool_)
    for st in range(n):
        r = right[st]
        if r >= 0:
            fr = right[f[st]]
            good[st] = fr >= 0 and f[r] == fr
    parent = np.arange(n)
    seen = np.zeros(n, np.bool_)
    for st in range(n):
        if seen[st]:
            continue
        allgood = True
        x = st
        while not seen[x]:
            seen[x] = True
            if not good[x]:
                allgood = False
            a = _find(parent, x)
            b = _find(parent, f[x])
            if a != b:
                parent[a] = b
            x = f[x]
        if allgood:
            x = st
            while True:
                a = _find(parent, x)
                b = _find(parent, right[x])
                if a != b:
                    parent[a] = b
                x = f[x]
                if x == st:
                    break
    # a band is a set of unoriented leaves; next to a pole one leaf crosses
    # the interval in both directions, so orientations are not always split
    for x in range(w):
        a = _find(parent, x)
        b = _find(parent, w + x)
        if a != b:
            parent[a] = b
    comps = 0
    for st in range(n):
        if parent[st] == st:
            comps += 1
    return comps


@numba.njit(parallel=True, cache=True)
def _bands_batch(tops, bots, nt, nb, lams, out):
    for i in numba.prange(out.shape[0]):
        out[i] = _bands(tops[i, :nt[i]], bots[i, :nb[i]], lams[i])


def _as_perm(p):
    if isinstance(p, str):
        return GeneralizedPermutation.from_string(p)
    return p


def band_count(perm, lengths, max_width=10**8):
    """Number of bands of closed trajectories of the integer interval
    exchange or linear involution ``(perm, lengths)``.

    ``lengths[a]`` is the length of symbol ``a`` (after canonical relabeling
    of ``perm``).  Lengths must be positive integers with equal row totals.
    """
    p = _as_perm(perm)
    lam = np.asarray(lengths, dtype=np.int64)
    if lam.shape != (p.nsymbols,):
        raise ValueError(f"expected {p.nsymbols} lengths")
    if (lam <= 0).any():
        raise ValueError("lengths must be positive")
    width = int(sum(lam[s] for s in p.top))
    if width > max_width:
        raise BudgetExceeded(f"total length {width} exceeds {max_width}")
    k = _bands(np.array(p.top, np.int64), np.array(p.bot, np.int64), lam)
    if k < 0:
        raise ValueError("lengths violate the row-total relation")
    return int(k)


def max_cylinders(stratum):
    """Upper bound on the number of cylinders: ``g + r - 1`` for Abelian
    strata; for quadratic ones ``g + n - 2`` (``n`` counting poles), plus one
    when every order is even.

    >>> max_cylinders("Q(1^3,-1^3)"), max_cylinders("Q(2^2)")
    (5, 3)
    """
    s = parse_stratum(stratum)
    if s.is_abelian:
        return max(1, s.genus + len([m for m in s.orders if m > 0]) - 1)
    return s.genus + len(s.orders) - 2 + all(d % 2 == 0 for d in s.orders)


def _dependent_symbol(p):
    rel = p.relation()
    for a, c in enumerate(rel):
        if c < 0:
            return a, rel
    return None, rel


def admissible_lengths(p, free):
    """Complete a vector of free lengths (all symbols but the dependent one)
    to a full lengths vector; returns ``None`` when the dependent length is
    not positive.

    >>> p = GeneralizedPermutation.from_string("0 1 1 / 2 3 2 3 0")
    >>> admissible_lengths(p, [1, 5, 2])
    [1, 5, 3, 2]
    """
    p = _as_perm(p)
    dep, rel = _dependent_symbol(p)
    free = list(free)
    if dep is None:
        return free
    lam = free[:dep] + [0] + free[dep:]
    val = sum(c * x for c, x in zip(rel, lam))
    lam[dep] = val
    if lam[dep] <= 0:
        return None
    return lam


@dataclass
class BandStatistics:
    """Histogram of band counts with the metadata that produced it."""

    histogram: dict
    total: int
    meta: dict = field(default_factory=dict)

    def proportion(self, k):
        return self.histogram.get(k, 0) / self.total if self.total else float("nan")

    def stderr(self, k):
        p = self.proportion(k)
        return math.sqrt(p * (1 - p) / self.total) if self.total else float("nan")

    def proportions(self):
        return {k: self.proportion(k) for k in sorted(self.histogram)}

    def merge(self, other):
        h = Counter(self.histogram)
        h.update(other.histogram)
        return BandStatistics(dict(h), self.total + other.total, dict(self.meta))

    def to_dict(self):
        return {
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "total": self.total,
            "proportions": {str(k): v for k, v in self.proportions().items()},
            "stderr": {str(k): self.stderr(k) for k in sorted(self.histogram)},
            "meta": self.meta,
        }


def _count_batch(perms, lams):
    """Band counts for parallel lists of permutations and length arrays."""
    m = len(perms)
    width = max(max(len(p.top), len(p.bot)) for p in perms)
    tops = np.zeros((m, width), np.int64)
    bots = np.zeros((m, width), np.int64)
    nt = np.zeros(m, np.int64)
    nb = np.zeros(m, np.int64)
    for i, p in enumerate(perms):
        tops[i, :len(p.top)] = p.top
        bots[i, :len(p.bot)] = p.bot
        nt[i], nb[i] = len(p.top), len(p.bot)
    out = np.zeros(m, np.int64)
    _bands_batch(tops, bots, nt, nb, np.ascontiguousarray(lams, dtype=np.int64), out)
    return out


def _full_lengths(p, free):
    """Vectorized :func:`admissible_lengths`: rows of ``free`` completed to
    full vectors plus a mask of rows with a positive dependent length."""
    dep, rel = _dependent_symbol(p)
    m = free.shape[0]
    if dep is None:
        return free, np.ones(m, bool)
    lam = np.insert(free, dep, 0, axis=1)
    val = lam @ np.array(rel, np.int64)
    lam[:, dep] = val
    return lam, val > 0


def pk_exhaustive(stratum, L, perm=None, budget=5 * 10**7, batch=200_000):
    """Band-count histogram over every admissible lengths vector with free
    coordinates in ``{1..L}``.

    ``perm`` selects the permutation (default: the stratum representative).
    With ``perm='class'`` the grid is run for every member of the Rauzy class
    of the representative and the histograms are merged, which removes the
    dependence on the arbitrary choice of representative.

    >>> pk_exhaustive("H(2)", 1).histogram
    {2: 1}
    """
    s = parse_stratum(stratum)
    if isinstance(perm, str) and perm == "class":
        members = rauzy_class(representative(s)).members
        if len(members) * L ** (members[0].nsymbols - 1) > budget:
            raise BudgetExceeded("class grid exceeds the budget")
        out = None
        for q in members:
            st = pk_exhaustive(s, L, perm=q, budget=budget, batch=batch)
            out = st if out is None else out.merge(st)
        out.meta.update(permutation="class", class_size=len(members),
                        grid_points=len(members) * out.meta["grid_points"],
                        rejected=None)
        return out
    p = _as_perm(perm) if perm is not None else representative(s)
    free_dims = p.nsymbols - (0 if p.is_ordinary() else 1)
    total_pts = L ** free_dims
    if total_pts > budget:
        raise BudgetExceeded(f"{total_pts} grid points exceed the budget {budget}")
    hist = Counter()
    rejected = 0
    for start in range(0, total_pts, batch):
        idx = np.arange(start, min(total_pts, start + batch), dtype=np.int64)
        free = np.empty((len(idx), free_dims), np.int64)
        rest = idx.copy()
        for j in range(free_dims - 1, -1, -1):
            free[:, j] = rest % L + 1
            rest //= L
        lam, ok = _full_lengths(p, free)
        rejected += int((~ok).sum())
        lam = lam[ok]
        if len(lam):
            out = _count_batch([p] * len(lam), lam)
            hist.update(out.tolist())
    meta = {"method": "exhaustive", "stratum": str(s), "permutation": str(p),
            "grid": L, "grid_points": total_pts, "rejected": rejected}
    return BandStatistics(dict(hist), sum(hist.values()), meta)


class _WalkGraph:
    """Rauzy class as index arrays for fast random walks."""

    def __init__(self, p):
        c = rauzy_class(p)
        self.members = c.members
        index = {q: i for i, q in enumerate(self.members)}
        self.start = index[p]
        n = len(self.members)
        self.targets = np.full((n, 4), -1, np.int64)
        for i, q in enumerate(self.members):
            for j, kind in enumerate(("tr", "br", "tl", "bl")):
                img = c.moves[q].get(kind)
                if img is not None:
                    self.targets[i, j] = index[img]
        self.degree = (self.targets >= 0).sum(axis=1)

    def walk(self, rng, lengths):
        """Endpoints of independent walks of the given lengths; each step
        picks a defined move uniformly."""
        pos = np.full(len(lengths), self.start, np.int64)
        for step in range(int(lengths.max(initial=0))):
            active = lengths > step
            if not active.any():
                break
            cur = pos[active]
            choice = (rng.random(len(cur)) * self.degree[cur]).astype(np.int64)
            # index of the choice-th defined move
            valid = self.targets[cur] >= 0
            order = np.cumsum(valid, axis=1) - 1
            col = np.argmax((order == choice[:, None]) & valid, axis=1)
            pos[active] = self.targets[cur, col]
        return pos


def pk_random(stratum, samples=DEFAULT_SAMPLES, walk_len=DEFAULT_WALK, L=DEFAULT_GRID,
              seed=0, perm=None, chains=8, batch=20_000):
    """Band-count histogram from random Rauzy walks followed by uniform
    admissible lengths in ``{1..L}``.

    Each sample walks a uniform number of steps in ``[walk_len/2, walk_len]``
    from the representative.  Samples with a non-positive dependent length
    are skipped, and ``meta['attempts']`` records how many were drawn.  The
    work is split into ``chains`` independent streams of a counter-based
    generator, so results depend only on the seed and the parameters.
    """
    s = parse_stratum(stratum)
    p = _as_perm(perm) if perm is not None else representative(s)
    graph = _WalkGraph(p)
    free_dims = p.nsymbols - (0 if p.is_ordinary() else 1)
    children = np.random.SeedSequence(seed).spawn(chains)
    quota = [samples // chains + (1 if i < samples % chains else 0) for i in range(chains)]
    hist = Counter()
    attempts = 0
    for child, want in zip(children, quota):
        rng = np.random.Generator(np.random.Philox(child))
        got = 0
        while got < want:
            m = min(batch, 2 * (want - got) + 16)
            steps = rng.integers(walk_len // 2, walk_len + 1, size=m)
            ends = graph.walk(rng, steps)
            free = rng.integers(1, L + 1, size=(m, free_dims))
            perms = [graph.members[i] for i in ends]
            lam = np.zeros((m, p.nsymbols), np.int64)
            ok = np.zeros(m, bool)
            for i, q in enumerate(perms):
                full = admissible_lengths(q, free[i].tolist())
                if full is not None:
                    lam[i] = full
                    ok[i] = True
            # keep accepted samples in draw order up to the quota
            idx = np.flatnonzero(ok)
            attempts += int(idx[want - got - 1] + 1) if len(idx) >= want - got else m
            idx = idx[: want - got]
            if len(idx):
                out = _count_batch([perms[i] for i in idx], lam[idx])
                hist.update(out.tolist())
                got += len(idx)
    meta = {"method": "random", "stratum": str(s), "permutation": str(p),
            "samples": samples, "walk": walk_len, "grid": L, "seed": seed,
            "chains": chains, "attempts": attempts, "class_size": len(graph.members)}
    return BandStatistics(dict(hist), sum(hist.values()), meta)


def uncorrelatedness_report(stratum, N):
    """Joint statistics of horizontal and vertical cylinder counts over all
    surfaces with at most ``N`` squares.

    Returns a dict with the joint and marginal frequencies and the matrix of
    deviations ``|p(i, j) - p_i p_j|``.  Only ``H(2)`` is supported, through
    its explicit cylinder-diagram parametrization.
    """
    from .origami import h2_surfaces

    s = parse_stratum(stratum)
    if str(s) != "H(2)":
        raise NotImplementedError("joint statistics are implemented for H(2) only")
    if N < 3:
        raise ValueError("no H(2) surface has fewer than three squares")
    kmax = max_cylinders(s)
    joint = np.zeros((kmax, kmax), dtype=object)
    joint[:, :] = Fraction(0)
    for surf, wt, k in h2_surfaces(N):
        kv = len(surf.vertical_cylinders())
        joint[k - 1, kv - 1] += wt
    total = sum(joint.flat)
    pj = np.array([[float(x / total) for x in row] for row in joint])
    ph = pj.sum(axis=1)
    pv = pj.sum(axis=0)
    dev = np.abs(pj - np.outer(ph, pv))
    return {"N": N, "total": float(total), "joint": pj, "horizontal": ph,
            "vertical": pv, "deviation": dev, "max_deviation": float(dev.max())}
