"""Zeta values: exact reduction of even values and numerics for multiple ones.

Multiple zeta values use the convention in which the *last* argument carries
the largest summation index,

    zeta(a_1, ..., a_k) = sum over 0 < n_1 < n_2 < ... < n_k of
                          1 / (n_1^a_1 * ... * n_k^a_k),

so the series converges when ``a_k >= 2``.  With this convention
``zeta(1, 3) = zeta(4) / 4`` and ``zeta(2, 2) = 3 zeta(4) / 4``.

>>> zeta_even_coefficient(4)
Fraction(1, 90)
>>> abs(mzv_numeric((1, 3)) - zeta_numeric(4) / 4) < 1e-10
True
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

__all__ = ["zeta_even_coefficient", "zeta_numeric", "mzv_numeric", "bernoulli"]


def bernoulli(n):
    """Bernoulli number ``B_n`` as a fraction (``B_1 = -1/2``)."""
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


@lru_cache(maxsize=None)
def zeta_even_coefficient(k):
    """Rational ``r`` with ``zeta(k) = r * pi^k`` for even ``k >= 2``."""
    if k < 2 or k % 2:
        raise ValueError("only even arguments >= 2 reduce to powers of pi")
    b = bernoulli(k)
    r = abs(b) * Fraction(2 ** k, 2 * math.factorial(k))
    return r


def zeta_numeric(k, precision=1e-15):
    """``zeta(k)`` for an integer ``k >= 2`` to absolute error ``precision``."""
    if k < 2:
        raise ValueError("zeta(k) diverges for k < 2")
    dps = max(15, int(-math.log10(precision)) + 5)
    with mpmath.workdps(dps):
        return mpmath.zeta(k)


def _nested_partial(args, n_max):
    """Array ``S[n]`` of the truncated nested sums over ``n_1 < ... < n_k = n``
    (``S[0] = 0``), i.e. the summands of the outermost series."""
    n = np.arange(1, n_max + 1, dtype=np.float64)
    inner = np.ones(n_max)
    for j, a in enumerate(args):
        term = inner / n ** a
        if j == len(args) - 1:
            return term
        # strictly smaller index for the next level
        c = np.cumsum(term)
        inner = np.concatenate(([0.0], c[:-1]))
    raise AssertionError


def _extrapolated(terms, c, depth, n_max):
    """Limit of the tail-corrected partial sums ``E(N)`` for ``N <= n_max``.

    ``E(N)`` adds to the partial sum the tail with the inner sums frozen at
    ``N``; the remaining error is a combination of ``log(N)^j / N^i`` which
    is removed by a least-squares fit over ``N`` in ``[n_max/50, n_max]``.
    """
    partial = np.cumsum(terms[:n_max])
    ns = np.unique(np.geomspace(max(n_max // 50, 10), n_max, 60).astype(np.int64))
    nf = ns.astype(np.float64)
    inner = terms[ns - 1] * nf ** c
    tail = np.array([float(mpmath.zeta(c, int(x) + 1)) for x in ns])
    e = partial[ns - 1] + inner * tail
    logs = np.log(nf)
    cols = [np.ones_like(nf)]
    for i in range(1, 4):
        for j in range(depth + 1):
            cols.append(logs ** j / nf ** i)
    a = np.array(cols).T
    scale = np.abs(a).max(axis=0)
    sol = np.linalg.lstsq(a / scale, e, rcond=None)[0] / scale
    return float(sol[0])


def mzv_numeric(args, precision=1e-10, return_error=False):
    """Multiple zeta value ``zeta(args)``.

    Partial sums of the nested series are computed with cumulative sums and
    extrapolated in the cutoff; the cutoff grows until two extrapolations
    (from the whole range and from its first half) agree to ``precision``.

    >>> round(mzv_numeric((1, 2, 2)), 8)
    0.2288104
    """
    args = tuple(int(a) for a in args)
    if not args or any(a < 1 for a in args) or args[-1] < 2:
        raise ValueError(f"zeta{args} diverges (last argument must be >= 2)")
    if len(args) == 1:
        v = float(zeta_numeric(args[0]))
        return (v, 0.0) if return_error else v
    c, depth = args[-1], len(args)
    n_max = 50_000
    while True:
        terms = _nested_partial(args, n_max)
        v = _extrapolated(terms, c, depth, n_max)
        err = abs(v - _extrapolated(terms, c, depth, n_max // 2))
        if err < precision or n_max >= 3_200_000:
            break
        n_max *= 4
    return (v, err) if return_error else v
