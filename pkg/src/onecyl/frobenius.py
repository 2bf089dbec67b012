"""Counting Abelian one-cylinder diagrams with characters of the symmetric group.

A one-cylinder diagram with ``n`` saddle connections is a solution of
``c1 * c2 * c3 = 1`` in ``S_n`` with ``c1`` and ``c2`` long cycles and ``c3``
of the cycle type ``(m_1+1, ..., m_r+1)`` of the stratum.  The Frobenius
formula together with the special shape of the characters at a long cycle
turns the count into a one-line sum over exterior powers of the standard
representation.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .perms import conjugacy_class_size, exterior_characters, parse_stratum

__all__ = ["triple_count", "weighted_one_cyl_count", "minimal_count", "principal_count"]


def triple_count(n, t):
    """Number of pairs of ``n``-cycles whose product lies in the class ``t``.

    >>> triple_count(3, (3,))
    2
    >>> triple_count(4, (2, 2))
    6
    """
    chi = exterior_characters(n, t)
    s = sum(factorial(j) * factorial(n - 1 - j) * c for j, c in enumerate(chi))
    num = conjugacy_class_size(n, t) * s
    if num % n:
        raise ArithmeticError("character sum not divisible by n")
    return num // n


def weighted_one_cyl_count(stratum):
    """Sum of ``1/|Gamma(D)|`` over the one-cylinder diagrams of an Abelian
    stratum.

    >>> weighted_one_cyl_count("H(2)")
    Fraction(1, 3)
    >>> weighted_one_cyl_count("H(1,1)")
    Fraction(1, 4)
    """
    s = parse_stratum(stratum)
    if not s.is_abelian:
        raise ValueError("character count only available for Abelian strata")
    t = s.cycle_type()
    n = sum(t)
    return Fraction(triple_count(n, t), factorial(n))


def minimal_count(g):
    """Weighted count for ``H(2g-2)`` in closed form, ``n = 2g-1``."""
    n = 2 * g - 1
    return Fraction(2 * factorial(n - 1) ** 2, (n + 1) * factorial(n))


def principal_count(g):
    """Weighted count for ``H(1^(2g-2))`` in closed form.

    >>> principal_count(3)
    Fraction(21, 8)
    """
    dfact = 1
    for k in range(4 * g - 5, 0, -2):
        dfact *= k
    return Fraction(dfact, (4 * g - 4) * (2 * g - 1))
