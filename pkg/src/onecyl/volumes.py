"""Contributions of one-cylinder surfaces to Masur-Veech volumes.

A square-tiled surface with a single horizontal cylinder realizing a
diagram ``D`` contributes ``c(D)`` to the volume of its stratum; ``c1`` is
the sum over all one-cylinder diagrams and ``p1 = c1 / Vol`` the proportion
of one-cylinder surfaces.

>>> print(contribution_abelian(3, "H(2)"))
1/3 * zeta(4)
>>> print(c1_total_abelian("H(3,1)"))
1/15 * zeta(7)
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from math import factorial

from .frobenius import weighted_one_cyl_count
from .perms import exterior_characters, parse_stratum
from .symbolic import SymbolicValue

__all__ = [
    "contribution_abelian", "contribution_quadratic", "c1_total_abelian",
    "c1_total_quadratic", "c1_minimal", "c1_principal", "c1_bounds",
    "hyperelliptic_p1", "hyperelliptic_volume", "estimate_volume",
    "H2_TWO_CYLINDER", "dfact",
]


def dfact(n):
    """Double factorial with ``(-1)!! = 0!! = 1``."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _mult_factorials(s):
    out = 1
    for order, mult in Counter(s.orders).items():
        out *= factorial(mult)
    return out


def contribution_abelian(gamma, stratum):
    """``c(D) = 2/|Gamma| * prod(mu_k!) / (d-2)! * zeta(d)`` for a diagram
    with ``|Gamma| = gamma`` in an Abelian stratum (zeros labelled)."""
    s = parse_stratum(stratum)
    if not s.is_abelian:
        raise ValueError("Abelian stratum expected")
    d = s.dimension
    coeff = Fraction(2 * _mult_factorials(s), gamma * factorial(d - 2))
    return SymbolicValue.zeta(d, coeff)


def contribution_quadratic(gamma, l, m, n, stratum):
    """``c(D)`` for a quadratic diagram of type ``(l, m, n)``:

    ``2^(l+2)/|Gamma| * (m+n-2)!/((m-1)!(n-1)!) * prod(mu_k!)/(d-2)! * zeta(d)``
    where the product includes the multiplicity of poles.

    >>> print(contribution_quadratic(18, 0, 3, 3, "Q(1^3,-1^3)"))
    2 * zeta(6)
    """
    s = parse_stratum(stratum)
    if s.is_abelian:
        raise ValueError("quadratic stratum expected")
    d = s.dimension
    if l + m + n != d:
        raise ValueError(f"l+m+n = {l + m + n} differs from the dimension {d}")
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    coeff = Fraction(2 ** (l + 2) * factorial(m + n - 2) * _mult_factorials(s),
                     gamma * factorial(m - 1) * factorial(n - 1) * factorial(d - 2))
    return SymbolicValue.zeta(d, coeff)


def c1_total_abelian(stratum):
    """Total one-cylinder contribution from the character sum:

    ``c1 = 2/n! * prod (k+1)^(-mu_k) * sum_j j!(n-1-j)! chi_j * zeta(n+1)``.
    """
    s = parse_stratum(stratum)
    if not s.is_abelian:
        raise ValueError("Abelian stratum expected")
    t = s.cycle_type()
    n = sum(t)
    chi = exterior_characters(n, t)
    total = sum(factorial(j) * factorial(n - 1 - j) * c for j, c in enumerate(chi))
    denom = factorial(n)
    for k in s.orders:
        denom *= k + 1
    return SymbolicValue.zeta(n + 1, Fraction(2 * total, denom))


def c1_from_count(stratum, weighted_count=None):
    """``c1`` from a weighted diagram count (Abelian strata)."""
    s = parse_stratum(stratum)
    if weighted_count is None:
        weighted_count = weighted_one_cyl_count(s)
    return contribution_abelian(1, s) * Fraction(weighted_count)


def c1_total_quadratic(stratum, diagrams=None):
    """Sum of ``c(D)`` over the one-cylinder diagrams of a quadratic stratum."""
    from .diagrams import diagrams_of_stratum

    s = parse_stratum(stratum)
    if diagrams is None:
        diagrams = diagrams_of_stratum(s)
    total = SymbolicValue()
    for dg in diagrams:
        total = total + dg.contribution()
    return total


def c1_minimal(g):
    """``c1(H(2g-2)) = zeta(2g)/(2g) * 4/(2g-1)``."""
    return SymbolicValue.zeta(2 * g, Fraction(4, 2 * g * (2 * g - 1)))


def c1_principal(g):
    """``c1(H(1^(2g-2))) = zeta(4g-3)/(4g-2) * 4/2^(2g-2)``."""
    return SymbolicValue.zeta(4 * g - 3, Fraction(4, (4 * g - 2) * 2 ** (2 * g - 2)))


def c1_bounds(stratum):
    """Lower and upper bounds for ``c1`` of an Abelian stratum:
    ``zeta(d)/(d+1) * 4/prod(m_i+1)`` and ``zeta(d)/(d-10/29) * 4/prod(m_i+1)``.
    """
    s = parse_stratum(stratum)
    if not s.is_abelian:
        raise ValueError("Abelian stratum expected")
    d = s.dimension
    prod = 1
    for m in s.orders:
        prod *= m + 1
    lower = SymbolicValue.zeta(d, Fraction(4, (d + 1) * prod))
    upper = SymbolicValue.zeta(d, Fraction(4, prod) / (d - Fraction(10, 29)))
    return lower, upper


def hyperelliptic_volume(kind, g):
    """Volume of the hyperelliptic component of ``H(2g-2)`` (``kind='min'``)
    or ``H(g-1,g-1)`` (``kind='pair'``), zeros numbered as everywhere else
    in this package.

    >>> print(hyperelliptic_volume("pair", 2).normalized())
    1/135 * pi^4
    """
    if g < 2:
        raise ValueError("g >= 2 required")
    if kind == "min":
        c = Fraction(2 * dfact(2 * g - 3), factorial(2 * g + 1) * dfact(2 * g - 2))
    elif kind == "pair":
        # the two zeros are numbered, hence 2! times the unnumbered volume
        c = Fraction(8 * dfact(2 * g - 2), factorial(2 * g + 2) * dfact(2 * g - 1))
    else:
        raise ValueError(kind)
    return SymbolicValue.pi(2 * g, c)


def hyperelliptic_p1(kind, g):
    """Proportion of one-cylinder surfaces in a hyperelliptic component.

    >>> print(hyperelliptic_p1("min", 2).normalized())
    4/9
    """
    if kind == "min":
        c = Fraction(2 * g * (2 * g + 1) * dfact(2 * g - 2), dfact(2 * g - 3))
        return SymbolicValue({((2 * g,), -2 * g): c})
    if kind == "pair":
        c = Fraction((2 * g + 1) * (2 * g + 2) * dfact(2 * g - 1), 2 * dfact(2 * g - 2))
        return SymbolicValue({((2 * g + 1,), -2 * g): c})
    raise ValueError(kind)


#: contribution of the two-cylinder diagram of H(2), ``2/3! * 5/4 * zeta(4)``
H2_TWO_CYLINDER = SymbolicValue.zeta(4, Fraction(2, 6) * Fraction(5, 4))


def estimate_volume(c1, p1_hat, stderr=0.0):
    """Volume estimate ``c1 / p1_hat`` with a first-order error.

    Returns ``(value, error)`` as floats.

    >>> v, e = estimate_volume(SymbolicValue.zeta(4, Fraction(1, 3)), 4 / 9)
    >>> abs(v - math.pi ** 4 / 120) < 1e-12
    True
    """
    if not 0 < p1_hat <= 1:
        raise ValueError("p1_hat must lie in (0, 1]")
    c = float(c1.numeric()) if isinstance(c1, SymbolicValue) else float(c1)
    value = c / p1_hat
    return value, c * stderr / p1_hat ** 2

