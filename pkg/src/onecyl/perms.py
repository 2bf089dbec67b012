"""Permutations, cycle types, strata signatures and exterior-power characters.

Permutations are plain tuples ``p`` with ``p[i]`` the image of ``i``.  Cycle
types are tuples of positive integers sorted in decreasing order so that they
can be used as dictionary keys.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from math import factorial

__all__ = [
    "identity", "compose", "inverse", "cycles", "cycle_type", "sign",
    "conjugacy_class_size", "partitions", "exterior_characters",
    "Stratum", "parse_stratum", "StratumParseError", "several_components",
]


def identity(n):
    return tuple(range(n))


def compose(p, q):
    """Return ``p*q`` acting as ``i -> p[q[i]]``."""
    return tuple(p[j] for j in q)


def inverse(p):
    r = [0] * len(p)
    for i, j in enumerate(p):
        r[j] = i
    return tuple(r)


def cycles(p):
    """Return the cycles of ``p`` as lists, each starting at its minimum."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j)
                j = p[j]
            out.append(c)
    return out


def cycle_type(p):
    """Cycle type of ``p`` as a decreasing tuple.

    >>> cycle_type((1, 0, 3, 2))
    (2, 2)
    """
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def sign(p):
    return -1 if (len(p) - len(cycles(p))) % 2 else 1


def _check_type(n, t):
    t = tuple(sorted(t, reverse=True))
    if sum(t) != n or any(x <= 0 for x in t):
        raise ValueError(f"{t} is not a cycle type of a permutation of {n} points")
    return t


def conjugacy_class_size(n, t):
    """Number of permutations of ``n`` points with cycle type ``t``.

    >>> conjugacy_class_size(8, (2, 2, 2, 2))
    105
    """
    t = _check_type(n, t)
    denom = 1
    for length, mult in Counter(t).items():
        denom *= length ** mult * factorial(mult)
    return factorial(n) // denom


def partitions(n, max_part=None):
    """Partitions of ``n`` as decreasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def exterior_characters(n, t):
    """Characters of the exterior powers of the standard representation.

    Returns ``(chi_0, ..., chi_{n-1})`` where ``chi_j`` is the trace of a
    permutation of cycle type ``t`` on the ``j``-th exterior power of the
    ``(n-1)``-dimensional standard representation of the symmetric group.

    The traces on the exterior powers of the permutation representation are
    the coefficients of ``prod_cycles (1 - (-x)^l)``; the standard part is
    peeled off using ``Alt^j(C^n) = Alt^j(St) + Alt^(j-1)(St)``.

    >>> exterior_characters(4, (2, 2))
    (1, -1, -1, 1)
    """
    t = _check_type(n, t)
    coeffs = [1]
    for length in t:
        factor = [0] * (length + 1)
        factor[0] = 1
        factor[length] = -((-1) ** length)
        new = [0] * (len(coeffs) + length)
        for i, a in enumerate(coeffs):
            if a:
                for j, b in enumerate(factor):
                    if b:
                        new[i + j] += a * b
        coeffs = new
    chi = []
    prev = 0
    for j in range(n):
        prev = coeffs[j] - prev
        chi.append(prev)
    if coeffs[n] != chi[-1]:
        raise ArithmeticError("inconsistent exterior power decomposition")
    return tuple(chi)


class StratumParseError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured resource budget."""


_STRATUM_RE = re.compile(r"^([HQ])\((.*)\)$")


@dataclass(frozen=True)
class Stratum:
    """Signature of a stratum of Abelian (``H``) or quadratic (``Q``) differentials.

    ``orders`` is stored in decreasing order.  Abelian orders are ``>= 0``
    (0 stands for a marked point; ``H(0)`` is the torus); quadratic orders
    are ``>= -1``.
    """

    kind: str
    orders: tuple

    def __post_init__(self):
        if self.kind not in ("H", "Q"):
            raise ValueError(f"unknown kind {self.kind!r}")
        orders = tuple(sorted((int(x) for x in self.orders), reverse=True))
        object.__setattr__(self, "orders", orders)
        total = sum(orders)
        if self.kind == "H":
            if any(m < 0 for m in orders):
                raise ValueError("Abelian orders must be non-negative")
            if total % 2:
                raise ValueError(f"sum of orders {total} is odd")
        else:
            if any(m < -1 for m in orders):
                raise ValueError("quadratic orders must be >= -1")
            if total % 4:
                raise ValueError(f"sum of orders {total} is not 0 mod 4")

    @property
    def is_abelian(self):
        return self.kind == "H"

    @property
    def genus(self):
        total = sum(self.orders)
        return total // 2 + 1 if self.is_abelian else total // 4 + 1

    @property
    def dimension(self):
        g, k = self.genus, len(self.orders)
        return 2 * g + k - 1 if self.is_abelian else 2 * g + k - 2

    def multiplicities(self):
        """Map order -> multiplicity."""
        return dict(Counter(self.orders))

    @property
    def n(self):
        """Number of saddle connections of a 1-cylinder diagram (``d - 1``
        for Abelian strata, ``d`` for quadratic strata)."""
        return self.dimension - 1 if self.is_abelian else self.dimension

    def cycle_type(self):
        """Cycle type ``(m_1+1, ..., m_r+1)`` of an Abelian stratum."""
        if not self.is_abelian:
            raise ValueError("cycle type only defined for Abelian strata")
        return tuple(m + 1 for m in self.orders)

    def unmarked(self):
        """Drop marked points, keeping ``H(0)`` for the torus."""
        orders = tuple(m for m in self.orders if m != 0)
        if not orders and self.is_abelian:
            orders = (0,)
        return Stratum(self.kind, orders)

    def __str__(self):
        parts = []
        for order, mult in sorted(Counter(self.orders).items(), reverse=True):
            parts.append(str(order) if mult == 1 else f"{order}^{mult}")
        return f"{self.kind}({','.join(parts)})"

    __repr__ = __str__


def parse_stratum(text):
    """Parse ``H(3,1)``, ``H(1^4)``, ``Q(1^3,-1^3)`` and the like.

    >>> parse_stratum(" Q(1^3, -1^3) ").orders
    (1, 1, 1, -1, -1, -1)
    """
    if isinstance(text, Stratum):
        return text
    s = re.sub(r"\s+", "", str(text))
    m = _STRATUM_RE.match(s)
    if not m:
        raise StratumParseError(f"cannot parse stratum {text!r}")
    orders = []
    body = m.group(2)
    if body:
        for item in body.split(","):
            base, _, mult = item.partition("^")
            try:
                b = int(base)
                k = int(mult) if mult else 1
            except ValueError:
                raise StratumParseError(f"bad entry {item!r} in {text!r}") from None
            if k < 1:
                raise StratumParseError(f"bad multiplicity in {item!r}")
            orders.extend([b] * k)
    try:
        return Stratum(m.group(1), tuple(orders))
    except ValueError as exc:
        raise StratumParseError(str(exc)) from None


def abelian_strata(n):
    """Abelian strata (no marked points) whose 1-cylinder diagrams have
    ``n`` saddle connections, i.e. cycle types of even permutations of
    ``n`` points without fixed points."""
    out = []
    for t in partitions(n):
        if min(t) >= 2 and (n - len(t)) % 2 == 0:
            out.append(Stratum("H", tuple(x - 1 for x in t)))
    return out



_EXCEPTIONAL_QUADRATIC = {
    (9, -1), (6, 3, -1), (3, 3, 3, -1), (12,), (9, 3), (6, 6), (6, 3, 3), (3, 3, 3, 3),
}


def _hyperelliptic_family(orders, g):
    """Whether sorted quadratic ``orders`` belong to one of the four series
    of strata carrying a hyperelliptic component."""
    c = Counter(orders)
    for k in range(-1, g):
        a, b = 4 * (g - k) - 6, 2 * (g - k) - 3
        if k >= 0 and g - k >= 2 and c == Counter([a, 4 * k + 2]):
            return True
        if k >= 0 and g - k >= 1 and c == Counter([b, b, 4 * k + 2]):
            return True
        if g - k >= 2 and c == Counter([a, 2 * k + 1, 2 * k + 1]):
            return True
        if g - k >= 1 and c == Counter([b, b, 2 * k + 1, 2 * k + 1]):
            return True
    return False


def several_components(stratum):
    """Whether the stratum (marked points ignored) is known to have more
    than one connected component.

    Abelian strata split by hyperelliptic and spin components from genus
    three on; quadratic ones split along the hyperelliptic series from genus
    three on, in two genus-two cases, and in eight exceptional strata.

    >>> several_components("H(4)"), several_components("H(3,1)")
    (True, False)
    >>> several_components("Q(6,-1^2)"), several_components("Q(1^3,-1^3)")
    (True, False)
    """
    s = parse_stratum(stratum)
    orders = tuple(sorted((m for m in s.orders if m != 0), reverse=True))
    g = s.genus
    if s.is_abelian:
        if g <= 2:
            return False
        if all(m % 2 == 0 for m in orders):
            return True
        return len(orders) == 2 and orders[0] == orders[1] == g - 1
    if orders in {(6, -1, -1), (3, 3, -1, -1)} or orders in _EXCEPTIONAL_QUADRATIC:
        return True
    return g >= 3 and _hyperelliptic_family(orders, g)
