"""Generating functions for one-cylinder gluings.

Polynomials are in the variables ``t_1, t_2, ...`` (Abelian case, ``t_i``
marks a vertex of degree ``2i``, i.e. a zero of order ``i-1``) or
``p_1, p_2, ...`` (quadratic case, ``p_i`` marks a vertex of degree ``i``,
i.e. a singularity of order ``i-2``).

>>> print(abelian_F(4))
t1^4 + 4 t1 t3 + t2^2
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .perms import Stratum, parse_stratum

__all__ = [
    "PartitionPolynomial", "apply_M1", "apply_M2", "abelian_F", "abelian_F_by_recursion",
    "quadratic_G", "quadratic_F", "weighted_from_rooted", "abelian_coefficient",
    "quadratic_coefficient",
]


def _trim(e):
    e = list(e)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def _bump(e, i, d):
    """Exponent vector ``e`` with the exponent of variable ``i`` (1-based)
    changed by ``d``."""
    e = list(e)
    if len(e) < i:
        e.extend([0] * (i - len(e)))
    e[i - 1] += d
    return _trim(e)


def _exp(e, i):
    return e[i - 1] if i <= len(e) else 0


class PartitionPolynomial:
    """Sparse polynomial with exact rational coefficients.

    Keys are trimmed exponent vectors ``(e_1, e_2, ...)``; zero coefficients
    are never stored.
    """

    def __init__(self, terms=None, var="t"):
        self.var = var
        self.terms = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                k = _trim(e)
                self.terms[k] = self.terms.get(k, 0) + c
                if not self.terms[k]:
                    del self.terms[k]

    @classmethod
    def monomial(cls, powers, coeff=1, var="t"):
        """``powers`` maps variable index to exponent."""
        e = ()
        for i, k in powers.items():
            e = _bump(e, i, k)
        return cls({e: coeff}, var)

    def __getitem__(self, powers):
        """Coefficient of a monomial given as ``{index: exponent}``."""
        e = ()
        for i, k in dict(powers).items():
            e = _bump(e, i, k)
        return self.terms.get(e, Fraction(0))

    def weights(self):
        return {sum(i * x for i, x in enumerate(e, start=1)) for e in self.terms}

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return PartitionPolynomial(out, self.var)

    def __mul__(self, other):
        if not isinstance(other, PartitionPolynomial):
            return PartitionPolynomial({e: c * Fraction(other) for e, c in self.terms.items()}, self.var)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                n = max(len(e1), len(e2))
                e = tuple((e1[i] if i < len(e1) else 0) + (e2[i] if i < len(e2) else 0) for i in range(n))
                out[e] = out.get(e, 0) + c1 * c2
        return PartitionPolynomial(out, self.var)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PartitionPolynomial) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def derivative(self, i):
        out = {}
        for e, c in self.terms.items():
            k = _exp(e, i)
            if k:
                f = _bump(e, i, -1)
                out[f] = out.get(f, 0) + c * k
        return PartitionPolynomial(out, self.var)

    def _key(self, e):
        return (-sum(e), tuple(-x for x in e))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=self._key):
            c = self.terms[e]
            mono = " ".join(f"{self.var}{i}" + (f"^{k}" if k > 1 else "")
                            for i, k in enumerate(e, start=1) if k)
            if c == 1 and mono:
                s = mono
            elif mono:
                s = f"{c} {mono}"
            else:
                s = str(c)
            parts.append(s)
        return " + ".join(parts)

    __repr__ = __str__

    def lines(self):
        """One ``coeff * t1^a t3^b`` line per monomial."""
        out = []
        for e in sorted(self.terms, key=self._key):
            mono = " ".join(f"{self.var}{i}^{k}" for i, k in enumerate(e, start=1) if k)
            out.append(f"{self.terms[e]} * {mono}")
        return out

    def to_json(self):
        return [{"coeff": str(c),
                 "monomial": " ".join(f"{self.var}{i}" + (f"^{k}" if k > 1 else "")
                                      for i, k in enumerate(e, start=1) if k),
                 "exponents": {str(i): k for i, k in enumerate(e, start=1) if k}}
                for e, c in ((e, self.terms[e]) for e in sorted(self.terms, key=self._key))]


def _apply(f, shift):
    """Apply ``sum (i-shift) x_j x_{i-j} d/dx_{i-shift}
    + j(i-j) x_{i+shift} d^2/dx_j dx_{i-j}`` (shift 1 gives M1, 2 gives M2)."""
    out = {}

    def add(e, c):
        out[e] = out.get(e, 0) + c

    for e, c in f.terms.items():
        # first term: remove x_a, insert x_j x_{a+shift-j}
        for a in range(1, len(e) + 1):
            k = e[a - 1]
            if not k:
                continue
            base = _bump(e, a, -1)
            i = a + shift
            for j in range(1, i):
                g = _bump(_bump(base, j, 1), i - j, 1)
                add(g, c * a * k)
        # second term: remove x_j x_k (ordered), insert x_{j+k+shift}
        for j in range(1, len(e) + 1):
            kj = e[j - 1]
            if not kj:
                continue
            e1 = _bump(e, j, -1)
            for k in range(1, len(e1) + 1):
                kk = e1[k - 1]
                if not kk:
                    continue
                g = _bump(_bump(e1, k, -1), j + k + shift, 1)
                add(g, c * j * k * kj * kk)
    return PartitionPolynomial(out, f.var)


def apply_M1(f):
    """Apply the operator ``M1``.

    >>> print(apply_M1(PartitionPolynomial.monomial({1: 1})))
    t1^2
    """
    return _apply(f, 1)


def apply_M2(f):
    return _apply(f, 2)


@lru_cache(maxsize=None)
def abelian_F(n):
    """Rooted generating polynomial ``F_n``: ``F_1 = t1`` and
    ``(n-1) F_n = M1 F_{n-1}``.

    >>> print(abelian_F(5))
    t1^5 + 10 t1^2 t3 + 5 t1 t2^2 + 8 t5
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return PartitionPolynomial.monomial({1: 1})
    f = apply_M1(abelian_F(n - 1)) * Fraction(1, n - 1)
    if f.weights() != {n}:
        raise ArithmeticError("F_n is not homogeneous of weight n")
    return f


def abelian_F_by_recursion(n):
    """``F_n`` computed coefficient by coefficient from the pull form of the
    recursion: ``N_n(nu)`` is read off from ``N_{n-1}`` at the two kinds of
    neighbouring partitions."""
    from .perms import partitions

    prev = {(1,): Fraction(1)}
    for size in range(2, n + 1):
        cur = {}
        for part in partitions(size):
            cnt = Counter(part)
            v = lambda i: cnt.get(i, 0)  # noqa: E731
            total = Fraction(0)
            for i in range(2, size + 2):
                for j in range(1, i):
                    # nu - e_j - e_{i-j} + e_{i-1}
                    c2 = Counter(cnt)
                    c2[j] -= 1
                    c2[i - j] -= 1
                    if i - 1 >= 1:
                        c2[i - 1] += 1
                    if all(x >= 0 for x in c2.values()):
                        key = _trim([c2.get(a, 0) for a in range(1, size + 1)])
                        if key in prev:
                            mult = v(i - 1) + 1 - (j == 1) - (i - j == 1)
                            total += (i - 1) * mult * prev[key]
                    # nu + e_j + e_{i-j} - e_{i+1}
                    if v(i + 1) >= 1:
                        c3 = Counter(cnt)
                        c3[j] += 1
                        c3[i - j] += 1
                        c3[i + 1] -= 1
                        key = _trim([c3.get(a, 0) for a in range(1, size + 1)])
                        if key in prev:
                            mult = (v(j) + 1) * (v(i - j) + 1 + (j == i - j))
                            total += j * (i - j) * mult * prev[key]
            if total:
                key = _trim([cnt.get(a, 0) for a in range(1, size + 1)])
                cur[key] = total / (size - 1)
        prev = cur
    return PartitionPolynomial(prev)


@lru_cache(maxsize=None)
def quadratic_G(n):
    """One-vertex gluing polynomial ``G_n`` (weight ``2n``):
    ``2 G_1 = p1^2`` and ``2n G_n = M2 G_{n-1}``.

    >>> print(quadratic_G(1))
    1/2 p1^2
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return PartitionPolynomial.monomial({1: 2}, Fraction(1, 2), var="p")
    g = apply_M2(quadratic_G(n - 1)) * Fraction(1, 2 * n)
    if g.weights() != {2 * n}:
        raise ArithmeticError("G_n is not homogeneous of weight 2n")
    return g


def _p(i):
    return PartitionPolynomial.monomial({i: 1}, var="p")


def _derivs(g, order):
    """Map from index tuples to non-zero partial derivatives."""
    out = {(): g}
    for _ in range(order):
        nxt = {}
        for idx, f in out.items():
            for e in f.terms:
                for i, k in enumerate(e, start=1):
                    if k and idx + (i,) not in nxt:
                        d = f.derivative(i)
                        if d:
                            nxt[idx + (i,)] = d
        out = nxt
    return out


@lru_cache(maxsize=None)
def quadratic_F(l, m, n):
    """Two-vertex gluing polynomial ``F_{l,m,n}`` for ``l`` in 0, 1, 2.

    >>> quadratic_F(0, 3, 3)[{1: 3, 3: 3}]
    Fraction(1, 9)
    """
    if l not in (0, 1, 2):
        raise NotImplementedError("closed formulas exist only for l <= 2")
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    gm, gn = quadratic_G(m), quadratic_G(n)
    zero = PartitionPolynomial({}, var="p")
    if l == 0:
        out = gm * gn
    elif l == 1:
        out = zero
        dm, dn = _derivs(gm, 1), _derivs(gn, 1)
        for (i,), a in dm.items():
            for (j,), b in dn.items():
                out = out + (a * b * _p(i + j + 2)) * (i * j)
    else:
        out = zero
        d1m, d1n = _derivs(gm, 1), _derivs(gn, 1)
        d2m, d2n = _derivs(gm, 2), _derivs(gn, 2)
        # two components of each side joined pairwise
        for (i, j), a in d2m.items():
            for (k, ll), b in d2n.items():
                out = out + (a * b * _p(i + k + 2) * _p(j + ll + 2)) * Fraction(i * j * k * ll, 2)
        # two components on one side joined to a single one on the other;
        # ordered index pairs count every configuration twice, hence 1/2
        for (i, j), a in d2m.items():
            for (k,), b in d1n.items():
                out = out + (a * b * _p(i + j + k + 4)) * Fraction(i * j * k * (k + 1), 2)
        for (k,), a in d1m.items():
            for (i, j), b in d2n.items():
                out = out + (a * b * _p(i + j + k + 4)) * Fraction(i * j * k * (k + 1), 2)
        # one component on each side joined by both edges; the double sum
        # over the two cut positions sees each pair of edges twice
        for (i,), a in d1m.items():
            for (j,), b in d1n.items():
                inner = zero
                for k in range(i + 1):
                    for ll in range(j + 1):
                        inner = inner + _p(k + ll + 2) * _p(i + j + 2 - k - ll)
                out = out + (a * b * inner) * Fraction(i * j, 2)
    if out and out.weights() != {2 * (l + m + n)}:
        raise ArithmeticError("F_{l,m,n} is not homogeneous")
    return out


def weighted_from_rooted(kind, coefficient, n=None, m=None, nn=None):
    """Convert a generating-function coefficient into a weighted diagram count.

    Abelian (``kind='H'``): divide the rooted count by ``n``.  Quadratic
    (``kind='Q'``): halve when ``m == nn``.

    >>> weighted_from_rooted("H", 1, n=3)
    Fraction(1, 3)
    >>> weighted_from_rooted("Q", Fraction(1, 9), m=3, nn=3)
    Fraction(1, 18)
    """
    c = Fraction(coefficient)
    if kind == "H":
        return c / n
    if kind == "Q":
        return c / 2 if m == nn else c
    raise ValueError(kind)


def abelian_coefficient(stratum):
    """Weighted one-cylinder count of an Abelian stratum read off ``F_n``
    (orders ``0`` count as marked points, variable ``t1``)."""
    s = parse_stratum(stratum)
    if not s.is_abelian:
        raise ValueError("Abelian stratum expected")
    powers = Counter(m + 1 for m in s.orders)
    n = sum(m + 1 for m in s.orders)
    return weighted_from_rooted("H", abelian_F(n)[powers], n=n)


def quadratic_coefficient(stratum, l, m, n):
    """Weighted count of ``(l, m, n)`` one-cylinder diagrams of a quadratic
    stratum (``m`` and ``n`` unordered)."""
    s = parse_stratum(stratum)
    if s.is_abelian:
        raise ValueError("quadratic stratum expected")
    powers = Counter(d + 2 for d in s.orders)
    return weighted_from_rooted("Q", quadratic_F(l, m, n)[powers], m=m, nn=n)
