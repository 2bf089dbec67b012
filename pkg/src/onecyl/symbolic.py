"""Exact values of the form ``sum r * zeta(k_1) ... zeta(k_j) * pi^m``.

>>> v = SymbolicValue.zeta(4, Fraction(1, 3))
>>> print(v)
1/3 * zeta(4)
>>> print(v.normalized())
1/270 * pi^4
>>> v.normalized() == v
True
"""
from __future__ import annotations

from fractions import Fraction

import mpmath

from .zeta import zeta_even_coefficient, zeta_numeric

__all__ = ["SymbolicValue"]


class SymbolicValue:
    """Finite sum of rational multiples of products of zeta values and a
    power of ``pi``.  Terms are keyed by ``(sorted zeta arguments, pi power)``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for (zs, pw), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = (tuple(sorted(zs)), int(pw))
                self.terms[key] = self.terms.get(key, 0) + c
                if not self.terms[key]:
                    del self.terms[key]

    @classmethod
    def rational(cls, r):
        return cls({((), 0): r})

    @classmethod
    def zeta(cls, k, coeff=1):
        if k < 2:
            raise ValueError("zeta(k) needs k >= 2")
        return cls({((k,), 0): coeff})

    @classmethod
    def pi(cls, power, coeff=1):
        return cls({((), power): coeff})

    # ring structure ----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return SymbolicValue(out)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicValue({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for (z1, p1), c1 in self.terms.items():
            for (z2, p2), c2 in other.terms.items():
                key = (tuple(sorted(z1 + z2)), p1 + p2)
                out[key] = out.get(key, 0) + c1 * c2
        return SymbolicValue(out)

    __rmul__ = __mul__

    def __truediv__(self, r):
        r = Fraction(r)
        return SymbolicValue({k: c / r for k, c in self.terms.items()})

    def normalized(self):
        """Replace every ``zeta(2k)`` by its rational multiple of ``pi^(2k)``."""
        out = {}
        for (zs, pw), c in self.terms.items():
            keep = []
            for z in zs:
                if z % 2 == 0:
                    c *= zeta_even_coefficient(z)
                    pw += z
                else:
                    keep.append(z)
            key = (tuple(keep), pw)
            out[key] = out.get(key, 0) + c
        return SymbolicValue(out)

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.normalized().terms == other.normalized().terms

    def __hash__(self):
        return hash(frozenset(self.normalized().terms.items()))

    def __bool__(self):
        return bool(self.normalized().terms)

    # views --------------------------------------------------------------
    def as_zeta_multiple(self):
        """``(r, d)`` when the value is ``r * zeta(d)``."""
        if not self.terms:
            return Fraction(0), None
        if len(self.terms) == 1:
            (zs, pw), c = next(iter(self.terms.items()))
            if len(zs) == 1 and pw == 0:
                return c, zs[0]
        raise ValueError(f"{self} is not a rational multiple of a single zeta value")

    def as_pi_multiple(self):
        """``(r, m)`` when the normalized value is ``r * pi^m``."""
        n = self.normalized()
        if len(n.terms) == 1:
            (zs, pw), c = next(iter(n.terms.items()))
            if not zs:
                return c, pw
        raise ValueError(f"{self} is not a rational multiple of a power of pi")

    def numeric(self, precision=1e-15):
        """Numerical value as an ``mpmath.mpf``."""
        total = mpmath.mpf(0)
        for (zs, pw), c in self.terms.items():
            t = mpmath.mpf(c.numerator) / c.denominator * mpmath.pi ** pw
            for z in zs:
                t *= zeta_numeric(z, precision)
            total += t
        return total

    def __float__(self):
        return float(self.numeric())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (zs, pw), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            factors = [f"zeta({z})" for z in zs]
            if pw:
                factors.append("pi" if pw == 1 else f"pi^{pw}")
            if not factors:
                parts.append(str(c))
            else:
                parts.append(f"{c} * " + " * ".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"SymbolicValue('{self}')"

    def to_json(self):
        return [{"num": str(c.numerator), "den": str(c.denominator),
                 "zeta": list(zs), "pi": pw}
                for (zs, pw), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    @classmethod
    def from_json(cls, data):
        return cls({(tuple(t["zeta"]), t["pi"]): Fraction(int(t["num"]), int(t["den"])) for t in data})


def _coerce(x):
    if isinstance(x, SymbolicValue):
        return x
    if isinstance(x, (int, Fraction)):
        return SymbolicValue.rational(x)
    raise TypeError(f"cannot combine SymbolicValue with {type(x).__name__}")
