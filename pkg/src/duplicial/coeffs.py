"""Exact coefficients: rationals and polynomials in a formal marker ``w``.

Rationals are plain ``int`` or :class:`fractions.Fraction` values.  Polynomials
are :class:`Poly` instances, which interoperate with both.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

_INT64 = 2**63


def canonical(c):
    """Return ``c`` in canonical form (integral fractions become ``int``)."""
    if isinstance(c, Poly):
        return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    if isinstance(c, (int, Fraction)):
        return c
    if isinstance(c, Rational):
        return canonical(Fraction(c))
    raise TypeError(f"not an exact coefficient: {c!r}")


class Poly:
    """Polynomial in ``w`` with rational coefficients, lowest degree first.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [canonical(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs):
        while cs and cs[-1] == 0:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant(self):
        return self.coeffs[0] if self.coeffs else 0

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return canonical(acc) if isinstance(acc, (int, Fraction)) else acc

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.coeffs == ((other,) if other != 0 else ())
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant())
        return hash(self.coeffs)

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            cs = list(a)
            for i, c in enumerate(b):
                cs[i] += c
            return Poly._raw(cs)
        if isinstance(other, Rational):
            cs = list(self.coeffs) or [0]
            cs[0] += other
            return Poly._raw(cs)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly._raw([])
            cs = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    cs[i + j] += x * y
            return Poly._raw(cs)
        if isinstance(other, Rational):
            return Poly._raw([c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


W = Poly((0, 1))


def specialize(c, value):
    """Substitute ``w := value`` in a coefficient; rationals pass through."""
    if isinstance(c, Poly):
        return c(value)
    return c


def _num_out(k):
    return k if -_INT64 <= k < _INT64 else str(k)


def coeff_to_json(c):
    """Encode as ``{"poly": [[num, den], ...]}`` indexed by w-degree."""
    cs = c.coeffs if isinstance(c, Poly) else ((c,) if c != 0 else ())
    out = []
    for x in cs:
        x = Fraction(x)
        out.append([_num_out(x.numerator), _num_out(x.denominator)])
    return {"poly": out}


def coeff_from_json(obj):
    """Inverse of :func:`coeff_to_json`; constants decode to rationals."""
    cs = []
    for num, den in obj["poly"]:
        den = int(den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        cs.append(canonical(Fraction(int(num), den)))
    p = Poly(cs)
    return p.constant() if p.is_constant() else p
