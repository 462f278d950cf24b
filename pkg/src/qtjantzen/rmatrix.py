"""Intertwiners between tensor products of two sl2 fundamental modules.

Entries are rational functions in (q, u), stored as numerator and
denominator polynomials in u whose coefficients lie in Q(q).  Source basis
(a+b+, a+b-, a-b+, a-b-), target basis (b+a+, b+a-, b-a+, b-a-).
"""
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import ValidationError
from .qrat import QRat
from .series import Fp, ZSeries


def _q(k, c=1):
    return QRat.power(k, c)


class UQEntry:
    """num(u)/den(u) with coefficient dicts {power of u: QRat in q}."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = {k: v for k, v in num.items() if v}
        self.den = {k: v for k, v in (den or {0: QRat.const(1)}).items() if v}

    @classmethod
    def const(cls, c):
        return cls({0: QRat.const(c)})

    def at(self, q, u):
        """Exact evaluation at rational values of q and u."""
        def ev(poly):
            return sum((c(q) * Fraction(u) ** k for k, c in poly.items()), Fraction(0))
        d = ev(self.den)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return ev(self.num) / d

    def is_zero(self):
        return not self.num

    def __repr__(self):
        def ps(p):
            return " + ".join(f"({c.to_str('q')})u^{k}" for k, c in sorted(p.items())) or "0"
        return f"[{ps(self.num)}] / [{ps(self.den)}]"


def pole_order(a, b):
    return 1 if b - a == 2 else 0


def t_matrix(a, b):
    """The intertwiner T(u) : L(Y_{1,a}) (x) L(Y_{1,b}) -> L(Y_{1,b}) (x) L(Y_{1,a})."""
    if a % 2 or b % 2:
        raise ValidationError("spectral shifts must be even for the sl2 parity")
    c = b - a - 2
    den = {1: QRat.const(1), 0: -_q(c)}
    one = QRat.const(1)
    z = UQEntry({})
    T = [[z] * 4 for _ in range(4)]
    T[0][0] = UQEntry.const(1)
    T[3][3] = UQEntry.const(1)
    T[1][1] = UQEntry({1: one - _q(-2)}, den)
    T[1][2] = UQEntry({1: _q(-1), 0: -_q(c + 1)}, den)
    T[2][1] = UQEntry({1: _q(-1), 0: -_q(c + 1)}, den)
    T[2][2] = UQEntry({0: _q(c + 2) - _q(c)}, den)
    return T


def renorm_entries(a, b):
    """(u-1)^o T(u) with the pole cancelled, o the pole order."""
    T = t_matrix(a, b)
    if not pole_order(a, b):
        return T
    one = QRat.const(1)
    out = [[UQEntry(e.num) if e.num else e for e in row] for row in T]
    out[0][0] = UQEntry({1: one, 0: -one})
    out[3][3] = UQEntry({1: one, 0: -one})
    return out


def delta(a, b):
    """Eigenvalue delta(u) on the third vector of the diagonalizing bases."""
    c = b - a - 2
    return UQEntry({0: _q(b - a), 1: -_q(-2)}, {1: QRat.const(1), 0: -_q(c)})


# --- series specialization u = exp(k z) --------------------------------------

class QField:
    """Exact coefficients in Q(q)."""

    name = "exact"

    def __init__(self):
        self.zero = QRat.const(0)
        self.one = QRat.const(1)

    def coeff(self, c):
        return c

    def frac(self, f):
        return QRat.const(f)

    def key(self):
        return ("exact",)


class RationalField:
    """Exact rational coefficients with q specialised to a rational q0."""

    name = "rational"

    def __init__(self, q0=Fraction(2)):
        self.q0 = Fraction(q0)
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coeff(self, c):
        return c(self.q0)

    def frac(self, f):
        return Fraction(f)

    def key(self):
        return ("rational", self.q0)


class FpField:
    """Coefficients in GF(p) with q specialized to q0."""

    name = "modp"

    def __init__(self, p, q0):
        self.p = p
        self.q0 = q0
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def _poly(self, poly):
        acc = 0
        for c in reversed(poly.c):
            acc = (acc * self.q0 + c.numerator * pow(c.denominator, -1, self.p)) % self.p
        return acc

    def coeff(self, c):
        den = self._poly(c.den)
        if not den:
            raise ZeroDivisionError("q0 is a pole of a coefficient")
        return Fp(self._poly(c.num) * pow(den, -1, self.p), self.p)

    def frac(self, f):
        return Fp(Fraction(f), self.p)

    def key(self):
        return ("modp", self.p, self.q0)


def _upoly_series(poly, k, order, field):
    coeffs = [field.zero] * order
    for j, c in poly.items():
        cc = field.coeff(c)
        x = j * k
        for n in range(order):
            coeffs[n] = coeffs[n] + cc * field.frac(Fraction(x ** n, factorial(n)))
    return ZSeries(coeffs, order, field.zero, field.one)


def entry_series(entry, k, order, field):
    if entry.is_zero():
        return ZSeries([], order, field.zero, field.one)
    num = _upoly_series(entry.num, k, order, field)
    den = _upoly_series(entry.den, k, order, field)
    return num * den.inverse()


@lru_cache(maxsize=4096)
def _renorm_cached(j, j2, order, fkey, field_obj):
    a, b = j - 1, j2 - 1
    ents = renorm_entries(a, b)
    return tuple(tuple(entry_series(e, j - j2, order, field_obj) for e in row) for row in ents)


def renorm_r(j, j2, order, field=None):
    """Renormalized R-matrix R_{j,j2} at u = exp((j - j2) z) as a 4x4 matrix of series."""
    if j % 2 == 0 or j2 % 2 == 0:
        raise ValidationError("indices of sl2 fundamentals are odd")
    if j == j2:
        raise ValidationError("R_{j,j} is not used")
    field = field or QField()
    return [list(r) for r in _renorm_cached(j, j2, order, field.key(), _FieldBox(field))]


class _FieldBox:
    """Hashable wrapper so field objects can travel through lru_cache."""

    __slots__ = ("f",)

    def __init__(self, f):
        self.f = f

    def __hash__(self):
        return hash(self.f.key())

    def __eq__(self, o):
        return self.f.key() == o.f.key()

    def coeff(self, c):
        return self.f.coeff(c)

    def frac(self, x):
        return self.f.frac(x)

    @property
    def zero(self):
        return self.f.zero

    @property
    def one(self):
        return self.f.one
