"""Truncated power series in z over an exact field.

A ``ZSeries`` of order N is known modulo z^N.  Coefficients can be any exact
field elements supporting + - * / (QRat, Fraction, Fp); the series keeps the
field's zero and one so it can build new values without inspecting types.
"""
from fractions import Fraction
from math import factorial

from .errors import InsufficientPrecision


class Fp:
    """Element of the prime field GF(p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        if isinstance(v, Fraction):
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = v % p
        self.p = p

    def _co(self, o):
        if isinstance(o, Fp):
            return o
        if isinstance(o, (int, Fraction)):
            return Fp(o, self.p)
        return NotImplemented

    def __add__(self, o):
        o = self._co(o)
        return Fp(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._co(o)
        return Fp(self.v - o.v, self.p)

    def __rsub__(self, o):
        return self._co(o) - self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __mul__(self, o):
        o = self._co(o)
        return Fp(self.v * o.v, self.p)

    __rmul__ = __mul__

    def inv(self):
        if not self.v:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        return self * self._co(o).inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def is_zero(self):
        return not self.v

    def __bool__(self):
        return bool(self.v)

    def __eq__(self, o):
        if isinstance(o, int):
            return self.v == o % self.p
        return isinstance(o, Fp) and o.p == self.p and o.v == self.v

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"Fp({self.v} mod {self.p})"


def _is_zero(x):
    return not x


class ZSeries:
    """Power series sum_{k<order} coeffs[k] z^k, exact modulo z^order."""

    __slots__ = ("coeffs", "order", "zero", "one", "known_valuation")

    def __init__(self, coeffs, order, zero, one, known_valuation=None):
        if order < 1:
            raise InsufficientPrecision("series truncation order fell below 1", order)
        c = list(coeffs)[:order]
        c += [zero] * (order - len(c))
        self.coeffs = c
        self.order = order
        self.zero = zero
        self.one = one
        self.known_valuation = known_valuation

    # constructors
    @classmethod
    def constant(cls, c, order, zero, one):
        return cls([c], order, zero, one)

    @classmethod
    def exp_linear(cls, k, order, zero, one):
        """exp(k z) truncated; k an integer."""
        return cls([one * Fraction(k ** n, factorial(n)) for n in range(order)], order, zero, one)

    def like(self, coeffs, order=None):
        return ZSeries(coeffs, self.order if order is None else order, self.zero, self.one)

    # queries
    def valuation(self):
        """First nonzero index below the truncation, or None if not certifiable."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        return None

    def is_zero_mod(self):
        return self.valuation() is None

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < self.order else self.zero

    # arithmetic
    def _co(self, o):
        if isinstance(o, ZSeries):
            return o
        return ZSeries([o], self.order, self.zero, self.one)

    def __add__(self, o):
        o = self._co(o)
        n = min(self.order, o.order)
        return ZSeries([a + b for a, b in zip(self.coeffs[:n], o.coeffs[:n])], n, self.zero, self.one)

    __radd__ = __add__

    def __neg__(self):
        return ZSeries([-a for a in self.coeffs], self.order, self.zero, self.one)

    def __sub__(self, o):
        o = self._co(o)
        n = min(self.order, o.order)
        return ZSeries([a - b for a, b in zip(self.coeffs[:n], o.coeffs[:n])], n, self.zero, self.one)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, ZSeries):
            return ZSeries([a * o for a in self.coeffs], self.order, self.zero, self.one)
        va, vb = self.valuation(), o.valuation()
        # precision of a product: min(Na + vb, Nb + va)
        n = min(self.order + (vb if vb is not None else o.order),
                o.order + (va if va is not None else self.order))
        n = min(n, max(self.order, o.order))
        out = [self.zero] * n
        a, b = self.coeffs, o.coeffs
        for i in range(min(n, len(a))):
            x = a[i]
            if _is_zero(x):
                continue
            for j in range(min(n - i, len(b))):
                y = b[j]
                if not _is_zero(y):
                    out[i + j] = out[i + j] + x * y
        return ZSeries(out, n, self.zero, self.one)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by z^k (k >= 0); the order grows by k."""
        return ZSeries([self.zero] * k + self.coeffs, self.order + k, self.zero, self.one)

    def unshift(self, k):
        """Divide by z^k; requires valuation >= k."""
        v = self.valuation()
        if v is not None and v < k:
            raise ValueError("series not divisible by the requested power of z")
        return ZSeries(self.coeffs[k:], self.order - k, self.zero, self.one)

    def inverse(self):
        c0 = self.coeffs[0]
        if _is_zero(c0):
            raise ZeroDivisionError("series with positive valuation is not a unit")
        n = self.order
        inv0 = self.one / c0
        out = [inv0] + [self.zero] * (n - 1)
        a = self.coeffs
        for k in range(1, n):
            s = self.zero
            for j in range(1, k + 1):
                if not _is_zero(a[j]):
                    s = s + a[j] * out[k - j]
            out[k] = -s * inv0
        return ZSeries(out, n, self.zero, self.one)

    def split_valuation(self):
        """Return (v, unit) with self = z^v * unit; unit known modulo z^(order-v)."""
        v = self.valuation()
        if v is None:
            raise InsufficientPrecision("series is zero modulo the truncation", self.order)
        return v, self.unshift(v)

    def truncate(self, n):
        return ZSeries(self.coeffs[:n], min(n, self.order), self.zero, self.one)

    def eval0(self):
        return self.coeffs[0]

    def __eq__(self, o):
        if not isinstance(o, ZSeries):
            return NotImplemented
        n = min(self.order, o.order)
        return all(a == b for a, b in zip(self.coeffs[:n], o.coeffs[:n]))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def to_json(self, coeff_str=str):
        return {"order": self.order, "coeffs": [coeff_str(c) for c in self.coeffs]}

    def __repr__(self):
        return f"ZSeries(order={self.order}, {self.coeffs!r})"


def series_field_for(sample):
    """(zero, one) of the field an element belongs to."""
    if isinstance(sample, Fp):
        return Fp(0, sample.p), Fp(1, sample.p)
    if isinstance(sample, Fraction) or isinstance(sample, int):
        return Fraction(0), Fraction(1)
    from .qrat import QRat
    if isinstance(sample, QRat):
        return QRat.const(0), QRat.const(1)
    raise TypeError(f"unsupported coefficient type {type(sample)!r}")
