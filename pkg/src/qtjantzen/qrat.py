"""Univariate polynomials and rational functions over the rationals.

``QPoly`` stores coefficients lowest degree first as Fractions.  ``QRat`` keeps
numerator and denominator coprime with a monic denominator, so equality is
structural.
"""
from fractions import Fraction


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


class QPoly:
    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _trim(Fraction(x) for x in coeffs)

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj.c = c
        return obj

    @classmethod
    def monomial(cls, k, coeff=1):
        return cls._raw(tuple([Fraction(0)] * k + [Fraction(coeff)])) if coeff else cls._raw(())

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1]

    def __add__(self, o):
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return QPoly._raw(_trim(out))

    def __neg__(self):
        return QPoly._raw(tuple(-x for x in self.c))

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return QPoly._raw(_trim(x * o for x in self.c))
        a, b = self.c, o.c
        if not a or not b:
            return QPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly._raw(_trim(out))

    def divmod(self, o):
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dq = len(r) - len(o.c)
        if dq < 0:
            return QPoly._raw(()), self
        q = [Fraction(0)] * (dq + 1)
        inv = 1 / o.c[-1]
        for k in range(dq, -1, -1):
            f = r[k + len(o.c) - 1] * inv
            q[k] = f
            if f:
                for j, y in enumerate(o.c):
                    r[k + j] -= f * y
        return QPoly._raw(_trim(q)), QPoly._raw(_trim(r[: len(o.c) - 1]))

    def monic(self):
        if not self.c:
            return self
        inv = 1 / self.c[-1]
        return QPoly._raw(tuple(x * inv for x in self.c))

    @staticmethod
    def gcd(a, b):
        while b.c:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x):
        acc = 0
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def __eq__(self, o):
        return isinstance(o, QPoly) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"QPoly({[str(x) for x in self.c]})"


_ONE_POLY = QPoly._raw((Fraction(1),))


class QRat:
    """Element of Q(x); the variable name is only used for printing."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, QPoly):
            num = QPoly([num]) if isinstance(num, (int, Fraction)) else QPoly(num)
        if den is None:
            den = _ONE_POLY
        elif not isinstance(den, QPoly):
            den = QPoly([den]) if isinstance(den, (int, Fraction)) else QPoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, _ONE_POLY
            return
        if den.degree > 0:
            g = QPoly.gcd(num, den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        lc = den.lead()
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls._raw(QPoly._raw((c,) if c else ()), _ONE_POLY)

    @classmethod
    def power(cls, k, coeff=1):
        """coeff * x^k for any integer k."""
        if k >= 0:
            return cls._raw(QPoly.monomial(k, coeff), _ONE_POLY)
        return cls._raw(QPoly.monomial(0, coeff), QPoly.monomial(-k))

    @classmethod
    def laurent(cls, coeffs):
        """From a mapping exponent -> coefficient with integer exponents."""
        if not coeffs:
            return cls.const(0)
        lo = min(min(coeffs), 0)
        c = [Fraction(0)] * (max(coeffs) - lo + 1)
        for k, v in coeffs.items():
            c[k - lo] += Fraction(v)
        return cls(QPoly(c), QPoly.monomial(-lo))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _co(self, o):
        if isinstance(o, QRat):
            return o
        if isinstance(o, (int, Fraction)):
            return QRat.const(o)
        return NotImplemented

    def __add__(self, o):
        o = self._co(o)
        if o is NotImplemented:
            return o
        if not o.num.c:
            return self
        if not self.num.c:
            return o
        if self.den == o.den:
            return QRat(self.num + o.num, self.den)
        return QRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QRat._raw(-self.num, self.den)

    def __sub__(self, o):
        o = self._co(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._co(o)
        if o is NotImplemented:
            return o
        if not self.num.c or not o.num.c:
            return QRat.const(0)
        if o.den.degree == 0 and self.den.degree == 0:
            return QRat._raw(self.num * o.num, _ONE_POLY)
        return QRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self):
        if not self.num.c:
            raise ZeroDivisionError("QRat inverse of zero")
        return QRat(self.den, self.num)

    def __truediv__(self, o):
        o = self._co(o)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, o):
        return self._co(o) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = QRat.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        """x -> 1/x substitution."""
        def flip(p):
            # p(1/x) = x^-deg * reversed(p)
            return QPoly._raw(_trim(reversed(p.c))), p.degree
        n, dn = flip(self.num)
        d, dd = flip(self.den)
        shift = dd - dn
        if shift >= 0:
            n = n * QPoly.monomial(shift)
        else:
            d = d * QPoly.monomial(-shift)
        return QRat(n, d)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def valuation_at_zero(self):
        """Order of vanishing at x = 0 (negative for poles)."""
        if not self.num.c:
            return None

        def low(p):
            return next(i for i, v in enumerate(p.c) if v)
        return low(self.num) - low(self.den)

    def is_laurent(self):
        """Denominator is a power of the variable."""
        d = self.den.c
        return all(not v for v in d[:-1])

    def to_laurent(self):
        """Mapping exponent -> Fraction, for elements with monomial denominator."""
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial")
        s = self.den.degree
        return {i - s: v for i, v in enumerate(self.num.c) if v}

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = QRat.const(o)
        if not isinstance(o, QRat):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def to_str(self, var="q"):
        def ps(p):
            terms = []
            for i, v in enumerate(p.c):
                if not v:
                    continue
                mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
                if not mono:
                    terms.append(str(v))
                elif v == 1:
                    terms.append(mono)
                elif v == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{v}*{mono}")
            return " + ".join(terms).replace("+ -", "- ") or "0"
        if self.den.degree == 0:
            return ps(self.num)
        return f"({ps(self.num)})/({ps(self.den)})"

    def __repr__(self):
        return f"QRat({self.to_str()})"
