"""Integer Laurent polynomials in t^(1/2).

Exponents are stored doubled: the key ``k`` stands for t^(k/2).
"""
from fractions import Fraction
import json
import re


class LaurentHalf:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    c[int(k)] = int(v)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, n):
        return cls._raw({0: int(n)} if n else {})

    @classmethod
    def t(cls, e=1, coeff=1):
        """coeff * t^e, e an integer or a half-integer."""
        d = Fraction(e) * 2
        if d.denominator != 1:
            raise ValueError(f"exponent {e} is not a half-integer")
        return cls._raw({int(d): int(coeff)} if coeff else {})

    @classmethod
    def from_poly(cls, coeffs, var_exp=1):
        """sum coeffs[i] t^(i*var_exp) for a list of coefficients."""
        return cls({2 * i * var_exp: c for i, c in enumerate(coeffs)})

    # basic access
    def items(self):
        return sorted(self._c.items())

    def doubled_exponents(self):
        return sorted(self._c)

    def coeff(self, e):
        """Coefficient of t^e (e integer or half-integer)."""
        return self._c.get(int(Fraction(e) * 2), 0)

    def coeff2(self, k):
        return self._c.get(k, 0)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, LaurentHalf):
            return other
        if isinstance(other, int):
            return LaurentHalf.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return LaurentHalf._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentHalf._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentHalf._raw({})
            return LaurentHalf._raw({k: v * other for k, v in self._c.items()})
        if not isinstance(other, LaurentHalf):
            return NotImplemented
        c = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                c[k] = c.get(k, 0) + v1 * v2
        return LaurentHalf._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible")
            (k, v), = self._c.items()
            if v not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentHalf._raw({-k * (-n): v ** (-n)})
        out = LaurentHalf.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift2(self, k):
        """Multiply by t^(k/2)."""
        if not k:
            return self
        return LaurentHalf._raw({e + k: v for e, v in self._c.items()})

    def shift(self, e):
        return self.shift2(int(Fraction(e) * 2))

    def bar(self):
        return LaurentHalf._raw({-k: v for k, v in self._c.items()})

    def ev1(self):
        return sum(self._c.values())

    def at(self, t):
        """Numeric evaluation; t is interpreted as the value of t^(1/2) squared."""
        return sum(v * Fraction(t) ** Fraction(k, 2) for k, v in self._c.items())

    # predicates used by the property suites
    def is_integral(self):
        """All exponents are integers (no odd doubled exponent)."""
        return all(k % 2 == 0 for k in self._c)

    def is_nonnegative(self):
        return all(v > 0 for v in self._c.values())

    def in_t_nat_t(self):
        """Element of t*N[t]."""
        return all(k > 0 and k % 2 == 0 and v > 0 for k, v in self._c.items())

    def in_t_z_t(self):
        return all(k > 0 and k % 2 == 0 for k in self._c)

    def positive_part(self):
        return LaurentHalf._raw({k: v for k, v in self._c.items() if k > 0})

    def min_exp2(self):
        return min(self._c) if self._c else None

    def max_exp2(self):
        return max(self._c) if self._c else None

    # comparison and hashing
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentHalf.const(other)
        if not isinstance(other, LaurentHalf):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # serialization
    def to_json(self):
        return {str(k): str(v) for k, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data):
        return cls({int(k): int(v) for k, v in data.items()})

    def __repr__(self):
        return f"LaurentHalf({json.dumps(self.to_json())})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items()):
            if k == 0:
                mono = ""
            elif k == 2:
                mono = "t"
            elif k % 2 == 0:
                mono = f"t^{k // 2}"
            else:
                mono = f"t^({k}/2)"
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    @classmethod
    def parse(cls, text):
        """Parse strings such as '1 + 2*t^3 - t^(-1/2)'."""
        text = text.replace(" ", "")
        if not text or text == "0":
            return cls()
        text = re.sub(r"(?<=[^\^(e])-", "+-", text)
        out = cls()
        for term in text.split("+"):
            if not term:
                continue
            m = re.fullmatch(r"(-?\d*)\*?(t(?:\^(?:\((-?\d+)/2\)|(-?\d+)))?)?", term)
            if not m:
                raise ValueError(f"cannot parse Laurent term {term!r}")
            cs, tpart, half, whole = m.groups()
            if cs in ("", "-"):
                coeff = -1 if cs == "-" else 1
                if not tpart:
                    raise ValueError(f"cannot parse Laurent term {term!r}")
            else:
                coeff = int(cs)
            if not tpart:
                k = 0
            elif half is not None:
                k = int(half)
            elif whole is not None:
                k = 2 * int(whole)
            else:
                k = 2
            out = out + cls({k: coeff})
        return out


ZERO = LaurentHalf()
ONE = LaurentHalf.const(1)
T = LaurentHalf.t(1)
