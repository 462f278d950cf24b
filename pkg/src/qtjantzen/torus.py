"""The quantum torus in the basis of commutative monomials.

Products follow underline(m) * underline(m') = t^(-N(m,m')/2) underline(m m').
The generator Y~_{i,p} equals t^(-1/2) underline(Y_{i,p}).
"""
from .cartan import IMonomial, a_monomial, n_form_mono
from .laurent import LaurentHalf


class QTElement:
    __slots__ = ("datum", "terms")

    def __init__(self, datum, terms=None):
        self.datum = datum
        clean = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(c, LaurentHalf):
                    c = LaurentHalf.const(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, datum, terms):
        obj = cls.__new__(cls)
        obj.datum = datum
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, datum):
        return cls._raw(datum, {})

    @classmethod
    def scalar(cls, datum, c):
        return cls(datum, {IMonomial(): c})

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, m):
        return self.terms.get(m, LaurentHalf())

    def monomials(self):
        return sorted(self.terms, key=IMonomial.sort_key)

    def items(self):
        return [(m, self.terms[m]) for m in self.monomials()]

    def __add__(self, o):
        if isinstance(o, int):
            o = QTElement.scalar(self.datum, o)
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return QTElement._raw(self.datum, out)

    __radd__ = __add__

    def __neg__(self):
        return QTElement._raw(self.datum, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        if isinstance(c, int):
            c = LaurentHalf.const(c)
        if not c:
            return QTElement.zero(self.datum)
        return QTElement._raw(self.datum, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, o):
        if isinstance(o, (int, LaurentHalf)):
            return self.scale(o)
        return qt_mul(self, o)

    def __rmul__(self, o):
        return self.scale(o)

    def __eq__(self, o):
        if isinstance(o, int):
            o = QTElement.scalar(self.datum, o)
        return isinstance(o, QTElement) and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def bar(self):
        return qt_bar(self)

    def dominant_monomials(self):
        return [m for m in self.terms if m.is_dominant()]

    def to_json(self):
        return [{"monomial": str(m), "coeff": c.to_json()} for m, c in self.items()]

    @classmethod
    def from_json(cls, datum, data):
        return cls(datum, {IMonomial.parse(e["monomial"], datum): LaurentHalf.from_json(e["coeff"]) for e in data})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items():
            parts.append(f"({c})*[{m}]" if c != LaurentHalf.const(1) else f"[{m}]")
        return " + ".join(parts)

    __repr__ = __str__


def qt_underline(datum, m):
    return QTElement._raw(datum, {m: LaurentHalf.const(1)})


def qt_mul(x, y):
    datum = x.datum
    out = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            k = -n_form_mono(datum, m1, m2)  # doubled exponent of t^(-N/2)
            m = m1 * m2
            c = (c1 * c2).shift2(k)
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return QTElement._raw(datum, out)


def qt_bar(x):
    return QTElement._raw(x.datum, {m: c.bar() for m, c in x.terms.items()})


def ev_t1(x):
    out = {}
    for m, c in x.terms.items():
        v = c.ev1()
        if v:
            out[m] = v
    return out


def qt_product(datum, factors):
    out = QTElement.scalar(datum, 1)
    for f in factors:
        out = qt_mul(out, f)
    return out


def generator(datum, i, p, sign=1):
    """The torus generator Y~_{i,p}^{sign} as an element of the torus."""
    datum.check_node(i, p)
    return QTElement._raw(datum, {IMonomial.Y(i, p, sign): LaurentHalf({-sign: 1})})


def torus_word(datum, word):
    """Ordered product of generators; ``word`` is a list of (i, p, sign)."""
    return qt_product(datum, [generator(datum, i, p, s) for (i, p, s) in word])


def kernel_generator(datum, j, p):
    """Generator underline(Y_{j,p}) + underline(Y_{j,p} A_{j,p+r_j}^{-1}) of the j-th screening kernel."""
    y = IMonomial.Y(j, p)
    a = a_monomial(datum, j, p + datum.r(j))
    one = LaurentHalf.const(1)
    return QTElement._raw(datum, {y: one, y / a: one})
