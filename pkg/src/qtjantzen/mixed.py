"""Mixed products of fundamental modules: sequences, the preorder, gamma-twists,
mixed (q,t)-characters, Jantzen classes and the m_n operations."""
from collections import deque
from fractions import Fraction

from .cartan import IMonomial, n_form, node_of_index, embed_e
from .characters import char_table
from .errors import NotComparable, ValidationError
from .laurent import LaurentHalf
from .torus import QTElement, qt_bar, qt_mul

LESS, EQUIV, GREATER, INCOMPARABLE = "less", "equiv", "greater", "incomparable"


class SeqEps:
    """A sequence of indices in J = e(I-hat), i.e. an ordered tensor product of fundamentals."""

    __slots__ = ("datum", "entries")

    def __init__(self, datum, entries):
        self.datum = datum
        self.entries = tuple(int(e) for e in entries)
        for e in self.entries:
            node_of_index(datum, e)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, o):
        return isinstance(o, SeqEps) and self.entries == o.entries and self.datum == o.datum

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SeqEps{self.entries}"

    def nodes(self):
        return [node_of_index(self.datum, e) for e in self.entries]

    def standard(self):
        return SeqEps(self.datum, sorted(self.entries, reverse=True))

    def costandard(self):
        return SeqEps(self.datum, sorted(self.entries))

    def reverse(self):
        return SeqEps(self.datum, self.entries[::-1])

    def multi_index(self):
        d = {}
        for e in self.entries:
            d[e] = d.get(e, 0) + 1
        return d

    def monomial(self):
        m = IMonomial()
        for (i, p) in self.nodes():
            m = m * IMonomial.Y(i, p)
        return m


def seq_of_monomial(datum, m):
    """Standard sequence of a dominant monomial."""
    if not m.is_dominant():
        raise ValidationError(f"{m} is not dominant")
    out = []
    for (i, p), e in m.items():
        out += [embed_e(datum, i, p)] * e
    return SeqEps(datum, sorted(out, reverse=True))


# --- alpha and the preorder --------------------------------------------------

def alpha_sl2(j, j2):
    return 1 if abs(j - j2) == 2 else 0


class AlphaTable:
    """Symmetric table of the integers alpha(j, j'), with alpha(j, j) = 0."""

    def __init__(self, values=None, default=None):
        self._v = {}
        self._default = default
        for (a, b), v in (values or {}).items():
            self.set(a, b, v)

    @classmethod
    def sl2(cls):
        return cls(default=alpha_sl2)

    def set(self, a, b, v):
        if v < 0:
            raise ValidationError("alpha values are nonnegative")
        if a == b and v:
            raise ValidationError("alpha(j, j) must vanish")
        self._v[frozenset((a, b))] = int(v)

    def __call__(self, a, b):
        if a == b:
            return 0
        key = frozenset((a, b))
        if key in self._v:
            return self._v[key]
        if self._default is not None:
            return self._default(a, b)
        raise ValidationError(f"alpha({a},{b}) is not in the table")


def _up_moves(seq, alpha):
    for k in range(len(seq) - 1):
        a, b = seq[k], seq[k + 1]
        if a == b:
            continue
        if alpha(a, b) == 0 or a > b:
            yield k, seq[:k] + (b, a) + seq[k + 2:]


def up_set(entries, alpha):
    """All sequences reachable from ``entries`` by neutral or upward swaps."""
    start = tuple(entries)
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for _k, nxt in _up_moves(s, alpha):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def eps_preorder(eps, eps2, alpha):
    a, b = tuple(eps), tuple(eps2)
    if sorted(a) != sorted(b):
        return INCOMPARABLE
    up = b in up_set(a, alpha)
    down = a in up_set(b, alpha)
    if up and down:
        return EQUIV
    if up:
        return LESS
    if down:
        return GREATER
    return INCOMPARABLE


def up_path(eps_from, eps_to, alpha):
    """Shortest chain of swap positions from eps_from up to eps_to (leftmost swap first)."""
    start, goal = tuple(eps_from), tuple(eps_to)
    prev = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if s == goal:
            break
        for k, nxt in _up_moves(s, alpha):
            if nxt not in prev:
                prev[nxt] = (s, k)
                queue.append(nxt)
    if goal not in prev:
        raise NotComparable(f"{goal} is not above {start}")
    path = []
    s = goal
    while prev[s] is not None:
        s, k = prev[s]
        path.append((s, k))
    return path[::-1]


# --- gamma, mixed characters, classes ----------------------------------------

def gamma(datum, d, d2):
    """Bilinear form gamma(d, d') = -sum d_j d'_k N(m_j, m_k)/2 on multi-indices (dicts)."""
    total = 0
    for j, a in d.items():
        x = node_of_index(datum, j)
        for k, b in d2.items():
            if j != k:
                total += a * b * n_form(datum, x, node_of_index(datum, k))
    return Fraction(-total, 2)


class JClass:
    """A class in the quantum Grothendieck ring expanded in the simple basis."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum, terms):
        self.datum = datum
        self.terms = {m: c for m, c in terms.items() if c}

    def __eq__(self, o):
        return isinstance(o, JClass) and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, m):
        return self.terms.get(m, LaurentHalf())

    def scale(self, c):
        return JClass(self.datum, {m: v * c for m, v in self.terms.items()})

    def shift(self, e):
        return self.scale(LaurentHalf.t(e))

    def __add__(self, o):
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, LaurentHalf()) + c
        return JClass(self.datum, out)

    def bar(self):
        return JClass(self.datum, {m: c.bar() for m, c in self.terms.items()})

    def ev1(self):
        return {m: c.ev1() for m, c in self.terms.items() if c.ev1()}

    def leading(self):
        d = self.datum
        return max(self.terms, key=lambda m: (d.height(m), m.sort_key()))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (-self.datum.height(kv[0]), kv[0].sort_key()))

    def label(self, m):
        if self.datum.n == 1 and len(m.items()) == 1 and m.items()[0][1] == 1:
            (_i, p), _e = m.items()[0]
            return f"S_{p + 1}"
        return str(m)

    def to_json(self):
        return [{"simple": str(m), "label": self.label(m), "coeff": c.to_json()} for m, c in self.items()]

    def __str__(self):
        return " + ".join(f"({c})[{self.label(m)}]" for m, c in self.items()) or "0"

    __repr__ = __str__


def _seq(datum, eps):
    return eps if isinstance(eps, SeqEps) else SeqEps(datum, eps)


def et_mixed(datum, eps, table=None):
    eps = _seq(datum, eps)
    table = table or char_table(datum)
    nodes = eps.nodes()
    twist = 0
    for k in range(len(nodes)):
        for l in range(k + 1, len(nodes)):
            twist += n_form(datum, nodes[k], nodes[l])
    out = QTElement.scalar(datum, 1)
    for (i, p) in nodes:
        out = qt_mul(out, table.ft_fundamental(i, p))
    return out.scale(LaurentHalf({twist: 1}))


def jantzen_class(datum, eps, table=None):
    table = table or char_table(datum)
    return JClass(datum, table.expand_in_canonical(et_mixed(datum, eps, table)))


def standard_class(datum, m, table=None):
    """[M(d)] for the dominant monomial m, in the simple basis."""
    table = table or char_table(datum)
    return JClass(datum, table.p_polynomials(m))


def _multi(datum, m):
    return seq_of_monomial(datum, m).multi_index()


def m_n(datum, entries, table=None):
    entries = list(entries)
    if len(entries) == 1:
        return standard_class(datum, entries[0], table)
    tw = Fraction(0)
    ds = [_multi(datum, m) for m in entries]
    for k in range(len(ds)):
        for l in range(k + 1, len(ds)):
            tw += gamma(datum, ds[k], ds[l])
    seq = []
    for m in entries:
        seq += list(seq_of_monomial(datum, m).entries)
    return jantzen_class(datum, seq, table).shift(tw)


def standard_coordinates(datum, x, table=None):
    """Coefficients of a class in the basis of standard classes [M(d)]."""
    table = table or char_table(datum)
    el = QTElement.zero(datum)
    for m, c in x.terms.items():
        el = el + table.lt_canonical(m).scale(c)
    return table.expand_in_standard(el)


def star(datum, x, y, table=None):
    """The gamma-twisted product on the quantum Grothendieck ring."""
    table = table or char_table(datum)
    xs = standard_coordinates(datum, x, table)
    ys = standard_coordinates(datum, y, table)
    out = JClass(datum, {})
    for mx, cx in xs.items():
        dx = _multi(datum, mx)
        sx = list(seq_of_monomial(datum, mx).entries)
        for my, cy in ys.items():
            dy = _multi(datum, my)
            sy = list(seq_of_monomial(datum, my).entries)
            cls = jantzen_class(datum, sx + sy, table)
            out = out + cls.scale(cx * cy).shift(gamma(datum, dx, dy))
    return out


def check_associativity(datum, sample, table=None):
    """Compare m_n with every split m_k * m_{n-k}; returns the list of failures."""
    table = table or char_table(datum)
    failures = []
    for entries in sample:
        entries = list(entries)
        full = m_n(datum, entries, table)
        for k in range(1, len(entries)):
            lhs = star(datum, m_n(datum, entries[:k], table), m_n(datum, entries[k:], table), table)
            if lhs != full:
                failures.append({"entries": [str(m) for m in entries], "split": k,
                                 "m_n": str(full), "product": str(lhs)})
    return failures


def check_duality(datum, eps, table=None):
    eps = _seq(datum, eps)
    return qt_bar(et_mixed(datum, eps, table)) == et_mixed(datum, eps.reverse(), table)
