"""Cartan data, the index set of spectral nodes, monomials and the skew form N.

A node of the spectral index set is a pair (i, p) with p congruent to the
parity of i modulo 2.  Monomials are finite products of Y_{i,p}^{+-1}.
"""
from fractions import Fraction
from functools import lru_cache
import re
import threading

from .errors import NotInLattice, SingularAtZero, ValidationError


def _type_matrix(tag):
    tag = tag.upper()
    m = re.fullmatch(r"([ABD])(\d+)", tag)
    if not m:
        raise ValidationError(f"unknown Cartan type {tag!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "A" and 1 <= n <= 8:
        c = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
        return c, [1] * n
    if tag == "D4":
        c = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
        return c, [1] * 4
    if tag == "B2":
        # node 1 long (r=2), node 2 short (r=1)
        return [[2, -1], [-2, 2]], [2, 1]
    raise ValidationError(f"unsupported Cartan type {tag!r}")


def _default_parity(cartan, sym):
    n = len(cartan)
    eps = [None] * n
    eps[0] = 0
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i][j] < 0 and eps[j] is None:
                eps[j] = (eps[i] + min(sym[i], sym[j])) % 2
                stack.append(j)
    return [e if e is not None else 0 for e in eps]


class CartanDatum:
    """Finite-type Cartan datum with symmetrizer and parity function.

    Nodes are numbered 1..n.  ``cartan[i-1][j-1]`` is c_{ij}; ``sym[i-1]`` is r_i.
    """

    def __init__(self, cartan, sym, parity=None, name=None):
        n = len(cartan)
        self.cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        self.sym = tuple(int(r) for r in sym)
        self.n = n
        self.name = name or "custom"
        self.parity = tuple(parity) if parity is not None else tuple(_default_parity(self.cartan, self.sym))
        self._validate()
        self._lock = threading.Lock()
        self._ctilde = None
        self._ctilde_len = 0

    @classmethod
    def of_type(cls, tag, parity=None):
        c, r = _type_matrix(tag)
        return cls(c, r, parity, name=tag.upper())

    def _validate(self):
        n = self.n
        if len(self.sym) != n or len(self.parity) != n:
            raise ValidationError("symmetrizer/parity length mismatch")
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise ValidationError("diagonal Cartan entries must equal 2")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise ValidationError("off-diagonal Cartan entries must be <= 0")
                if self.sym[i] * self.cartan[i][j] != self.sym[j] * self.cartan[j][i]:
                    raise ValidationError("symmetrizer does not symmetrize the Cartan matrix")
                if i != j and self.cartan[i][j] < 0:
                    if (self.parity[i] - self.parity[j] - min(self.sym[i], self.sym[j])) % 2:
                        raise ValidationError(f"parity violates the compatibility rule on ({i + 1},{j + 1})")

    # basic data
    @property
    def nodes(self):
        return range(1, self.n + 1)

    def c(self, i, j):
        return self.cartan[i - 1][j - 1]

    def r(self, i):
        return self.sym[i - 1]

    @property
    def lacing(self):
        return max(self.sym)

    @property
    def simply_laced(self):
        return all(r == 1 for r in self.sym)

    def neighbors(self, i):
        return [j for j in self.nodes if j != i and self.c(i, j) < 0]

    def in_ihat(self, i, p):
        return 1 <= i <= self.n and (p - self.parity[i - 1]) % 2 == 0

    def check_node(self, i, p):
        if not self.in_ihat(i, p):
            raise NotInLattice(f"({i},{p}) is not a spectral node for {self.name}")

    def __eq__(self, o):
        return isinstance(o, CartanDatum) and (self.cartan, self.sym, self.parity) == (o.cartan, o.sym, o.parity)

    def __hash__(self):
        return hash((self.cartan, self.sym, self.parity))

    def __repr__(self):
        return f"CartanDatum({self.name})"

    # inverse quantum Cartan matrix
    def _ensure_ctilde(self, m_max):
        with self._lock:
            if self._ctilde_len >= m_max:
                return
            self._ctilde = _inverse_series(self, max(m_max, 2 * self._ctilde_len, 16))
            self._ctilde_len = len(self._ctilde) - 1

    def ctilde(self, i, j, m):
        if m <= 0:
            return 0
        if m > self._ctilde_len:
            self._ensure_ctilde(m)
        return self._ctilde[m][i - 1][j - 1]

    # height (pairing with rho-check) of the classical weight of a monomial
    def height(self, mono):
        return _height_functional(self).__call__(mono)


def _quantum_int_coeffs(k):
    """[k]_z as a dict exponent -> coefficient (k may be negative)."""
    sign = 1
    if k < 0:
        sign, k = -1, -k
    return {e: sign for e in range(-(k - 1), k, 2)} if k else {}


def _inverse_series(datum, m_max):
    """Rows m = 0..m_max of the series inverse of C(z), as integer matrices."""
    n = datum.n
    # D(z) = diag(z^{r_i}) C(z) must be a polynomial matrix
    D = {}
    for i in range(n):
        ri = datum.sym[i]
        for j in range(n):
            if i == j:
                entry = {ri: 1, -ri: 1}
            else:
                entry = _quantum_int_coeffs(datum.cartan[i][j])
            for e, v in entry.items():
                ee = e + ri
                if ee < 0:
                    raise SingularAtZero("quantum Cartan matrix has a pole after row scaling")
                D.setdefault(ee, [[0] * n for _ in range(n)])[i][j] += v
    deg = max(D)
    D0 = D.get(0, [[0] * n for _ in range(n)])
    D0inv = _frac_inverse(D0)
    if D0inv is None:
        raise SingularAtZero("quantum Cartan matrix is not invertible as a power series")
    X = []
    for m in range(m_max + 1):
        rhs = [[Fraction(1) if (i == j and datum.sym[i] == m) else Fraction(0) for j in range(n)] for i in range(n)]
        for k in range(1, min(m, deg) + 1):
            Dk = D.get(k)
            if Dk is None:
                continue
            Xp = X[m - k]
            for i in range(n):
                for j in range(n):
                    s = sum(Dk[i][l] * Xp[l][j] for l in range(n))
                    rhs[i][j] -= s
        Xm = [[sum(D0inv[i][l] * rhs[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        X.append(Xm)
    out = []
    for Xm in X:
        row = []
        for r in Xm:
            vals = []
            for v in r:
                if v.denominator != 1:
                    raise SingularAtZero("non-integral inverse quantum Cartan coefficient")
                vals.append(int(v))
            row.append(tuple(vals))
        out.append(tuple(row))
    return out


def _frac_inverse(M):
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


@lru_cache(maxsize=None)
def _height_functional(datum):
    # A_i has weight alpha_i = sum_k c_{ki} omega_k, so omega = (C^T)^{-1} alpha
    # and height(omega_i) is the i-th row sum of (C^T)^{-1}.
    CT = [[datum.cartan[j][i] for j in range(datum.n)] for i in range(datum.n)]
    CTinv = _frac_inverse(CT)
    hts = [sum(CTinv[i][k] for k in range(datum.n)) for i in range(datum.n)]

    def height(mono):
        return sum(hts[i - 1] * e for (i, _p), e in mono.items())

    return height


class IMonomial:
    """Monomial prod Y_{i,p}^{u_{i,p}}, stored as a sorted tuple of ((i,p), u)."""

    __slots__ = ("_t", "_d", "_h")

    def __init__(self, exps=None):
        d = {}
        if exps:
            for k, v in dict(exps).items():
                if v:
                    d[(int(k[0]), int(k[1]))] = int(v)
        self._d = d
        self._t = tuple(sorted(d.items(), key=lambda kv: (kv[0][1], kv[0][0])))
        self._h = None

    @classmethod
    def Y(cls, i, p, e=1):
        return cls({(i, p): e})

    @classmethod
    def one(cls):
        return cls()

    def items(self):
        return self._t

    def exps(self):
        return dict(self._d)

    def u(self, i, p):
        return self._d.get((i, p), 0)

    def support(self):
        return [k for k, _ in self._t]

    def __mul__(self, o):
        d = dict(self._d)
        for k, v in o._d.items():
            d[k] = d.get(k, 0) + v
        return IMonomial(d)

    def inverse(self):
        return IMonomial({k: -v for k, v in self._d.items()})

    def __truediv__(self, o):
        return self * o.inverse()

    def __pow__(self, n):
        return IMonomial({k: v * n for k, v in self._d.items()})

    def is_one(self):
        return not self._d

    def is_dominant(self):
        return all(v > 0 for v in self._d.values())

    def is_j_dominant(self, j):
        return all(v > 0 for (i, _p), v in self._d.items() if i == j)

    def restrict(self, j):
        """(j-part, complement) of the monomial."""
        a = {k: v for k, v in self._d.items() if k[0] == j}
        b = {k: v for k, v in self._d.items() if k[0] != j}
        return IMonomial(a), IMonomial(b)

    def degree(self):
        return sum(self._d.values())

    def sort_key(self):
        return (self.degree(), self._t)

    def __eq__(self, o):
        return isinstance(o, IMonomial) and self._t == o._t

    def __lt__(self, o):
        return self.sort_key() < o.sort_key()

    def __hash__(self):
        if self._h is None:
            self._h = hash(self._t)
        return self._h

    def __str__(self):
        if not self._t:
            return "1"
        out = []
        for (i, p), e in self._t:
            out.append(f"Y({i},{p})" + ("" if e == 1 else f"^{e}"))
        return "".join(out)

    __repr__ = __str__

    @classmethod
    def parse(cls, text, datum=None):
        text = text.replace(" ", "")
        if text in ("", "1"):
            return cls()
        pos = 0
        d = {}
        pat = re.compile(r"Y\((-?\d+),(-?\d+)\)(?:\^(-?\d+))?")
        while pos < len(text):
            m = pat.match(text, pos)
            if not m:
                raise ValidationError(f"cannot parse monomial {text!r} at offset {pos}")
            i, p = int(m.group(1)), int(m.group(2))
            e = int(m.group(3)) if m.group(3) is not None else 1
            if datum is not None:
                datum.check_node(i, p)
            d[(i, p)] = d.get((i, p), 0) + e
            pos = m.end()
        return cls(d)


# --- operations on nodes and monomials ------------------------------------

def embed_e(datum, i, p):
    """Index i + n*p of a spectral node."""
    return i + datum.n * p


def node_of_index(datum, j):
    """Inverse of embed_e; raises NotInLattice for indices outside the image."""
    n = datum.n
    i = (j - 1) % n + 1
    p = (j - i) // n
    datum.check_node(i, p)
    return i, p


def qcartan_inverse(datum, i, j, m_max):
    if m_max < 1:
        raise ValidationError("m_max must be at least 1")
    return [datum.ctilde(i, j, m) for m in range(1, m_max + 1)]


def n_form(datum, x, y):
    """N(i,p; j,s) for nodes x = (i,p), y = (j,s)."""
    (i, p), (j, s) = x, y
    ri = datum.r(i)
    ct = datum.ctilde
    return ct(i, j, p - s - ri) - ct(i, j, p - s + ri) - ct(i, j, s - p - ri) + ct(i, j, s - p + ri)


def n_form_mono(datum, m1, m2):
    """Bilinear extension of N to monomials."""
    total = 0
    for x, a in m1.items():
        for y, b in m2.items():
            if x != y:
                total += a * b * _n_cached(datum, x, y)
    return total


@lru_cache(maxsize=1 << 18)
def _n_cached(datum, x, y):
    return n_form(datum, x, y)


def a_monomial(datum, i, p):
    """Loop analogue A_{i,p} of the simple root alpha_i."""
    ri = datum.r(i)
    if not datum.in_ihat(i, p - ri):
        raise NotInLattice(f"A_({i},{p}) requires ({i},{p - ri}) to be a spectral node")
    d = {(i, p - ri): 1, (i, p + ri): 1}
    for j in datum.neighbors(i):
        for s in range(p - ri + 1, p + ri):
            if datum.in_ihat(j, s):
                d[(j, s)] = d.get((j, s), 0) - 1
    return IMonomial(d)


def a_decomposition(datum, quotient):
    """Exponents v with quotient = prod A_{i,p}^{v_{i,p}}, or None if none exist.

    The A-monomials are linearly independent; peeling the highest spectral
    parameter gives the unique candidate.
    """
    x = dict(quotient.exps())
    if not x:
        return {}
    lo = min(p for (_i, p) in x) - 2 * datum.lacing - 2
    v = {}
    while x:
        (i, s), e = max(x.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        if s < lo:
            return None
        q = s - datum.r(i)
        if not datum.in_ihat(i, q - datum.r(i)):
            return None
        v[(i, q)] = v.get((i, q), 0) + e
        for k, w in a_monomial(datum, i, q).items():
            nv = x.get(k, 0) - e * w
            if nv:
                x[k] = nv
            else:
                x.pop(k, None)
    return {k: w for k, w in v.items() if w}


def nakajima_leq(datum, m, m2):
    """m <= m2 in the Nakajima order: m2/m is a product of A's with exponents >= 0."""
    v = a_decomposition(datum, m2 / m)
    return v is not None and all(w >= 0 for w in v.values())
