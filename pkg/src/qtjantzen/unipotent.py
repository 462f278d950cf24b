"""Quantum unipotent coordinate rings in shuffle coordinates.

An element x of U_t^+ of weight beta is stored through its pairings
<x, e_nu> against the word monomials e_nu = e_{nu_1} ... e_{nu_n}, which
span the weight space; the representation is therefore faithful.  All
coordinates live in Q(t) (QRat with t as the variable).
"""
from fractions import Fraction
from itertools import combinations, product

from .cartan import _type_matrix
from .errors import (NormalizationFailure, TriangularityViolation, ValidationError,
                     ValidationFailure, WeightMismatch)
from .kl import invert_unitriangular, kl_polynomials
from .laurent import LaurentHalf
from .qrat import QRat

WORD_CAP = 5040
ONE = QRat.const(1)
ZERO = QRat.const(0)


def tpow(k):
    return QRat.power(k)


def _laurent(x):
    """QRat with monomial denominator -> LaurentHalf."""
    if not x.is_laurent():
        raise ValidationFailure(f"coefficient {x.to_str('t')} is not a Laurent polynomial")
    out = {}
    for k, v in x.to_laurent().items():
        if Fraction(v).denominator != 1:
            raise ValidationFailure(f"coefficient {x.to_str('t')} is not integral")
        out[2 * k] = int(v)
    return LaurentHalf(out)


# --- root data ---------------------------------------------------------------

class SymCartan:
    """Symmetric Cartan matrix with the form (alpha_i, alpha_j) = c_ij."""

    def __init__(self, matrix, name=None):
        self.c = [list(r) for r in matrix]
        self.n = len(self.c)
        self.name = name
        for i in range(self.n):
            if self.c[i][i] != 2:
                raise ValidationError("diagonal entries must equal 2")
            for j in range(self.n):
                if self.c[i][j] != self.c[j][i]:
                    raise ValidationError("the Cartan matrix must be symmetric")

    @classmethod
    def of_type(cls, tag):
        c, r = _type_matrix(tag)
        if any(x != 1 for x in r):
            raise ValidationError(f"type {tag} is not simply-laced")
        return cls(c, tag.upper())

    def simple(self, i):
        return tuple(1 if k == i - 1 else 0 for k in range(self.n))

    def form(self, a, b):
        return sum(a[i] * self.c[i][j] * b[j] for i in range(self.n) for j in range(self.n))

    def reflect(self, i, beta):
        a = self.simple(i)
        k = self.form(a, beta)
        return tuple(x - k * y for x, y in zip(beta, a))

    def letter_form(self, a, b):
        return self.c[a - 1][b - 1]

    def edges(self):
        return [(i + 1, j + 1) for i in range(self.n) for j in range(i + 1, self.n) if self.c[i][j] < 0]

    def __eq__(self, o):
        return isinstance(o, SymCartan) and self.c == o.c

    def __hash__(self):
        return hash(tuple(map(tuple, self.c)))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def height(beta):
    return sum(beta)


class QuiverData:
    """A reduced word with its positive roots alpha_{i,j} = s_{i_1}...s_{i_{j-1}} alpha_{i_j}."""

    def __init__(self, cartan, word, quiver=None):
        self.cartan = cartan
        self.word = tuple(int(i) for i in word)
        for i in self.word:
            if not 1 <= i <= cartan.n:
                raise ValidationError(f"letter {i} is not a node")
        self.roots = []
        for j, i in enumerate(self.word):
            beta = cartan.simple(i)
            for k in reversed(self.word[:j]):
                beta = cartan.reflect(k, beta)
            if any(x < 0 for x in beta) or not any(beta):
                raise ValidationError(f"word {self.word} is not reduced")
            self.roots.append(beta)
        if len(set(self.roots)) != len(self.roots):
            raise ValidationError(f"word {self.word} is not reduced")
        self.quiver = tuple(quiver) if quiver is not None else find_adapted_quiver(cartan, self.word)

    @property
    def length(self):
        return len(self.word)

    def root(self, j):
        return self.roots[j - 1]

    @property
    def adapted(self):
        return self.quiver is not None and is_adapted(self.cartan, self.word, self.quiver)

    def is_longest(self):
        return self.length == len(positive_roots(self.cartan))

    def weight_of(self, d):
        beta = tuple([0] * self.cartan.n)
        for j, k in enumerate(d):
            beta = _add(beta, tuple(k * x for x in self.roots[j]))
        return beta

    def kostant_partitions(self, beta):
        """All d in N^J with sum d_j alpha_j = beta."""
        out = []

        def rec(j, rest, acc):
            if j == self.length:
                if not any(rest):
                    out.append(tuple(acc))
                return
            r = self.roots[j]
            k = 0
            cur = rest
            while all(x >= 0 for x in cur):
                rec(j + 1, cur, acc + [k])
                k += 1
                cur = tuple(x - y for x, y in zip(cur, r))
        rec(0, tuple(beta), [])
        return out


def is_adapted(cartan, word, arrows):
    """Each letter is a source of the quiver reflected at all previous letters."""
    arrows = [tuple(a) for a in arrows]
    if sorted(tuple(sorted(a)) for a in arrows) != sorted(cartan.edges()):
        raise ValidationError("quiver does not match the Dynkin diagram")
    for i in word:
        if any(t == i for (_s, t) in arrows):
            return False
        arrows = [(t, s) if i in (s, t) else (s, t) for (s, t) in arrows]
    return True


def find_adapted_quiver(cartan, word):
    edges = cartan.edges()
    for signs in product((0, 1), repeat=len(edges)):
        arrows = [(a, b) if s == 0 else (b, a) for (a, b), s in zip(edges, signs)]
        if is_adapted(cartan, word, arrows):
            return tuple(arrows)
    return None


# --- the algebra -------------------------------------------------------------

def words_of_weight(beta):
    """Words nu in I^beta in lexicographic order."""
    n = sum(beta)
    out = []
    counts = list(beta)

    def rec(acc):
        if len(acc) == n:
            out.append(tuple(acc))
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                acc.append(i + 1)
                rec(acc)
                acc.pop()
                counts[i] += 1
    rec([])
    return out


def _weight_of_word(n, word):
    w = [0] * n
    for i in word:
        w[i - 1] += 1
    return tuple(w)


class UqElement:
    """t^(shift2/2) * (element with the given coordinates)."""

    __slots__ = ("cartan", "weight", "coords", "shift2")

    def __init__(self, cartan, weight, coords, shift2=0):
        self.cartan = cartan
        self.weight = tuple(weight)
        self.coords = {w: c for w, c in coords.items() if c}
        self.shift2 = shift2
        if len(words_of_weight(self.weight)) > WORD_CAP:
            raise ValidationError(f"weight space {self.weight} exceeds the word cap {WORD_CAP}")
        for w in self.coords:
            if _weight_of_word(cartan.n, w) != self.weight:
                raise WeightMismatch(f"word {w} has the wrong weight")

    @classmethod
    def one(cls, cartan):
        return cls(cartan, tuple([0] * cartan.n), {(): ONE})

    @classmethod
    def generator(cls, cartan, i):
        """e_i, paired as <e_i, e_i> = 1/(1 - t^2)."""
        return cls(cartan, cartan.simple(i), {(i,): ONE / (ONE - tpow(2))})

    @classmethod
    def dual_generator(cls, cartan, i):
        """(1 - t^2) e_i."""
        return cls(cartan, cartan.simple(i), {(i,): ONE})

    def coord(self, word):
        word = tuple(word)
        if _weight_of_word(self.cartan.n, word) != self.weight:
            raise WeightMismatch(f"word {word} does not have weight {self.weight}")
        return self.coords.get(word, ZERO)

    def _aligned(self, o):
        if self.weight != o.weight:
            raise WeightMismatch("cannot add elements of different weights")
        if self.shift2 == o.shift2:
            return self.coords, o.coords, self.shift2
        lo = min(self.shift2, o.shift2)
        if (self.shift2 - o.shift2) % 2:
            raise ValidationError("cannot add elements whose t^(1/2)-shifts differ by an odd amount")

        def lift(x):
            f = tpow((x.shift2 - lo) // 2)
            return {w: c * f for w, c in x.coords.items()}
        return lift(self), lift(o), lo

    def __add__(self, o):
        a, b, s = self._aligned(o)
        out = dict(a)
        for w, c in b.items():
            out[w] = out.get(w, ZERO) + c
        return UqElement(self.cartan, self.weight, out, s)

    def __neg__(self):
        return UqElement(self.cartan, self.weight, {w: -c for w, c in self.coords.items()}, self.shift2)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        if isinstance(c, int):
            c = QRat.const(c)
        return UqElement(self.cartan, self.weight, {w: v * c for w, v in self.coords.items()}, self.shift2)

    def shift_half(self, k2):
        return UqElement(self.cartan, self.weight, self.coords, self.shift2 + k2)

    def normalized(self):
        """Fold an even shift into the coordinates."""
        if self.shift2 % 2:
            return self
        f = tpow(self.shift2 // 2)
        return UqElement(self.cartan, self.weight, {w: c * f for w, c in self.coords.items()})

    def is_zero(self):
        return not self.coords

    def __eq__(self, o):
        if not isinstance(o, UqElement) or self.weight != o.weight:
            return False
        a, b, _ = self._aligned(o)
        return a == b

    def __hash__(self):
        return hash((self.weight, frozenset(self.normalized().coords.items())))

    def __mul__(self, o):
        return uq_mul(self, o)

    def words(self):
        return words_of_weight(self.weight)

    def vector(self, words=None):
        return [self.coord(w) for w in (words or self.words())]

    def to_json(self):
        x = self.normalized()
        out = []
        for w in self.words():
            c = x.coords.get(w)
            if c is None:
                continue
            entry = {"word": list(w)}
            try:
                entry["coeff"] = _laurent(c).to_json()
            except ValidationFailure:
                entry["coeff_rational"] = c.to_str("t")
            out.append(entry)
        res = {"weight": list(self.weight), "coords": out}
        if x.shift2:
            res["shift_half"] = x.shift2
        return res

    def __repr__(self):
        x = self.normalized()
        body = ", ".join(f"{''.join(map(str, w))}: {c.to_str('t')}" for w, c in sorted(x.coords.items()))
        pre = f"t^({x.shift2}/2) " if x.shift2 else ""
        return f"UqElement{self.weight}[{pre}{body}]"


def uq_pairing_word(x, word):
    return x.coord(word)


def uq_mul(x, y):
    """Coordinates of xy from <xy, e_nu> = <x (x) y, r(e_nu)> with the twisted coproduct."""
    C = x.cartan
    beta = _add(x.weight, y.weight)
    hx = height(x.weight)
    out = {}
    if not x.coords or not y.coords:
        return UqElement(C, beta, {}, x.shift2 + y.shift2)
    for nu in words_of_weight(beta):
        n = len(nu)
        acc = ZERO
        for S in combinations(range(n), hx):
            left = tuple(nu[k] for k in S)
            cx = x.coords.get(left)
            if cx is None:
                continue
            Sset = set(S)
            right = tuple(nu[k] for k in range(n) if k not in Sset)
            cy = y.coords.get(right)
            if cy is None:
                continue
            e = 0
            for k in S:
                for l in range(k):
                    if l not in Sset:
                        e += C.letter_form(nu[l], nu[k])
            acc = acc + cx * cy * tpow(-e)
        if acc:
            out[nu] = acc
    return UqElement(C, beta, out, x.shift2 + y.shift2)


def uq_product(cartan, factors):
    out = UqElement.one(cartan)
    for f in factors:
        out = uq_mul(out, f)
    return out


def word_monomial(cartan, word):
    return uq_product(cartan, [UqElement.generator(cartan, i) for i in word])


def iota_prime(x):
    """Coordinate-wise bar; the t^(1/2)-shift is inverted as well."""
    return UqElement(x.cartan, x.weight, {w: c.bar() for w, c in x.coords.items()}, -x.shift2)


def renormalized_bar(x):
    """t^(-(beta,beta)/2) iota'(x)."""
    return iota_prime(x).shift_half(-x.cartan.form(x.weight, x.weight))


# --- exact linear algebra over Q(t) ------------------------------------------

def _echelon(rows):
    """Row echelon form; returns (reduced rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = ONE / rows[rank][c]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        pivots.append(c)
        rank += 1
    return rows[:rank], pivots


def rank_of(vectors):
    return len(_echelon(vectors)[1]) if vectors else 0


def solve_in_basis(basis, x, words=None):
    """Coefficients lambda with x = sum lambda_k basis[k] (exact), or ValidationFailure."""
    words = words or x.words()
    B = [b.normalized() for b in basis]
    xn = x.normalized()
    if xn.shift2 or any(b.shift2 for b in B):
        raise ValidationError("odd t^(1/2)-shifts are not supported here")
    m = len(B)
    # augmented system: columns = basis elements, rows = words
    rows = [[b.coord(w) for b in B] + [xn.coord(w)] for w in words]
    red, piv = _echelon(rows)
    if m in piv:
        raise ValidationFailure("element is not in the span of the basis")
    if len(piv) != m:
        raise ValidationFailure("basis elements are linearly dependent")
    lam = [ZERO] * m
    for r, c in zip(red, piv):
        lam[c] = r[m]
    return lam


_P, _T0 = 2147483629, 1234567


def _eval_mod(x):
    """Image of a QRat in GF(_P) at t = _T0."""
    def ev(poly):
        acc = 0
        for c in reversed(poly.c):
            acc = (acc * _T0 + c.numerator * pow(c.denominator, -1, _P)) % _P
        return acc
    return ev(x.num) * pow(ev(x.den), -1, _P) % _P


def _mod_rank_greedy(vectors):
    """Indices of a greedily chosen independent subset, computed in GF(_P)."""
    basis = []  # (pivot, row)
    chosen = []
    for idx, v in enumerate(vectors):
        r = list(v)
        for piv, b in basis:
            if r[piv]:
                f = r[piv]
                r = [(a - f * c) % _P for a, c in zip(r, b)]
        piv = next((k for k, a in enumerate(r) if a), None)
        if piv is None:
            continue
        inv = pow(r[piv], -1, _P)
        basis.append((piv, [a * inv % _P for a in r]))
        chosen.append(idx)
    return chosen


def positive_roots(cartan):
    seen = {cartan.simple(i) for i in range(1, cartan.n + 1)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for b in frontier:
            for i in range(1, cartan.n + 1):
                r = cartan.reflect(i, b)
                if all(x >= 0 for x in r) and r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(seen, key=lambda b: (height(b), b))


def kostant_number(cartan, beta):
    roots = positive_roots(cartan)

    def rec(k, rest):
        if not any(rest):
            return 1
        if k == len(roots):
            return 0
        tot, cur = 0, rest
        while all(x >= 0 for x in cur):
            tot += rec(k + 1, cur)
            cur = tuple(x - y for x, y in zip(cur, roots[k]))
        return tot
    return rec(0, tuple(beta))


class PairingSpace:
    """Pairing on a weight space from the Gram matrix of a word basis."""

    def __init__(self, cartan, beta):
        self.cartan = cartan
        self.beta = tuple(beta)
        self.words = words_of_weight(self.beta)
        dim = kostant_number(cartan, self.beta)
        monos = [word_monomial(cartan, w) for w in self.words]
        chosen = _mod_rank_greedy([[_eval_mod(m.coord(w)) for w in self.words] for m in monos])
        if len(chosen) != dim:
            raise ValidationFailure(f"word monomials span {len(chosen)} dimensions, expected {dim}")
        self.basis_words = [self.words[k] for k in chosen]
        self.gram = [[monos[k].coord(w2) for w2 in self.basis_words] for k in chosen]
        self._ginv = _inverse(self.gram)

    @property
    def dim(self):
        return len(self.basis_words)

    def pair(self, x, y):
        x, y = x.normalized(), y.normalized()
        cx = [x.coord(w) for w in self.basis_words]
        cy = [y.coord(w) for w in self.basis_words]
        acc = ZERO
        for i in range(self.dim):
            for j in range(self.dim):
                if cx[i] and cy[j] and self._ginv[i][j]:
                    acc = acc + cx[i] * self._ginv[i][j] * cy[j]
        return acc


def _inverse(M):
    n = len(M)
    aug = [list(M[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    red, piv = _echelon(aug)
    if piv[:n] != list(range(n)):
        raise ValidationFailure("Gram matrix is singular")
    return [r[n:] for r in red]


# --- dual root vectors, dual PBW and dual canonical bases ---------------------

def _is_monomial_unit(c):
    """c = +- t^m; returns (sign, m) or None."""
    if not c.is_laurent():
        return None
    lc = c.to_laurent()
    if len(lc) != 1:
        return None
    (m, v), = lc.items()
    if v not in (1, -1):
        return None
    return int(v), m


def iota_normalize(X):
    """The scalar multiple +- t^s X that is iota'-invariant with positive leading coefficient."""
    X = X.normalized()
    if X.is_zero():
        raise NormalizationFailure("bracket vanished")
    words = sorted(X.coords)
    w0 = words[0]
    ratio = X.coords[w0].bar() / X.coords[w0]
    u = _is_monomial_unit(ratio)
    if u is None or u[0] != 1 or u[1] % 2:
        raise NormalizationFailure(f"no power of t makes the bracket iota'-invariant ({ratio.to_str('t')})")
    s = u[1] // 2
    Y = X.scale(tpow(s))
    if iota_prime(Y) != Y:
        raise NormalizationFailure("bracket is not proportional to an iota'-invariant element")
    lead = _laurent(Y.coords[w0])
    top = max(lead.items(), key=lambda kv: -kv[0])[1] if lead else 0
    if top < 0:
        Y = -Y
    return Y


def _integral_positive(x):
    for c in x.normalized().coords.values():
        try:
            if not _laurent(c).is_nonnegative():
                return False
        except ValidationFailure:
            return False
    return True


class UnipotentTable:
    """Dual root vectors, dual PBW and dual canonical bases for a reduced word."""

    def __init__(self, qd):
        self.qd = qd
        self.C = qd.cartan
        self._roots = None
        self.routes = {}
        self._pbw = {}
        self._pair = {}
        self._canon = {}

    # root vectors
    def dual_root_vectors(self, validate=True):
        if self._roots is not None:
            return self._roots
        qd, C = self.qd, self.C
        vec = {}
        order = sorted(range(1, qd.length + 1), key=lambda j: (height(qd.root(j)), j))
        for j in order:
            beta = qd.root(j)
            if height(beta) == 1:
                vec[j] = UqElement.dual_generator(C, beta.index(1) + 1)
                self.routes[j] = "simple"
                continue
            pairs = [(k, l) for k in range(1, j) for l in range(j + 1, qd.length + 1)
                     if _add(qd.root(k), qd.root(l)) == beta]
            if not pairs:
                raise NormalizationFailure(f"no pair of roots brackets to the root at position {j}")
            k, l = min(pairs, key=lambda p: (p[1] - p[0], p))
            a = C.form(qd.root(k), qd.root(l))
            found = None
            for sign, tag in ((-1, "bracket"), (1, "bracket-opposite")):
                X = uq_mul(vec[k], vec[l]) - uq_mul(vec[l], vec[k]).scale(tpow(sign * a))
                X = X.scale(ONE / (ONE - tpow(2)))
                try:
                    Y = iota_normalize(X)
                except NormalizationFailure:
                    continue
                if not _integral_positive(Y):
                    continue
                if validate and qd.is_longest() and not self._orthogonal(j, Y, vec):
                    continue
                found = (Y, tag)
                break
            if found is None:
                raise NormalizationFailure(f"bracket recursion failed at position {j}")
            vec[j], self.routes[j] = found
        self._roots = [vec[j] for j in range(1, qd.length + 1)]
        return self._roots

    def _orthogonal(self, j, Y, vec):
        """Y pairs to zero with every other ordered dual PBW monomial of its weight."""
        beta = self.qd.root(j)
        ps = self.pairing(beta)
        for d in self.qd.kostant_partitions(beta):
            if d == tuple(1 if k == j - 1 else 0 for k in range(self.qd.length)):
                continue
            if any(d[k - 1] and k not in vec for k in range(1, self.qd.length + 1)):
                return False
            m = self._ordered_product(d, vec)
            if ps.pair(Y, m):
                return False
        return True

    def pairing(self, beta):
        beta = tuple(beta)
        if beta not in self._pair:
            self._pair[beta] = PairingSpace(self.C, beta)
        return self._pair[beta]

    def _ordered_product(self, d, vec):
        out = UqElement.one(self.C)
        for j in range(self.qd.length, 0, -1):
            for _ in range(d[j - 1]):
                out = uq_mul(out, vec[j])
        return out

    def dual_pbw(self, d, renormalized=False):
        """t^(sum d_j(d_j-1)/2) prod^{<-}(E*_j)^{d_j}; optionally times t^(-(beta,beta)/4)."""
        d = tuple(d)
        if len(d) != self.qd.length or any(x < 0 for x in d):
            raise ValidationError(f"multi-index {d} does not match the word length")
        if d not in self._pbw:
            roots = self.dual_root_vectors()
            vec = {j + 1: r for j, r in enumerate(roots)}
            x = self._ordered_product(d, vec)
            self._pbw[d] = x.scale(tpow(sum(k * (k - 1) // 2 for k in d)))
        x = self._pbw[d]
        if renormalized:
            beta = self.qd.weight_of(d)
            x = x.shift_half(-self.C.form(beta, beta) // 2)
        return x

    # canonical basis
    def _bilex_less(self, a, b):
        return a != b and a < b and a[::-1] < b[::-1]

    def dual_canonical_data(self, beta):
        """(labels largest first, P, Q, B) with E*(d) = sum P[d][d'] B*(d') and B*(d) = sum Q[d][d'] E*(d')."""
        beta = tuple(beta)
        if beta in self._canon:
            return self._canon[beta]
        if len(words_of_weight(beta)) > WORD_CAP:
            raise ValidationError(f"weight space {beta} exceeds the word cap {WORD_CAP}")
        labels = sorted(self.qd.kostant_partitions(beta), reverse=True)
        E = [self.dual_pbw(d) for d in labels]
        words = words_of_weight(beta)
        if rank_of([e.vector(words) for e in E]) != len(E):
            raise ValidationFailure("dual PBW elements are linearly dependent")
        bar = {}
        for d, e in zip(labels, E):
            lam = solve_in_basis(E, iota_prime(e), words)
            row = {}
            for d2, c in zip(labels, lam):
                if c:
                    if d2 != d and not self._bilex_less(d2, d):
                        raise TriangularityViolation(f"iota' of E*{d} involves E*{d2}, not bilex-below")
                    row[d2] = _laurent(c)
            bar[d] = row
        P = kl_polynomials(labels, bar)
        for d, row in P.items():
            for d2 in row:
                if d2 != d and not self._bilex_less(d2, d):
                    raise TriangularityViolation(f"correction at ({d},{d2}) is not bilex-below")
        Q = invert_unitriangular(labels, P)
        B = {}
        for d in labels:
            acc = UqElement(self.C, beta, {})
            for d2, c in Q[d].items():
                acc = acc + self.dual_pbw(d2).scale(_qrat(c))
            if iota_prime(acc) != acc:
                raise ValidationFailure(f"B*{d} is not iota'-invariant")
            B[d] = acc
        self._canon[beta] = (labels, P, Q, B)
        return self._canon[beta]

    def dual_canonical(self, beta, renormalized=False):
        labels, _P, _Q, B = self.dual_canonical_data(beta)
        if not renormalized:
            return dict(B)
        s = -self.C.form(tuple(beta), tuple(beta)) // 2
        return {d: b.shift_half(s) for d, b in B.items()}

    def gamma(self, d, d2):
        """gamma_i(d, d') as a Fraction."""
        tot = 0
        L = self.qd.length
        for j in range(L):
            for k in range(j + 1, L):
                tot += (d[j] * d2[k] - d[k] * d2[j]) * self.C.form(self.qd.roots[j], self.qd.roots[k])
        return Fraction(tot, 2)

    def delta(self, j):
        return tuple(1 if k == j - 1 else 0 for k in range(self.qd.length))

    def mixed_dual(self, eps):
        """Expansion of E~*(eps) in the renormalized dual canonical basis: d -> LaurentHalf."""
        eps = tuple(int(e) for e in eps)
        L = self.qd.length
        for e in eps:
            if not 1 <= e <= L:
                raise ValidationError(f"index {e} is outside 1..{L}")
        roots = self.dual_root_vectors()
        prod_ = uq_product(self.C, [roots[e - 1] for e in eps])
        beta = prod_.weight
        labels, P, _Q, _B = self.dual_canonical_data(beta)
        E = [self.dual_pbw(d) for d in labels]
        lam = solve_in_basis(E, prod_)
        coeff = {}
        for d, c in zip(labels, lam):
            if not c:
                continue
            cl = _laurent(c)
            for d2, p in P[d].items():
                coeff[d2] = coeff.get(d2, LaurentHalf()) + cl * p
        tw = Fraction(0)
        for k in range(len(eps)):
            for l in range(k + 1, len(eps)):
                tw += self.gamma(self.delta(eps[k]), self.delta(eps[l]))
                tw += Fraction(self.C.form(self.qd.root(eps[k]), self.qd.root(eps[l])), 2)
        sh = LaurentHalf.t(tw)
        return {d: c * sh for d, c in coeff.items() if c}


def _qrat(c):
    """LaurentHalf with integral exponents -> QRat."""
    out = {}
    for k2, v in c.items():
        if k2 % 2:
            raise ValidationError("half-integral exponent in an integral context")
        out[k2 // 2] = v
    return QRat.laurent(out)


def standard_sequence(d):
    """Indices j repeated d_j times, in decreasing order."""
    out = []
    for j in range(len(d), 0, -1):
        out += [j] * d[j - 1]
    return tuple(out)


def _add_into(acc, other, scale):
    for k, v in other.items():
        s = acc.get(k, LaurentHalf()) + v * scale
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class StarProduct:
    """The gamma-twisted product on classes expanded in the renormalized dual canonical basis.

    Classes are dicts d -> LaurentHalf.  star(B~(d), B~(d')) is computed from
    mixed expansions only; product() uses the multiplication of the algebra.
    The mixed expansions carry t^(+sum gamma), so the twist matching them is
    t^(-gamma(d, d')); twist=+1 gives the opposite convention.
    """

    def __init__(self, table, twist=-1):
        if twist not in (1, -1):
            raise ValidationError("twist must be +1 or -1")
        self.T = table
        self.twist = twist

    def _weight(self, d):
        return self.T.qd.weight_of(d)

    def to_pbw(self, x):
        out = {}
        for d, c in x.items():
            _l, _P, Q, _B = self.T.dual_canonical_data(self._weight(d))
            _add_into(out, Q[d], c)
        return out

    def star(self, x, y):
        xs, ys = self.to_pbw(x), self.to_pbw(y)
        out = {}
        for d1, c1 in xs.items():
            for d2, c2 in ys.items():
                seq = standard_sequence(d1) + standard_sequence(d2)
                exp = self.T.mixed_dual(seq) if seq else {d1: LaurentHalf.const(1)}
                _add_into(out, exp, c1 * c2 * LaurentHalf.t(self.twist * self.T.gamma(d1, d2)))
        return out

    def product(self, x, y):
        """Expansion of the algebra product of the represented elements."""
        C = self.T.C
        out = {}
        for d1, c1 in x.items():
            b1 = self.T.dual_canonical(self._weight(d1))[d1]
            for d2, c2 in y.items():
                b2 = self.T.dual_canonical(self._weight(d2))[d2]
                z = uq_mul(b1, b2)
                labels, _P, _Q, B = self.T.dual_canonical_data(z.weight)
                lam = solve_in_basis([B[d] for d in labels], z)
                sh = LaurentHalf.t(Fraction(C.form(self._weight(d1), self._weight(d2)), 2))
                for d, c in zip(labels, lam):
                    if c:
                        _add_into(out, {d: _laurent(c)}, c1 * c2 * sh)
        return out

    def check_associativity(self, triples):
        """Failures of (x*y)*z = x*(y*z) and of star = product on basis triples."""
        fails = []
        one = LaurentHalf.const(1)
        for a, b, c in triples:
            x, y, z = {a: one}, {b: one}, {c: one}
            lhs = self.star(self.star(x, y), z)
            rhs = self.star(x, self.star(y, z))
            if lhs != rhs:
                fails.append({"triple": [a, b, c], "kind": "associativity"})
            if self.star(x, y) != self.product(x, y):
                fails.append({"triple": [a, b], "kind": "product"})
        return fails
