"""Jantzen filtrations of mixed tensor products of sl2 fundamental modules.

For a sequence eps of odd indices, the module lattice M~ is O^D with the
standard tensor basis.  With R_s : M~(eps_s) -> M~(eps) and
R_c : M~(eps) -> M~(eps_c) the composed renormalized R-matrices, a Smith
decomposition of G = R_c R_s gives a basis f in which both the standard and
the costandard lattice are diagonal, and the filtration at level n is cut
out by the diagonal exponents ceil((n - a_i) / 2).

Two arithmetic backends share the algorithm: GF(p)[[z]] with q specialised
to a generic q0 (numpy arrays, compiled kernels) and exact Q(q)[[z]].
"""
import os
from fractions import Fraction
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernel
from .cartan import CartanDatum
from .errors import (AlgorithmFailure, InsufficientPrecision, NotComparable, NotScalar,
                     ValidationError, ValidationFailure)
from .laurent import LaurentHalf
from .mixed import AlphaTable, EQUIV, GREATER, LESS, eps_preorder, jantzen_class, up_path
from .qrat import QRat
from .rmatrix import FpField, QField, RationalField, renorm_r
from .smith import mat_mul, series_smith
from .series import ZSeries

PRIMES = ((33554393, 7), (33554383, 11))
_ALPHA = AlphaTable.sl2()


def _ceil_half(x):
    return -((-x) // 2)


def check_sequence(eps):
    eps = tuple(int(e) for e in eps)
    if not eps:
        raise ValidationError("empty sequence")
    for e in eps:
        if e % 2 == 0:
            raise ValidationError(f"index {e} is not odd")
    return eps


def default_precision(eps):
    eps = tuple(eps)
    amax = max((_ALPHA(a, b) for a in eps for b in eps), default=0)
    base = 2 * comb(len(eps), 2) * amax + 8
    floor = os.environ.get("JANTZEN_PRECISION")
    if floor:
        try:
            base = max(base, int(floor))
        except ValueError:
            raise ValidationError(f"JANTZEN_PRECISION={floor!r} is not an integer")
    return base


# --- backends ----------------------------------------------------------------

class ModPBackend:
    """Matrices are int64 arrays of shape (rows, cols, N) over GF(p)."""

    name = "modp"

    def __init__(self, p, q0, order):
        self.p, self.q0, self.N = p, q0, order
        self.field = FpField(p, q0)
        self._r = {}

    def label(self):
        return f"GF({self.p}), q={self.q0}"

    def r2(self, j, j2):
        key = (j, j2)
        if key not in self._r:
            S = renorm_r(j, j2, self.N, self.field)
            arr = np.zeros((4, 4, self.N), dtype=np.int64)
            for a in range(4):
                for b in range(4):
                    arr[a, b, :] = [c.v for c in S[a][b].coeffs]
            self._r[key] = arr
        return self._r[key]

    def eye(self, D):
        out = np.zeros((D, D, self.N), dtype=np.int64)
        out[np.arange(D), np.arange(D), 0] = 1
        return out

    def embed(self, R, k, d):
        left, right = np.eye(2 ** k, dtype=np.int64), np.eye(2 ** (d - k - 2), dtype=np.int64)
        D = 2 ** d
        out = np.zeros((D, D, self.N), dtype=np.int64)
        for s in range(self.N):
            if R[:, :, s].any():
                out[:, :, s] = np.kron(left, np.kron(R[:, :, s], right))
        return out

    def mul(self, A, B):
        return kernel.series_matmul(A, B, self.p)

    def smith(self, A):
        exps, P, Pinv, Q, Qinv, status = kernel.smith(A, self.p)
        exps = [int(x) for x in exps]
        if status:
            exps = exps[:status - 1] + [None] * (len(exps) - status + 1)
        return exps, Pinv, Q

    def scale_cols(self, A, shifts):
        out = np.zeros_like(A)
        for j, s in enumerate(shifts):
            if s < self.N:
                out[:, j, s:] = A[:, j, :self.N - s]
        return out

    def min_val(self, A):
        nz = A != 0
        if not nz.any():
            return None
        return int(np.argmax(nz.any(axis=(0, 1))))

    def unshift(self, A, v):
        out = np.zeros_like(A)
        out[..., :self.N - v] = A[..., v:]
        return out

    def ev0(self, A):
        return [[int(x) for x in row] for row in A[:, :, 0]]

    def v_zero(self, x):
        return x % self.p == 0

    def v_add(self, x, y):
        return (x + y) % self.p

    def v_mul(self, x, y):
        return (x * y) % self.p

    def v_inv(self, x):
        return pow(int(x), -1, self.p)

    def v_neg(self, x):
        return (-x) % self.p

    def series_entries(self, A, i, j):
        return [int(x) for x in A[i, j]]


class ExactBackend:
    """Matrices are lists of lists of ZSeries with exact coefficients: in Q(q)
    when q0 is None, otherwise in Q with q specialised to the rational q0."""

    def __init__(self, order, q0=None):
        self.N = order
        self.q0 = q0
        self.field = QField() if q0 is None else RationalField(q0)
        self.name = "exact" if q0 is None else "rational"
        self.zero, self.one = self.field.zero, self.field.one
        self._r = {}

    def label(self):
        return "Q(q)" if self.q0 is None else f"Q, q={self.q0}"

    def _z(self):
        return ZSeries([], self.N, self.zero, self.one)

    def r2(self, j, j2):
        key = (j, j2)
        if key not in self._r:
            self._r[key] = renorm_r(j, j2, self.N, self.field)
        return self._r[key]

    def eye(self, D):
        one = ZSeries([self.one], self.N, self.zero, self.one)
        return [[one if i == j else self._z() for j in range(D)] for i in range(D)]

    def embed(self, R, k, d):
        D = 2 ** d
        lo = 2 ** (d - k - 2)
        out = [[self._z() for _ in range(D)] for _ in range(D)]
        for w in range(D):
            hi, pair, rest = w // (4 * lo), (w // lo) % 4, w % lo
            for t in range(4):
                x = R[t][pair]
                if not x.is_zero_mod():
                    out[hi * 4 * lo + t * lo + rest][w] = x
        return out

    def mul(self, A, B):
        return mat_mul(A, B)

    def smith(self, A):
        sm = series_smith(A, self.N, partial=True)
        return list(sm.exponents), sm.U, sm.Q

    def scale_cols(self, A, shifts):
        return [[x.shift(shifts[j]).truncate(self.N) for j, x in enumerate(row)] for row in A]

    def min_val(self, A):
        vals = [x.valuation() for row in A for x in row]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    def unshift(self, A, v):
        return [[ZSeries(x.coeffs[v:], self.N, self.zero, self.one) for x in row] for row in A]

    def ev0(self, A):
        return [[x.eval0() for x in row] for row in A]

    def v_zero(self, x):
        return not x

    def v_add(self, x, y):
        return x + y

    def v_mul(self, x, y):
        return x * y

    def v_inv(self, x):
        return self.one / x

    def v_neg(self, x):
        return -x

    def series_entries(self, A, i, j):
        return list(A[i][j].coeffs)


def _rank(bk, vectors):
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if not bk.v_zero(rows[r][c])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = bk.v_inv(rows[rank][c])
        rows[rank] = [bk.v_mul(x, inv) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not bk.v_zero(rows[r][c]):
                f = rows[r][c]
                rows[r] = [bk.v_add(x, bk.v_neg(bk.v_mul(f, y))) for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _apply(bk, M, v):
    out = []
    for row in M:
        acc = None
        for a, b in zip(row, v):
            t = bk.v_mul(a, b)
            acc = t if acc is None else bk.v_add(acc, t)
        out.append(acc)
    return out


# --- composed R-matrices -----------------------------------------------------

def swap_path(eps_from, eps_to):
    """Positions of the adjacent swaps carrying eps_from to eps_to."""
    a, b = tuple(eps_from), tuple(eps_to)
    if a == b:
        return []
    try:
        return [k for (_s, k) in up_path(a, b, _ALPHA)]
    except NotComparable:
        pass
    try:
        return [k for (_s, k) in up_path(b, a, _ALPHA)][::-1]
    except NotComparable:
        raise NotComparable(f"{a} and {b} are not comparable")


def composed_r(bk, eps_from, eps_to, path=None):
    """Product of id (x) R (x) id along a swap path from eps_from to eps_to."""
    cur = list(eps_from)
    d = len(cur)
    if sorted(cur) != sorted(eps_to):
        raise NotComparable("sequences have different multi-indices")
    path = swap_path(eps_from, eps_to) if path is None else list(path)
    M = bk.eye(2 ** d)
    for k in path:
        if cur[k] == cur[k + 1]:
            raise ValidationError(f"swap at {k} exchanges equal indices")
        M = bk.mul(bk.embed(bk.r2(cur[k], cur[k + 1]), k, d), M)
        cur[k], cur[k + 1] = cur[k + 1], cur[k]
    if tuple(cur) != tuple(eps_to):
        raise ValidationError("swap path does not end at the target sequence")
    return M


def beta_val(bk, eps, eps2):
    v = bk.min_val(composed_r(bk, eps, eps2))
    if v is None:
        raise InsufficientPrecision("composed R-matrix vanishes modulo the truncation", bk.N)
    return v


def _scalar_valuation(bk, M):
    """v with M = z^v c(z) Id for a unit c, else NotScalar."""
    v = bk.min_val(M)
    if v is None:
        raise InsufficientPrecision("round trip vanishes modulo the truncation", bk.N)
    U = bk.unshift(M, v)
    D = len(bk.ev0(M))
    keep = bk.N - v
    diag = bk.series_entries(U, 0, 0)[:keep]
    if bk.v_zero(diag[0]):
        raise NotScalar("round trip is not a scalar multiple of the identity")
    for i in range(D):
        for j in range(D):
            e = bk.series_entries(U, i, j)[:keep]
            target = diag if i == j else None
            for s in range(keep):
                if target is None:
                    if not bk.v_zero(e[s]):
                        raise NotScalar(f"off-diagonal entry ({i},{j}) of the round trip is nonzero")
                elif not bk.v_zero(bk.v_add(e[s], bk.v_neg(target[s]))):
                    raise NotScalar("diagonal of the round trip is not constant")
    return v


def alpha_val(bk, eps, eps2):
    M = bk.mul(composed_r(bk, eps2, eps), composed_r(bk, eps, eps2))
    return _scalar_valuation(bk, M)


def equal_up_to_unit(bk, A, B):
    """A = c(z) B for a unit c, decided modulo the truncation."""
    va, vb = bk.min_val(A), bk.min_val(B)
    if va != vb:
        return False
    if va is None:
        return True
    D = len(bk.ev0(A))
    keep = bk.N - va
    Au, Bu = bk.unshift(A, va), bk.unshift(B, vb)
    for i in range(D):
        for j in range(D):
            b = bk.series_entries(Bu, i, j)
            if not bk.v_zero(b[0]):
                a = bk.series_entries(Au, i, j)
                break
        else:
            continue
        break
    # c = a / b as a series
    binv = [bk.v_inv(b[0])]
    for k in range(1, keep):
        s = None
        for l in range(1, k + 1):
            t = bk.v_mul(b[l], binv[k - l])
            s = t if s is None else bk.v_add(s, t)
        binv.append(bk.v_neg(bk.v_mul(s, binv[0])))
    c = [_conv_at(bk, a, binv, k) for k in range(keep)]
    for i in range(D):
        for j in range(D):
            x = bk.series_entries(Au, i, j)
            y = bk.series_entries(Bu, i, j)
            for k in range(keep):
                if not bk.v_zero(bk.v_add(x[k], bk.v_neg(_conv_at(bk, c, y, k)))):
                    return False
    return True


def _conv_at(bk, f, g, k):
    acc = None
    for l in range(k + 1):
        t = bk.v_mul(f[l], g[k - l])
        acc = t if acc is None else bk.v_add(acc, t)
    return acc


# --- the filtration ----------------------------------------------------------

@dataclass
class FiltrationData:
    eps: tuple
    dims: dict                 # n -> dim F_n over the window
    graded: dict               # n -> dim Gr_n (nonzero only)
    low: int                   # F_n is everything for n <= low
    high: int                  # F_n = 0 for n >= high
    subspaces: dict = field(default_factory=dict)   # n -> list of vectors (ev0 columns)
    smith_exponents: tuple = ()

    def dim_F(self, n):
        if n <= self.low:
            return self.dims[self.low]
        if n >= self.high:
            return 0
        return self.dims[n]

    def subspace(self, n, D):
        if n <= self.low:
            return self.subspaces.get(self.low) or [_unit(D, i) for i in range(D)]
        if n >= self.high:
            return []
        return self.subspaces[n]


def _unit(D, i):
    return [1 if k == i else 0 for k in range(D)]


def _filtration_once(bk, eps, want_subspaces=False):
    d = len(eps)
    D = 2 ** d
    es = tuple(sorted(eps, reverse=True))
    ec = tuple(sorted(eps))
    Rs = composed_r(bk, es, eps)
    Rc = composed_r(bk, eps, ec)
    G = bk.mul(Rc, Rs)
    a, _U, Q = bk.smith(G)
    if any(x is None for x in a):
        raise InsufficientPrecision("Smith form of R_c R_s not certified", bk.N)
    A = max(a)
    neff = bk.N - 2 * A - 1
    if neff < 1:
        raise InsufficientPrecision("truncation too small for the diagonal exponents", bk.N)
    f = bk.mul(Rs, Q)
    dims, subs = {}, {}

    def level(n):
        e = [_ceil_half(n - ai) for ai in a]
        emin = min(e)
        if -emin >= neff:
            raise InsufficientPrecision(f"level {n} needs more than {bk.N} coefficients", bk.N)
        b, Un, _Qn = bk.smith(bk.scale_cols(f, [x - emin for x in e]))
        idx = []
        for i, bi in enumerate(b):
            if bi is not None and bi < neff and bi + emin <= 0:
                idx.append(i)
        dims[n] = len(idx)
        if want_subspaces:
            ev = bk.ev0(Un)
            subs[n] = [[ev[r][i] for r in range(D)] for i in idx]

    n = 0
    level(n)
    while dims[n] != D:
        n -= 1
        level(n)
    low = n
    n = 0
    while dims[n] != 0:
        n += 1
        level(n)
    high = n
    ns = sorted(dims)
    for x, y in zip(ns, ns[1:]):
        if dims[y] > dims[x]:
            raise ValidationFailure(f"filtration is not decreasing at level {y}")
    graded = {x: dims[x] - dims[x + 1] for x in range(low, high) if dims[x] - dims[x + 1]}
    return FiltrationData(tuple(eps), dims, graded, low, high, subs, tuple(a))


@dataclass
class FiltrationReport:
    eps: tuple
    graded_dims: dict
    poincare: LaurentHalf
    precision_used: int
    backend: str
    data: FiltrationData = None

    def to_json(self):
        return {"eps": list(self.eps),
                "graded_dims": {str(k): v for k, v in sorted(self.graded_dims.items())},
                "poincare": self.poincare.to_json(),
                "precision_used": self.precision_used,
                "backend": self.backend}


def _poincare(graded):
    return sum((LaurentHalf.t(n, v) for n, v in graded.items()), LaurentHalf())


RATIONAL_Q = (Fraction(2), Fraction(3, 2))


def _make_backend(kind, order, prime_index=0):
    if kind == "exact":
        return ExactBackend(order)
    if kind == "rational":
        return ExactBackend(order, RATIONAL_Q[prime_index])
    p, q0 = PRIMES[prime_index]
    return ModPBackend(p, q0, order)


def jantzen_filtration(eps, backend="modp", precision=None, robust=True, max_tries=4,
                       subspaces=False, verify_inner=False):
    """Graded dimensions of the Jantzen filtration of the mixed product eps.

    The computation is repeated at precision N + 4 (robust=True) and, for the
    modular backend, over a second prime; all runs must agree.  When the
    precision is found insufficient it is increased up to max_tries times.
    """
    eps = check_sequence(eps)
    N = precision or default_precision(eps)
    if backend not in ("modp", "rational", "exact"):
        raise ValidationError(f"unknown backend {backend!r}")
    primes = [0] if backend == "exact" else range(len(PRIMES))
    last = None
    for _attempt in range(max_tries):
        try:
            runs = []
            for pi in primes:
                for extra in ((0, 4) if robust else (0,)):
                    bk = _make_backend(backend, N + extra, pi)
                    runs.append(_filtration_once(bk, eps, want_subspaces=subspaces and not runs))
            first = runs[0]
            for r in runs[1:]:
                if r.graded != first.graded:
                    raise InsufficientPrecision("runs at different precision or prime disagree", N)
            if verify_inner:
                verify_inner_sum(eps, first, N)
            label = "; ".join(sorted({_make_backend(backend, N, pi).label() for pi in primes}))
            return FiltrationReport(eps, dict(sorted(first.graded.items())), _poincare(first.graded),
                                    N, label, first)
        except InsufficientPrecision as exc:
            last = exc
            N += 8
    raise InsufficientPrecision(f"precision exhausted at N = {N}: {last}", N)


# --- brute-force inner sum ---------------------------------------------------

def _to_series_rows(bk, A):
    if bk.name != "modp":
        return A
    from .series import Fp
    D = len(bk.ev0(A))
    F = bk.field
    return [[ZSeries([Fp(x, bk.p) for x in bk.series_entries(A, i, j)], bk.N, F.zero, F.one)
             for j in range(D)] for i in range(D)]


def inner_sum_order(data, base):
    """Truncation for the brute-force check: every shifted lattice z^k L keeps
    its Smith data certified when |k| stays below B + max(|low|, |high|)."""
    B = max(data.smith_exponents) + 1
    return base + 4 * (B + max(abs(data.low), abs(data.high)))


def verify_inner_sum(eps, data, base_order, prime_index=0):
    """Compare dim F_n with the sum over k of z^k L_s meet z^(n-k) L_c, computed
    with generic lattice meets and joins."""
    from .lattice import LatticeBasis, _scaled_inverse, lattice_join, lattice_meet, relative_divisors
    bk = _make_backend("modp", inner_sum_order(data, base_order), prime_index)
    d = len(eps)
    D = 2 ** d
    es = tuple(sorted(eps, reverse=True))
    ec = tuple(sorted(eps))
    Rs = _to_series_rows(bk, composed_r(bk, es, eps))
    Rc = _to_series_rows(bk, composed_r(bk, eps, ec))
    Ls = LatticeBasis.from_rows(Rs)
    amax, Rc_inv = _scaled_inverse(Rc)
    Lc = LatticeBasis.from_rows(Rc_inv, -amax)
    one = ZSeries([bk.field.one], bk.N, bk.field.zero, bk.field.one)
    zero = ZSeries([], bk.N, bk.field.zero, bk.field.one)
    Mt = LatticeBasis.from_rows([[one if i == j else zero for j in range(D)] for i in range(D)])
    B = max(data.smith_exponents) + 1
    for n in range(data.low, data.high + 1):
        acc = None
        for k in range(-B, n + B + 1):
            piece = lattice_meet(Ls.scaled(k), Lc.scaled(n - k))
            acc = piece if acc is None else lattice_join(acc, piece)
        inner = lattice_meet(Mt, acc)
        c = relative_divisors(Mt, inner)
        dim = sum(1 for x in c if x <= 0)
        if dim != data.dim_F(n):
            raise ValidationFailure(f"inner-sum check failed at level {n}: {dim} vs {data.dim_F(n)}")
    return True


# --- properties --------------------------------------------------------------

def sl2():
    return CartanDatum.of_type("A1")


def poincare_bridge(eps, report=None, table=None):
    """(ok, lattice side, torus side) for sum_n t^n dim Gr_n against the Jantzen class."""
    from .characters import char_table
    eps = check_sequence(eps)
    report = report or jantzen_filtration(eps)
    datum = sl2()
    table = table or char_table(datum)
    cls = jantzen_class(datum, eps, table)
    torus = LaurentHalf()
    for m, c in cls.terms.items():
        torus = torus + c * LaurentHalf.const(table.dim_simple(m))
    return report.poincare == torus, report.poincare, torus


def check_dual_mirror(eps, backend="modp"):
    """dim Gr_n of the standard ordering equals dim Gr_{-n} of the costandard one."""
    eps = check_sequence(eps)
    s = jantzen_filtration(tuple(sorted(eps, reverse=True)), backend).graded_dims
    c = jantzen_filtration(tuple(sorted(eps)), backend).graded_dims
    return s == {-n: v for n, v in c.items()}


def check_specialized_r_props(eps, eps2, precision=None, prime_index=0):
    """Containments r(F_n eps) in F_{n - 2 beta}(eps2) (and the alpha-shifted one).

    Returns a dict with beta, alpha (when eps2 <= eps) and the list of failing levels.
    """
    eps, eps2 = check_sequence(eps), check_sequence(eps2)
    rel = eps_preorder(eps, eps2, _ALPHA)
    if rel not in (LESS, EQUIV, GREATER):
        raise NotComparable(f"{eps} and {eps2} are not comparable")
    N = precision or default_precision(eps) + 8
    bk = _make_backend("modp", N, prime_index)
    D = 2 ** len(eps)
    f1 = _filtration_once(bk, eps, want_subspaces=True)
    f2 = _filtration_once(bk, eps2, want_subspaces=True)
    R = composed_r(bk, eps, eps2)
    beta = bk.min_val(R)
    r0 = bk.ev0(bk.unshift(R, beta))
    out = {"relation": rel, "beta": beta, "failures": []}
    shifts = []
    if rel in (LESS, EQUIV):
        shifts.append(("up", -2 * beta))
    if rel in (GREATER, EQUIV):
        alpha = alpha_val(bk, eps2, eps)
        out["alpha"] = alpha
        shifts.append(("down", 2 * alpha - 2 * beta))
    for n in range(min(f1.low, f2.low) - 1, max(f1.high, f2.high) + 2 * beta + 2):
        src = [_apply(bk, r0, v) for v in f1.subspace(n, D)]
        for tag, s in shifts:
            tgt = f2.subspace(n + s, D)
            if _rank(bk, tgt + src) != _rank(bk, tgt):
                out["failures"].append({"kind": tag, "level": n})
    return out


def bridge_sequences(max_len=4, entries=(1, 3, 5, 7)):
    from itertools import product
    for d in range(1, max_len + 1):
        yield from product(entries, repeat=d)
