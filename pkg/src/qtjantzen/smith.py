"""Smith normal form over the truncated power series ring k[[z]]/z^N.

Pivoting always picks the entry of minimal valuation, ties broken by the
smallest (row, column).  With that rule every elimination step stays exact
modulo z^N (the multiplier loses v digits but multiplies an entry of
valuation at least v).
"""
from dataclasses import dataclass

from .errors import InsufficientPrecision
from .series import ZSeries


@dataclass(frozen=True)
class SmithResult:
    exponents: tuple   # a_1 <= ... <= a_d
    P: list            # P * M * Q = diag(z^a)
    Q: list
    U: list            # U = P^-1, so M = U * diag * V
    V: list            # V = Q^-1
    order: int


def _identity(d, proto):
    one = proto.like([proto.one])
    zero = proto.like([])
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


def mat_mul(A, B):
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = None
            for l in range(m):
                term = A[i][l] * B[l][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def series_smith(M, order=None, partial=False):
    """Smith form of a square matrix of ZSeries.

    Raises InsufficientPrecision when the remaining block vanishes modulo the
    truncation before the diagonal is complete (the determinant valuation is
    then not certified below N).  With partial=True the uncertified tail is
    reported as None exponents instead (their true values are at least N).
    """
    d = len(M)
    if d == 0:
        return SmithResult((), [], [], [], [], order or 0)
    proto = M[0][0]
    N = order or min(x.order for row in M for x in row)
    A = [[x.truncate(N) for x in row] for row in M]
    P = _identity(d, A[0][0])
    Pinv = _identity(d, A[0][0])
    Q = _identity(d, A[0][0])
    Qinv = _identity(d, A[0][0])
    exps = []
    for k in range(d):
        best = None
        for i in range(k, d):
            for j in range(k, d):
                v = A[i][j].valuation()
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            if partial:
                exps += [None] * (d - k)
                break
            raise InsufficientPrecision(
                f"Smith pivot {k} not certified below truncation order {N}", N)
        v, pi, pj = best
        if pi != k:
            A[k], A[pi] = A[pi], A[k]
            P[k], P[pi] = P[pi], P[k]
            for row in Pinv:
                row[k], row[pi] = row[pi], row[k]
        if pj != k:
            for row in A:
                row[k], row[pj] = row[pj], row[k]
            for row in Q:
                row[k], row[pj] = row[pj], row[k]
            Qinv[k], Qinv[pj] = Qinv[pj], Qinv[k]
        unit = A[k][k].unshift(v)
        uinv = unit.inverse()
        # normalise the pivot to z^v: row k *= uinv
        A[k] = [x * uinv if j >= k else x for j, x in enumerate(A[k])]
        P[k] = [x * uinv for x in P[k]]
        for row in Pinv:
            row[k] = row[k] * unit
        # clear column k below the pivot
        for i in range(k + 1, d):
            x = A[i][k]
            if x.is_zero_mod():
                continue
            f = x.unshift(v)
            for j in range(k, d):
                A[i][j] = A[i][j] - (f * A[k][j].unshift(v)).shift(v) if j > k else A[i][j].like([])
            P[i] = [a - f * b for a, b in zip(P[i], P[k])]
            for row in Pinv:
                row[k] = row[k] + row[i] * f
        # clear row k right of the pivot
        for j in range(k + 1, d):
            x = A[k][j]
            if x.is_zero_mod():
                A[k][j] = x.like([])
                continue
            g = x.unshift(v)
            A[k][j] = x.like([])
            for row in Q:
                row[j] = row[j] - row[k] * g
            Qinv[k] = [a + g * b for a, b in zip(Qinv[k], Qinv[j])]
        A[k][k] = A[k][k].like([A[k][k].one]).shift(v).truncate(N)
        exps.append(v)
    return SmithResult(tuple(exps), P, Q, Pinv, Qinv, N)
