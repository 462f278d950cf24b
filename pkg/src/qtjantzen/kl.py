"""Kazhdan-Lusztig recursion for a unitriangular standard basis.

Given labels in a total order refining the partial order (largest first)
and the bar matrix A with bar(E(l)) = sum_v A[l][v] E(v), A[l][l] = 1,
compute P with E(l) = L(l) + sum_{m < l} P[l][m] L(m), P in tZ[t],
L bar-invariant.  Used both for (q,t)-characters and dual canonical bases.
"""
from .errors import TriangularityViolation
from .laurent import LaurentHalf


def kl_polynomials(labels, bar_matrix):
    """labels: list, index 0 is the largest.  Returns dict l -> {m: P_lm}."""
    pos = {l: k for k, l in enumerate(labels)}
    one = LaurentHalf.const(1)
    P = {}
    for k in range(len(labels) - 1, -1, -1):
        lam = labels[k]
        row = bar_matrix[lam]
        if row.get(lam) != one:
            raise TriangularityViolation(f"bar matrix diagonal at {lam} is not 1")
        for nu in row:
            if pos[nu] < k:
                raise TriangularityViolation(f"bar expansion of {lam} involves the larger label {nu}")
        Pl = {lam: one}
        # mu runs downwards from lam
        for j in range(k + 1, len(labels)):
            mu = labels[j]
            r = LaurentHalf()
            for nu, a in row.items():
                if nu == lam:
                    continue
                pnm = P[nu].get(mu) if nu in P else None
                if pnm:
                    r = r + a * pnm
            if not r:
                continue
            if r.coeff2(0) or r.bar() != -r:
                raise TriangularityViolation(f"KL recursion inconsistent at ({lam},{mu}): r = {r}")
            Pl[mu] = -r.positive_part()
        P[lam] = Pl
    return P


def invert_unitriangular(labels, P):
    """Q with L(l) = sum_m Q[l][m] E(m), from E(l) = sum_m P[l][m] L(m)."""
    one = LaurentHalf.const(1)
    Q = {}
    for k in range(len(labels) - 1, -1, -1):
        lam = labels[k]
        Ql = {lam: one}
        for mu, p in P[lam].items():
            if mu == lam:
                continue
            for nu, q in Q[mu].items():
                s = Ql.get(nu, LaurentHalf()) - p * q
                if s:
                    Ql[nu] = s
                else:
                    Ql.pop(nu, None)
        Q[lam] = Ql
    return Q
