"""Full-rank O-lattices in K^d, where O = k[[z]] and K = k((z)).

A lattice is stored as z^shift times the column span of a series matrix whose
determinant has certified valuation below the truncation.
"""
from dataclasses import dataclass

from .errors import InsufficientPrecision
from .smith import mat_mul, series_smith


@dataclass(frozen=True)
class LatticeBasis:
    basis: tuple       # d x d tuple of tuples of ZSeries (columns span the lattice)
    shift: int = 0

    @classmethod
    def from_rows(cls, rows, shift=0):
        return cls(tuple(tuple(r) for r in rows), shift)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def order(self):
        return min(x.order for row in self.basis for x in row)

    def matrix(self):
        return [list(r) for r in self.basis]

    def scaled(self, k):
        return LatticeBasis(self.basis, self.shift + k)

    def rescale_columns(self, units):
        rows = [[x * units[j] for j, x in enumerate(r)] for r in self.basis]
        return LatticeBasis.from_rows(rows, self.shift)


def _scaled_inverse(B):
    """(amax, z^amax * B^-1) with B^-1 assembled from a Smith decomposition."""
    sm = series_smith([list(r) for r in B])
    amax = max(sm.exponents) if sm.exponents else 0
    d = len(B)
    # z^amax B^-1 = Q diag(z^(amax - a)) P
    QD = [[sm.Q[i][j].shift(amax - sm.exponents[j]).truncate(sm.order) for j in range(d)]
          for i in range(d)]
    return amax, mat_mul(QD, sm.P)


def common_basis(L1, L2):
    """(c, F): F spans L1 and z^c_i F_i spans L2, with c ascending."""
    amax, Binv = _scaled_inverse(L1.basis)
    X = mat_mul(Binv, [list(r) for r in L2.basis])
    sm = series_smith(X)
    c = tuple(a - amax + L2.shift - L1.shift for a in sm.exponents)
    F = mat_mul([list(r) for r in L1.basis], sm.U)
    return c, F


def relative_divisors(L1, L2):
    """Exponents c_1 <= ... <= c_d of L2 relative to L1."""
    if L1.dim != L2.dim:
        raise ValueError("lattices live in different dimensions")
    return list(common_basis(L1, L2)[0])


def _from_common(L1, c, F, pick):
    d = len(F)
    expo = [pick(ci) for ci in c]
    low = min(expo) if expo else 0
    rows = [[F[i][j].shift(expo[j] - low) for j in range(d)] for i in range(d)]
    return LatticeBasis.from_rows(rows, L1.shift + low)


def lattice_meet(L1, L2):
    c, F = common_basis(L1, L2)
    return _from_common(L1, c, F, lambda x: max(0, x))


def lattice_join(L1, L2):
    c, F = common_basis(L1, L2)
    return _from_common(L1, c, F, lambda x: min(0, x))


def contains(L, vec):
    """Membership test for a column vector of ZSeries (given as a list)."""
    amax, Binv = _scaled_inverse(L.basis)
    coords = mat_mul(Binv, [[x] for x in vec])
    need = amax + L.shift
    for (x,) in coords:
        v = x.valuation()
        if v is None:
            if x.order < need:
                raise InsufficientPrecision("membership not decidable at this truncation", x.order)
            continue
        if v < need:
            return False
    return True


def sublattice(L1, L2):
    """L2 is contained in L1."""
    return all(ci >= 0 for ci in relative_divisors(L1, L2))
