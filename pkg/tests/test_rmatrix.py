from fractions import Fraction

import numpy as np
import pytest

from qtjantzen.errors import ValidationError
from qtjantzen.rmatrix import (FpField, QField, RationalField, delta, pole_order, renorm_entries,
                               renorm_r, t_matrix)

Q0 = Fraction(3)


def _at(T, q, u):
    return np.array([[e.at(q, u) for e in row] for row in T], dtype=object)


def _spectral(a, b, x):
    # u = exp((j - j') z) specialises to x^(a - b) at a common point
    return x ** (a - b)


@pytest.mark.parametrize("a,b", [(0, 2), (2, 0), (0, 4), (0, 6), (4, 0)])
def test_unitarity(a, b):
    x = Fraction(5, 7)
    P = _at(t_matrix(b, a), Q0, _spectral(b, a, x)).dot(_at(t_matrix(a, b), Q0, _spectral(a, b, x)))
    assert (P == np.eye(4, dtype=object)).all()


def _kron(A, B):
    return np.array([[A[i // len(B)][k // len(B)] * B[i % len(B)][k % len(B)]
                      for k in range(len(A) * len(B))] for i in range(len(A) * len(B))], dtype=object)


@pytest.mark.parametrize("abc", [(0, 2, 4), (4, 2, 0), (0, 4, 2), (2, 0, 6)])
def test_yang_baxter(abc):
    a, b, c = abc
    x = Fraction(2, 3)
    one = np.eye(2, dtype=object)

    def R(s, t):
        return _at(t_matrix(s, t), Q0, _spectral(s, t, x))

    left = _kron(R(b, c), one).dot(_kron(one, R(a, c))).dot(_kron(R(a, b), one))
    right = _kron(one, R(a, b)).dot(_kron(R(a, c), one)).dot(_kron(one, R(b, c)))
    assert (left == right).all()


def test_pole_orders():
    assert pole_order(0, 2) == 1
    assert pole_order(2, 0) == 0
    assert pole_order(0, 4) == 0
    # the denominator of T(0,2) vanishes at u = 1
    with pytest.raises(ZeroDivisionError):
        t_matrix(0, 2)[1][1].at(Q0, 1)


@pytest.mark.parametrize("a,b", [(0, 2), (2, 0), (0, 4), (6, 2)])
def test_renormalized_is_regular_and_nonzero_at_one(a, b):
    M = _at(renorm_entries(a, b), Q0, Fraction(1))
    assert M.any()


def test_sample_entries():
    T = t_matrix(0, 4)
    q, u = Fraction(2), Fraction(3)
    # c = b - a - 2 = 2, den = u - q^2
    assert T[1][1].at(q, u) == (1 - Fraction(1, 4)) * u / (u - 4)
    assert T[2][2].at(q, u) == (16 - 4) / (u - 4)
    assert T[1][2].at(q, u) == T[2][1].at(q, u) == (u / 2 - 8) / (u - 4)
    assert delta(0, 4).at(q, u) == (16 - u / 4) / (u - 4)


def test_odd_shift_rejected():
    with pytest.raises(ValidationError):
        t_matrix(0, 1)
    with pytest.raises(ValidationError):
        renorm_r(2, 1, 4)
    with pytest.raises(ValidationError):
        renorm_r(3, 3, 4)


def test_series_fields_agree():
    # exact Q(q) series specialised at q0 equals the rational-field series
    ex = renorm_r(3, 1, 6, QField())
    ra = renorm_r(3, 1, 6, RationalField(Fraction(2)))
    p = 1000003
    fp = renorm_r(3, 1, 6, FpField(p, 2))
    for i in range(4):
        for j in range(4):
            for k in range(6):
                e = ex[i][j].coeffs[k] if k < len(ex[i][j].coeffs) else None
                r = ra[i][j].coeffs[k] if k < len(ra[i][j].coeffs) else Fraction(0)
                f = fp[i][j].coeffs[k].v if k < len(fp[i][j].coeffs) else 0
                ev = e(Fraction(2)) if e is not None else Fraction(0)
                assert ev == r
                assert (r.numerator - f * r.denominator) % p == 0
