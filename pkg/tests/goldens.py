"""Reference values used by the golden tests (type A1 unless stated).

Index j stands for the fundamental module L(Y_{1,j-1}).  Classes are given as
{monomial text: {t exponent: coefficient}} in the basis of simple classes.
"""
from fractions import Fraction

from qtjantzen.cartan import CartanDatum, IMonomial
from qtjantzen.laurent import LaurentHalf
from qtjantzen.mixed import JClass

A1 = CartanDatum.of_type("A1")

S1, S3, S5 = "Y(1,0)", "Y(1,2)", "Y(1,4)"
L_331 = "Y(1,0)Y(1,2)^2"
L_531 = "Y(1,0)Y(1,2)Y(1,4)"
L_3311 = "Y(1,0)^2Y(1,2)^2"
K_3311 = "Y(1,0)Y(1,2)"
TRIV = "1"


def cls(table, datum=A1):
    terms = {}
    for mono, coeffs in table.items():
        c = LaurentHalf()
        for e, v in coeffs.items():
            c = c + LaurentHalf.t(Fraction(e), v)
        terms[IMonomial.parse(mono, datum) if mono != "1" else IMonomial()] = c
    return JClass(datum, terms)


def mono(text, datum=A1):
    return IMonomial() if text == "1" else IMonomial.parse(text, datum)


TWO_FACTOR_CLASSES = {
    (3, 1): {K_3311: {0: 1}, TRIV: {1: 1}},
    (1, 3): {K_3311: {0: 1}, TRIV: {-1: 1}},
}

THREE_FACTOR_CLASSES = {
    (3, 3, 1): {L_331: {0: 1}, S3: {2: 1}},
    (3, 1, 3): {L_331: {0: 1}, S3: {0: 1}},
    (1, 3, 3): {L_331: {0: 1}, S3: {-2: 1}},
}

THREE_FACTOR_PRODUCTS = [
    ((S3, S3, S1), {L_331: {-2: 1}, S3: {0: 1}}),
    ((S3, S1, S3), {L_331: {0: 1}, S3: {0: 1}}),
    ((S1, S3, S3), {L_331: {2: 1}, S3: {0: 1}}),
]

SPREAD_CLASSES = {
    (5, 3, 1): {L_531: {0: 1}, S1: {1: 1}, S5: {1: 1}},
    (3, 5, 1): {L_531: {0: 1}, S1: {-1: 1}, S5: {1: 1}},
    (3, 1, 5): {L_531: {0: 1}, S1: {-1: 1}, S5: {1: 1}},
    (5, 1, 3): {L_531: {0: 1}, S1: {1: 1}, S5: {-1: 1}},
    (1, 5, 3): {L_531: {0: 1}, S1: {1: 1}, S5: {-1: 1}},
    (1, 3, 5): {L_531: {0: 1}, S1: {-1: 1}, S5: {-1: 1}},
}

SPREAD_PRODUCTS = [
    ((S5, S3, S1), {L_531: {-1: 1}, S1: {0: 1}, S5: {0: 1}}),
    ((S1, S3, S5), {L_531: {1: 1}, S1: {0: 1}, S5: {0: 1}}),
    ((S3, S5, S1), {L_531: {1: 1}, S1: {0: 1}, S5: {2: 1}}),
    ((S5, S1, S3), {L_531: {1: 1}, S1: {2: 1}, S5: {0: 1}}),
]

# The reference value of m_3(S5, S1, S3) carries t[S_5]; that contradicts the
# reference class of (5, 1, 3), of which m_3 must be a scalar multiple.  The
# consistent coefficient (1) is used above; the reference value is kept for
# the consistency test.
SPREAD_REFERENCE_INCONSISTENT = ((S5, S1, S3), {L_531: {1: 1}, S1: {2: 1}, S5: {1: 1}}, (5, 1, 3))

# pairs (a, b): m_3(a) = t^2 m_3(b)
SPREAD_PROPORTIONAL = [((S3, S5, S1), (S3, S1, S5)), ((S5, S1, S3), (S1, S5, S3))]

FOUR_FACTOR_CLASSES = {
    (3, 3, 1, 1): {L_3311: {0: 1}, K_3311: {3: 1, 1: 1}, TRIV: {4: 1}},
    (3, 1, 3, 1): {L_3311: {0: 1}, K_3311: {1: 2}, TRIV: {2: 1}},
    (3, 1, 1, 3): {L_3311: {0: 1}, K_3311: {1: 1, -1: 1}, TRIV: {0: 1}},
    (1, 3, 3, 1): {L_3311: {0: 1}, K_3311: {1: 1, -1: 1}, TRIV: {0: 1}},
    (1, 3, 1, 3): {L_3311: {0: 1}, K_3311: {-1: 2}, TRIV: {-2: 1}},
    (1, 1, 3, 3): {L_3311: {0: 1}, K_3311: {-3: 1, -1: 1}, TRIV: {-4: 1}},
}

FOUR_FACTOR_PRODUCTS = [
    (("Y(1,2)^2", "Y(1,0)^2"), {L_3311: {-4: 1}, K_3311: {-1: 1, -3: 1}, TRIV: {0: 1}}),
    (("Y(1,0)^2", "Y(1,2)^2"), {L_3311: {4: 1}, K_3311: {3: 1, 1: 1}, TRIV: {0: 1}}),
    ((S3, S1, S3, S1), {L_3311: {-2: 1}, K_3311: {-1: 2}, TRIV: {0: 1}}),
    ((S3, "Y(1,0)^2", S3), {L_3311: {0: 1}, K_3311: {1: 1, -1: 1}, TRIV: {0: 1}}),
    ((S1, "Y(1,2)^2", S1), {L_3311: {0: 1}, K_3311: {1: 1, -1: 1}, TRIV: {0: 1}}),
    ((S1, S3, S1, S3), {L_3311: {2: 1}, K_3311: {1: 2}, TRIV: {0: 1}}),
]

# graded dimensions of the Jantzen filtration implied by the submodule chains
LATTICE_DIMS = {
    (3, 1): {0: 3, 1: 1},
    (1, 3): {-1: 1, 0: 3},
    (3, 3, 1): {0: 6, 2: 2},
    (3, 1, 3): {0: 8},
    (1, 3, 3): {-2: 2, 0: 6},
    (5, 3, 1): {0: 4, 1: 4},
    (3, 5, 1): {-1: 2, 0: 4, 1: 2},
    (3, 1, 5): {-1: 2, 0: 4, 1: 2},
    (5, 1, 3): {-1: 2, 0: 4, 1: 2},
    (1, 5, 3): {-1: 2, 0: 4, 1: 2},
    (1, 3, 5): {-1: 4, 0: 4},
    (3, 3, 1, 1): {0: 9, 1: 3, 3: 3, 4: 1},
    (3, 1, 3, 1): {0: 9, 1: 6, 2: 1},
    (3, 1, 1, 3): {-1: 3, 0: 10, 1: 3},
    (1, 3, 3, 1): {-1: 3, 0: 10, 1: 3},
    (1, 3, 1, 3): {-2: 1, -1: 6, 0: 9},
    (1, 1, 3, 3): {-4: 1, -3: 3, -1: 3, 0: 9},
}
