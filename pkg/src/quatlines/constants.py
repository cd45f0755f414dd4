"""Named matrices and vectors for the H24 < H120 < H720 < H1440 family.

Every entry is written exactly as a combination of rationals and square
roots; :func:`quatlines.grouplib.verify_constants` re-derives the relations
that tie these constants together.
"""
from __future__ import annotations

from fractions import Fraction as Fr

from .numfield import FieldElem, sqrt
from .quatalg import Quaternion, QI, QJ, QK, QONE, QZERO
from .qlinalg import QuatMatrix, QuatVector

r2, r3, r5, r6, r10, r15, r30 = (sqrt(n) for n in (2, 3, 5, 6, 10, 15, 30))
half = Fr(1, 2)

tau = (1 + r5) / 2
"""The golden ratio (1 + sqrt5)/2."""

omega = Quaternion(-half, r3 / 2)
"""Primitive cube root of unity -1/2 + (sqrt3/2) i."""


def Q(a=0, b=0, c=0, d=0):
    return Quaternion(a, b, c, d)


# -- the A6-permuting pair (and its conjugating matrix) ------------------

U_a = QuatMatrix([
    [Q(0, 2 / r15, -r2 / r15), Q(0, r2 / r5, -1 / r5)],
    [Q(0, r2 / r5, -1 / r5), Q(0, -2 / r15, r2 / r15)],
])

U_b = QuatMatrix([
    [
        Q(1 / (2 * r5), 1 / (2 * r3), (3 - r5) / (2 * r30), (r5 + 1) / (2 * r10)),
        Q(r3 / (2 * r10), -1 / (2 * r2), (3 + r5) / (4 * r5), -r3 / (5 + r5)),
    ],
    [
        Q(r3 / (2 * r10), 1 / (2 * r2), (3 - r5) / (4 * r5), r3 / (5 - r5)),
        Q(-1 / (2 * r5), 1 / (2 * r3), -(3 * r5 + 5) / (10 * r6), (r5 - 1) / (2 * r10)),
    ],
])

_alpha = r2 * r3 / 3 + r2 * r3 * r5 / 3 - 5 * r3 / 6 - r3 * r5 / 6
_beta = r2 * r3 / 3 - r3 * r5 / 6
_gamma = r2 * r3 * r5 / 6 + r2 * r3 / 2 - 2 * r3 / 3
_delta = r2 * r3 * r5 / 6 + r3 * r5 / 3 - r2 * r3 / 6 + r3 / 3

A = QuatMatrix([
    [
        Q(-half - r5 / 2, _alpha, -_alpha, half + r5 / 2),
        Q(-2 * _beta, 1, -1, 2 * _beta),
    ],
    [
        Q(-_gamma, r2 / 2 + 2 - r2 * r5 / 2),
        Q(1 - 3 * r2 / 2 + r5 - r2 * r5 / 2, -_delta),
    ],
])
"""Conjugates the U_a/U_b group onto H720 (A^* A is a positive scalar)."""

A_scalar = Fr(20, 3) * (4 - (r5 / 5) * (5 * r2 - 4) - r2)
"""The diagonal value c of A^* A."""

AUaAinv = QuatMatrix([
    [
        Q(0, -1 / (2 * r3), -1 / r3, half),
        Q(1 / (2 * r6), 1 / (2 * r2), -1 / (2 * r2), -1 / (2 * r6)),
    ],
    [
        Q(-1 / (2 * r6), 1 / (2 * r2), -1 / (2 * r2), -1 / (2 * r6)),
        Q(0, -1 / r3, -1 / r3),
    ],
])

AUbAinv = QuatMatrix([
    [
        Q(half, 1 / r3, -1 / (2 * r3)),
        Q(1 / (2 * r6), 1 / (2 * r2), 1 / (2 * r2), 1 / (2 * r6)),
    ],
    [
        Q(-1 / (2 * r6), -1 / (2 * r2), -1 / (2 * r2), 1 / (2 * r6)),
        Q(-half, 1 / (2 * r3), 1 / r3),
    ],
])

# -- Blichfeldt generators ----------------------------------------------

a1 = QuatMatrix.diag(QONE, omega * omega)
a2 = QuatMatrix([
    [Q(0, 1 / r3), Q(0, 0, 0, -r2 / r3)],
    [Q(0, 0, 0, -r2 / r3), Q(0, 1 / r3)],
])
a3 = QuatMatrix.diag(Q(0, -r3 / 2, 0, half), QK)
a4 = QuatMatrix.diag(QK, -QK)
a5 = QuatMatrix.diag(QJ, QJ)

u = QuatMatrix.diag(QONE, QK)
"""Basis change [e1, e2 k] taking the a_j to the b_j."""

b1 = QuatMatrix.diag(QONE, omega)
b2 = QuatMatrix([
    [Q(0, 1 / r3), Q(r2 / r3)],
    [Q(-r2 / r3), Q(0, -1 / r3)],
])
b3 = QuatMatrix.diag(Q(0, -r3 / 2, 0, half), QK)
b4 = QuatMatrix.diag(QK, -QK)
b5 = QuatMatrix.diag(QJ, -QJ)
"""u^-1 a5 u.  A common variant reads diag(j, j), which does not generate a finite group with b1..b4."""
B5_REFERENCE = QuatMatrix.diag(QJ, QJ)

BLICHFELDT_A = (a1, a2, a3, a4, a5)
BLICHFELDT_B = (b1, b2, b3, b4, b5)

b1b2 = QuatMatrix([
    [Q(0, 1 / r3), Q(r2 / r3)],
    [Q(1 / r6, -1 / r2), Q(half, 1 / (2 * r3))],
])
b3b4 = QuatMatrix.diag(Q(-half, 0, r3 / 2), QONE)
THREE_REFLECTIONS = (b1, b1b2, b3b4)

g2 = QuatMatrix([
    [Q(0, 1 / r3), Q(1 / (2 * r6), 1 / (2 * r2), 1 / (2 * r2), -r3 / (2 * r2))],
    [Q(1 / r6, 0, 1 / r2), Q(-half, 1 / (2 * r3))],
])
"""Order-5 element which, with b3, generates the stabilizer of the line of w."""

r = QuatMatrix([[QZERO, Q(1, 0, 0, 1)], [Q(1, 0, 0, -1), QZERO]]).scale(1 / r2)
"""Order-2 reflection in H1440 exchanging the lines of w and w_perp."""

# -- vectors ------------------------------------------------------------

e1 = QuatVector([QONE, QZERO])
e2 = QuatVector([QZERO, QONE])

_s25 = r2 / r5
_s35 = r3 / r5
ET_LINES = (
    e1,
    QuatVector([_s25, _s35]),
    QuatVector([_s25, Q(-r3 / (4 * r5), Fr(3, 4))]),
    QuatVector([_s25, Q(-r3 / (4 * r5), Fr(-1, 4), 1 / r2)]),
    QuatVector([_s25, Q(-r3 / (4 * r5), Fr(-1, 4), -1 / (2 * r2), r3 / (2 * r2))]),
    QuatVector([_s25, Q(-r3 / (4 * r5), Fr(-1, 4), -1 / (2 * r2), -r3 / (2 * r2))]),
)
"""Six unit vectors at pairwise angle 2/5 (the lines v_1..v_6)."""

_top = r2 + r10
w = QuatVector([_top, Q(r3, -1, 1, r3)])
w_perp = QuatVector([Q(-r3, -1, 1, r3), _top])

NICE_LINES = (
    w,
    QuatVector([_top, Q(0, 2, -2)]),
    QuatVector([_top, Q(-r3, -1, 1, -r3)]),
    QuatVector([Q(-r3, -1, -1, -r3), _top]),
    QuatVector([Q(0, 2, 2), _top]),
    QuatVector([Q(r3, -1, -1, r3), _top]),
)
"""The six lines w, b1 w, b1^2 w, b2 w, b1 b2 w, b1^2 b2 w."""

NICE_LINES_PERP = (
    w_perp,
    QuatVector([Q(0, 2, -2), _top]),
    QuatVector([Q(r3, -1, 1, -r3), _top]),
    QuatVector([_top, Q(r3, -1, -1, -r3)]),
    QuatVector([_top, Q(0, 2, 2)]),
    QuatVector([_top, Q(-r3, -1, -1, r3)]),
)

MUB_VECTORS = (
    e1,
    e2,
    QuatVector([QONE, QONE]),
    QuatVector([QONE, -QONE]),
    QuatVector([QONE, QI]),
    QuatVector([QONE, -QI]),
    QuatVector([QONE, QJ]),
    QuatVector([QONE, -QJ]),
    QuatVector([QONE, QK]),
    QuatVector([QONE, -QK]),
)

SIC_VECTORS = (
    e1,
    QuatVector([Q(0, 1 / r3), Q(-r2 / r3)]),
    QuatVector([Q(0, 1 / r3), Q(1 / r6, -1 / r2)]),
    QuatVector([Q(0, 1 / r3), Q(1 / r6, 1 / r2)]),
)

FIDUCIAL_15 = QuatVector([QONE, QJ])
FIDUCIAL_20 = e1
FIDUCIAL_30 = QuatVector([Q(0, r2), Q(1 + r3)])

# [b3]_B and [g2]_B in the basis [w, w_perp], reference values (its b3 entry
# is -(sqrt3/2) i + k, which has norm 7/4, so it is kept only for reporting)
REFERENCE_B3_DIAG = (Q(0, -r3 / 2, 0, 1), QK)
REFERENCE_G2_DIAG = (
    Q(1 / (2 * tau), tau / r3, 1 / (2 * r3 * tau)),
    Q(-tau / 2, tau / (2 * r3), -1 / (2 * r3 * tau), 1 / (2 * tau)),
)

GROUP_GENERATORS = {
    "h3": (b1,),
    "h24": (b1, b2),
    "h120": (b1, b2, b3),
    "h720": (b1, b2, b3, b4),
    "h1440": (b1, b2, b3, b4, b5),
    "ua-ub": (U_a, U_b),
    "blichfeldt-a": (a1, a2, a3, a4, a5),
    "stab-w": (b3, g2),
}

FIELD_NAMES = {"tau": tau}
__all__ = [name for name in dir() if not name.startswith("_") and name not in {"annotations", "Fr", "Q"}]
