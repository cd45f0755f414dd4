"""Numerical search for lines fixed by a group, then exact reconstruction.

A line x H is fixed by every generator g exactly when

    |<g x, x>|^2 = <x, x>^2    for all g,

so fixed lines are the zeros of F(x) = sum_g (|<g x, x>|^2 - <x, x>^2)^2.
Zeros are located with scipy's least-squares solver from random starts,
gauge-fixed so one coordinate is 1, snapped to Q(sqrt2, sqrt3, sqrt5)
coordinate by coordinate, and finally certified in exact arithmetic.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import least_squares

from .numfield import FieldElem, BASIS_RADICANDS
from .quatalg import Quaternion, _UNIT_MUL
from .qlinalg import QuatMatrix, QuatVector, inner_product, norm2

__all__ = [
    "FixedLineCandidate",
    "real_matrix",
    "fixed_line_objective",
    "fixed_line_gradient",
    "search_fixed_lines",
    "snap_real",
    "snap_to_field",
    "certify_fixed_line",
    "maximal_memberships",
    "to_real",
    "from_real",
    "DEFAULT_TOL",
    "DEFAULT_RESTARTS",
    "DEFAULT_DENOM_BOUND",
]

DEFAULT_TOL = 1e-18
DEFAULT_RESTARTS = 200
DEFAULT_DENOM_BOUND = 12
DEFAULT_SEED = 7


def _unit_matrix(p):
    """4x4 real matrix of left multiplication by the unit e_p."""
    m = np.zeros((4, 4))
    for q in range(4):
        r, s = _UNIT_MUL[p, q]
        m[r, q] = s
    return m


_LEFT = [_unit_matrix(p) for p in range(4)]


def _conj_forms():
    """E[p] with (conj(a) b)_p = a^T E[p] b for real 4-vectors a, b."""
    e = np.zeros((4, 4, 4))
    for r in range(4):
        for s in range(4):
            # conj(e_r) = e_r for r = 0, -e_r otherwise
            sign = 1 if r == 0 else -1
            t, mu = _UNIT_MUL[r, s]
            e[t, r, s] = sign * mu
    return e


_CONJ = _conj_forms()


def quat_floats(q: Quaternion):
    return np.array([float(p) for p in q.parts])


def real_matrix(g: QuatMatrix) -> np.ndarray:
    """Real 4d x 4d matrix of g acting on real coordinates (a, b, c, d per entry)."""
    n, m = g.shape
    out = np.zeros((4 * n, 4 * m))
    for i in range(n):
        for j in range(m):
            c = quat_floats(g[i, j])
            out[4 * i:4 * i + 4, 4 * j:4 * j + 4] = sum(c[p] * _LEFT[p] for p in range(4))
    return out


def to_real(v: QuatVector) -> np.ndarray:
    return np.concatenate([quat_floats(q) for q in v.entries()])


def from_real(x) -> list:
    return [tuple(x[4 * i:4 * i + 4]) for i in range(len(x) // 4)]


def _forms(gens):
    """Symmetric 4d x 4d matrices S[g, p] with <g x, x>_p = x^T S[g, p] x."""
    mats = [g if isinstance(g, np.ndarray) else real_matrix(g) for g in gens]
    d = mats[0].shape[0] // 4
    out = []
    for m in mats:
        per = []
        for p in range(4):
            ep = np.kron(np.eye(d), _CONJ[p])
            b = m.T @ ep
            per.append((b + b.T) / 2)
        out.append(per)
    return np.array(out)


def _residuals(S, x):
    n2 = x @ x
    vals = np.einsum("i,gpij,j->gp", x, S, x)
    return (vals ** 2).sum(axis=1) - n2 ** 2


def _jacobian(S, x):
    n2 = x @ x
    sx = np.einsum("gpij,j->gpi", S, x)
    vals = sx @ x
    return 4 * np.einsum("gp,gpi->gi", vals, sx) - 4 * n2 * x[None, :]


def fixed_line_objective(gens, x) -> float:
    """sum over generators of (|<g x, x>|^2 - <x, x>^2)^2."""
    x = np.asarray(x, dtype=float)
    if not x.any():
        raise ValueError("objective is undefined at the zero vector")
    r = _residuals(_forms(gens), x)
    return float(r @ r)


def fixed_line_gradient(gens, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    S = _forms(gens)
    return 2 * _jacobian(S, x).T @ _residuals(S, x)


@dataclass
class FixedLineCandidate:
    numeric: np.ndarray
    residual: float
    exact: QuatVector | None = None
    certified: bool = False

    def to_json(self):
        return {
            "numeric": [float(t) for t in self.numeric],
            "residual": self.residual,
            "exact": self.exact.to_json() if self.exact is not None else None,
            "certified": self.certified,
        }


def _line_angle(x, y, d):
    qx, qy = from_real(x), from_real(y)
    acc = np.zeros(4)
    for a, b in zip(qx, qy):
        a = np.array(a)
        acc += np.array([a @ _CONJ[p] @ np.array(b) for p in range(4)])
    return float(acc @ acc) / float((x @ x) * (y @ y))


def _right_matrix(alpha):
    """4x4 real matrix of right multiplication by the quaternion ``alpha``."""
    m = np.zeros((4, 4))
    for p in range(4):
        for q in range(4):
            r, s = _UNIT_MUL[p, q]
            m[r, p] += s * alpha[q]
    return m


def _polish(mats, x, steps=2):
    """Project x onto the solutions y of g y = y alpha_g (alpha_g read off from x).

    The scalars <x, g x> are accurate to second order in the distance of x
    from a fixed line, so one projection already reaches machine precision.
    """
    d = len(x) // 4
    for _ in range(steps):
        blocks = []
        for m in mats:
            gx = m @ x
            alpha = np.array([x @ np.kron(np.eye(d), _CONJ[p]) @ gx for p in range(4)])
            blocks.append(m - np.kron(np.eye(d), _right_matrix(alpha)))
        _, sv, vt = np.linalg.svd(np.vstack(blocks))
        null = vt[sv < 1e-6 * max(sv[0], 1.0)]
        if not len(null):
            return x
        y = null.T @ (null @ x)
        x = y / np.linalg.norm(y)
    return x


def _one_restart(S, x0, mats=None):
    def fun(x):
        return np.append(_residuals(S, x), x @ x - 1)

    def jac(x):
        return np.vstack([_jacobian(S, x), 2 * x])

    sol = least_squares(fun, x0, jac=jac, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=300)
    x = sol.x / np.linalg.norm(sol.x)
    if mats is not None:
        r = _residuals(S, x)
        if r @ r < 1e-12:
            x = _polish(mats, x)
    r = _residuals(S, x)
    return x, float(r @ r)


def search_fixed_lines(gens, restarts=DEFAULT_RESTARTS, seed=DEFAULT_SEED, tol=DEFAULT_TOL,
                       denom_bound=DEFAULT_DENOM_BOUND, threads=1, snap=True):
    """Random-restart search for lines fixed by all ``gens``.

    Results depend only on (seed, restarts): starts are drawn up front and
    candidates are merged in restart order whatever ``threads`` is.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    mats = [g if isinstance(g, np.ndarray) else real_matrix(g) for g in gens]
    S = _forms(mats)
    dim = S.shape[-1]
    rng = np.random.default_rng(seed)
    starts = rng.standard_normal((restarts, dim))
    starts /= np.linalg.norm(starts, axis=1, keepdims=True)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda x0: _one_restart(S, x0, mats), starts))
    else:
        results = [_one_restart(S, x0, mats) for x0 in starts]
    found: list[FixedLineCandidate] = []
    for x, res in results:
        if res > tol:
            continue
        if any(_line_angle(x, c.numeric, dim // 4) > 1 - 1e-8 for c in found):
            continue
        found.append(FixedLineCandidate(x, res))
    if snap and gens and not isinstance(gens[0], np.ndarray):
        for c in found:
            c.exact = snap_to_field(c.numeric, denom_bound, gens=gens)
            c.certified = c.exact is not None
    return found


# -- snapping -------------------------------------------------------------

_ROOTS = [(r, math.sqrt(r)) for r in BASIS_RADICANDS]


def snap_real(y: float, denom_bound: int = DEFAULT_DENOM_BOUND, tol: float = 1e-9, max_terms: int = 2):
    """Simplest (n1 sqrt(r1) + n2 sqrt(r2)) / q within ``tol`` of y, or None.

    Candidates are ranked by denominator, then number of terms, then size
    of the numerators.
    """
    if abs(y) < tol:
        return FieldElem(0)
    for q in range(1, denom_bound + 1):
        target = y * q
        best = None
        for r, s in _ROOTS:
            n = round(target / s)
            if n and abs(n * s - target) < tol * q:
                cand = (abs(n), {r: Fraction(n, q)})
                best = cand if best is None or cand[0] < best[0] else best
        if best is not None:
            return FieldElem(best[1])
        if max_terms < 2:
            continue
        for (r1, s1), (r2, s2) in itertools.combinations(_ROOTS, 2):
            lim = int(abs(target) / s1 + 4 * q) + 1
            for n1 in range(-lim, lim + 1):
                if n1 == 0:
                    continue
                rest = target - n1 * s1
                n2 = round(rest / s2)
                if n2 and abs(n2 * s2 - rest) < tol * q:
                    cand = (abs(n1) + abs(n2), {r1: Fraction(n1, q), r2: Fraction(n2, q)})
                    if best is None or cand[0] < best[0]:
                        best = cand
        if best is not None:
            return FieldElem(best[1])
    return None


def _gauge_fix(x):
    """Right-multiply so the largest coordinate becomes exactly 1 (numerically)."""
    qs = [np.array(q) for q in from_real(x)]
    f = max(range(len(qs)), key=lambda i: qs[i] @ qs[i])
    a = qs[f]
    # a^-1 = conj(a) / |a|^2 ; right multiplication by it
    ainv = np.array([a[0], -a[1], -a[2], -a[3]]) / (a @ a)
    right = np.zeros((4, 4))
    for p in range(4):
        for q in range(4):
            r, s = _UNIT_MUL[p, q]
            right[r, p] += s * ainv[q]
    return [right @ q for q in qs]


def snap_to_field(x, denom_bound: int = DEFAULT_DENOM_BOUND, gens=None):
    """Exact vector for the numeric line x, or None.

    With ``gens`` the result is returned only if it certifies as a fixed line.
    """
    qs = _gauge_fix(np.asarray(x, dtype=float))
    entries = []
    for q in qs:
        parts = [snap_real(float(t), denom_bound) for t in q]
        if any(p is None for p in parts):
            return None
        entries.append(Quaternion(*parts))
    v = QuatVector(entries)
    if gens is not None and not certify_fixed_line(gens, v):
        return None
    return v


def certify_fixed_line(gens, v: QuatVector) -> bool:
    """Exact test that every generator maps the line of v to itself."""
    if v.is_zero():
        raise ValueError("the zero vector spans no line")
    n = norm2(v)
    return all(inner_product(g @ v, v).norm() == n * n for g in gens)


def maximal_memberships(G, subgroups, v: QuatVector):
    """Orders of the maximal reducible classes having a conjugate that fixes the line of v."""
    from .grouplib import _bitset
    from .stabilizers import projective_stabilizer

    stab = _bitset(projective_stabilizer(G, v).indices, G.order)
    out = []
    for s in subgroups:
        if s.maximal_reducible and any(b & stab == b for b in s.conjugates):
            out.append(s.order)
    return out
