"""Oriented lines of elliptic space RP^3 as points of S^2 x S^2.

An oriented line is an oriented 2-plane ``P`` in R^4; its unit bivector
splits into self-dual and anti-self-dual halves, each of which (rescaled to
unit length) is a point of a unit 2-sphere. Right-angle incidence, skewers and
the Klein four-group (reversal, duality) all act sphere by sphere.

Bivector coordinates are ordered ``(e12, e13, e14, e23, e24, e34)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegeneratePair, NotDecomposable

DEGENERACY_THRESHOLD = 1e-9
HALF_PI = np.pi / 2


@dataclass(frozen=True, eq=False)
class SpherePairLine:
    p_minus: np.ndarray
    p_plus: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p_minus", np.asarray(self.p_minus, dtype=float))
        object.__setattr__(self, "p_plus", np.asarray(self.p_plus, dtype=float))

    @classmethod
    def from_vectors(cls, p_minus, p_plus) -> "SpherePairLine":
        """Normalize both factors onto the unit sphere."""
        pm = np.asarray(p_minus, dtype=float)
        pp = np.asarray(p_plus, dtype=float)
        return cls(pm / np.linalg.norm(pm), pp / np.linalg.norm(pp))

    def sphere(self, sign: int) -> np.ndarray:
        return self.p_minus if sign < 0 else self.p_plus

    def canonical(self) -> "SpherePairLine":
        """Klein-quotient representative: first nonzero coordinate positive on each sphere."""
        return SpherePairLine(_positive(self.p_minus), _positive(self.p_plus))

    def __repr__(self):
        return f"SpherePairLine({self.p_minus.tolist()}, {self.p_plus.tolist()})"


def _positive(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    for x in v:
        if abs(x) > tol:
            return v if x > 0 else -v
    return v


class AnglePair(NamedTuple):
    alpha: float
    beta: float


def sphere_distance(p: np.ndarray, q: np.ndarray) -> float:
    """Angle between two vectors; the atan2 form stays accurate near 0 and pi."""
    return float(np.arctan2(np.linalg.norm(np.cross(p, q)), np.dot(p, q)))


def right_angle_residual(l: SpherePairLine, m: SpherePairLine) -> float:
    return max(
        abs(sphere_distance(l.p_minus, m.p_minus) - HALF_PI),
        abs(sphere_distance(l.p_plus, m.p_plus) - HALF_PI),
    )


def _pole(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    w = np.cross(p, q)
    n = np.linalg.norm(w)
    if n < DEGENERACY_THRESHOLD:
        raise DegeneratePair("points equal or antipodal on one sphere factor")
    return w / n


def skewer(l: SpherePairLine, m: SpherePairLine) -> SpherePairLine:
    """One of the two skewers; the other one is its dual."""
    return SpherePairLine(_pole(l.p_minus, m.p_minus), _pole(l.p_plus, m.p_plus))


def dual(l: SpherePairLine) -> SpherePairLine:
    return SpherePairLine(-l.p_minus, l.p_plus)


def reverse(l: SpherePairLine) -> SpherePairLine:
    return SpherePairLine(-l.p_minus, -l.p_plus)


def angle_pair(l: SpherePairLine, m: SpherePairLine, klein: bool = True) -> AnglePair:
    """Angles ``alpha <= beta`` in ``[0, pi/2]`` between ``l`` and ``m``.

    With ``klein=True`` the fold runs over the whole Klein orbit of ``m``, so
    the result may describe ``m`` or its dual, whichever is closer. With
    ``klein=False`` only reversal is allowed and the result is the pair of
    principal angles of the two unoriented planes.
    """
    dm = sphere_distance(l.p_minus, m.p_minus)
    dp = sphere_distance(l.p_plus, m.p_plus)
    candidates = [(dm, dp), (np.pi - dm, np.pi - dp)]
    if klein:
        candidates += [(np.pi - dm, dp), (dm, np.pi - dp)]
    dm, dp = min(candidates, key=lambda c: (c[0] + c[1], abs(c[0] - c[1])))
    return AnglePair(abs(dm - dp) / 2, (dm + dp) / 2)


def plucker_of(l: SpherePairLine) -> np.ndarray:
    """Unit bivector of the oriented plane, in the standard basis of Lambda^2 R^4."""
    mu, mv, mw = l.p_minus
    pu, pv, pw = l.p_plus
    return 0.5 * np.array([mu + pu, mv + pv, mw + pw, pw - mw, mv - pv, pu - mu])


def wedge_square(omega: np.ndarray) -> float:
    """Coefficient of ``e1234`` in ``omega ^ omega``, halved."""
    w12, w13, w14, w23, w24, w34 = omega
    return float(w12 * w34 - w13 * w24 + w14 * w23)


def line_of_plucker(omega) -> SpherePairLine:
    omega = np.asarray(omega, dtype=float)
    n = np.linalg.norm(omega)
    if n == 0:
        raise NotDecomposable("zero bivector")
    omega = omega / n
    if abs(wedge_square(omega)) > DEGENERACY_THRESHOLD:
        raise NotDecomposable("bivector is not decomposable")
    w12, w13, w14, w23, w24, w34 = omega
    return SpherePairLine.from_vectors(
        [w12 - w34, w13 + w24, w14 - w23],
        [w12 + w34, w13 - w24, w14 + w23],
    )


def line_from_span(x, y) -> SpherePairLine:
    """Oriented line of the plane ``span(x, y)`` in R^4 (orientation x then y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    A = np.outer(x, y) - np.outer(y, x)
    omega = np.array([A[0, 1], A[0, 2], A[0, 3], A[1, 2], A[1, 3], A[2, 3]])
    if np.linalg.norm(omega) < DEGENERACY_THRESHOLD * np.linalg.norm(x) * np.linalg.norm(y):
        raise NotDecomposable("spanning vectors are parallel")
    return line_of_plucker(omega)


def plane_basis(l: SpherePairLine) -> np.ndarray:
    """Orthonormal 4x2 basis of the plane, positively oriented."""
    w12, w13, w14, w23, w24, w34 = plucker_of(l)
    A = np.array(
        [
            [0, w12, w13, w14],
            [-w12, 0, w23, w24],
            [-w13, -w23, 0, w34],
            [-w14, -w24, -w34, 0],
        ]
    )
    u, _, _ = np.linalg.svd(A)
    x, y = u[:, 0], A.T @ u[:, 0]
    y = y / np.linalg.norm(y)
    # A = x y^T - y x^T for an orthonormal positive basis (x, y)
    if np.dot(x, A @ y) < 0:
        y = -y
    return np.column_stack([x, y])


def sphere_common_residual(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> float:
    """``|det|`` of three unit vectors: zero iff they lie on one great circle."""
    return abs(float(np.linalg.det(np.array([p, q, r]))))


def common_skewer_residual(a: SpherePairLine, b: SpherePairLine, c: SpherePairLine) -> float:
    return max(
        sphere_common_residual(a.p_minus, b.p_minus, c.p_minus),
        sphere_common_residual(a.p_plus, b.p_plus, c.p_plus),
    )


def same_line_residual(l: SpherePairLine, m: SpherePairLine) -> float:
    """Zero iff the lines agree in the Klein quotient."""
    return max(
        float(np.linalg.norm(np.cross(l.p_minus, m.p_minus))),
        float(np.linalg.norm(np.cross(l.p_plus, m.p_plus))),
    )


def half_turn(s: SpherePairLine, l: SpherePairLine) -> SpherePairLine:
    """Image of ``l`` under the reflection in the line ``s`` (rotation by pi on each sphere)."""
    def rot(axis, p):
        return 2 * np.dot(axis, p) * axis - p

    return SpherePairLine(rot(s.p_minus, l.p_minus), rot(s.p_plus, l.p_plus))
