"""Oriented lines of R^3 as unit dual vectors ``u + eps v`` on the Study sphere."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParallelLines, ZeroDirection

PARALLEL_THRESHOLD = 1e-9


@dataclass(frozen=True, eq=False)
class DualLineVector:
    """Unit direction ``u`` and moment ``v = P x u`` of an oriented line."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u", np.asarray(self.u, dtype=float))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float))

    @property
    def foot(self) -> np.ndarray:
        """Point of the line closest to the origin."""
        return np.cross(self.u, self.v)

    def point(self, s: float) -> np.ndarray:
        return self.foot + s * self.u

    def reversed(self) -> "DualLineVector":
        return DualLineVector(-self.u, -self.v)

    def __repr__(self):
        return f"DualLineVector(u={self.u.tolist()}, v={self.v.tolist()})"


class DualAngle(NamedTuple):
    phi: float
    d: float


def line_from_point_direction(P, u) -> DualLineVector:
    P = np.asarray(P, dtype=float)
    u = np.asarray(u, dtype=float)
    n = np.linalg.norm(u)
    if n == 0:
        raise ZeroDirection("direction vector is zero")
    u = u / n
    return DualLineVector(u, np.cross(P, u))


def line_through_points(P, Q) -> DualLineVector:
    return line_from_point_direction(P, np.asarray(Q, dtype=float) - np.asarray(P, dtype=float))


def dual_product(xi1: DualLineVector, xi2: DualLineVector) -> tuple[float, float]:
    """``(cos phi, -d sin phi)`` for the dual angle ``phi + eps d`` between the lines."""
    return float(np.dot(xi1.u, xi2.u)), float(np.dot(xi1.u, xi2.v) + np.dot(xi2.u, xi1.v))


def dual_angle(xi1: DualLineVector, xi2: DualLineVector) -> DualAngle:
    """Angle from ``u1`` to ``u2`` and signed distance measured along ``u1 x u2``."""
    w = np.cross(xi1.u, xi2.u)
    n = np.linalg.norm(w)
    if n < PARALLEL_THRESHOLD:
        raise ParallelLines("dual angle of parallel lines is not defined")
    phi = float(np.arctan2(n, np.dot(xi1.u, xi2.u)))
    d = float(np.dot(xi2.foot - xi1.foot, w / n))
    return DualAngle(phi, d)


def right_angle_residual(xi1: DualLineVector, xi2: DualLineVector) -> float:
    """``max(|cos phi|, |dual part| / (1 + |v1| + |v2|))``."""
    real, dual = dual_product(xi1, xi2)
    scale = 1.0 + np.linalg.norm(xi1.v) + np.linalg.norm(xi2.v)
    return max(abs(real), abs(dual) / scale)


def closest_points(xi1: DualLineVector, xi2: DualLineVector) -> tuple[np.ndarray, np.ndarray]:
    u1, u2 = xi1.u, xi2.u
    w = np.cross(u1, u2)
    ww = np.dot(w, w)
    if np.sqrt(ww) < PARALLEL_THRESHOLD:
        raise ParallelLines("parallel lines have no unique common perpendicular")
    p1, p2 = xi1.foot, xi2.foot
    r = p2 - p1
    s = np.dot(np.cross(r, u2), w) / ww
    t = np.dot(np.cross(r, u1), w) / ww
    return p1 + s * u1, p2 + t * u2


def common_perpendicular(xi1: DualLineVector, xi2: DualLineVector) -> DualLineVector:
    """The skewer, oriented along ``u1 x u2``."""
    q1, _ = closest_points(xi1, xi2)
    w = np.cross(xi1.u, xi2.u)
    w = w / np.linalg.norm(w)
    return DualLineVector(w, np.cross(q1, w))


def direction_shadow(xi: DualLineVector) -> np.ndarray:
    """Point at infinity of the line (a direction, defined up to sign)."""
    return xi.u


def common_skewer_residual(a: DualLineVector, b: DualLineVector, c: DualLineVector) -> float:
    return right_angle_residual(common_perpendicular(a, b), c)


def same_line_residual(xi1: DualLineVector, xi2: DualLineVector) -> float:
    """Zero iff the lines coincide as unoriented lines."""
    scale = 1.0 + np.linalg.norm(xi1.v) + np.linalg.norm(xi2.v)
    best = np.inf
    for sign in (1.0, -1.0):
        r = max(np.linalg.norm(xi1.u - sign * xi2.u), np.linalg.norm(xi1.v - sign * xi2.v) / scale)
        best = min(best, r)
    return float(best)


def transform(xi: DualLineVector, R: np.ndarray, t) -> DualLineVector:
    """Image under the rigid motion ``x -> R x + t``."""
    u = R @ xi.u
    return DualLineVector(u, np.cross(R @ xi.foot + np.asarray(t, dtype=float), u))
