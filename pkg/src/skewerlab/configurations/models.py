"""Per-geometry adapters: samplers, the skewer operation and residuals.

Each model exposes the same small vocabulary so that a theorem program can be
written once and executed in any geometry it supports.
"""

from __future__ import annotations

import numpy as np

from .. import congruences as cg
from .. import elliptic_lines as el
from .. import euclidean_lines as eu
from .. import hyperbolic_forms as hf
from ..errors import DegenerateForm, DegenerateInput, DegeneratePair, GeometryError, ParallelLines

SCENE_RADIUS = 3.0
ANGLE_MARGIN = 0.2
# Skewer inputs closer than this (sine of the angle between them, or its
# analog) are resampled: the skewer's rounding error grows like eps / gap^2,
# so 1e-3 bounds the amplified error near 1e-10, well under the 1e-8 tolerance.
CONDITIONING_GATE = 1e-3


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


class HyperbolicModel:
    """Lines of H^3 as binary quadratic forms."""

    name = "hyperbolic"

    def sample_free(self, rng):
        f = hf.QForm.from_vec(rng.normal(size=3) + 1j * rng.normal(size=3))
        return self._checked(f)

    def sample_pencil(self, axis, rng):
        e1, e2 = hf.orthogonal_complement(axis)
        w = rng.normal(size=2) + 1j * rng.normal(size=2)
        return self._checked(hf.QForm.from_vec(w[0] * e1 + w[1] * e2))

    def sample_congruence(self, rng):
        psi = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        return cg.congruence_from_mobius(psi)

    def congruence_member(self, C, rng):
        z = complex(*rng.normal(size=2))
        return self._checked(cg.endpoint_form(C.member(z)))

    @staticmethod
    def _checked(f):
        f = hf.QForm.from_vec(f.vec / f.norm())
        if not f.is_line():
            raise DegenerateForm("sampled form is not a line")
        return f

    def skewer(self, a, b):
        if hf.same_line_residual(a, b) < CONDITIONING_GATE:
            raise DegenerateForm("skewer inputs are nearly the same line")
        return hf.skewer(a, b)

    def right_angle(self, a, b) -> float:
        return hf.right_angle_residual(a, b)

    def common_skewer(self, a, b, c) -> float:
        return hf.common_skewer_residual(a, b, c)

    def same_line(self, a, b) -> float:
        return hf.same_line_residual(a, b)

    def conic(self, lines) -> float:
        from .conics import conic_fit_residual

        return conic_fit_residual(lines)

    def segment(self, f):
        """Klein-model chord between the boundary endpoints on the unit sphere."""
        p0, p1 = (_stereo(e) for e in hf.endpoints_from_form(f))
        return p0, p1


def _stereo(e: hf.BoundaryPoint) -> np.ndarray:
    if e.is_infinite():
        return np.array([0.0, 0.0, 1.0])
    z = e.value
    n = abs(z) ** 2
    return np.array([2 * z.real, 2 * z.imag, n - 1]) / (n + 1)


class EllipticModel:
    """Lines of elliptic space as pairs of unit vectors (S^2 x S^2)."""

    name = "elliptic"

    def sample_free(self, rng):
        return el.SpherePairLine.from_vectors(rng.normal(size=3), rng.normal(size=3))

    def sample_pencil(self, axis, rng):
        pts = []
        for c in (axis.p_minus, axis.p_plus):
            e1, e2 = cg.tangent_frame(c)
            t = rng.uniform(0, 2 * np.pi)
            pts.append(np.cos(t) * e1 + np.sin(t) * e2)
        return el.SpherePairLine(*pts)

    def sample_congruence(self, rng):
        axis = self.sample_free(rng)
        rm, rp = rng.uniform(ANGLE_MARGIN, np.pi - ANGLE_MARGIN, size=2)
        return cg.EllipticCongruence(axis, float(rm), float(rp))

    def congruence_member(self, C, rng):
        tm, tp = rng.uniform(0, 2 * np.pi, size=2)
        return C.member(tm, tp)

    def skewer(self, a, b):
        gap = min(np.linalg.norm(np.cross(a.p_minus, b.p_minus)), np.linalg.norm(np.cross(a.p_plus, b.p_plus)))
        if gap < CONDITIONING_GATE:
            raise DegeneratePair("skewer inputs nearly agree on a sphere factor")
        return el.skewer(a, b)

    def right_angle(self, a, b) -> float:
        return el.right_angle_residual(a, b)

    def common_skewer(self, a, b, c) -> float:
        return el.common_skewer_residual(a, b, c)

    def same_line(self, a, b) -> float:
        return el.same_line_residual(a, b)

    def conic(self, lines) -> float:
        raise GeometryError("conic residual is defined for the hyperbolic model only")

    def segment(self, l):
        """Chord of the affine chart x4 = 1, clipped to the scene ball."""
        B = el.plane_basis(l)
        r = B[3]
        nr = np.linalg.norm(r)
        if nr < 1e-9:
            raise DegenerateInput("line lies in the plane at infinity of the chart")
        point = B @ (r / nr**2)
        direction = B @ np.array([-r[1], r[0]])
        return _clip(point[:3], _unit(direction[:3]))


class EuclideanModel:
    """Lines of R^3 as unit dual vectors."""

    name = "euclidean"

    def sample_free(self, rng):
        return eu.line_from_point_direction(rng.uniform(-1.0, 1.0, size=3), rng.normal(size=3))

    def sample_pencil(self, axis, rng):
        e1, e2 = cg.tangent_frame(axis.u)
        t = rng.uniform(0, 2 * np.pi)
        return eu.line_from_point_direction(axis.point(rng.normal()), np.cos(t) * e1 + np.sin(t) * e2)

    def sample_congruence(self, rng):
        axis = self.sample_free(rng)
        phi = rng.uniform(ANGLE_MARGIN, np.pi - ANGLE_MARGIN)
        return cg.EuclideanCongruence(axis, float(phi), float(rng.uniform(0.2, 2.0)))

    def congruence_member(self, C, rng):
        return cg.euclidean_congruence_member(C, rng.uniform(0, 2 * np.pi), rng.normal())

    def skewer(self, a, b):
        if np.linalg.norm(np.cross(a.u, b.u)) < CONDITIONING_GATE:
            raise ParallelLines("skewer inputs are nearly parallel")
        return eu.common_perpendicular(a, b)

    def right_angle(self, a, b) -> float:
        return eu.right_angle_residual(a, b)

    def common_skewer(self, a, b, c) -> float:
        return eu.common_skewer_residual(a, b, c)

    def same_line(self, a, b) -> float:
        return eu.same_line_residual(a, b)

    def conic(self, lines) -> float:
        raise GeometryError("conic residual is defined for the hyperbolic model only")

    def segment(self, xi):
        return _clip(xi.foot, xi.u)


def _clip(point: np.ndarray, direction: np.ndarray):
    """Chord of the ball of radius SCENE_RADIUS; a short stub at the foot if the line misses it."""
    foot = point - np.dot(point, direction) * direction
    h2 = SCENE_RADIUS**2 - np.dot(foot, foot)
    half = np.sqrt(h2) if h2 > 0 else 0.5
    return foot - half * direction, foot + half * direction


MODELS = {m.name: m for m in (HyperbolicModel(), EllipticModel(), EuclideanModel())}
GEOMETRIES = tuple(MODELS)


def get_model(geometry: str):
    try:
        return MODELS[geometry]
    except KeyError:
        raise ValueError(f"unknown geometry {geometry!r}; expected one of {GEOMETRIES}") from None
