"""Fenchel's matrix calculus for lines and points of hyperbolic 3-space.

A line is represented by the half-turn about it, a traceless matrix of
GL(2, C); a point by the reflection in it, a matrix ``N`` with
``N conj(N) = -det(N) E``. Incidence of a point and a line is the real-linear
relation ``M N = N conj(M)``, which is only meaningful once the line matrix is
scaled to determinant 1.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import hyperbolic_forms as hf
from .errors import (
    DegenerateForm,
    DegeneratePair,
    EqualEndpoints,
    IllConditioned,
    NonpositiveHeight,
    UnnormalizedLine,
)
from .harness import TrialReport, run_trials
from .hyperbolic_forms import BoundaryPoint, QForm

DEGENERACY_THRESHOLD = 1e-9
CONDITION_GATE = 1e-6
E = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class PointMatrix:
    """Point reflection ``[[p + i s, q], [r, -p + i s]]`` with real ``p, q, r, s``."""

    p: float
    q: float
    r: float
    s: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.p + 1j * self.s, self.q], [self.r, -self.p + 1j * self.s]])

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.p, self.q, self.r, self.s])

    @property
    def det(self) -> float:
        return -self.p**2 - self.s**2 - self.q * self.r

    @classmethod
    def from_matrix(cls, N: np.ndarray) -> "PointMatrix":
        """Project onto the point-matrix constraints (exact for genuine point matrices)."""
        N = np.asarray(N, dtype=complex)
        p = ((N[0, 0] - N[1, 1]) / 2).real
        s = ((N[0, 0] + N[1, 1]) / 2).imag
        pm = cls(float(p), float(N[0, 1].real), float(N[1, 0].real), float(s))
        if not pm.det > 0:
            raise NonpositiveHeight("matrix is not a point matrix (det <= 0)")
        return pm

    def location(self) -> tuple[complex, float]:
        """Upper half-space coordinates ``(z, t)`` of the point."""
        if abs(self.r) < 1e-300:
            raise NonpositiveHeight("point matrix with r = 0 is not normalized")
        z = complex(self.p, self.s) / self.r
        return z, float(np.sqrt(self.det) / abs(self.r))


def normalize_det(M: np.ndarray) -> np.ndarray:
    d = np.linalg.det(M)
    if abs(d) < DEGENERACY_THRESHOLD * np.linalg.norm(M) ** 2:
        raise DegeneratePair("line matrix is singular")
    return M / np.sqrt(d)


def line_matrix_from_form(f: QForm) -> np.ndarray:
    """Half-turn about the line with boundary roots of ``f``, scaled to det 1."""
    if f.relative_disc() < hf.DEGENERACY_THRESHOLD:
        raise DegenerateForm("form does not represent a line")
    return normalize_det(raw_line_matrix(f))


def raw_line_matrix(f) -> np.ndarray:
    a, b, c = f.vec if isinstance(f, QForm) else f
    return np.array([[-b, -c], [a, b]], dtype=complex)


def form_from_line_matrix(M: np.ndarray) -> QForm:
    return QForm(M[1, 0], M[1, 1], -M[0, 1])


def right_angle_residual(M1: np.ndarray, M2: np.ndarray) -> float:
    return float(abs(np.trace(M1 @ M2)) / (np.linalg.norm(M1) * np.linalg.norm(M2)))


def commutator(M1: np.ndarray, M2: np.ndarray) -> np.ndarray:
    """Line matrix of the skewer, scaled to det 1."""
    C = M1 @ M2 - M2 @ M1
    if np.linalg.norm(C) < DEGENERACY_THRESHOLD * np.linalg.norm(M1) * np.linalg.norm(M2):
        raise DegeneratePair("matrices commute: coincident or dual axes")
    return normalize_det(C)


def line_vec(M: np.ndarray) -> np.ndarray:
    return np.array([M[0, 0], M[0, 1], M[1, 0]])


def dependence_residual(M1: np.ndarray, M2: np.ndarray, M3: np.ndarray) -> float:
    rows = np.array([line_vec(M) for M in (M1, M2, M3)])
    rows = rows / np.linalg.norm(rows, axis=1, keepdims=True)
    return float(np.linalg.svd(rows, compute_uv=False)[-1])


def point_matrix(z: complex, t: float) -> PointMatrix:
    """Reflection in the point of height ``t`` above ``z``."""
    if not t > 0:
        raise NonpositiveHeight("points of H^3 have positive height")
    z = complex(z)
    return PointMatrix(z.real, -(abs(z) ** 2 + t * t), 1.0, z.imag)


def incidence_residual(N: PointMatrix, M: np.ndarray) -> float:
    if abs(np.linalg.det(M) - 1) > 1e-9:
        raise UnnormalizedLine("incidence needs a det-1 line matrix")
    Nm = N.matrix
    return float(np.linalg.norm(M @ Nm - Nm @ M.conj()) / (np.linalg.norm(M) * np.linalg.norm(Nm)))


def collinearity_residual(N1: PointMatrix, N2: PointMatrix, N3: PointMatrix) -> float:
    rows = np.array([N.vec for N in (N1, N2, N3)])
    rows = rows / np.linalg.norm(rows, axis=1, keepdims=True)
    return float(np.linalg.svd(rows, compute_uv=False)[-1])


@functools.lru_cache(maxsize=None)
def _incidence_basis() -> tuple:
    # real parametrization of traceless M: (Re m11, Im m11, Re m12, Im m12, Re m21, Im m21)
    basis = []
    for k in range(6):
        x = np.zeros(6)
        x[k] = 1.0
        basis.append(_unpack(x))
    return tuple(basis)


def _unpack(x: np.ndarray) -> np.ndarray:
    m11, m12, m21 = x[0] + 1j * x[1], x[2] + 1j * x[3], x[4] + 1j * x[5]
    return np.array([[m11, m12], [m21, -m11]])


def _incidence_rows(N: PointMatrix) -> np.ndarray:
    Nm = N.matrix
    cols = []
    for B in _incidence_basis():
        R = B @ Nm - Nm @ B.conj()
        cols.append(np.concatenate([R.real.ravel(), R.imag.ravel()]))
    return np.array(cols).T


def line_through_points(N1: PointMatrix, N2: PointMatrix) -> np.ndarray:
    """Solve ``M N_i = N_i conj(M)``, ``Tr M = 0`` for the line through two points."""
    N1 = _unit_point(N1)
    N2 = _unit_point(N2)
    A = np.vstack([_incidence_rows(N1), _incidence_rows(N2)])
    _, sv, vh = np.linalg.svd(A)
    if sv[-2] < CONDITION_GATE * sv[0]:
        raise IllConditioned("points coincide; the line through them is undetermined")
    M = _unpack(vh[-1])
    # real null vector is a real multiple of the det-1 solution, so det > 0
    return M / np.sqrt(np.linalg.det(M).real)


def _unit_point(N: PointMatrix) -> PointMatrix:
    n = np.linalg.norm(N.vec)
    return PointMatrix(*(N.vec / n))


def mobius_to_geodesic(e1: BoundaryPoint, e2: BoundaryPoint) -> np.ndarray:
    """Det-1 matrix of ``w -> (e2 w + e1) / (w + 1)`` sending 0 to e1 and infinity to e2."""
    if hf.projective_distance(e1, e2) < hf.DEGENERACY_THRESHOLD:
        raise EqualEndpoints("a geodesic needs two distinct endpoints")
    G = np.array([[e2.p, e1.p], [e2.q, e1.q]], dtype=complex)
    return G / np.sqrt(np.linalg.det(G))


def transport_point(G: np.ndarray, N: PointMatrix) -> PointMatrix:
    """Image of a point under the Mobius map ``G`` (det 1)."""
    return PointMatrix.from_matrix(G @ N.matrix @ np.linalg.inv(G.conj()))


def point_on_line(e1: BoundaryPoint, e2: BoundaryPoint, t: float) -> PointMatrix:
    """Point of the geodesic (e1, e2) corresponding to height ``t`` on the axis 0-infinity."""
    return transport_point(mobius_to_geodesic(e1, e2), point_matrix(0, t))


def geodesic_matrix(e1: BoundaryPoint, e2: BoundaryPoint) -> np.ndarray:
    return line_matrix_from_form(hf.form_from_endpoints(e1, e2))


def fixed_points(M: np.ndarray) -> tuple[BoundaryPoint, BoundaryPoint]:
    """Boundary endpoints of the line with half-turn matrix ``M``."""
    return hf.endpoints_from_form(form_from_line_matrix(M))


# -- skewer Pappus theorem II -------------------------------------------------

PAPPUS2_PAIRS = (((0, 1), (1, 0)), ((1, 2), (2, 1)), ((2, 0), (0, 2)))


def _random_point(rng: np.random.Generator) -> BoundaryPoint:
    return BoundaryPoint.from_complex(complex(*rng.normal(size=2)))


def _random_height(rng: np.random.Generator) -> float:
    return float(np.exp(rng.uniform(-1.0, 1.0)))


def sample_pappus2(rng: np.random.Generator, perturb: float = 0.0):
    """Two geodesics and three points on each (as point matrices).

    With ``perturb > 0`` the first point of ``L`` is pushed off ``L`` by that
    hyperbolic distance, along a perpendicular in a random direction.
    """
    L = (_random_point(rng), _random_point(rng))
    M = (_random_point(rng), _random_point(rng))
    GL, GM = mobius_to_geodesic(*L), mobius_to_geodesic(*M)
    A = [transport_point(GL, point_matrix(0, _random_height(rng))) for _ in range(3)]
    B = [transport_point(GM, point_matrix(0, _random_height(rng))) for _ in range(3)]
    if perturb:
        _, t = transport_point(np.linalg.inv(GL), A[0]).location()
        A[0] = transport_point(GL, displaced_axis_point(t, perturb, rng.uniform(0, 2 * np.pi)))
    return L, M, A, B


def displaced_axis_point(t: float, distance: float, theta: float) -> PointMatrix:
    """Point at hyperbolic ``distance`` from ``(0, t)`` along a perpendicular to the axis 0-infinity."""
    return point_matrix(t * np.tanh(distance) * np.exp(1j * theta), t / np.cosh(distance))


def pappus2_residual(A, B) -> float:
    """Dependence residual of the three skewers S((A_i B_j), (A_j B_i))."""
    skewers = []
    for (i, j), (k, l) in PAPPUS2_PAIRS:
        first = line_through_points(A[i], B[j])
        second = line_through_points(A[k], B[l])
        skewers.append(commutator(first, second))
    return dependence_residual(*skewers)


def pappus2_trial(rng: np.random.Generator, perturb: float = 0.0) -> dict:
    _, _, A, B = sample_pappus2(rng, perturb)
    return {"common_skewer": pappus2_residual(A, B)}


def verify_pappus2(seed: int, trials: int, tol: float = 1e-8, perturb: float = 0.0, workers: int = 1) -> TrialReport:
    """Randomized check of the skewer Pappus theorem II with line and point matrices."""
    name = "pappus2" if not perturb else "pappus2_perturbed"
    fn = functools.partial(pappus2_trial, perturb=perturb)
    return run_trials(name, "hyperbolic", fn, trials, seed, tol, workers=workers)
