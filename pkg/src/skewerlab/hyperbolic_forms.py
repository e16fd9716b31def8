"""Lines of hyperbolic 3-space as complex binary quadratic forms.

A geodesic of the upper half-space model is determined by its two endpoints
on the Riemann sphere, and an unordered pair of points of CP^1 is the zero set
of a binary quadratic form ``a x^2 + 2b xy + c y^2`` defined up to a nonzero
complex factor. In these coordinates

* two lines meet at a right angle iff ``a1 c2 - 2 b1 b2 + a2 c1 = 0``;
* the common perpendicular of two lines is their Poisson bracket;
* three lines share a common perpendicular iff their coefficient vectors are
  linearly dependent.

Coefficients are stored as ``(a, b, c)`` with the middle coefficient halved, so
the discriminant is ``ac - b^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateForm, EqualEndpoints

DEGENERACY_THRESHOLD = 1e-9


@dataclass(frozen=True)
class BoundaryPoint:
    """Homogeneous point ``(p:q)`` of the sphere at infinity; ``p/q`` is the affine value."""

    p: complex
    q: complex = 1.0

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise ValueError("(0:0) is not a point of CP^1")

    @classmethod
    def from_complex(cls, z) -> "BoundaryPoint":
        if np.isinf(z):
            return INFINITY
        return cls(complex(z), 1.0 + 0j)

    @property
    def value(self) -> complex:
        """Affine coordinate; ``complex('inf')`` for the point at infinity."""
        if abs(self.q) <= 1e-300 * max(abs(self.p), 1e-300):
            return complex("inf")
        return complex(self.p / self.q)

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.p, self.q], dtype=complex)

    def is_infinite(self, tol: float = 1e-14) -> bool:
        return abs(self.q) <= tol * abs(self.p)

    def same_as(self, other: "BoundaryPoint", tol: float = 1e-12) -> bool:
        return projective_distance(self, other) < tol


INFINITY = BoundaryPoint(1.0 + 0j, 0j)
ZERO = BoundaryPoint(0j, 1.0 + 0j)


def projective_distance(e1: BoundaryPoint, e2: BoundaryPoint) -> float:
    """Chordal-type distance ``|p1 q2 - p2 q1| / (|e1| |e2|)``, in ``[0, 1]``."""
    v1, v2 = e1.vec, e2.vec
    return float(abs(v1[0] * v2[1] - v1[1] * v2[0]) / (np.linalg.norm(v1) * np.linalg.norm(v2)))


@dataclass(frozen=True)
class QForm:
    """Binary quadratic form ``a x^2 + 2b xy + c y^2`` up to complex scale."""

    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        if self.a == 0 and self.b == 0 and self.c == 0:
            raise ValueError("the zero form does not represent a line")

    @classmethod
    def from_vec(cls, v) -> "QForm":
        a, b, c = (complex(x) for x in v)
        return cls(a, b, c)

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c], dtype=complex)

    @property
    def disc(self) -> complex:
        return self.a * self.c - self.b * self.b

    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def scaled(self, lam: complex) -> "QForm":
        return QForm(lam * self.a, lam * self.b, lam * self.c)

    def relative_disc(self) -> float:
        return abs(self.disc) / self.norm() ** 2

    def is_line(self, threshold: float = DEGENERACY_THRESHOLD) -> bool:
        return self.relative_disc() >= threshold

    def normalized(self) -> "QForm":
        """Representative whose largest-modulus coefficient is exactly 1."""
        v = self.vec
        k = int(np.argmax(np.abs(v)))
        v = v / v[k]
        v[k] = 1.0
        return QForm.from_vec(v)

    def __call__(self, x, y=1.0):
        return self.a * x * x + 2 * self.b * x * y + self.c * y * y


def _vec(f) -> np.ndarray:
    return f.vec if isinstance(f, QForm) else np.asarray(f, dtype=complex)


def delta_pairing(f1: QForm, f2: QForm) -> complex:
    """Polarization of the discriminant; zero iff the two lines meet at a right angle."""
    a1, b1, c1 = _vec(f1)
    a2, b2, c2 = _vec(f2)
    return complex(a1 * c2 + a2 * c1 - 2 * b1 * b2)


def bracket_vec(v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    a1, b1, c1 = v1
    a2, b2, c2 = v2
    return np.array([a1 * b2 - a2 * b1, (a1 * c2 - a2 * c1) / 2, b1 * c2 - b2 * c1])


def poisson_bracket(f1: QForm, f2: QForm) -> QForm:
    """Poisson bracket (Jacobian / 4); represents the skewer of the two lines.

    The result may be the zero vector for proportional inputs, in which case a
    plain coefficient array is returned instead of a QForm.
    """
    v = bracket_vec(_vec(f1), _vec(f2))
    if not np.any(v):
        return v
    return QForm.from_vec(v)


def skewer(f1: QForm, f2: QForm, threshold: float = DEGENERACY_THRESHOLD) -> QForm:
    """Common perpendicular, with the general-position gate applied.

    Raises DegenerateForm when the bracket is (relatively) zero or fails to be
    a genuine line.
    """
    v1, v2 = _vec(f1), _vec(f2)
    s = bracket_vec(v1, v2)
    ns = np.linalg.norm(s)
    if ns < threshold * np.linalg.norm(v1) * np.linalg.norm(v2):
        raise DegenerateForm("lines coincide; the skewer is undefined")
    f = QForm.from_vec(s / ns)
    if not f.is_line(threshold):
        raise DegenerateForm("skewer is tangent to the boundary conic")
    return f


def form_from_endpoints(e1: BoundaryPoint, e2: BoundaryPoint) -> QForm:
    """Form vanishing exactly at the two boundary points."""
    if projective_distance(e1, e2) < DEGENERACY_THRESHOLD:
        raise EqualEndpoints("a geodesic needs two distinct endpoints")
    p1, q1 = e1.p, e1.q
    p2, q2 = e2.p, e2.q
    return QForm(q1 * q2, -(p1 * q2 + p2 * q1) / 2, p1 * p2)


def endpoints_from_form(f: QForm) -> tuple[BoundaryPoint, BoundaryPoint]:
    """The two projective roots of ``f``, as an (arbitrarily ordered) pair."""
    if f.relative_disc() < DEGENERACY_THRESHOLD:
        raise DegenerateForm("double root: the form is tangent to the boundary conic")
    a, b, c = f.vec
    s = np.sqrt(b * b - a * c)
    # pick the sign that avoids cancellation in -b -/+ s
    if abs(-b - s) < abs(-b + s):
        s = -s
    q = -b - s
    return BoundaryPoint(complex(q), complex(a)), BoundaryPoint(complex(c), complex(q))


def right_angle_residual(f1: QForm, f2: QForm) -> float:
    v1, v2 = _vec(f1), _vec(f2)
    return abs(delta_pairing(v1, v2)) / (np.linalg.norm(v1) * np.linalg.norm(v2))


def _unit_rows(vectors) -> np.ndarray:
    rows = np.array([_vec(v) for v in vectors])
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def common_skewer_residual(f1: QForm, f2: QForm, f3: QForm) -> float:
    """Smallest singular value of the row-normalized coefficient matrix."""
    return float(np.linalg.svd(_unit_rows([f1, f2, f3]), compute_uv=False)[-1])


def same_line_residual(f1: QForm, f2: QForm) -> float:
    """Sine of the angle between coefficient vectors (0 iff same line)."""
    v1, v2 = _unit_rows([f1, f2])
    w = np.outer(v1, v2)
    return float(np.sqrt(np.sum(np.abs(w - w.T) ** 2) / 2))


def triple_det(f1: QForm, f2: QForm, f3: QForm) -> complex:
    return complex(np.linalg.det(np.array([_vec(f1), _vec(f2), _vec(f3)])))


def orthogonal_complement(f: QForm) -> tuple[np.ndarray, np.ndarray]:
    """Basis of the forms meeting ``f`` at a right angle (a line of CP^2)."""
    a, b, c = _vec(f)
    row = np.array([[c, -2 * b, a]])
    _, _, vh = np.linalg.svd(row)
    return vh[1].conj(), vh[2].conj()


def jacobi_defect(f: QForm, g: QForm, h: QForm) -> float:
    f, g, h = _vec(f), _vec(g), _vec(h)
    total = bracket_vec(bracket_vec(f, g), h) + bracket_vec(bracket_vec(g, h), f) + bracket_vec(bracket_vec(h, f), g)
    return float(np.linalg.norm(total) / (np.linalg.norm(f) * np.linalg.norm(g) * np.linalg.norm(h)))


def tomihisa_defect(f1, f2, f3, f4, f5) -> float:
    f1, f2, f3, f4, f5 = (_vec(f) for f in (f1, f2, f3, f4, f5))
    br = bracket_vec
    total = (
        br(f1, br(br(f2, f3), br(f4, f5)))
        + br(f3, br(br(f2, f5), br(f4, f1)))
        + br(f5, br(br(f2, f1), br(f4, f3)))
    )
    scale = np.prod([np.linalg.norm(v) for v in (f1, f2, f3, f4, f5)])
    return float(np.linalg.norm(total) / scale)
