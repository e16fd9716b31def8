"""Axial congruences: the line-geometry analogs of circles.

Hyperbolic congruences are stored as an ordered axis plus the cross-ratio
``kappa = [axis1, m1, m2, axis2]`` shared by every member ``m = (m1, m2)``.
Comparing cross-ratios instead of complex distances keeps membership tests
free of ``arccosh`` branch choices.

Elliptic congruences are tori, one circle on each sphere factor; the
spherical circle toolkit below is what the Clifford and Poncelet checks run
on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import elliptic_lines as el
from . import euclidean_lines as eu
from . import hyperbolic_forms as hf
from .errors import (
    ChainStuck,
    DegenerateCircle,
    DegenerateForm,
    DegenerateInput,
    IndeterminateCrossRatio,
    NoAxis,
    NoIntersection,
    PointInsideCircle,
    UnsupportedN,
)
from .hyperbolic_forms import BoundaryPoint

DISTINCT_TOL = 1e-9
MEMBER_TOL = 1e-6
PENCIL_KAPPA = 0.5  # cosh^2(i pi / 4): complex distance i pi/2


# -- cross-ratio and complex distance -----------------------------------------


def _bp(x) -> BoundaryPoint:
    return x if isinstance(x, BoundaryPoint) else BoundaryPoint.from_complex(x)


def _det(x: BoundaryPoint, y: BoundaryPoint) -> complex:
    return x.p * y.q - x.q * y.p


def _same(x: BoundaryPoint, y: BoundaryPoint) -> bool:
    return hf.projective_distance(x, y) <= DISTINCT_TOL


def cross_ratio(a, b, c, d) -> complex:
    """``(a - c)(b - d) / ((a - d)(b - c))`` evaluated homogeneously."""
    pts = [_bp(x) for x in (a, b, c, d)]
    # the formula is 0/0 exactly when three of the points coincide
    for i, j, k in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        if _same(pts[i], pts[j]) and _same(pts[i], pts[k]):
            raise IndeterminateCrossRatio("three of the four points coincide")
    a, b, c, d = pts
    num = _det(a, c) * _det(b, d)
    den = _det(a, d) * _det(b, c)
    scale = np.prod([np.linalg.norm(x.vec) for x in pts])
    if abs(den) <= 1e-15 * scale:
        return complex("inf")
    return complex(num / den)


def complex_distance(l_endpoints, m_endpoints) -> complex:
    """``chi = d + i phi`` from ``cosh^2(chi / 2) = [l1, m1, m2, l2]``; principal branch."""
    l1, l2 = l_endpoints
    m1, m2 = m_endpoints
    cr = cross_ratio(l1, m1, m2, l2)
    chi = 2 * np.arccosh(np.sqrt(complex(cr)))
    if chi.real < 0:
        chi = -chi
    return complex(chi)


# -- Mobius maps ---------------------------------------------------------------


def apply_mobius(M: np.ndarray, e) -> BoundaryPoint:
    v = M @ _bp(e).vec
    return BoundaryPoint(complex(v[0]), complex(v[1]))


def frame_to_axis(e1, e2) -> np.ndarray:
    """Matrix sending 0 to ``e1`` and infinity to ``e2``."""
    e1, e2 = _bp(e1), _bp(e2)
    return np.array([[e2.p, e1.p], [e2.q, e1.q]], dtype=complex)


@dataclass(frozen=True)
class AxialCongruenceH:
    """Orbit of an oriented line under the isometries preserving an oriented axis."""

    axis_endpoints: tuple
    kappa: complex

    def __post_init__(self):
        a1, a2 = (_bp(x) for x in self.axis_endpoints)
        object.__setattr__(self, "axis_endpoints", (a1, a2))
        if hf.projective_distance(a1, a2) < DISTINCT_TOL:
            raise NoAxis("axis endpoints coincide")
        if abs(self.kappa) < DISTINCT_TOL or abs(self.kappa - 1) < DISTINCT_TOL or not np.isfinite(self.kappa):
            raise DegenerateInput("kappa must avoid 0, 1 and infinity")

    @property
    def axis_form(self) -> hf.QForm:
        return hf.form_from_endpoints(*self.axis_endpoints)

    def mobius(self) -> np.ndarray:
        """A Mobius map psi whose graph ``z -> psi(z)`` is the congruence."""
        G = frame_to_axis(*self.axis_endpoints)
        c = self.kappa / (self.kappa - 1)
        return G @ np.diag([c, 1.0]) @ np.linalg.inv(G)

    def member(self, z) -> tuple[BoundaryPoint, BoundaryPoint]:
        z = _bp(z)
        return z, apply_mobius(self.mobius(), z)


def pencil(axis_endpoints) -> AxialCongruenceH:
    """Lines meeting the axis at a right angle."""
    return AxialCongruenceH(tuple(axis_endpoints), PENCIL_KAPPA)


def congruence_from_mobius(psi) -> AxialCongruenceH:
    psi = np.asarray(psi, dtype=complex)
    tr = np.trace(psi)
    disc = tr * tr - 4 * np.linalg.det(psi)
    if abs(disc) < DISTINCT_TOL * np.linalg.norm(psi) ** 2:
        raise NoAxis("Mobius map is parabolic or the identity")
    vals, vecs = np.linalg.eig(psi)
    order = sorted(range(2), key=lambda k: (round(abs(vals[k]), 12), np.angle(vals[k])))
    a1, a2 = (BoundaryPoint(complex(vecs[0, k]), complex(vecs[1, k])) for k in order)
    # kappa from the frame multiplier: [0, 1, c, inf] = c / (c - 1)
    c = vals[order[1]] / vals[order[0]]
    return AxialCongruenceH((a1, a2), complex(c / (c - 1)))


def mobius_through(zs, ws) -> np.ndarray:
    """The Mobius map with ``psi(z_i) = w_i`` for three pairs (nullspace solve)."""
    zs = [_bp(z) for z in zs]
    ws = [_bp(w) for w in ws]
    for pts in (zs, ws):
        for i in range(3):
            for j in range(i + 1, 3):
                if hf.projective_distance(pts[i], pts[j]) < DISTINCT_TOL:
                    raise DegenerateInput("three distinct points are needed on each side")
    rows = []
    for z, w in zip(zs, ws):
        x, y = z.p, z.q
        u, v = w.p, w.q
        # (M z)_1 v - (M z)_2 u = 0 for M = [[m0, m1], [m2, m3]]
        rows.append([x * v, y * v, -x * u, -y * u])
    _, _, vh = np.linalg.svd(np.array(rows))
    return vh[-1].conj().reshape(2, 2)


def mobius_from_three_lines(lines) -> AxialCongruenceH:
    zs = [l[0] for l in lines]
    ws = [l[1] for l in lines]
    return congruence_from_mobius(mobius_through(zs, ws))


def membership_residual(C, m) -> float:
    if isinstance(C, EllipticCongruence):
        return C.membership_residual(m)
    a1, a2 = C.axis_endpoints
    m1, m2 = _bp(m[0]), _bp(m[1])
    if any(_same(x, y) for x in (a1, a2) for y in (m1, m2)):
        # the cross-ratio carries no information (it is 0, 1 or infinity)
        raise IndeterminateCrossRatio("line shares an endpoint with the axis")
    return float(abs(cross_ratio(a1, m1, m2, a2) - C.kappa))


def orthogonal_members(C: AxialCongruenceH, line) -> list:
    """The (generically two) members of ``C`` meeting ``line`` at a right angle."""
    f = line if isinstance(line, hf.QForm) else hf.form_from_endpoints(*line)
    a1, b1, c1 = f.vec
    (A, B), (Cc, D) = C.mobius()
    alpha = a1 * A + b1 * Cc
    beta = a1 * B + c1 * Cc + b1 * D + b1 * A
    gamma = c1 * D + b1 * B
    roots = hf.endpoints_from_form(hf.QForm(alpha, beta / 2, gamma))
    return [C.member(z) for z in roots]


def hyperbolic_second_common_line(C1: AxialCongruenceH, C2: AxialCongruenceH, m):
    s = hf.skewer(C1.axis_form, C2.axis_form)
    H = np.array([[-s.b, -s.c], [s.a, s.b]])
    return apply_mobius(H, m[1]), apply_mobius(H, m[0])


def second_common_line(C1, C2, m, check: bool = True):
    """The other line shared by two congruences that share ``m``.

    ``m`` is reflected in the skewer of the two axes and then reversed.
    """
    if check:
        for C in (C1, C2):
            if membership_residual(C, m) > MEMBER_TOL:
                raise ValueError("m is not a member of both congruences")
    if isinstance(C1, EllipticCongruence):
        s = el.skewer(C1.axis, C2.axis)
        return el.reverse(el.half_turn(s, m))
    return hyperbolic_second_common_line(C1, C2, m)


def endpoint_form(m) -> hf.QForm:
    return hf.form_from_endpoints(*m)


# -- elliptic congruences and spherical circles --------------------------------


@dataclass(frozen=True, eq=False)
class SphericalCircle:
    center: np.ndarray
    rho: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        object.__setattr__(self, "center", c / np.linalg.norm(c))

    @property
    def is_great(self) -> bool:
        return abs(self.rho - np.pi / 2) < 1e-12

    def residual(self, p) -> float:
        return abs(el.sphere_distance(self.center, np.asarray(p)) - self.rho)

    def point(self, theta: float) -> np.ndarray:
        e1, e2 = tangent_frame(self.center)
        return np.cos(self.rho) * self.center + np.sin(self.rho) * (np.cos(theta) * e1 + np.sin(theta) * e2)

    def angle_of(self, p) -> float:
        e1, e2 = tangent_frame(self.center)
        return float(np.arctan2(np.dot(p, e2), np.dot(p, e1)))


def tangent_frame(c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Right-handed orthonormal pair spanning the plane orthogonal to ``c``."""
    ref = np.array([1.0, 0.0, 0.0]) if abs(c[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = ref - np.dot(ref, c) * c
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(c, e1)


def circle_through(p1, p2, p3) -> SphericalCircle:
    """Circle through three sphere points, with radius in ``(0, pi/2]``."""
    p1, p2, p3 = (np.asarray(p, dtype=float) for p in (p1, p2, p3))
    n = np.cross(p2 - p1, p3 - p1)
    if np.linalg.norm(n) < DISTINCT_TOL:
        raise DegenerateCircle("points coincide")
    n /= np.linalg.norm(n)
    h = float(np.dot(n, p1))
    if h < 0:
        n, h = -n, -h
    return SphericalCircle(n, el.sphere_distance(n, p1))


def second_intersection(c1: SphericalCircle, c2: SphericalCircle, known) -> np.ndarray:
    """The intersection point of two circles other than ``known``."""
    known = np.asarray(known, dtype=float)
    if c1.residual(known) > MEMBER_TOL or c2.residual(known) > MEMBER_TOL:
        raise NoIntersection("known point is not on both circles")
    w = np.cross(c1.center, c2.center)
    ww = np.dot(w, w)
    if np.sqrt(ww) < DISTINCT_TOL:
        raise NoIntersection("circles are concentric")
    # the two intersections are mirror images in the plane spanned by the centers
    other = known - 2 * np.dot(known, w) / ww * w
    return other / np.linalg.norm(other)


def tangent_from_point(c: SphericalCircle, p, branch: int) -> SphericalCircle:
    """Great circle through ``p`` tangent to ``c``; ``branch`` picks one of the two."""
    p = np.asarray(p, dtype=float)
    d = el.sphere_distance(p, c.center)
    if d < c.rho - 1e-12 or d > np.pi - c.rho + 1e-12:
        raise PointInsideCircle("no tangent great circle through a point inside the circle")
    perp = c.center - np.dot(c.center, p) * p
    A = np.linalg.norm(perp)
    if A < DISTINCT_TOL:
        raise PointInsideCircle("point is the center of the circle")
    e1 = perp / A
    e2 = np.cross(p, e1)
    k = np.clip(np.sin(c.rho) / A, -1.0, 1.0)
    n = k * e1 + branch * np.sqrt(1 - k * k) * e2
    return SphericalCircle(n, np.pi / 2)


def _orientation(center, p, q) -> float:
    return float(np.linalg.det(np.array([center, p, q])))


def poncelet_step(c_outer: SphericalCircle, c_inner: SphericalCircle, p, branch: int = 1) -> np.ndarray:
    """Next vertex: follow the tangent to ``c_inner`` that travels in the ``branch`` sense around ``c_outer``."""
    candidates = []
    for b in (1, -1):
        g = tangent_from_point(c_inner, p, b)
        q = second_intersection(g, c_outer, p)
        candidates.append((branch * _orientation(c_outer.center, p, q), q))
    sign, q = max(candidates, key=lambda c: c[0])
    if sign <= 0:
        raise ChainStuck("no tangent travels in the requested direction")
    return q


def poncelet_points(c_outer, c_inner, start, branch: int, n: int) -> list:
    if el.sphere_distance(c_outer.center, c_inner.center) + c_inner.rho >= c_outer.rho:
        raise DegenerateInput("inner circle must lie strictly inside the outer one")
    pts = [np.asarray(start, dtype=float)]
    for _ in range(n):
        pts.append(poncelet_step(c_outer, c_inner, pts[-1], branch))
    return pts


def poncelet_chain(c_outer, c_inner, start, branch: int, n: int) -> float:
    """Closure defect: angular distance between the start and the ``n``-th vertex."""
    pts = poncelet_points(c_outer, c_inner, start, branch, n)
    return el.sphere_distance(pts[0], pts[-1])


def poncelet_sweep(c_outer, c_inner, start, n: int, branch: int = 1) -> float:
    """Total angle swept around the outer center in ``n`` steps."""
    pts = poncelet_points(c_outer, c_inner, start, branch, n)
    angles = [c_outer.angle_of(p) for p in pts]
    return float(sum((b - a) % (2 * np.pi) for a, b in zip(angles, angles[1:])))


def bracketed_root(fn, lo: float, hi: float) -> float:
    """Root of ``fn`` on ``[lo, hi]`` given a sign change (Brent's method)."""
    flo, fhi = fn(lo), fn(hi)
    if not (flo > 0 > fhi):
        raise ValueError("root is not bracketed")
    return float(brentq(fn, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=200))


def closing_inner_circle(c_outer: SphericalCircle, inner_center, n: int, winding: int = 1, start=None) -> SphericalCircle:
    """Inner circle about ``inner_center`` whose Poncelet chain closes after ``n`` steps."""
    inner_center = np.asarray(inner_center, dtype=float)
    offset = el.sphere_distance(c_outer.center, inner_center)
    start = c_outer.point(0.3) if start is None else start
    target = 2 * np.pi * winding

    def excess(rho):
        try:
            return poncelet_sweep(c_outer, SphericalCircle(inner_center, rho), start, n) - target
        except ChainStuck:
            # tiny inner circles: the chord passes the outer center and the sweep overshoots
            return 2 * np.pi * n

    span = c_outer.rho - offset
    rho = bracketed_root(excess, 1e-6 * span, (1 - 1e-9) * span)
    return SphericalCircle(inner_center, rho)


@dataclass(frozen=True, eq=False)
class EllipticCongruence:
    """Torus of lines: a circle about ``axis.p_minus`` times a circle about ``axis.p_plus``."""

    axis: el.SpherePairLine
    rho_minus: float
    rho_plus: float

    @property
    def circles(self) -> tuple[SphericalCircle, SphericalCircle]:
        return SphericalCircle(self.axis.p_minus, self.rho_minus), SphericalCircle(self.axis.p_plus, self.rho_plus)

    def member(self, theta_minus: float, theta_plus: float) -> el.SpherePairLine:
        cm, cp = self.circles
        return el.SpherePairLine(cm.point(theta_minus), cp.point(theta_plus))

    def membership_residual(self, m: el.SpherePairLine) -> float:
        cm, cp = self.circles
        return max(cm.residual(m.p_minus), cp.residual(m.p_plus))


def elliptic_congruence_through(l: el.SpherePairLine, axis: el.SpherePairLine) -> EllipticCongruence:
    return EllipticCongruence(
        axis,
        el.sphere_distance(axis.p_minus, l.p_minus),
        el.sphere_distance(axis.p_plus, l.p_plus),
    )


# -- Euclidean congruences --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EuclideanCongruence:
    """Lines at constant dual angle ``phi + eps d`` to an axis."""

    axis: eu.DualLineVector
    phi: float
    d: float

    def frame(self):
        u0 = self.axis.u
        e1, e2 = tangent_frame(u0)
        return self.axis.foot, u0, e1, e2


def euclidean_congruence_member(C: EuclideanCongruence, theta: float, h: float) -> eu.DualLineVector:
    """Base member (through ``foot + d e1`` with direction ``cos phi u0 + sin phi e2``) moved by the screw (theta, h)."""
    P0, u0, e1, e2 = C.frame()
    c, s = np.cos(theta), np.sin(theta)
    r1 = c * e1 + s * e2
    r2 = -s * e1 + c * e2
    point = P0 + C.d * r1 + h * u0
    direction = np.cos(C.phi) * u0 + np.sin(C.phi) * r2
    return eu.line_from_point_direction(point, direction)


# -- Fuss relations ---------------------------------------------------------------


def fuss_residual(n: int, r: float, R: float, d: float) -> float:
    """Bicentric closure condition for circles of radii ``r < R`` at center distance ``d``.

    n = 3 is Euler's ``R^2 - d^2 - 2 r R``; n = 4 is ``(R^2 - d^2)^2 - 2 r^2 (R^2 + d^2)``.
    """
    if n == 3:
        return R * R - d * d - 2 * r * R
    if n == 4:
        return (R * R - d * d) ** 2 - 2 * r * r * (R * R + d * d)
    raise UnsupportedN(f"Fuss relation implemented for n = 3, 4 only (got {n})")


def fuss4_printed_residual(r: float, R: float, d: float) -> float:
    """The quadrilateral relation with ``(R^2 - r^2)`` in place of ``(R^2 - d^2)``."""
    return (R * R - r * r) ** 2 - 2 * r * r * (R * R + d * d)


# -- hyperbolic-plane Poncelet realized by lines of H^3 -------------------------


def disk_chart(center: complex, w: complex) -> complex:
    """Upper half-plane to unit disk, sending ``center`` to 0."""
    return (w - center) / (w - np.conj(center))


def disk_chart_inverse(center: complex, zeta: complex) -> complex:
    return (center - np.conj(center) * zeta) / (1 - zeta)


def h2_circle_point(center: complex, radius: float, theta: float) -> complex:
    return complex(disk_chart_inverse(center, np.tanh(radius / 2) * np.exp(1j * theta)))


def h2_poncelet_congruences(outer_center: complex, R: float, inner_center: complex, r: float):
    """Congruences encoding a pair of circles of the plane over the real axis.

    Members of the first are the lines orthogonal to that plane through the
    points of the outer circle; members of the second are the lines of the
    plane tangent to the inner circle.
    """
    P1, P2 = complex(outer_center), complex(inner_center)
    q = h2_circle_point(P1, R, 0.0)
    outer_axis = (BoundaryPoint.from_complex(P1), BoundaryPoint.from_complex(np.conj(P1)))
    C1 = AxialCongruenceH(outer_axis, cross_ratio(P1, q, np.conj(q), np.conj(P1)))
    z0 = np.tanh(r / 2)
    alpha = np.arccos(2 * z0 / (1 + z0 * z0))
    x1 = disk_chart_inverse(P2, np.exp(-1j * alpha)).real
    x2 = disk_chart_inverse(P2, np.exp(1j * alpha)).real
    inner_axis = (BoundaryPoint.from_complex(P2), BoundaryPoint.from_complex(np.conj(P2)))
    C2 = AxialCongruenceH(inner_axis, cross_ratio(P2, x1, x2, np.conj(P2)))
    return C1, C2


def hyperbolic_poncelet_lines(C1, C2, l1, l2, n: int) -> list:
    """Chain of right-angle pairs alternating between ``C1`` and ``C2``; returns the C1 lines."""
    out = [l1]
    for _ in range(n):
        l1 = second_common_line(C1, pencil(l2), l1, check=False)
        l2 = second_common_line(C2, pencil(l1), l2, check=False)
        out.append(l1)
    return out


def hyperbolic_poncelet_defect(C1, C2, l1, l2, n: int) -> float:
    lines = hyperbolic_poncelet_lines(C1, C2, l1, l2, n)
    return hf.same_line_residual(endpoint_form(lines[0]), endpoint_form(lines[-1]))


def _upper(m) -> complex:
    z1, z2 = m[0].value, m[1].value
    return z1 if z1.imag > z2.imag else z2


def h2_poncelet_sweep(outer_center, R, inner_center, r, n: int, theta0: float = 0.3) -> float:
    """Swept angle around the outer center for the real chain started at angle ``theta0``."""
    C1, C2 = h2_poncelet_congruences(outer_center, R, inner_center, r)
    q = h2_circle_point(outer_center, R, theta0)
    l1 = (BoundaryPoint.from_complex(q), BoundaryPoint.from_complex(np.conj(q)))
    best = None
    for l2 in orthogonal_members(C2, l1):
        lines = hyperbolic_poncelet_lines(C1, C2, l1, l2, n)
        angles = [np.angle(disk_chart(outer_center, _upper(m))) for m in lines]
        sweeps = [(b - a) % (2 * np.pi) for a, b in zip(angles, angles[1:])]
        if sweeps[0] < np.pi:  # positively oriented branch
            best = float(sum(sweeps))
    if best is None:
        raise ChainStuck("no positively oriented tangent")
    return best


def closing_h2_radius(outer_center, R, inner_center, n: int, winding: int = 1) -> float:
    P1, P2 = complex(outer_center), complex(inner_center)
    # hyperbolic distance between the centers
    offset = 2 * np.arctanh(abs(disk_chart(P1, P2)))
    span = R - offset

    def excess(r):
        try:
            return h2_poncelet_sweep(P1, R, P2, r, n) - 2 * np.pi * winding
        except ChainStuck:
            return 2 * np.pi * n
        except DegenerateForm:
            # inner circle all but touching the outer one: the two tangents merge and the sweep vanishes
            return -2 * np.pi * winding

    return bracketed_root(excess, 1e-6 * span, (1 - 1e-7) * span)
