import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import bicentric_outer_radius, mobius_apply, plain_cross_ratio, planar_sweep
from skewerlab import congruences as cg
from skewerlab import elliptic_lines as el
from skewerlab import euclidean_lines as eu
from skewerlab import hyperbolic_forms as hf
from skewerlab.errors import (
    DegenerateCircle,
    IndeterminateCrossRatio,
    NoAxis,
    NoIntersection,
    PointInsideCircle,
    UnsupportedN,
)
from strategies import complexes

INF = complex("inf")
BP = hf.BoundaryPoint.from_complex
NORTH = np.array([0.0, 0.0, 1.0])


def random_mobius(rng):
    return rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))


def random_congruence(rng):
    return cg.congruence_from_mobius(random_mobius(rng))


def rand_c(rng):
    return complex(*rng.normal(size=2))


# -- cross-ratio and complex distance -------------------------------------------


@given(complexes)
def test_cross_ratio_frame_value(c):
    assume(abs(c) > 1e-3 and abs(c - 1) > 1e-3)
    assert cg.cross_ratio(0, 1, c, INF) == pytest.approx(c / (c - 1), rel=1e-12)


def test_cross_ratio_examples():
    assert cg.cross_ratio(0, -1, 1, INF) == pytest.approx(0.5)
    assert cg.cross_ratio(2j, 1, 2j, 5) == 0
    with pytest.raises(IndeterminateCrossRatio):
        cg.cross_ratio(1, 1, 1, 2)


def test_cross_ratio_matches_affine_oracle(rng):
    for _ in range(200):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        assert cg.cross_ratio(*z) == pytest.approx(plain_cross_ratio(*z), rel=1e-11)


def test_cross_ratio_is_mobius_invariant(rng):
    for _ in range(200):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        M = random_mobius(rng)
        w = [mobius_apply(M, x) for x in z]
        assert cg.cross_ratio(*w) == pytest.approx(cg.cross_ratio(*z), rel=1e-9)


def test_complex_distance_examples():
    k = np.exp(0.3 + 0.7j)
    assert cg.complex_distance((-1, 1), (-k, k)) == pytest.approx(0.3 + 0.7j, abs=1e-12)
    assert abs(cg.complex_distance((-1, 1), (-1, 1))) < 1e-7
    assert cg.complex_distance((0, INF), (-1, 1)) == pytest.approx(1j * np.pi / 2, abs=1e-12)


def test_cosh_identity(rng):
    for _ in range(200):
        chi = complex(rng.uniform(-2, 2), rng.uniform(-np.pi, np.pi))
        k = np.exp(chi)
        cr = cg.cross_ratio(-1, -k, k, 1)
        assert abs(np.cosh(chi / 2) ** 2 * 4 * k - (1 + k) ** 2) < 1e-12 * abs(1 + k) ** 2 + 1e-12
        assert cr == pytest.approx(np.cosh(chi / 2) ** 2, rel=1e-10, abs=1e-12)


# -- congruences from Mobius maps ----------------------------------------------


def test_scaling_map_gives_the_vertical_axis():
    C = cg.congruence_from_mobius(np.diag([2.0, 1.0]))
    a1, a2 = C.axis_endpoints
    assert a1.same_as(hf.ZERO) and a2.is_infinite()
    assert C.kappa == pytest.approx(2.0)
    m = C.member(0.3 + 0.4j)
    assert m[1].value == pytest.approx(0.6 + 0.8j)


@pytest.mark.parametrize("psi", [np.eye(2), np.array([[1.0, 1.0], [0.0, 1.0]])])
def test_non_loxodromic_maps_have_no_axis(psi):
    with pytest.raises(NoAxis):
        cg.congruence_from_mobius(psi)


def test_mobius_through_examples():
    M = cg.mobius_through([1, 2, 3], [2, 4, 6])
    assert np.allclose(M / M[1, 1], np.diag([2, 1]), atol=1e-12)
    with pytest.raises(NoAxis):
        cg.congruence_from_mobius(cg.mobius_through([1, 2j, 3], [1, 2j, 3]))


def test_mobius_through_matches_oracle(rng):
    for _ in range(100):
        zs, ws = rng.normal(size=3) + 1j * rng.normal(size=3), rng.normal(size=3) + 1j * rng.normal(size=3)
        M = cg.mobius_through(zs, ws)
        z = rand_c(rng)
        # a fourth point preserves the cross-ratio with the three given ones
        assert cg.cross_ratio(z, *zs) == pytest.approx(cg.cross_ratio(mobius_apply(M, z), *ws), rel=1e-8)


def test_three_members_recover_kappa(rng):
    for _ in range(100):
        C = random_congruence(rng)
        D = cg.mobius_from_three_lines([C.member(rand_c(rng)) for _ in range(3)])
        assert D.kappa == pytest.approx(C.kappa, rel=1e-10)


def test_orbit_property(rng):
    for _ in range(20):
        psi = random_mobius(rng)
        C = cg.congruence_from_mobius(psi)
        for _ in range(100):
            z = rand_c(rng)
            m = (BP(z), BP(mobius_apply(psi, z)))
            assert cg.membership_residual(C, m) < 1e-12 * max(1, abs(C.kappa))


def test_membership_examples():
    C = cg.congruence_from_mobius(np.diag([2.0, 1.0]))
    z = 0.7 - 0.2j
    assert cg.membership_residual(C, (BP(z), BP(2 * z))) < 1e-15
    assert cg.membership_residual(C, (BP(z), BP(2.1 * z))) == pytest.approx(abs(2.1 / 1.1 - 2))
    assert cg.membership_residual(C, (BP(z), BP(2.1 * z))) == pytest.approx(0.0909, abs=1e-4)
    with pytest.raises(IndeterminateCrossRatio):
        cg.membership_residual(C, C.axis_endpoints)


def test_pencil_members_meet_the_axis_at_right_angles(rng):
    for _ in range(100):
        axis = (BP(rand_c(rng)), BP(rand_c(rng)))
        C = cg.pencil(axis)
        m = C.member(rand_c(rng))
        assert hf.right_angle_residual(cg.endpoint_form(m), hf.form_from_endpoints(*axis)) < 1e-10


def test_orthogonal_members(rng):
    for _ in range(100):
        C = random_congruence(rng)
        line = hf.form_from_endpoints(BP(rand_c(rng)), BP(rand_c(rng)))
        for m in cg.orthogonal_members(C, line):
            assert cg.membership_residual(C, m) < 1e-9 * max(1, abs(C.kappa))
            assert hf.right_angle_residual(cg.endpoint_form(m), line) < 1e-9


# -- the second common line ----------------------------------------------------


def test_second_common_line_of_two_pencils():
    a = (BP(1), BP(-1))
    b = (BP(2j), BP(-2j))
    s = hf.skewer(hf.form_from_endpoints(*a), hf.form_from_endpoints(*b))
    m = hf.endpoints_from_form(s)
    out = cg.second_common_line(cg.pencil(a), cg.pencil(b), m)
    # the only line orthogonal to both is the skewer, now with the other orientation
    assert hf.same_line_residual(cg.endpoint_form(out), s) < 1e-12
    assert out[0].same_as(m[1]) and out[1].same_as(m[0])


def test_second_common_line_hyperbolic(rng):
    for _ in range(100):
        C1 = random_congruence(rng)
        m = C1.member(rand_c(rng))
        axis2 = (BP(rand_c(rng)), BP(rand_c(rng)))
        C2 = cg.AxialCongruenceH(axis2, cg.cross_ratio(axis2[0], m[0], m[1], axis2[1]))
        out = cg.second_common_line(C1, C2, m)
        for C in (C1, C2):
            assert cg.membership_residual(C, out) < 1e-10 * max(1, abs(C.kappa))
        assert hf.same_line_residual(cg.endpoint_form(out), cg.endpoint_form(m)) > 1e-6
        back = cg.second_common_line(C1, C2, out)
        assert back[0].same_as(m[0], 1e-12) and back[1].same_as(m[1], 1e-12)


def test_second_common_line_elliptic(rng):
    for _ in range(100):
        axis1 = el.SpherePairLine.from_vectors(rng.normal(size=3), rng.normal(size=3))
        C1 = cg.EllipticCongruence(axis1, *rng.uniform(0.3, 2.8, size=2))
        m = C1.member(*rng.uniform(0, 2 * np.pi, size=2))
        axis2 = el.SpherePairLine.from_vectors(rng.normal(size=3), rng.normal(size=3))
        C2 = cg.elliptic_congruence_through(m, axis2)
        out = cg.second_common_line(C1, C2, m)
        assert max(C1.membership_residual(out), C2.membership_residual(out)) < 1e-10
        back = cg.second_common_line(C1, C2, out)
        assert np.allclose(back.p_minus, m.p_minus, atol=1e-12) and np.allclose(back.p_plus, m.p_plus, atol=1e-12)


def test_second_common_line_rejects_non_members(rng):
    C1, C2 = random_congruence(rng), random_congruence(rng)
    with pytest.raises(ValueError):
        cg.second_common_line(C1, C2, C1.member(0.3))


def test_elliptic_torus_structure(rng):
    axis = el.SpherePairLine.from_vectors(rng.normal(size=3), rng.normal(size=3))
    C = cg.EllipticCongruence(axis, 0.8, 2.1)
    dm, dp = [], []
    for _ in range(100):
        m = C.member(*rng.uniform(0, 2 * np.pi, size=2))
        dm.append(el.sphere_distance(axis.p_minus, m.p_minus))
        dp.append(el.sphere_distance(axis.p_plus, m.p_plus))
    assert np.ptp(dm) < 1e-12 and np.ptp(dp) < 1e-12


# -- spherical circles ---------------------------------------------------------


def colatitude_point(theta, lon):
    return np.array([np.sin(theta) * np.cos(lon), np.sin(theta) * np.sin(lon), np.cos(theta)])


def test_circle_through_symmetric_points():
    theta = 0.9
    c = cg.circle_through(*(colatitude_point(theta, k * 2 * np.pi / 3) for k in range(3)))
    assert np.allclose(c.center, NORTH) and c.rho == pytest.approx(theta)


def test_circle_through_rejects_coincident_points():
    p = colatitude_point(0.4, 0.1)
    with pytest.raises(DegenerateCircle):
        cg.circle_through(p, p, colatitude_point(1.0, 2.0))


def test_second_intersection_of_great_circles():
    g1, g2 = cg.SphericalCircle([1, 0, 0], np.pi / 2), cg.SphericalCircle([0, 1, 0], np.pi / 2)
    assert np.allclose(cg.second_intersection(g1, g2, NORTH), -NORTH)
    with pytest.raises(NoIntersection):
        cg.second_intersection(g1, g2, colatitude_point(0.5, 0.5))


def test_second_intersection_random(rng):
    for _ in range(100):
        p = rng.normal(size=3)
        p /= np.linalg.norm(p)
        c1 = cg.circle_through(p, *(x / np.linalg.norm(x) for x in rng.normal(size=(2, 3))))
        c2 = cg.circle_through(p, *(x / np.linalg.norm(x) for x in rng.normal(size=(2, 3))))
        q = cg.second_intersection(c1, c2, p)
        assert max(c1.residual(q), c2.residual(q)) < 1e-10


def test_tangent_from_point_on_the_circle():
    c = cg.SphericalCircle(NORTH, 0.6)
    p = c.point(1.1)
    g1, g2 = cg.tangent_from_point(c, p, 1), cg.tangent_from_point(c, p, -1)
    assert np.allclose(g1.center, g2.center, atol=1e-7)
    with pytest.raises(PointInsideCircle):
        cg.tangent_from_point(c, colatitude_point(0.2, 0.0), 1)


def test_tangent_is_tangent(rng):
    c = cg.SphericalCircle(rng.normal(size=3), 0.5)
    for _ in range(50):
        p = cg.SphericalCircle(c.center, rng.uniform(0.7, 2.0)).point(rng.uniform(0, 2 * np.pi))
        for b in (1, -1):
            g = cg.tangent_from_point(c, p, b)
            assert g.residual(p) < 1e-12
            # a great circle is tangent to c iff its pole sits at distance pi/2 -+ rho from the center
            d = el.sphere_distance(g.center, c.center)
            assert min(abs(d - (np.pi / 2 - c.rho)), abs(d - (np.pi / 2 + c.rho))) < 1e-10


# -- Poncelet on the sphere ------------------------------------------------------


def equilateral_circles(theta=1.0):
    outer = cg.SphericalCircle(NORTH, theta)
    v1, v2 = colatitude_point(theta, 0.0), colatitude_point(theta, 2 * np.pi / 3)
    pole = np.cross(v1, v2)
    pole /= np.linalg.norm(pole)
    inner = cg.SphericalCircle(NORTH, abs(np.pi / 2 - el.sphere_distance(NORTH, pole)))
    return outer, inner


def test_equilateral_chain_closes(rng):
    outer, inner = equilateral_circles()
    for t in rng.uniform(0, 2 * np.pi, 20):
        assert cg.poncelet_chain(outer, inner, outer.point(t), 1, 3) < 1e-12
        assert cg.poncelet_chain(outer, inner, outer.point(t), 1, 2) > 0.1


def test_closing_radius_matches_regular_polygon(rng):
    # concentric circles close iff tan(rho_in) = tan(rho_out) cos(pi / n)
    for n in (3, 4, 5, 7):
        outer = cg.SphericalCircle(NORTH, 1.0)
        inner = cg.closing_inner_circle(outer, NORTH, n)
        assert inner.rho == pytest.approx(np.arctan(np.tan(1.0) * np.cos(np.pi / n)), abs=1e-12)


def test_closing_circle_is_start_independent(rng):
    outer = cg.SphericalCircle([0.1, 0.3, 1.0], 1.1)
    e1, _ = cg.tangent_frame(outer.center)
    inner = cg.closing_inner_circle(outer, np.cos(0.2) * outer.center + np.sin(0.2) * e1, 5)
    defects = [cg.poncelet_chain(outer, inner, outer.point(t), 1, 5) for t in rng.uniform(0, 2 * np.pi, 20)]
    assert max(defects) < 1e-6 and np.std(defects) < 1e-6


def test_poncelet_needs_a_nested_pair():
    from skewerlab.errors import DegenerateInput

    with pytest.raises(DegenerateInput):
        cg.poncelet_chain(cg.SphericalCircle(NORTH, 0.5), cg.SphericalCircle(NORTH, 0.7), colatitude_point(0.5, 0), 1, 3)


# -- Euclidean congruences -------------------------------------------------------


def test_euclidean_member_example():
    axis = eu.line_from_point_direction([0, 0, 0], [0, 0, 1])
    m = cg.euclidean_congruence_member(cg.EuclideanCongruence(axis, np.pi / 2, 1.0), 0.0, 0.0)
    assert eu.same_line_residual(m, eu.line_from_point_direction([1, 0, 0], [0, 1, 0])) < 1e-15


@given(st.floats(0, 2 * np.pi), st.floats(-3, 3), st.floats(0.2, 2.9), st.floats(-2, 2))
def test_euclidean_dual_angle_is_constant(theta, h, phi, d):
    axis = eu.line_from_point_direction([0.3, -0.2, 0.5], [1.0, 2.0, -0.5])
    C = cg.EuclideanCongruence(axis, phi, d)
    base = eu.dual_product(axis, cg.euclidean_congruence_member(C, 0.0, 0.0))
    moved = eu.dual_product(axis, cg.euclidean_congruence_member(C, theta, h))
    assert np.allclose(moved, base, atol=1e-12)
    assert base[0] == pytest.approx(np.cos(phi), abs=1e-12)
    assert abs(base[1]) == pytest.approx(abs(d * np.sin(phi)), abs=1e-12)


def test_euclidean_right_angle_members_form_the_pencil(rng):
    axis = eu.line_from_point_direction(rng.normal(size=3), rng.normal(size=3))
    C = cg.EuclideanCongruence(axis, np.pi / 2, 0.0)
    for _ in range(50):
        m = cg.euclidean_congruence_member(C, rng.uniform(0, 2 * np.pi), rng.normal())
        assert eu.right_angle_residual(axis, m) < 1e-12


# -- Fuss ----------------------------------------------------------------------


def test_fuss_examples():
    assert cg.fuss_residual(3, 1, 2, 0) == 0
    assert abs(cg.fuss_residual(4, 1, np.sqrt(2), 0)) < 1e-12
    assert cg.fuss4_printed_residual(1, np.sqrt(2), 0) == pytest.approx(-3)
    with pytest.raises(UnsupportedN):
        cg.fuss_residual(5, 1, 2, 0)


def test_fuss_against_planar_closure(rng):
    for n in (3, 4):
        for _ in range(10):
            r, d = rng.uniform(0.2, 2.0), rng.uniform(0.0, 1.0)
            R = bicentric_outer_radius(n, r, d)
            assert abs(planar_sweep(n, r, R, d) - 2 * np.pi) < 1e-9
            assert abs(cg.fuss_residual(n, r, R, d)) < 1e-9 * R ** (2 if n == 3 else 4)


# -- Poncelet in the hyperbolic plane, through lines of H^3 --------------------------


def test_h2_closing_radius_matches_regular_polygon():
    # concentric circles of H^2 close iff tanh r = tanh R cos(pi / n)
    for n in (3, 4, 6):
        r = cg.closing_h2_radius(0.2 + 1.0j, 1.0, 0.2 + 1.0j, n)
        assert r == pytest.approx(np.arctanh(np.tanh(1.0) * np.cos(np.pi / n)), abs=1e-12)


def test_h2_chart_round_trip(rng):
    P = 0.4 + 0.8j
    for _ in range(50):
        w = complex(rng.normal(), np.exp(rng.normal()))
        assert cg.disk_chart_inverse(P, cg.disk_chart(P, w)) == pytest.approx(w, rel=1e-12)
        assert abs(cg.disk_chart(P, w)) < 1


def test_h2_line_chain_closes_from_complex_starts(rng):
    P1, R = 0.2 + 1.0j, 1.0
    P2 = cg.h2_circle_point(P1, 0.25, 0.7)
    r = cg.closing_h2_radius(P1, R, P2, 5)
    C1, C2 = cg.h2_poncelet_congruences(P1, R, P2, r)
    for _ in range(10):
        l1 = C1.member(rand_c(rng))
        l2 = cg.orthogonal_members(C2, l1)[0]
        assert cg.hyperbolic_poncelet_defect(C1, C2, l1, l2, 5) < 1e-8
    C2_off = cg.h2_poncelet_congruences(P1, R, P2, r * 1.01)[1]
    l1 = C1.member(0.3 + 0.1j)
    assert cg.hyperbolic_poncelet_defect(C1, C2_off, l1, cg.orthogonal_members(C2_off, l1)[0], 5) > 1e-6
