import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import minkowski_right_angle, uhs_on_geodesic
from skewerlab import hyperbolic_forms as hf
from skewerlab.errors import DegenerateForm, EqualEndpoints
from strategies import complexes, forms, random_form

BP = hf.BoundaryPoint.from_complex


def endpoint_values(f):
    return sorted((e.value for e in hf.endpoints_from_form(f)), key=lambda z: (not np.isfinite(z), z.real, z.imag))


# -- worked examples -----------------------------------------------------------


@pytest.mark.parametrize(
    "f, g, expected",
    [((1, 0, 1), (1, 0, -1), 0), ((1, 0, 0), (1, 0, 0), 0), ((1, 1, 0), (0, 1, 1), -1)],
)
def test_delta_pairing_examples(f, g, expected):
    assert hf.delta_pairing(hf.QForm(*f), hf.QForm(*g)) == expected


def test_bracket_examples():
    x2, y2 = hf.QForm(1, 0, 0), hf.QForm(0, 0, 1)
    assert np.allclose(hf.poisson_bracket(x2, y2).vec, [0, 0.5, 0])
    f = hf.QForm(1, 2j, 3)
    assert not np.any(hf.poisson_bracket(f, f))
    s = hf.poisson_bracket(hf.QForm(1, 0, -1), hf.QForm(1, 0, 1))
    assert hf.same_line_residual(s, hf.QForm(0, 1, 0)) < 1e-15


def test_skewer_of_unit_geodesics_is_vertical_axis_in_upper_half_space():
    s = hf.skewer(hf.QForm(1, 0, -1), hf.QForm(1, 0, 1))
    ends = endpoint_values(s)
    assert ends[0] == 0 and not np.isfinite(ends[1])
    # all three geodesics pass through the point at height 1 over the origin
    for z1, z2 in ((1, -1), (1j, -1j)):
        assert uhs_on_geodesic(0j, 1.0, z1, z2) < 1e-15


def test_skewer_rejects_coincident_lines():
    f = hf.QForm(1, 0.3j, -2)
    with pytest.raises(DegenerateForm):
        hf.skewer(f, f.scaled(2 - 1j))


@pytest.mark.parametrize(
    "e1, e2, expected",
    [
        (hf.ZERO, hf.INFINITY, (0, -0.5, 0)),
        (hf.BoundaryPoint(1, 1), hf.BoundaryPoint(-1, 1), (1, 0, -1)),
        (hf.BoundaryPoint(1j, 1), hf.BoundaryPoint(-1j, 1), (1, 0, 1)),
    ],
)
def test_form_from_endpoints_examples(e1, e2, expected):
    assert np.allclose(hf.form_from_endpoints(e1, e2).vec, expected)


def test_form_from_endpoints_rejects_equal_points():
    with pytest.raises(EqualEndpoints):
        hf.form_from_endpoints(BP(2 + 1j), hf.BoundaryPoint(4 + 2j, 2))


def test_endpoints_examples():
    assert np.allclose(endpoint_values(hf.QForm(1, 0, -1)), [-1, 1])
    ends = endpoint_values(hf.QForm(0, -0.5, 0))
    assert ends[0] == 0 and not np.isfinite(ends[1])
    with pytest.raises(DegenerateForm):
        hf.endpoints_from_form(hf.QForm(1, -1, 1))


def test_right_angle_examples():
    assert hf.right_angle_residual(hf.QForm(1, 0, 1), hf.QForm(1, 0, -1)) == 0
    assert hf.right_angle_residual(hf.QForm(1, 0, 0), hf.QForm(0, 0, 1)) == 1
    assert hf.right_angle_residual(hf.QForm(0, 0.5, 0), hf.QForm(1, 0, -1)) == 0


def test_common_skewer_examples(rng):
    f, g = random_form(rng), random_form(rng)
    assert hf.common_skewer_residual(f, f, g) < 1e-15
    e = [hf.QForm(1, 0, 0), hf.QForm(0, 1, 0), hf.QForm(0, 0, 1)]
    assert hf.common_skewer_residual(*e) == pytest.approx(1.0)


def test_petersen_morley_rows_are_dependent(rng):
    for _ in range(50):
        f, g, h = (random_form(rng) for _ in range(3))
        S = hf.skewer
        rows = [S(S(f, g), h), S(S(g, h), f), S(S(h, f), g)]
        assert hf.common_skewer_residual(*rows) < 1e-10


def test_normalized_has_unit_leading_coefficient():
    f = hf.QForm(0.1, -3j, 2).normalized()
    assert f.b == 1 and hf.same_line_residual(f, hf.QForm(0.1, -3j, 2)) < 1e-15


# -- the Minkowski oracle ------------------------------------------------------


def test_right_angle_agrees_with_minkowski_oracle(rng):
    for _ in range(200):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        l = (z[0], z[1])
        f = hf.form_from_endpoints(BP(l[0]), BP(l[1]))
        # a random generic line: neither model sees a right angle
        assert hf.right_angle_residual(f, hf.form_from_endpoints(BP(z[2]), BP(z[3]))) > 1e-9
        assert minkowski_right_angle(l, (z[2], z[3])) > 1e-9
        # a random member of the orthogonal complement: both models see one
        e1, e2 = hf.orthogonal_complement(f)
        w = rng.normal(size=2) + 1j * rng.normal(size=2)
        h = hf.QForm.from_vec(w[0] * e1 + w[1] * e2)
        assert hf.right_angle_residual(f, h) < 1e-12
        assert minkowski_right_angle(l, [e.value for e in hf.endpoints_from_form(h)]) < 1e-7


# -- properties --------------------------------------------------------------


@given(forms(), forms(), forms())
def test_jacobi_identity(f, g, h):
    assert hf.jacobi_defect(f, g, h) < 1e-12


@given(forms(), forms(), forms(), forms(), forms())
def test_tomihisa_identity(f1, f2, f3, f4, f5):
    assert hf.tomihisa_defect(f1, f2, f3, f4, f5) < 1e-12


@given(forms(), forms(), forms())
def test_triple_product_is_determinant(f, g, h):
    lhs = hf.delta_pairing(hf.poisson_bracket(f, g), h) if np.any(hf.bracket_vec(f.vec, g.vec)) else 0
    rhs = hf.triple_det(f, g, h)
    scale = f.norm() * g.norm() * h.norm()
    assert abs(lhs - rhs) <= 1e-12 * scale


@given(complexes, complexes)
def test_endpoint_round_trip(z1, z2):
    assume(abs(z1 - z2) > 1e-3)
    e1, e2 = BP(z1), BP(z2)
    r1, r2 = hf.endpoints_from_form(hf.form_from_endpoints(e1, e2))
    straight = max(hf.projective_distance(e1, r1), hf.projective_distance(e2, r2))
    swapped = max(hf.projective_distance(e1, r2), hf.projective_distance(e2, r1))
    assert min(straight, swapped) < 1e-12


@given(complexes)
def test_round_trip_through_infinity(z):
    r1, r2 = hf.endpoints_from_form(hf.form_from_endpoints(BP(z), hf.INFINITY))
    assert {r1.is_infinite(), r2.is_infinite()} == {True, False}
    finite = r2 if r1.is_infinite() else r1
    assert hf.projective_distance(finite, BP(z)) < 1e-12


@given(forms(), forms(), forms(), st.floats(0.5, 2.0), st.floats(0, 2 * np.pi))
def test_projective_stability(f, g, h, modulus, phase):
    lam = modulus * np.exp(1j * phase)
    fs = f.scaled(lam)
    assert abs(hf.right_angle_residual(fs, g) - hf.right_angle_residual(f, g)) < 1e-14
    assert abs(hf.common_skewer_residual(fs, g, h) - hf.common_skewer_residual(f, g, h)) < 1e-14
    assert abs(hf.same_line_residual(fs, g) - hf.same_line_residual(f, g)) < 1e-14
    assert hf.same_line_residual(fs, f) < 1e-14


@given(forms(), forms(), forms())
def test_common_skewer_residual_is_symmetric(f, g, h):
    r = hf.common_skewer_residual(f, g, h)
    for perm in ((g, f, h), (h, g, f), (f, h, g)):
        assert abs(hf.common_skewer_residual(*perm) - r) < 1e-14


@given(forms())
def test_orthogonal_complement_is_orthogonal(f):
    for e in hf.orthogonal_complement(f):
        assert abs(hf.delta_pairing(f.vec / f.norm(), e)) < 1e-12


@given(forms(), forms())
def test_skewer_meets_both_at_right_angles(f, g):
    assume(hf.same_line_residual(f, g) > 1e-3)
    try:
        s = hf.skewer(f, g)
    except DegenerateForm:
        return
    assert hf.right_angle_residual(s, f) < 1e-12 * max(1.0, 1 / hf.same_line_residual(f, g))
    assert hf.right_angle_residual(s, g) < 1e-12 * max(1.0, 1 / hf.same_line_residual(f, g))
