import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from errors import DomainError
from geometry.conics import AxisEllipse, ConicPair, PairFamily
from geometry.families import concentric_pair, family_for, pair_for, parameter_grid
from geometry.orbits import brocard_angle_of_homothetic, brocard_orbit, brocard_pair, circumellipse_orbit, \
    confocal_orbit, homothetic_orbit, incircle_orbit, poncelet_polygon, poncelet_step, poristic_orbit, \
    tune_caustic_for_closure
from geometry.triangle import Triangle, metrics

AXES = [(2.0, 1.0), (3.0, 1.0), (1.5, 1.0), (5.0, 4.0)]
FAMILIES = [PairFamily.CONFOCAL, PairFamily.INCIRCLE, PairFamily.CIRCUMELLIPSE, PairFamily.HOMOTHETIC]


def assert_poncelet(pair, vertices, tol=1e-10):
    assert np.max(np.abs(pair.outer.value(vertices))) < tol
    n = len(vertices)
    for i in range(n):
        gap = pair.inner.tangency_residual(vertices[i], vertices[(i + 1) % n])
        assert abs(gap) < tol * pair.scale


@pytest.mark.parametrize("a,b", AXES)
@pytest.mark.parametrize("family", FAMILIES)
def test_closed_forms_are_poncelet_triangles(family, a, b):
    pair = pair_for(family, a, b)
    orbits = family_for(pair)
    for t in parameter_grid(1000, 0.0137):
        assert_poncelet(pair, orbits.polygon(t))


@pytest.mark.parametrize("a,b", AXES)
@pytest.mark.parametrize("family", FAMILIES)
def test_three_steps_return_to_start(family, a, b):
    pair = pair_for(family, a, b)
    for t in (0.1, 1.3, 2.9, 4.4):
        orbit = poncelet_polygon(pair, pair.outer.point(t), 3)
        assert orbit.closure_residual < 1e-9


def test_orientation_conventions():
    assert incircle_orbit(2.0, 1.0, 0.3).is_ccw
    assert circumellipse_orbit(2.0, 1.0, 0.3).is_ccw
    assert homothetic_orbit(2.0, 1.0, 0.3).is_ccw
    assert confocal_orbit(2.0, 1.0, 0.3).is_ccw


@pytest.mark.parametrize("a,b", AXES)
@pytest.mark.parametrize("family", FAMILIES)
def test_closed_forms_follow_the_tangent_chord_map(family, a, b):
    pair = pair_for(family, a, b)
    orbits = family_for(pair)
    for t in parameter_grid(60, 0.0137):
        v = orbits.polygon(t)
        assert Triangle(v).is_ccw
        for i in range(3):
            assert np.allclose(poncelet_step(pair, v[i], 1), v[(i + 1) % 3], atol=1e-9 * pair.scale)


def test_first_vertex_is_the_parameter_point():
    T = incircle_orbit(2.0, 1.0, 0.7)
    assert np.allclose(T.p1, [2 * np.cos(0.7), np.sin(0.7)])


def test_poncelet_step_branches_are_opposite():
    pair = ConicPair.incircle(2.0, 1.0)
    p = pair.outer.point(0.5)
    forward = poncelet_step(pair, p, 1)
    backward = poncelet_step(pair, p, -1)
    assert np.allclose(poncelet_step(pair, forward, 1), backward)


def test_poncelet_step_rejects_points_off_the_outer_conic():
    with pytest.raises(DomainError):
        poncelet_step(ConicPair.incircle(2.0, 1.0), (0.0, 0.0))


def test_confocal_orbit_needs_a_greater_than_b():
    with pytest.raises(DomainError):
        confocal_orbit(1.0, 2.0, 0.0)


@settings(deadline=None, max_examples=25)
@given(st.floats(min_value=1.1, max_value=4.0), st.floats(min_value=0.2, max_value=0.8),
       st.floats(min_value=0.0, max_value=2 * np.pi))
def test_generic_pairs_close_after_three_steps(a, fraction, t):
    pair = concentric_pair(AxisEllipse(a, 1.0), AxisEllipse(fraction * a, 1.0 - fraction))
    orbit = poncelet_polygon(pair, pair.outer.point(t), 3)
    assert orbit.closure_residual < 1e-9
    assert_poncelet(pair, orbit.vertices, tol=1e-9)


def test_poristic_triangles_share_R_and_r():
    for t in np.linspace(0, 2 * np.pi, 25, endpoint=False):
        m = metrics(poristic_orbit(1.5, 2 / 3, t))
        assert m.circumradius == pytest.approx(1.5, rel=1e-10)
        assert m.inradius == pytest.approx(2 / 3, rel=1e-10)


def test_poristic_with_euler_limit_is_equilateral():
    sides = poristic_orbit(1.0, 0.5, 0.8).sides
    assert np.ptp(sides) < 1e-9


def test_brocard_porism_keeps_brocard_angle():
    omega = brocard_angle_of_homothetic(2.0, 1.0)
    assert 1 / np.tan(omega) == pytest.approx(5 * np.sqrt(3) / 4)
    pair = brocard_pair(2.0, omega)
    for t in np.linspace(0, 2 * np.pi, 30, endpoint=False):
        T = brocard_orbit(2.0, omega, t)
        m = metrics(T)
        assert m.brocard_angle == pytest.approx(omega, rel=1e-9)
        assert m.circumradius == pytest.approx(2.0, rel=1e-9)
    assert pair.inner.b > pair.inner.a


def test_brocard_pair_rejects_equilateral_angle():
    with pytest.raises(DomainError):
        brocard_pair(1.0, np.pi / 6)


def test_incircle_tuned_for_four():
    pair = tune_caustic_for_closure(AxisEllipse(2.0, 1.0), PairFamily.INCIRCLE, 4)
    assert pair.inner.a == pytest.approx(2 / np.sqrt(5), rel=1e-9)
    assert poncelet_polygon(pair, pair.outer.point(0.4), 4).closure_residual < 1e-9


def test_homothetic_tuned_for_five():
    pair = tune_caustic_for_closure(AxisEllipse(2.0, 1.0), PairFamily.HOMOTHETIC, 5)
    assert pair.params["scale"] == pytest.approx(np.cos(np.pi / 5), rel=1e-9)


def test_tuning_rejects_small_periodicity():
    with pytest.raises(DomainError):
        tune_caustic_for_closure(AxisEllipse(2.0, 1.0), PairFamily.INCIRCLE, 2)


@pytest.mark.parametrize("a,b", [(2.0, 1.0), (3.0, 1.0), (5.0, 4.0)])
def test_confocal_triangles_obey_the_reflection_law(a, b):
    for t in parameter_grid(90, 0.0137):
        v = confocal_orbit(a, b, t).vertices
        for i in range(3):
            p = v[i]
            normal = np.array([p[0] / a ** 2, p[1] / b ** 2])
            normal /= np.linalg.norm(normal)
            incoming = (v[i - 1] - p) / np.linalg.norm(v[i - 1] - p)
            outgoing = (v[(i + 1) % 3] - p) / np.linalg.norm(v[(i + 1) % 3] - p)
            assert incoming @ normal == pytest.approx(outgoing @ normal, abs=1e-9)
