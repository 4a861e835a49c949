import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from errors import ConfigError, DegenerateError, InfinityError, UnknownCenterError
from geometry.centers import brocard_inellipse, brocard_points, center, curvature_centroid, default_registry, \
    excentral_triangle, orthic_triangle, read_extension_table, trilinear_to_cartesian
from geometry.triangle import Triangle, vertex_angles

RIGHT = Triangle.from_points((0.0, 0.0), (4.0, 0.0), (0.0, 3.0))


@st.composite
def triangles(draw):
    v = draw(arrays(np.float64, (3, 2), elements=st.floats(min_value=-5, max_value=5)))
    T = Triangle(v)
    assume(T.area > 0.5)
    assume(np.min(T.sides) > 0.5)
    return T


@st.composite
def acute_triangles(draw):
    """Inscribed triangle whose arcs 2A, 2B, 2C are all below pi."""
    angle = st.floats(min_value=0.25, max_value=np.pi / 2 - 0.12)
    A = draw(angle)
    B = draw(st.floats(min_value=max(0.25, np.pi / 2 + 0.12 - A), max_value=min(np.pi / 2 - 0.12, np.pi - 0.25 - A)))
    R = draw(st.floats(min_value=0.5, max_value=5.0))
    theta = draw(st.floats(min_value=0.0, max_value=2 * np.pi))
    origin = draw(arrays(np.float64, 2, elements=st.floats(min_value=-5, max_value=5)))
    arcs = theta + np.array([0.0, 2 * A, 2 * A + 2 * B])
    return Triangle(origin + R * np.column_stack([np.cos(arcs), np.sin(arcs)]))


@pytest.mark.parametrize("k,expected", [
    (1, (1.0, 1.0)),
    (2, (4 / 3, 1.0)),
    (3, (2.0, 1.5)),
    (4, (0.0, 0.0)),
    (5, (1.0, 0.75)),
    (6, (0.72, 0.96)),
])
def test_centers_of_right_triangle(k, expected):
    assert np.allclose(center(RIGHT, k), expected, atol=1e-12)


def test_equilateral_centers_coincide():
    T = Triangle(np.array([[np.cos(x), np.sin(x)] for x in (0.3, 0.3 + 2 * np.pi / 3, 0.3 + 4 * np.pi / 3)]))
    for k in (1, 2, 3, 4, 5, 6):
        assert np.allclose(center(T, k), 0.0, atol=1e-12)


@settings(deadline=None, max_examples=50)
@given(triangles())
def test_euler_line(T):
    x2, x3, x4 = center(T, 2), center(T, 3), center(T, 4)
    assert np.allclose(x2, (x4 + 2 * x3) / 3, atol=1e-7 * T.scale)


@settings(deadline=None, max_examples=50)
@given(triangles())
def test_incenter_is_orthocenter_of_excentral(T):
    assert np.allclose(center(excentral_triangle(T), 4), center(T, 1), atol=1e-7 * T.scale)


@settings(deadline=None, max_examples=200)
@given(acute_triangles())
def test_acute_triangles_are_acute(T):
    assert np.all(vertex_angles(T.vertices) < np.pi / 2 - 0.1)
    assert T.area > 0


@settings(deadline=None, max_examples=50)
@given(acute_triangles())
def test_orthic_incenter_is_orthocenter(T):
    assert np.allclose(center(orthic_triangle(T), 1), center(T, 4), atol=1e-7 * T.scale)


@settings(deadline=None, max_examples=50)
@given(triangles())
def test_curvature_centroid_of_triangle_is_circumcenter(T):
    assert np.allclose(curvature_centroid(T.vertices), center(T, 3), atol=1e-7 * T.scale)


@settings(deadline=None, max_examples=50)
@given(triangles())
def test_brocard_points_are_equidistant_from_circumcenter(T):
    first, second = brocard_points(T)
    x3 = center(T, 3)
    assert np.linalg.norm(first - x3) == pytest.approx(np.linalg.norm(second - x3), abs=1e-7 * T.scale)


@settings(deadline=None, max_examples=50)
@given(triangles())
def test_brocard_inellipse_is_centered_at_x39(T):
    ellipse = brocard_inellipse(T)
    assert np.allclose(ellipse.center, center(T, 39), atol=1e-7 * T.scale)
    assert ellipse.semi_major >= ellipse.semi_minor


def test_orthic_of_right_triangle_is_degenerate():
    with pytest.raises(DegenerateError):
        orthic_triangle(RIGHT)


def test_center_at_infinity():
    # sides are (5, 3, 4); 3*5 - 5*3 = 0
    with pytest.raises(InfinityError):
        trilinear_to_cartesian(RIGHT, 3.0, -5.0, 0.0)


def test_unknown_center():
    with pytest.raises(UnknownCenterError):
        center(RIGHT, 99999)
    with pytest.raises(KeyError):
        default_registry()[99999]


def test_registry_holds_required_centers():
    registry = default_registry()
    assert registry.missing() == []
    assert registry[3].name == "Circumcenter"


def test_extension_table(tmp_path):
    path = tmp_path / "centers.txt"
    path.write_text("# extra rows\n\n30, Euler infinity point, cosA - 2*cosB*cosC\n")
    rows = read_extension_table(path)
    assert rows == [(30, " Euler infinity point", " cosA - 2*cosB*cosC")]
    registry = default_registry(str(path))
    assert 30 in registry
    assert registry[30].expression == "cosA - 2*cosB*cosC"


@pytest.mark.parametrize("text", ["30 Euler", "x, name, a", "31, bad, d + a"])
def test_bad_extension_rows(tmp_path, text):
    path = tmp_path / "centers.txt"
    path.write_text(text + "\n")
    with pytest.raises(ConfigError):
        default_registry(str(path))
