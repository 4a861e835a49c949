import numpy as np
import pytest
import sympy

from errors import ConfigError
from misc.trilinear_parser import a, b, c, compile_trilinear, parse_trilinear


def test_polynomial_expression():
    f = compile_trilinear("a*(b**2 + c**2)")
    assert f(3.0, 4.0, 5.0) == pytest.approx(3 * 41)


def test_caret_is_power():
    assert parse_trilinear("a^2") == a ** 2


def test_aliases_match_sidelengths():
    assert parse_trilinear("s1 + s2 + s3") == a + b + c


def test_angle_macros():
    cos_a = compile_trilinear("cosA")
    sin_a = compile_trilinear("sinA")
    # 3-4-5 right triangle: angle opposite 5 is right
    assert cos_a(5.0, 3.0, 4.0) == pytest.approx(0.0, abs=1e-15)
    assert sin_a(5.0, 3.0, 4.0) == pytest.approx(1.0)
    assert cos_a(3.0, 4.0, 5.0) == pytest.approx(0.8)


def test_area_macro():
    assert compile_trilinear("area")(3.0, 4.0, 5.0) == pytest.approx(6.0)


def test_sqrt_is_symbolic():
    assert parse_trilinear("sqrt(3)*cosA").has(sympy.sqrt(3))


def test_vectorized_evaluation():
    f = compile_trilinear("b + c - a")
    out = f(np.array([1.0, 2.0]), np.array([1.0, 2.0]), np.array([1.0, 3.0]))
    assert np.allclose(out, [1.0, 3.0])


@pytest.mark.parametrize("text", ["a*(", "a +* b", "d + a", "f(a)"])
def test_bad_expressions_are_config_errors(text):
    with pytest.raises(ConfigError):
        parse_trilinear(text)
