"""
Parses trilinear-coordinate expressions of the sidelengths into numeric callables.

Grammar: the sidelength symbols ``a, b, c`` (aliases ``s1, s2, s3``), numbers, the
operators ``+ - * / ** ^``, parentheses, ``sqrt`` and the angle macros ``cosA``,
``cosB``, ``cosC``, ``sinA``, ``sinB``, ``sinC`` and ``area``. The expression is the
first trilinear coordinate; the others follow by cyclic rotation of the sidelengths.
"""
from tokenize import TokenError
from typing import Callable

import sympy
from sympy.core.function import AppliedUndef
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from errors import ConfigError

a, b, c = sympy.symbols("a b c", positive=True)

_AREA = sympy.sqrt((a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)) / 4

_NAMESPACE = {
    "a": a,
    "b": b,
    "c": c,
    "s1": a,
    "s2": b,
    "s3": c,
    "sqrt": sympy.sqrt,
    "area": _AREA,
    "cosA": (b ** 2 + c ** 2 - a ** 2) / (2 * b * c),
    "cosB": (c ** 2 + a ** 2 - b ** 2) / (2 * c * a),
    "cosC": (a ** 2 + b ** 2 - c ** 2) / (2 * a * b),
    "sinA": 2 * _AREA / (b * c),
    "sinB": 2 * _AREA / (c * a),
    "sinC": 2 * _AREA / (a * b),
}

_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def parse_trilinear(text: str) -> sympy.Expr:
    try:
        expr = parse_expr(text, local_dict=dict(_NAMESPACE), transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, TokenError, NameError) as e:
        raise ConfigError(f"cannot parse trilinear expression {text!r}: {e}") from e

    if not isinstance(expr, sympy.Expr):
        raise ConfigError(f"trilinear expression {text!r} is not arithmetic")
    unknown = expr.free_symbols - {a, b, c}
    if unknown:
        names = ", ".join(sorted(str(s) for s in unknown))
        raise ConfigError(f"unknown symbols in trilinear expression {text!r}: {names}")
    if expr.atoms(AppliedUndef):
        raise ConfigError(f"unknown function in trilinear expression {text!r}")
    return expr


def compile_trilinear(text: str) -> Callable[[float, float, float], float]:
    """Returns f(s1, s2, s3) evaluating the first trilinear coordinate."""
    return sympy.lambdify((a, b, c), parse_trilinear(text), modules="numpy")
