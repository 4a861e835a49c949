"""
Explicit 3-periodic vertices for the concentric pairs, the tangent-chord map of a
Poncelet pair, the poristic and Brocard porisms, and caustic tuning for N-periodics.

Vertex order: every closed form and porism orbit is counterclockwise, so it follows
branch +1 of poncelet_step vertex by vertex.
"""
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy.optimize import brentq

from errors import ConvergenceError, DegenerateError, DomainError
from geometry.centers import brocard_inellipse
from geometry.conics import AxisEllipse, ConicPair, PairFamily, _require_positive, euler_distance
from geometry.triangle import Triangle
from logger import prepare_logger
from settings import CLOSURE_TOL, CONIC_TOL, MAX_ITERATIONS

logger = prepare_logger()

SQRT3 = np.sqrt(3.0)


def _checked(vertices) -> Triangle:
    T = Triangle(np.asarray(vertices, dtype=float))
    T.check_nondegenerate()
    return T


def confocal_orbit(a: float, b: float, t: float) -> Triangle:
    """Billiard 3-periodic in the ellipse (a, b) starting at (a cos t, b sin t)."""
    _require_positive(a=a, b=b)
    if a <= b:
        raise DomainError(f"confocal orbits need a > b, got ({a}, {b})")
    x1, y1 = a * np.cos(t), b * np.sin(t)
    a2, b2 = a * a, b * b
    a4, b4 = a2 * a2, b2 * b2
    c2 = a2 - b2
    d1 = (a * b) ** 2 / c2
    d2 = b4 * x1 ** 2 + a4 * y1 ** 2
    delta = np.sqrt(a4 + b4 - a2 * b2)
    delta1_sq = 2 * delta - a2 - b2
    k1 = d1 ** 2 * delta1_sq / d2
    k2 = np.sqrt(delta1_sq) * d1 / d2 * np.sqrt(max(d2 - d1 ** 2 * delta1_sq, 0.0))

    def vertex(k2s: float) -> np.ndarray:
        x = (-b4 * ((a2 + b2) * k1 - a2) * x1 ** 3 - 2 * a4 * b2 * k2s * x1 ** 2 * y1
             + a4 * ((a2 - 3 * b2) * k1 + b2) * x1 * y1 ** 2 - 2 * a4 * a2 * k2s * y1 ** 3)
        y = (2 * b4 * b2 * k2s * x1 ** 3 + b4 * ((b2 - 3 * a2) * k1 + a2) * x1 ** 2 * y1
             + 2 * a2 * b4 * k2s * x1 * y1 ** 2 - a4 * ((a2 + b2) * k1 - b2) * y1 ** 3)
        q = b4 * (a2 - c2 * k1) * x1 ** 2 + a4 * (b2 + c2 * k1) * y1 ** 2 - 2 * a2 * b2 * c2 * k2s * x1 * y1
        if abs(q) <= 1e-14 * (b4 * a2 * x1 ** 2 + a4 * b2 * y1 ** 2):
            raise DegenerateError(f"confocal vertex denominator vanishes at t={t}")
        return np.array([x, y]) / q

    return _checked([(x1, y1), vertex(k2), vertex(-k2)])


def incircle_orbit(a: float, b: float, t: float) -> Triangle:
    """3-periodic in the ellipse (a, b) about the circle of radius ab/(a+b)."""
    _require_positive(a=a, b=b)
    x1, y1 = a * np.cos(t), b * np.sin(t)
    a2, b2 = a * a, b * b
    k = np.sqrt(a ** 3 * (a + 2 * b) * x1 ** 2 + a2 * b * (2 * a + b) * y1 ** 2)
    q2 = 2 * b2 * (a + b) * ((a2 - b2) * x1 ** 2 + a2 * b2)
    q3 = (b2 * a2 * a2 - y1 ** 2 * a2 * a2 + 2 * a2 * b2 * b2 + a2 * b2 * x1 ** 2 - 2 * x1 ** 2 * b2 * b2) * (a + b)
    if q2 == 0 or q3 == 0:
        raise DegenerateError(f"incircle vertex denominator vanishes at t={t}")
    p2 = (2 * a2 * b2 * (-a2 * b * x1 + k * y1) / q2, -2 * a * b ** 3 * (a2 * b * y1 + k * x1) / q2)
    p3 = (-2 * a2 * b2 * (a2 * b * x1 + k * y1) / q3, 2 * b ** 3 * a * (-a2 * b * y1 + k * x1) / q3)
    return _checked([(x1, y1), p3, p2])


def circumellipse_orbit(a: float, b: float, t: float) -> Triangle:
    """3-periodic in the circle of radius a+b about the ellipse (a, b)."""
    _require_positive(a=a, b=b)
    radius = a + b
    x1, y1 = radius * np.cos(t), radius * np.sin(t)
    a2, b2 = a * a, b * b
    sx = np.sqrt(max(a ** 3 * (a + 2 * b) - (a2 - b2) * x1 ** 2, 0.0))
    sy = np.sqrt(max((a2 - b2) * y1 ** 2 + b ** 3 * (2 * a + b), 0.0))
    kx = a / ((b - a) * x1 ** 2 + a2 * (a + b))
    ky = b / ((a - b) * y1 ** 2 + b2 * (a + b))
    p2 = ((-b2 * x1 + y1 * sx) * kx, -(y1 * a2 + x1 * sy) * ky)
    p3 = (-(b2 * x1 + y1 * sx) * kx, (-y1 * a2 + x1 * sy) * ky)
    return _checked([(x1, y1), p3, p2])


def homothetic_orbit(a: float, b: float, t: float) -> Triangle:
    """3-periodic in the ellipse (a, b) about the ellipse (a/2, b/2); its centroid is the origin."""
    _require_positive(a=a, b=b)
    x1, y1 = a * np.cos(t), b * np.sin(t)
    p2 = ((SQRT3 * a * y1 - b * x1) / (2 * b), (-SQRT3 * b * x1 - a * y1) / (2 * a))
    p3 = ((-SQRT3 * a * y1 - b * x1) / (2 * b), (SQRT3 * b * x1 - a * y1) / (2 * a))
    return _checked([(x1, y1), p3, p2])


def poncelet_step(pair: ConicPair, point, branch: int = 1, tol: float = CONIC_TOL) -> np.ndarray:
    """
    Next vertex of the Poncelet map: follow the tangent from `point` to the inner
    conic until it meets the outer conic again. branch=+1 turns counterclockwise
    about the inner center, branch=-1 clockwise.
    """
    if branch not in (1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch}")
    outer, inner = pair.outer, pair.inner
    p = np.asarray(point, dtype=float)
    if abs(outer.value(p)[0]) > tol:
        raise DomainError(f"point {p} is not on the outer conic")

    rel = p - inner.origin
    u, v = rel[0] / inner.a, rel[1] / inner.b
    rho = np.hypot(u, v)
    if rho <= 1 + 1e-12:
        raise DegenerateError(f"point {p} is not outside the inner conic")
    base, spread = np.arctan2(v, u), np.arccos(1 / rho)

    for phi in (base + spread, base - spread):
        touch = inner.point(phi)
        d = touch - p
        w = p - outer.origin
        qa = (d[0] / outer.a) ** 2 + (d[1] / outer.b) ** 2
        qb = 2 * (w[0] * d[0] / outer.a ** 2 + w[1] * d[1] / outer.b ** 2)
        qc = (w[0] / outer.a) ** 2 + (w[1] / outer.b) ** 2 - 1
        root = np.sqrt(max(qb * qb - 4 * qa * qc, 0.0))
        q = -0.5 * (qb + np.copysign(root, qb))
        nxt = p + (q / qa) * d
        turn = (p[0] - inner.center[0]) * (nxt[1] - inner.center[1]) - (p[1] - inner.center[1]) * (nxt[0] - inner.center[0])
        if np.sign(turn) == branch:
            return nxt
    raise DegenerateError(f"no tangent from {p} turns in direction {branch}")


@dataclass(frozen=True, eq=False)
class NGonOrbit:
    vertices: np.ndarray
    closure_residual: float

    @property
    def n(self) -> int:
        return len(self.vertices)


def poncelet_polygon(pair: ConicPair, start, n: int, branch: int = 1) -> NGonOrbit:
    if n < 3:
        raise DomainError(f"a Poncelet polygon needs at least 3 vertices, got {n}")
    vertices = [np.asarray(start, dtype=float)]
    for _ in range(n):
        vertices.append(poncelet_step(pair, vertices[-1], branch))
    closure = float(np.linalg.norm(vertices[-1] - vertices[0])) / pair.scale
    return NGonOrbit(np.array(vertices[:-1]), closure)


def poristic_pair(R: float, r: float) -> ConicPair:
    """Circumcircle of radius R at the origin and incircle of radius r centered at (d, 0)."""
    d = euler_distance(R, r)
    return ConicPair(PairFamily.PORISTIC, AxisEllipse.circle(R), AxisEllipse.circle(r, (d, 0.0)),
                     {"R": R, "r": r, "d": d})


def triangle_from_start(pair: ConicPair, t: float) -> Triangle:
    p1 = pair.outer.point(t)
    p2 = poncelet_step(pair, p1)
    p3 = poncelet_step(pair, p2)
    return _checked([p1, p2, p3])


def poristic_orbit(R: float, r: float, t: float) -> Triangle:
    return triangle_from_start(poristic_pair(R, r), t)


def _brocard_seed(R: float, omega: float) -> Triangle:
    """Isosceles triangle inscribed in the circle of radius R with Brocard angle omega."""
    cot = 1 / np.tan(omega)
    # cot ω = cot A + 2 cot β for apex A = π - 2β, a quadratic in cot β
    cot_base = (cot + np.sqrt(cot * cot - 3)) / 3
    apex = np.pi - 2 * np.arctan(1 / cot_base)
    angles = (np.pi / 2, 1.5 * np.pi - apex, 1.5 * np.pi + apex)
    return Triangle(np.array([[R * np.cos(x), R * np.sin(x)] for x in angles]))


def brocard_pair(R: float, omega: float) -> ConicPair:
    """Circumcircle of radius R and the Brocard inellipse of Brocard angle omega, rotated so its center lies on +x."""
    _require_positive(R=R, omega=omega)
    if omega >= np.pi / 6:
        raise DomainError(f"Brocard angle must be below pi/6, got {omega}")
    ellipse = brocard_inellipse(_brocard_seed(R, omega))
    # the focal axis is perpendicular to the line from the circumcenter to X39
    inner = AxisEllipse(ellipse.semi_minor, ellipse.semi_major, (float(np.linalg.norm(ellipse.center)), 0.0))
    return ConicPair(PairFamily.BROCARD, AxisEllipse.circle(R), inner, {"R": R, "omega": omega})


def brocard_orbit(R: float, omega: float, t: float) -> Triangle:
    return triangle_from_start(brocard_pair(R, omega), t)


def brocard_angle_of_homothetic(a: float, b: float) -> float:
    """Brocard angle shared by the homothetic family of (a, b): cot ω = √3(a²+b²)/(2ab)."""
    _require_positive(a=a, b=b)
    return float(np.arctan2(2 * a * b, SQRT3 * (a * a + b * b)))


TUNABLE = (PairFamily.INCIRCLE, PairFamily.HOMOTHETIC, PairFamily.CONFOCAL, PairFamily.CIRCUMELLIPSE)


def _inner_builder(outer: AxisEllipse, family: PairFamily, aspect: float) -> Tuple[Callable[[float], AxisEllipse], float]:
    """Inner conic as a function of one scale parameter, plus the parameter's upper bound."""
    if family is PairFamily.INCIRCLE:
        return AxisEllipse.circle, min(outer.a, outer.b)
    if family is PairFamily.HOMOTHETIC:
        return outer.scaled, 1.0
    if family is PairFamily.CONFOCAL:
        if outer.a <= outer.b:
            raise DomainError("confocal tuning needs an outer ellipse with a > b")
        focal_sq = outer.a ** 2 - outer.b ** 2
        return (lambda s: AxisEllipse(np.sqrt(s * s + focal_sq), s)), outer.b
    if family is PairFamily.CIRCUMELLIPSE:
        if not outer.is_circle:
            raise DomainError("circumellipse tuning needs a circular outer conic")
        if not 0 < aspect <= 1:
            raise DomainError(f"inner aspect ratio must lie in (0, 1], got {aspect}")
        return (lambda s: AxisEllipse(s, s * aspect)), outer.a
    raise DomainError(f"caustic tuning is not defined for the {family.value} pair")


def winding_excess(pair: ConicPair, n: int) -> float:
    """Angle swept about the inner center by n Poncelet steps from (a, 0), minus one full turn."""
    p = pair.outer.point(0.0)
    c = pair.inner.origin
    swept = 0.0
    for _ in range(n):
        q = poncelet_step(pair, p)
        u, v = p - c, q - c
        swept += np.arctan2(u[0] * v[1] - u[1] * v[0], u @ v)
        p = q
    return swept - 2 * np.pi


def tune_caustic_for_closure(outer: AxisEllipse, family: PairFamily, n: int, aspect: float = 0.5,
                             max_iterations: int = MAX_ITERATIONS, tol: float = CLOSURE_TOL) -> ConicPair:
    """Inner conic of the given family shape whose Poncelet polygons close after n steps with rotation number 1/n."""
    if n < 3:
        raise DomainError(f"periodicity must be at least 3, got {n}")
    build, upper = _inner_builder(outer, family, aspect)

    def excess(s: float) -> float:
        return winding_excess(ConicPair(family, outer, build(s), n=n), n)

    lo, hi = 1e-3 * upper, (1 - 1e-6) * upper
    try:
        scale, result = brentq(excess, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps,
                               maxiter=max_iterations, full_output=True, disp=False)
    except ValueError as e:
        raise ConvergenceError(f"closure for N={n} is not bracketed in ({lo}, {hi})") from e
    if not result.converged:
        raise ConvergenceError(f"caustic tuning did not converge after {result.iterations} iterations")

    pair = ConicPair(family, outer, build(scale), {"a": outer.a, "b": outer.b, "scale": scale}, n)
    closure = poncelet_polygon(pair, outer.point(0.0), n).closure_residual
    if closure > tol:
        raise ConvergenceError(f"tuned {family.value} pair closes only to {closure:.3g}")
    logger.debug(f"Tuned {family.value} caustic for N={n}: scale={scale:.15g}, closure={closure:.2g}")
    return pair
