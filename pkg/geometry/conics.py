"""
Planar conic primitives for concentric Poncelet pairs.

Holds the axis-aligned ellipse type used for every outer/inner conic, the closure
relation for concentric axis-aligned pairs, the confocal caustic, and the implicit
conic/quartic fits that classify sampled loci.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import pdist
from scipy.special import comb

from errors import ArityError, DegenerateError, DegenerateFitError, DomainError
from logger import prepare_logger
from settings import CIRCLE_TOL, POINT_TOL, RESIDUAL_TOL

logger = prepare_logger()

Monomial = Tuple[int, int]

CONIC_MONOMIALS: Tuple[Monomial, ...] = ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))
SYMMETRIC_QUARTIC_MONOMIALS: Tuple[Monomial, ...] = ((4, 0), (2, 2), (0, 4), (2, 0), (0, 2), (0, 0))
QUARTIC_MONOMIALS: Tuple[Monomial, ...] = tuple(
    (i, d - i) for d in range(4, -1, -1) for i in range(d, -1, -1)
)


def as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        raise DomainError("point coordinates must be finite")
    return pts


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not (np.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class AxisEllipse:
    """Ellipse (x-cx)²/a² + (y-cy)²/b² = 1; a is the semi-axis along x."""
    a: float
    b: float
    center: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        _require_positive(a=self.a, b=self.b)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    @classmethod
    def circle(cls, radius: float, center: Tuple[float, float] = (0.0, 0.0)) -> "AxisEllipse":
        return cls(radius, radius, center)

    @property
    def is_circle(self) -> bool:
        return self.a == self.b

    @property
    def scale(self) -> float:
        return max(self.a, self.b)

    @property
    def origin(self) -> np.ndarray:
        return np.array(self.center)

    def point(self, t: float) -> np.ndarray:
        return self.origin + np.array([self.a * np.cos(t), self.b * np.sin(t)])

    def value(self, points) -> np.ndarray:
        """Dimensionless level (x/a)² + (y/b)² - 1 relative to the center; zero on the curve."""
        rel = as_points(points) - self.origin
        return (rel[:, 0] / self.a) ** 2 + (rel[:, 1] / self.b) ** 2 - 1.0

    def support(self, normals) -> np.ndarray:
        n = np.asarray(normals, dtype=float).reshape(-1, 2)
        return np.sqrt((self.a * n[:, 0]) ** 2 + (self.b * n[:, 1]) ** 2)

    def tangency_residual(self, p, q) -> float:
        """Signed gap between the line pq and the tangent line of this ellipse with the same normal."""
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        d = q - p
        normal = np.array([d[1], -d[0]])
        length = max(np.hypot(*normal), 1e-300)
        normal = normal / length
        offset = abs(normal @ (p - self.origin))
        return float(offset - self.support(normal)[0])

    def scaled(self, factor: float) -> "AxisEllipse":
        return AxisEllipse(self.a * factor, self.b * factor, self.center)


class PairFamily(Enum):
    CONFOCAL = "confocal"
    INCIRCLE = "incircle"
    CIRCUMELLIPSE = "circumellipse"
    HOMOTHETIC = "homothetic"
    PORISTIC = "poristic"
    BROCARD = "brocard"
    GENERIC = "generic"


@dataclass(frozen=True)
class ConicPair:
    family: PairFamily
    outer: AxisEllipse
    inner: AxisEllipse
    params: Mapping[str, float] = field(default_factory=dict)
    n: int = 3

    @property
    def scale(self) -> float:
        return self.outer.scale

    @property
    def concentric(self) -> bool:
        return self.outer.center == self.inner.center

    def cayley_residual(self) -> float:
        if not self.concentric:
            raise DomainError(f"{self.family.value} pair is not concentric")
        return cayley_residual(self.outer.a, self.outer.b, self.inner.a, self.inner.b)

    @classmethod
    def confocal(cls, a: float, b: float) -> "ConicPair":
        inner_a, inner_b = confocal_caustic(a, b)
        return cls(PairFamily.CONFOCAL, AxisEllipse(a, b), AxisEllipse(inner_a, inner_b), {"a": a, "b": b})

    @classmethod
    def incircle(cls, a: float, b: float) -> "ConicPair":
        return cls(PairFamily.INCIRCLE, AxisEllipse(a, b), AxisEllipse.circle(incircle_radius(a, b)),
                   {"a": a, "b": b})

    @classmethod
    def circumellipse(cls, a: float, b: float) -> "ConicPair":
        _require_positive(a=a, b=b)
        return cls(PairFamily.CIRCUMELLIPSE, AxisEllipse.circle(a + b), AxisEllipse(a, b), {"a": a, "b": b})

    @classmethod
    def homothetic(cls, a: float, b: float) -> "ConicPair":
        _require_positive(a=a, b=b)
        return cls(PairFamily.HOMOTHETIC, AxisEllipse(a, b), AxisEllipse(a / 2, b / 2), {"a": a, "b": b})


def cayley_residual(outer_a: float, outer_b: float, inner_a: float, inner_b: float) -> float:
    """a'/a + b'/b - 1; zero when the concentric axis-aligned pair closes after three steps."""
    _require_positive(outer_a=outer_a, outer_b=outer_b, inner_a=inner_a, inner_b=inner_b)
    return inner_a / outer_a + inner_b / outer_b - 1.0


def incircle_radius(a: float, b: float) -> float:
    _require_positive(a=a, b=b)
    return a * b / (a + b)


def confocal_caustic(alpha: float, beta: float) -> Tuple[float, float]:
    """Semi-axes of the caustic of the 3-periodic billiard in the ellipse (alpha, beta)."""
    _require_positive(alpha=alpha, beta=beta)
    if alpha == beta:
        raise DegenerateError("a circular billiard has no confocal caustic distinct from its center")
    if alpha < beta:
        raise DomainError(f"confocal pair needs alpha > beta, got ({alpha}, {beta})")
    a2, b2 = alpha * alpha, beta * beta
    delta = np.sqrt(a2 * a2 - a2 * b2 + b2 * b2)
    return alpha * (delta - b2) / (a2 - b2), beta * (a2 - delta) / (a2 - b2)


def euler_distance(R: float, r: float) -> float:
    """Distance between circumcenter and incenter, sqrt(R(R - 2r))."""
    _require_positive(R=R, r=r)
    gap = R * (R - 2 * r)
    if gap < -1e-12 * R * R:
        raise DomainError(f"no triangle has circumradius {R} and inradius {r} (needs R >= 2r)")
    return float(np.sqrt(max(gap, 0.0)))


def _design(points: np.ndarray, monomials: Sequence[Monomial]) -> np.ndarray:
    x, y = points[:, 0], points[:, 1]
    return np.column_stack([x ** i * y ** j for i, j in monomials])


def _null_direction(design: np.ndarray, unique: bool) -> Tuple[np.ndarray, float]:
    _, singular, vt = np.linalg.svd(design, full_matrices=False)
    if unique and singular[-2] <= 1e-10 * singular[0]:
        raise DegenerateFitError("sample points do not determine a unique curve")
    coeffs = vt[-1]
    residual = float(np.sqrt(np.mean((design @ coeffs) ** 2)))
    return coeffs, residual


def _normalization(points: np.ndarray, translate: bool) -> Tuple[np.ndarray, float]:
    offset = points.mean(axis=0) if translate else np.zeros(2)
    rms = float(np.sqrt(np.mean(np.sum((points - offset) ** 2, axis=1))))
    if rms <= 1e-300:
        raise DegenerateFitError("all sample points coincide")
    return offset, rms


def _undo_normalization(terms: Dict[Monomial, float], offset: np.ndarray, rms: float) -> Dict[Monomial, float]:
    """Rewrites p((x - offset)/rms) as a polynomial in x, y."""
    mx, my = offset
    result: Dict[Monomial, float] = {}
    for (i, j), value in terms.items():
        value = value / rms ** (i + j)
        for p in range(i + 1):
            for q in range(j + 1):
                term = value * comb(i, p, exact=True) * comb(j, q, exact=True) * (-mx) ** (i - p) * (-my) ** (j - q)
                result[(p, q)] = result.get((p, q), 0.0) + term
    return result


def _unit_with_sign(vector: np.ndarray, lead: float) -> np.ndarray:
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise DegenerateFitError("all coefficients vanish")
    vector = vector / norm
    return -vector if lead < 0 else vector


@dataclass(frozen=True)
class EllipseGeometry:
    center: np.ndarray
    semi_x: float  # semi-axis whose direction is closer to the x axis
    semi_y: float
    angle: float  # direction of the semi_x axis

    @property
    def axis_ratio(self) -> float:
        return max(self.semi_x, self.semi_y) / min(self.semi_x, self.semi_y)

    @property
    def radius(self) -> float:
        return 0.5 * (self.semi_x + self.semi_y)


@dataclass(frozen=True, eq=False)
class ConicImplicit:
    """Ax² + Bxy + Cy² + Dx + Ey + F = 0 with unit-norm coefficients."""
    coefficients: np.ndarray
    residual: float = 0.0

    @classmethod
    def from_coefficients(cls, coefficients, residual: float = 0.0) -> "ConicImplicit":
        coeffs = np.asarray(coefficients, dtype=float).reshape(6)
        lead = coeffs[0] + coeffs[2]
        if lead == 0:
            nonzero = coeffs[np.abs(coeffs) > 0]
            lead = nonzero[0] if nonzero.size else 0.0
        return cls(_unit_with_sign(coeffs, lead), residual)

    def __call__(self, points) -> np.ndarray:
        return _design(as_points(points), CONIC_MONOMIALS) @ self.coefficients

    @property
    def discriminant(self) -> float:
        A, B, C = self.coefficients[:3]
        return float(B * B - 4 * A * C)

    def geometry(self) -> EllipseGeometry:
        A, B, C, D, E, F = self.coefficients
        quad = np.array([[A, B / 2], [B / 2, C]])
        if self.discriminant >= 0:
            raise DegenerateError("conic is not an ellipse")
        center = np.linalg.solve(2 * quad, -np.array([D, E]))
        level = -(center @ quad @ center + D * center[0] + E * center[1] + F)
        eigenvalues, eigenvectors = np.linalg.eigh(quad)
        squares = level / eigenvalues
        if np.any(squares <= 0):
            raise DegenerateError("conic has no real points")
        semi = np.sqrt(squares)
        # eigenvector closest to the x axis defines semi_x
        ix = int(np.argmax(np.abs(eigenvectors[0])))
        direction = eigenvectors[:, ix]
        return EllipseGeometry(center, float(semi[ix]), float(semi[1 - ix]),
                               float(np.arctan2(direction[1], direction[0])))


@dataclass(frozen=True, eq=False)
class QuarticImplicit:
    """Polynomial of total degree at most four, stored as {(i, j): coefficient of x^i y^j}."""
    terms: Mapping[Monomial, float]
    residual: float = 0.0

    @property
    def symmetric(self) -> bool:
        return all(i % 2 == 0 and j % 2 == 0 for (i, j), v in self.terms.items() if v != 0)

    def vector(self) -> np.ndarray:
        return np.array([self.terms.get(m, 0.0) for m in QUARTIC_MONOMIALS])

    def normalized(self) -> "QuarticImplicit":
        vector = self.vector()
        nonzero = vector[np.abs(vector) > 1e-15 * np.max(np.abs(vector), initial=0.0)]
        unit = _unit_with_sign(vector, nonzero[0] if nonzero.size else 0.0)
        return QuarticImplicit(dict(zip(QUARTIC_MONOMIALS, unit)), self.residual)

    def __call__(self, points) -> np.ndarray:
        pts = as_points(points)
        return _design(pts, QUARTIC_MONOMIALS) @ self.vector()

    def relative_residuals(self, points) -> np.ndarray:
        """|p(x)| divided by the sum of the absolute values of its terms at x."""
        design = _design(as_points(points), QUARTIC_MONOMIALS) * self.vector()
        scale = np.sum(np.abs(design), axis=1)
        return np.abs(design.sum(axis=1)) / np.where(scale > 0, scale, 1.0)

    def angle_to(self, other: "QuarticImplicit") -> float:
        """Angle between the two coefficient directions, sign-insensitive."""
        u = self.normalized().vector()
        v = other.normalized().vector()
        if u @ v < 0:
            v = -v
        return float(2 * np.arctan2(np.linalg.norm(u - v), np.linalg.norm(u + v)))


def fit_conic(points) -> ConicImplicit:
    pts = as_points(points)
    if len(pts) < 6:
        raise ArityError(f"a conic fit needs at least 6 points, got {len(pts)}")
    offset, rms = _normalization(pts, translate=True)
    coeffs, residual = _null_direction(_design((pts - offset) / rms, CONIC_MONOMIALS), unique=True)
    terms = _undo_normalization(dict(zip(CONIC_MONOMIALS, coeffs)), offset, rms)
    return ConicImplicit.from_coefficients([terms.get(m, 0.0) for m in CONIC_MONOMIALS], residual)


def fit_quartic(points, symmetric: bool = True) -> QuarticImplicit:
    """
    Least-squares quartic through the points.

    With symmetric=True the basis is {x⁴, x²y², y⁴, x², y², 1} and the points are only
    scaled, so the curve stays symmetric about the origin; otherwise all 15 monomials are
    used after translating to the centroid.
    """
    pts = as_points(points)
    monomials = SYMMETRIC_QUARTIC_MONOMIALS if symmetric else QUARTIC_MONOMIALS
    if len(pts) < len(monomials):
        raise ArityError(f"a quartic fit needs at least {len(monomials)} points, got {len(pts)}")
    offset, rms = _normalization(pts, translate=not symmetric)
    coeffs, residual = _null_direction(_design((pts - offset) / rms, monomials), unique=False)
    terms = _undo_normalization(dict(zip(monomials, coeffs)), offset, rms)
    return QuarticImplicit(terms, residual).normalized()


class LocusClass(Enum):
    STATIONARY_POINT = "P"
    CIRCLE = "C"
    ELLIPSE = "E"
    QUARTIC = "4"
    NON_CONIC = "X"


@dataclass(frozen=True, eq=False)
class LocusDescription:
    label: LocusClass
    diameter: float
    conic: Optional[ConicImplicit] = None
    ellipse: Optional[EllipseGeometry] = None
    quartic: Optional[QuarticImplicit] = None

    @property
    def conic_residual(self) -> float:
        return self.conic.residual if self.conic is not None else float("nan")


def _try_quartic(pts: np.ndarray, symmetric: bool) -> Optional[QuarticImplicit]:
    try:
        return fit_quartic(pts, symmetric=symmetric)
    except (ArityError, DegenerateFitError):
        return None


def describe_locus(points, scale: float, *, point_tol: float = POINT_TOL, residual_tol: float = RESIDUAL_TOL,
                   circle_tol: float = CIRCLE_TOL) -> LocusDescription:
    pts = as_points(points)
    if len(pts) == 0:
        raise ArityError("cannot classify an empty locus")
    _require_positive(scale=scale)

    diameter = float(pdist(pts).max()) if len(pts) > 1 else 0.0
    if diameter < point_tol * scale:
        return LocusDescription(LocusClass.STATIONARY_POINT, diameter)

    conic = None
    try:
        conic = fit_conic(pts)
    except (ArityError, DegenerateFitError) as e:
        logger.debug(f"Conic fit skipped: {e}")

    if conic is not None and conic.residual < residual_tol:
        try:
            ellipse = conic.geometry()
        except DegenerateError:
            logger.debug(f"Conic fit with discriminant {conic.discriminant:.3g} is not an ellipse")
        else:
            label = LocusClass.CIRCLE if ellipse.axis_ratio - 1 < circle_tol else LocusClass.ELLIPSE
            return LocusDescription(label, diameter, conic, ellipse)

    quartic = _try_quartic(pts, symmetric=True)
    if quartic is None or quartic.residual >= residual_tol:
        quartic = _try_quartic(pts, symmetric=False)
    if quartic is not None and quartic.residual < residual_tol:
        return LocusDescription(LocusClass.QUARTIC, diameter, conic, quartic=quartic)
    return LocusDescription(LocusClass.NON_CONIC, diameter, conic, quartic=quartic)


def classify_locus(points, scale: float, **tolerances) -> LocusClass:
    return describe_locus(points, scale, **tolerances).label


def centered_conic_through(center, points) -> EllipseGeometry:
    """Central conic with the given center passing through three points."""
    pts = as_points(points) - np.asarray(center, dtype=float)
    if len(pts) != 3:
        raise ArityError("a centered conic is fixed by exactly three points")
    # (x, y) M (x, y)^T = 1 with M = [[p, q], [q, s]]
    system = np.column_stack([pts[:, 0] ** 2, 2 * pts[:, 0] * pts[:, 1], pts[:, 1] ** 2])
    try:
        p, q, s = np.linalg.solve(system, np.ones(3))
    except np.linalg.LinAlgError as e:
        raise DegenerateError("points do not fix a centered conic") from e
    return _central_geometry(np.asarray(center, dtype=float), np.array([[p, q], [q, s]]))


def centered_inconic(center, vertices) -> EllipseGeometry:
    """Central conic with the given center tangent to the three side lines of a triangle."""
    c = np.asarray(center, dtype=float)
    v = as_points(vertices)
    if len(v) != 3:
        raise ArityError("an inconic needs a triangle")
    rows, rhs = [], []
    for k in range(3):
        p, q = v[k], v[(k + 1) % 3]
        n = np.array([q[1] - p[1], p[0] - q[0]])
        n = n / np.hypot(*n)
        # support function of the conic at n equals the distance from c to the line
        rows.append([n[0] ** 2, 2 * n[0] * n[1], n[1] ** 2])
        rhs.append((n @ (p - c)) ** 2)
    try:
        p, q, s = np.linalg.solve(np.array(rows), np.array(rhs))
    except np.linalg.LinAlgError as e:
        raise DegenerateError("side lines do not fix a centered inconic") from e
    dual = np.array([[p, q], [q, s]])
    try:
        return _central_geometry(c, np.linalg.inv(dual))
    except np.linalg.LinAlgError as e:
        raise DegenerateError("centered inconic is degenerate") from e


def _central_geometry(center: np.ndarray, form: np.ndarray) -> EllipseGeometry:
    eigenvalues, eigenvectors = np.linalg.eigh(form)
    if np.any(eigenvalues <= 0):
        raise DegenerateError("centered conic is not an ellipse")
    semi = 1 / np.sqrt(eigenvalues)
    ix = int(np.argmax(np.abs(eigenvectors[0])))
    direction = eigenvectors[:, ix]
    return EllipseGeometry(center, float(semi[ix]), float(semi[1 - ix]),
                           float(np.arctan2(direction[1], direction[0])))


def points_on(ellipse: AxisEllipse, count: int, phase: float = 0.0) -> np.ndarray:
    t = phase + np.linspace(0, 2 * np.pi, count, endpoint=False)
    return np.column_stack([ellipse.center[0] + ellipse.a * np.cos(t), ellipse.center[1] + ellipse.b * np.sin(t)])


def sorted_semi_axes(geometry: EllipseGeometry) -> Tuple[float, float]:
    return max(geometry.semi_x, geometry.semi_y), min(geometry.semi_x, geometry.semi_y)

