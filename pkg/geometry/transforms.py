"""
Numerical certificates for the maps that relate the families: fixed affine maps from the
confocal pair, rigid frames onto the poristic family and the variable similarity onto the
Brocard porism.
"""
import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq, least_squares, minimize_scalar

from errors import DegenerateError, DomainError, PonceletError
from geometry.centers import brocard_inellipse, center, excentral_triangle, orthic_triangle
from geometry.conics import AxisEllipse, ConicPair, PairFamily, _require_positive, centered_conic_through, \
    centered_inconic, confocal_caustic, sorted_semi_axes
from geometry.families import SKIPPED_ERRORS, family_for, pair_for, parameter_grid
from geometry.invariants import confocal_r_over_R, product_cosines, sum_cosines
from geometry.orbits import brocard_angle_of_homothetic, brocard_pair, confocal_orbit, poristic_orbit, \
    triangle_from_start
from geometry.triangle import Triangle, vertex_angles
from logger import prepare_logger

logger = prepare_logger()

CONGRUENCE_TOL = 1e-9
SIMILARITY_TOL = 1e-8
ISOLATION_TOL = 1e-2
PORISM_GRID = 721


class MapKind(Enum):
    AFFINE = "affine"
    SIMILARITY = "similarity"
    RIGID = "rigid"


@dataclass(frozen=True, eq=False)
class PlanarMap:
    """p -> matrix @ p + translation."""
    kind: MapKind
    matrix: np.ndarray
    translation: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=float).reshape(2, 2)
        if abs(np.linalg.det(matrix)) <= 1e-14 * max(np.abs(matrix).max(), 1e-300) ** 2:
            raise DomainError("planar map is not invertible")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "translation", np.asarray(self.translation, dtype=float).reshape(2))

    @classmethod
    def affine(cls, matrix, translation=(0.0, 0.0)) -> "PlanarMap":
        return cls(MapKind.AFFINE, matrix, translation)

    @classmethod
    def similarity(cls, scale: float, angle: float, translation=(0.0, 0.0)) -> "PlanarMap":
        _require_positive(scale=scale)
        return cls(MapKind.SIMILARITY, scale * _rotation(angle), translation)

    @classmethod
    def rigid(cls, angle: float, translation=(0.0, 0.0)) -> "PlanarMap":
        return cls(MapKind.RIGID, _rotation(angle), translation)

    @classmethod
    def frame(cls, origin, toward) -> "PlanarMap":
        """Rigid map sending origin to (0, 0) and the direction origin -> toward onto +x."""
        origin = np.asarray(origin, dtype=float)
        direction = np.asarray(toward, dtype=float) - origin
        angle = -float(np.arctan2(direction[1], direction[0])) if np.any(direction) else 0.0
        rotation = _rotation(angle)
        return cls(MapKind.RIGID, rotation, -rotation @ origin)

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.matrix))

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.matrix.T + self.translation

    def __call__(self, points) -> np.ndarray:
        return self.apply(points)

    def inverse(self) -> "PlanarMap":
        inv = np.linalg.inv(self.matrix)
        return PlanarMap(self.kind, inv, -inv @ self.translation)


def _rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class Certificate:
    relation: str
    samples: int
    discrepancy: float
    tolerance: float
    passed: bool
    details: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_discrepancies(cls, relation: str, values: Iterable[float], tolerance: float, skipped: int = 0,
                           **details) -> "Certificate":
        values = list(values)
        if not values:
            raise DegenerateError(f"every sample of the {relation} certificate was degenerate")
        discrepancy = float(max(values))
        passed = discrepancy < tolerance
        if not passed:
            logger.warning(f"Certificate {relation} failed: discrepancy {discrepancy:.3g} >= {tolerance:g}")
        details = {"skipped": skipped, **{k: float(v) for k, v in details.items()}}
        return cls(relation, len(values), discrepancy, tolerance, passed, details)

    @property
    def jsonify(self) -> str:
        return json.dumps(asdict(self))


def _per_sample(samples: int, check: Callable[[float], float], phase: float = 0.0) -> Tuple[List[float], int]:
    values, skipped = [], 0
    for t in parameter_grid(samples, phase):
        try:
            values.append(check(t))
        except SKIPPED_ERRORS as e:
            skipped += 1
            logger.debug(f"Certificate sample t={t:.6f} skipped: {e}")
    return values, skipped


def _shape_gap(P, Q) -> float:
    """Distance between sorted side lengths, relative to the larger triangle."""
    ps, qs = np.sort(Triangle(P).sides), np.sort(Triangle(Q).sides)
    return float(np.max(np.abs(ps - qs)) / max(ps[-1], qs[-1]))


def _angle_gap(P, Q) -> float:
    return float(np.max(np.abs(np.sort(vertex_angles(P)) - np.sort(vertex_angles(Q)))))


# fixed affine images of the confocal pair

def affine_image_I(alpha: float, beta: float) -> Tuple[PlanarMap, ConicPair]:
    """Map squeezing x by beta''/alpha'': confocal caustic -> circle of radius beta''."""
    inner_a, inner_b = confocal_caustic(alpha, beta)
    squeeze = inner_b / inner_a
    T = PlanarMap.affine(np.diag([squeeze, 1.0]))
    outer = AxisEllipse(alpha * squeeze, beta)
    pair = ConicPair(PairFamily.INCIRCLE, outer, AxisEllipse.circle(inner_b), {"a": outer.a, "b": outer.b})
    return T, pair


def affine_image_II(alpha: float, beta: float) -> Tuple[PlanarMap, ConicPair]:
    """Map stretching y by alpha/beta: billiard -> circle of radius alpha, caustic -> (alpha'', (alpha/beta) beta'')."""
    inner_a, inner_b = confocal_caustic(alpha, beta)
    stretch = alpha / beta
    T = PlanarMap.affine(np.diag([1.0, stretch]))
    pair = ConicPair.circumellipse(inner_a, inner_b * stretch)
    return T, pair


def _image_residual(pair: ConicPair, vertices: np.ndarray) -> float:
    on_outer = float(np.max(np.abs(pair.outer.value(vertices))))
    tangency = max(abs(pair.inner.tangency_residual(vertices[i], vertices[(i + 1) % 3])) for i in range(3))
    return max(on_outer, tangency / pair.scale)


def affine_certificate(which: str, alpha: float, beta: float, samples: int = 200,
                       tolerance: float = CONGRUENCE_TOL) -> Certificate:
    """Confocal 3-periodics mapped by the fixed affine map land on the image pair and carry its invariant."""
    if which == "I":
        T, pair = affine_image_I(alpha, beta)
        measure, expected = sum_cosines, 1 + confocal_r_over_R(alpha, beta)
    elif which == "II":
        T, pair = affine_image_II(alpha, beta)
        measure, expected = product_cosines, confocal_r_over_R(alpha, beta) / 4
    else:
        raise DomainError(f"unknown affine image {which!r}")

    def check(t: float) -> float:
        image = T(confocal_orbit(alpha, beta, t).vertices)
        return max(_image_residual(pair, image), abs(measure(image) - expected) / expected)

    values, skipped = _per_sample(samples, check)
    return Certificate.from_discrepancies(f"affine_{which}", values, tolerance, skipped, expected=expected,
                                          determinant=T.determinant, cayley=pair.cayley_residual())


# rigid frames onto the poristic family

def _poristic_parameters(a: float, b: float) -> Tuple[float, float, float]:
    return (a + b) / 2, a * b / (a + b), abs(a - b) / 2


def _poristic_match(vertices: np.ndarray, incenter, circumcenter, R: float, r: float) -> float:
    """Puts a triangle in the frame at its circumcenter with +x toward its incenter and compares it to the poristic triangle through its first vertex."""
    frame = PlanarMap.frame(circumcenter, incenter)
    moved = frame(vertices)
    u = float(np.arctan2(moved[0, 1], moved[0, 0]))
    return _shape_gap(moved, poristic_orbit(R, r, u).vertices)


def rotation_certificate_I(a: float, b: float, samples: int = 200, tolerance: float = CONGRUENCE_TOL) -> Certificate:
    """Incircle-family triangles are poristic triangles seen from a frame rotating about X1."""
    _require_positive(a=a, b=b)
    R, r, d = _poristic_parameters(a, b)
    family = family_for(ConicPair.incircle(a, b))

    def check(t: float) -> float:
        T = family.triangle(t)
        x1, x3 = center(T, 1), center(T, 3)
        euler_gap = abs(float(np.linalg.norm(x1 - x3)) - d) / R
        return max(euler_gap, _poristic_match(T.vertices, x1, x3, R, r))

    values, skipped = _per_sample(samples, check)
    return Certificate.from_discrepancies("rotation_I", values, tolerance, skipped, R=R, r=r, d=d)


def rotation_certificate_II(a: float, b: float, samples: int = 200, tolerance: float = CONGRUENCE_TOL) -> Certificate:
    """Circumellipse-family triangles are the excentral triangles of poristic triangles (orthics in the X5 frame)."""
    _require_positive(a=a, b=b)
    R, r, d = _poristic_parameters(a, b)
    family = family_for(ConicPair.circumellipse(a, b))

    def check(t: float) -> float:
        T = family.triangle(t)
        orthic = orthic_triangle(T)
        # orthic incenter and circumcenter are X4 and X5 of the reference triangle
        x4, x5 = center(T, 4), center(T, 5)
        frame = PlanarMap.frame(x5, x4)
        moved = frame(orthic.vertices)
        u = float(np.arctan2(moved[0, 1], moved[0, 0]))
        poristic = poristic_orbit(R, r, u)
        return max(_shape_gap(moved, poristic.vertices),
                   _shape_gap(T.vertices, excentral_triangle(poristic).vertices),
                   abs(float(np.linalg.norm(x4 - x5)) - d) / R)

    values, skipped = _per_sample(samples, check)
    return Certificate.from_discrepancies("rotation_II", values, tolerance, skipped, R=R, r=r, d=d)


# variable similarity onto the Brocard porism

class _PorismIndex:
    """Largest angle of the Brocard porism triangles over a parameter grid, for root bracketing."""

    def __init__(self, pair: ConicPair, grid: int = PORISM_GRID):
        self.pair = pair
        self.u = np.linspace(0.0, 2 * np.pi, grid)
        self.key = np.array([self.largest_angle(u) for u in self.u])

    def triangle(self, u: float) -> Triangle:
        return triangle_from_start(self.pair, u)

    def largest_angle(self, u: float) -> float:
        return float(np.max(vertex_angles(self.triangle(u).vertices)))

    def match(self, target: float) -> List[float]:
        g = self.key - target
        roots = []
        for i in np.flatnonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0):
            roots.append(brentq(lambda u: self.largest_angle(u) - target, self.u[i], self.u[i + 1], xtol=1e-15))
        if not roots:
            i = int(np.argmin(np.abs(g)))
            lo, hi = self.u[max(i - 1, 0)], self.u[min(i + 1, len(self.u) - 1)]
            result = minimize_scalar(lambda u: abs(self.largest_angle(u) - target), bounds=(lo, hi),
                                     method="bounded", options={"xatol": 1e-13})
            roots.append(float(result.x))
        return roots


def similarity_certificate_III(a: float, b: float, samples: int = 100,
                               tolerance: float = SIMILARITY_TOL) -> Certificate:
    """Homothetic-family triangles match Brocard-porism triangles of the same Brocard angle up to similarity."""
    _require_positive(a=a, b=b)
    family = family_for(ConicPair.homothetic(a, b))
    if a == b:
        values, skipped = _per_sample(samples, lambda t: float(np.max(np.abs(vertex_angles(family.polygon(t)) - np.pi / 3))))
        return Certificate.from_discrepancies("similarity_III", values, tolerance, skipped)

    omega = brocard_angle_of_homothetic(a, b)
    index = _PorismIndex(brocard_pair(max(a, b), omega))
    scales: List[float] = []

    def check(t: float) -> float:
        vertices = family.polygon(t)
        target = float(np.max(vertex_angles(vertices)))
        best, best_scale = np.inf, np.nan
        for u in index.match(target):
            image = index.triangle(u).vertices
            gap = _angle_gap(vertices, image)
            if gap < best:
                best, best_scale = gap, float(np.sort(Triangle(vertices).sides)[-1] / np.sort(Triangle(image).sides)[-1])
        scales.append(best_scale)
        return best

    values, skipped = _per_sample(samples, check, phase=0.0137)
    return Certificate.from_discrepancies("similarity_III", values, tolerance, skipped, omega=omega,
                                          scale_min=float(np.nanmin(scales)), scale_max=float(np.nanmax(scales)))


def brocard_inellipse_certificate(a: float, b: float, samples: int = 200, tolerance: float = CONGRUENCE_TOL) -> Certificate:
    """Aspect ratio of the Brocard inellipse stays fixed over the homothetic family."""
    family = family_for(ConicPair.homothetic(a, b))
    ratios, skipped = _per_sample(samples, lambda t: brocard_inellipse(family.triangle(t)).aspect_ratio)
    if not ratios:
        raise DegenerateError("every Brocard inellipse sample was degenerate")
    mean = float(np.mean(ratios))
    return Certificate.from_discrepancies("brocard_inellipse_aspect", [abs(x - mean) / mean for x in ratios],
                                          tolerance, skipped, aspect_ratio=mean)


# conics riding with the poristic frames

def _axes_certificate(relation: str, samples: int, tolerance: float, expected: Tuple[float, float],
                      conic_of: Callable[[float], Tuple[float, float]]) -> Certificate:
    major, minor = expected

    def check(t: float) -> float:
        got_major, got_minor = conic_of(t)
        return max(abs(got_major - major), abs(got_minor - minor)) / major

    values, skipped = _per_sample(samples, check)
    return Certificate.from_discrepancies(relation, values, tolerance, skipped, semi_major=major, semi_minor=minor)


def circumconic_certificate(a: float, b: float, samples: int = 200, tolerance: float = CONGRUENCE_TOL) -> Certificate:
    """X1-centered circumconic of the poristic family kin to (a, b) has semi-axes (R + d, R - d) = (a, b)."""
    R, r, d = _poristic_parameters(a, b)
    poristic = family_for(pair_for(PairFamily.PORISTIC, R=R, r=r))

    def axes(t: float) -> Tuple[float, float]:
        T = poristic.triangle(t)
        return sorted_semi_axes(centered_conic_through(center(T, 1), T.vertices))

    return _axes_certificate("x1_circumconic", samples, tolerance, (R + d, R - d), axes)


def inconic_certificate(a: float, b: float, samples: int = 200, tolerance: float = CONGRUENCE_TOL) -> Certificate:
    """X3-centered inconic of the circumellipse family has semi-axes (R_h + d', R_h - d')."""
    R, _, d = _poristic_parameters(a, b)
    family = family_for(ConicPair.circumellipse(a, b))

    def axes(t: float) -> Tuple[float, float]:
        T = family.triangle(t)
        return sorted_semi_axes(centered_inconic(center(T, 3), T.vertices))

    return _axes_certificate("x3_inconic", samples, tolerance, (R + d, R - d), axes)


def macbeath_certificate(a: float, b: float, samples: int = 200, tolerance: float = CONGRUENCE_TOL) -> Certificate:
    """X5-centered (MacBeath) inconic of the circumellipse family has semi-axes (R_h, sqrt(R_h^2 - d'^2))."""
    R, _, d = _poristic_parameters(a, b)
    family = family_for(ConicPair.circumellipse(a, b))

    def axes(t: float) -> Tuple[float, float]:
        T = family.triangle(t)
        return sorted_semi_axes(centered_inconic(center(T, 5), T.vertices))

    return _axes_certificate("macbeath_inconic", samples, tolerance, (R, float(np.sqrt(R * R - d * d))), axes)


# affine isolation of the homothetic family

@dataclass(frozen=True)
class IsolationReport:
    residuals: Dict[str, float]
    threshold: float
    caveat: str = "falsification probe over sampled triangles, not a proof"

    @property
    def isolated(self) -> bool:
        return all(v > self.threshold for k, v in self.residuals.items() if k.startswith("homothetic"))

    @property
    def jsonify(self) -> str:
        return json.dumps({**asdict(self), "isolated": self.isolated})


def best_affine_residual(source: ConicPair, target: ConicPair, samples: int = 24) -> float:
    """
    Smallest rms residual, over a single affine map, of sending sampled 3-periodics of source
    onto target: vertices on the target outer conic and sides tangent to its inner conic.
    """
    family = family_for(source)
    triangles = [v for _, v in family.sample(samples, phase=0.0137)]

    def residuals(params: np.ndarray) -> np.ndarray:
        M, shift = params[:4].reshape(2, 2), params[4:]
        out = []
        for v in triangles:
            image = v @ M.T + shift
            out.extend(target.outer.value(image))
            out.extend(target.inner.tangency_residual(image[i], image[(i + 1) % 3]) / target.scale for i in range(3))
        return np.array(out)

    extent = np.diag([target.outer.a / source.outer.a, target.outer.b / source.outer.b])
    starts = [np.eye(2), extent, _rotation(np.pi / 2) @ np.diag([target.outer.a / source.outer.b,
                                                               target.outer.b / source.outer.a])]
    best = np.inf
    for M in starts:
        x0 = np.concatenate([M.ravel(), target.outer.origin - M @ source.outer.origin])
        try:
            result = least_squares(residuals, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=4000)
        except (ValueError, PonceletError) as e:
            logger.debug(f"Affine fit start failed: {e}")
            continue
        if abs(np.linalg.det(result.x[:4].reshape(2, 2))) < 1e-9:
            continue
        best = min(best, float(np.sqrt(np.mean(result.fun ** 2))))
    return best


def group_isolation_check(a: float = 2.0, b: float = 1.0, samples: int = 24,
                          threshold: float = ISOLATION_TOL) -> IsolationReport:
    _, image = affine_image_I(a, b)
    residuals = {
        "homothetic->incircle": best_affine_residual(ConicPair.homothetic(a, b), ConicPair.incircle(a, b), samples),
        "homothetic->circumellipse": best_affine_residual(ConicPair.homothetic(a, b),
                                                          ConicPair.circumellipse(a, b), samples),
        "incircle->incircle": best_affine_residual(ConicPair.incircle(a, b), ConicPair.incircle(a, b), samples),
        "confocal->incircle_image": best_affine_residual(ConicPair.confocal(a, b), image, samples),
    }
    report = IsolationReport(residuals, threshold)
    logger.info(f"Affine isolation probe: {residuals}")
    return report


CERTIFICATES: Dict[str, Callable[..., Certificate]] = {
    "affine_I": lambda a, b, samples: affine_certificate("I", a, b, samples),
    "affine_II": lambda a, b, samples: affine_certificate("II", a, b, samples),
    "rotation_I": rotation_certificate_I,
    "rotation_II": rotation_certificate_II,
    "similarity_III": similarity_certificate_III,
    "brocard_inellipse": brocard_inellipse_certificate,
    "x1_circumconic": circumconic_certificate,
    "x3_inconic": inconic_certificate,
    "macbeath_inconic": macbeath_certificate,
}


# short names accepted on the command line
CERTIFICATE_ALIASES: Dict[str, str] = {
    "thm2": "rotation_I",
    "thm3": "affine_I",
    "thm5": "affine_II",
    "thm6": "rotation_II",
    "thm7": "similarity_III",
    "obs1": "x1_circumconic",
    "obs2": "x3_inconic",
    "obs3": "macbeath_inconic",
}


def certify(relations: Optional[Iterable[str]], a: float, b: float, samples: int = 200) -> List[Certificate]:
    names = list(CERTIFICATES) if not relations else [CERTIFICATE_ALIASES.get(name, name) for name in relations]
    unknown = [name for name in names if name not in CERTIFICATES]
    if unknown:
        raise DomainError(f"unknown relations {unknown}; known: {sorted(CERTIFICATES)}")
    return [CERTIFICATES[name](a, b, samples) for name in names]
