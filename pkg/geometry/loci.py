"""
Loci of triangle centers over a family: sampling, closed-form expectations, fits,
the locus-type grid, the conic-locus probe for the incenter and the X16 radius scan.
"""
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from consts import TABLE1, TABLE1_COLUMNS, normalize_label
from errors import DegenerateError, DomainError, PonceletError
from geometry.centers import CenterRegistry, center, curvature_centroid, default_registry, excentral_triangle, \
    orthic_triangle
from geometry.conics import AxisEllipse, ConicPair, LocusClass, LocusDescription, PairFamily, QuarticImplicit, \
    describe_locus, fit_conic
from geometry.families import SKIPPED_ERRORS, Family, concentric_pair, family_for, pair_for, parameter_grid
from geometry.triangle import Triangle
from logger import prepare_logger
from settings import DEFAULT_SAMPLES, RANDOM_SEED, SAMPLE_PHASE

logger = prepare_logger()

MIN_LOCUS_SAMPLES = 8


class Derived(Enum):
    REFERENCE = "reference"
    EXCENTRAL = "excentral"
    ORTHIC = "orthic"


_DERIVE: Dict[Derived, Callable[[Triangle], Triangle]] = {
    Derived.REFERENCE: lambda T: T,
    Derived.EXCENTRAL: excentral_triangle,
    Derived.ORTHIC: orthic_triangle,
}


@dataclass(frozen=True, eq=False)
class LocusSamples:
    points: np.ndarray
    parameters: np.ndarray
    skipped: int

    def __len__(self) -> int:
        return len(self.points)


def _as_family(source: Union[ConicPair, Family]) -> Family:
    return source if isinstance(source, Family) else family_for(source)


def sample_points(source: Union[ConicPair, Family], point_of: Callable[[np.ndarray], np.ndarray],
                  n: int = DEFAULT_SAMPLES, phase: float = SAMPLE_PHASE) -> LocusSamples:
    """Evaluates point_of(vertices) over a uniform parameter grid, skipping degenerate samples."""
    if n < MIN_LOCUS_SAMPLES:
        raise DomainError(f"a locus needs at least {MIN_LOCUS_SAMPLES} samples, got {n}")
    family = _as_family(source)
    points, parameters, skipped = [], [], 0
    with np.errstate(all="ignore"):
        for t in parameter_grid(n, phase):
            try:
                p = np.asarray(point_of(family.polygon(t)), dtype=float)
            except SKIPPED_ERRORS as e:
                skipped += 1
                logger.debug(f"Locus sample t={t:.6f} skipped: {e}")
                continue
            if not np.all(np.isfinite(p)):
                skipped += 1
                continue
            points.append(p)
            parameters.append(t)
    if not points:
        raise DegenerateError(f"all {n} locus samples over {family!r} were degenerate")
    if skipped:
        logger.info(f"Locus over {family!r}: {len(points)} samples, {skipped} skipped")
    return LocusSamples(np.array(points), np.array(parameters), skipped)


def sample_locus(source: Union[ConicPair, Family], k: int, derived: Derived = Derived.REFERENCE,
                 n: int = DEFAULT_SAMPLES, phase: float = SAMPLE_PHASE,
                 registry: Optional[CenterRegistry] = None) -> LocusSamples:
    registry = registry or default_registry()
    registry[k]
    derive = _DERIVE[derived]
    return sample_points(source, lambda v: center(derive(Triangle(v)), k, registry), n, phase)


def sample_curvature_centroid(source: Union[ConicPair, Family], n: int = DEFAULT_SAMPLES,
                              phase: float = SAMPLE_PHASE) -> LocusSamples:
    return sample_points(source, curvature_centroid, n, phase)


class LocusKind(Enum):
    POINT = "point"
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    QUARTIC = "quartic"


@dataclass(frozen=True, eq=False)
class ExpectedLocus:
    kind: LocusKind
    source: str
    center: np.ndarray = field(default_factory=lambda: np.zeros(2))
    semi_axes: Tuple[float, float] = (0.0, 0.0)  # along x, along y
    quartic: Optional[QuarticImplicit] = None

    @property
    def radius(self) -> float:
        return self.semi_axes[0]

    @classmethod
    def point(cls, at, source: str) -> "ExpectedLocus":
        return cls(LocusKind.POINT, source, np.asarray(at, dtype=float))

    @classmethod
    def circle(cls, radius: float, source: str, at=(0.0, 0.0)) -> "ExpectedLocus":
        return cls(LocusKind.CIRCLE, source, np.asarray(at, dtype=float), (radius, radius))

    @classmethod
    def ellipse(cls, along_x: float, along_y: float, source: str) -> "ExpectedLocus":
        return cls(LocusKind.ELLIPSE, source, np.zeros(2), (along_x, along_y))

    @classmethod
    def quartic_curve(cls, terms: Dict[Tuple[int, int], float], source: str) -> "ExpectedLocus":
        return cls(LocusKind.QUARTIC, source, quartic=QuarticImplicit(terms).normalized())

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value, "source": self.source, "center": self.center.tolist()}
        if self.kind in (LocusKind.CIRCLE, LocusKind.ELLIPSE):
            data["semi_axes"] = list(self.semi_axes)
        if self.quartic is not None:
            data["quartic"] = {f"x^{i}y^{j}": v for (i, j), v in self.quartic.terms.items() if v != 0}
        return data


def _incircle_loci(k: int, a: float, b: float) -> Optional[ExpectedLocus]:
    s, d = a + b, a - b
    if k == 1:
        return ExpectedLocus.point((0, 0), "incenter fixed at the common center")
    if k == 2:
        return ExpectedLocus.ellipse(a * d / (3 * s), b * d / (3 * s), "barycenter ellipse a(a-b)/(3(a+b)), b(a-b)/(3(a+b))")
    if k == 3:
        return ExpectedLocus.circle(d / 2, "circumcenter circle of radius (a-b)/2, the Euler distance")
    if k == 4:
        return ExpectedLocus.ellipse(d * b / s, d * a / s, "orthocenter ellipse (a-b)b/(a+b), (a-b)a/(a+b)")
    if k == 5:
        return ExpectedLocus.circle(d * d / (4 * s), "nine-point center circle of radius (a-b)^2/(4(a+b))")
    if k == 6:
        P = b * (b + 2 * a) * (a * a + 2 * a * b + 3 * b * b)
        Q = a * (a + 2 * b) * (3 * a * a + 2 * a * b + b * b)
        K = (a * b * d) ** 2
        return ExpectedLocus.quartic_curve({
            (4, 0): P * P, (2, 2): 2 * P * Q, (0, 4): Q * Q,
            (2, 0): -K * (b * (b + 2 * a)) ** 2, (0, 2): -K * (a * (a + 2 * b)) ** 2,
        }, "symmedian quartic (P x^2 + Q y^2)^2 = a^2 b^2 (a-b)^2 (U x^2 + V y^2)")
    return None


def _circumellipse_loci(k: int, a: float, b: float) -> Optional[ExpectedLocus]:
    s, d = a + b, a - b
    if k == 3:
        return ExpectedLocus.point((0, 0), "circumcenter fixed at the common center")
    if k == 4:
        return ExpectedLocus.circle(d, "orthocenter circle of radius a-b")
    if k == 5:
        return ExpectedLocus.circle(d / 2, "nine-point center circle of radius (a-b)/2")
    if k == 6:
        return ExpectedLocus.ellipse(s * d / (a + 2 * b), s * d / (2 * a + b),
                                     "symmedian ellipse (a^2-b^2)/(a+2b), (a^2-b^2)/(2a+b)")
    if k == 1:
        return ExpectedLocus.quartic_curve({
            (4, 0): 1.0, (2, 2): 2.0, (0, 4): 1.0,
            (2, 0): -2 * (a + 3 * b) * s, (0, 2): -2 * s * (3 * a + b), (0, 0): (s * d) ** 2,
        }, "incenter quartic (x^2+y^2)^2 - 2(a+3b)(a+b)x^2 - 2(a+b)(3a+b)y^2 + (a^2-b^2)^2")
    return None


def _homothetic_loci(k: int, a: float, b: float) -> Optional[ExpectedLocus]:
    s, d = a + b, a - b
    a2, b2 = a * a, b * b
    if k == 2:
        return ExpectedLocus.point((0, 0), "barycenter fixed at the common center")
    if k == 6:
        return ExpectedLocus.ellipse(a * (a2 - b2) / (2 * (a2 + b2)), b * (a2 - b2) / (2 * (a2 + b2)),
                                     "symmedian ellipse a(a^2-b^2)/(2(a^2+b^2)), b(a^2-b^2)/(2(a^2+b^2))")
    if k == 1:
        return ExpectedLocus.quartic_curve({
            (4, 0): 16 * a2 * b2, (2, 2): 16 * (a2 * a2 + b2 * b2), (0, 4): 16 * a2 * b2,
            (2, 0): -8 * b2 * (a2 * a2 + 5 * a2 * b2 + 2 * b2 * b2),
            (0, 2): -8 * a2 * (2 * a2 * a2 + 5 * a2 * b2 + b2 * b2),
            (0, 0): a2 * b2 * (a2 - b2) ** 2,
        }, "incenter quartic 16(a^2y^2+b^2x^2)(a^2x^2+b^2y^2) - 8b^2(...)x^2 - 8a^2(...)y^2 + a^2b^2(a^2-b^2)^2")
    radii = isogonic_isodynamic_radii(a, b)
    if k in radii:
        return ExpectedLocus.circle(radii[k], f"X{k} circle, radius assigned from numerical evidence")
    return None


def _confocal_loci(k: int, a: float, b: float) -> Optional[ExpectedLocus]:
    a2, b2 = a * a, b * b
    delta = np.sqrt(a2 * a2 - a2 * b2 + b2 * b2)
    if k == 1:
        return ExpectedLocus.ellipse((delta - b2) / a, (a2 - delta) / b, "incenter ellipse (delta-b^2)/a, (a^2-delta)/b")
    if k == 6:
        dd = delta * delta
        return ExpectedLocus.quartic_curve({
            (4, 0): b2 * b2 * (5 * dd - 4 * (a2 - b2) * delta - a2 * b2),
            (0, 4): a2 * a2 * (5 * dd + 4 * (a2 - b2) * delta - a2 * b2),
            (2, 2): 2 * a2 * b2 * (a2 * b2 + 3 * dd),
            (2, 0): a2 * b2 * b2 * (3 * b2 * b2 + 2 * (2 * a2 - b2) * delta - 5 * dd),
            (0, 2): a2 * a2 * b2 * (3 * a2 * a2 + 2 * (2 * b2 - a2) * delta - 5 * dd),
        }, "symmedian quartic c1 x^4 + c2 y^4 + c3 x^2y^2 + c4 x^2 + c5 y^2 = 0")
    return None


def isogonic_isodynamic_radii(a: float, b: float) -> Dict[int, float]:
    """Radii of the X13..X16 circles of the homothetic family, as realized numerically."""
    s, d = a + b, a - b
    radii = {13: abs(d) / 2, 14: s / 2, 15: d * d / (2 * s)}
    if d != 0:
        radii[16] = s * s / (2 * abs(d))
    return radii


def printed_radius_candidates(a: float, b: float) -> Dict[str, float]:
    z = 2 * (a + b)
    return {"(a-b)/2": (a - b) / 2, "(a+b)/2": (a + b) / 2, "(a-b)^2/z": (a - b) ** 2 / z, "(a+b)^2/z": (a + b) ** 2 / z}


def expected_locus(family: PairFamily, k: int, a: float, b: float) -> Optional[ExpectedLocus]:
    """
    Closed-form locus of X_k over the 3-periodic family of (a, b). For the poristic pair,
    (a, b) stand for R + d and R - d; the Brocard porism only pins its circumcenter.
    """
    if family is PairFamily.INCIRCLE:
        return _incircle_loci(k, a, b)
    if family is PairFamily.CIRCUMELLIPSE:
        return _circumellipse_loci(k, a, b)
    if family is PairFamily.HOMOTHETIC:
        return _homothetic_loci(k, a, b)
    if family is PairFamily.CONFOCAL and a > b:
        return _confocal_loci(k, a, b)
    if family is PairFamily.PORISTIC:
        if k == 1:
            return ExpectedLocus.point(((a - b) / 2, 0.0), "incenter fixed at the incircle center")
        if k == 3:
            return ExpectedLocus.point((0, 0), "circumcenter fixed at the circumcircle center")
    if family is PairFamily.BROCARD and k == 3:
        return ExpectedLocus.point((0, 0), "circumcenter fixed at the circumcircle center")
    return None


def _pair_axes(pair: ConicPair) -> Tuple[float, float]:
    if "a" in pair.params:
        return pair.params["a"], pair.params["b"]
    if pair.family is PairFamily.PORISTIC:
        R, d = pair.params["R"], pair.params["d"]
        return R + d, R - d
    return pair.outer.a, pair.outer.b


@dataclass(frozen=True, eq=False)
class LocusFit:
    k: int
    family: str
    derived: str
    samples: LocusSamples = field(repr=False)
    description: LocusDescription = field(repr=False)
    expected: Optional[ExpectedLocus] = None
    match_error: Optional[float] = None
    expected_residual: Optional[float] = None
    coefficient_angle: Optional[float] = None  # quartics only; the symmetric fit is poorly conditioned

    @property
    def label(self) -> LocusClass:
        return self.description.label

    @property
    def residual(self) -> float:
        return self.description.conic_residual

    @property
    def center(self) -> Optional[np.ndarray]:
        if self.description.ellipse is not None:
            return self.description.ellipse.center
        return self.samples.points.mean(axis=0)

    @property
    def semi_axes(self) -> Optional[Tuple[float, float]]:
        ellipse = self.description.ellipse
        return None if ellipse is None else (ellipse.semi_x, ellipse.semi_y)

    def to_dict(self) -> dict:
        quartic = self.description.quartic
        return {
            "k": self.k,
            "family": self.family,
            "derived": self.derived,
            "samples": len(self.samples),
            "skipped": self.samples.skipped,
            "label": self.label.name,
            "diameter": self.description.diameter,
            "conic_residual": self.residual,
            "quartic_residual": None if quartic is None else quartic.residual,
            "center": None if self.center is None else self.center.tolist(),
            "semi_axes": None if self.semi_axes is None else list(self.semi_axes),
            "expected": None if self.expected is None else self.expected.to_dict(),
            "match_error": self.match_error,
            "expected_residual": self.expected_residual,
            "coefficient_angle": self.coefficient_angle,
        }

    @property
    def jsonify(self) -> str:
        return json.dumps(self.to_dict())


def _match(expected: ExpectedLocus, samples: LocusSamples, description: LocusDescription,
           scale: float) -> Tuple[float, Optional[float], Optional[float]]:
    """(match error, implicit residual of the closed form, coefficient angle to the fitted quartic)."""
    points = samples.points
    if expected.kind is LocusKind.POINT:
        return float(np.max(np.linalg.norm(points - expected.center, axis=1))) / scale, None, None
    if expected.kind is LocusKind.QUARTIC:
        residual = float(np.max(expected.quartic.relative_residuals(points)))
        angle = None
        if description.quartic is not None:
            angle = description.quartic.angle_to(expected.quartic)
        return residual, residual, angle
    ellipse = description.ellipse
    if ellipse is None:
        return float("inf"), None, None
    errors = [float(np.linalg.norm(ellipse.center - expected.center)) / scale]
    if expected.kind is LocusKind.CIRCLE:
        errors.append(abs(ellipse.radius - expected.radius) / expected.radius)
    else:
        errors += [abs(ellipse.semi_x - expected.semi_axes[0]) / expected.semi_axes[0],
                   abs(ellipse.semi_y - expected.semi_axes[1]) / expected.semi_axes[1]]
    return max(errors), None, None


def verify_locus(pair: ConicPair, k: int, derived: Derived = Derived.REFERENCE, n: int = DEFAULT_SAMPLES,
                 registry: Optional[CenterRegistry] = None, **tolerances) -> LocusFit:
    samples = sample_locus(pair, k, derived, n, registry=registry)
    description = describe_locus(samples.points, pair.scale, **tolerances)
    expected = None
    if derived is Derived.REFERENCE and pair.n == 3:
        expected = expected_locus(pair.family, k, *_pair_axes(pair))
    match_error = expected_residual = angle = None
    if expected is not None:
        match_error, expected_residual, angle = _match(expected, samples, description, pair.scale)
        if match_error > 1e-6:
            logger.warning(f"X{k} locus over the {pair.family.value} family misses its closed form by {match_error:.3g}")
    return LocusFit(k, pair.family.value, derived.value, samples, description, expected, match_error,
                    expected_residual, angle)


# locus-type grid

COLUMNS: Dict[str, Tuple[PairFamily, Derived]] = {
    "confocal": (PairFamily.CONFOCAL, Derived.REFERENCE),
    "incircle": (PairFamily.INCIRCLE, Derived.REFERENCE),
    "poristic": (PairFamily.PORISTIC, Derived.REFERENCE),
    "confocal_excentral": (PairFamily.CONFOCAL, Derived.EXCENTRAL),
    "circumellipse": (PairFamily.CIRCUMELLIPSE, Derived.REFERENCE),
    "poristic_excentral": (PairFamily.PORISTIC, Derived.EXCENTRAL),
    "homothetic": (PairFamily.HOMOTHETIC, Derived.REFERENCE),
    "brocard": (PairFamily.BROCARD, Derived.REFERENCE),
}

FAILED_CELL = "!"


def locus_table(columns: Sequence[str] = tuple(COLUMNS), ks: Iterable[int] = tuple(TABLE1), a: float = 2.0,
                b: float = 1.0, n: int = DEFAULT_SAMPLES) -> Dict[int, Dict[str, str]]:
    """Locus type per (center, column) as P, C, E, 4 or X; cells that could not be evaluated hold '!'."""
    pairs = {}
    for column in columns:
        if column not in COLUMNS:
            raise DomainError(f"unknown locus-table column {column!r}")
        family, _ = COLUMNS[column]
        pairs[column] = pair_for(family, a, b)

    grid: Dict[int, Dict[str, str]] = {}
    for k in ks:
        grid[k] = {}
        for column in columns:
            family, derived = COLUMNS[column]
            try:
                samples = sample_locus(pairs[column], k, derived, n)
                grid[k][column] = describe_locus(samples.points, pairs[column].scale).label.value
            except PonceletError as e:
                logger.warning(f"Cell X{k}/{column} failed: {e}")
                grid[k][column] = FAILED_CELL
    return grid


def cell_matches(published: str, label: str) -> bool:
    expected = normalize_label(published)
    if expected == LocusClass.NON_CONIC.value:
        return label in (LocusClass.NON_CONIC.value, LocusClass.QUARTIC.value)
    return label == expected


def table1_mismatches(grid: Dict[int, Dict[str, str]]) -> List[Tuple[int, str, str, str]]:
    """(k, column, published, measured) for every evaluated cell that disagrees with the published grid."""
    keys = [key for key, _ in TABLE1_COLUMNS]
    mismatches = []
    for k, row in grid.items():
        if k not in TABLE1:
            continue
        for column, label in row.items():
            published = TABLE1[k][keys.index(column)]
            if not cell_matches(published, label):
                mismatches.append((k, column, published, label))
    return mismatches


# conic loci of the incenter

@dataclass(frozen=True)
class ConjectureProbe:
    label: LocusClass
    residual: float
    pair: ConicPair = field(repr=False)

    @property
    def conic(self) -> bool:
        return self.label in (LocusClass.CIRCLE, LocusClass.ELLIPSE)


def probe_conjecture1(pair: ConicPair, n: int = DEFAULT_SAMPLES) -> ConjectureProbe:
    """Classifies the incenter locus of a pair; conic loci are expected only for confocal pairs."""
    samples = sample_locus(pair, 1, Derived.REFERENCE, n)
    description = describe_locus(samples.points, pair.scale)
    residual = description.conic_residual
    if description.conic is None and description.label is not LocusClass.STATIONARY_POINT:
        residual = float("inf")
    return ConjectureProbe(description.label, residual, pair)


@dataclass(frozen=True)
class ConjectureBatch:
    non_confocal: List[ConjectureProbe]
    confocal: List[ConjectureProbe]

    @property
    def non_confocal_conics(self) -> int:
        return sum(probe.conic for probe in self.non_confocal)

    @property
    def confocal_ellipses(self) -> int:
        return sum(probe.label is LocusClass.ELLIPSE for probe in self.confocal)

    def to_dict(self) -> dict:
        def row(probe: ConjectureProbe) -> dict:
            outer, inner = probe.pair.outer, probe.pair.inner
            return {"outer": [outer.a, outer.b], "inner": [inner.a, inner.b], "label": probe.label.name,
                    "conic_residual": probe.residual}
        return {
            "caveat": "numerical evidence over random pairs, not a proof",
            "non_confocal": [row(p) for p in self.non_confocal],
            "confocal": [row(p) for p in self.confocal],
            "non_confocal_conics": self.non_confocal_conics,
            "confocal_ellipses": self.confocal_ellipses,
        }


def random_concentric_pair(rng: np.random.Generator, separation: float = 1e-2) -> ConicPair:
    """Random 3-periodic concentric pair that is neither confocal nor an incircle pair."""
    while True:
        a, b = rng.uniform(1.2, 3.0), 1.0
        fraction = rng.uniform(0.2, 0.8)
        inner_a, inner_b = fraction * a, (1 - fraction) * b
        focal, inner_focal = a * a - b * b, inner_a ** 2 - inner_b ** 2
        if abs(inner_focal - focal) <= separation * focal or abs(inner_a - inner_b) <= separation * inner_b:
            continue
        return concentric_pair(AxisEllipse(a, b), AxisEllipse(inner_a, inner_b))


def conjecture1_batch(non_confocal: int = 50, confocal: int = 10, seed: int = RANDOM_SEED,
                      n: int = DEFAULT_SAMPLES) -> ConjectureBatch:
    rng = np.random.default_rng(seed)
    generic = [probe_conjecture1(random_concentric_pair(rng), n) for _ in range(non_confocal)]
    billiards = [probe_conjecture1(ConicPair.confocal(rng.uniform(1.2, 3.0), 1.0), n) for _ in range(confocal)]
    batch = ConjectureBatch(generic, billiards)
    logger.info(f"Incenter loci: {batch.non_confocal_conics}/{non_confocal} non-confocal conics, "
                f"{batch.confocal_ellipses}/{confocal} confocal ellipses")
    return batch


# X16 radius under different normalizations of the homothetic pair

class ScanNormalization(Enum):
    FIX_B = "fixb"  # b = 1, a = ratio
    FIX_AREA = "fixarea"  # ab = 1
    FIX_PERIMETERLIKE = "fixsum"  # a + b = 2

    def axes(self, ratio: float) -> Tuple[float, float]:
        if self is ScanNormalization.FIX_B:
            return ratio, 1.0
        if self is ScanNormalization.FIX_AREA:
            return np.sqrt(ratio), 1 / np.sqrt(ratio)
        return 2 * ratio / (ratio + 1), 2 / (ratio + 1)


@dataclass(frozen=True)
class RadiusScan:
    normalization: ScanNormalization
    ratios: List[float]
    radii: List[float]
    argmin: Optional[float]
    segments: List[Tuple[float, float, str]]

    def to_dict(self) -> dict:
        return {"normalization": self.normalization.value, "ratios": self.ratios, "radii": self.radii,
                "argmin": self.argmin, "segments": [list(s) for s in self.segments]}


def x16_radius(a: float, b: float, n: int = 96) -> float:
    samples = sample_locus(ConicPair.homothetic(a, b), 16, Derived.REFERENCE, n)
    return fit_conic(samples.points).geometry().radius


def _monotone_segments(ratios: Sequence[float], radii: Sequence[float]) -> List[Tuple[float, float, str]]:
    segments = []
    for i in range(1, len(ratios)):
        trend = "increasing" if radii[i] > radii[i - 1] else "decreasing"
        if segments and segments[-1][2] == trend:
            segments[-1] = (segments[-1][0], ratios[i], trend)
        else:
            segments.append((ratios[i - 1], ratios[i], trend))
    return segments


def x16_radius_scan(ratios: Sequence[float], normalization: ScanNormalization, n: int = 96) -> RadiusScan:
    ratios = [float(r) for r in ratios]
    if any(r <= 1 for r in ratios):
        raise DomainError("scan ratios a/b must exceed 1")

    def radius(ratio: float) -> float:
        return x16_radius(*normalization.axes(ratio), n=n)

    radii = [radius(r) for r in ratios]
    i = int(np.argmin(radii))
    argmin = None
    if 0 < i < len(ratios) - 1:
        result = minimize_scalar(radius, bracket=(ratios[i - 1], ratios[i], ratios[i + 1]), method="golden",
                                 tol=1e-9)
        argmin = float(result.x)
    logger.info(f"X16 radius scan ({normalization.value}): minimum at {argmin}")
    return RadiusScan(normalization, ratios, radii, argmin, _monotone_segments(ratios, radii))
