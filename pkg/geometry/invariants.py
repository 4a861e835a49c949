"""
Measured quantities of Poncelet polygons, their closed-form values per family, and the
sweep that compares the two over a family.
"""
import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional

import numpy as np

from errors import DegenerateError, DomainError
from geometry.centers import center, excentral_triangle, orthic_triangle
from geometry.conics import AxisEllipse, ConicPair, PairFamily
from geometry.families import SKIPPED_ERRORS, Family, family_for, pair_for, parameter_grid
from geometry.orbits import TUNABLE, tune_caustic_for_closure
from geometry.triangle import as_triangle, metrics, polygon_area, polygon_sides, vertex_angles
from logger import prepare_logger
from settings import SWEEP_SAMPLES

logger = prepare_logger()

MIN_SWEEP_SAMPLES = 16


# measures

def sum_cosines(vertices) -> float:
    return float(np.sum(np.cos(vertex_angles(vertices))))


def product_half_sines(vertices) -> float:
    return float(np.prod(np.sin(vertex_angles(vertices) / 2)))


def product_cosines(vertices) -> float:
    return float(np.prod(np.cos(vertex_angles(vertices))))


def circumradius_inv(vertices) -> float:
    return metrics(as_triangle(vertices)).circumradius


def inradius_inv(vertices) -> float:
    return metrics(as_triangle(vertices)).inradius


def r_over_R(vertices) -> float:
    m = metrics(as_triangle(vertices))
    return m.inradius / m.circumradius


def power_of_center(vertices) -> float:
    """Power of the origin with respect to the circumcircle."""
    T = as_triangle(vertices)
    x3 = center(T, 3)
    return float(x3 @ x3 - metrics(T).circumradius ** 2)


def side_product_over_semiperimeter(vertices) -> float:
    m = metrics(as_triangle(vertices))
    return float(np.prod(m.sides) / (4 * m.semiperimeter))


def sum_sq_sides(vertices) -> float:
    return float(np.sum(polygon_sides(vertices) ** 2))


def area_inv(vertices) -> float:
    return polygon_area(vertices)


def sum_cotangents(vertices) -> float:
    return float(np.sum(1 / np.tan(vertex_angles(vertices))))


def perimeter(vertices) -> float:
    return float(np.sum(polygon_sides(vertices)))


def brocard_angle_inv(vertices) -> float:
    return metrics(as_triangle(vertices)).brocard_angle


def orthic_inradius(vertices) -> float:
    return metrics(orthic_triangle(as_triangle(vertices))).inradius


def orthic_circumradius(vertices) -> float:
    return metrics(orthic_triangle(as_triangle(vertices))).circumradius


def excentral_abs_cos_product(vertices) -> float:
    angles = vertex_angles(excentral_triangle(as_triangle(vertices)).vertices)
    return float(np.prod(np.abs(np.cos(angles))))


# closed forms

def confocal_r_over_R(a: float, b: float) -> float:
    """r/R shared by every 3-periodic of the billiard in the ellipse (a, b)."""
    a2, b2 = a * a, b * b
    delta = np.sqrt(a2 * a2 - a2 * b2 + b2 * b2)
    return float(2 * (delta - b2) * (a2 - delta) / (a2 - b2) ** 2)


def _ab(pair: ConicPair):
    return pair.params["a"], pair.params["b"]


def _Rr(pair: ConicPair):
    return pair.params["R"], pair.params["r"]


@dataclass(frozen=True)
class InvariantSpec:
    name: str
    measure: Callable[[np.ndarray], float] = field(repr=False)
    expected: Mapping[PairFamily, Optional[Callable[[ConicPair], float]]] = field(repr=False)
    polygons: FrozenSet[PairFamily] = frozenset()  # families where the quantity stays constant for N > 3
    note: str = ""

    def applies_to(self, pair: ConicPair) -> bool:
        if pair.n == 3:
            return pair.family in self.expected
        return pair.family in self.polygons

    def expected_value(self, pair: ConicPair) -> Optional[float]:
        if pair.n != 3:
            return None
        formula = self.expected.get(pair.family)
        return None if formula is None else float(formula(pair))


INVARIANTS: Dict[str, InvariantSpec] = {spec.name: spec for spec in (
    InvariantSpec("sum_cosines", sum_cosines, {
        PairFamily.INCIRCLE: lambda p: (lambda a, b: (a * a + 4 * a * b + b * b) / (a + b) ** 2)(*_ab(p)),
        PairFamily.CONFOCAL: lambda p: 1 + confocal_r_over_R(*_ab(p)),
        PairFamily.PORISTIC: lambda p: (lambda R, r: 1 + r / R)(*_Rr(p)),
    }, frozenset({PairFamily.INCIRCLE, PairFamily.CONFOCAL})),
    InvariantSpec("product_half_sines", product_half_sines, {
        PairFamily.INCIRCLE: lambda p: (lambda a, b: a * b / (2 * (a + b) ** 2))(*_ab(p)),
        PairFamily.CONFOCAL: lambda p: confocal_r_over_R(*_ab(p)) / 4,
        PairFamily.PORISTIC: lambda p: (lambda R, r: r / (4 * R))(*_Rr(p)),
    }),
    InvariantSpec("product_cosines", product_cosines, {
        PairFamily.CIRCUMELLIPSE: lambda p: (lambda a, b: a * b / (2 * (a + b) ** 2))(*_ab(p)),
    }, frozenset({PairFamily.CIRCUMELLIPSE})),
    InvariantSpec("circumradius", circumradius_inv, {
        PairFamily.INCIRCLE: lambda p: (lambda a, b: (a + b) / 2)(*_ab(p)),
        PairFamily.CIRCUMELLIPSE: lambda p: (lambda a, b: a + b)(*_ab(p)),
        PairFamily.PORISTIC: lambda p: p.params["R"],
        PairFamily.BROCARD: lambda p: p.params["R"],
    }),
    InvariantSpec("inradius", inradius_inv, {
        PairFamily.INCIRCLE: lambda p: (lambda a, b: a * b / (a + b))(*_ab(p)),
        PairFamily.PORISTIC: lambda p: p.params["r"],
    }),
    InvariantSpec("r_over_R", r_over_R, {
        PairFamily.INCIRCLE: lambda p: (lambda a, b: 2 * a * b / (a + b) ** 2)(*_ab(p)),
        PairFamily.CONFOCAL: lambda p: confocal_r_over_R(*_ab(p)),
        PairFamily.PORISTIC: lambda p: (lambda R, r: r / R)(*_Rr(p)),
    }),
    InvariantSpec("power_of_center", power_of_center, {
        PairFamily.INCIRCLE: lambda p: (lambda a, b: -a * b)(*_ab(p)),
    }),
    InvariantSpec("side_product_over_semiperimeter", side_product_over_semiperimeter, {
        PairFamily.INCIRCLE: lambda p: (lambda a, b: a * b / 2)(*_ab(p)),
        PairFamily.PORISTIC: lambda p: (lambda R, r: R * r)(*_Rr(p)),
    }),
    InvariantSpec("sum_sq_sides", sum_sq_sides, {
        PairFamily.CIRCUMELLIPSE: lambda p: (lambda a, b: 4 * (a + 2 * b) * (2 * a + b))(*_ab(p)),
        PairFamily.HOMOTHETIC: lambda p: (lambda a, b: 4.5 * (a * a + b * b))(*_ab(p)),
    }, frozenset({PairFamily.CIRCUMELLIPSE, PairFamily.HOMOTHETIC})),
    InvariantSpec("area", area_inv, {
        PairFamily.HOMOTHETIC: lambda p: (lambda a, b: 3 * np.sqrt(3) / 4 * a * b)(*_ab(p)),
    }, frozenset({PairFamily.HOMOTHETIC})),
    InvariantSpec("sum_cotangents", sum_cotangents, {
        PairFamily.HOMOTHETIC: lambda p: (lambda a, b: np.sqrt(3) * (a * a + b * b) / (2 * a * b))(*_ab(p)),
        PairFamily.BROCARD: lambda p: 1 / np.tan(p.params["omega"]),
    },
        polygons=frozenset({PairFamily.HOMOTHETIC}),
        note="homothetic value taken as cot(omega) = L2/(4A) = sqrt(3)(a^2+b^2)/(2ab)"),
    InvariantSpec("brocard_angle", brocard_angle_inv, {
        PairFamily.HOMOTHETIC: lambda p: (lambda a, b: np.arctan2(2 * a * b, np.sqrt(3) * (a * a + b * b)))(*_ab(p)),
        PairFamily.BROCARD: lambda p: p.params["omega"],
    }),
    InvariantSpec("perimeter", perimeter, {
        PairFamily.CONFOCAL: None,
    }, frozenset({PairFamily.CONFOCAL})),
    InvariantSpec("orthic_inradius", orthic_inradius, {
        PairFamily.CIRCUMELLIPSE: lambda p: (lambda a, b: a * b / (a + b))(*_ab(p)),
    }),
    InvariantSpec("orthic_circumradius", orthic_circumradius, {
        PairFamily.CIRCUMELLIPSE: lambda p: (lambda a, b: (a + b) / 2)(*_ab(p)),
    }),
    InvariantSpec("excentral_abs_cos_product", excentral_abs_cos_product, {
        PairFamily.CONFOCAL: lambda p: confocal_r_over_R(*_ab(p)) / 4,
    }),
)}


@dataclass(frozen=True)
class InvariantReport:
    name: str
    family: str
    n: int
    samples: int
    skipped: int
    mean: float
    expected: Optional[float]
    max_abs_deviation: float
    max_rel_deviation: float
    relative: bool
    note: str = ""

    @property
    def deviation(self) -> float:
        return self.max_rel_deviation if self.relative else self.max_abs_deviation

    def passed(self, tol: float = 1e-9) -> bool:
        return self.deviation < tol

    @property
    def jsonify(self) -> str:
        return json.dumps(asdict(self))


def sweep(family: Family, spec: InvariantSpec, samples: int = SWEEP_SAMPLES, phase: float = 0.0) -> InvariantReport:
    if samples < MIN_SWEEP_SAMPLES:
        raise DomainError(f"a sweep needs at least {MIN_SWEEP_SAMPLES} samples, got {samples}")
    values, skipped = [], 0
    for t in parameter_grid(samples, phase):
        try:
            values.append(spec.measure(family.polygon(t)))
        except SKIPPED_ERRORS as e:
            skipped += 1
            logger.debug(f"{spec.name}: skipping t={t:.6f}: {e}")
    if not values:
        raise DegenerateError(f"every sample of {family!r} was degenerate for {spec.name}")

    values = np.array(values)
    mean = float(values.mean())
    expected = spec.expected_value(family.pair)
    reference = mean if expected is None else expected
    abs_dev = float(np.max(np.abs(values - reference)))
    rel_dev = abs_dev / abs(reference) if reference != 0 else float("inf")
    relative = abs(reference) > 1e-6 * family.scale ** 2
    report = InvariantReport(spec.name, family.pair.family.value, family.n, len(values), skipped, mean, expected,
                             abs_dev, rel_dev, relative, spec.note)
    logger.debug(f"Swept {spec.name} over {family!r}: mean={mean:.15g}, deviation={report.deviation:.3g}")
    return report


def applicable_invariants(pair: ConicPair) -> List[InvariantSpec]:
    return [spec for spec in INVARIANTS.values() if spec.applies_to(pair)]


def sweep_all(family: Family, samples: int = SWEEP_SAMPLES) -> List[InvariantReport]:
    return [sweep(family, spec, samples) for spec in applicable_invariants(family.pair)]


def acute_violations(family: Family, samples: int = SWEEP_SAMPLES) -> int:
    """Number of sampled polygons with an interior angle of at least π/2."""
    count = 0
    for _, vertices in family.sample(samples):
        if np.max(vertex_angles(vertices)) >= np.pi / 2:
            count += 1
    return count


def _tuned_pair(family: PairFamily, a: float, b: float, n: int) -> ConicPair:
    if family is PairFamily.CIRCUMELLIPSE:
        return tune_caustic_for_closure(AxisEllipse.circle(a + b), family, n, aspect=b / a)
    return tune_caustic_for_closure(AxisEllipse(a, b), family, n)


def table2(a: float = 2.0, b: float = 1.0, samples: int = SWEEP_SAMPLES,
           polygon_sizes: Iterable[int] = (4, 5)) -> List[InvariantReport]:
    """
    Every tabulated quantity: the 3-periodic closed forms of each family, then constancy over
    tuned N-periodics for the families where the quantity survives N > 3.
    """
    reports = []
    for family in (PairFamily.CONFOCAL, PairFamily.INCIRCLE, PairFamily.CIRCUMELLIPSE, PairFamily.HOMOTHETIC,
                   PairFamily.PORISTIC, PairFamily.BROCARD):
        reports += sweep_all(family_for(pair_for(family, a, b)), samples)
    for n in polygon_sizes:
        for family in TUNABLE:
            pair = _tuned_pair(family, a, b, n)
            reports += sweep_all(family_for(pair), samples)
    logger.info(f"Table of invariants: {sum(r.passed() for r in reports)}/{len(reports)} rows within 1e-9")
    return reports
