"""
Triangle centers from trilinear coordinates, derived triangles and Brocard geometry.

Centers are data: each registry row is a Kimberling index, a name and the first
trilinear coordinate as an expression of the sidelengths (see misc/trilinear_parser.py).
"""
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from consts import CENTER_TABLE, REQUIRED_CENTERS
from errors import ConfigError, DegenerateError, InfinityError, UnknownCenterError
from geometry.triangle import Triangle, vertex_angles
from logger import prepare_logger
from misc.trilinear_parser import compile_trilinear
from settings import CENTER_EXTENSION_FILE

logger = prepare_logger()

INFINITY_TOL = 1e-12


@dataclass(frozen=True)
class CenterSpec:
    k: int
    name: str
    expression: str
    trilinear: Callable[[float, float, float], float] = field(repr=False, compare=False)

    @classmethod
    def from_row(cls, k: int, name: str, expression: str) -> "CenterSpec":
        return cls(int(k), name.strip(), expression.strip(), compile_trilinear(expression))

    def coordinates(self, sides: Sequence[float]) -> Tuple[float, float, float]:
        s1, s2, s3 = sides
        with np.errstate(all="ignore"):
            return (float(self.trilinear(s1, s2, s3)),
                    float(self.trilinear(s2, s3, s1)),
                    float(self.trilinear(s3, s1, s2)))


class CenterRegistry(Mapping[int, CenterSpec]):
    def __init__(self, specs: Iterable[CenterSpec]):
        self._specs: Dict[int, CenterSpec] = {}
        for spec in specs:
            self._specs[spec.k] = spec

    @classmethod
    def from_rows(cls, rows: Iterable[Tuple[int, str, str]]) -> "CenterRegistry":
        return cls(CenterSpec.from_row(*row) for row in rows)

    def __getitem__(self, k: int) -> CenterSpec:
        try:
            return self._specs[k]
        except KeyError:
            raise UnknownCenterError(f"X{k} is not in the center registry") from None

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._specs))

    def __len__(self) -> int:
        return len(self._specs)

    def extended(self, rows: Iterable[Tuple[int, str, str]]) -> "CenterRegistry":
        return CenterRegistry(list(self._specs.values()) + [CenterSpec.from_row(*row) for row in rows])

    def missing(self, required: Iterable[int] = REQUIRED_CENTERS) -> List[int]:
        return sorted(set(required) - set(self._specs))


def read_extension_table(path) -> List[Tuple[int, str, str]]:
    """Reads "k, name, trilinear-expression" rows; blank lines and # comments are skipped."""
    rows = []
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",", 2)
        if len(parts) != 3:
            raise ConfigError(f"{path}:{number}: expected 'k, name, expression'")
        try:
            k = int(parts[0])
        except ValueError as e:
            raise ConfigError(f"{path}:{number}: bad center index {parts[0]!r}") from e
        rows.append((k, parts[1], parts[2]))
    return rows


@lru_cache(maxsize=None)
def default_registry(extension_file: Optional[str] = CENTER_EXTENSION_FILE) -> CenterRegistry:
    registry = CenterRegistry.from_rows(CENTER_TABLE)
    if extension_file:
        rows = read_extension_table(extension_file)
        registry = registry.extended(rows)
        logger.info(f"Loaded {len(rows)} extra centers from {extension_file}")
    missing = registry.missing()
    if missing:
        raise ConfigError(f"center registry is missing required indices {missing}")
    return registry


def trilinear_to_cartesian(T: Triangle, u: float, v: float, w: float) -> np.ndarray:
    weights = np.array([u, v, w]) * T.sides
    total = weights.sum()
    if not np.all(np.isfinite(weights)):
        raise InfinityError("trilinear coordinates are not finite")
    if abs(total) <= INFINITY_TOL * np.sum(np.abs(weights)):
        raise InfinityError("center lies on the line at infinity")
    return weights @ T.vertices / total


def center(T: Triangle, k: int, registry: Optional[CenterRegistry] = None) -> np.ndarray:
    spec = (registry or default_registry())[k]
    T.check_nondegenerate()
    return trilinear_to_cartesian(T, *spec.coordinates(T.sides))


def excentral_triangle(T: Triangle) -> Triangle:
    T.check_nondegenerate()
    return Triangle(np.array([
        trilinear_to_cartesian(T, -1, 1, 1),
        trilinear_to_cartesian(T, 1, -1, 1),
        trilinear_to_cartesian(T, 1, 1, -1),
    ]))


def orthic_triangle(T: Triangle) -> Triangle:
    T.check_nondegenerate()
    v = T.vertices
    feet = []
    for i in range(3):
        p, q = v[(i + 1) % 3], v[(i + 2) % 3]
        d = q - p
        feet.append(p + ((v[i] - p) @ d) / (d @ d) * d)
    orthic = Triangle(np.array(feet))
    if orthic.area <= 1e-12 * T.area:
        raise DegenerateError("right triangle has a degenerate orthic triangle")
    return orthic


def brocard_points(T: Triangle) -> Tuple[np.ndarray, np.ndarray]:
    """First and second Brocard points, labeled after reordering the vertices counterclockwise."""
    T = T.oriented()
    T.check_nondegenerate()
    s1, s2, s3 = T.sides
    first = trilinear_to_cartesian(T, s3 / s2, s1 / s3, s2 / s1)
    second = trilinear_to_cartesian(T, s2 / s3, s3 / s1, s1 / s2)
    return first, second


@dataclass(frozen=True, eq=False)
class BrocardInellipse:
    center: np.ndarray
    semi_major: float
    semi_minor: float
    angle: float  # direction of the major axis
    foci: Tuple[np.ndarray, np.ndarray]

    @property
    def aspect_ratio(self) -> float:
        return self.semi_major / self.semi_minor


def brocard_inellipse(T: Triangle) -> BrocardInellipse:
    """Inellipse with foci at the two Brocard points; its center is X39."""
    first, second = brocard_points(T)
    mid = 0.5 * (first + second)
    focal = 0.5 * float(np.linalg.norm(second - first))
    # reflecting one focus in a side line puts it at distance 2·semi_major from the other
    p, q = T.p2, T.p3
    d = (q - p) / np.linalg.norm(q - p)
    foot = p + ((first - p) @ d) * d
    mirrored = 2 * foot - first
    major = 0.5 * float(np.linalg.norm(mirrored - second))
    minor = float(np.sqrt(max(major * major - focal * focal, 0.0)))
    axis = second - first
    return BrocardInellipse(mid, major, minor, float(np.arctan2(axis[1], axis[0])), (first, second))


def curvature_centroid(vertices) -> np.ndarray:
    """Steiner curvature centroid: vertices weighted by sin 2θ of the interior angles."""
    v = np.asarray(vertices, dtype=float)
    weights = np.sin(2 * vertex_angles(v))
    total = weights.sum()
    if abs(total) <= INFINITY_TOL * np.sum(np.abs(weights)):
        raise InfinityError("curvature weights cancel")
    return weights @ v / total
