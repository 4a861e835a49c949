from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from errors import DegenerateError, DomainError

COLLINEAR_TOL = 1e-13


def _cross(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


@dataclass(frozen=True, eq=False)
class Triangle:
    """Three planar vertices; side s_i is opposite vertex P_i."""
    vertices: np.ndarray

    def __post_init__(self):
        vertices = np.array(self.vertices, dtype=float).reshape(3, 2)
        if not np.all(np.isfinite(vertices)):
            raise DegenerateError("triangle has a non-finite vertex")
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def from_points(cls, p1, p2, p3) -> "Triangle":
        return cls(np.array([p1, p2, p3], dtype=float))

    @property
    def p1(self) -> np.ndarray:
        return self.vertices[0]

    @property
    def p2(self) -> np.ndarray:
        return self.vertices[1]

    @property
    def p3(self) -> np.ndarray:
        return self.vertices[2]

    @property
    def sides(self) -> np.ndarray:
        v = self.vertices
        return np.linalg.norm(v[[1, 2, 0]] - v[[2, 0, 1]], axis=1)

    @property
    def signed_area(self) -> float:
        return 0.5 * _cross(self.p2 - self.p1, self.p3 - self.p1)

    @property
    def area(self) -> float:
        return abs(self.signed_area)

    @property
    def scale(self) -> float:
        return float(self.sides.max())

    @property
    def is_ccw(self) -> bool:
        return self.signed_area > 0

    def check_nondegenerate(self) -> None:
        if self.area <= COLLINEAR_TOL * self.scale ** 2:
            raise DegenerateError("triangle vertices are collinear")

    def oriented(self) -> "Triangle":
        """Same triangle with counterclockwise vertex order."""
        return self if self.is_ccw else Triangle(self.vertices[[0, 2, 1]])

    def mapped(self, fn: Callable[[np.ndarray], np.ndarray]) -> "Triangle":
        return Triangle(fn(self.vertices))


@dataclass(frozen=True)
class TriangleMetrics:
    sides: Tuple[float, float, float]
    angles: Tuple[float, float, float]
    area: float
    perimeter: float
    semiperimeter: float
    inradius: float
    circumradius: float
    brocard_angle: float
    sum_sq_sides: float

    @property
    def cosines(self) -> np.ndarray:
        return np.cos(self.angles)


def vertex_angles(vertices: np.ndarray) -> np.ndarray:
    """Interior angles of a convex polygon, one per vertex."""
    v = np.asarray(vertices, dtype=float)
    prev = np.roll(v, 1, axis=0) - v
    nxt = np.roll(v, -1, axis=0) - v
    cross = np.abs(prev[:, 0] * nxt[:, 1] - prev[:, 1] * nxt[:, 0])
    dot = np.sum(prev * nxt, axis=1)
    return np.arctan2(cross, dot)


def polygon_sides(vertices: np.ndarray) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    return np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)


def polygon_area(vertices: np.ndarray) -> float:
    v = np.asarray(vertices, dtype=float)
    w = np.roll(v, -1, axis=0)
    return 0.5 * abs(float(np.sum(v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1])))


def metrics(T: Triangle) -> TriangleMetrics:
    T.check_nondegenerate()
    s1, s2, s3 = T.sides
    area = T.area
    perimeter = s1 + s2 + s3
    s = perimeter / 2
    l2 = s1 * s1 + s2 * s2 + s3 * s3
    return TriangleMetrics(
        sides=(float(s1), float(s2), float(s3)),
        angles=tuple(float(x) for x in vertex_angles(T.vertices)),
        area=area,
        perimeter=float(perimeter),
        semiperimeter=float(s),
        inradius=float(area / s),
        circumradius=float(s1 * s2 * s3 / (4 * area)),
        brocard_angle=float(np.arctan2(4 * area, l2)),
        sum_sq_sides=float(l2),
    )


def as_triangle(vertices) -> Triangle:
    if isinstance(vertices, Triangle):
        return vertices
    v = np.asarray(vertices, dtype=float)
    if v.shape != (3, 2):
        raise DomainError(f"expected a triangle, got a polygon with {len(v)} vertices")
    return Triangle(v)
