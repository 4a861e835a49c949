from abc import ABC, abstractmethod
from typing import Iterator, List, Optional, Tuple

import numpy as np

from errors import DegenerateError, DomainError, InfinityError
from geometry.conics import AxisEllipse, ConicPair, PairFamily
from geometry.orbits import (brocard_angle_of_homothetic, brocard_pair, circumellipse_orbit, confocal_orbit,
                             homothetic_orbit, incircle_orbit, poncelet_polygon, poristic_pair, triangle_from_start)
from geometry.triangle import Triangle
from logger import prepare_logger
from settings import SAMPLE_PHASE

SKIPPED_ERRORS = (DegenerateError, InfinityError)


def parameter_grid(samples: int, phase: float = 0.0) -> np.ndarray:
    return phase + np.linspace(0.0, 2 * np.pi, samples, endpoint=False)


class Family(ABC):
    """A one-parameter family of Poncelet polygons of a conic pair, indexed by t in [0, 2π)."""

    def __init__(self, pair: ConicPair):
        self.pair = pair
        self.logger = prepare_logger()

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def scale(self) -> float:
        return self.pair.scale

    @abstractmethod
    def polygon(self, t: float) -> np.ndarray:
        pass

    def triangle(self, t: float) -> Triangle:
        if self.n != 3:
            raise DomainError(f"the {self.pair.family.value} family is {self.n}-periodic, not a triangle family")
        return Triangle(self.polygon(t))

    def sample(self, samples: int, phase: float = 0.0) -> Iterator[Tuple[float, np.ndarray]]:
        """Yields (t, vertices) over a uniform grid, skipping degenerate parameters."""
        skipped = 0
        for t in parameter_grid(samples, phase):
            try:
                yield float(t), self.polygon(t)
            except SKIPPED_ERRORS as e:
                skipped += 1
                self.logger.debug(f"Skipping t={t:.6f}: {e}")
        if skipped:
            self.logger.info(f"Skipped {skipped} of {samples} degenerate parameters in the {self.pair.family.value} family")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({dict(self.pair.params)}, n={self.n})"


class ConfocalFamily(Family):
    def polygon(self, t: float) -> np.ndarray:
        return confocal_orbit(self.pair.outer.a, self.pair.outer.b, t).vertices


class IncircleFamily(Family):
    def polygon(self, t: float) -> np.ndarray:
        return incircle_orbit(self.pair.outer.a, self.pair.outer.b, t).vertices


class CircumellipseFamily(Family):
    def polygon(self, t: float) -> np.ndarray:
        return circumellipse_orbit(self.pair.inner.a, self.pair.inner.b, t).vertices


class HomotheticFamily(Family):
    def polygon(self, t: float) -> np.ndarray:
        return homothetic_orbit(self.pair.outer.a, self.pair.outer.b, t).vertices


class PoristicFamily(Family):
    def polygon(self, t: float) -> np.ndarray:
        return triangle_from_start(self.pair, t).vertices


class BrocardFamily(Family):
    def polygon(self, t: float) -> np.ndarray:
        return triangle_from_start(self.pair, t).vertices


class PonceletFamily(Family):
    """Any pair, stepped with the tangent-chord map from the outer point at parameter t."""

    def polygon(self, t: float) -> np.ndarray:
        return poncelet_polygon(self.pair, self.pair.outer.point(t), self.n).vertices


_CLOSED_FORMS = {
    PairFamily.CONFOCAL: ConfocalFamily,
    PairFamily.INCIRCLE: IncircleFamily,
    PairFamily.CIRCUMELLIPSE: CircumellipseFamily,
    PairFamily.HOMOTHETIC: HomotheticFamily,
    PairFamily.PORISTIC: PoristicFamily,
    PairFamily.BROCARD: BrocardFamily,
}


def family_for(pair: ConicPair) -> Family:
    if pair.n == 3 and pair.family in _CLOSED_FORMS:
        return _CLOSED_FORMS[pair.family](pair)
    return PonceletFamily(pair)


def pair_for(family: PairFamily, a: Optional[float] = None, b: Optional[float] = None, R: Optional[float] = None,
             r: Optional[float] = None, omega: Optional[float] = None) -> ConicPair:
    """
    Builds the 3-periodic pair of a family. The poristic pair takes (R, r) and the Brocard
    pair (R, omega); when only (a, b) are given they default to the values kin to the
    incircle and homothetic families of (a, b).
    """
    if family is PairFamily.PORISTIC:
        if R is None or r is None:
            a, b = _required(a, b, "poristic")
            R, r = (a + b) / 2, a * b / (a + b)
        return poristic_pair(R, r)
    if family is PairFamily.BROCARD:
        if R is None or omega is None:
            a, b = _required(a, b, "Brocard")
            R, omega = (a if R is None else R), brocard_angle_of_homothetic(a, b)
        return brocard_pair(R, omega)
    a, b = _required(a, b, family.value)
    constructors = {
        PairFamily.CONFOCAL: ConicPair.confocal,
        PairFamily.INCIRCLE: ConicPair.incircle,
        PairFamily.CIRCUMELLIPSE: ConicPair.circumellipse,
        PairFamily.HOMOTHETIC: ConicPair.homothetic,
    }
    if family not in constructors:
        raise DomainError(f"no 3-periodic constructor for the {family.value} pair")
    return constructors[family](a, b)


def _required(a: Optional[float], b: Optional[float], what: str) -> Tuple[float, float]:
    if a is None or b is None:
        raise DomainError(f"the {what} pair needs both a and b")
    return a, b


def sample_triangles(family: Family, samples: int, phase: float = SAMPLE_PHASE) -> List[Tuple[float, Triangle]]:
    return [(t, Triangle(v)) for t, v in family.sample(samples, phase)]


def concentric_pair(outer: AxisEllipse, inner: AxisEllipse, n: int = 3) -> ConicPair:
    return ConicPair(PairFamily.GENERIC, outer, inner, {"a": outer.a, "b": outer.b}, n)
