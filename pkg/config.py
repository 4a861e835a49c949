"""
Run configuration for the command line: defaults, an optional JSON file, then flags.
"""
import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

from errors import ConfigError
from geometry.conics import PairFamily
from settings import CIRCLE_TOL, DEFAULT_SAMPLES, POINT_TOL, RANDOM_SEED, RESIDUAL_TOL

DERIVED_CHOICES = ("reference", "excentral", "orthic")
NORMALIZATION_CHOICES = ("fixb", "fixarea", "fixsum")


@dataclass
class RunConfig:
    command: str = "orbit"
    family: str = "incircle"
    a: Optional[float] = 2.0
    b: Optional[float] = 1.0
    R: Optional[float] = None
    r: Optional[float] = None
    omega: Optional[float] = None
    periodicity: int = 3
    centers: List[int] = field(default_factory=lambda: [1])
    derived: str = "reference"
    samples: int = DEFAULT_SAMPLES

    # classification
    point_tol: float = POINT_TOL
    residual_tol: float = RESIDUAL_TOL
    circle_tol: float = CIRCLE_TOL

    # certify / conjecture / scan
    relations: List[str] = field(default_factory=list)
    seed: int = RANDOM_SEED
    non_confocal: int = 50
    confocal: int = 10
    normalizations: List[str] = field(default_factory=lambda: list(NORMALIZATION_CHOICES))
    ratios: List[float] = field(default_factory=lambda: [1.25 + 0.25 * i for i in range(28)])

    # outputs (None writes to stdout)
    csv_path: Optional[str] = None
    json_path: Optional[str] = None
    svg_path: Optional[str] = None

    @property
    def pair_family(self) -> PairFamily:
        return PairFamily(self.family)

    @property
    def tolerances(self) -> Dict[str, float]:
        return {"point_tol": self.point_tol, "residual_tol": self.residual_tol, "circle_tol": self.circle_tol}

    def merged(self, overrides: Dict[str, Any]) -> "RunConfig":
        """Copy with every non-None override applied."""
        known = {f.name for f in fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys {unknown}")
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def load(cls, path: Optional[str], flags: Dict[str, Any]) -> "RunConfig":
        config = cls()
        if path:
            try:
                data = json.loads(Path(path).read_text())
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigError(f"cannot read config file {path}: {e}") from e
            if not isinstance(data, dict):
                raise ConfigError(f"config file {path} must hold a JSON object")
            config = config.merged(data)
        config = config.merged(flags)
        config.validate()
        return config

    def validate(self) -> None:
        for name in ("periodicity", "samples", "seed", "non_confocal", "confocal"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        for name in ("a", "b", "R", "r", "omega", "point_tol", "residual_tol", "circle_tol"):
            value = getattr(self, name)
            if value is not None and (isinstance(value, bool) or not isinstance(value, (int, float))):
                raise ConfigError(f"{name} must be a number, got {value!r}")
        try:
            family = self.pair_family
        except ValueError:
            raise ConfigError(f"unknown family {self.family!r}") from None
        if family is PairFamily.GENERIC:
            raise ConfigError("the generic family is only reachable through the library")
        if self.derived not in DERIVED_CHOICES:
            raise ConfigError(f"derived triangle must be one of {DERIVED_CHOICES}")
        for name in ("a", "b", "R", "r", "omega"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if family is PairFamily.CONFOCAL and self.a is not None and self.b is not None and self.a <= self.b:
            raise ConfigError("the confocal family needs a > b")
        if family is PairFamily.PORISTIC and (self.R is None) != (self.r is None):
            raise ConfigError("give both R and r for the poristic family")
        if family is PairFamily.BROCARD and (self.R is None) != (self.omega is None):
            raise ConfigError("give both R and omega for the Brocard porism")
        if self.periodicity < 3:
            raise ConfigError(f"periodicity must be at least 3, got {self.periodicity}")
        if self.samples < 8:
            raise ConfigError(f"at least 8 samples are needed, got {self.samples}")
        for name, kind in (("centers", int), ("normalizations", str), ("ratios", (int, float)), ("relations", str)):
            value = getattr(self, name)
            if not isinstance(value, list) or any(isinstance(v, bool) or not isinstance(v, kind) for v in value):
                raise ConfigError(f"{name} must be a list, got {value!r}")
        if not self.centers or any(k < 1 for k in self.centers):
            raise ConfigError("center indices must be positive integers")
        bad = [n for n in self.normalizations if n not in NORMALIZATION_CHOICES]
        if bad:
            raise ConfigError(f"unknown normalizations {bad}")
        if any(x <= 1 for x in self.ratios):
            raise ConfigError("scan ratios must exceed 1")
        if min(self.point_tol, self.residual_tol, self.circle_tol) <= 0:
            raise ConfigError("tolerances must be positive")
