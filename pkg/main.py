#!/usr/bin/env python3

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np

from config import DERIVED_CHOICES, NORMALIZATION_CHOICES, RunConfig
from consts import TABLE1_COLUMNS
from errors import ConfigError, ConvergenceError, DegenerateError, DomainError, UnknownCenterError
from geometry.conics import AxisEllipse, ConicPair, PairFamily
from geometry.families import family_for, pair_for
from geometry.invariants import acute_violations, sweep_all, table2
from geometry.loci import Derived, LocusKind, ScanNormalization, conjecture1_batch, locus_table, \
    table1_mismatches, verify_locus, x16_radius_scan
from geometry.orbits import TUNABLE, tune_caustic_for_closure
from geometry.transforms import CERTIFICATES, certify, group_isolation_check
from geometry.triangle import Triangle, metrics
from logger import prepare_logger
from misc.svg_plot import expected_curve_points, quartic_curve_points, render_locus, write_svg

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3

MATCH_TOL = 1e-6
POLYGON_TOL = 1e-8


def fmt(x: float) -> str:
    return f"{x:.17g}"


def pair_from_config(config: RunConfig) -> ConicPair:
    family = config.pair_family
    if config.periodicity == 3:
        return pair_for(family, config.a, config.b, config.R, config.r, config.omega)
    if family not in TUNABLE:
        raise ConfigError(f"the {family.value} family only has 3-periodics")
    if family is PairFamily.CIRCUMELLIPSE:
        return tune_caustic_for_closure(AxisEllipse.circle(config.a + config.b), family, config.periodicity,
                                        aspect=min(config.a, config.b) / max(config.a, config.b))
    return tune_caustic_for_closure(AxisEllipse(config.a, config.b), family, config.periodicity)


class PonceletLab:
    """
    Runs one command of the command line against a validated configuration. Every cmd_*
    method writes its outputs and returns True when all of its checks passed.
    """

    def __init__(self, config: RunConfig, out=None):
        self.logger = prepare_logger()
        self.config = config
        self.out = out or sys.stdout

    def run(self) -> int:
        handler = getattr(self, f"cmd_{self.config.command}", None)
        if handler is None:
            raise ConfigError(f"unknown command {self.config.command!r}")
        self.logger.info(f"Running {self.config.command}")
        return EXIT_OK if handler() else EXIT_FAILED

    # outputs

    def _emit_json(self, document) -> None:
        text = json.dumps(document, indent=2)
        if self.config.json_path:
            Path(self.config.json_path).write_text(text + "\n", encoding="utf-8")
            self.logger.info(f"Wrote {self.config.json_path}")
        else:
            print(text, file=self.out)

    def _emit_csv(self, header: Sequence[str], rows: Iterable[Sequence]) -> None:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(x) if isinstance(x, (float, np.floating)) else x for x in row])
        if self.config.csv_path:
            Path(self.config.csv_path).write_text(buffer.getvalue(), encoding="utf-8")
            self.logger.info(f"Wrote {self.config.csv_path}")
        else:
            self.out.write(buffer.getvalue())

    # commands

    def cmd_orbit(self) -> bool:
        pair = pair_from_config(self.config)
        family = family_for(pair)
        n = pair.n
        header = ["t"] + [f"{axis}{i}" for i in range(1, n + 1) for axis in "xy"]
        if n == 3:
            header += ["L", "L2", "A", "r", "R", "omega"]
        rows = []
        for t, vertices in family.sample(self.config.samples):
            row = [t] + list(vertices.ravel())
            if n == 3:
                m = metrics(Triangle(vertices))
                row += [m.perimeter, m.sum_sq_sides, m.area, m.inradius, m.circumradius, m.brocard_angle]
            rows.append(row)
        if not rows:
            raise DegenerateError(f"every parameter of {family!r} was degenerate")
        self._emit_csv(header, rows)
        return True

    def cmd_invariants(self) -> bool:
        family = family_for(pair_from_config(self.config))
        reports = sweep_all(family, self.config.samples)
        tol = 1e-9 if family.n == 3 else POLYGON_TOL
        document = [{**json.loads(r.jsonify), "passed": r.passed(tol)} for r in reports]
        passed = all(r.passed(tol) for r in reports)
        if family.pair.family is PairFamily.CIRCUMELLIPSE and family.n == 3:
            obtuse = acute_violations(family, self.config.samples)
            document.append({"name": "acute", "obtuse_samples": obtuse, "passed": obtuse == 0})
            passed &= obtuse == 0
        self._emit_json(document)
        return passed

    def cmd_locus(self) -> bool:
        pair = pair_from_config(self.config)
        derived = Derived(self.config.derived)
        fits = [verify_locus(pair, k, derived, self.config.samples, **self.config.tolerances)
                for k in self.config.centers]
        if self.config.csv_path:
            self._emit_csv(["k", "t", "x", "y"], (
                [fit.k, t, x, y] for fit in fits for t, (x, y) in zip(fit.samples.parameters, fit.samples.points)))
        self._emit_json([fit.to_dict() for fit in fits])
        if self.config.svg_path:
            self._plot(pair, fits[0])
        return all(fit.match_error is None or fit.match_error < MATCH_TOL for fit in fits)

    def _plot(self, pair: ConicPair, fit) -> None:
        curves = []
        expected = fit.expected
        if expected is not None and expected.kind in (LocusKind.CIRCLE, LocusKind.ELLIPSE):
            curves = [expected_curve_points(expected.center, expected.semi_axes)]
        elif expected is not None and expected.kind is LocusKind.QUARTIC:
            curves = quartic_curve_points(expected.quartic, radius=pair.outer.scale)
        family = family_for(pair)
        triangles = [v for _, v in family.sample(4, phase=0.3)]
        title = f"X{fit.k} over the {pair.family.value} family: {fit.label.name}"
        write_svg(self.config.svg_path, render_locus(pair, fit.samples.points, curves, triangles, title))
        self.logger.info(f"Wrote {self.config.svg_path}")

    def cmd_table1(self) -> bool:
        grid = locus_table(a=self.config.a, b=self.config.b, n=self.config.samples)
        keys = [key for key, _ in TABLE1_COLUMNS]
        self._emit_csv(["k"] + keys, ([k] + [row[key] for key in keys] for k, row in grid.items()))
        mismatches = table1_mismatches(grid)
        for k, column, published, measured in mismatches:
            self.logger.warning(f"X{k} / {column}: published {published}, measured {measured}")
        return not mismatches

    def cmd_table2(self) -> bool:
        reports = table2(self.config.a, self.config.b, self.config.samples)
        document = [{**json.loads(r.jsonify), "passed": r.passed(1e-9 if r.n == 3 else POLYGON_TOL)}
                    for r in reports]
        self._emit_json(document)
        return all(row["passed"] for row in document)

    def cmd_certify(self) -> bool:
        requested = self.config.relations or list(CERTIFICATES) + ["isolation"]
        relations = [name for name in requested if name != "isolation"]
        certificates = certify(relations, self.config.a, self.config.b, self.config.samples) if relations else []
        document = [json.loads(c.jsonify) for c in certificates]
        passed = all(c.passed for c in certificates)
        if "isolation" in requested:
            report = group_isolation_check(self.config.a, self.config.b)
            document.append({"relation": "isolation", **json.loads(report.jsonify)})
            passed &= report.isolated
        self._emit_json(document)
        return passed

    def cmd_conjecture(self) -> bool:
        batch = conjecture1_batch(self.config.non_confocal, self.config.confocal, self.config.seed,
                                  self.config.samples)
        self._emit_json(batch.to_dict())
        return batch.confocal_ellipses == self.config.confocal and batch.non_confocal_conics == 0

    def cmd_scan(self) -> bool:
        scans = [x16_radius_scan(self.config.ratios, ScanNormalization(name)) for name in self.config.normalizations]
        located = [s.normalization.value for s in scans if s.argmin is not None and abs(s.argmin - 3) < 1e-3]
        self._emit_json({"scans": [s.to_dict() for s in scans], "minimum_at_3": located})
        return True


COMMANDS = ("orbit", "invariants", "locus", "table1", "table2", "certify", "conjecture", "scan")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    common.add_argument("--family", choices=[f.value for f in PairFamily if f is not PairFamily.GENERIC])
    common.add_argument("--a", type=float)
    common.add_argument("--b", type=float)
    common.add_argument("--R", type=float, help="circumradius of the poristic or Brocard pair")
    common.add_argument("--r", type=float, help="inradius of the poristic pair")
    common.add_argument("--omega", type=float, help="Brocard angle in radians")
    common.add_argument("--periodicity", type=int, help="N of the Poncelet polygons (default 3)")
    common.add_argument("--k", type=int, nargs="+", dest="centers", help="Kimberling indices")
    common.add_argument("--derived", choices=DERIVED_CHOICES)
    common.add_argument("--n", type=int, dest="samples", help="number of parameter samples")
    common.add_argument("--point-tol", type=float, dest="point_tol")
    common.add_argument("--residual-tol", type=float, dest="residual_tol")
    common.add_argument("--circle-tol", type=float, dest="circle_tol")
    common.add_argument("--relation", nargs="+", dest="relations")
    common.add_argument("--seed", type=int)
    common.add_argument("--non-confocal", type=int, dest="non_confocal")
    common.add_argument("--confocal", type=int)
    common.add_argument("--normalization", nargs="+", choices=NORMALIZATION_CHOICES, dest="normalizations")
    common.add_argument("--ratios", type=float, nargs="+")
    common.add_argument("--csv", dest="csv_path")
    common.add_argument("--json", dest="json_path")
    common.add_argument("--svg", dest="svg_path")

    parser = argparse.ArgumentParser(description="Poncelet 3-periodic families in concentric conic pairs")
    commands = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        commands.add_parser(name, parents=[common])
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    logger = prepare_logger()
    args = vars(build_parser().parse_args(argv))
    path = args.pop("config")
    try:
        config = RunConfig.load(path, args)
        return PonceletLab(config, out).run()
    except (ConfigError, DomainError, UnknownCenterError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except (DegenerateError, ConvergenceError) as e:
        logger.error(f"Degenerate data: {e}")
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
