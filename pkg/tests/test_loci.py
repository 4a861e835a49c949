import json

import numpy as np
import pytest

from config import RunConfig
from consts import TABLE1, TABLE1_COLUMNS
from errors import DomainError, UnknownCenterError
from geometry.conics import AxisEllipse, ConicPair, LocusClass, PairFamily, QuarticImplicit, classify_locus
from geometry.families import pair_for
from geometry.loci import Derived, LocusKind, ScanNormalization, cell_matches, conjecture1_batch, expected_locus, \
    isogonic_isodynamic_radii, locus_table, sample_curvature_centroid, sample_locus, table1_mismatches, \
    verify_locus, x16_radius_scan
from geometry.orbits import tune_caustic_for_closure
from misc.svg_plot import quartic_curve_points

SQRT13 = np.sqrt(13.0)


@pytest.mark.parametrize("family,k,label,axes", [
    (PairFamily.INCIRCLE, 2, LocusClass.ELLIPSE, (2 / 9, 1 / 9)),
    (PairFamily.INCIRCLE, 3, LocusClass.CIRCLE, (0.5, 0.5)),
    (PairFamily.INCIRCLE, 4, LocusClass.ELLIPSE, (1 / 3, 2 / 3)),
    (PairFamily.INCIRCLE, 5, LocusClass.CIRCLE, (1 / 12, 1 / 12)),
    (PairFamily.CIRCUMELLIPSE, 4, LocusClass.CIRCLE, (1.0, 1.0)),
    (PairFamily.CIRCUMELLIPSE, 5, LocusClass.CIRCLE, (0.5, 0.5)),
    (PairFamily.CIRCUMELLIPSE, 6, LocusClass.ELLIPSE, (0.75, 0.6)),
    (PairFamily.HOMOTHETIC, 6, LocusClass.ELLIPSE, (0.6, 0.3)),
    (PairFamily.CONFOCAL, 1, LocusClass.ELLIPSE, ((SQRT13 - 1) / 2, 4 - SQRT13)),
])
def test_conic_loci_match_closed_forms(family, k, label, axes):
    fit = verify_locus(pair_for(family, 2.0, 1.0), k)
    assert fit.label is label
    assert fit.semi_axes == pytest.approx(axes, rel=1e-6)
    assert np.allclose(fit.center, 0.0, atol=1e-8)
    assert fit.match_error < 1e-6


@pytest.mark.parametrize("family,k", [
    (PairFamily.INCIRCLE, 6),
    (PairFamily.CIRCUMELLIPSE, 1),
    (PairFamily.HOMOTHETIC, 1),
    (PairFamily.CONFOCAL, 6),
])
def test_quartic_loci_satisfy_closed_forms(family, k):
    fit = verify_locus(pair_for(family, 2.0, 1.0), k)
    assert fit.expected.kind is LocusKind.QUARTIC
    assert fit.match_error == fit.expected_residual
    assert fit.match_error < 1e-8
    assert fit.coefficient_angle is not None


@pytest.mark.parametrize("a,b", [(3.0, 2.0), (1.5, 1.0), (5.0, 4.0)])
def test_incenter_quartic_of_circumellipse_family_across_aspects(a, b):
    fit = verify_locus(ConicPair.circumellipse(a, b), 1)
    assert fit.match_error < 1e-8
    assert json.loads(fit.jsonify)["coefficient_angle"] is not None


@pytest.mark.parametrize("family,k", [
    (PairFamily.INCIRCLE, 1),
    (PairFamily.CIRCUMELLIPSE, 3),
    (PairFamily.HOMOTHETIC, 2),
    (PairFamily.PORISTIC, 1),
    (PairFamily.PORISTIC, 3),
    (PairFamily.BROCARD, 3),
])
def test_stationary_centers(family, k):
    fit = verify_locus(pair_for(family, 2.0, 1.0), k)
    assert fit.label is LocusClass.STATIONARY_POINT
    assert fit.match_error < 1e-9


def test_confocal_mittenpunkt_is_stationary():
    assert verify_locus(ConicPair.confocal(2.0, 1.0), 9).label is LocusClass.STATIONARY_POINT


def test_excentral_symmedian_of_confocal_is_stationary():
    samples = sample_locus(ConicPair.confocal(2.0, 1.0), 6, Derived.EXCENTRAL, 120)
    assert classify_locus(samples.points, 2.0) is LocusClass.STATIONARY_POINT


@pytest.mark.parametrize("k", [13, 14, 15, 16])
def test_isogonic_and_isodynamic_circles(k):
    fit = verify_locus(ConicPair.homothetic(2.0, 1.0), k)
    assert fit.label is LocusClass.CIRCLE
    assert fit.match_error < 1e-6


def test_isogonic_radii_at_two_one():
    assert isogonic_isodynamic_radii(2.0, 1.0) == pytest.approx({13: 0.5, 14: 1.5, 15: 1 / 6, 16: 4.5})
    assert 16 not in isogonic_isodynamic_radii(1.0, 1.0)


def test_no_closed_form_for_unlisted_centers():
    assert expected_locus(PairFamily.INCIRCLE, 99, 2.0, 1.0) is None
    assert verify_locus(ConicPair.incircle(2.0, 1.0), 7).match_error is None


def test_curvature_centroid_of_incircle_pentagons_is_circle():
    pair = tune_caustic_for_closure(AxisEllipse(2.0, 1.0), PairFamily.INCIRCLE, 5)
    samples = sample_curvature_centroid(pair, 120)
    assert classify_locus(samples.points, pair.scale) is LocusClass.CIRCLE


def test_sample_locus_errors():
    with pytest.raises(DomainError):
        sample_locus(ConicPair.incircle(2.0, 1.0), 1, n=4)
    with pytest.raises(UnknownCenterError):
        sample_locus(ConicPair.incircle(2.0, 1.0), 99999)


def test_locus_fit_serializes():
    document = json.loads(verify_locus(ConicPair.incircle(2.0, 1.0), 3, n=60).jsonify)
    assert document["label"] == "CIRCLE"
    assert document["expected"]["kind"] == "circle"


def test_small_locus_table_matches_published_cells():
    grid = locus_table(columns=("incircle", "homothetic"), ks=(1, 2, 3), n=60)
    assert grid[1] == {"incircle": "P", "homothetic": "4"}
    assert grid[2]["homothetic"] == "P"
    assert grid[3]["incircle"] == "C"
    assert table1_mismatches(grid) == []


def test_unknown_table_column():
    with pytest.raises(DomainError):
        locus_table(columns=("nope",), ks=(1,))


def test_cell_matching_rules():
    assert cell_matches("X", "4")
    assert cell_matches("X", "X")
    assert cell_matches("C''", "C")
    assert cell_matches("C_5", "C")
    assert not cell_matches("E'", "C")
    assert table1_mismatches({1: {"incircle": "E"}}) == [(1, "incircle", "P", "E")]


def test_incenter_loci_batch():
    batch = conjecture1_batch(non_confocal=4, confocal=2, seed=7, n=120)
    assert batch.confocal_ellipses == 2
    assert all(entry.residual < 1e-9 for entry in batch.confocal)
    assert batch.non_confocal_conics == 0
    assert "not a proof" in batch.to_dict()["caveat"]


def test_x16_radius_minimum_with_fixed_minor_axis():
    scan = x16_radius_scan([2.0, 2.5, 3.0, 3.5, 4.5], ScanNormalization.FIX_B)
    assert scan.argmin == pytest.approx(3.0, abs=1e-3)
    assert scan.radii[2] == pytest.approx(4.0, rel=1e-6)
    assert [s[2] for s in scan.segments] == ["decreasing", "increasing"]


def test_x16_radius_with_fixed_area():
    scan = x16_radius_scan([3.0, 4.5, 5.5, 6.5, 8.0], ScanNormalization.FIX_AREA)
    assert scan.argmin == pytest.approx(3 + 2 * np.sqrt(2), abs=1e-3)


def test_x16_radius_with_fixed_sum_is_monotone():
    scan = x16_radius_scan([1.5, 2.0, 3.0, 4.0], ScanNormalization.FIX_PERIMETERLIKE)
    assert scan.argmin is None
    assert [s[2] for s in scan.segments] == ["decreasing"]


def test_scan_rejects_ratios_below_one():
    with pytest.raises(DomainError):
        x16_radius_scan([0.5, 2.0], ScanNormalization.FIX_B)


def test_quartic_curve_of_two_circles():
    # (r² - 1)(r² - 4)
    curves = quartic_curve_points(QuarticImplicit({(4, 0): 1.0, (2, 2): 2.0, (0, 4): 1.0, (2, 0): -5.0, (0, 2): -5.0,
                                                   (0, 0): 4.0}), count=64)
    assert len(curves) == 2
    outer, inner = curves
    assert np.allclose(np.linalg.norm(outer, axis=1), 2.0)
    assert np.allclose(np.linalg.norm(inner, axis=1), 1.0)
    assert np.allclose(outer[0], outer[-1])


@pytest.mark.parametrize("family,k", [
    (PairFamily.CIRCUMELLIPSE, 1),
    (PairFamily.HOMOTHETIC, 1),
    (PairFamily.INCIRCLE, 6),
    (PairFamily.CONFOCAL, 6),
])
def test_quartic_curve_lies_on_the_closed_form(family, k):
    expected = expected_locus(family, k, 2.0, 1.0)
    curves = quartic_curve_points(expected.quartic)
    assert curves
    for curve in curves:
        assert np.max(expected.quartic.relative_residuals(curve)) < 1e-9


def test_quartic_curve_passes_through_sampled_incenters():
    pair = pair_for(PairFamily.CIRCUMELLIPSE, 2.0, 1.0)
    curves = quartic_curve_points(expected_locus(PairFamily.CIRCUMELLIPSE, 1, 2.0, 1.0).quartic, count=2048, radius=2.0)
    assert len(curves) == 1
    curve = curves[0]
    for p in sample_locus(pair, 1, n=24).points:
        assert np.min(np.linalg.norm(curve - p, axis=1)) < 1e-2


def test_full_locus_table_matches_published_cells():
    grid = locus_table()
    assert sorted(grid) == sorted(TABLE1)
    assert all(len(row) == len(TABLE1_COLUMNS) for row in grid.values())
    assert table1_mismatches(grid) == []


@pytest.mark.parametrize("family,k,label", [
    (PairFamily.INCIRCLE, 40, LocusClass.CIRCLE),
    (PairFamily.INCIRCLE, 57, LocusClass.CIRCLE),
    (PairFamily.HOMOTHETIC, 39, LocusClass.ELLIPSE),
])
def test_loci_beyond_the_table(family, k, label):
    assert verify_locus(pair_for(family, 2.0, 1.0), k).label is label


def test_bevan_point_circle_is_twice_the_circumcenter_circle():
    pair = pair_for(PairFamily.INCIRCLE, 2.0, 1.0)
    fit = verify_locus(pair, 40)
    assert fit.semi_axes == pytest.approx((1.0, 1.0), rel=1e-6)
    assert np.allclose(fit.center, 0.0, atol=1e-8)


DELTA32 = np.sqrt(61.0)


@pytest.mark.parametrize("family,k,label,axes", [
    (PairFamily.INCIRCLE, 3, LocusClass.CIRCLE, (0.5, 0.5)),
    (PairFamily.CIRCUMELLIPSE, 4, LocusClass.CIRCLE, (1.0, 1.0)),
    (PairFamily.CIRCUMELLIPSE, 5, LocusClass.CIRCLE, (0.5, 0.5)),
    (PairFamily.CIRCUMELLIPSE, 6, LocusClass.ELLIPSE, (5 / 7, 5 / 8)),
    (PairFamily.HOMOTHETIC, 6, LocusClass.ELLIPSE, (15 / 26, 10 / 26)),
    (PairFamily.CONFOCAL, 1, LocusClass.ELLIPSE, ((DELTA32 - 4) / 3, (9 - DELTA32) / 2)),
])
def test_conic_loci_at_three_two(family, k, label, axes):
    fit = verify_locus(pair_for(family, 3.0, 2.0), k)
    assert fit.label is label
    assert fit.semi_axes == pytest.approx(axes, rel=1e-6)
    assert fit.match_error < 1e-6


def test_incenter_loci_batch_default_sizes():
    config = RunConfig()
    assert (config.non_confocal, config.confocal) == (50, 10)
    batch = conjecture1_batch()
    assert (len(batch.non_confocal), len(batch.confocal)) == (50, 10)
    assert batch.confocal_ellipses == 10
    assert batch.non_confocal_conics == 0
