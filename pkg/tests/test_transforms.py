import json

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from errors import DomainError
from geometry.conics import PairFamily, confocal_caustic
from geometry.transforms import CERTIFICATE_ALIASES, CERTIFICATES, MapKind, PlanarMap, affine_certificate, affine_image_I, \
    affine_image_II, brocard_inellipse_certificate, certify, circumconic_certificate, group_isolation_check, \
    inconic_certificate, macbeath_certificate, rotation_certificate_I, rotation_certificate_II, \
    similarity_certificate_III
from geometry.triangle import Triangle

SAMPLES = 40


@st.composite
def triangles(draw):
    v = draw(arrays(np.float64, (3, 2), elements=st.floats(min_value=-5, max_value=5)))
    T = Triangle(v)
    assume(T.area > 0.5 and np.min(T.sides) > 0.5)
    return T


@st.composite
def affine_maps(draw):
    matrix = draw(arrays(np.float64, (2, 2), elements=st.floats(min_value=-3, max_value=3)))
    assume(abs(np.linalg.det(matrix)) > 0.1)
    shift = draw(arrays(np.float64, (2,), elements=st.floats(min_value=-3, max_value=3)))
    return PlanarMap.affine(matrix, shift)


@settings(deadline=None, max_examples=60)
@given(affine_maps(), triangles())
def test_affine_map_scales_area_by_determinant(T, triangle):
    image = Triangle(T(triangle.vertices))
    assert image.area == pytest.approx(abs(T.determinant) * triangle.area, rel=1e-9)
    assert np.allclose(T.inverse()(image.vertices), triangle.vertices, atol=1e-9)


@settings(deadline=None, max_examples=40)
@given(st.floats(min_value=-np.pi, max_value=np.pi), triangles())
def test_rigid_maps_preserve_sides(angle, triangle):
    T = PlanarMap.rigid(angle, (1.0, -2.0))
    assert T.kind is MapKind.RIGID
    assert np.allclose(Triangle(T(triangle.vertices)).sides, triangle.sides, atol=1e-9)


def test_frame_sends_origin_home_and_direction_to_positive_x():
    T = PlanarMap.frame((1.0, 1.0), (1.0, 3.0))
    assert np.allclose(T([(1.0, 1.0), (1.0, 3.0)]), [(0.0, 0.0), (2.0, 0.0)], atol=1e-12)


def test_singular_map_is_rejected():
    with pytest.raises(DomainError):
        PlanarMap.affine([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(DomainError):
        PlanarMap.similarity(0.0, 0.3)


def test_affine_image_of_confocal_caustic_is_incircle_pair():
    inner_a, inner_b = confocal_caustic(2.0, 1.0)
    T, pair = affine_image_I(2.0, 1.0)
    assert inner_b == pytest.approx((4 - np.sqrt(13)) / 3)
    assert pair.family is PairFamily.INCIRCLE
    assert pair.inner.is_circle
    assert pair.inner.a == pytest.approx(inner_b)
    assert pair.outer.b == pytest.approx(1.0)
    assert pair.outer.a == pytest.approx(2.0 * inner_b / inner_a)
    assert pair.cayley_residual() < 1e-12


def test_affine_image_of_confocal_billiard_is_circle():
    T, pair = affine_image_II(2.0, 1.0)
    assert pair.family is PairFamily.CIRCUMELLIPSE
    assert pair.outer.is_circle
    assert pair.outer.a == pytest.approx(2.0)
    assert T.determinant == pytest.approx(2.0)


@pytest.mark.parametrize("which", ["I", "II"])
def test_affine_certificates(which):
    certificate = affine_certificate(which, 2.0, 1.0, SAMPLES)
    assert certificate.passed
    assert certificate.samples == SAMPLES


def test_unknown_affine_image():
    with pytest.raises(DomainError):
        affine_certificate("III", 2.0, 1.0)


@pytest.mark.parametrize("build", [rotation_certificate_I, rotation_certificate_II])
def test_rotation_certificates(build):
    certificate = build(2.0, 1.0, SAMPLES)
    assert certificate.passed
    assert certificate.details["R"] == pytest.approx(1.5)
    assert certificate.details["d"] == pytest.approx(0.5)


def test_homothetic_family_is_similar_to_brocard_porism():
    assert similarity_certificate_III(2.0, 1.0, 12).passed


def test_brocard_inellipse_keeps_its_aspect():
    assert brocard_inellipse_certificate(2.0, 1.0, SAMPLES).passed


@pytest.mark.parametrize("build,axes", [
    (circumconic_certificate, (2.0, 1.0)),
    (inconic_certificate, (2.0, 1.0)),
    (macbeath_certificate, (1.5, np.sqrt(2.0))),
])
def test_conics_of_the_poristic_families(build, axes):
    certificate = build(2.0, 1.0, SAMPLES)
    assert certificate.passed
    assert (certificate.details["semi_major"], certificate.details["semi_minor"]) == pytest.approx(axes)


def test_certificate_serializes():
    document = json.loads(affine_certificate("I", 2.0, 1.0, 12).jsonify)
    assert document["relation"] == "affine_I"
    assert document["details"]["skipped"] == 0


def test_certify_rejects_unknown_relation():
    with pytest.raises(DomainError):
        certify(["affine_IV"], 2.0, 1.0)


def test_certify_subset_in_order():
    names = [c.relation for c in certify(["rotation_I", "affine_II"], 2.0, 1.0, 12)]
    assert names == ["rotation_I", "affine_II"]
    assert set(CERTIFICATES) >= {"affine_I", "similarity_III", "macbeath_inconic"}


def test_homothetic_family_has_no_affine_image_among_the_others():
    report = group_isolation_check(2.0, 1.0, samples=12)
    assert report.residuals["incircle->incircle"] < 1e-6
    assert report.residuals["confocal->incircle_image"] < 1e-6
    assert report.isolated
    assert "not a proof" in json.loads(report.jsonify)["caveat"]


@pytest.mark.parametrize("alias", sorted(CERTIFICATE_ALIASES))
def test_short_relation_names(alias):
    certificate, = certify([alias], 2.0, 1.0, 12)
    assert certificate.relation == CERTIFICATE_ALIASES[alias]
    assert certificate.passed


@pytest.mark.parametrize("samples", [17, 37, 53])
@pytest.mark.parametrize("build", [rotation_certificate_I, rotation_certificate_II])
def test_rotation_certificates_do_not_depend_on_the_grid(build, samples):
    certificate = build(2.0, 1.0, samples)
    assert certificate.passed
    assert certificate.samples + certificate.details["skipped"] == samples


@pytest.mark.parametrize("a,b", [(3.0, 1.0), (1.5, 1.0)])
def test_rotation_certificates_across_aspect_ratios(a, b):
    assert rotation_certificate_I(a, b, 24).passed
    assert rotation_certificate_II(a, b, 24).passed


def test_similarity_scale_changes_along_the_family():
    certificate = similarity_certificate_III(2.0, 1.0, 12)
    low, high = certificate.details["scale_min"], certificate.details["scale_max"]
    assert certificate.passed
    assert high / low - 1 > 1e-3


def test_similarity_at_three_one():
    certificate = similarity_certificate_III(3.0, 1.0, 12)
    assert certificate.passed
    assert certificate.details["scale_max"] > certificate.details["scale_min"]
