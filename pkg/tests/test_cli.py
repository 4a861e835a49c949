import csv
import io
import json

import pytest

from config import RunConfig
from errors import ConfigError
from main import EXIT_CONFIG, EXIT_OK, build_parser, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_orbit_csv_carries_the_invariant_circumradius():
    code, text = run("orbit", "--family", "incircle", "--n", "100")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == EXIT_OK
    assert len(rows) == 100
    assert list(rows[0])[:7] == ["t", "x1", "y1", "x2", "y2", "x3", "y3"]
    assert all(float(row["R"]) == pytest.approx(1.5, abs=1e-12) for row in rows)


def test_orbit_of_homothetic_family_has_constant_area():
    code, text = run("orbit", "--family", "homothetic", "--n", "50")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert {round(float(row["A"]), 6) for row in rows} == {2.598076}


def test_orbit_of_pentagons_has_no_triangle_columns():
    code, text = run("orbit", "--family", "incircle", "--periodicity", "5", "--n", "20")
    header = text.splitlines()[0].split(",")
    assert code == EXIT_OK
    assert header[-2:] == ["x5", "y5"]


def test_invariants_json():
    code, text = run("invariants", "--family", "incircle", "--n", "200")
    document = json.loads(text)
    by_name = {row["name"]: row for row in document}
    assert code == EXIT_OK
    assert by_name["circumradius"]["mean"] == pytest.approx(1.5)
    assert all(row["passed"] for row in document)


def test_locus_json_and_csv(tmp_path):
    csv_path = tmp_path / "x3.csv"
    code, text = run("locus", "--family", "incircle", "--k", "3", "--n", "60", "--csv", str(csv_path))
    fits = json.loads(text)
    assert code == EXIT_OK
    assert fits[0]["label"] == "CIRCLE"
    assert len(csv_path.read_text().splitlines()) == 61


def test_locus_svg(tmp_path):
    svg_path = tmp_path / "x4.svg"
    code, _ = run("locus", "--family", "circumellipse", "--k", "4", "--n", "40", "--svg", str(svg_path))
    assert code == EXIT_OK
    assert svg_path.read_text().startswith("<?xml")


def test_certify_subset_writes_json_file(tmp_path):
    json_path = tmp_path / "cert.json"
    code, text = run("certify", "--relation", "affine_I", "x1_circumconic", "--n", "30", "--json", str(json_path))
    document = json.loads(json_path.read_text())
    assert code == EXIT_OK
    assert text == ""
    assert [c["relation"] for c in document] == ["affine_I", "x1_circumconic"]


@pytest.mark.parametrize("argv", [
    ("orbit", "--family", "confocal", "--a", "1", "--b", "2"),
    ("orbit", "--family", "incircle", "--a", "-1"),
    ("orbit", "--family", "poristic", "--R", "2"),
    ("orbit", "--family", "poristic", "--periodicity", "4"),
    ("locus", "--family", "incircle", "--k", "99999"),
    ("certify", "--relation", "unknown"),
    ("orbit", "--n", "4"),
])
def test_bad_input_exits_with_config_code(argv):
    assert run(*argv)[0] == EXIT_CONFIG


def test_config_file_is_overridden_by_flags(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"family": "homothetic", "a": 3.0, "samples": 30}))
    flags = vars(build_parser().parse_args(["orbit", "--a", "2.5"]))
    flags.pop("config")
    config = RunConfig.load(str(path), flags)
    assert (config.family, config.a, config.b, config.samples) == ("homothetic", 2.5, 1.0, 30)


def test_config_file_with_unknown_key(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"familly": "homothetic"}))
    with pytest.raises(ConfigError):
        RunConfig.load(str(path), {})
    assert run("orbit", "--config", str(path))[0] == EXIT_CONFIG


def test_missing_config_file(tmp_path):
    assert run("orbit", "--config", str(tmp_path / "absent.json"))[0] == EXIT_CONFIG


@pytest.mark.parametrize("argv", [
    ("certify", "--relation", "thm2", "--a", "2", "--b", "1", "--n", "24"),
    ("certify", "--relation", "thm7", "--a", "3", "--b", "1", "--n", "12"),
    ("certify", "--relation", "thm3", "thm5", "thm6", "--n", "24"),
    ("certify", "--relation", "obs1", "obs2", "obs3", "--n", "24"),
])
def test_certify_accepts_short_relation_names(argv):
    code, text = run(*argv)
    assert code == EXIT_OK
    assert all(c["passed"] for c in json.loads(text))


@pytest.mark.parametrize("content", [
    {"centers": 3},
    {"centers": ["3"]},
    {"ratios": 2.0},
    {"normalizations": "fixb"},
    {"samples": "40"},
    {"a": "2"},
])
def test_config_file_with_mistyped_values(tmp_path, content):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(content))
    with pytest.raises(ConfigError):
        RunConfig.load(str(path), {})
    assert run("locus", "--config", str(path))[0] == EXIT_CONFIG


@pytest.mark.parametrize("family,k", [("circumellipse", "1"), ("homothetic", "1"), ("incircle", "3")])
def test_locus_svg_draws_the_closed_form(tmp_path, family, k):
    svg_path = tmp_path / "locus.svg"
    code, _ = run("locus", "--family", family, "--k", k, "--n", "40", "--svg", str(svg_path))
    assert code == EXIT_OK
    assert 'stroke="#e67e22"' in svg_path.read_text()
