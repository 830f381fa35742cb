"""
Tests for parsing and validating spherical data documents
"""
import copy
import json

import pytest

from sphericalis.config import get_settings
from sphericalis.exceptions import DatumParseError
from sphericalis.models import CheckStatus, RootKind
from sphericalis.spherical_data import parse_datum, theta_flipped_by, validate_datum

GROUP_A1 = {
    "name": "group-a1",
    "affine": True,
    "twisted": False,
    "rank": 1,
    "lattice_scale": 2,
    "ambient": {"cartan": [[2, 0], [0, 2]]},
    "spherical_roots": [{"gamma": [2], "cogamma": [2], "kind": "G"}],
    "theta_plus": [{"coweight": [2], "sign": 1, "r2": 2}],
    "colors": [[2]],
    "rho_pX": [2],
}


def variant(**changes):
    doc = copy.deepcopy(GROUP_A1)
    doc.update(changes)
    return doc


def statuses(report):
    return {c.name: c.status for c in report.checks}


def shipped(name):
    with open(get_settings().fixtures_dir / f"{name}.json", encoding="utf-8") as f:
        return json.load(f)


def test_parse_group_a1():
    d = parse_datum(GROUP_A1)
    assert d.rank == 1
    assert d.spherical_roots[0].kind == RootKind.G
    assert d.has_constant
    assert d.ambient_rho_pairings == (1, 1)
    assert len(d.theta) == 2


def test_parse_from_json_string_and_file(tmp_path):
    text = json.dumps(GROUP_A1)
    assert parse_datum(text) == parse_datum(GROUP_A1)
    file = tmp_path / "datum.json"
    file.write_text(text, encoding="utf-8")
    assert parse_datum(file).name == "group-a1"


def test_document_roundtrip():
    d = parse_datum(GROUP_A1)
    assert parse_datum(d.to_document()) == d


def test_pairings_only_ambient():
    d = parse_datum(variant(ambient={"pos_coroot_rho_pairings": [1, 1]}))
    assert d.ambient is None
    assert d.ambient_rho_pairings == (1, 1)


@pytest.mark.parametrize(
    "changes, field",
    [
        ({"lattice_scale": 3}, "lattice_scale"),
        ({"spherical_roots": [{"gamma": [2, 0], "cogamma": [2], "kind": "G"}]}, "spherical_roots.0.gamma"),
        ({"rho_pX": [2, 2]}, "rho_pX"),
        ({"ambient": {"cartan": [[2, -2], [-2, 2]]}}, "ambient.cartan"),
        ({"ambient": {}}, "ambient"),
        ({"colour": [[2]]}, "colour"),
    ],
)
def test_parse_errors_name_the_field(changes, field, settings_env):
    settings_env(weyl_cap=100)
    with pytest.raises(DatumParseError) as info:
        parse_datum(variant(**changes))
    assert info.value.field_path is not None
    assert info.value.field_path.startswith(field)


def test_unreadable_document(tmp_path):
    with pytest.raises(DatumParseError):
        parse_datum(tmp_path / "missing.json")
    with pytest.raises(DatumParseError):
        parse_datum("{not json")


def test_validate_group_a1():
    report = validate_datum(parse_datum(GROUP_A1))
    assert report.passed
    assert statuses(report)["separation"] == CheckStatus.PASS


def test_validate_skips_separation_when_not_affine():
    report = validate_datum(parse_datum(variant(affine=False)))
    assert statuses(report)["separation"] == CheckStatus.SKIPPED


def test_validate_bad_cartan_skips_dependent_checks():
    doc = variant(spherical_roots=[{"gamma": [2], "cogamma": [1], "kind": "G"}])
    report = validate_datum(parse_datum(doc))
    found = statuses(report)
    assert found["cartan"] == CheckStatus.FAIL
    assert found["posneg"] == CheckStatus.SKIPPED
    assert "cartan" in report.failed()


def test_validate_posneg_failure():
    """A positive triple outside the color cone"""
    report = validate_datum(parse_datum(variant(colors=[[-2]])))
    assert "posneg" in report.failed()


def test_validate_r2():
    doc = variant(theta_plus=[{"coweight": [2], "sign": 1, "r2": 0}])
    assert "r2_positive" in validate_datum(parse_datum(doc)).failed()


def test_theta_flipped_by():
    d = parse_datum(GROUP_A1)
    assert [t.coweight for t in theta_flipped_by(d, 0)] == [(2,)]
    with pytest.raises(IndexError):
        theta_flipped_by(d, 1)


def test_group_a2_missing_theta_triple():
    doc = shipped("group-a2")
    assert validate_datum(parse_datum(doc)).passed
    del doc["theta_plus"][2]
    assert "theta_stable" in validate_datum(parse_datum(doc)).failed()


def test_triple_product_symmetric_theta_not_separated():
    doc = shipped("triple-product")
    assert validate_datum(parse_datum(doc)).passed
    negated = [dict(t, coweight=[-x for x in t["coweight"]]) for t in doc["theta_plus"]]
    doc["theta_plus"] += negated
    assert "separation" in validate_datum(parse_datum(doc)).failed()
