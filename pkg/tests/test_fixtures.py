"""
Regression tests over the shipped fixture catalog and orbit paths
"""
import pytest

from sphericalis.exceptions import UnknownFixture
from sphericalis.fixtures import (
    TargetKind,
    antidominant_grid,
    get_fixture,
    get_path,
    list_fixtures,
    list_paths,
    path_suite,
    regression_suite,
)
from sphericalis.models import CheckStatus


def failures(report):
    return [f"{c.name}: {c.detail}" for c in report.results if c.status == CheckStatus.FAIL]


def test_catalog_contents():
    names = list_fixtures()
    assert len(names) == 13
    assert {"whittaker-a1", "group-a2", "triple-product", "shalika-gl4", "spin7-spin8"} <= set(names)
    assert list_paths() == ["sl2-sl3", "sl2-sl3-mirror", "sp2-sp4", "sp2xsp2-sp4"]


def test_every_fixture_declares_targets():
    for name in list_fixtures():
        fixture = get_fixture(name)
        kinds = {t.kind for t in fixture.expected}
        assert TargetKind.WEYL_ORDER in kinds, name
        assert fixture.grid, name


def test_unknown_names():
    with pytest.raises(UnknownFixture):
        get_fixture("so5-nowhere")
    with pytest.raises(UnknownFixture):
        get_path("nowhere")


def test_antidominant_grid():
    d = get_fixture("group-a1").datum
    assert antidominant_grid(d) == ((0,), (-2,), (-4,), (-6,), (-8,))
    assert len(antidominant_grid(d, size=None, bound=1)) == 2


def test_twisted_fixture_skips_pinning():
    results = {c.name: c.status for c in regression_suite("whittaker-a1").results}
    assert results["pinning"] == CheckStatus.SKIPPED
    assert results["plancherel_norm"] == CheckStatus.SKIPPED
    assert results["plancherel_orthogonality"] == CheckStatus.SKIPPED


def test_group_suite_covers_full_cocycle():
    results = {c.name: c for c in regression_suite("group-a2").results}
    assert results["cocycle"].status == CheckStatus.PASS
    assert results["cocycle"].detail == "36 pairs"
    assert results["plancherel_orthogonality"].status == CheckStatus.PASS


@pytest.mark.parametrize("name", list_fixtures())
def test_regression_suite(name):
    report = regression_suite(name)
    assert report.results
    assert report.passed, failures(report)


def test_path_suite():
    report = path_suite()
    assert {c.name for c in report.results} >= {"sl2-sl3_ambient", "sp2xsp2-sp4_restricted", "sl2-sl3_inductionstep"}
    assert report.passed, failures(report)
