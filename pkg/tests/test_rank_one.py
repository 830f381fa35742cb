"""
Tests for rank-one functional-equation coefficients and orbit-path composition
"""
import pytest

from sphericalis.exact_algebra import TorusLaurent, TorusRational
from sphericalis.exceptions import DatumParseError, PathError
from sphericalis.fixtures import ambient_path_display, get_path
from sphericalis.models import FeTag
from sphericalis.rank_one import (
    FeCase,
    backtick_b,
    compose_path,
    fe_coefficient,
    inductionstep_holds,
    parse_path,
    path_element,
    restricted_backtick_b,
)

A2 = [[2, -1], [-1, 2]]


def e(*v, coeff=1):
    return TorusLaurent.monomial(v, coeff)


def test_unipotent_cases():
    lower = fe_coefficient(FeCase.build(FeTag.U_LOWER, (2,)))
    assert lower == TorusRational(e(-2, coeff=-1) * TorusLaurent.binomial((-2,), 1, 2), TorusLaurent.binomial((-2,)))
    assert fe_coefficient(FeCase.build("U-psi", (2,))) == TorusRational.one(1)


def test_torus_cases():
    nonsplit = fe_coefficient(FeCase.build(FeTag.T_NONSPLIT_UNRAM, (2,)))
    assert nonsplit == TorusRational(TorusLaurent.binomial((-2,), 1, 2), TorusLaurent.binomial((2,), 1, 2))
    assert fe_coefficient(FeCase.build(FeTag.T_NONSPLIT_RAM, (2,))) == TorusRational(e(-2))
    assert fe_coefficient(FeCase.build(FeTag.T_SPLIT_RAM, (2,), {"m": 2})) == TorusRational(e(-4))


def test_split_unramified_factors():
    """With zero shifts the coefficient is a product over the two divisors"""
    case = FeCase.build(FeTag.T_SPLIT_UNRAM, (2, 2), {"v_d": [2, 0], "v_d_prime": [0, 2], "shift_d": 0, "shift_d_prime": 0})
    expected = TorusRational(
        TorusLaurent.binomial((-2, 0), 1, 2) * TorusLaurent.binomial((0, -2), 1, 2),
        TorusLaurent.binomial((2, 0)) * TorusLaurent.binomial((0, 2)),
    )
    assert fe_coefficient(case) == expected


def test_normalizer_cases():
    split = fe_coefficient(FeCase.build(FeTag.N_SPLIT_INT_UNRAM, (2,)))
    ratio = TorusRational(TorusLaurent.binomial((-1,), 1, 1), TorusLaurent.binomial((1,), 1, 1))
    assert split == ratio * ratio
    nonintegral = fe_coefficient(FeCase.build(FeTag.N_NONINTEGRAL, (2,), {"ratio": -1}))
    assert nonintegral == TorusRational(TorusLaurent.binomial((-1,), 1, 1) * -1, TorusLaurent.binomial((1,), 1, 1))


def test_case_parameter_checks():
    with pytest.raises(PathError):
        fe_coefficient(FeCase.build(FeTag.T_SPLIT_RAM, (2,)))
    with pytest.raises(PathError):
        fe_coefficient(FeCase.build(FeTag.T_SPLIT_RAM, (2,), {"m": 0}))
    bad_sum = {"v_d": [2, 0], "v_d_prime": [0, 0], "shift_d": 0, "shift_d_prime": 0}
    with pytest.raises(PathError):
        fe_coefficient(FeCase.build(FeTag.T_SPLIT_UNRAM, (2, 2), bad_sum))
    with pytest.raises(PathError):
        fe_coefficient(FeCase.build(FeTag.N_SPLIT_INT_UNRAM, (1,)))


def test_sl2_sl3_path():
    path = get_path("sl2-sl3")
    assert path.word == (0, 1, 0)
    assert path_element(path).length == 3
    assert backtick_b(path) == ambient_path_display([2, 2], [[2, 0], [0, 2]])
    assert inductionstep_holds(path) == [True]


def test_backtick_adds_flipped_prefactor():
    path = get_path("sp2-sp4")
    w = path_element(path)
    prefactor = TorusLaurent.one(2)
    positive = set(path.ambient.positive_coroots)
    for a in path.ambient.positive_coroots:
        if w.act(a) not in positive:
            prefactor = prefactor * e(*a, coeff=-1)
    assert backtick_b(path) == compose_path(path) * prefactor


def test_path_without_restriction():
    path = get_path("sp2-sp4")
    with pytest.raises(PathError):
        restricted_backtick_b(path)
    with pytest.raises(PathError):
        inductionstep_holds(path)


def test_non_reduced_path():
    doc = {"ambient": A2, "steps": [{"root_index": 0, "case": "U-lower"}, {"root_index": 0, "case": "U-raise"}]}
    path = parse_path(doc)
    with pytest.raises(PathError):
        compose_path(path)


def test_path_document_errors():
    with pytest.raises(DatumParseError):
        parse_path({"ambient": A2, "steps": [{"root_index": 2, "case": "U-lower"}]})
    with pytest.raises(DatumParseError):
        parse_path({"ambient": A2, "steps": [{"root_index": 0, "case": "U-sideways"}]})
    with pytest.raises(DatumParseError):
        parse_path({"ambient": A2, "steps": [{"root_index": 0, "case": "T-split-unram", "params": {"v_d": [1, 0, 0]}}]})
