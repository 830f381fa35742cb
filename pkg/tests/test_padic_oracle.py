"""
Tests for the brute-force p-adic oracle
"""
from fractions import Fraction

import numpy as np
import pytest

from sphericalis.exceptions import OracleError
from sphericalis.models import FeTag
from sphericalis.padic_oracle import (
    ORACLE_TAGS,
    PAdicStepFunction,
    Quadric,
    ShellMeasureParams,
    TateCharacter,
    ball,
    default_levels,
    dist_pair,
    expected_coefficient,
    fourier_k1,
    fourier_k2,
    gauss_circle,
    legendre_symbol,
    shell,
    tate_verify,
    verify_case,
)


def test_fourier_fixes_unit_ball():
    """The self-dual measure makes 1_o its own transform"""
    f = PAdicStepFunction.indicator(3, 1, 1, [ball(0)])
    assert np.allclose(fourier_k1(f).values, f.values)
    g = PAdicStepFunction.indicator(3, 1, 1, [ball(0), ball(0)])
    assert np.allclose(fourier_k2(g).values, g.values)


def test_fourier_preserves_norm():
    f = PAdicStepFunction.indicator(3, 1, 2, [shell(0)])
    assert abs(fourier_k1(f).l2_norm_squared() - f.l2_norm_squared()) < 1e-12


def test_step_function_checks():
    with pytest.raises(OracleError):
        PAdicStepFunction.indicator(2, 1, 1, [ball(0)])
    with pytest.raises(OracleError):
        PAdicStepFunction.indicator(3, 1, 1, [ball(2)])


def test_grid_cap(settings_env):
    settings_env(grid_cap=100)
    with pytest.raises(OracleError):
        PAdicStepFunction.indicator(3, 2, 3, [ball(0), ball(0)])


@pytest.mark.parametrize("p, expected", [(3, Fraction(-2, 3)), (5, Fraction(0)), (7, Fraction(-2, 7))])
def test_gauss_circle(p, expected):
    assert gauss_circle(p) == expected


def test_gauss_circle_bad_kappa():
    with pytest.raises(OracleError):
        gauss_circle(5, kappa=1)


def test_nonsplit_quadric_on_unit_square():
    """(1 - q^{-2}) / (1 - q^{-s-2}) at p = 3, q^{-s} = 1/9"""
    f = PAdicStepFunction.indicator(3, 1, 1, [ball(0), ball(0)])
    params = ShellMeasureParams(Quadric.NONSPLIT, 3, Fraction(1, 3))
    assert dist_pair(params, f) == Fraction(9, 10)


def test_ramified_quadric_kills_spherical_vector():
    f = PAdicStepFunction.indicator(3, 1, 1, [ball(0), ball(0)])
    params = ShellMeasureParams(Quadric.NONSPLIT, 3, 0.5, ramified=True)
    assert abs(dist_pair(params, f)) < 1e-12


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("quadratic", [False, True])
def test_tate_functional_equation(p, quadratic):
    report = tate_verify(TateCharacter(p, 0.5, quadratic=quadratic))
    assert report.passed is True
    assert isinstance(report.max_rel_err, float)


def test_legendre_symbol_is_int():
    assert legendre_symbol(2, 3) == -1
    assert type(legendre_symbol(4, 5)) is int


@pytest.mark.parametrize("p, levels", [(3, (2, 3)), (5, (1, 2)), (7, (1, 1))])
def test_default_levels(p, levels):
    assert default_levels(p) == levels


def test_expected_coefficient_psi():
    assert expected_coefficient(FeTag.U_PSI, 3, Fraction(1, 2)) == 1


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("tag", ORACLE_TAGS)
def test_verify_case(tag, p):
    report = verify_case(tag, p=p)
    assert report.passed, f"{tag.value}: {report.max_rel_err}"
    assert report.case == tag.value
    assert report.model_dump(by_alias=True)["pass"] is True


def test_split_ramified_coefficient():
    """e^{-a} at the conductor-one point is 1 / (q chi_1(p) chi_2(p))"""
    u = Fraction(1, 2)
    expected = 1 / (3 * 0.5 * -0.25)
    assert abs(expected_coefficient(FeTag.T_SPLIT_RAM, 3, u) - expected) < 1e-12


def test_verify_case_unsupported():
    with pytest.raises(OracleError):
        verify_case(FeTag.N_SPLIT_INT_UNRAM)
