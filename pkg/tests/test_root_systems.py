"""
Tests for root systems, Weyl groups and Schur polynomials on the doubled lattice
"""
import pytest

from sphericalis.exact_algebra import TorusLaurent
from sphericalis.exceptions import CartanError, NotAntidominant, WeylCapExceeded
from sphericalis.root_systems import (
    block_cartan,
    build_root_system,
    flipped_positive_coroots,
    orbit_sum,
    require_antidominant,
    rho_identity_holds,
    root_system_from_cartan,
    schur_lowest,
    weyl_group,
)

A2 = [[2, -1], [-1, 2]]
B2 = [[2, -1], [-2, 2]]
G2 = [[2, -1], [-3, 2]]


@pytest.mark.parametrize("cartan, positives, order", [([[2]], 1, 2), (A2, 3, 6), (B2, 4, 8), (G2, 6, 12)])
def test_finite_types(cartan, positives, order):
    rs = root_system_from_cartan(cartan)
    assert len(rs.positive_coroots) == positives
    group = weyl_group(rs)
    assert len(group) == order
    assert group.longest().length == positives


def test_a1_rho(a1):
    """rho-check of A1 is half the coroot, i.e. 1 in doubled units"""
    assert a1.simple_coroots == ((2,),)
    assert a1.rho.rho_check == (1,)
    assert a1.rho.rho_pairings == (1,)


def test_block_cartan():
    assert block_cartan([[2]], A2) == [[2, 0, 0], [0, 2, -1], [0, -1, 2]]
    rs = root_system_from_cartan(block_cartan([[2]], [[2]]))
    assert len(weyl_group(rs)) == 4


def test_group_operations(a2):
    group = weyl_group(a2)
    s0 = group.from_word([0])
    s1 = group.from_word([1])
    assert group.multiply(s0, s0).length == 0
    assert group.from_word([0, 1, 0]) == group.from_word([1, 0, 1])
    w = group.multiply(s0, s1)
    assert group.multiply(w, group.inverse(w)).length == 0
    assert group.length(group.longest().matrix) == 3
    assert w.sign == 1 and s0.sign == -1


def test_rho_identity(a2):
    group = weyl_group(a2)
    assert all(rho_identity_holds(a2, w) for w in group)
    assert len(flipped_positive_coroots(a2, group.longest())) == 3


def test_cartan_errors():
    with pytest.raises(CartanError):
        build_root_system([(2,)], [(1,)])
    with pytest.raises(CartanError):
        build_root_system([(2, -1), (-1, 2)], [(2, 0)])
    with pytest.raises(CartanError):
        root_system_from_cartan([[2, -1], [0, 2]])


def test_affine_cartan_exceeds_cap(settings_env):
    """An affine Cartan matrix has infinitely many roots"""
    settings_env(weyl_cap=50)
    with pytest.raises(WeylCapExceeded):
        root_system_from_cartan([[2, -2], [-2, 2]])


def test_schur_a1(a1):
    """Keys are doubled: (-1,) is the fundamental coweight, (-2,) the negative coroot"""
    assert schur_lowest(a1, (-1,)) == TorusLaurent(1, {(-1,): 1, (1,): 1})
    assert schur_lowest(a1, (-2,)) == TorusLaurent(1, {(-2,): 1, (0,): 1, (2,): 1})
    assert schur_lowest(a1, (0,)) == TorusLaurent.one(1)


def test_schur_a2_adjoint(a2):
    """At minus the highest coroot: six coroots plus the zero weight twice"""
    s = schur_lowest(a2, (-2, -2))
    assert len(s) == 7
    assert s.coefficient((0, 0)).evaluate(1) == 2
    assert sum(c.evaluate(1) for _, c in s.items()) == 8


def test_orbit_sum(a2):
    assert len(orbit_sum(a2, (-2, -2))) == 6
    assert orbit_sum(a2, (0, 0)) == TorusLaurent.one(2)


def test_require_antidominant(a2):
    require_antidominant(a2, (-2, -2))
    with pytest.raises(NotAntidominant):
        require_antidominant(a2, (2, 0))
