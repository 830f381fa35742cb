"""
Tests for beta, B_w, Omega, the constant c, L-values, volumes and Plancherel pairings
"""
from fractions import Fraction

import pytest

from sphericalis.engine import (
    beta,
    bw,
    bw_statement,
    cocycle_holds,
    consistency_holds,
    constant_c,
    eisenstein_factors,
    finite_field_volume,
    hecke_basis_matrix,
    lfactors,
    lfull,
    lhalf,
    macdonald_form,
    omega_at_delta,
    omega_schur,
    omega_sum,
    p_poly,
    plancherel_pairing,
    prefactor_exponent,
    q_factor,
    q_factor_at_prime,
    tamagawa_volume,
    triangularity_violations,
    volume,
)
from sphericalis.exact_algebra import TFrac, TorusLaurent, TorusRational, TPoly
from sphericalis.exceptions import (
    ConsistencyError,
    NotAntidominant,
    SphericalisError,
    ThetaCapExceeded,
    TwistedDatumError,
)
from sphericalis.fixtures import get_fixture, list_fixtures
from sphericalis.models import RootKind
from sphericalis.root_systems import root_system_from_cartan, weyl_group
from sphericalis.spherical_data import ThetaTriple


def e(*v, coeff=1):
    return TorusLaurent.monomial(v, coeff)


def test_beta_group_a1(group_a1):
    """beta = (1 - e^a) / (1 - t^2 e^a)"""
    expected = TorusRational(TorusLaurent.binomial((2,)), TorusLaurent.binomial((2,), 1, 2))
    assert beta(group_a1) == expected


def test_bw_simple_reflection(group_a1):
    s = weyl_group(group_a1.root_system).from_word([0])
    value = bw(group_a1, s)
    expected = TorusRational(e(2, coeff=-1) * TorusLaurent.binomial((-2,), 1, 2), TorusLaurent.binomial((2,), 1, 2))
    assert value == expected
    identity = weyl_group(group_a1.root_system).from_word([])
    assert bw(group_a1, identity) == TorusRational.one(1)


def test_bw_statement_kinds():
    assert bw_statement(RootKind.U_PSI, (2,), (2,), []) == TorusRational(e(2, coeff=-1))
    with pytest.raises(ConsistencyError):
        bw_statement(RootKind.U_PSI, (2,), (2,), [ThetaTriple((2,), 1, 2)])
    with pytest.raises(ConsistencyError):
        bw_statement(RootKind.G, (2,), (2,), [ThetaTriple((2,), 1, 2)], rho_pX=(4,))
    with pytest.raises(ConsistencyError):
        bw_statement(RootKind.T_SPLIT, (2,), (2,), [ThetaTriple((2,), 1, 2)])


def test_cocycle_group_a2():
    d = get_fixture("group-a2").datum
    group = weyl_group(d.root_system)
    elements = group.elements
    assert all(cocycle_holds(d, a, b) for a in elements[:3] for b in elements)


def test_whittaker_casselman_shalika(whittaker_a1):
    """Omega / beta is t^{-<lambda, R>/2} times the Schur polynomial"""
    lam2 = (-2,)
    value = omega_schur(whittaker_a1, lam2).value
    assert value == TorusRational(TorusLaurent(1, {(-2,): 1, (0,): 1, (2,): 1}).scale_t(2))
    assert omega_sum(whittaker_a1, lam2).value == TorusRational(TorusLaurent(1, {(-2,): 1, (4,): -1}).scale_t(2))
    assert consistency_holds(whittaker_a1, lam2)


def test_omega_group_a1(group_a1):
    """Omega(0) = (1 + t^2) beta and it is 1 at the delta point"""
    assert omega_schur(group_a1, (0,)).value == TorusRational(TorusLaurent.constant(1, TPoly({0: 1, 2: 1})))
    assert omega_at_delta(group_a1, (0,)) == TFrac(1)
    assert macdonald_form(group_a1, (0,)) == omega_schur(group_a1, (0,)).value
    assert consistency_holds(group_a1, (-4,))


@pytest.mark.parametrize("lam2", [(0, 0, 0), (-2, 0, 0), (-2, -2, -2)])
def test_consistency_triple_product(lam2):
    d = get_fixture("triple-product").datum
    assert consistency_holds(d, lam2)


def test_triangularity(group_a1):
    assert triangularity_violations(group_a1, (-4,)) == []


def test_omega_requires_antidominant(group_a1):
    with pytest.raises(NotAntidominant):
        omega_sum(group_a1, (2,))
    with pytest.raises(NotAntidominant):
        omega_schur(group_a1, (2,))


def test_prefactor_exponent(group_a1, whittaker_a1):
    assert prefactor_exponent(group_a1, (-2,)) == 2
    assert prefactor_exponent(whittaker_a1, (-1,)) == 1
    assert prefactor_exponent(group_a1, (0,)) == 0


def test_theta_cap(settings_env):
    settings_env(theta_cap=1)
    d = get_fixture("triple-product").datum
    with pytest.raises(ThetaCapExceeded):
        omega_schur(d, (0, 0, 0))


def test_constant_and_lvalues(group_a1):
    c = constant_c(group_a1)
    assert c == TFrac(TPoly({0: 1, 2: 1}))
    assert lhalf(group_a1) == beta(group_a1) * c
    assert lfull(group_a1) == beta(group_a1) * beta(group_a1).reflect() * c * c
    factorization = lfactors(group_a1)
    assert factorization.expand(1) == lfull(group_a1)
    assert len(factorization.multiset()) == 4
    assert lfactors(group_a1, full=False).expand(1) == lhalf(group_a1)


def test_constant_undefined_for_twisted(whittaker_a1):
    with pytest.raises(TwistedDatumError):
        constant_c(whittaker_a1)
    with pytest.raises(TwistedDatumError):
        plancherel_pairing(whittaker_a1, (0,), (0,))


def test_hecke_basis(group_a1):
    """Rows hold the orbit-sum coefficients of c t^{-k} P_lambda"""
    rows = hecke_basis_matrix(group_a1, [(0,), (-2,)])
    assert rows[0] == [TPoly({0: 1, 2: 1}), TPoly()]
    assert rows[1] == [TPoly({0: 1, 2: -1}), TPoly.const(1)]
    assert p_poly(group_a1, (0,)) == TorusRational.one(1)


def test_q_factor_and_volumes(group_a1):
    assert q_factor([1]) == TFrac(TPoly({0: 1, 2: 1}))
    assert q_factor_at_prime([1], 3) == Fraction(4, 3)
    assert volume(group_a1) == TFrac(TPoly({0: 1, 2: 1}))
    assert tamagawa_volume(group_a1) == TFrac(TPoly({0: 1, 4: -1}))


@pytest.mark.parametrize("cartan, pairings, p", [([[2]], [1], 2), ([[2]], [1], 3), ([[2, -1], [-1, 2]], [1, 1, 2], 2)])
def test_finite_field_volume_matches_q(cartan, pairings, p):
    """|G(F_p)| / |B w0 B| agrees with Q at q = p"""
    assert finite_field_volume(cartan, p) == q_factor_at_prime(pairings, p)


def test_finite_field_volume_range():
    with pytest.raises(SphericalisError):
        finite_field_volume([[2, -1], [-2, 2]], 2)


def test_plancherel_group_a1(group_a1):
    """<P_0, P_0> = c |W| and P_0, P_{-a} are orthogonal"""
    value = plancherel_pairing(group_a1, (0,), (0,), prec=6)
    assert value.series == TPoly({0: 2, 2: 2})
    assert value.exact == TFrac(TPoly({0: 2, 2: 2}))
    assert plancherel_pairing(group_a1, (-2,), (0,), prec=8).series.is_zero()
    with pytest.raises(ValueError):
        plancherel_pairing(group_a1, (0,), (0,), prec=0)


def test_plancherel_off_diagonal_group_a1(group_a1):
    assert plancherel_pairing(group_a1, (-2,), (-4,), prec=24).series.is_zero()
    assert plancherel_pairing(group_a1, (-4,), (-2,), prec=24).series.is_zero()


@pytest.mark.parametrize("name", [n for n in list_fixtures() if get_fixture(n).datum.has_constant])
def test_plancherel_orthogonal_to_unit(name):
    """P_lambda pairs to zero with P_0 for the first nonzero grid points"""
    fixture = get_fixture(name)
    d = fixture.datum
    zero = (0,) * d.rank
    points = [lam2 for lam2 in fixture.grid if any(lam2)][:3]
    assert points
    for lam2 in points:
        value = plancherel_pairing(d, lam2, zero, prec=24)
        assert value.exact.is_zero(), lam2
        assert value.series.is_zero(), lam2


def test_eisenstein_a1():
    ambient = root_system_from_cartan([[2]])
    group = weyl_group(ambient)
    s = group.from_word([0])
    factors = eisenstein_factors(ambient, s)
    assert factors.j == TorusRational(TorusLaurent.binomial((2,), 1, 2), TorusLaurent.binomial((2,)))
    assert factors.j_tilde == TorusRational.one(1)
    assert factors.fw_factor == TorusRational(TorusLaurent.binomial((2,), 1, 2), TorusLaurent.binomial((-2,), 1, 2))
    identity = eisenstein_factors(ambient, group.from_word([]))
    assert identity.j == TorusRational.one(1)
    assert identity.fw_tw_ratio == TorusRational.one(1)
