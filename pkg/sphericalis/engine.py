"""
Eigenfunction Engine
beta, the cocycle B_w, the sum and Schur forms of the unramified eigenfunction Omega,
the constant c, the local L-values L_X^{1/2} and L_X, the Hecke basis P_lambda, Q, volumes,
Plancherel constant terms and the Eisenstein local factors.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from sphericalis.config import get_settings
from sphericalis.cones import cone_contains
from sphericalis.exact_algebra import (
    TFrac,
    TorusLaurent,
    TorusRational,
    TPoly,
    ct_exact,
    ct_series_factored,
    exact_divide,
    t_power,
    weyl_substitute,
)
from sphericalis.exceptions import ConsistencyError, SphericalisError, ThetaCapExceeded, TwistedDatumError
from sphericalis.models import RootKind
from sphericalis.root_systems import (
    RootSystem,
    WeylElement,
    dot,
    mat_vec,
    orbit_sum,
    require_antidominant,
    schur_lowest,
    weyl_group,
)
from sphericalis.spherical_data import SphericalDatum, ThetaTriple, theta_flipped_by

logger = logging.getLogger(__name__)

Vec = Tuple[int, ...]


class OmegaForm(str, Enum):
    SUM = "sum"
    SCHUR = "schur"


@dataclass(frozen=True)
class OmegaValue:
    lambda2: Vec
    value: TorusRational
    form: OmegaForm


@dataclass(frozen=True)
class LFactor:
    sign: int
    r2: int
    coweight: Vec
    exponent: int  # +1 for a factor (1 - sign t^{r2} e^{coweight}), -1 for its inverse


@dataclass(frozen=True)
class LFactorization:
    factors: Tuple[LFactor, ...]
    constant: TFrac

    def expand(self, rank: int) -> TorusRational:
        num = TorusLaurent.constant(rank, self.constant.num)
        den = TorusLaurent.constant(rank, self.constant.den)
        for f in self.factors:
            piece = TorusLaurent.binomial(f.coweight, f.sign, f.r2)
            if f.exponent > 0:
                num = num * piece
            else:
                den = den * piece
        return TorusRational(num, den)

    def multiset(self, discard_zero: bool = True) -> Counter:
        """Factors as a multiset; zero-weight factors are zeta-factors and dropped by default"""
        return Counter(f for f in self.factors if not (discard_zero and not any(f.coweight)))


@dataclass(frozen=True)
class PlancherelValue:
    series: TPoly
    exact: Optional[TFrac]
    order: int


@dataclass(frozen=True)
class EisensteinFactors:
    j: TorusRational
    j_tilde: TorusRational
    fw_tw_ratio: TorusRational
    fw_factor: TorusRational


# --- BETA AND THE COCYCLE ---

def theta_factor(theta: ThetaTriple) -> TorusLaurent:
    return TorusLaurent.binomial(theta.coweight, theta.sign, theta.r2)


@lru_cache(maxsize=128)
def beta_parts(d: SphericalDatum) -> Tuple[TorusLaurent, TorusLaurent]:
    """Numerator prod (1 - e^{gamma}) over positive coroots and denominator prod over Theta+"""
    rs = d.root_system
    num = TorusLaurent.one(d.rank)
    for a in rs.positive_coroots:
        num = num * TorusLaurent.binomial(a)
    den = TorusLaurent.one(d.rank)
    for theta in d.theta_plus:
        den = den * theta_factor(theta)
    return num, den


def beta(d: SphericalDatum) -> TorusRational:
    num, den = beta_parts(d)
    return TorusRational(num, den)


def twist(d: SphericalDatum, f, w: WeylElement):
    """chi -> f(^w chi), i.e. exponents moved by w^{-1}"""
    return weyl_substitute(f, weyl_group(d.root_system).inverse(w).matrix)


def prefactor_exponent(d: SphericalDatum, lam2: Sequence[int]) -> int:
    """t-exponent of delta_{P(X)}^{-1/2}(x_lambda) = t^{-(lambda . R)/2}"""
    pairing = dot(lam2, d.rho_pX)
    if pairing % 2:
        raise SphericalisError(f"coweight {tuple(lam2)} gives a half-integral power of t in the prefactor")
    return -pairing // 2


@lru_cache(maxsize=4096)
def _bw_numerator(d: SphericalDatum, matrix) -> TorusLaurent:
    w = weyl_group(d.root_system).element(matrix)
    num, den = beta_parts(d)
    unit = exact_divide(num, twist(d, num, w))
    return unit * twist(d, den, w)


def bw(d: SphericalDatum, w: WeylElement, check: bool = True) -> TorusRational:
    """
    B_w = beta / (beta o w), returned over the common denominator prod_{Theta+}(1 - sigma t^{r2} e^{theta}).

    For a simple reflection the result is compared with the closed form of its root type.
    """
    _, den = beta_parts(d)
    value = TorusRational(_bw_numerator(d, w.matrix), den)
    if check and w.length == 1:
        i = w.reduced_word[0]
        root = d.spherical_roots[i]
        expected = bw_statement(
            root.kind,
            root.gamma,
            root.cogamma,
            theta_flipped_by(d, i),
            None if d.twisted else d.rho_pX,
        )
        if value != expected:
            logger.error(f"B_w mismatch for {d.name} at spherical root {i}")
            raise ConsistencyError(f"B_w for root {i} of {d.name} disagrees with the {root.kind.value} closed form")
    return value


def _expected_r2(coweight: Sequence[int], rho2: Optional[Sequence[int]]) -> Optional[int]:
    if rho2 is None:
        return None
    pairing = dot(coweight, rho2)
    if pairing % 2:
        raise ConsistencyError(f"<{tuple(coweight)}, rho_P(X)> is not a half-integer")
    return pairing // 2


def bw_statement(
    kind: RootKind,
    gamma: Sequence[int],
    cogamma: Sequence[int],
    belonging: Sequence[ThetaTriple],
    rho_pX: Optional[Sequence[int]] = None,
) -> TorusRational:
    """
    Closed form of B_{w_gamma} by root type. The exponents come from rho_pX when it is given
    (and must agree with the triples); otherwise the triples' own r2 are used.
    """
    rank = len(cogamma)
    gamma = tuple(gamma)
    cogamma = tuple(cogamma)
    lead = TorusLaurent.monomial(cogamma, -1)
    reflect = [[int(i == j) - Fraction(cogamma[i] * gamma[j], 2) for j in range(rank)] for i in range(rank)]
    if any(x.denominator != 1 for row in reflect for x in row):
        raise ConsistencyError(f"reflection for gamma = {gamma} is not integral on the doubled lattice")
    reflect = [[int(x) for x in row] for row in reflect]
    belonging = list(belonging)

    if kind == RootKind.U_PSI:
        if belonging:
            raise ConsistencyError("a (U,psi) root has no theta triples flipped by its reflection")
        return TorusRational(lead)

    if kind == RootKind.G:
        if len(belonging) != 1:
            raise ConsistencyError(f"type G expects one flipped triple, got {len(belonging)}")
        theta = belonging[0]
        if theta.coweight != cogamma or theta.sign != 1:
            raise ConsistencyError("type G expects the flipped triple (gamma-check, +, r)")
        r2 = _expected_r2(cogamma, rho_pX)
        if r2 is None:
            r2 = theta.r2
        elif r2 != theta.r2:
            raise ConsistencyError(f"type G exponent {theta.r2} differs from <gamma-check, rho_P(X)> = {r2}")
        neg = tuple(-x for x in cogamma)
        return TorusRational(lead * TorusLaurent.binomial(neg, 1, r2), TorusLaurent.binomial(cogamma, 1, r2))

    if kind not in (RootKind.T_SPLIT, RootKind.T_NONSPLIT):
        raise ConsistencyError(f"unknown root kind {kind}")
    if len(belonging) != 2:
        raise ConsistencyError(f"type T expects two flipped triples, got {len(belonging)}")

    def is_main(t: ThetaTriple) -> bool:
        if t.sign != 1 or dot(t.coweight, gamma) != 2:
            return False
        if kind == RootKind.T_NONSPLIT and tuple(2 * x for x in t.coweight) != cogamma:
            return False
        expected = _expected_r2(t.coweight, rho_pX)
        return expected is None or expected == t.r2

    candidates = [k for k, t in enumerate(belonging) if is_main(t)]
    if not candidates:
        raise ConsistencyError("no flipped triple has <theta, gamma> = 1 with the expected exponent")
    main = belonging[candidates[0]]
    partner = belonging[1 - candidates[0]]
    w_theta = mat_vec(reflect, main.coweight)
    if partner.coweight != tuple(-x for x in w_theta):
        raise ConsistencyError(f"partner {partner.coweight} is not -w_gamma({main.coweight})")
    partner_sign = 1 if kind == RootKind.T_SPLIT else -1
    if partner.sign != partner_sign:
        raise ConsistencyError(f"partner triple has sign {partner.sign}, expected {partner_sign}")
    r, r_prime = main.r2, partner.r2
    theta = main.coweight
    neg_theta = tuple(-x for x in theta)
    neg_w_theta = tuple(-x for x in w_theta)
    num = (
        lead
        * TorusLaurent.binomial(neg_theta, 1, r)
        * TorusLaurent.binomial(w_theta, partner_sign, r_prime)
    )
    den = TorusLaurent.binomial(theta, partner_sign, r_prime) * TorusLaurent.binomial(neg_w_theta, 1, r)
    return TorusRational(num, den)


def cocycle_holds(d: SphericalDatum, w1: WeylElement, w2: WeylElement) -> bool:
    """B_{w1 w2} = B_{w1}(^{w2} chi) B_{w2}(chi)"""
    group = weyl_group(d.root_system)
    lhs = bw(d, group.multiply(w1, w2), check=False)
    rhs = twist(d, bw(d, w1, check=False), w2) * bw(d, w2, check=False)
    return lhs == rhs


# --- OMEGA ---

def omega_sum(d: SphericalDatum, lam2: Sequence[int]) -> OmegaValue:
    """delta_{P(X)}^{-1/2}(x_lambda) sum_w B_w(chi) e^{w^{-1} lambda}"""
    lam2 = tuple(int(x) for x in lam2)
    rs = d.root_system
    require_antidominant(rs, lam2)
    group = weyl_group(rs)
    _, den = beta_parts(d)
    total = TorusLaurent.zero(d.rank)
    for w in group:
        inverse = group.inverse(w)
        total = total + _bw_numerator(d, w.matrix) * TorusLaurent.monomial(inverse.act(lam2))
    k = prefactor_exponent(d, lam2)
    return OmegaValue(lam2, TorusRational(total.scale_t(k), den), OmegaForm.SUM)


def _subset_shifts(d: SphericalDatum) -> Dict[Vec, TPoly]:
    """sum over subsets I of Theta+ of prod_{I}(-sigma t^{r2}), grouped by the shift sum_I theta"""
    cap = get_settings().theta_cap
    if len(d.theta_plus) > cap:
        raise ThetaCapExceeded(
            f"|Θ⁺| = {len(d.theta_plus)} exceeds the cap {cap}; use omega_sum for this datum"
        )
    shifts: Dict[Vec, TPoly] = {(0,) * d.rank: TPoly.const(1)}
    for theta in d.theta_plus:
        step = t_power(theta.r2, -theta.sign)
        updated = dict(shifts)
        for v, c in shifts.items():
            w = tuple(a + b for a, b in zip(v, theta.coweight))
            updated[w] = updated[w] + c * step if w in updated else c * step
        shifts = {v: c for v, c in updated.items() if not c.is_zero()}
    return shifts


def omega_schur_laurent(d: SphericalDatum, lam2: Sequence[int]) -> TorusLaurent:
    """The Laurent part sum_I prod(-sigma t^{r2}) s_{lambda + sum_I theta} times the prefactor"""
    lam2 = tuple(int(x) for x in lam2)
    rs = d.root_system
    require_antidominant(rs, lam2)
    total = TorusLaurent.zero(d.rank)
    shifts = _subset_shifts(d)
    logger.debug(f"omega_schur for {d.name}: {len(shifts)} distinct theta shifts")
    for v, coeff in shifts.items():
        index = tuple(a + b for a, b in zip(lam2, v))
        total = total + schur_lowest(rs, index) * coeff
    return total.scale_t(prefactor_exponent(d, lam2))


def omega_schur(d: SphericalDatum, lam2: Sequence[int]) -> OmegaValue:
    """Omega / beta as a Laurent polynomial times a power of t"""
    lam2 = tuple(int(x) for x in lam2)
    return OmegaValue(lam2, TorusRational(omega_schur_laurent(d, lam2)), OmegaForm.SCHUR)


def consistency_holds(d: SphericalDatum, lam2: Sequence[int]) -> bool:
    """omega_sum = beta * omega_schur by cross-multiplication"""
    return omega_sum(d, lam2).value == beta(d) * omega_schur(d, lam2).value


def omega_at_delta(d: SphericalDatum, lam2: Sequence[int]) -> TFrac:
    """Omega at the delta_{P(X)}^{1/2} point, evaluated on the pole-free Schur side"""
    laurent = omega_schur_laurent(d, lam2)
    return beta(d).at_delta(d.rho_pX) * TFrac(laurent.at_delta(d.rho_pX))


def triangularity_violations(d: SphericalDatum, lam2: Sequence[int]) -> List[Vec]:
    """Exponents of omega_schur minus the orbit sum of e^{lambda} lying outside lambda + cone(colors)"""
    lam2 = tuple(int(x) for x in lam2)
    laurent = omega_schur_laurent(d, lam2).scale_t(-prefactor_exponent(d, lam2))
    rest = laurent - orbit_sum(d.root_system, lam2)
    colors = list(d.colors)
    return [mu for mu in rest.exponents() if not cone_contains(colors, [a - b for a, b in zip(mu, lam2)])]


# --- PRINTED SHAPES ---

def macdonald_form(d: SphericalDatum, lam2: Sequence[int]) -> TorusRational:
    """prefactor * sum_w (e^{lambda} / beta)(^w chi); equals Omega / beta"""
    lam2 = tuple(int(x) for x in lam2)
    group = weyl_group(d.root_system)
    num, den = beta_parts(d)
    base = TorusRational(den * TorusLaurent.monomial(lam2), num)
    total = None
    for w in group:
        term = twist(d, base, w)
        total = term if total is None else total + term
    return total * TorusRational(TorusLaurent.constant(d.rank, t_power(prefactor_exponent(d, lam2))))


def alternating_theta_form(d: SphericalDatum, lam2: Sequence[int]) -> TorusLaurent:
    """prefactor * sum_w sigma(w) (prod_{Theta+}(1 - sigma t^{r2} e^{theta}) e^{lambda - rho})(^w chi)"""
    lam2 = tuple(int(x) for x in lam2)
    rho = d.root_system.rho.rho_check
    _, den = beta_parts(d)
    base = den * TorusLaurent.monomial(tuple(a - b for a, b in zip(lam2, rho)))
    total = TorusLaurent.zero(d.rank)
    for w in weyl_group(d.root_system):
        total = total + twist(d, base, w) * w.sign
    return total.scale_t(prefactor_exponent(d, lam2))


# --- CONSTANT c AND L-VALUES ---

def _require_constant(d: SphericalDatum) -> None:
    if d.twisted:
        raise TwistedDatumError(f"{d.name} is twisted: the constant c is not defined")
    if not d.affine:
        raise TwistedDatumError(f"{d.name} is not affine: the constant c is not defined")


@lru_cache(maxsize=128)
def constant_c(d: SphericalDatum) -> TFrac:
    """c = beta(delta_{P(X)}^{1/2})^{-1}"""
    _require_constant(d)
    num, den = beta_parts(d)
    at_num = num.at_delta(d.rho_pX)
    at_den = den.at_delta(d.rho_pX)
    if at_num.is_zero():
        offending = [a for a in d.root_system.positive_coroots if TorusLaurent.binomial(a).at_delta(d.rho_pX).is_zero()]
        raise SphericalisError(f"beta vanishes at the delta point through the factors {offending}")
    if at_den.is_zero():
        offending = [t.coweight for t in d.theta_plus if theta_factor(t).at_delta(d.rho_pX).is_zero()]
        raise SphericalisError(f"beta has a pole at the delta point through the factors {offending}")
    return TFrac(at_den, at_num)


def lhalf(d: SphericalDatum) -> TorusRational:
    """L_X^{1/2} = c beta"""
    return beta(d) * constant_c(d)


def lfull(d: SphericalDatum) -> TorusRational:
    """L_X = c^2 beta(chi) beta(chi^{-1})"""
    b = beta(d)
    return b * b.reflect() * (constant_c(d) * constant_c(d))


def lfactors(d: SphericalDatum, full: bool = True) -> LFactorization:
    """Factor multiset of L_X (or of L_X^{1/2} when full is False)"""
    c = constant_c(d)
    factors: List[LFactor] = []
    signs = (1, -1) if full else (1,)
    for s in signs:
        for a in d.root_system.positive_coroots:
            factors.append(LFactor(1, 0, tuple(s * x for x in a), 1))
        for t in d.theta_plus:
            factors.append(LFactor(t.sign, t.r2, tuple(s * x for x in t.coweight), -1))
    return LFactorization(tuple(factors), c * c if full else c)


def p_poly(d: SphericalDatum, lam2: Sequence[int]) -> TorusRational:
    """P_lambda = Omega / L_X^{1/2} = omega_schur / c"""
    c = constant_c(d)
    laurent = omega_schur_laurent(d, lam2)
    return TorusRational(laurent * c.den, TorusLaurent.constant(d.rank, c.num))


def hecke_basis_matrix(d: SphericalDatum, grid: Sequence[Sequence[int]]) -> List[List[TPoly]]:
    """
    Row lambda holds the coefficients of the orbit sums m_mu, mu in grid, in c t^{-k} P_lambda
    (omega_schur without its prefactor). Ordered along the color cone the matrix is
    unitriangular.
    """
    grid = [tuple(int(x) for x in g) for g in grid]
    rows = []
    for lam in grid:
        laurent = omega_schur_laurent(d, lam).scale_t(-prefactor_exponent(d, lam))
        rows.append([laurent.coefficient(mu) for mu in grid])
    return rows


# --- Q, VOLUMES ---

def q_factor(rho_pairings: Sequence[int]) -> TFrac:
    """Q = prod (1 - q^{-1-<a, rho>}) / (1 - q^{-<a, rho>}) over ambient positive coroots"""
    result = TFrac(1)
    for h in rho_pairings:
        result = result * TFrac(TPoly.const(1) - t_power(2 + 2 * h), TPoly.const(1) - t_power(2 * h))
    return result


def volume(d: SphericalDatum) -> TFrac:
    """Measure of X(o): Q c^{-1}"""
    return q_factor(d.ambient_rho_pairings) / constant_c(d)


def tamagawa_volume(d: SphericalDatum) -> TFrac:
    return TFrac(TPoly.const(1) - t_power(2)) ** d.rank * volume(d)


def q_factor_at_prime(rho_pairings: Sequence[int], p: int) -> Fraction:
    """q_factor at t^2 = 1/p"""
    result = Fraction(1)
    for h in rho_pairings:
        result *= (1 - Fraction(1, p ** (1 + h))) / (1 - Fraction(1, p ** h))
    return result


def _is_type_a(cartan: Sequence[Sequence[int]]) -> bool:
    n = len(cartan)
    for i in range(n):
        for j in range(n):
            expected = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
            if cartan[i][j] != expected:
                return False
    return True


def _det_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0] % p
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det_mod(minor, p)
    return total % p


def finite_field_volume(cartan: Sequence[Sequence[int]], p: int) -> Fraction:
    """
    |GL_n(F_p)| / |B w_0 B| by enumeration, for type A_{n-1} with n <= 3. A matrix lies in the
    big cell iff every lower-left k x k minor is invertible.
    """
    if not _is_type_a(cartan):
        raise SphericalisError("finite_field_volume counts type A ambients only")
    n = len(cartan) + 1
    if n > 3 or p not in (2, 3):
        raise SphericalisError(f"enumeration of GL_{n}(F_{p}) is out of range (n <= 3, p in 2, 3)")
    group = 0
    big_cell = 0
    for entries in product(range(p), repeat=n * n):
        g = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        if _det_mod(g, p) == 0:
            continue
        group += 1
        if all(_det_mod([row[:k] for row in g[n - k:]], p) for k in range(1, n)):
            big_cell += 1
    logger.debug(f"GL_{n}(F_{p}): {group} elements, {big_cell} in the big cell")
    return Fraction(group, big_cell)


# --- PLANCHEREL ---

def plancherel_pairing(d: SphericalDatum, lam2: Sequence[int], mu2: Sequence[int], prec: Optional[int] = None) -> PlancherelValue:
    """
    Constant term of P_lambda(chi) P_mu(chi^{-1}) L_X(chi) as a t-series to order prec.
    For mu = 0 the exact value c |W_X| prefactor CT[beta(chi^{-1}) e^{lambda}] is also returned.
    """
    prec = get_settings().prec if prec is None else prec
    if prec < 1:
        raise ValueError("prec must be at least 1")
    _require_constant(d)
    lam2 = tuple(int(x) for x in lam2)
    mu2 = tuple(int(x) for x in mu2)
    num, _ = beta_parts(d)
    a_lam = omega_schur_laurent(d, lam2)
    a_mu = omega_schur_laurent(d, mu2).reflect()
    numerator = a_lam * a_mu * num * num.reflect()
    factors = [(t.sign, t.r2, t.coweight) for t in d.theta_plus]
    factors += [(t.sign, t.r2, tuple(-x for x in t.coweight)) for t in d.theta_plus]
    series = ct_series_factored(numerator, factors, prec)

    exact = None
    if not any(mu2):
        pointed = [(t.sign, t.r2, tuple(-x for x in t.coweight)) for t in d.theta_plus]
        ct = ct_exact(TorusLaurent.monomial(lam2) * num.reflect(), pointed)
        order = len(weyl_group(d.root_system))
        exact = constant_c(d) * TFrac(ct.shift(prefactor_exponent(d, lam2))) * order
    logger.info(f"Plancherel pairing for {d.name} at {lam2}, {mu2} computed to order {prec}")
    return PlancherelValue(series=series, exact=exact, order=prec)


# --- EISENSTEIN FACTORS ---

def eisenstein_factors(ambient: RootSystem, w: WeylElement) -> EisensteinFactors:
    """j_w, j-tilde_w, the F_w / T_w ratio and the F_w eigenvalue on the spherical vector"""
    rank = ambient.lattice_rank
    positive = set(ambient.positive_coroots)
    one = TorusLaurent.one(rank)
    j_num, j_den, jt_num, jt_den = one, one, one, one
    ratio_num, ratio_den, fw_num, fw_den = one, one, one, one
    for a in ambient.positive_coroots:
        neg = tuple(-x for x in a)
        top = TorusLaurent.binomial(a, 1, 2)
        bottom = TorusLaurent.binomial(a)
        if w.act(a) in positive:
            jt_num, jt_den = jt_num * top, jt_den * bottom
        else:
            j_num, j_den = j_num * top, j_den * bottom
            ratio_num = ratio_num * bottom
            ratio_den = ratio_den * TorusLaurent.binomial(neg, 1, 2)
            fw_num = fw_num * top
            fw_den = fw_den * TorusLaurent.binomial(neg, 1, 2)
    return EisensteinFactors(
        j=TorusRational(j_num, j_den),
        j_tilde=TorusRational(jt_num, jt_den),
        fw_tw_ratio=TorusRational(ratio_num, ratio_den),
        fw_factor=TorusRational(fw_num, fw_den),
    )
