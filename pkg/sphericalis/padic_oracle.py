"""
P-adic Oracle
Brute-force checks of the rank-one functional equations: locally constant functions on k and
k^2 at a small prime, finite Fourier transforms with numpy, Tate zeta integrals, Gauss sums
and the quadric pairings of the non-split and non-integral cases.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy.functions.combinatorial.numbers import legendre_symbol as _sympy_legendre

from sphericalis.config import get_settings
from sphericalis.exact_algebra import TorusLaurent, TorusRational
from sphericalis.exceptions import OracleError
from sphericalis.models import FeTag, OracleReport
from sphericalis.rank_one import FeCase, fe_coefficient

logger = logging.getLogger(__name__)

Number = Union[Fraction, complex, float]

# Cases the oracle can integrate directly
ORACLE_TAGS = (
    FeTag.U_LOWER,
    FeTag.U_RAISE,
    FeTag.U_PSI,
    FeTag.T_SPLIT_UNRAM,
    FeTag.T_SPLIT_RAM,
    FeTag.T_NONSPLIT_UNRAM,
    FeTag.T_NONSPLIT_RAM,
    FeTag.N_NONINTEGRAL,
)

DEFAULT_SAMPLES = (Fraction(1, 2), Fraction(2, 3), Fraction(5, 4))

_ZERO = 1e-12


def _check_prime(p: int) -> None:
    if p < 3 or not sympy.isprime(p):
        raise OracleError(f"the oracle works at odd primes, got p = {p}")


def _check_grid(p: int, dim: int, M: int, N: int) -> None:
    _check_prime(p)
    if M < 0 or N < 0:
        raise OracleError(f"support and smoothness exponents must be >= 0, got M = {M}, N = {N}")
    points = p ** ((M + N) * dim)
    cap = get_settings().grid_cap
    if points > cap:
        raise OracleError(f"grid of {points} points exceeds the cap {cap}; lower M or N")
    if points > cap // 2:
        logger.warning(f"Oracle grid of {points} points is close to the cap {cap}")


def default_levels(p: int) -> Tuple[int, int]:
    """
    (M, N) for the box battery at p: the battery only needs M, N >= 1, so the grid side is
    kept near 3^5 and the k^2 grid stays small at larger primes.
    """
    _check_prime(p)
    total = max(2, int(math.log(243, p) + 1e-9))
    M = max(1, (total - 1) // 2)
    return M, total - M


def _valuations(values: np.ndarray, p: int, cap: int) -> Tuple[np.ndarray, np.ndarray]:
    """p-adic valuation and unit residue mod p of an integer array (zero entries get cap, residue 0)"""
    a = np.array(values, dtype=np.int64)
    zero = a == 0
    a = np.where(zero, 1, a)
    v = np.zeros(a.shape, dtype=np.int64)
    while True:
        divisible = (a % p) == 0
        if not divisible.any():
            break
        a = np.where(divisible, a // p, a)
        v += divisible
    v[zero] = cap
    residue = np.where(zero, 0, a % p)
    return v, residue


def legendre_symbol(a: int, p: int) -> int:
    return int(_sympy_legendre(a, p))


def _legendre_table(p: int) -> np.ndarray:
    return np.array([0] + [legendre_symbol(r, p) for r in range(1, p)], dtype=np.int64)


# --- STEP FUNCTIONS ---

class SetKind(str, Enum):
    BALL = "ball"
    SHELL = "shell"
    COSET = "coset"


@dataclass(frozen=True)
class PAdicSet:
    """ball k = p^k o, shell k = p^k o^x, coset (a, k) = a + p^k o for an integer a"""

    kind: SetKind
    k: int
    center: int = 0

    def mask(self, p: int, M: int, N: int, index: np.ndarray) -> np.ndarray:
        top = self.k + 1 if self.kind == SetKind.SHELL else self.k
        if self.k < -M or top > N:
            raise OracleError(f"{self.kind.value} {self.k} needs a grid with M >= {-self.k} and N >= {top}")
        shifted = index - self.center * p ** M
        inside = (shifted % p ** (self.k + M)) == 0
        if self.kind == SetKind.SHELL:
            inside &= (index % p ** (self.k + 1 + M)) != 0
        return inside

    def __str__(self):
        if self.kind == SetKind.COSET:
            return f"{self.center}+p^{self.k}o"
        return f"{self.kind.value}({self.k})"


def ball(k: int) -> PAdicSet:
    return PAdicSet(SetKind.BALL, k)


def shell(k: int) -> PAdicSet:
    return PAdicSet(SetKind.SHELL, k)


def coset(center: int, k: int) -> PAdicSet:
    return PAdicSet(SetKind.COSET, k, center)


@dataclass
class PAdicStepFunction:
    """
    A function on k^dim supported in p^{-M} o^dim and constant on p^{N} o^dim cosets.
    values[j] (values[j, k] for dim 2) is the value at x = p^{-M} j, j mod p^{M+N}.
    """

    p: int
    dim: int
    M: int
    N: int
    values: np.ndarray

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise OracleError(f"step functions live on k or k^2, got dimension {self.dim}")
        _check_grid(self.p, self.dim, self.M, self.N)
        shape = (self.size,) * self.dim
        values = np.asarray(self.values, dtype=complex)
        if values.shape != shape:
            raise OracleError(f"values of shape {values.shape} do not fill the grid {shape}")
        self.values = values

    @property
    def size(self) -> int:
        return self.p ** (self.M + self.N)

    @property
    def cell_volume(self) -> float:
        return float(self.p) ** (-self.N * self.dim)

    @classmethod
    def from_callable(cls, p: int, dim: int, M: int, N: int, fn: Callable[..., np.ndarray]) -> "PAdicStepFunction":
        """fn receives the integer index arrays (one per coordinate) and returns the values"""
        _check_grid(p, dim, M, N)
        index = np.arange(p ** (M + N), dtype=np.int64)
        if dim == 1:
            values = fn(index)
        else:
            rows, cols = np.meshgrid(index, index, indexing="ij")
            values = fn(rows, cols)
        return cls(p, dim, M, N, np.broadcast_to(np.asarray(values, dtype=complex), (index.size,) * dim).copy())

    @classmethod
    def indicator(cls, p: int, M: int, N: int, box: Sequence[PAdicSet]) -> "PAdicStepFunction":
        """Indicator of a product of balls, shells and cosets"""
        dim = len(box)
        _check_grid(p, dim, M, N)
        index = np.arange(p ** (M + N), dtype=np.int64)
        masks = [s.mask(p, M, N, index) for s in box]
        if dim == 1:
            values = masks[0].astype(complex)
        else:
            values = np.outer(masks[0], masks[1]).astype(complex)
        return cls(p, dim, M, N, values)

    @classmethod
    def additive_character(cls, p: int, M: int, N: int, support: int) -> "PAdicStepFunction":
        """psi(x) 1_{p^{support} o}(x) on k"""
        def fn(index):
            phase = np.exp(2j * np.pi * (index % p ** M) / p ** M)
            return phase * ball(support).mask(p, M, N, index)

        return cls.from_callable(p, 1, M, N, fn)

    def dilate(self, k: int) -> "PAdicStepFunction":
        """x -> f(p^{-k} x); the value array is unchanged, only the exponents move"""
        if self.M - k < 0 or self.N + k < 0:
            raise OracleError(f"dilation by p^{k} leaves the representable range")
        return PAdicStepFunction(self.p, self.dim, self.M - k, self.N + k, self.values.copy())

    def is_exact(self) -> bool:
        v = self.values
        return bool(np.all(np.abs(v.imag) < 1e-9) and np.all(np.abs(v.real - np.round(v.real)) < 1e-9))

    def l2_norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.cell_volume)

    def at_origin(self) -> complex:
        return complex(self.values[(0,) * self.dim])


def fourier_k1(f: PAdicStepFunction) -> PAdicStepFunction:
    """f^(y) = integral of f(x) psi(xy) dx"""
    if f.dim != 1:
        raise OracleError("fourier_k1 takes a function on k")
    out = np.fft.ifft(f.values) * f.size * float(f.p) ** (-f.N)
    return PAdicStepFunction(f.p, 1, f.N, f.M, out)


def fourier_k2(f: PAdicStepFunction) -> PAdicStepFunction:
    """(Ff)(v, w) = integral of f(x, y) psi(-xw + yv) dx dy; support and smoothness swap"""
    if f.dim != 2:
        raise OracleError("fourier_k2 takes a function on k^2")
    partial = np.fft.fft(f.values, axis=0)
    full = np.fft.ifft(partial, axis=1) * f.size
    out = np.ascontiguousarray(full.T) * float(f.p) ** (-2 * f.N)
    return PAdicStepFunction(f.p, 2, f.N, f.M, out)


# --- LINE MEASURES ---

def _line_weights(p: int, M: int, N: int, c: complex, quadratic: bool = False, strict: bool = False,
                  origin_value: complex = 1.0) -> np.ndarray:
    """
    Weights of c^{val x} eta(x) dx on the grid cosets; eta is trivial or the quadratic
    character on units. The cell at 0 carries the geometric tail over val x >= N.
    """
    L = p ** (M + N)
    v, residue = _valuations(np.arange(L), p, cap=M + N)
    val = v - M
    weights = np.power(complex(c), val) * float(p) ** (-N)
    if quadratic:
        weights = weights * _legendre_table(p)[residue]
    if quadratic:
        weights[0] = 0.0
        return weights
    ratio = complex(c) / p
    if abs(1 - ratio) < _ZERO:
        raise OracleError(f"the line integral has a pole at c = {c}")
    if strict and abs(ratio) >= 1 and abs(origin_value) > _ZERO:
        raise OracleError(f"the line integral diverges at c = {c}")
    weights[0] = (1 - 1 / p) * ratio ** N / (1 - ratio)
    return weights


def _origin_weights(p: int, M: int, N: int) -> np.ndarray:
    """delta_0 on the grid: f(0, y) is the row of the zero coset"""
    weights = np.zeros(p ** (M + N), dtype=complex)
    weights[0] = 1.0
    return weights


def _product_pair(f: PAdicStepFunction, wx: np.ndarray, wy: np.ndarray) -> complex:
    return complex(wx @ f.values @ wy)


# --- TATE ---

@dataclass(frozen=True)
class TateCharacter:
    """chi = eta |.|^s on k^x with z = q^{-s}; eta is trivial or the quadratic character of conductor p"""

    p: int
    z: complex
    quadratic: bool = False
    eta_pi: int = 1

    @property
    def conductor(self) -> int:
        return 1 if self.quadratic else 0

    @property
    def at_uniformizer(self) -> complex:
        return complex(self.z) * (self.eta_pi if self.quadratic else 1)

    def dual(self) -> "TateCharacter":
        """chi^{-1} |.|"""
        return TateCharacter(self.p, 1 / (self.p * complex(self.z)), self.quadratic, self.eta_pi)

    def eta_minus_one(self) -> int:
        return legendre_symbol(self.p - 1, self.p) if self.quadratic else 1


def gauss_sum(chi: TateCharacter) -> complex:
    """tau(chi) = sum over units e mod p of chi(e / p) psi(e / p)"""
    if not chi.quadratic:
        raise OracleError("the Gauss sum is taken for a ramified character")
    p = chi.p
    total = sum(legendre_symbol(e, p) * cmath.exp(2j * math.pi * e / p) for e in range(1, p))
    return total / chi.at_uniformizer


def tate_factor(chi: TateCharacter) -> complex:
    """Proportionality constant of the Fourier transform of chi d^x x against chi^{-1}|x| d^x x"""
    if chi.quadratic:
        return gauss_sum(chi) / chi.p
    z = complex(chi.z)
    if abs(1 - z) < _ZERO:
        raise OracleError("the Tate factor has a pole at chi(p) = 1")
    return (1 - 1 / (chi.p * z)) / (1 - z)


def tate_pair(chi: TateCharacter, f: PAdicStepFunction) -> complex:
    """integral of f(x) chi(x) d^x x with vol(o^x) = 1"""
    if f.dim != 1:
        raise OracleError("tate_pair takes a function on k")
    if f.p != chi.p:
        raise OracleError(f"character at p = {chi.p} paired with a function at p = {f.p}")
    weights = _line_weights(f.p, f.M, f.N, chi.at_uniformizer * f.p, quadratic=chi.quadratic, strict=True,
                            origin_value=f.at_origin())
    return complex(weights @ f.values) / (1 - 1 / f.p)


def tate_battery(p: int, M: int, N: int) -> List[PAdicStepFunction]:
    if M < 1 or N < 1:
        raise OracleError("the test battery needs M >= 1 and N >= 1; increase M, N")
    sets = [ball(0), ball(1), ball(-1), shell(0), shell(-1), coset(1, 1), coset(2, 1)]
    if N >= 2:
        sets.append(coset(1, 2))
    functions = [PAdicStepFunction.indicator(p, M, N, [s]) for s in sets]
    functions.append(PAdicStepFunction.additive_character(p, M, N, -1))
    return functions


def tate_verify(chi: TateCharacter, M: int = 2, N: int = 3, tol: Optional[float] = None) -> OracleReport:
    """<chi d^x x, f^> = factor <chi^{-1}|x| d^x x, f> on a battery of step functions"""
    tol = get_settings().oracle_tol if tol is None else tol
    factor = tate_factor(chi)
    dual = chi.dual()
    worst = 0.0
    informative = 0
    for f in tate_battery(chi.p, M, N):
        lhs = tate_pair(chi, fourier_k1(f))
        rhs = factor * tate_pair(dual, f)
        scale = max(abs(lhs), abs(rhs))
        if scale < _ZERO:
            continue
        informative += 1
        worst = max(worst, abs(lhs - rhs) / scale)
    if not informative:
        raise OracleError("every test function paired to zero")
    label = "tate-ramified" if chi.quadratic else "tate-unramified"
    logger.info(f"Tate check {label} at p={chi.p}: max relative error {worst:.2e}")
    return OracleReport(case=label, p=chi.p, samples=[str(chi.z)], max_rel_err=float(worst), passed=bool(worst < tol))


# --- QUADRICS ---

class Quadric(str, Enum):
    NONSPLIT = "T-nonsplit"  # x^2 + kappa y^2, -kappa a non-square unit
    NONINTEGRAL = "N-nonintegral"  # x^2 + p y^2


def default_kappa(p: int) -> int:
    for kappa in range(1, p):
        if legendre_symbol((-kappa) % p, p) == -1:
            return kappa
    raise OracleError(f"no unit kappa with -kappa a non-square mod {p}")


@dataclass(frozen=True)
class ShellMeasureParams:
    """
    eta(Q(x, y)) dx dy with eta = eta_2 |.|^{s/2} and u = q^{-s/2}; u = None keeps u symbolic.
    For T-nonsplit, q^{s+1} = e^{-alpha}(chi), i.e. e^{alpha} = u^2 / q; the same relation is
    used for N-nonintegral with e^{alpha/2} = u q^{-1/2}.
    """

    quadric: Quadric
    p: int
    u: Optional[Number] = None
    ramified: bool = False
    kappa: Optional[int] = None

    def coefficient(self) -> int:
        _check_prime(self.p)
        if self.quadric == Quadric.NONINTEGRAL:
            if self.ramified:
                raise OracleError("the non-integral quadric is integrated against unramified characters only")
            return self.p
        kappa = default_kappa(self.p) if self.kappa is None else self.kappa
        if kappa % self.p == 0 or legendre_symbol((-kappa) % self.p, self.p) != -1:
            raise OracleError(f"kappa = {kappa} is not a unit with -kappa a non-square mod {self.p}")
        return kappa

    def dual(self) -> "ShellMeasureParams":
        """The reflected character: s -> -s - 2, i.e. u -> q / u"""
        if self.u is None:
            raise OracleError("the dual measure needs a numeric u")
        return ShellMeasureParams(self.quadric, self.p, self.p / self.u, self.ramified, self.kappa)


def _quadric_signs(params: ShellMeasureParams, Q: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    v, residue = _valuations(Q, params.p, cap=0)
    if params.ramified:
        return v, _legendre_table(params.p)[residue]
    return v, np.ones_like(v)


def _grouped(exponents: np.ndarray, weights: np.ndarray) -> Dict[int, complex]:
    if exponents.size == 0:
        return {}
    keys, inverse = np.unique(exponents, return_inverse=True)
    real = np.bincount(inverse, weights=weights.real, minlength=keys.size)
    imag = np.bincount(inverse, weights=weights.imag, minlength=keys.size)
    return {int(k): complex(r, i) for k, r, i in zip(keys, real, imag)}


def _exact_int(z: complex) -> Optional[int]:
    if abs(z.imag) > 1e-9 or abs(z.real - round(z.real)) > 1e-9:
        return None
    return int(round(z.real))


def _level_one_sum(params: ShellMeasureParams, b: int) -> Dict[int, int]:
    """integral over o^2 minus p^2, grouped by val Q: {val: signed cell count}"""
    p = params.p
    counts: Dict[int, int] = {}
    for x in range(p):
        for y in range(p):
            if x == 0 and y == 0:
                continue
            value = x * x + b * y * y
            v, unit = 0, value
            while unit % p == 0:
                unit //= p
                v += 1
            sign = legendre_symbol(unit % p, p) if params.ramified else 1
            counts[v] = counts.get(v, 0) + sign
    return counts


def dist_pair(params: ShellMeasureParams, f: PAdicStepFunction):
    """
    integral of f(x, y) eta(Q(x, y)) dx dy by (val x, val y)-shells: the cosets away from 0
    are summed directly, the cell at 0 is resolved by self-similarity Q(p z) = p^2 Q(z).
    Returns a sympy expression in u when params.u is None, a Fraction when u is a Fraction
    and f is integer valued, a complex otherwise.
    """
    if f.dim != 2:
        raise OracleError("dist_pair takes a function on k^2")
    if f.p != params.p:
        raise OracleError(f"measure at p = {params.p} paired with a function at p = {f.p}")
    b = params.coefficient()
    p, M, N = f.p, f.M, f.N
    index = np.arange(f.size, dtype=np.int64)
    rows, cols = np.meshgrid(index, index, indexing="ij")
    Q = rows * rows + b * cols * cols
    v, signs = _quadric_signs(params, Q)
    away = np.ones(Q.shape, dtype=bool)
    away[0, 0] = False
    terms = _grouped(v[away] - 2 * M, (f.values * signs)[away])
    origin = f.at_origin()
    level_one = _level_one_sum(params, b)

    exact = f.is_exact() and (params.u is None or isinstance(params.u, (Fraction, int)))
    if params.u is None and not exact:
        raise OracleError("the symbolic pairing needs an integer-valued f")
    if exact:
        scalar = Fraction if params.u is not None else sympy.Rational
        u = sympy.Symbol("u") if params.u is None else Fraction(params.u)
        coefficients = {e: _exact_int(c) for e, c in terms.items()}
        origin_value = _exact_int(origin)
    else:
        scalar = complex
        u = complex(params.u)
        coefficients = terms
        origin_value = origin

    q = scalar(p)
    cell = scalar(1) / q ** (2 * N)
    total = scalar(0)
    for e, c in coefficients.items():
        if c:
            total += c * cell * u ** e
    if origin_value:
        level = sum(count * u ** e for e, count in level_one.items()) / q ** 2
        denominator = 1 - u ** 2 / q ** 2
        if params.u is not None and abs(complex(denominator)) < _ZERO:
            raise OracleError(f"the quadric integral has a pole at u = {params.u}")
        total += origin_value * cell * u ** (2 * N) * level / denominator
    if params.u is None:
        return sympy.cancel(sympy.together(total))
    return total


def gauss_circle(p: int, kappa: Optional[int] = None) -> Fraction:
    """integral over o^x of eta_2(kappa + x^2) dx for the quadratic character of conductor p"""
    _check_prime(p)
    kappa = default_kappa(p) if kappa is None else kappa
    if kappa % p == 0 or legendre_symbol((-kappa) % p, p) != -1:
        raise OracleError(f"kappa = {kappa} is not a unit with -kappa a non-square mod {p}")
    return Fraction(sum(legendre_symbol((kappa + x * x) % p, p) for x in range(1, p)), p)


# --- THE (U, psi) MODEL ---

def _psi_pair(f: PAdicStepFunction, c: complex) -> complex:
    """
    integral of f(x, y) c^{val x} psi(-y/x) dx dy. The y-integral is the partial Fourier
    transform of f at -1/x, which vanishes once val x > N.
    """
    p, M, N, L = f.p, f.M, f.N, f.size
    partial = np.fft.ifft(f.values, axis=1) * L * float(p) ** (-N)
    total = 0j
    for v in range(-M, N + 1):
        digits = max(N - v, M + v, 1)
        modulus = p ** digits
        volume = float(p) ** (-v - digits)
        weight = complex(c) ** v * volume
        for unit in range(1, modulus):
            if unit % p == 0:
                continue
            j = (unit * p ** (v + M)) % L
            a = (-p ** (N - v) * pow(unit, -1, L)) % L
            total += weight * partial[j, a]
    return total


# --- CASE VERIFICATION ---

def box_battery(p: int, M: int, N: int) -> List[PAdicStepFunction]:
    """Indicators of products of balls, shells and cosets on k^2"""
    if M < 1 or N < 1:
        raise OracleError("the test battery needs M >= 1 and N >= 1; increase M, N")
    boxes = [
        (ball(0), ball(0)),
        (ball(1), ball(0)),
        (ball(0), ball(1)),
        (ball(-1), ball(0)),
        (ball(1), shell(0)),
        (shell(0), shell(0)),
        (shell(-1), ball(1)),
        (coset(1, 1), ball(0)),
        (ball(0), coset(1, 1)),
        (coset(1, 1), shell(0)),
        (shell(0), coset(2, 1)),
        (coset(1, 1), coset(1, 1)),
        (coset(1, 1), coset(2, 1)),
    ]
    return [PAdicStepFunction.indicator(p, M, N, box) for box in boxes]


def _laurent_value(f: TorusLaurent, t: float, h: Sequence[complex]) -> complex:
    total = 0j
    for v, coeff in f.items():
        term = complex(sum(float(a) * t ** d for d, a in coeff.items()))
        for x, k in zip(h, v):
            if k:
                term *= x ** k
        total += term
    return total


def _rational_value(f: TorusRational, t: float, h: Sequence[complex]) -> complex:
    den = _laurent_value(f.denominator, t, h)
    if abs(den) < _ZERO:
        raise OracleError("the functional-equation coefficient has a pole at the sample")
    return _laurent_value(f.numerator, t, h) / den


def _split_characters(u: Number) -> Tuple[complex, complex]:
    """chi(p) on the two divisor lines of the split torus for the sample u"""
    z = complex(u)
    return z, -z / 2


def expected_coefficient(tag: FeTag, p: int, u: Number) -> complex:
    """fe_coefficient of the tag at the point matching the oracle sample u"""
    t = p ** -0.5
    if tag == FeTag.T_SPLIT_UNRAM:
        z1, z2 = _split_characters(u)
        case = FeCase.build(tag, (2, 2), {"v_d": [2, 0], "v_d_prime": [0, 2], "shift_d": 0, "shift_d_prime": 0})
        return _rational_value(fe_coefficient(case), t, (cmath.sqrt(z1), cmath.sqrt(z2)))
    if tag == FeTag.T_SPLIT_RAM:
        # conductor one on both lines; each line is read at chi_i(p) q^{1/2}
        z1, z2 = _split_characters(u)
        case = FeCase.build(tag, (2, 2), {"m": 1})
        return _rational_value(fe_coefficient(case), t, (cmath.sqrt(z1 / t), cmath.sqrt(z2 / t)))
    params = {"ratio": 1} if tag == FeTag.N_NONINTEGRAL else {}
    case = FeCase.build(tag, (2,), params)
    # e^{alpha} = u^2 / q
    return _rational_value(fe_coefficient(case), t, (complex(u) * t,))


def _case_sides(tag: FeTag, u: Number, f: PAdicStepFunction, Ff: PAdicStepFunction,
                kappa: Optional[int]) -> Tuple[complex, complex]:
    """(<Delta_chi, Ff>, <Delta_{w chi}, f>) for the rank-one model of the tag"""
    p = f.p
    z = complex(u)
    Mf, Nf, MF, NF = f.M, f.N, Ff.M, Ff.N
    if tag == FeTag.U_LOWER:
        lhs = _product_pair(Ff, _line_weights(p, MF, NF, z * z), _line_weights(p, MF, NF, 1.0))
        rhs = _product_pair(f, _origin_weights(p, Mf, Nf), _line_weights(p, Mf, Nf, p / (z * z)))
        return lhs, rhs
    if tag == FeTag.U_RAISE:
        lhs = _product_pair(Ff, _origin_weights(p, MF, NF), _line_weights(p, MF, NF, z * z / p))
        rhs = _product_pair(f, _line_weights(p, Mf, Nf, p * p / (z * z)), _line_weights(p, Mf, Nf, 1.0))
        return lhs, rhs
    if tag == FeTag.U_PSI:
        return _psi_pair(Ff, z * z), _psi_pair(f, (p / z) ** 2)
    if tag in (FeTag.T_SPLIT_UNRAM, FeTag.T_SPLIT_RAM):
        quadratic = tag == FeTag.T_SPLIT_RAM
        chis = [TateCharacter(p, c, quadratic=quadratic) for c in _split_characters(u)]
        duals = [chi.dual() for chi in chis]

        def line(chi: TateCharacter, M: int, N: int) -> np.ndarray:
            return _line_weights(p, M, N, chi.at_uniformizer * p, quadratic=quadratic)

        norm = (1 - 1 / p) ** 2
        lhs = _product_pair(Ff, line(chis[0], MF, NF), line(chis[1], MF, NF))
        rhs = _product_pair(f, line(duals[1], Mf, Nf), line(duals[0], Mf, Nf))
        return lhs / norm, rhs / norm
    quadric = Quadric.NONINTEGRAL if tag == FeTag.N_NONINTEGRAL else Quadric.NONSPLIT
    params = ShellMeasureParams(quadric, p, z, ramified=tag == FeTag.T_NONSPLIT_RAM, kappa=kappa)
    return complex(dist_pair(params, Ff)), complex(dist_pair(params.dual(), f))


def verify_case(
    case: Union[FeCase, FeTag, str],
    p: int = 3,
    samples: Optional[Sequence[Number]] = None,
    tol: Optional[float] = None,
    M: Optional[int] = None,
    N: Optional[int] = None,
    kappa: Optional[int] = None,
) -> OracleReport:
    """
    Check <Delta_chi, F f> = b <Delta_{w chi}, f> on the box battery, b being fe_coefficient
    sampled at the same character.
    """
    tag = case.tag if isinstance(case, FeCase) else FeTag(case)
    if tag not in ORACLE_TAGS:
        raise OracleError(f"the oracle does not integrate case {tag.value}")
    tol = get_settings().oracle_tol if tol is None else tol
    samples = list(samples) if samples else list(DEFAULT_SAMPLES)
    if M is None or N is None:
        default_M, default_N = default_levels(p)
        M = default_M if M is None else M
        N = default_N if N is None else N
    battery = box_battery(p, M, N)
    transforms = [fourier_k2(f) for f in battery]
    worst = 0.0
    for u in samples:
        b = expected_coefficient(tag, p, u)
        informative = 0
        for f, Ff in zip(battery, transforms):
            lhs, rhs = _case_sides(tag, u, f, Ff, kappa)
            scale = max(abs(lhs), abs(b * rhs))
            if scale < _ZERO:
                continue
            informative += 1
            worst = max(worst, abs(lhs - b * rhs) / scale)
        if not informative:
            raise OracleError(f"every test function paired to zero at u = {u}; increase M, N")
        logger.debug(f"{tag.value} at u={u}: {informative} informative test functions")
    logger.info(f"Oracle {tag.value} at p={p}: max relative error {worst:.2e}")
    return OracleReport(case=tag.value, p=p, samples=[str(u) for u in samples], max_rel_err=float(worst), passed=bool(worst < tol))
