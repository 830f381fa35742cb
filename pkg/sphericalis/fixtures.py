"""
Fixtures Catalog
Built-in spherical data with their published regression targets (B_w displays, Omega shapes,
L-factor multisets, |W_X|, c and volumes) and the orbit paths of the rank-one module.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sphericalis.config import get_settings
from sphericalis.engine import (
    LFactor,
    alternating_theta_form,
    bw,
    bw_statement,
    constant_c,
    consistency_holds,
    cocycle_holds,
    lfactors,
    macdonald_form,
    omega_at_delta,
    omega_sum,
    plancherel_pairing,
    triangularity_violations,
    volume,
)
from sphericalis.exact_algebra import TFrac, TorusLaurent, TorusRational, TPoly, t_power
from sphericalis.exceptions import SphericalisError, UnknownFixture
from sphericalis.models import CheckResult, CheckStatus, RegressionReport, RootKind
from sphericalis.rank_one import (
    OrbitPath,
    backtick_b,
    inductionstep_holds,
    load_path,
    restricted_backtick_b,
)
from sphericalis.root_systems import weyl_group
from sphericalis.spherical_data import SphericalDatum, ThetaTriple, load_datum, validate_datum

logger = logging.getLogger(__name__)

Vec = Tuple[int, ...]

# Citations
WHITTAKER = "Shintani-Casselman-Shalika formula for the unramified Whittaker function"
MACDONALD = "Macdonald's formula for zonal spherical functions"
SHALIKA = "unramified Shalika function, Sp_4-invariant product over short coroots"
TRIPLE = "triple product: three orbits, Θ = Θ⁺ ∪ -Θ⁺ with σ = + and r = 1/2"
GROSS_PRASAD = "SO_3 x SO_4 / SO_3: non-trivial weights of the tensor product, L(π1⊗π2,1/2) / L(π1,Ad,0)L(π2,Ad,0)"
GL_SL = "GL_n \\ SL_{n+1}: B_{w_γ} display for the T-split root"
TABLE = "table of examples, L-value up to ζ-factors"
RANK_ONE = "rank-one classification, B_{w_γ} display"
WEYL = "order of the Weyl group of the declared type of Φ_X"
MEASURE = "measure of X(o) = Q c^{-1}"


class TargetKind(str, Enum):
    BW_DISPLAY = "bw_display"
    OMEGA_EXACT = "omega_exact"
    OMEGA_RATIO = "omega_ratio"
    L_MULTISET = "l_multiset"
    WEYL_ORDER = "weyl_order"
    CONSTANT_C = "constant_c"
    VOLUME = "volume"
    PATH_B = "path_b"


class OmegaShape(str, Enum):
    CASSELMAN_SHALIKA = "casselman-shalika"
    MACDONALD = "macdonald"
    ALTERNATING = "alternating"


@dataclass(frozen=True)
class ExpectedTarget:
    """
    One printed quantity. value depends on kind: a TorusRational display, a shape, a
    Counter of LFactor, an int, a TFrac or the name of a path. index selects the
    spherical root for B_w displays and path coherence targets.
    """

    name: str
    kind: TargetKind
    citation: str
    value: Any = None
    index: int = 0


@dataclass(frozen=True)
class Fixture:
    name: str
    datum: SphericalDatum
    expected: Tuple[ExpectedTarget, ...]
    paths: Tuple[OrbitPath, ...]
    grid: Tuple[Vec, ...]


# --- PRINTED DISPLAYS ---

def _neg(v: Sequence[int]) -> Vec:
    return tuple(-x for x in v)


def psi_display(cogamma: Sequence[int]) -> TorusRational:
    """-e^{γ̌}"""
    return TorusRational(TorusLaurent.monomial(cogamma, -1))


def g_display(cogamma: Sequence[int], r2: int) -> TorusRational:
    """-e^{γ̌} (1 - q^{-r} e^{-γ̌}) / (1 - q^{-r} e^{γ̌})"""
    num = TorusLaurent.monomial(cogamma, -1) * TorusLaurent.binomial(_neg(cogamma), 1, r2)
    return TorusRational(num, TorusLaurent.binomial(cogamma, 1, r2))


def t_display(cogamma: Sequence[int], flipped: Sequence[Tuple[Sequence[int], int]]) -> TorusRational:
    """-e^{γ̌} prod over the flipped (θ̌, r2) of (1 - q^{-r} e^{-θ̌}) / (1 - q^{-r} e^{θ̌})"""
    num = TorusLaurent.monomial(cogamma, -1)
    den = TorusLaurent.one(len(cogamma))
    for theta, r2 in flipped:
        num = num * TorusLaurent.binomial(_neg(theta), 1, r2)
        den = den * TorusLaurent.binomial(theta, 1, r2)
    return TorusRational(num, den)


def ambient_path_display(top: Sequence[int], lowered: Sequence[Sequence[int]]) -> TorusRational:
    """-e^{top} prod over the listed coroots e of (1 - q^{-1} e^{-e}) / (1 - q^{-1} e^{e})"""
    return t_display(top, [(e, 2) for e in lowered])


def adjoint_multiset(coroots: Sequence[Sequence[int]], r2: int) -> Counter:
    """L(Ad, r) / L(Ad, 0) without ζ-factors"""
    factors = Counter()
    for a in coroots:
        for s in (1, -1):
            v = tuple(s * x for x in a)
            factors[LFactor(1, 0, v, 1)] += 1
            factors[LFactor(1, r2, v, -1)] += 1
    return factors


def tensor_multiset(weights: Sequence[Sequence[int]], coroots: Sequence[Sequence[int]], r2: int) -> Counter:
    """L(tensor, r) / L(Ad, 0) without ζ-factors; weights are taken with both signs"""
    factors = Counter()
    for a in coroots:
        for s in (1, -1):
            factors[LFactor(1, 0, tuple(s * x for x in a), 1)] += 1
    for w in weights:
        for s in (1, -1):
            factors[LFactor(1, r2, tuple(s * x for x in w), -1)] += 1
    return factors


def _poly(*coeffs: int) -> TPoly:
    """TPoly from coefficients of t^0, t^1, ..."""
    return TPoly({k: c for k, c in enumerate(coeffs)})


# --- CATALOG ---

def _whittaker_a1() -> List[ExpectedTarget]:
    return [
        ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, WHITTAKER, psi_display([2]), 0),
        ExpectedTarget("omega_shape", TargetKind.OMEGA_EXACT, WHITTAKER, OmegaShape.CASSELMAN_SHALIKA),
        ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 2),
    ]


def _whittaker_a2() -> List[ExpectedTarget]:
    return [
        ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, WHITTAKER, psi_display([2, 0]), 0),
        ExpectedTarget("bw_display_1", TargetKind.BW_DISPLAY, WHITTAKER, psi_display([0, 2]), 1),
        ExpectedTarget("omega_shape", TargetKind.OMEGA_EXACT, WHITTAKER, OmegaShape.CASSELMAN_SHALIKA),
        ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 6),
    ]


def _group_a1() -> List[ExpectedTarget]:
    return [
        ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, MACDONALD, g_display([2], 2), 0),
        ExpectedTarget("omega_shape", TargetKind.OMEGA_RATIO, MACDONALD, OmegaShape.MACDONALD),
        ExpectedTarget("l_multiset", TargetKind.L_MULTISET, f"{TABLE}: H \\ H x H, L(π,Ad,1)", adjoint_multiset([[2]], 2)),
        ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 2),
        ExpectedTarget("constant_c", TargetKind.CONSTANT_C, MACDONALD, TFrac(_poly(1, 0, 1))),
        ExpectedTarget("volume", TargetKind.VOLUME, MEASURE, TFrac(_poly(1, 0, 1))),
    ]


def _group_a2() -> List[ExpectedTarget]:
    c = TFrac(_poly(1, 0, 1) * _poly(1, 0, 1, 0, 1))
    return [
        ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, MACDONALD, g_display([2, 0], 2), 0),
        ExpectedTarget("bw_display_1", TargetKind.BW_DISPLAY, MACDONALD, g_display([0, 2], 2), 1),
        ExpectedTarget("omega_shape", TargetKind.OMEGA_RATIO, MACDONALD, OmegaShape.MACDONALD),
        ExpectedTarget(
            "l_multiset", TargetKind.L_MULTISET, f"{TABLE}: H \\ H x H, L(π,Ad,1)",
            adjoint_multiset([[2, 0], [0, 2], [2, 2]], 2),
        ),
        ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 6),
        ExpectedTarget("constant_c", TargetKind.CONSTANT_C, MACDONALD, c),
        ExpectedTarget("volume", TargetKind.VOLUME, MEASURE, c),
    ]


def _triple_product() -> List[ExpectedTarget]:
    weights = [[1, 1, -1], [1, -1, 1], [-1, 1, 1], [1, 1, 1]]
    return [
        ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, TRIPLE, t_display([2, 0, 0], [([1, 1, -1], 1), ([1, -1, 1], 1)]), 0),
        ExpectedTarget("bw_display_1", TargetKind.BW_DISPLAY, TRIPLE, t_display([0, 2, 0], [([1, 1, -1], 1), ([-1, 1, 1], 1)]), 1),
        ExpectedTarget("bw_display_2", TargetKind.BW_DISPLAY, TRIPLE, t_display([0, 0, 2], [([1, -1, 1], 1), ([-1, 1, 1], 1)]), 2),
        ExpectedTarget("omega_shape", TargetKind.OMEGA_RATIO, TRIPLE, OmegaShape.ALTERNATING),
        ExpectedTarget(
            "l_multiset", TargetKind.L_MULTISET, f"{TRIPLE}, L(π1⊗π2⊗π3,1/2)",
            tensor_multiset(weights, [[2, 0, 0], [0, 2, 0], [0, 0, 2]], 1),
        ),
        ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 8),
        ExpectedTarget("constant_c", TargetKind.CONSTANT_C, TRIPLE, TFrac(_poly(1, 0, 0, 0, -1))),
        ExpectedTarget("volume", TargetKind.VOLUME, MEASURE, TFrac(_poly(1, 0, 1) * _poly(1, 0, 1), _poly(1, 0, -1))),
    ]


def _gp_so3_so4() -> List[ExpectedTarget]:
    weights = [[2, 2, 0], [2, 0, 2], [2, 0, -2], [-2, 2, 0]]
    return [
        ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, GROSS_PRASAD, t_display([4, 0, 0], [([2, 0, 2], 1), ([2, 0, -2], 1)]), 0),
        ExpectedTarget("bw_display_1", TargetKind.BW_DISPLAY, GROSS_PRASAD, t_display([0, 2, -2], [([2, 0, -2], 1), ([-2, 2, 0], 1)]), 1),
        ExpectedTarget("bw_display_2", TargetKind.BW_DISPLAY, GROSS_PRASAD, t_display([0, 2, 2], [([2, 0, 2], 1), ([-2, 2, 0], 1)]), 2),
        ExpectedTarget(
            "l_multiset", TargetKind.L_MULTISET, GROSS_PRASAD,
            tensor_multiset(weights, [[4, 0, 0], [0, 2, -2], [0, 2, 2]], 1),
        ),
        ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 8),
        ExpectedTarget("constant_c", TargetKind.CONSTANT_C, GROSS_PRASAD, TFrac(_poly(1, 0, 0, 0, -1))),
    ]


def _shalika_gl4() -> List[ExpectedTarget]:
    return [
        ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, SHALIKA, g_display([2, -2], 2), 0),
        ExpectedTarget("bw_display_1", TargetKind.BW_DISPLAY, SHALIKA, psi_display([0, 4]), 1),
        ExpectedTarget("omega_shape", TargetKind.OMEGA_RATIO, SHALIKA, OmegaShape.ALTERNATING),
        ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 8),
    ]


def _gl_sl(r2: int, c: TPoly) -> Callable[[], List[ExpectedTarget]]:
    def targets() -> List[ExpectedTarget]:
        return [
            ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, GL_SL, t_display([4], [([2], r2), ([2], r2)]), 0),
            ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 2),
            ExpectedTarget("constant_c", TargetKind.CONSTANT_C, GL_SL, TFrac(c)),
        ]
    return targets


def _gl2_sl3() -> List[ExpectedTarget]:
    targets = _gl_sl(2, _poly(1, 0, 0, 0, -1))()
    for path in ("sl2-sl3", "sl2-sl3-mirror"):
        targets.append(ExpectedTarget(f"path_{path}", TargetKind.PATH_B, f"{GL_SL}, glued from the SL_2 \\ SL_3 path", path, 0))
    return targets


def _sp4_gl4() -> List[ExpectedTarget]:
    return [
        ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, RANK_ONE, g_display([2, 0], 4), 0),
        ExpectedTarget("l_multiset", TargetKind.L_MULTISET, f"{TABLE}: Sp_2n \\ GL_2n, L(π,Ad,1)", adjoint_multiset([[2, 0]], 4)),
        ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 2),
        ExpectedTarget("constant_c", TargetKind.CONSTANT_C, RANK_ONE, TFrac(_poly(1, 0, 0, 0, 1))),
    ]


def _rank_one_g(r2: int) -> Callable[[], List[ExpectedTarget]]:
    def targets() -> List[ExpectedTarget]:
        c = TPoly.const(1) + t_power(r2)
        return [
            ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, RANK_ONE, g_display([2], r2), 0),
            ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 2),
            ExpectedTarget("constant_c", TargetKind.CONSTANT_C, RANK_ONE, TFrac(c)),
        ]
    return targets


def _spin4_spin5() -> List[ExpectedTarget]:
    return [
        ExpectedTarget("bw_display_0", TargetKind.BW_DISPLAY, RANK_ONE, t_display([4], [([2], 4), ([2], 1)]), 0),
        ExpectedTarget("weyl_order", TargetKind.WEYL_ORDER, WEYL, 2),
        ExpectedTarget("constant_c", TargetKind.CONSTANT_C, RANK_ONE, TFrac(_poly(1, 0, 0, 0, 0, -1))),
    ]


CATALOG: Dict[str, Tuple[Callable[[], List[ExpectedTarget]], Tuple[str, ...]]] = {
    "whittaker-a1": (_whittaker_a1, ()),
    "whittaker-a2": (_whittaker_a2, ()),
    "group-a1": (_group_a1, ()),
    "group-a2": (_group_a2, ()),
    "triple-product": (_triple_product, ()),
    "gp-so3-so4": (_gp_so3_so4, ()),
    "shalika-gl4": (_shalika_gl4, ()),
    "gl2-sl3": (_gl2_sl3, ("sl2-sl3", "sl2-sl3-mirror")),
    "gl3-sl4": (_gl_sl(3, _poly(1, 0, 0, 0, 0, 0, -1)), ()),
    "sp4-gl4": (_sp4_gl4, ()),
    "sp4-sl4": (_rank_one_g(4), ()),
    "spin4-spin5": (_spin4_spin5, ()),
    "spin7-spin8": (_rank_one_g(6), ()),
}

# Printed `b of the shipped paths: (display in ambient coordinates or None, restricted display or None)
PATH_TARGETS: Dict[str, Tuple[Optional[Callable[[], TorusRational]], Optional[Callable[[], TorusRational]]]] = {
    "sl2-sl3": (
        lambda: ambient_path_display([2, 2], [[2, 0], [0, 2]]),
        lambda: t_display([4], [([2], 2), ([2], 2)]),
    ),
    "sl2-sl3-mirror": (
        lambda: ambient_path_display([2, 2], [[2, 0], [0, 2]]),
        lambda: t_display([4], [([2], 2), ([2], 2)]),
    ),
    "sp2-sp4": (
        lambda: ambient_path_display([4, 2], [[2, 0], [2, 2]]),
        None,
    ),
    "sp2xsp2-sp4": (
        None,
        lambda: bw_statement(RootKind.T_SPLIT, [1], [4], [ThetaTriple((2,), 1, 3), ThetaTriple((2,), 1, 1)]),
    ),
}


def list_fixtures() -> List[str]:
    return sorted(CATALOG)


def list_paths() -> List[str]:
    return sorted(PATH_TARGETS)


def antidominant_grid(d: SphericalDatum, size: Optional[int] = 5, bound: int = 4) -> Tuple[Vec, ...]:
    """The first antidominant integral coweights (doubled) of a box, smallest first"""
    candidates = []
    for mu in product(range(-bound, bound + 1), repeat=d.rank):
        lam2 = tuple(2 * x for x in mu)
        if d.root_system.is_antidominant(lam2):
            candidates.append(lam2)
    candidates.sort(key=lambda v: (sum(abs(x) for x in v), tuple(-x for x in v)))
    return tuple(candidates if size is None else candidates[:size])


@lru_cache(maxsize=None)
def get_path(name: str) -> OrbitPath:
    if name not in PATH_TARGETS:
        raise UnknownFixture(f"unknown path '{name}'; available: {', '.join(list_paths())}")
    return load_path(get_settings().paths_dir / f"{name}.json")


@lru_cache(maxsize=None)
def get_fixture(name: str) -> Fixture:
    if name not in CATALOG:
        raise UnknownFixture(f"unknown fixture '{name}'; available: {', '.join(list_fixtures())}")
    build_targets, path_names = CATALOG[name]
    file = Path(get_settings().fixtures_dir) / f"{name}.json"
    try:
        datum = load_datum(file)
    except SphericalisError as e:
        logger.error(f"Failed to load fixture {name} from {file}: {e}")
        raise
    fixture = Fixture(
        name=name,
        datum=datum,
        expected=tuple(build_targets()),
        paths=tuple(get_path(p) for p in path_names),
        grid=antidominant_grid(datum),
    )
    logger.info(f"Loaded fixture {name}: {len(fixture.expected)} targets, {len(fixture.paths)} paths")
    return fixture


# --- REGRESSION ---

def _result(name: str, ok: bool, detail: str = "", citation: Optional[str] = None) -> CheckResult:
    return CheckResult(
        name=name,
        status=CheckStatus.PASS if ok else CheckStatus.FAIL,
        detail=detail,
        citation=citation,
    )


def _guarded(name: str, check: Callable[[], Tuple[bool, str]], citation: Optional[str] = None) -> CheckResult:
    try:
        ok, detail = check()
    except (SphericalisError, ZeroDivisionError) as e:
        logger.warning(f"Regression target {name} raised: {e}")
        return _result(name, False, f"{type(e).__name__}: {e}", citation)
    return _result(name, ok, detail, citation)


def _shape(d: SphericalDatum, shape: OmegaShape, lam2: Vec) -> TorusRational:
    if shape == OmegaShape.CASSELMAN_SHALIKA:
        rho = d.root_system.rho.rho_check
        return TorusRational(alternating_theta_form(d, lam2) * TorusLaurent.monomial(rho))
    if shape == OmegaShape.MACDONALD:
        return macdonald_form(d, lam2)
    return TorusRational(alternating_theta_form(d, lam2))


def _ratio_constant(ratios: List[TorusRational]) -> Tuple[bool, str]:
    first = ratios[0]
    for k, r in enumerate(ratios[1:], start=1):
        if r != first:
            return False, f"ratio at grid point {k} differs from the first"
    return True, f"λ-independent over {len(ratios)} points"


def _check_target(fixture: Fixture, target: ExpectedTarget) -> Tuple[bool, str]:
    d = fixture.datum
    kind = target.kind
    if kind == TargetKind.BW_DISPLAY:
        s = weyl_group(d.root_system).from_word((target.index,))
        return bw(d, s) == target.value, f"spherical root {target.index}"
    if kind == TargetKind.OMEGA_EXACT:
        for lam2 in fixture.grid:
            if omega_sum(d, lam2).value != _shape(d, target.value, lam2):
                return False, f"mismatch at λ = {lam2}"
        return True, f"{len(fixture.grid)} grid points"
    if kind == TargetKind.OMEGA_RATIO:
        ratios = [omega_sum(d, lam2).value / _shape(d, target.value, lam2) for lam2 in fixture.grid]
        return _ratio_constant(ratios)
    if kind == TargetKind.L_MULTISET:
        got = lfactors(d).multiset()
        expected = Counter({f: n for f, n in target.value.items() if any(f.coweight)})
        return got == expected, f"{sum(got.values())} factors"
    if kind == TargetKind.WEYL_ORDER:
        order = len(weyl_group(d.root_system))
        return order == target.value, f"|W_X| = {order}"
    if kind == TargetKind.CONSTANT_C:
        c = constant_c(d)
        return c == target.value, f"c = {c}"
    if kind == TargetKind.VOLUME:
        v = volume(d)
        return v == target.value, f"vol = {v}"
    if kind == TargetKind.PATH_B:
        path = get_path(target.value)
        s = weyl_group(d.root_system).from_word((target.index,))
        return restricted_backtick_b(path) == bw(d, s), f"restricted `b of {path.name}"
    raise SphericalisError(f"unknown target kind {kind}")


def _invariant_checks(fixture: Fixture) -> List[CheckResult]:
    d = fixture.datum
    results = []
    validation = validate_datum(d)
    results.append(_result("validate", validation.passed, ", ".join(validation.failed())))

    def consistency():
        bad = [lam2 for lam2 in fixture.grid if not consistency_holds(d, lam2)]
        return not bad, f"failing at {bad}" if bad else f"{len(fixture.grid)} grid points"

    def pinning():
        bad = [lam2 for lam2 in fixture.grid if omega_at_delta(d, lam2) != TFrac(1)]
        return not bad, f"failing at {bad}" if bad else f"{len(fixture.grid)} grid points"

    def cocycle():
        group = weyl_group(d.root_system)
        bad = [(v.reduced_word, w.reduced_word) for v in group for w in group if not cocycle_holds(d, v, w)]
        return not bad, f"failing at {bad}" if bad else f"{len(group) ** 2} pairs"

    def triangularity():
        bad = [lam2 for lam2 in fixture.grid if triangularity_violations(d, lam2)]
        return not bad, f"failing at {bad}" if bad else f"{len(fixture.grid)} grid points"

    def plancherel():
        value = plancherel_pairing(d, (0,) * d.rank, (0,) * d.rank, prec=2)
        expected = constant_c(d) * len(weyl_group(d.root_system))
        return value.exact == expected, f"CT = {value.exact}"

    def orthogonality():
        prec = get_settings().prec
        zero = (0,) * d.rank
        points = [lam2 for lam2 in fixture.grid if any(lam2)][:3]
        bad = []
        for lam2 in points:
            value = plancherel_pairing(d, lam2, zero, prec=prec)
            if not (value.exact.is_zero() and value.series.is_zero()):
                bad.append(lam2)
        return not bad and bool(points), f"failing at {bad}" if bad else f"{points} against 0 to order {prec}"

    results.append(_guarded("consistency", consistency))
    if d.has_constant:
        results.append(_guarded("pinning", pinning))
        results.append(_guarded("plancherel_norm", plancherel))
        results.append(_guarded("plancherel_orthogonality", orthogonality))
    else:
        for name in ("pinning", "plancherel_norm", "plancherel_orthogonality"):
            results.append(CheckResult(name=name, status=CheckStatus.SKIPPED, detail="twisted or not affine"))
    results.append(_guarded("cocycle", cocycle))
    results.append(_guarded("triangularity", triangularity))
    for path in fixture.paths:
        def induction(path=path):
            flags = inductionstep_holds(path)
            return all(flags), f"{len(flags)} lowering steps"
        results.append(_guarded(f"inductionstep_{path.name}", induction))
    return results


def regression_suite(name: str) -> RegressionReport:
    """Every invariant and printed target of a fixture as one report entry each"""
    fixture = get_fixture(name)
    report = RegressionReport(fixture=name)
    report.results.extend(_invariant_checks(fixture))
    for target in fixture.expected:
        report.results.append(_guarded(target.name, lambda target=target: _check_target(fixture, target), target.citation))
    logger.info(f"Regression suite {name}: {'pass' if report.passed else 'fail'}")
    return report


def path_suite() -> RegressionReport:
    """Printed `b of every shipped path, plus the induction relation where a restriction is declared"""
    report = RegressionReport(fixture="paths")
    citation = "orbit path composition through the cocycle relation"
    for name in list_paths():
        ambient_display, restricted_display = PATH_TARGETS[name]
        path = get_path(name)
        if ambient_display is not None:
            report.results.append(_guarded(
                f"{name}_ambient", lambda path=path, f=ambient_display: (backtick_b(path) == f(), "ambient coordinates"), citation
            ))
        if restricted_display is not None:
            report.results.append(_guarded(
                f"{name}_restricted",
                lambda path=path, f=restricted_display: (restricted_backtick_b(path) == f(), "restricted to the X-lattice"),
                citation,
            ))
        if path.restriction is not None and path.delta is not None:
            report.results.append(_guarded(
                f"{name}_inductionstep", lambda path=path: (all(inductionstep_holds(path)), "lowering steps"), citation
            ))
    logger.info(f"Path suite: {'pass' if report.passed else 'fail'}")
    return report
