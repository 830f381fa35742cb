"""
Spherical Data
The declarative combinatorial model of a spherical variety: spherical roots with their
types, the multiset of positive virtual colors, color valuations, rho_{P(X)} and the ambient
root data. Parsing and validation of the standing assumptions.
"""
import json
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from sphericalis.cones import ConeSign, cone_sign, is_strictly_convex, separation_lp
from sphericalis.exceptions import CartanError, DatumParseError, SphericalisError, WeylCapExceeded
from sphericalis.models import CheckResult, CheckStatus, DatumDocument, RootKind, ValidationReport
from sphericalis.root_systems import (
    RootSystem,
    WeylGroup,
    build_root_system,
    dot,
    mat_vec,
    root_system_from_cartan,
    weyl_group,
)

logger = logging.getLogger(__name__)

Vec = Tuple[int, ...]


@dataclass(frozen=True)
class ThetaTriple:
    coweight: Vec  # doubled
    sign: int
    r2: int

    def negated(self) -> "ThetaTriple":
        return ThetaTriple(tuple(-x for x in self.coweight), self.sign, self.r2)

    def moved(self, matrix) -> "ThetaTriple":
        return ThetaTriple(mat_vec(matrix, self.coweight), self.sign, self.r2)


@dataclass(frozen=True)
class SphericalRoot:
    gamma: Vec
    cogamma: Vec  # doubled
    kind: RootKind


@dataclass(frozen=True)
class SphericalDatum:
    name: str
    affine: bool
    twisted: bool
    rank: int
    spherical_roots: Tuple[SphericalRoot, ...]
    theta_plus: Tuple[ThetaTriple, ...]
    colors: Tuple[Vec, ...]
    rho_pX: Vec  # doubled pairings with rho_{P(X)}
    ambient: Optional[RootSystem] = None
    ambient_rho_pairings: Tuple[int, ...] = ()

    @cached_property
    def root_system(self) -> RootSystem:
        """The spherical root system Phi_X on the doubled lattice"""
        return build_root_system(
            [r.gamma for r in self.spherical_roots],
            [r.cogamma for r in self.spherical_roots],
            lattice_rank=self.rank,
        )

    @property
    def weyl(self) -> WeylGroup:
        return weyl_group(self.root_system)

    @property
    def theta(self) -> List[ThetaTriple]:
        """Theta = Theta+ together with its negatives, as a multiset"""
        return list(self.theta_plus) + [t.negated() for t in self.theta_plus]

    @property
    def has_constant(self) -> bool:
        return self.affine and not self.twisted

    def pairing(self, coweight2: Sequence[int], gamma_index: int) -> int:
        """v . gamma for a doubled coweight v, i.e. twice <v/2, gamma>"""
        return dot(coweight2, self.spherical_roots[gamma_index].gamma)

    def to_document(self) -> Dict[str, Any]:
        ambient: Dict[str, Any] = {}
        if self.ambient is not None:
            ambient["cartan"] = [list(r) for r in self.ambient.cartan]
        else:
            ambient["pos_coroot_rho_pairings"] = list(self.ambient_rho_pairings)
        return {
            "name": self.name,
            "affine": self.affine,
            "twisted": self.twisted,
            "rank": self.rank,
            "lattice_scale": 2,
            "ambient": ambient,
            "spherical_roots": [
                {"gamma": list(r.gamma), "cogamma": list(r.cogamma), "kind": r.kind.value} for r in self.spherical_roots
            ],
            "theta_plus": [{"coweight": list(t.coweight), "sign": t.sign, "r2": t.r2} for t in self.theta_plus],
            "colors": [list(c) for c in self.colors],
            "rho_pX": list(self.rho_pX),
        }


def _loc(error: Dict[str, Any]) -> str:
    return ".".join(str(p) for p in error.get("loc", ()))


def parse_datum(document: Union[Dict[str, Any], str, Path]) -> SphericalDatum:
    """Build a SphericalDatum from a JSON document, a JSON string or a file path (no validation)"""
    if isinstance(document, Path) or (isinstance(document, str) and not document.lstrip().startswith("{")):
        try:
            document = json.loads(Path(document).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Failed to read datum file {document}: {e}")
            raise DatumParseError(str(e)) from e
    elif isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise DatumParseError(str(e)) from e
    try:
        doc = DatumDocument.model_validate(document)
    except ValidationError as e:
        first = e.errors()[0]
        raise DatumParseError(first.get("msg", "invalid document"), field_path=_loc(first)) from e

    rank = doc.rank

    def vector(values: List[int], path: str) -> Vec:
        if len(values) != rank:
            raise DatumParseError(f"expected {rank} entries, got {len(values)}", field_path=path)
        return tuple(values)

    roots = tuple(
        SphericalRoot(
            gamma=vector(r.gamma, f"spherical_roots.{i}.gamma"),
            cogamma=vector(r.cogamma, f"spherical_roots.{i}.cogamma"),
            kind=r.kind,
        )
        for i, r in enumerate(doc.spherical_roots)
    )
    thetas = tuple(
        ThetaTriple(vector(t.coweight, f"theta_plus.{i}.coweight"), t.sign, t.r2) for i, t in enumerate(doc.theta_plus)
    )
    colors = tuple(vector(c, f"colors.{i}") for i, c in enumerate(doc.colors))
    rho = vector(doc.rho_pX, "rho_pX")

    ambient = None
    pairings: Tuple[int, ...] = ()
    if doc.ambient.cartan is not None:
        try:
            ambient = root_system_from_cartan(doc.ambient.cartan)
        except (CartanError, WeylCapExceeded) as e:
            raise DatumParseError(str(e), field_path="ambient.cartan") from e
        pairings = ambient.rho.rho_pairings
    else:
        pairings = tuple(doc.ambient.pos_coroot_rho_pairings)

    datum = SphericalDatum(
        name=doc.name,
        affine=doc.affine,
        twisted=doc.twisted,
        rank=rank,
        spherical_roots=roots,
        theta_plus=thetas,
        colors=colors,
        rho_pX=rho,
        ambient=ambient,
        ambient_rho_pairings=pairings,
    )
    logger.info(f"Parsed datum {datum.name}: rank {rank}, {len(roots)} spherical roots, |Θ⁺| = {len(thetas)}")
    return datum


def load_datum(path: Union[str, Path]) -> SphericalDatum:
    return parse_datum(Path(path))


# --- VALIDATION ---

def _check(name: str, errors: List[str]) -> CheckResult:
    if errors:
        return CheckResult(name=name, status=CheckStatus.FAIL, detail="; ".join(errors))
    return CheckResult(name=name, status=CheckStatus.PASS)


def validate_cartan(d: SphericalDatum) -> List[str]:
    errors = []
    for i, r in enumerate(d.spherical_roots):
        if dot(r.cogamma, r.gamma) != 4:
            errors.append(f"<cogamma, gamma> != 2 for spherical root {i}")
    if errors:
        return errors
    try:
        _ = d.root_system
    except SphericalisError as e:
        errors.append(str(e))
    return errors


def validate_theta_stable(d: SphericalDatum) -> List[str]:
    errors = []
    theta = Counter(d.theta)
    for i, s in enumerate(d.root_system.reflections):
        image = Counter(t.moved(s) for t in d.theta)
        if image != theta:
            missing = list((image - theta).elements())
            errors.append(f"Θ is not stable under reflection {i}: missing {[t.coweight for t in missing]}")
    return errors


def validate_posneg(d: SphericalDatum) -> List[str]:
    errors = []
    colors = list(d.colors)
    for t in d.theta_plus:
        if cone_sign(colors, t.coweight) != ConeSign.POSITIVE:
            errors.append(f"θ̌ = {t.coweight} of Θ⁺ is not in the color cone")
    for i, root in enumerate(d.spherical_roots):
        flipped = theta_flipped_by(d, i)
        for t in d.theta_plus:
            image = t.moved(d.root_system.reflections[i])
            if cone_sign(colors, image.coweight) not in (ConeSign.POSITIVE, ConeSign.NEGATIVE):
                errors.append(f"w_γ{i} θ̌ = {image.coweight} lies on neither side of the color cone")
        if root.kind != RootKind.U_PSI and not flipped:
            errors.append(f"no element of Θ⁺ is flipped by w_γ{i}")
        for t in flipped:
            if d.pairing(t.coweight, i) <= 0:
                errors.append(f"θ̌ = {t.coweight} is flipped by w_γ{i} but <θ̌, γ{i}> <= 0")
        color_set = set(colors)
        for t in d.theta_plus:
            if t.coweight in color_set and d.pairing(t.coweight, i) > 0 and t not in flipped:
                errors.append(f"color θ̌ = {t.coweight} has <θ̌, γ{i}> > 0 but is not flipped by w_γ{i}")
    return errors


def validate_convexity(d: SphericalDatum) -> List[str]:
    errors = []
    if any(not any(c) for c in d.colors):
        errors.append("0 is listed among the colors")
    elif not is_strictly_convex(list(d.colors)):
        errors.append("the color cone is not strictly convex")
    return errors


def validate_separation(d: SphericalDatum) -> List[str]:
    gammas = [r.gamma for r in d.spherical_roots]
    coeffs = separation_lp(gammas, [t.coweight for t in d.theta_plus])
    if coeffs is None:
        return ["no nonnegative combination of spherical roots separates Θ⁺ from 𝒱"]
    return []


def validate_r2(d: SphericalDatum) -> List[str]:
    return [f"triple {t.coweight} has r2 = {t.r2} < 1" for t in d.theta_plus if t.r2 < 1]


def validate_datum(d: SphericalDatum) -> ValidationReport:
    """Run every standing-assumption check; failures become report entries"""
    report = ValidationReport(datum=d.name)
    cartan = _check("cartan", validate_cartan(d))
    report.checks.append(cartan)
    if cartan.status == CheckStatus.FAIL:
        for name in ("theta_stable", "posneg", "convexity", "separation"):
            report.checks.append(CheckResult(name=name, status=CheckStatus.SKIPPED, detail="root system unavailable"))
    else:
        report.checks.append(_check("theta_stable", validate_theta_stable(d)))
        report.checks.append(_check("posneg", validate_posneg(d)))
        report.checks.append(_check("convexity", validate_convexity(d)))
        if d.affine:
            report.checks.append(_check("separation", validate_separation(d)))
        else:
            report.checks.append(CheckResult(name="separation", status=CheckStatus.SKIPPED, detail="not affine"))
    report.checks.append(_check("r2_positive", validate_r2(d)))
    logger.info(f"Validated {d.name}: {'pass' if report.passed else 'fail ' + str(report.failed())}")
    return report


def theta_flipped_by(d: SphericalDatum, gamma_index: int) -> List[ThetaTriple]:
    """Elements of Θ⁺ sent into the negative color cone by the simple reflection w_γ"""
    if not 0 <= gamma_index < len(d.spherical_roots):
        raise IndexError(f"spherical root index {gamma_index} out of range")
    s = d.root_system.reflections[gamma_index]
    colors = list(d.colors)
    return [t for t in d.theta_plus if cone_sign(colors, mat_vec(s, t.coweight)) == ConeSign.NEGATIVE]
