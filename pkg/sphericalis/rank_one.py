"""
Rank One Cocycles
Scalar functional-equation coefficients of the rank-one orbit cases and their composition
along declarative orbit paths through the cocycle relation.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from sphericalis.exact_algebra import TorusLaurent, TorusRational, restrict_lattice, t_power, weyl_substitute
from sphericalis.exceptions import CartanError, DatumParseError, PathError, WeylCapExceeded
from sphericalis.models import FeTag, PathDocument
from sphericalis.root_systems import RootSystem, WeylElement, root_system_from_cartan, weyl_group

logger = logging.getLogger(__name__)

Vec = Tuple[int, ...]

# Parameters each tag needs beyond the coroot
REQUIRED_PARAMS: Dict[FeTag, Tuple[str, ...]] = {
    FeTag.U_RAISE: (),
    FeTag.U_LOWER: (),
    FeTag.U_PSI: (),
    FeTag.T_SPLIT_UNRAM: ("v_d", "v_d_prime", "shift_d", "shift_d_prime"),
    FeTag.T_SPLIT_RAM: ("m",),
    FeTag.T_NONSPLIT_UNRAM: (),
    FeTag.T_NONSPLIT_RAM: (),
    FeTag.N_SPLIT_INT_UNRAM: (),
    FeTag.N_SPLIT_INT_RAM: ("ratio",),
    FeTag.N_NONSPLIT_INT_UNRAM: (),
    FeTag.N_NONSPLIT_INT_RAM: ("ratio",),
    FeTag.N_NONINTEGRAL: ("ratio",),
}


@dataclass(frozen=True)
class FeCase:
    """
    One rank-one case. coroot is the ambient simple coroot in doubled coordinates.
    T-split takes v_d, v_d_prime (doubled coweights) and shift_d, shift_d_prime, the
    t-exponents of e^{v}(delta^{1/2} delta_xi^{-1}); ramified cases take the conductor m or
    the discriminant-ratio character value ratio.
    """

    tag: FeTag
    coroot: Vec
    params: Tuple[Tuple[str, Any], ...] = ()

    @classmethod
    def build(cls, tag: Union[FeTag, str], coroot: Sequence[int], params: Optional[Mapping[str, Any]] = None) -> "FeCase":
        tag = FeTag(tag)
        frozen = []
        for key, value in sorted((params or {}).items()):
            frozen.append((key, tuple(value) if isinstance(value, list) else value))
        return cls(tag, tuple(int(x) for x in coroot), tuple(frozen))

    def param(self, name: str) -> Any:
        for key, value in self.params:
            if key == name:
                return value
        raise PathError(f"case {self.tag.value} is missing the parameter '{name}'")

    def check(self) -> None:
        for name in REQUIRED_PARAMS[self.tag]:
            self.param(name)
        if self.tag == FeTag.T_SPLIT_UNRAM:
            total = tuple(a + b for a, b in zip(self.param("v_d"), self.param("v_d_prime")))
            if total != self.coroot:
                raise PathError(f"v_D + v_D' = {total} differs from the coroot {self.coroot}")
        if self.tag == FeTag.T_SPLIT_RAM and int(self.param("m")) < 1:
            raise PathError("a ramified character has conductor exponent m >= 1")


@dataclass(frozen=True)
class PathStep:
    root_index: int
    case: FeCase


@dataclass(frozen=True)
class LatticeRestriction:
    matrix: Tuple[Vec, ...]
    t_shift: Optional[Vec] = None

    def apply(self, f):
        return restrict_lattice(f, self.matrix, self.t_shift)


@dataclass(frozen=True)
class OrbitPath:
    name: str
    ambient: RootSystem
    steps: Tuple[PathStep, ...]
    restriction: Optional[LatticeRestriction] = None
    delta: Optional[Vec] = None

    @property
    def word(self) -> Tuple[int, ...]:
        """Root indices in application order"""
        return tuple(s.root_index for s in self.steps)


def _half(v: Sequence[int]) -> Vec:
    if any(x % 2 for x in v):
        raise PathError(f"coroot {tuple(v)} has no half in the doubled lattice")
    return tuple(x // 2 for x in v)


def _neg(v: Sequence[int]) -> Vec:
    return tuple(-x for x in v)


def fe_coefficient(case: FeCase) -> TorusRational:
    """b_{w_alpha} for one rank-one case, in the ambient torus variables"""
    case.check()
    a = case.coroot
    rank = len(a)
    one = TorusLaurent.one(rank)
    tag = case.tag

    if tag == FeTag.U_LOWER:
        return TorusRational(TorusLaurent.monomial(_neg(a), -1) * TorusLaurent.binomial(_neg(a), 1, 2), TorusLaurent.binomial(_neg(a)))
    if tag == FeTag.U_RAISE:
        return TorusRational(TorusLaurent.monomial(_neg(a), -1) * TorusLaurent.binomial(a), TorusLaurent.binomial(a, 1, 2))
    if tag == FeTag.U_PSI:
        return TorusRational(one)
    if tag == FeTag.T_SPLIT_UNRAM:
        num = one
        den = one
        for v_key, s_key in (("v_d", "shift_d"), ("v_d_prime", "shift_d_prime")):
            v = tuple(int(x) for x in case.param(v_key))
            s = int(case.param(s_key))
            # evaluated at the shifted character: e^{v} -> t^{s} e^{v}
            num = num * TorusLaurent.binomial(_neg(v), 1, 2 - s)
            den = den * TorusLaurent.binomial(v, 1, s)
        return TorusRational(num, den)
    if tag == FeTag.T_SPLIT_RAM:
        m = int(case.param("m"))
        return TorusRational(TorusLaurent.monomial(tuple(-m * x for x in a)))
    if tag in (FeTag.T_NONSPLIT_UNRAM, FeTag.N_NONSPLIT_INT_UNRAM):
        return TorusRational(TorusLaurent.binomial(_neg(a), 1, 2), TorusLaurent.binomial(a, 1, 2))
    if tag == FeTag.T_NONSPLIT_RAM:
        return TorusRational(TorusLaurent.monomial(_neg(a)))
    if tag == FeTag.N_SPLIT_INT_UNRAM:
        h = _half(a)
        ratio = TorusRational(TorusLaurent.binomial(_neg(h), 1, 1), TorusLaurent.binomial(h, 1, 1))
        return ratio * ratio
    if tag in (FeTag.N_SPLIT_INT_RAM, FeTag.N_NONSPLIT_INT_RAM):
        ratio = Fraction(case.param("ratio"))
        return TorusRational(TorusLaurent.monomial(_neg(a), ratio))
    if tag == FeTag.N_NONINTEGRAL:
        # u = e^{alpha/2} evaluated at the uniformizer -D(zeta)
        h = _half(a)
        ratio = Fraction(case.param("ratio"))
        return TorusRational(TorusLaurent.binomial(_neg(h), 1, 1) * ratio, TorusLaurent.binomial(h, 1, 1))
    raise PathError(f"unknown case tag {tag}")


# --- PATHS ---

def _coroot_key(ambient: RootSystem, coeffs: Sequence[int], path: str) -> Vec:
    """Simple-coroot coefficients to a doubled ambient coweight"""
    if len(coeffs) != ambient.rank:
        raise DatumParseError(f"expected {ambient.rank} simple-coroot coefficients", field_path=path)
    key = [0] * ambient.lattice_rank
    for c, cog in zip(coeffs, ambient.simple_coroots):
        for k in range(ambient.lattice_rank):
            key[k] += int(c) * cog[k]
    return tuple(key)


def parse_path(document: Union[Dict[str, Any], str, Path]) -> OrbitPath:
    """Build an OrbitPath from a path document; T-split coweights are given in simple-coroot coefficients"""
    if isinstance(document, (str, Path)):
        try:
            text = Path(document).read_text(encoding="utf-8") if not str(document).lstrip().startswith("{") else str(document)
            document = json.loads(text)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Failed to read path document {document}: {e}")
            raise DatumParseError(str(e)) from e
    try:
        doc = PathDocument.model_validate(document)
    except ValidationError as e:
        first = e.errors()[0]
        raise DatumParseError(first.get("msg", "invalid path"), field_path=".".join(str(p) for p in first.get("loc", ()))) from e
    try:
        ambient = root_system_from_cartan(doc.ambient)
    except (CartanError, WeylCapExceeded) as e:
        raise DatumParseError(str(e), field_path="ambient") from e

    steps = []
    for i, spec in enumerate(doc.steps):
        if spec.root_index >= ambient.rank:
            raise DatumParseError(f"root index {spec.root_index} out of range", field_path=f"steps.{i}.root_index")
        params = dict(spec.params)
        for key in ("v_d", "v_d_prime"):
            if key in params:
                params[key] = list(_coroot_key(ambient, params[key], f"steps.{i}.params.{key}"))
        case = FeCase.build(spec.case, ambient.simple_coroots[spec.root_index], params)
        steps.append(PathStep(spec.root_index, case))

    restriction = None
    if doc.restriction is not None:
        restriction = LatticeRestriction(
            tuple(tuple(row) for row in doc.restriction.matrix),
            tuple(doc.restriction.t_shift) if doc.restriction.t_shift is not None else None,
        )
    path = OrbitPath(
        name=doc.name or "path",
        ambient=ambient,
        steps=tuple(steps),
        restriction=restriction,
        delta=tuple(doc.delta) if doc.delta is not None else None,
    )
    logger.info(f"Parsed path {path.name}: word {path.word}")
    return path


def load_path(path: Union[str, Path]) -> OrbitPath:
    return parse_path(Path(path))


def path_element(path: OrbitPath) -> WeylElement:
    """w = s_{i_n} ... s_{i_1}; the path must be a reduced word for it"""
    group = weyl_group(path.ambient)
    w = group.element(group.identity)
    for step in path.steps:
        w = group.multiply(group.from_word((step.root_index,)), w)
    length = group.length(w.matrix)
    if length != len(path.steps):
        raise PathError(f"path {path.name} has {len(path.steps)} steps but its element has length {length}")
    return w


def compose_path(path: OrbitPath) -> TorusRational:
    """
    b_w through the cocycle relation: step k is evaluated at the character moved by the
    product of the reflections applied before it.
    """
    path_element(path)
    group = weyl_group(path.ambient)
    v = group.element(group.identity)
    total = TorusRational.one(path.ambient.lattice_rank)
    for step in path.steps:
        total = total * weyl_substitute(fe_coefficient(step.case), group.inverse(v).matrix)
        v = group.multiply(group.from_word((step.root_index,)), v)
    return total


def backtick_b(path: OrbitPath) -> TorusRational:
    """prod over positive ambient coroots e with w e < 0 of (-e^{e}), times b_w"""
    w = path_element(path)
    positive = set(path.ambient.positive_coroots)
    prefactor = TorusLaurent.one(path.ambient.lattice_rank)
    for e in path.ambient.positive_coroots:
        if w.act(e) not in positive:
            prefactor = prefactor * TorusLaurent.monomial(e, -1)
    return compose_path(path) * prefactor


def restricted_backtick_b(path: OrbitPath) -> TorusRational:
    if path.restriction is None:
        raise PathError(f"path {path.name} declares no restriction to the X-lattice")
    return path.restriction.apply(backtick_b(path))


def inductionstep_holds(path: OrbitPath) -> List[bool]:
    """
    For every lowering step alpha followed by a step beta, compare e^{-alpha} with
    q^{-1} e^{-w_alpha beta} on the restricted torus at the path's delta point.
    """
    if path.restriction is None or path.delta is None:
        raise PathError(f"path {path.name} needs a restriction and a delta point for the induction relation")
    rs = path.ambient
    results = []
    for k in range(len(path.steps) - 1):
        step, nxt = path.steps[k], path.steps[k + 1]
        if step.case.tag != FeTag.U_LOWER:
            continue
        alpha = rs.simple_coroots[step.root_index]
        beta = rs.simple_coroots[nxt.root_index]
        moved = tuple(sum(row[j] * beta[j] for j in range(len(beta))) for row in rs.reflections[step.root_index])
        lhs = path.restriction.apply(TorusLaurent.monomial(_neg(alpha))).at_delta(path.delta)
        rhs = path.restriction.apply(TorusLaurent.monomial(_neg(moved))).at_delta(path.delta) * t_power(2)
        results.append(lhs == rhs)
    return results
