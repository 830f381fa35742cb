"""
Root Systems
Abstract finite root systems given by independent simple roots (weights) and simple coroots
(doubled coweights), their Weyl groups, rho-check and lowest-weight Schur polynomials.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from sphericalis.config import get_settings
from sphericalis.exact_algebra import TorusLaurent, exact_divide
from sphericalis.exceptions import CartanError, NotAntidominant, WeylCapExceeded

logger = logging.getLogger(__name__)

Vec = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b[0]) if b else 0
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(n)) for i in range(len(a)))


def mat_vec(a: Matrix, v: Sequence[int]) -> Vec:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class RhoData:
    rho_check: Vec  # doubled
    rho_pairings: Tuple[int, ...]  # <alpha-check, rho> over positive coroots


@dataclass(frozen=True)
class RootSystem:
    simple_roots: Tuple[Vec, ...]
    simple_coroots: Tuple[Vec, ...]  # doubled coordinates
    cartan: Matrix
    positive_roots: Tuple[Vec, ...]
    positive_coroots: Tuple[Vec, ...]  # doubled coordinates
    positive_coroot_coeffs: Tuple[Vec, ...]  # in the basis of simple coroots
    reflections: Tuple[Matrix, ...]
    rho: RhoData
    lattice_rank: int

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    def pairing(self, coweight2: Sequence[int], weight: Sequence[int]) -> Fraction:
        """<v, w> for a doubled coweight v"""
        return Fraction(dot(coweight2, weight), 2)

    def is_positive_coroot(self, v: Sequence[int]) -> bool:
        return tuple(v) in set(self.positive_coroots)

    def is_coroot(self, v: Sequence[int]) -> bool:
        neg = tuple(-x for x in v)
        return tuple(v) in self.positive_coroots or neg in self.positive_coroots

    def is_antidominant(self, lam2: Sequence[int]) -> bool:
        return all(dot(lam2, g) <= 0 for g in self.simple_roots)


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    reduced_word: Tuple[int, ...]
    sign: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sign", -1 if len(self.reduced_word) % 2 else 1)

    @property
    def length(self) -> int:
        return len(self.reduced_word)

    def act(self, v: Sequence[int]) -> Vec:
        return mat_vec(self.matrix, v)


def _cartan_from(simple_roots: Sequence[Vec], simple_coroots: Sequence[Vec]) -> Matrix:
    rows = []
    for i, cog in enumerate(simple_coroots):
        row = []
        for j, g in enumerate(simple_roots):
            value = dot(cog, g)
            if value % 2:
                raise CartanError(f"pairing of coroot {i} with root {j} is not an integer")
            row.append(value // 2)
        rows.append(tuple(row))
    cartan = tuple(rows)
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise CartanError(f"<coroot {i}, root {i}> = {cartan[i][i]}, expected 2")
        for j in range(n):
            if i != j:
                if cartan[i][j] > 0:
                    raise CartanError(f"positive off-diagonal Cartan entry at ({i}, {j})")
                if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise CartanError(f"Cartan entries ({i}, {j}) and ({j}, {i}) are not simultaneously zero")
    return cartan


def _closure(cartan: Matrix, transpose: bool, cap: int) -> List[Vec]:
    """Positive roots in simple-root coordinates (or coroots when transpose is set)"""
    n = len(cartan)
    entry = (lambda i, j: cartan[j][i]) if transpose else (lambda i, j: cartan[i][j])
    simple = [tuple(int(i == k) for k in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            pairing = sum(beta[j] * entry(i, j) for j in range(n))
            image = tuple(beta[k] - pairing * int(k == i) for k in range(n))
            if all(x >= 0 for x in image) and any(image) and image not in seen:
                seen.add(image)
                queue.append(image)
                if len(seen) > cap:
                    raise WeylCapExceeded(f"more than {cap} positive roots: the Cartan matrix is not of finite type")
    return sorted(seen, key=lambda b: (sum(b), tuple(-x for x in b)))


def build_root_system(
    simple_roots: Sequence[Sequence[int]],
    simple_coroots: Sequence[Sequence[int]],
    lattice_rank: Optional[int] = None,
) -> RootSystem:
    """Enumerate positive (co)roots by reflection closure and compute rho-check"""
    cap = get_settings().weyl_cap
    roots = tuple(tuple(int(x) for x in g) for g in simple_roots)
    coroots = tuple(tuple(int(x) for x in c) for c in simple_coroots)
    if len(roots) != len(coroots):
        raise CartanError(f"{len(roots)} simple roots but {len(coroots)} simple coroots")
    if lattice_rank is None:
        lattice_rank = len(coroots[0]) if coroots else 0
    for v in roots + coroots:
        if len(v) != lattice_rank:
            raise CartanError(f"vector {v} does not have lattice rank {lattice_rank}")
    cartan = _cartan_from(roots, coroots)

    root_coeffs = _closure(cartan, transpose=False, cap=cap)
    coroot_coeffs = _closure(cartan, transpose=True, cap=cap)
    positive_roots = tuple(
        tuple(sum(b[j] * roots[j][k] for j in range(len(roots))) for k in range(lattice_rank)) for b in root_coeffs
    )
    positive_coroots = tuple(
        tuple(sum(b[j] * coroots[j][k] for j in range(len(coroots))) for k in range(lattice_rank)) for b in coroot_coeffs
    )

    reflections = []
    for cog, g in zip(coroots, roots):
        rows = []
        for i in range(lattice_rank):
            row = []
            for j in range(lattice_rank):
                value = Fraction(int(i == j)) - Fraction(cog[i] * g[j], 2)
                if value.denominator != 1:
                    raise CartanError(f"reflection along {cog} does not preserve the doubled lattice")
                row.append(int(value))
            rows.append(tuple(row))
        reflections.append(tuple(rows))

    total = [sum(c[k] for c in positive_coroots) for k in range(lattice_rank)]
    if any(x % 2 for x in total):
        raise CartanError("half the sum of positive coroots is not in the doubled lattice")
    rho_check = tuple(x // 2 for x in total)
    rho_pairings = tuple(sum(b) for b in coroot_coeffs)
    logger.debug(f"root system of rank {len(roots)} with {len(positive_coroots)} positive coroots")
    return RootSystem(
        simple_roots=roots,
        simple_coroots=coroots,
        cartan=cartan,
        positive_roots=positive_roots,
        positive_coroots=positive_coroots,
        positive_coroot_coeffs=tuple(coroot_coeffs),
        reflections=tuple(reflections),
        rho=RhoData(rho_check=rho_check, rho_pairings=rho_pairings),
        lattice_rank=lattice_rank,
    )


def root_system_from_cartan(cartan: Sequence[Sequence[int]]) -> RootSystem:
    """Ambient system in the basis of simple coroots: coroot i is 2 e_i, root j is column j"""
    n = len(cartan)
    coroots = [tuple(2 * int(i == k) for k in range(n)) for i in range(n)]
    roots = [tuple(int(cartan[i][j]) for i in range(n)) for j in range(n)]
    return build_root_system(roots, coroots, lattice_rank=n)


def block_cartan(*blocks: Sequence[Sequence[int]]) -> List[List[int]]:
    """Block-diagonal Cartan matrix of a product of groups"""
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = int(x)
        offset += len(block)
    return out


class WeylGroup:
    """Elements of W with lexicographically least reduced words and the Cayley graph on them"""

    def __init__(self, rs: RootSystem):
        self.root_system = rs
        self.identity = identity_matrix(rs.lattice_rank)
        self.graph = nx.DiGraph()
        self._by_matrix: Dict[Matrix, WeylElement] = {}
        self._generate(get_settings().weyl_cap)

    def _generate(self, cap: int):
        rs = self.root_system
        start = WeylElement(self.identity, ())
        self._by_matrix[self.identity] = start
        self.graph.add_node(self.identity)
        frontier = [start]
        while frontier:
            next_frontier = []
            for w in frontier:
                for j, s in enumerate(rs.reflections):
                    m = mat_mul(w.matrix, s)
                    self.graph.add_edge(w.matrix, m, generator=j)
                    if m not in self._by_matrix:
                        element = WeylElement(m, w.reduced_word + (j,))
                        self._by_matrix[m] = element
                        next_frontier.append(element)
                        if len(self._by_matrix) > cap:
                            raise WeylCapExceeded(f"Weyl group exceeds {cap} elements")
            frontier = next_frontier
        logger.debug(f"generated Weyl group with {len(self._by_matrix)} elements")

    @property
    def elements(self) -> List[WeylElement]:
        return sorted(self._by_matrix.values(), key=lambda w: (w.length, w.reduced_word))

    def __len__(self):
        return len(self._by_matrix)

    def __iter__(self):
        return iter(self.elements)

    def element(self, matrix: Matrix) -> WeylElement:
        return self._by_matrix[matrix]

    def from_word(self, word: Sequence[int]) -> WeylElement:
        m = self.identity
        for j in word:
            m = mat_mul(m, self.root_system.reflections[j])
        return self._by_matrix[m]

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self._by_matrix[mat_mul(a.matrix, b.matrix)]

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.from_word(tuple(reversed(w.reduced_word)))

    def length(self, matrix: Matrix) -> int:
        return nx.shortest_path_length(self.graph, self.identity, matrix)

    def longest(self) -> WeylElement:
        return max(self._by_matrix.values(), key=lambda w: w.length)


@lru_cache(maxsize=64)
def weyl_group(rs: RootSystem) -> WeylGroup:
    return WeylGroup(rs)


def generate_weyl_group(rs: RootSystem) -> List[WeylElement]:
    """All elements, shortest reduced word first, identity included"""
    return weyl_group(rs).elements


def flipped_positive_coroots(rs: RootSystem, w: WeylElement) -> List[Vec]:
    """Positive coroots a with w(a) negative"""
    positive = set(rs.positive_coroots)
    return [a for a in rs.positive_coroots if w.act(a) not in positive]


def rho_identity_holds(rs: RootSystem, w: WeylElement) -> bool:
    """rho - w rho equals the sum of positive coroots a with w^{-1} a < 0"""
    inverse = weyl_group(rs).inverse(w)
    flipped = flipped_positive_coroots(rs, inverse)
    # rho is stored doubled, coroots are stored doubled: compare in doubled units
    total = tuple(sum(a[k] for a in flipped) for k in range(rs.lattice_rank))
    lhs = tuple(r - x for r, x in zip(rs.rho.rho_check, w.act(rs.rho.rho_check)))
    return lhs == total


def weyl_denominator(rs: RootSystem) -> TorusLaurent:
    """prod over positive coroots of (1 - e^{a})"""
    result = TorusLaurent.one(rs.lattice_rank)
    for a in rs.positive_coroots:
        result = result * TorusLaurent.binomial(a)
    return result


def alternating_sum(rs: RootSystem, lam2: Sequence[int]) -> TorusLaurent:
    rho = rs.rho.rho_check
    terms = TorusLaurent.zero(rs.lattice_rank)
    for w in weyl_group(rs):
        wr = w.act(rho)
        wl = w.act(lam2)
        exponent = tuple(r - x + y for r, x, y in zip(rho, wr, wl))
        terms = terms + TorusLaurent.monomial(exponent, w.sign)
    return terms


@lru_cache(maxsize=4096)
def _schur_cached(rs: RootSystem, lam2: Vec) -> TorusLaurent:
    return exact_divide(alternating_sum(rs, lam2), weyl_denominator(rs))


def schur_lowest(rs: RootSystem, lam2: Sequence[int]) -> TorusLaurent:
    """
    Lowest-weight Schur polynomial
    s_lambda = sum_w (-1)^w e^{rho - w rho + w lambda} / prod_{a > 0} (1 - e^{a}),
    with lambda and rho-check in doubled coordinates.
    """
    lam2 = tuple(int(x) for x in lam2)
    if len(lam2) != rs.lattice_rank:
        raise CartanError(f"coweight {lam2} does not have lattice rank {rs.lattice_rank}")
    return _schur_cached(rs, lam2)


def orbit_sum(rs: RootSystem, lam2: Sequence[int]) -> TorusLaurent:
    """sum of e^{mu} over the distinct W-translates mu of lambda"""
    orbit = {w.act(lam2) for w in weyl_group(rs)}
    result = TorusLaurent.zero(rs.lattice_rank)
    for mu in orbit:
        result = result + TorusLaurent.monomial(mu)
    return result


def require_antidominant(rs: RootSystem, lam2: Sequence[int]) -> None:
    if not rs.is_antidominant(lam2):
        raise NotAntidominant(f"coweight {tuple(lam2)} pairs positively with a simple spherical root")
