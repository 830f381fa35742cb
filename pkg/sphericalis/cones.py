"""
Cones
Exact rational polyhedral cone tests: membership, pointedness and hyperplane separation,
all reduced to a phase-one simplex over Fractions with Bland's pivoting rule.
"""
import logging
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence

logger = logging.getLogger(__name__)

Vector = Sequence[Fraction]


class ConeSide(str, Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


class ConeSign(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO = "zero"
    NEITHER = "neither"


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def find_nonnegative_solution(rows: Sequence[Sequence], rhs: Sequence) -> Optional[List[Fraction]]:
    """
    Phase-one simplex: a point x >= 0 with rows . x = rhs, or None when infeasible.

    Artificial variables start in the basis; Bland's rule (lowest index enters, lowest
    basic index breaks ratio ties) rules out cycling.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    tab: List[List[Fraction]] = []
    for i in range(m):
        row = [Fraction(x) for x in rows[i]]
        b = Fraction(rhs[i])
        if b < 0:
            row = [-x for x in row]
            b = -b
        tab.append(row + [Fraction(int(i == k)) for k in range(m)] + [b])
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    basis = [n + i for i in range(m)]
    width = n + m
    pivots = 0
    while True:
        entering = None
        for j in range(width):
            if j in basis:
                continue
            reduced = cost[j] - sum(cost[basis[i]] * tab[i][j] for i in range(m))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            a = tab[i][entering]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            # phase one objective is bounded below by zero
            break
        pivot = tab[leaving][entering]
        tab[leaving] = [x / pivot for x in tab[leaving]]
        for i in range(m):
            if i != leaving and tab[i][entering]:
                factor = tab[i][entering]
                tab[i] = [x - factor * y for x, y in zip(tab[i], tab[leaving])]
        basis[leaving] = entering
        pivots += 1
    logger.debug(f"phase one simplex finished after {pivots} pivots")
    objective = sum(tab[i][-1] for i in range(m) if basis[i] >= n)
    if objective != 0:
        return None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][-1]
    return x


def cone_contains(generators: Sequence[Vector], candidate: Vector) -> bool:
    """Whether candidate is a nonnegative rational combination of the generators"""
    dim = len(candidate)
    if not any(candidate):
        return True
    if not generators:
        return False
    rows = [[g[k] for g in generators] for k in range(dim)]
    return find_nonnegative_solution(rows, list(candidate)) is not None


def cone_test(generators: Sequence[Vector], candidate: Vector) -> ConeSide:
    return ConeSide.INSIDE if cone_contains(generators, candidate) else ConeSide.OUTSIDE


def cone_sign(generators: Sequence[Vector], candidate: Vector) -> ConeSign:
    """Locate candidate in the cone, in its negative, in both (only 0 for pointed cones) or neither"""
    if not any(candidate):
        return ConeSign.ZERO
    if cone_contains(generators, candidate):
        return ConeSign.POSITIVE
    if cone_contains(generators, [-Fraction(x) for x in candidate]):
        return ConeSign.NEGATIVE
    return ConeSign.NEITHER


def _at_least_one(constraint_rows: Sequence[Vector], free: bool) -> Optional[List[Fraction]]:
    """A vector c (free or c >= 0) with row . c >= 1 for every row"""
    if not constraint_rows:
        return []
    k = len(constraint_rows[0])
    rows = []
    for idx, row in enumerate(constraint_rows):
        coeffs = [Fraction(x) for x in row]
        if free:
            coeffs = coeffs + [-x for x in coeffs]
        slack = [Fraction(-1) if j == idx else Fraction(0) for j in range(len(constraint_rows))]
        rows.append(coeffs + slack)
    solution = find_nonnegative_solution(rows, [1] * len(constraint_rows))
    if solution is None:
        return None
    if free:
        return [solution[j] - solution[k + j] for j in range(k)]
    return solution[:k]


def pointing_functional(vectors: Sequence[Vector]) -> Optional[List[Fraction]]:
    """A linear functional taking value >= 1 on every vector, if one exists"""
    return _at_least_one(vectors, free=True)


def is_strictly_convex(generators: Sequence[Vector]) -> bool:
    """A finitely generated cone without zero generators is pointed iff a pointing functional exists"""
    if any(not any(g) for g in generators):
        return False
    return pointing_functional(generators) is not None


def separation_lp(weights: Sequence[Vector], coweights: Sequence[Vector]) -> Optional[List[Fraction]]:
    """
    Search for l = sum c_i weights_i with c_i >= 0 and <theta, l> >= 1 for every coweight theta.
    Returns the coefficients c, or None.
    """
    rows = [[_dot(theta, w) for w in weights] for theta in coweights]
    if not rows:
        return [Fraction(0)] * len(weights)
    if not weights:
        return None
    return _at_least_one(rows, free=False)
