"""
Tests for exact cone membership, pointedness and separation
"""
from fractions import Fraction

from sphericalis.cones import (
    ConeSide,
    ConeSign,
    cone_contains,
    cone_sign,
    cone_test,
    find_nonnegative_solution,
    is_strictly_convex,
    pointing_functional,
    separation_lp,
)


def test_nonnegative_solution():
    """x + y = 3, x - y = 1 has the solution (2, 1)"""
    assert find_nonnegative_solution([[1, 1], [1, -1]], [3, 1]) == [Fraction(2), Fraction(1)]
    assert find_nonnegative_solution([[1, 1]], [-1]) is None


def test_cone_membership():
    quadrant = [(1, 0), (0, 1)]
    assert cone_contains(quadrant, (2, Fraction(1, 3)))
    assert not cone_contains(quadrant, (1, -1))
    assert cone_contains([], (0, 0))
    assert cone_test(quadrant, (-1, 0)) == ConeSide.OUTSIDE


def test_cone_sign():
    gens = [(1, 1), (1, -1)]
    assert cone_sign(gens, (3, 1)) == ConeSign.POSITIVE
    assert cone_sign(gens, (-2, 0)) == ConeSign.NEGATIVE
    assert cone_sign(gens, (0, 1)) == ConeSign.NEITHER
    assert cone_sign(gens, (0, 0)) == ConeSign.ZERO


def test_pointing_functional():
    """A functional with value >= 1 on every vector exists only for pointed families"""
    vectors = [(2, 0), (0, 2), (2, 2), (1, -1)]
    ell = pointing_functional(vectors)
    assert ell is not None
    assert all(sum(Fraction(a) * b for a, b in zip(ell, v)) >= 1 for v in vectors)
    assert pointing_functional([(1, 0), (-1, 0)]) is None


def test_strict_convexity():
    assert is_strictly_convex([(1, 0), (1, 1)])
    assert not is_strictly_convex([(1, 0), (-1, 1), (0, -1)])
    assert not is_strictly_convex([(0, 0)])


def test_separation_lp():
    """A nonnegative combination of weights pairing to >= 1 with every coweight"""
    weights = [(1, 0), (0, 1)]
    coweights = [(2, 0), (1, 1)]
    c = separation_lp(weights, coweights)
    assert c is not None and all(x >= 0 for x in c)
    ell = [sum(ci * w[k] for ci, w in zip(c, weights)) for k in range(2)]
    assert all(sum(a * b for a, b in zip(ell, th)) >= 1 for th in coweights)
    assert separation_lp(weights, [(-1, 0)]) is None
    assert separation_lp(weights, []) == [0, 0]
