"""
Tests for exact arithmetic in t and on the doubled coweight lattice
"""
from fractions import Fraction

import pytest

from sphericalis.exact_algebra import (
    TFrac,
    TorusLaurent,
    TorusRational,
    TPoly,
    ct_exact,
    ct_series,
    ct_series_factored,
    exact_divide,
    restrict_lattice,
    substitute_point,
    t_power,
    weyl_substitute,
)
from sphericalis.exceptions import (
    DimensionError,
    NotDivisible,
    NotTAdic,
    PoleAtPoint,
    SphericalisError,
)


def e(*v, coeff=1):
    return TorusLaurent.monomial(v, coeff)


def test_tpoly_arithmetic():
    """(1 + t)(1 - t) = 1 - t^2 and squares expand"""
    one_plus = TPoly({0: 1, 1: 1})
    one_minus = TPoly({0: 1, 1: -1})
    assert one_plus * one_minus == TPoly({0: 1, 2: -1})
    assert one_plus ** 2 == TPoly({0: 1, 1: 2, 2: 1})
    assert t_power(3) * t_power(-3) == TPoly.const(1)
    assert (one_plus - one_plus).is_zero()


def test_tpoly_divide_exact():
    """Exact division in Q[t, 1/t] and the non-divisible case"""
    assert TPoly({0: 1, 2: -1}).divide_exact(TPoly({0: 1, 1: -1})) == TPoly({0: 1, 1: 1})
    assert t_power(5, 3).divide_exact(t_power(2)) == t_power(3, 3)
    with pytest.raises(NotDivisible):
        TPoly({0: 1, 1: 1}).divide_exact(TPoly({0: 1, 1: -1}))
    with pytest.raises(ZeroDivisionError):
        TPoly.const(1).divide_exact(TPoly())


def test_tpoly_evaluate_and_pole():
    p = TPoly({-1: 1, 1: 1})
    assert p.evaluate(2) == Fraction(5, 2)
    with pytest.raises(PoleAtPoint):
        p.evaluate(0)


def test_tfrac_normalized():
    """Common factors cancel and the denominator has constant term 1"""
    f = TFrac(TPoly({0: 1, 2: -1}), TPoly({0: 2, 1: -2}))
    assert f.is_polynomial()
    assert f.as_tpoly() == TPoly({0: Fraction(1, 2), 1: Fraction(1, 2)})
    g = TFrac(TPoly.const(1), TPoly({0: 3, 1: 3}))
    assert g.den.coefficient(0) == 1
    assert g == TFrac(TPoly.const(Fraction(1, 3)), TPoly({0: 1, 1: 1}))


def test_tfrac_series():
    """1 / (1 - t) expands to 1 + t + t^2 + ..."""
    f = TFrac(TPoly.const(1), TPoly({0: 1, 1: -1}))
    assert f.series(3) == TPoly({0: 1, 1: 1, 2: 1, 3: 1})
    g = TFrac(TPoly({0: 1, 2: 1}), TPoly({0: 1, 2: -1}))
    assert g.series(4) == TPoly({0: 1, 2: 2, 4: 2})


def test_tfrac_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        TFrac(1, 0)


def test_binomial_factor():
    """binomial(v, sign, r2) is 1 - sign t^r2 e^v"""
    b = TorusLaurent.binomial((2,), -1, 2)
    assert b.coefficient((0,)) == TPoly.const(1)
    assert b.coefficient((2,)) == t_power(2)


def test_rank_mismatch():
    with pytest.raises(DimensionError):
        TorusLaurent(2, {(1,): 1})
    with pytest.raises(DimensionError):
        e(2) + e(2, 0)


def test_exact_divide():
    """(1 - e^4) / (1 - e^2) = 1 + e^2, while (1 + e^2) / (1 - e^2) is not a polynomial"""
    q = exact_divide(TorusLaurent.binomial((4,)), TorusLaurent.binomial((2,)))
    assert q == TorusLaurent.one(1) + e(2)
    with pytest.raises(NotDivisible):
        exact_divide(TorusLaurent.one(1) + e(2), TorusLaurent.binomial((2,)))
    with pytest.raises(ZeroDivisionError):
        exact_divide(e(2), TorusLaurent.zero(1))


def test_weyl_substitute():
    f = TorusLaurent.binomial((2, 0), 1, 2)
    swapped = weyl_substitute(f, [[0, 1], [1, 0]])
    assert swapped == TorusLaurent.binomial((0, 2), 1, 2)
    assert weyl_substitute(e(2), [[-1]]) == e(-2)
    with pytest.raises(SphericalisError):
        weyl_substitute(e(2), [[2]])


def test_restrict_lattice():
    """Exponents are pushed through the matrix; a shift twists by t^{(v . shift) / 2}"""
    assert restrict_lattice(e(1, 1), [[1, 1]]) == e(2)
    assert restrict_lattice(e(2, 0), [[1, 0]], t_shift=(2, 0)) == e(2, coeff=t_power(2))
    with pytest.raises(SphericalisError):
        restrict_lattice(e(1, 0), [[1, 0]], t_shift=(1, 0))


def test_at_delta():
    assert e(2).at_delta((2,)) == t_power(2)
    assert TorusLaurent.binomial((2,), 1, 2).at_delta((2,)) == TPoly({0: 1, 4: -1})


def test_torus_rational_equality():
    """Equality by cross-multiplication; values are unhashable"""
    r = TorusRational(TorusLaurent.binomial((4,)), TorusLaurent.binomial((2,)))
    assert r == TorusLaurent.one(1) + e(2)
    assert r.simplify().denominator == TorusLaurent.one(1)
    with pytest.raises(TypeError):
        hash(r)


def test_torus_rational_field_operations():
    a = TorusRational(TorusLaurent.one(1), TorusLaurent.binomial((2,)))
    b = TorusRational(e(2), TorusLaurent.binomial((2,)))
    assert a - b == TorusRational.one(1)
    assert (a / a) == TorusRational.one(1)
    with pytest.raises(ZeroDivisionError):
        a / TorusRational(TorusLaurent.zero(1))


def test_substitute_point():
    """1 - t^2 e^2 at t = 1/2 and e^{b} = 3"""
    f = TorusLaurent.binomial((2,), 1, 2)
    assert substitute_point(f, Fraction(1, 2), [3]) == Fraction(-5, 4)
    pole = TorusRational(TorusLaurent.one(1), TorusLaurent.binomial((1,)))
    with pytest.raises(PoleAtPoint):
        substitute_point(pole, 1, [1])


def test_ct_exact_geometric():
    """Constant term of (1 + e^-2 + e^-4) / (1 - t e^2) is 1 + t + t^2"""
    num = TorusLaurent.one(1) + e(-2) + e(-4)
    assert ct_exact(num, [(1, 1, (2,))], functional=[1]) == TPoly({0: 1, 1: 1, 2: 1})
    assert ct_exact(e(-2), [(-1, 1, (2,))], functional=[1]) == t_power(1, -1)


def test_ct_methods_agree():
    """The exact, series and factored constant terms coincide on a rank-two product"""
    num = TorusLaurent.one(2) + e(-2, 0) + e(-2, -2)
    factors = [(1, 1, (2, 0)), (1, 2, (0, 2)), (-1, 1, (2, 2))]
    den = TorusLaurent.one(2)
    for s, r2, theta in factors:
        den = den * TorusLaurent.binomial(theta, s, r2)
    exact = ct_exact(num, factors, functional=[1, 1])
    assert ct_series(TorusRational(num, den), 6) == exact.truncate(6)
    assert ct_series_factored(num, factors, 6) == exact.truncate(6)


def test_ct_series_requires_tadic():
    with pytest.raises(NotTAdic):
        ct_series_factored(TorusLaurent.one(1), [(1, 0, (2,))], 3)
    with pytest.raises(NotTAdic):
        ct_series(TorusRational(TorusLaurent.one(1), TorusLaurent.binomial((2,))), 3)


def random_laurent(rng, rank=2, terms=3):
    f = TorusLaurent.zero(rank)
    for _ in range(terms):
        v = tuple(rng.randint(-2, 2) for _ in range(rank))
        coeff = TPoly({rng.randint(0, 2): rng.randint(-3, 3), rng.randint(-1, 1): rng.randint(1, 3)})
        f = f + TorusLaurent.monomial(v, coeff)
    return f


def test_random_ring_laws(rng):
    """Commutativity, associativity and distributivity on small random elements"""
    for _ in range(10):
        a, b, c = (random_laurent(rng) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()


def test_random_exact_divide(rng):
    """(f * g) / g recovers f whenever g is nonzero"""
    checked = 0
    for _ in range(20):
        f, g = random_laurent(rng), random_laurent(rng, terms=2)
        if g.is_zero():
            continue
        assert exact_divide(f * g, g) == f
        checked += 1
    assert checked > 0
