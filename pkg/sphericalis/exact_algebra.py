"""
Exact Algebra
Laurent polynomials in t (t = q^{-1/2}), rational functions in t, Laurent polynomials
on the doubled coweight lattice with coefficients in t, their quotients, substitutions
and constant-term extraction.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from sphericalis.exceptions import DimensionError, NotDivisible, NotPointed, NotTAdic, PoleAtPoint, SphericalisError

logger = logging.getLogger(__name__)

QRat = Fraction
Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

_T = sympy.Symbol("t")


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def graded_lex_key(v: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Graded-lexicographic sort key: total degree first, then coordinates in index order"""
    return (sum(v), tuple(v))


# --- POLYNOMIALS IN t ---

class TPoly:
    """Laurent polynomial in t with rational coefficients, stored as {degree: coefficient}"""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, Scalar]] = None):
        cleaned: Dict[int, Fraction] = {}
        for deg, c in (coeffs or {}).items():
            c = _frac(c)
            if c:
                cleaned[int(deg)] = c
        self._coeffs = cleaned

    @classmethod
    def const(cls, value: Scalar) -> "TPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "TPoly":
        return cls({degree: coeff})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def min_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return min(self._coeffs)

    def max_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self._coeffs)

    def coefficient(self, degree: int) -> Fraction:
        return self._coeffs.get(degree, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def constant_value(self) -> Optional[Fraction]:
        """The rational value if the polynomial is a constant, else None"""
        if not self._coeffs:
            return Fraction(0)
        if set(self._coeffs) == {0}:
            return self._coeffs[0]
        return None

    def __add__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out.get(d, 0) + c
        return TPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TPoly({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[int, Fraction] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return TPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials in t can be inverted")
            (d, c), = self._coeffs.items()
            return TPoly({d * n: c ** n})
        result = TPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def shift(self, k: int) -> "TPoly":
        """Multiply by t^k"""
        return TPoly({d + k: c for d, c in self._coeffs.items()})

    def truncate(self, order: int) -> "TPoly":
        """Drop every term of t-degree above order"""
        return TPoly({d: c for d, c in self._coeffs.items() if d <= order})

    def evaluate(self, t_value: Scalar) -> Fraction:
        t_value = _frac(t_value)
        total = Fraction(0)
        for d, c in self._coeffs.items():
            if d < 0 and t_value == 0:
                raise PoleAtPoint("negative power of t evaluated at t = 0")
            total += c * t_value ** d
        return total

    def substitute_power(self, k: int) -> "TPoly":
        """Replace t by t^k"""
        return TPoly({d * k: c for d, c in self._coeffs.items()})

    def divide_exact(self, other: "TPoly") -> "TPoly":
        """Exact quotient in the ring of Laurent polynomials in t"""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return TPoly()
        if other.is_monomial():
            (d, c), = other._coeffs.items()
            return TPoly({e - d: v / c for e, v in self._coeffs.items()})
        num, a = _to_sympy(self)
        den, b = _to_sympy(other)
        quotient, remainder = num.div(den)
        if not remainder.is_zero:
            raise NotDivisible(f"{self} is not divisible by {other} in Q[t, 1/t]")
        return _from_sympy(quotient).shift(a - b)

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for d in sorted(self._coeffs):
            c = self._coeffs[d]
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if d == 0:
                body = f"{mag}"
            else:
                power = "t" if d == 1 else f"t^{d}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"TPoly({self})"


def _as_tpoly(value):
    if isinstance(value, TPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return TPoly.const(value)
    return NotImplemented


def t_power(k: int, coeff: Scalar = 1) -> TPoly:
    return TPoly.monomial(k, coeff)


def _to_sympy(p: TPoly) -> Tuple[sympy.Poly, int]:
    """Write p = t^shift * P(t) with P a polynomial with nonzero constant term"""
    shift = p.min_degree()
    top = p.max_degree()
    coeffs = [p.coefficient(d) for d in range(top, shift - 1, -1)]
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], _T, domain=sympy.QQ)
    return poly, shift


def _from_sympy(poly: sympy.Poly) -> TPoly:
    out = {}
    for (deg,), c in poly.terms():
        out[deg] = _frac(c)
    return TPoly(out)


# --- RATIONAL FUNCTIONS IN t ---

class TFrac:
    """Rational function in t kept in lowest terms with a denominator normalized to D(0) = 1"""

    __slots__ = ("num", "den")

    def __init__(self, num: Union[TPoly, Scalar], den: Union[TPoly, Scalar] = 1):
        num = _as_tpoly(num)
        den = _as_tpoly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def from_tpoly(cls, p: TPoly) -> "TFrac":
        return cls(p, TPoly.const(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_monomial()

    def as_tpoly(self) -> TPoly:
        if not self.is_polynomial():
            raise NotDivisible(f"{self} is not a Laurent polynomial in t")
        return self.num.divide_exact(self.den)

    def __add__(self, other):
        other = _as_tfrac(other)
        if other is NotImplemented:
            return NotImplemented
        return TFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return TFrac(-self.num, self.den)

    def __sub__(self, other):
        other = _as_tfrac(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_tfrac(other)
        if other is NotImplemented:
            return NotImplemented
        return TFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_tfrac(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return TFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_tfrac(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return TFrac(self.den ** (-n), self.num ** (-n))
        return TFrac(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = _as_tfrac(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, t_value: Scalar) -> Fraction:
        den = self.den.evaluate(t_value)
        if den == 0:
            raise PoleAtPoint(f"{self} has a pole at t = {t_value}")
        return self.num.evaluate(t_value) / den

    def substitute_power(self, k: int) -> "TFrac":
        return TFrac(self.num.substitute_power(k), self.den.substitute_power(k))

    def series(self, order: int) -> TPoly:
        """t-adic expansion truncated after t^order"""
        if self.num.is_zero():
            return TPoly()
        d0 = self.den.min_degree()
        lead = self.den.coefficient(d0)
        rest = {d - d0: -c / lead for d, c in self.den.items() if d != d0}
        num = self.num.shift(-d0) * (1 / lead)
        low = num.min_degree()
        # 1/den = sum_k rest^k, computed degree by degree
        inverse: Dict[int, Fraction] = {0: Fraction(1)}
        for d in range(1, order - low + 1):
            acc = Fraction(0)
            for e, c in rest.items():
                if e <= d:
                    acc += c * inverse.get(d - e, 0)
            inverse[d] = acc
        return (num * TPoly(inverse)).truncate(order)

    def __str__(self):
        if self.den == TPoly.const(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"TFrac({self})"


def _as_tfrac(value):
    if isinstance(value, TFrac):
        return value
    if isinstance(value, TPoly):
        return TFrac(value)
    if isinstance(value, (int, Fraction)):
        return TFrac(TPoly.const(value))
    return NotImplemented


def _normalize(num: TPoly, den: TPoly) -> Tuple[TPoly, TPoly]:
    if num.is_zero():
        return TPoly(), TPoly.const(1)
    n_poly, n_shift = _to_sympy(num)
    d_poly, d_shift = _to_sympy(den)
    g = n_poly.gcd(d_poly)
    if g.degree() > 0:
        n_poly = n_poly.quo(g)
        d_poly = d_poly.quo(g)
    scale = d_poly.eval(0)
    n_tp = _from_sympy(n_poly) * TPoly.const(1 / _frac(scale))
    d_tp = _from_sympy(d_poly) * TPoly.const(1 / _frac(scale))
    return n_tp.shift(n_shift - d_shift), d_tp


# --- LAURENT POLYNOMIALS ON THE DOUBLED LATTICE ---

class TorusLaurent:
    """
    Laurent polynomial in torus monomials e^{v}, v an exponent vector of the doubled
    lattice (the key v stands for the coweight v/2), with TPoly coefficients.
    """

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Optional[Mapping[Sequence[int], Union[TPoly, Scalar]]] = None):
        self.rank = rank
        cleaned: Dict[Exponent, TPoly] = {}
        for v, c in (terms or {}).items():
            v = tuple(int(x) for x in v)
            if len(v) != rank:
                raise DimensionError(f"exponent {v} has length {len(v)}, expected {rank}")
            c = _as_tpoly(c)
            if v in cleaned:
                c = cleaned[v] + c
            if c.is_zero():
                cleaned.pop(v, None)
            else:
                cleaned[v] = c
        self._terms = cleaned

    @classmethod
    def zero(cls, rank: int) -> "TorusLaurent":
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> "TorusLaurent":
        return cls(rank, {(0,) * rank: 1})

    @classmethod
    def constant(cls, rank: int, value: Union[TPoly, Scalar]) -> "TorusLaurent":
        return cls(rank, {(0,) * rank: value})

    @classmethod
    def monomial(cls, v: Sequence[int], coeff: Union[TPoly, Scalar] = 1) -> "TorusLaurent":
        return cls(len(v), {tuple(v): coeff})

    @classmethod
    def binomial(cls, v: Sequence[int], sign: int = 1, r2: int = 0) -> "TorusLaurent":
        """The factor 1 - sign * t^{r2} e^{v}"""
        rank = len(v)
        return cls(rank, {(0,) * rank: 1}) - cls(rank, {tuple(v): t_power(r2, sign)})

    @property
    def terms(self) -> Dict[Exponent, TPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def exponents(self) -> List[Exponent]:
        return sorted(self._terms, key=graded_lex_key)

    def coefficient(self, v: Sequence[int]) -> TPoly:
        return self._terms.get(tuple(v), TPoly())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other: "TorusLaurent"):
        if self.rank != other.rank:
            raise DimensionError(f"lattice ranks {self.rank} and {other.rank} do not match")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for v, c in other._terms.items():
            out[v] = out[v] + c if v in out else c
        return TorusLaurent(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return TorusLaurent(self.rank, {v: -c for v, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        out: Dict[Exponent, TPoly] = {}
        for v1, c1 in self._terms.items():
            for v2, c2 in other._terms.items():
                v = tuple(a + b for a, b in zip(v1, v2))
                prod = c1 * c2
                out[v] = out[v] + prod if v in out else prod
        return TorusLaurent(self.rank, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = TorusLaurent.one(self.rank)
        for _ in range(n):
            result = result * self
        return result

    def _coerce(self, other):
        if isinstance(other, TorusLaurent):
            return other
        if isinstance(other, (int, Fraction, TPoly)):
            return TorusLaurent.constant(self.rank, other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        return hash((self.rank, frozenset(self._terms.items())))

    def leading_term(self) -> Tuple[Exponent, TPoly]:
        v = max(self._terms, key=graded_lex_key)
        return v, self._terms[v]

    def trailing_term(self) -> Tuple[Exponent, TPoly]:
        v = min(self._terms, key=graded_lex_key)
        return v, self._terms[v]

    def scale_t(self, k: int) -> "TorusLaurent":
        return TorusLaurent(self.rank, {v: c.shift(k) for v, c in self._terms.items()})

    def map_exponents(self, fn: Callable[[Exponent], Sequence[int]], rank: Optional[int] = None) -> "TorusLaurent":
        rank = self.rank if rank is None else rank
        out: Dict[Exponent, TPoly] = {}
        for v, c in self._terms.items():
            w = tuple(fn(v))
            out[w] = out[w] + c if w in out else c
        return TorusLaurent(rank, out)

    def reflect(self) -> "TorusLaurent":
        """The function chi -> f(chi^{-1}): every exponent negated"""
        return self.map_exponents(lambda v: tuple(-x for x in v))

    def at_delta(self, rho2: Sequence[int]) -> TPoly:
        """Evaluate at the point e^{v} -> t^{(v . rho2) / 2}, rho2 the doubled rho pairing functional"""
        total = TPoly()
        for v, c in self._terms.items():
            total = total + c.shift(_delta_exponent(v, rho2))
        return total

    def to_serializable(self) -> List[List]:
        return [[list(v), str(self._terms[v])] for v in self.exponents()]

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for v in self.exponents():
            c = self._terms[v]
            mono = "" if not any(v) else "e^(" + ",".join(str(x) for x in v) + ")"
            if not mono:
                parts.append(f"({c})")
            elif c == TPoly.const(1):
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TorusLaurent({self})"


def _delta_exponent(v: Sequence[int], rho2: Sequence[int]) -> int:
    pairing = sum(a * b for a, b in zip(v, rho2))
    if pairing % 2:
        raise SphericalisError(f"exponent {tuple(v)} pairs to a half-integral power of t at the delta point")
    return pairing // 2


def poly_arith(a: TorusLaurent, b: TorusLaurent, op: str) -> TorusLaurent:
    """Ring operation selected by name: add, sub or mul"""
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation: {op}")


def exact_divide(num: TorusLaurent, den: TorusLaurent) -> TorusLaurent:
    """
    Exact quotient num/den by peeling graded-lex leading terms.

    The quotient of an exact division has trailing monomial trail(num) - trail(den);
    once the remainder's candidate monomial drops below that bound the division cannot
    be exact and NotDivisible is raised.
    """
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("exact_divide by the zero Laurent polynomial")
    rank = num.rank
    if num.is_zero():
        return TorusLaurent.zero(rank)
    lead_v, lead_c = den.leading_term()
    floor_v = tuple(a - b for a, b in zip(num.trailing_term()[0], den.trailing_term()[0]))
    floor_key = graded_lex_key(floor_v)
    quotient: Dict[Exponent, TPoly] = {}
    remainder = num
    while not remainder.is_zero():
        rv, rc = remainder.leading_term()
        qv = tuple(a - b for a, b in zip(rv, lead_v))
        if graded_lex_key(qv) < floor_key:
            raise NotDivisible("nonzero remainder in exact division of torus Laurent polynomials")
        qc = rc.divide_exact(lead_c)
        quotient[qv] = qc
        remainder = remainder - TorusLaurent(rank, {qv: qc}) * den
    return TorusLaurent(rank, quotient)


def weyl_substitute(f: Union[TorusLaurent, "TorusRational"], action: Sequence[Sequence[int]]):
    """Replace every exponent v by action . v; the action must be an invertible integer matrix"""
    matrix = tuple(tuple(int(x) for x in row) for row in action)
    _check_unimodular(matrix)
    if isinstance(f, TorusRational):
        return TorusRational(weyl_substitute(f.numerator, matrix), weyl_substitute(f.denominator, matrix))
    if len(matrix) != f.rank:
        raise DimensionError(f"action of size {len(matrix)} on a rank {f.rank} lattice")
    return f.map_exponents(lambda v: tuple(sum(row[j] * v[j] for j in range(len(v))) for row in matrix))


@lru_cache(maxsize=4096)
def _check_unimodular(matrix: Tuple[Tuple[int, ...], ...]) -> None:
    det = sympy.Matrix(matrix).det() if matrix else 1
    if det not in (1, -1):
        raise SphericalisError(f"lattice action with determinant {det} is not invertible over Z")


def restrict_lattice(
    f: Union[TorusLaurent, "TorusRational"],
    matrix: Sequence[Sequence[int]],
    t_shift: Optional[Sequence[int]] = None,
):
    """
    Push exponents through an integer (possibly non-invertible) lattice map.
    With t_shift every monomial e^{v} also picks up t^{(v . t_shift) / 2}, i.e. the
    character is moved by a fixed unramified twist before restricting.
    """
    matrix = [tuple(int(x) for x in row) for row in matrix]
    if isinstance(f, TorusRational):
        return TorusRational(
            restrict_lattice(f.numerator, matrix, t_shift),
            restrict_lattice(f.denominator, matrix, t_shift),
        )
    if matrix and len(matrix[0]) != f.rank:
        raise DimensionError(f"restriction expects rank {len(matrix[0])}, got {f.rank}")
    out: Dict[Exponent, TPoly] = {}
    for v, c in f.items():
        w = tuple(sum(row[j] * v[j] for j in range(len(v))) for row in matrix)
        if t_shift is not None:
            c = c.shift(_delta_exponent(v, t_shift))
        out[w] = out[w] + c if w in out else c
    return TorusLaurent(len(matrix), out)


# --- RATIONAL FUNCTIONS ON THE TORUS ---

class TorusRational:
    """Quotient of two TorusLaurent values; equality by cross-multiplication"""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: TorusLaurent, denominator: Optional[TorusLaurent] = None):
        if denominator is None:
            denominator = TorusLaurent.one(numerator.rank)
        numerator._check(denominator)
        if denominator.is_zero():
            raise ZeroDivisionError("TorusRational with zero denominator")
        self.numerator = numerator
        self.denominator = denominator

    @property
    def rank(self) -> int:
        return self.numerator.rank

    @classmethod
    def one(cls, rank: int) -> "TorusRational":
        return cls(TorusLaurent.one(rank))

    def _coerce(self, other):
        if isinstance(other, TorusRational):
            return other
        if isinstance(other, TorusLaurent):
            return TorusRational(other)
        if isinstance(other, (int, Fraction, TPoly)):
            return TorusRational(TorusLaurent.constant(self.rank, other))
        if isinstance(other, TFrac):
            return TorusRational(TorusLaurent.constant(self.rank, other.num), TorusLaurent.constant(self.rank, other.den))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.denominator == other.denominator:
            return TorusRational(self.numerator + other.numerator, self.denominator)
        return TorusRational(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return TorusRational(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TorusRational(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.numerator.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return TorusRational(self.numerator * other.denominator, self.denominator * other.numerator)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def simplify(self) -> "TorusRational":
        """Cancel the denominator when it divides the numerator exactly"""
        try:
            return TorusRational(exact_divide(self.numerator, self.denominator))
        except NotDivisible:
            return self

    def reflect(self) -> "TorusRational":
        return TorusRational(self.numerator.reflect(), self.denominator.reflect())

    def at_delta(self, rho2: Sequence[int]) -> TFrac:
        den = self.denominator.at_delta(rho2)
        if den.is_zero():
            raise PoleAtPoint("denominator vanishes at the delta point")
        return TFrac(self.numerator.at_delta(rho2), den)

    def to_serializable(self) -> Dict[str, List]:
        return {"numerator": self.numerator.to_serializable(), "denominator": self.denominator.to_serializable()}

    def __str__(self):
        if self.denominator == TorusLaurent.one(self.rank):
            return str(self.numerator)
        return f"[{self.numerator}] / [{self.denominator}]"

    def __repr__(self):
        return f"TorusRational({self})"


def substitute_point(
    f: Union[TorusLaurent, TorusRational],
    t_value: Scalar,
    monomial_values: Sequence[Scalar],
) -> Fraction:
    """
    Exact value of f at t = t_value and e^{b_i} = monomial_values[i], where b_i runs over
    the basis of the doubled lattice.
    """
    values = [_frac(x) for x in monomial_values]

    def laurent_value(p: TorusLaurent) -> Fraction:
        if len(values) != p.rank:
            raise DimensionError(f"{len(values)} basis values for a rank {p.rank} lattice")
        total = Fraction(0)
        for v, c in p.items():
            term = c.evaluate(t_value)
            for x, k in zip(values, v):
                if k:
                    if x == 0:
                        raise PoleAtPoint("monomial evaluated at zero")
                    term *= x ** k
            total += term
        return total

    if isinstance(f, TorusLaurent):
        return laurent_value(f)
    den = laurent_value(f.denominator)
    if den == 0:
        raise PoleAtPoint(f"denominator of {f} vanishes at the substitution point")
    return laurent_value(f.numerator) / den


# --- CONSTANT TERMS ---

DenominatorFactor = Tuple[int, int, Sequence[int]]


def ct_exact(
    numerator: TorusLaurent,
    pointed_denominators: Iterable[DenominatorFactor],
    functional: Optional[Sequence[Scalar]] = None,
) -> TPoly:
    """
    Exact constant term of numerator / prod (1 - sign t^{r2} e^{theta}) expanded as geometric
    series. The thetas must be pointed: functional(theta) >= 1 for all of them. Without a
    supplied functional one is searched for by linear programming.
    """
    factors = [(int(s), int(r2), tuple(theta)) for s, r2, theta in pointed_denominators]
    rank = numerator.rank
    for _, _, theta in factors:
        if len(theta) != rank:
            raise DimensionError(f"denominator exponent {theta} does not have rank {rank}")
    if not factors:
        return numerator.coefficient((0,) * rank)
    if functional is None:
        from sphericalis.cones import pointing_functional

        functional = pointing_functional([theta for _, _, theta in factors])
        if functional is None:
            raise NotPointed("denominator exponents do not lie in a pointed cone")
    ell = [_frac(x) for x in functional]
    weights = [sum(a * b for a, b in zip(ell, theta)) for _, _, theta in factors]
    for (s, r2, theta), wgt in zip(factors, weights):
        if wgt < 1:
            raise NotPointed(f"functional gives {wgt} < 1 on exponent {theta}")

    result = TPoly()
    zero = (0,) * rank
    for a, coeff in numerator.items():
        target = tuple(-x for x in a)
        budget = sum(x * y for x, y in zip(ell, target))
        if budget < 0:
            continue
        for ks in _bounded_compositions(weights, budget):
            reached = tuple(sum(k * th[i] for k, (_, _, th) in zip(ks, factors)) for i in range(rank))
            if reached != target:
                continue
            term = coeff
            for k, (s, r2, _) in zip(ks, factors):
                if k:
                    term = term * t_power(r2 * k, s ** k)
            result = result + term
    logger.debug(f"ct_exact over {len(numerator)} numerator terms and {len(factors)} factors")
    return result


def _bounded_compositions(weights: Sequence[Fraction], budget: Fraction):
    """All tuples k >= 0 with sum k_i * weights_i <= budget"""
    def rec(i, remaining, prefix):
        if i == len(weights):
            yield tuple(prefix)
            return
        k = 0
        while k * weights[i] <= remaining:
            prefix.append(k)
            yield from rec(i + 1, remaining - k * weights[i], prefix)
            prefix.pop()
            k += 1

    yield from rec(0, budget, [])


def _numerator_layers(f: TorusLaurent) -> List[Tuple[Exponent, int, Fraction]]:
    return [(v, d, c) for v, poly in f.items() for d, c in poly.items()]


def _collect_constant_term(
    numerator_terms: List[Tuple[Exponent, int, Fraction]],
    series: Dict[int, Dict[Exponent, Fraction]],
    order: int,
) -> TPoly:
    out: Dict[int, Fraction] = {}
    for v, d, c in numerator_terms:
        target = tuple(-x for x in v)
        for e, layer in series.items():
            if d + e > order:
                continue
            hit = layer.get(target)
            if hit:
                out[d + e] = out.get(d + e, 0) + c * hit
    return TPoly(out)


def ct_series(f: TorusRational, order: int) -> TPoly:
    """
    Constant term of the t-adic expansion of f, truncated after t^order.

    The denominator is written as m(1 - E) with m its lowest t-degree part, which must be a
    single monomial; every term of E then has positive t-degree.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    den = f.denominator
    low = min(c.min_degree() for _, c in den.items())
    lowest = [(v, c.coefficient(low)) for v, c in den.items() if c.coefficient(low)]
    if len(lowest) != 1:
        raise NotTAdic(f"lowest t-degree part of the denominator has {len(lowest)} monomials")
    m_v, m_c = lowest[0]
    rank = f.rank
    # E = 1 - den / m
    expansion: List[Tuple[int, Exponent, Fraction]] = []
    for v, poly in den.items():
        shifted = tuple(a - b for a, b in zip(v, m_v))
        for d, c in poly.items():
            if shifted == (0,) * rank and d == low:
                continue
            if d - low <= 0:
                raise NotTAdic("denominator has a term of non-positive t-degree beyond its lowest monomial")
            expansion.append((d - low, shifted, -c / m_c))
    num_terms = [
        (tuple(a - b for a, b in zip(v, m_v)), d - low, c / m_c)
        for v, d, c in _numerator_layers(f.numerator)
    ]
    if not num_terms:
        return TPoly()
    min_deg = min(d for _, d, _ in num_terms)
    depth = order - min_deg
    series: Dict[int, Dict[Exponent, Fraction]] = {0: {(0,) * rank: Fraction(1)}}
    for d in range(1, depth + 1):
        layer: Dict[Exponent, Fraction] = {}
        for e, shift, c in expansion:
            prev = series.get(d - e)
            if not prev:
                continue
            for v, x in prev.items():
                w = tuple(a + b for a, b in zip(v, shift))
                layer[w] = layer.get(w, 0) + c * x
        series[d] = {v: x for v, x in layer.items() if x}
    return _collect_constant_term(num_terms, series, order)


def ct_series_factored(numerator: TorusLaurent, factors: Iterable[DenominatorFactor], order: int) -> TPoly:
    """
    Truncated constant term of numerator / prod (1 - sign t^{r2} e^{theta}) with every r2 >= 1.

    Division by one factor is the linear recurrence S'[d, v] = S[d, v] + sign S'[d - r2, v - theta],
    so the whole product costs one pass per factor over the truncated series.
    """
    factors = [(int(s), int(r2), tuple(theta)) for s, r2, theta in factors]
    rank = numerator.rank
    for s, r2, theta in factors:
        if r2 < 1:
            raise NotTAdic(f"factor 1 - ({s}) t^{r2} e^{theta} does not expand t-adically")
    num_terms = _numerator_layers(numerator)
    if not num_terms:
        return TPoly()
    min_deg = min(d for _, d, _ in num_terms)
    depth = order - min_deg
    reach = max(abs(x) for v, _, _ in num_terms for x in v) if rank else 0
    slope = max((Fraction(max((abs(x) for x in th), default=0), r2) for _, r2, th in factors), default=Fraction(0))

    def alive(d: int, v: Exponent) -> bool:
        # later factors move the exponent by at most slope per unit of t-degree
        return max((abs(x) for x in v), default=0) <= (depth - d) * slope + reach

    series: Dict[int, Dict[Exponent, Fraction]] = {0: {(0,) * rank: Fraction(1)}}
    for s, r2, theta in factors:
        updated: Dict[int, Dict[Exponent, Fraction]] = {}
        for d in range(0, depth + 1):
            layer = dict(series.get(d, {}))
            prev = updated.get(d - r2)
            if prev:
                for v, x in prev.items():
                    w = tuple(a + b for a, b in zip(v, theta))
                    layer[w] = layer.get(w, 0) + s * x
            layer = {v: x for v, x in layer.items() if x and alive(d, v)}
            if layer:
                updated[d] = layer
        series = updated
    logger.debug(f"ct_series_factored kept {sum(len(l) for l in series.values())} series terms")
    return _collect_constant_term(num_terms, series, order)
