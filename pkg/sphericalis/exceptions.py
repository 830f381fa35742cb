"""
Exceptions
Error hierarchy of the sphericalis engine.
"""
from typing import Optional


class SphericalisError(Exception):
    "Base class for every error raised by the engine."


class DimensionError(SphericalisError):
    "Raised when lattice ranks of two operands disagree."


class NotDivisible(SphericalisError):
    "Raised when an exact division leaves a nonzero remainder."


class PoleAtPoint(SphericalisError):
    "Raised when a denominator vanishes at the substitution point."


class NotPointed(SphericalisError):
    "Raised when the supplied cone certificate does not make the denominators pointed."


class NotTAdic(SphericalisError):
    "Raised when a denominator factor does not expand t-adically."


class WeylCapExceeded(SphericalisError):
    "Raised when reflection closure exceeds the configured cap."


class CartanError(SphericalisError):
    "Raised when simple roots and coroots do not form a generalized Cartan matrix."


class DatumParseError(SphericalisError):
    "Raised when a datum or path document violates its schema."

    def __init__(self, message: str, field_path: Optional[str] = None):
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}" if field_path else message)


class ConsistencyError(SphericalisError):
    "Raised when two independent computations of the same quantity disagree."


class NotAntidominant(SphericalisError):
    "Raised when a coweight pairs positively with a spherical root."


class TwistedDatumError(SphericalisError):
    "Raised when the constant c is requested for twisted or non-affine data."


class ThetaCapExceeded(SphericalisError):
    "Raised when the subset expansion over the positive theta triples is too large."


class PathError(SphericalisError):
    "Raised for malformed or non-reduced orbit paths."


class OracleError(SphericalisError):
    "Raised for unsupported or divergent oracle parameters."


class UnknownFixture(SphericalisError):
    "Raised when a fixture name is not in the catalog."
