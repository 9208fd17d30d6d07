"""Exact scalars and finitely supported vectors.

The ground field is the rationals, realised by fractions.Fraction: every
value is kept in lowest terms with a positive denominator and arithmetic
never rounds.  Vectors are sparse maps from basis indices to scalars; zero
coefficients are never stored, so equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# "p/q" or "p", optional leading minus, nothing else.
_SCALAR_RE = re.compile(r"-?\d+(/\d+)?")


class ScalarFormatError(ValueError):
    """Raised for text that is not a valid exact rational."""


def parse_scalar(text: str) -> Fraction:
    """Parse "p/q" or "p" exactly.

    A leading ASCII hyphen or Unicode minus (U+2212) is accepted; a zero
    denominator is rejected.
    """
    normalized = text.strip().replace("−", "-")
    if not _SCALAR_RE.fullmatch(normalized):
        raise ScalarFormatError(f"invalid scalar {text!r}")
    numerator, _, denominator = normalized.partition("/")
    if denominator:
        if int(denominator) == 0:
            raise ScalarFormatError(f"invalid scalar {text!r}: zero denominator")
        return Fraction(int(numerator), int(denominator))
    return Fraction(int(numerator))


def format_scalar(value: Fraction) -> str:
    """Lowest terms, positive denominator, "/1" suppressed."""
    return str(value)


def as_scalar(value) -> Fraction:
    """Coerce an int or Fraction; anything inexact is a type error."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact scalar required, got {type(value).__name__}")


class FreeVector:
    """Finitely supported map from basis indices to scalars.

    Any hashable, sortable index type works: integers for the Witt basis,
    integer tuples for partition-indexed modules.  Instances are treated as
    immutable; every operation returns a new vector.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping | Iterable | None = None):
        table: dict = {}
        if coeffs is not None:
            items = coeffs.items() if hasattr(coeffs, "items") else coeffs
            for index, raw in items:
                value = as_scalar(raw)
                if not value:
                    continue
                total = table.get(index, ZERO) + value
                if total:
                    table[index] = total
                else:
                    del table[index]
        self._coeffs = table

    @classmethod
    def _wrap(cls, table: dict) -> "FreeVector":
        vector = cls.__new__(cls)
        vector._coeffs = table
        return vector

    @classmethod
    def zero(cls) -> "FreeVector":
        return cls._wrap({})

    @classmethod
    def basis(cls, index, coeff=ONE) -> "FreeVector":
        coeff = as_scalar(coeff)
        return cls._wrap({index: coeff} if coeff else {})

    @classmethod
    def linear_combination(cls, pairs: Iterable[tuple]) -> "FreeVector":
        """Sum of coeff * vector over (coeff, FreeVector) pairs."""
        table: dict = {}
        for coeff, vector in pairs:
            if not coeff:
                continue
            for index, value in vector._coeffs.items():
                total = table.get(index, ZERO) + coeff * value
                if total:
                    table[index] = total
                else:
                    del table[index]
        return cls._wrap(table)

    def coeff(self, index) -> Fraction:
        return self._coeffs.get(index, ZERO)

    def items(self) -> list[tuple]:
        return sorted(self._coeffs.items())

    def support(self) -> list:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        table = dict(self._coeffs)
        for index, value in other._coeffs.items():
            total = table.get(index, ZERO) + value
            if total:
                table[index] = total
            else:
                del table[index]
        return FreeVector._wrap(table)

    def __sub__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return FreeVector._wrap({index: -value for index, value in self._coeffs.items()})

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        scalar = as_scalar(scalar)
        if not scalar:
            return FreeVector.zero()
        return FreeVector._wrap({index: scalar * value for index, value in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __repr__(self):
        return f"FreeVector({dict(self.items())!r})"


def linear_extend(basis_map: Callable, vector: FreeVector) -> FreeVector:
    """Apply a basis-indexed map index -> FreeVector linearly."""
    return FreeVector.linear_combination(
        (coeff, basis_map(index)) for index, coeff in vector._coeffs.items()
    )


def bilinear_extend(pair_map: Callable, left: FreeVector, right: FreeVector, zero):
    """Extend a basis-pair map bilinearly to vectors.

    zero fixes the target module: FreeVector.zero() for vector-valued maps,
    Fraction(0) for scalar-valued ones.
    """
    acc = zero
    for i, a in left._coeffs.items():
        for j, b in right._coeffs.items():
            acc = acc + (a * b) * pair_map(i, j)
    return acc


def cyclic_triple_sum(mu: Callable, nu: Callable, x: FreeVector, y: FreeVector,
                      z: FreeVector, zero):
    """mu(X, nu(Y,Z)) + mu(Y, nu(Z,X)) + mu(Z, nu(X,Y)).

    mu and nu are basis-pair maps, extended bilinearly.  With both equal to a
    bracket this is the Jacobi defect; with mu a scalar-valued 2-cochain and
    nu a bracket it is the cocycle-identity defect.  zero fixes mu's target.
    """
    def nu_vec(a, b):
        return bilinear_extend(nu, a, b, FreeVector.zero())

    return (bilinear_extend(mu, x, nu_vec(y, z), zero)
            + bilinear_extend(mu, y, nu_vec(z, x), zero)
            + bilinear_extend(mu, z, nu_vec(x, y), zero))
