"""Central extensions built from 2-cocycles.

An extension element is a pair (body, center).  The bracket
    [(X, A), (Y, B)] = ([X, Y], omega(X, Y))
ignores the incoming center components; the center is spanned by C = emb(1).
Two concrete instances matter here: the Witt algebra with the Virasoro
cocycle, and the abelian algebra of currents with the Heisenberg cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import witt
from .cohomology import CocycleOracle, OneCochain, virasoro_cocycle
from .core import ONE, ZERO, FreeVector, as_scalar, bilinear_extend, format_scalar
from .reports import VerificationReport, counterexample, failing, passing


@dataclass(frozen=True)
class BaseAlgebra:
    """Integer-indexed Lie algebra given by its bracket on basis pairs."""
    name: str
    bracket_pair: Callable[[int, int], FreeVector]


WITT = BaseAlgebra("witt", witt.bracket_pair)
ABELIAN = BaseAlgebra("abelian", lambda m, n: FreeVector.zero())


def heisenberg_cocycle(k: int, l: int) -> Fraction:
    """k on index pairs summing to zero, else 0."""
    if k + l != 0:
        return ZERO
    return Fraction(k)


HEISENBERG = CocycleOracle(heisenberg_cocycle, "heisenberg")


@dataclass(frozen=True)
class ExtElement:
    body: FreeVector
    center: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", as_scalar(self.center))

    def is_zero(self) -> bool:
        return self.body.is_zero() and not self.center

    def __add__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return ExtElement(self.body + other.body, self.center + other.center)

    def __sub__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return ExtElement(self.body - other.body, self.center - other.center)

    def __neg__(self):
        return ExtElement(-self.body, -self.center)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        scalar = as_scalar(scalar)
        return ExtElement(scalar * self.body, scalar * self.center)

    __rmul__ = __mul__


def emb(a) -> ExtElement:
    """Central element a * C."""
    return ExtElement(FreeVector.zero(), as_scalar(a))


def proj(u: ExtElement) -> FreeVector:
    return u.body


def std_section(x: FreeVector) -> ExtElement:
    return ExtElement(x, ZERO)


def ext_bracket(base: BaseAlgebra, omega: CocycleOracle,
                u: ExtElement, v: ExtElement) -> ExtElement:
    body = bilinear_extend(base.bracket_pair, u.body, v.body, FreeVector.zero())
    center = bilinear_extend(omega, u.body, v.body, ZERO)
    return ExtElement(body, center)


def twist_by_coboundary(beta: OneCochain, u: ExtElement) -> ExtElement:
    """(X, A) -> (X, A - beta(X)), the equivalence shifting a cocycle by d beta."""
    return ExtElement(u.body, u.center - beta.apply(u.body))


def format_element(u: ExtElement) -> str:
    return f"{witt.format_vector(u.body)} ⊕ {format_scalar(u.center)}·C"


def _gen(n: int) -> ExtElement:
    return std_section(FreeVector.basis(n))


def check_virasoro_constants(max_index: int) -> VerificationReport:
    """Structure constants of the Witt extension by the Virasoro cocycle.

    [L_m, L_n] = (m - n) L_{m+n} + (m^3 - m)/12 * delta_{m,-n} C and
    [C, L_n] = [L_n, C] = 0, for all |m|, |n| <= max_index.
    """
    return _constants_check("virasoro-constants", WITT,
                            CocycleOracle(virasoro_cocycle, "virasoro"), max_index)


def check_heisenberg_constants(max_index: int) -> VerificationReport:
    """[J_k, J_l] = k delta_{k,-l} K and [K, J_k] = 0 for |k|, |l| <= max_index."""
    return _constants_check("heisenberg-constants", ABELIAN, HEISENBERG, max_index)


def _constants_check(check_name: str, base: BaseAlgebra, omega: CocycleOracle,
                     max_index: int) -> VerificationReport:
    parameters = {"max_index": str(max_index)}
    indices = range(-max_index, max_index + 1)
    central = emb(ONE)
    checked = 0
    for m in indices:
        for n in indices:
            checked += 1
            actual = ext_bracket(base, omega, _gen(m), _gen(n))
            expected = ExtElement(
                bilinear_extend(base.bracket_pair, FreeVector.basis(m),
                                FreeVector.basis(n), FreeVector.zero()),
                omega(m, n))
            if actual != expected:
                return failing(check_name, parameters, checked,
                               counterexample({"m": m, "n": n},
                                              expected=format_element(expected),
                                              actual=format_element(actual)))
    for n in indices:
        for left, right, label in ((central, _gen(n), "C"), (_gen(n), central, str(n))):
            checked += 1
            actual = ext_bracket(base, omega, left, right)
            if not actual.is_zero():
                return failing(check_name, parameters, checked,
                               counterexample({"left": label, "n": n},
                                              expected=format_element(ExtElement(FreeVector.zero(), ZERO)),
                                              actual=format_element(actual)))
    return passing(check_name, parameters, checked)


def check_extension_predicate(base: BaseAlgebra, omega: CocycleOracle,
                              max_index: int) -> VerificationReport:
    """Window-scale certificate that (base, omega) define a central extension.

    Three legs, in order:
      (i)   centrality: [emb(1), u] = [u, emb(1)] = 0 over the window basis;
      (ii)  bracket compatibility: the extension bracket is alternating,
            antisymmetric and satisfies Jacobi on the window basis, and
            projecting it recovers the base bracket of the projections
            (checked on center-shifted pairs, so the centers are ignored);
      (iii) sections: proj(std_section(x)) = x and proj(emb(1)) = 0.
    """
    parameters = {"max_index": str(max_index), "base": base.name,
                  "cocycle": omega.description}
    central = emb(ONE)
    labeled = [("C", central)] + [(str(n), _gen(n)) for n in range(-max_index, max_index + 1)]
    checked = 0

    def bracket(u, v):
        return ext_bracket(base, omega, u, v)

    def fail(leg, indices, expected, actual):
        return failing("extension-predicate", parameters, checked,
                       counterexample(indices, expected=expected, actual=actual, leg=leg))

    # (i) centrality
    for label, u in labeled:
        for left, right, side in ((central, u, "C"), (u, central, label)):
            checked += 1
            value = bracket(left, right)
            if not value.is_zero():
                return fail("centrality", {"u": label, "left": side},
                            expected="0 ⊕ 0·C", actual=format_element(value))

    # (ii) bracket compatibility
    for label, u in labeled:
        checked += 1
        value = bracket(u, u)
        if not value.is_zero():
            return fail("bracket", {"u": label}, expected="0 ⊕ 0·C",
                        actual=format_element(value))
    for label_u, u in labeled:
        for label_v, v in labeled:
            checked += 1
            left = bracket(u, v)
            right = bracket(v, u)
            if left != -right:
                return fail("bracket", {"u": label_u, "v": label_v},
                            expected=format_element(-right), actual=format_element(left))
            checked += 1
            shifted_u = ExtElement(u.body, u.center + ONE)
            shifted_v = ExtElement(v.body, v.center - ONE)
            projected = proj(bracket(shifted_u, shifted_v))
            base_value = bilinear_extend(base.bracket_pair, proj(u), proj(v),
                                         FreeVector.zero())
            if projected != base_value:
                return fail("bracket", {"u": label_u, "v": label_v},
                            expected=witt.format_vector(base_value),
                            actual=witt.format_vector(projected))
    for label_u, u in labeled:
        for label_v, v in labeled:
            for label_w, w in labeled:
                checked += 1
                defect = (bracket(u, bracket(v, w)) + bracket(v, bracket(w, u))
                          + bracket(w, bracket(u, v)))
                if not defect.is_zero():
                    return fail("bracket", {"u": label_u, "v": label_v, "w": label_w},
                                expected="0 ⊕ 0·C", actual=format_element(defect))

    # (iii) sections
    for n in range(-max_index, max_index + 1):
        checked += 1
        x = FreeVector.basis(n)
        if proj(std_section(x)) != x:
            return fail("section", {"n": str(n)}, expected=witt.format_vector(x),
                        actual=witt.format_vector(proj(std_section(x))))
    checked += 1
    if not proj(central).is_zero():
        return fail("section", {"u": "C"}, expected="0",
                    actual=witt.format_vector(proj(central)))

    return passing("extension-predicate", parameters, checked)
