"""Highest-weight modules with an ordered-monomial basis.

A basis vector of the module with parameters (c, h) is a partition
(n_m >= ... >= n_1) standing for L(-n_m)...L(-n_1) applied to the
highest-weight vector.  Generators act by a straightening recursion that
moves L(a) past the leading lowering operator with the bracket
[L(a), L(b)] = (a - b) L(a+b) + (a^3 - a)/12 delta_{a,-b} C, where C acts as
the scalar c.  The canonical map onto the charge-alpha Fock module sends the
monomial to the corresponding product of quadratic generators applied to the
vacuum; it exists exactly when c = 1 and h = alpha^2 / 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import fock
from .core import ZERO, FreeVector, as_scalar, format_scalar
from .fock import Partition, as_partition, level, partitions_up_to
from .reports import VerificationReport, counterexample, failing, passing


@dataclass(frozen=True)
class VermaVector:
    """Element of the (c, h) module: sparse partition -> scalar map."""
    c: Fraction
    h: Fraction
    terms: FreeVector

    def __post_init__(self):
        object.__setattr__(self, "c", as_scalar(self.c))
        object.__setattr__(self, "h", as_scalar(self.h))

    def is_zero(self) -> bool:
        return self.terms.is_zero()

    def coeff(self, partition: Partition) -> Fraction:
        return self.terms.coeff(partition)

    def _same_module(self, other: "VermaVector"):
        if self.c != other.c or self.h != other.h:
            raise ValueError(
                f"cannot combine vectors of weight ({self.c}, {self.h}) "
                f"and ({other.c}, {other.h})")

    def __add__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        self._same_module(other)
        return VermaVector(self.c, self.h, self.terms + other.terms)

    def __sub__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        self._same_module(other)
        return VermaVector(self.c, self.h, self.terms - other.terms)

    def __neg__(self):
        return VermaVector(self.c, self.h, -self.terms)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return VermaVector(self.c, self.h, scalar * self.terms)

    __rmul__ = __mul__


def hw_vector(c, h) -> VermaVector:
    return VermaVector(as_scalar(c), as_scalar(h), FreeVector.basis(()))


def basis(c, h, partition) -> VermaVector:
    return VermaVector(as_scalar(c), as_scalar(h), FreeVector.basis(as_partition(partition)))


def format_vector(v: VermaVector) -> str:
    if v.is_zero():
        return "0"
    terms = sorted(v.terms.items(), key=lambda item: (level(item[0]), item[0]))
    rendered = []
    for partition, coeff in terms:
        word = "".join(f"L(-{part})" for part in partition)
        rendered.append(f"{format_scalar(coeff)}·{word}|c,h⟩")
    return " + ".join(rendered)


@lru_cache(maxsize=None)
def _act_basis(a: int, partition: Partition, c: Fraction, h: Fraction) -> FreeVector:
    """L(a) applied to one ordered monomial, straightened back into the basis.

    Empty monomial: positive generators annihilate, L(0) is the h eigenvalue,
    negative ones start a new monomial.  Otherwise L(a) either prepends
    canonically (a lowering operator at least as large as the leading part)
    or is commuted past the leading L(-p), which strictly shrinks the
    monomial every recursive call takes as input.
    """
    if not partition:
        if a > 0:
            return FreeVector.zero()
        if a == 0:
            return FreeVector.basis((), h)
        return FreeVector.basis((-a,))
    p = partition[0]
    rest = partition[1:]
    if a < 0 and -a >= p:
        return FreeVector.basis((-a,) + partition)
    # L(a) L(-p) = L(-p) L(a) + (a + p) L(a - p) + delta_{a,p} (a^3 - a)/12 C
    pieces = []
    for inner, coeff in _act_basis(a, rest, c, h).items():
        pieces.append((coeff, _act_basis(-p, inner, c, h)))
    if a + p:
        pieces.append((Fraction(a + p), _act_basis(a - p, rest, c, h)))
    if a == p:
        pieces.append((Fraction(a**3 - a, 12) * c, FreeVector.basis(rest)))
    return FreeVector.linear_combination(pieces)


def l_action(a: int, v: VermaVector) -> VermaVector:
    out = FreeVector.linear_combination(
        (coeff, _act_basis(a, partition, v.c, v.h)) for partition, coeff in v.terms.items())
    return VermaVector(v.c, v.h, out)


def c_action(v: VermaVector) -> VermaVector:
    return v.c * v


def straightening_depth(a: int, partition: Partition, c, h) -> int:
    """Recursion depth of one straightening; mirrors _act_basis call for call.

    Bounded by the monomial length plus one: the only recursive call that
    does not shrink the monomial is a canonical prepend, which returns
    immediately.
    """
    c = as_scalar(c)
    h = as_scalar(h)
    if not partition:
        return 1
    p = partition[0]
    rest = partition[1:]
    if a < 0 and -a >= p:
        return 1
    depth = 1 + straightening_depth(a, rest, c, h)
    for inner, _ in _act_basis(a, rest, c, h).items():
        depth = max(depth, 1 + straightening_depth(-p, inner, c, h))
    if a + p:
        depth = max(depth, 1 + straightening_depth(a - p, rest, c, h))
    return depth


def _relations_task(task):
    n, m, max_level, c, h = task
    central = Fraction(n**3 - n, 12) * c if n + m == 0 else ZERO
    count = 0
    for partition in partitions_up_to(max_level):
        count += 1
        v = VermaVector(c, h, FreeVector.basis(partition))
        lhs = l_action(n, l_action(m, v)) - l_action(m, l_action(n, v))
        rhs = (n - m) * l_action(n + m, v) + central * v
        if lhs != rhs:
            return counterexample({"n": n, "m": m},
                                  expected=format_vector(rhs), actual=format_vector(lhs),
                                  input_text=format_vector(v)), count
    return None, count


def check_verma_relations(max_index: int, max_level: int, c, h,
                          jobs: int = 1) -> VerificationReport:
    """[L(n), L(m)] = (n - m) L(n+m) + (n^3 - n)/12 delta_{n,-m} c on the basis."""
    c = as_scalar(c)
    h = as_scalar(h)
    parameters = {"max_index": str(max_index), "max_level": str(max_level),
                  "c": format_scalar(c), "h": format_scalar(h)}
    indices = range(-max_index, max_index + 1)
    tasks = [(n, m, max_level, c, h) for n in indices for m in indices]
    found, checked = fock._run_tasks(tasks, _relations_task, jobs)
    return fock._report("verma-relations", parameters, found, checked)


def verma_hw_check(c, h, max_index: int = 10) -> VerificationReport:
    """L(0) v = h v, C v = c v and L(n) v = 0 for 1 <= n <= max_index."""
    c = as_scalar(c)
    h = as_scalar(h)
    parameters = {"c": format_scalar(c), "h": format_scalar(h),
                  "max_index": str(max_index)}
    v = hw_vector(c, h)
    cases = [("L(0)", l_action(0, v), h * v), ("C", c_action(v), c * v)]
    cases += [(f"L({n})", l_action(n, v), ZERO * v) for n in range(1, max_index + 1)]
    checked = 0
    for label, actual, expected in cases:
        checked += 1
        if actual != expected:
            return failing("verma-highest-weight", parameters, checked,
                           counterexample({"operator": label},
                                          expected=format_vector(expected),
                                          actual=format_vector(actual),
                                          input_text=format_vector(v)))
    return passing("verma-highest-weight", parameters, checked)


def universal_map(alpha, v: VermaVector) -> fock.FockVector:
    """The canonical module map onto the charge-alpha Fock module.

    Sends L(-n_m)...L(-n_1)|c,h> to L(-n_m)...L(-n_1) acting on the vacuum
    through the quadratic generators.  Defined only for c = 1 and
    h = alpha^2 / 2; anything else is a rejected input.
    """
    alpha = as_scalar(alpha)
    if v.c != 1 or v.h != alpha * alpha / 2:
        raise ValueError(
            "the canonical map into the charged Fock module requires central "
            f"charge 1 and highest weight alpha^2/2 = {alpha * alpha / 2}; "
            f"got (c, h) = ({format_scalar(v.c)}, {format_scalar(v.h)})")
    out = fock.FockVector(alpha, FreeVector.zero())
    for partition, coeff in v.terms.items():
        image = fock.vacuum(alpha)
        for part in reversed(partition):
            image = fock.sugawara_l(-part, image)
        out = out + coeff * image
    return out


def _intertwining_task(task):
    a, max_level, alpha = task
    c = Fraction(1)
    h = alpha * alpha / 2
    count = 0
    for partition in partitions_up_to(max_level):
        count += 1
        x = VermaVector(c, h, FreeVector.basis(partition))
        lhs = universal_map(alpha, l_action(a, x))
        rhs = fock.sugawara_l(a, universal_map(alpha, x))
        if lhs != rhs:
            return counterexample({"a": a},
                                  expected=fock.format_vector(rhs),
                                  actual=fock.format_vector(lhs),
                                  input_text=format_vector(x)), count
    return None, count


def check_intertwining(alpha, max_index: int, max_level: int,
                       jobs: int = 1) -> VerificationReport:
    """The canonical map commutes with every generator on the window basis."""
    alpha = as_scalar(alpha)
    parameters = {"alpha": format_scalar(alpha), "max_index": str(max_index),
                  "max_level": str(max_level)}
    tasks = [(a, max_level, alpha) for a in range(-max_index, max_index + 1)]
    found, checked = fock._run_tasks(tasks, _intertwining_task, jobs)
    return fock._report("fock-verma-intertwining", parameters, found, checked)
