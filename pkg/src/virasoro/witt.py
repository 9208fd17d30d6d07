"""The Witt algebra: basis l(n) for integer n, bracket [l(m), l(n)] = (m - n) l(m + n)."""

from __future__ import annotations

from .core import FreeVector, bilinear_extend, cyclic_triple_sum
from .reports import VerificationReport, counterexample, failing, passing


def basis(n: int) -> FreeVector:
    return FreeVector.basis(n)


def bracket_pair(m: int, n: int) -> FreeVector:
    """Bracket of two basis vectors; the (m - n) coefficient makes m == n vanish."""
    return FreeVector.basis(m + n, m - n)


def bracket(x: FreeVector, y: FreeVector) -> FreeVector:
    return bilinear_extend(bracket_pair, x, y, FreeVector.zero())


def jacobi_defect(x: FreeVector, y: FreeVector, z: FreeVector) -> FreeVector:
    return cyclic_triple_sum(bracket_pair, bracket_pair, x, y, z, FreeVector.zero())


def check_jacobi(x: FreeVector, y: FreeVector, z: FreeVector) -> bool:
    return jacobi_defect(x, y, z).is_zero()


def format_vector(v: FreeVector) -> str:
    if v.is_zero():
        return "0"
    return " + ".join(f"{coeff}·l({n})" for n, coeff in v.items())


def jacobi_basis_sweep(max_index: int) -> VerificationReport:
    """Jacobi identity over all basis triples with |m|, |n|, |k| <= max_index.

    Triples run in lexicographic order of (m, n, k); the first defect is
    reported.
    """
    parameters = {"max_index": str(max_index)}
    indices = range(-max_index, max_index + 1)
    checked = 0
    for m in indices:
        for n in indices:
            for k in indices:
                checked += 1
                defect = jacobi_defect(basis(m), basis(n), basis(k))
                if not defect.is_zero():
                    return failing(
                        "witt-jacobi", parameters, checked,
                        counterexample({"m": m, "n": n, "k": k},
                                       expected="0", actual=format_vector(defect)))
    return passing("witt-jacobi", parameters, checked)
