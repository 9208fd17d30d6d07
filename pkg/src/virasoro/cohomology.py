"""Degree-two cohomology calculus for the Witt algebra.

Two-cocycles are consumed through a uniform oracle interface so that
closed-form rules (whose support is never finite) and finite tables loaded
from files can be treated alike.  The central results this module makes
executable: every 2-cocycle on a window splits as r * (the Virasoro cocycle)
plus a coboundary, and the multiplier r together with a ratio-mismatch
witness certifies (non)triviality.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .core import ONE, ZERO, FreeVector, ScalarFormatError, as_scalar, format_scalar, parse_scalar
from .reports import VerificationReport, counterexample, failing, passing


class TableFormatError(ValueError):
    """Raised for malformed cochain/cocycle table files."""


class CocycleIdentityError(ValueError):
    """Input rejected because the cocycle identity fails on the window."""

    def __init__(self, report: VerificationReport):
        self.report = report
        indices = report.counterexample["indices"]
        super().__init__(
            "not a cocycle on the window: identity defect "
            f"{report.counterexample['actual']} at "
            f"(n={indices['n']}, m={indices['m']}, k={indices['k']})")


class OneCochain:
    """Linear functional on the Witt algebra, stored as a sparse table.

    Only indices with |n| <= window may carry nonzero values; the functional
    itself is total, with value 0 everywhere outside the table.
    """

    __slots__ = ("window", "_values")

    def __init__(self, window: int, values: Mapping | Iterable | None = None):
        if window < 0:
            raise ValueError("window must be nonnegative")
        table: dict[int, Fraction] = {}
        if values is not None:
            items = values.items() if hasattr(values, "items") else values
            for n, raw in items:
                value = as_scalar(raw)
                if not value:
                    continue
                if abs(n) > window:
                    raise ValueError(f"entry at index {n} outside window {window}")
                table[n] = table.get(n, ZERO) + value
                if not table[n]:
                    del table[n]
        self.window = window
        self._values = table

    def value(self, n: int) -> Fraction:
        return self._values.get(n, ZERO)

    def apply(self, v: FreeVector) -> Fraction:
        return sum((coeff * self._values[n] for n, coeff in v.items() if n in self._values),
                   start=ZERO)

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted(self._values.items())

    def __add__(self, other: "OneCochain") -> "OneCochain":
        merged = dict(self._values)
        for n, value in other._values.items():
            merged[n] = merged.get(n, ZERO) + value
        return OneCochain(max(self.window, other.window), merged)

    def __neg__(self) -> "OneCochain":
        return OneCochain(self.window, {n: -value for n, value in self._values.items()})

    def __rmul__(self, scalar) -> "OneCochain":
        scalar = as_scalar(scalar)
        return OneCochain(self.window, {n: scalar * value for n, value in self._values.items()})

    def __eq__(self, other):
        if not isinstance(other, OneCochain):
            return NotImplemented
        return self.window == other.window and self._values == other._values

    def __repr__(self):
        return f"OneCochain(window={self.window}, values={dict(self.items())!r})"


class TwoCocycleTable:
    """Antisymmetric table of basis-pair values, stored on ordered pairs m < n.

    Lookups outside the declared window return 0.
    """

    __slots__ = ("window", "_entries")

    def __init__(self, window: int, entries: Mapping | Iterable | None = None):
        if window < 0:
            raise ValueError("window must be nonnegative")
        table: dict[tuple[int, int], Fraction] = {}
        if entries is not None:
            items = entries.items() if hasattr(entries, "items") else entries
            for (m, n), raw in items:
                if m >= n:
                    raise ValueError(f"table keys must satisfy m < n, got ({m}, {n})")
                if max(abs(m), abs(n)) > window:
                    raise ValueError(f"entry ({m}, {n}) outside window {window}")
                value = as_scalar(raw)
                if value:
                    table[(m, n)] = value
        self.window = window
        self._entries = table

    def value(self, m: int, n: int) -> Fraction:
        if m == n:
            return ZERO
        if m < n:
            return self._entries.get((m, n), ZERO)
        return -self._entries.get((n, m), ZERO)

    def items(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self._entries.items())


class CocycleOracle:
    """Total antisymmetric basis-pair function (m, n) -> scalar.

    The wrapped rule is only consulted on ordered pairs m < n, which makes
    antisymmetry structural regardless of the rule.  Oracles combine
    linearly, so r * VIRASORO + coboundary(beta) is again an oracle.
    """

    __slots__ = ("_rule", "description")

    def __init__(self, rule: Callable[[int, int], Fraction], description: str = "cocycle"):
        self._rule = rule
        self.description = description

    def __call__(self, m: int, n: int) -> Fraction:
        if m == n:
            return ZERO
        if m < n:
            return as_scalar(self._rule(m, n))
        return -as_scalar(self._rule(n, m))

    def __add__(self, other: "CocycleOracle") -> "CocycleOracle":
        return CocycleOracle(lambda m, n: self(m, n) + other(m, n),
                             f"({self.description} + {other.description})")

    def __rmul__(self, scalar) -> "CocycleOracle":
        scalar = as_scalar(scalar)
        return CocycleOracle(lambda m, n: scalar * self(m, n),
                             f"{scalar}*{self.description}")

    @classmethod
    def from_table(cls, table: TwoCocycleTable) -> "CocycleOracle":
        return cls(table.value, f"table(window={table.window})")


def virasoro_cocycle(m: int, n: int) -> Fraction:
    """(m^3 - m)/12 on index pairs summing to zero, else 0."""
    if m + n != 0:
        return ZERO
    return Fraction(m**3 - m, 12)


VIRASORO = CocycleOracle(virasoro_cocycle, "virasoro")


def coboundary(beta: OneCochain) -> CocycleOracle:
    """The 2-cocycle (m, n) -> (m - n) * beta(l(m + n)) induced by a functional."""
    return CocycleOracle(lambda m, n: (m - n) * beta.value(m + n), "coboundary")


def check_cocycle_identity(omega: CocycleOracle, window: int) -> VerificationReport:
    """Cocycle identity on all basis triples with |n|, |m|, |k| <= window.

    The identity instance at (n, m, k) reads
        (m - k) w(n, m + k) + (k - n) w(m, n + k) + (n - m) w(k, n + m) = 0.
    Triples run in lexicographic order of (n, m, k).
    """
    parameters = {"window": str(window), "cocycle": omega.description}
    indices = range(-window, window + 1)
    # the sweep revisits the same pair many times; cache the oracle's values
    cache: dict[tuple[int, int], Fraction] = {}

    def value(a, b):
        hit = cache.get((a, b))
        if hit is None:
            hit = cache[(a, b)] = omega(a, b)
        return hit

    checked = 0
    for n in indices:
        for m in indices:
            for k in indices:
                checked += 1
                defect = ZERO
                w = value(n, m + k)
                if w:
                    defect = (m - k) * w
                w = value(m, n + k)
                if w:
                    defect = defect + (k - n) * w
                w = value(k, n + m)
                if w:
                    defect = defect + (n - m) * w
                if defect:
                    return failing(
                        "cocycle-identity", parameters, checked,
                        counterexample({"n": n, "m": m, "k": k},
                                       expected="0", actual=format_scalar(defect)))
    return passing("cocycle-identity", parameters, checked)


def reduce_cocycle(omega: CocycleOracle, window: int):
    """Split a window-verified cocycle as r * virasoro + coboundary.

    Returns (beta, r, residual_report).  The correcting functional beta is
    chosen so that (omega + d beta)(l0, .) vanishes: beta(l0) normalizes the
    (1, -1) value and beta(ln) = omega(l0, ln)/n kills the rest of the l0
    row.  The multiplier r is then fixed by the corrected value at (2, -2),
    and the residual sweep verifies omega + d beta = r * virasoro on every
    pair of the window.

    A cocycle-identity failure on the window is a rejected input
    (CocycleIdentityError), not a failing report.
    """
    if window < 2:
        raise ValueError("reduction needs window >= 2")
    precondition = check_cocycle_identity(omega, window)
    if not precondition.passed():
        raise CocycleIdentityError(precondition)

    values = {0: -omega(1, -1) / 2}
    for n in range(1, window + 1):
        values[n] = omega(0, n) / n
        values[-n] = omega(0, -n) / -n
    beta = OneCochain(window, values)

    corrected = omega + coboundary(beta)
    r = 2 * corrected(2, -2)

    parameters = {"window": str(window), "cocycle": omega.description, "r": format_scalar(r)}
    indices = range(-window, window + 1)
    checked = 0
    report = None
    for m in indices:
        for n in indices:
            checked += 1
            expected = r * virasoro_cocycle(m, n)
            actual = corrected(m, n)
            if actual != expected:
                report = failing(
                    "cocycle-reduction-residual", parameters, checked,
                    counterexample({"m": m, "n": n},
                                   expected=format_scalar(expected),
                                   actual=format_scalar(actual)))
                break
        if report is not None:
            break
    if report is None:
        report = passing("cocycle-reduction-residual", parameters,
                         (2 * window + 1) ** 2)
    return beta, r, report


def nontriviality_witness(omega: CocycleOracle, window: int):
    """First pair 1 <= n1 < n2 <= window with mismatched antidiagonal ratios.

    A coboundary forces omega(ln, l-n) = 2n * beta(l0), so the ratios
    omega(n, -n)/(2n) of a trivial cocycle agree for all n.  Pairs are
    searched by increasing n2, then increasing n1 < n2; None means every
    ratio in the window is consistent.
    """
    for n2 in range(2, window + 1):
        ratio2 = omega(n2, -n2) / (2 * n2)
        for n1 in range(1, n2):
            ratio1 = omega(n1, -n1) / (2 * n1)
            if ratio1 != ratio2:
                return n1, n2
    return None


def tabulate(omega: CocycleOracle, window: int) -> TwoCocycleTable:
    """Record an oracle's values on every ordered pair of the window."""
    entries = {}
    for m in range(-window, window + 1):
        for n in range(m + 1, window + 1):
            value = omega(m, n)
            if value:
                entries[(m, n)] = value
    return TwoCocycleTable(window, entries)


# ---------------------------------------------------------------------------
# File formats.  Both are tab-separated with full-line comments introduced by
# "#" and a mandatory first record "window<TAB>W"; cocycle tables then carry
# "m<TAB>n<TAB>value" lines with m < n, one-cochains carry "n<TAB>value".

def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split("\t")


def _parse_index(token: str, lineno: int) -> int:
    normalized = token.strip().replace("−", "-")
    try:
        return int(normalized, base=10)
    except ValueError:
        raise TableFormatError(f"line {lineno}: invalid index {token!r}") from None


def _parse_value(token: str, lineno: int) -> Fraction:
    try:
        return parse_scalar(token)
    except ScalarFormatError as exc:
        raise TableFormatError(f"line {lineno}: {exc}") from None


def _parse_header(records) -> tuple[int, object]:
    try:
        lineno, fields = next(records)
    except StopIteration:
        raise TableFormatError("missing header line 'window<TAB>W'") from None
    if len(fields) != 2 or fields[0] != "window":
        raise TableFormatError(f"line {lineno}: expected header 'window<TAB>W'")
    window = _parse_index(fields[1], lineno)
    if window < 0:
        raise TableFormatError(f"line {lineno}: window must be nonnegative")
    return window, records


def parse_cocycle_table(text: str) -> TwoCocycleTable:
    window, records = _parse_header(_records(text))
    entries: dict[tuple[int, int], Fraction] = {}
    for lineno, fields in records:
        if len(fields) != 3:
            raise TableFormatError(f"line {lineno}: expected 'm<TAB>n<TAB>value'")
        m = _parse_index(fields[0], lineno)
        n = _parse_index(fields[1], lineno)
        value = _parse_value(fields[2], lineno)
        if m >= n:
            raise TableFormatError(f"line {lineno}: require m < n, got ({m}, {n})")
        if max(abs(m), abs(n)) > window:
            raise TableFormatError(f"line {lineno}: pair ({m}, {n}) outside window {window}")
        if (m, n) in entries:
            raise TableFormatError(f"line {lineno}: duplicate pair ({m}, {n})")
        entries[(m, n)] = value
    return TwoCocycleTable(window, entries)


def load_cocycle_table(path) -> TwoCocycleTable:
    return parse_cocycle_table(Path(path).read_text(encoding="utf-8"))


def dump_cocycle_table(table: TwoCocycleTable) -> str:
    lines = [f"window\t{table.window}"]
    for (m, n), value in table.items():
        lines.append(f"{m}\t{n}\t{format_scalar(value)}")
    return "\n".join(lines) + "\n"


def parse_one_cochain(text: str) -> OneCochain:
    window, records = _parse_header(_records(text))
    values: dict[int, Fraction] = {}
    for lineno, fields in records:
        if len(fields) != 2:
            raise TableFormatError(f"line {lineno}: expected 'n<TAB>value'")
        n = _parse_index(fields[0], lineno)
        value = _parse_value(fields[1], lineno)
        if abs(n) > window:
            raise TableFormatError(f"line {lineno}: index {n} outside window {window}")
        if n in values:
            raise TableFormatError(f"line {lineno}: duplicate index {n}")
        values[n] = value
    return OneCochain(window, values)


def load_one_cochain(path) -> OneCochain:
    return parse_one_cochain(Path(path).read_text(encoding="utf-8"))


def dump_one_cochain(beta: OneCochain) -> str:
    lines = [f"window\t{beta.window}"]
    for n, value in beta.items():
        lines.append(f"{n}\t{format_scalar(value)}")
    return "\n".join(lines) + "\n"
