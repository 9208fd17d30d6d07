"""Charged Fock modules and the quadratic generators acting on them.

The module of charge alpha has one basis vector per partition: the partition
(k_m >= ... >= k_1) stands for the monomial J(-k_m)...J(-k_1) applied to the
vacuum.  Current operators J(k) act by inserting a part (k < 0), scaling by
alpha (k = 0), or removing a part with a multiplicity factor (k > 0).  The
quadratic generators L(n) are finite sums of normal-ordered current pairs;
the truncation bound of a vector tells how far those sums have to reach.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import ONE, ZERO, FreeVector, as_scalar, format_scalar
from .reports import VerificationReport, counterexample, failing, passing

Partition = tuple[int, ...]

_HALF = Fraction(1, 2)


def as_partition(parts) -> Partition:
    partition = tuple(sorted(parts, reverse=True))
    if any(not isinstance(part, int) or part <= 0 for part in partition):
        raise ValueError(f"partition parts must be positive integers, got {parts!r}")
    return partition


def level(partition: Partition) -> int:
    return sum(partition)


def insert_part(partition: Partition, part: int) -> Partition:
    return tuple(sorted(partition + (part,), reverse=True))


def remove_part(partition: Partition, part: int) -> Partition:
    out = list(partition)
    out.remove(part)
    return tuple(out)


@lru_cache(maxsize=None)
def partitions_of_level(n: int) -> tuple[Partition, ...]:
    """All partitions of n as weakly decreasing tuples, lexicographically sorted."""
    def generate(total, max_part):
        if total == 0:
            yield ()
            return
        for part in range(min(total, max_part), 0, -1):
            for rest in generate(total - part, part):
                yield (part,) + rest
    return tuple(sorted(generate(n, n)))


def partitions_up_to(max_level: int) -> tuple[Partition, ...]:
    """Partitions of 0..max_level, ordered by (level, lexicographic)."""
    out: list[Partition] = []
    for n in range(max_level + 1):
        out.extend(partitions_of_level(n))
    return tuple(out)


@dataclass(frozen=True)
class FockVector:
    """Element of the charge-alpha module: sparse partition -> scalar map."""
    alpha: Fraction
    terms: FreeVector

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_scalar(self.alpha))

    def is_zero(self) -> bool:
        return self.terms.is_zero()

    def coeff(self, partition: Partition) -> Fraction:
        return self.terms.coeff(partition)

    def _same_charge(self, other: "FockVector"):
        if self.alpha != other.alpha:
            raise ValueError(
                f"cannot combine vectors of charge {self.alpha} and {other.alpha}")

    def __add__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        self._same_charge(other)
        return FockVector(self.alpha, self.terms + other.terms)

    def __sub__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        self._same_charge(other)
        return FockVector(self.alpha, self.terms - other.terms)

    def __neg__(self):
        return FockVector(self.alpha, -self.terms)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return FockVector(self.alpha, scalar * self.terms)

    __rmul__ = __mul__


def vacuum(alpha) -> FockVector:
    return FockVector(as_scalar(alpha), FreeVector.basis(()))

def basis(alpha, partition) -> FockVector:
    return FockVector(as_scalar(alpha), FreeVector.basis(as_partition(partition)))


def format_vector(v: FockVector) -> str:
    if v.is_zero():
        return "0"
    terms = sorted(v.terms.items(), key=lambda item: (level(item[0]), item[0]))
    rendered = []
    for partition, coeff in terms:
        word = "".join(f"J(-{part})" for part in partition)
        rendered.append(f"{format_scalar(coeff)}·{word}|α⟩")
    return " + ".join(rendered)


@lru_cache(maxsize=None)
def _j_basis(k: int, partition: Partition, alpha: Fraction) -> FreeVector:
    if k < 0:
        return FreeVector.basis(insert_part(partition, -k))
    if k == 0:
        return FreeVector.basis(partition, alpha)
    multiplicity = partition.count(k)
    if not multiplicity:
        return FreeVector.zero()
    return FreeVector.basis(remove_part(partition, k), multiplicity * k)


def j_action(k: int, v: FockVector) -> FockVector:
    """Current operator J(k).

    k < 0 inserts a part |k|; k = 0 scales by the charge; k > 0 removes one
    copy of k weighted by k times its multiplicity (zero if k is not a part).
    """
    out = FreeVector.linear_combination(
        (coeff, _j_basis(k, partition, v.alpha)) for partition, coeff in v.terms.items())
    return FockVector(v.alpha, out)


def truncation_bound(v: FockVector) -> int:
    """Least N >= 1 with J(l) v = 0 for every l >= N: one past the largest part."""
    best = 0
    for partition in v.terms.support():
        if partition and partition[0] > best:
            best = partition[0]
    return best + 1


def normal_pair(k: int, l: int, v: FockVector) -> FockVector:
    """Normal-ordered pair :J(k)J(l): applied to v.

    The higher index acts first, so annihilation-type operators hit the
    vector before creation-type ones; the result is symmetric in (k, l).
    """
    if k <= l:
        return j_action(k, j_action(l, v))
    return j_action(l, j_action(k, v))


@lru_cache(maxsize=None)
def _sugawara_basis(n: int, partition: Partition, alpha: Fraction) -> FreeVector:
    bound = partition[0] + 1 if partition else 1
    unit = FockVector(alpha, FreeVector.basis(partition))
    pieces = []
    for k in range(n - bound + 1, bound):
        pieces.append((_HALF, normal_pair(n - k, k, unit).terms))
    return FreeVector.linear_combination(pieces)


def sugawara_l(n: int, v: FockVector) -> FockVector:
    """Quadratic generator L(n) = 1/2 * sum over k of :J(n-k)J(k):.

    Only indices with n - N < k < N contribute, where N is the truncation
    bound, so the sum is finite; every omitted term vanishes on v.
    """
    out = FreeVector.linear_combination(
        (coeff, _sugawara_basis(n, partition, v.alpha))
        for partition, coeff in v.terms.items())
    return FockVector(v.alpha, out)


def weighted_sum_check(n: int) -> bool:
    """sum_{0 <= l < n} (n - l) l == (n^3 - n)/6, the scalar behind [L(n), L(-n)]."""
    total = sum((n - l) * l for l in range(n))
    return Fraction(total) == Fraction(n**3 - n, 6)


def check_weighted_sum(max_n: int) -> VerificationReport:
    parameters = {"max_n": str(max_n)}
    for n in range(max_n + 1):
        if not weighted_sum_check(n):
            actual = sum((n - l) * l for l in range(n))
            return failing("weighted-sum-identity", parameters, n + 1,
                           counterexample({"n": n},
                                          expected=format_scalar(Fraction(n**3 - n, 6)),
                                          actual=str(actual)))
    return passing("weighted-sum-identity", parameters, max_n + 1)


# ---------------------------------------------------------------------------
# Sweeps.  Each worker handles one index tuple over all partitions up to the
# level bound and reports (first counterexample or None, instances examined).
# Serial runs stop at the first failing tuple; parallel runs compute tuples
# independently and merge in canonical order, so reports are identical for
# any job count.

def _run_tasks(tasks, worker, jobs):
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        chunksize = max(1, len(tasks) // (jobs * 4) or 1)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, tasks, chunksize=chunksize))
    else:
        results = []
        for task in tasks:
            result = worker(task)
            results.append(result)
            if result[0] is not None:
                break
    checked = 0
    for found, count in results:
        checked += count
        if found is not None:
            return found, checked
    return None, checked


def _report(check_name, parameters, found, checked):
    if found is not None:
        return failing(check_name, parameters, checked, found)
    return passing(check_name, parameters, checked)


def _heisenberg_task(task):
    k, l, max_level, alpha = task
    count = 0
    scale = Fraction(k) if k + l == 0 else ZERO
    for partition in partitions_up_to(max_level):
        count += 1
        v = FockVector(alpha, FreeVector.basis(partition))
        lhs = j_action(k, j_action(l, v)) - j_action(l, j_action(k, v))
        rhs = scale * v
        if lhs != rhs:
            return counterexample({"k": k, "l": l},
                                  expected=format_vector(rhs), actual=format_vector(lhs),
                                  input_text=format_vector(v)), count
    return None, count


def check_heisenberg_relations(max_index: int, max_level: int, alpha,
                               jobs: int = 1) -> VerificationReport:
    """[J(k), J(l)] = k delta_{k,-l} id on every basis vector of the window."""
    alpha = as_scalar(alpha)
    parameters = {"max_index": str(max_index), "max_level": str(max_level),
                  "alpha": format_scalar(alpha)}
    indices = range(-max_index, max_index + 1)
    tasks = [(k, l, max_level, alpha) for k in indices for l in indices]
    found, checked = _run_tasks(tasks, _heisenberg_task, jobs)
    return _report("heisenberg-relations", parameters, found, checked)


def _primary_field_task(task):
    n, k, max_level, alpha = task
    count = 0
    for partition in partitions_up_to(max_level):
        count += 1
        v = FockVector(alpha, FreeVector.basis(partition))
        lhs = sugawara_l(n, j_action(k, v)) - j_action(k, sugawara_l(n, v))
        rhs = -k * j_action(n + k, v)
        if lhs != rhs:
            return counterexample({"n": n, "k": k},
                                  expected=format_vector(rhs), actual=format_vector(lhs),
                                  input_text=format_vector(v)), count
    return None, count


def check_primary_field(max_index: int, max_level: int, alpha,
                        jobs: int = 1) -> VerificationReport:
    """[L(n), J(k)] = -k J(n+k) on every basis vector of the window."""
    alpha = as_scalar(alpha)
    parameters = {"max_index": str(max_index), "max_level": str(max_level),
                  "alpha": format_scalar(alpha)}
    indices = range(-max_index, max_index + 1)
    tasks = [(n, k, max_level, alpha) for n in indices for k in indices]
    found, checked = _run_tasks(tasks, _primary_field_task, jobs)
    return _report("primary-field", parameters, found, checked)


def _normal_pair_commutator_task(task):
    n, m, k, max_level, alpha = task
    indicator = 0
    if n + m == 0:
        if 0 <= k < -n:
            indicator = 1
        elif -n <= k < 0:
            indicator = -1
    central = Fraction(k * (n + k) * indicator)
    count = 0
    for partition in partitions_up_to(max_level):
        count += 1
        v = FockVector(alpha, FreeVector.basis(partition))
        lhs = sugawara_l(n, normal_pair(m - k, k, v)) - normal_pair(m - k, k, sugawara_l(n, v))
        rhs = (-k * normal_pair(m - k, n + k, v)
               - (m - k) * normal_pair(n + m - k, k, v)
               + central * v)
        if lhs != rhs:
            return counterexample({"n": n, "m": m, "k": k},
                                  expected=format_vector(rhs), actual=format_vector(lhs),
                                  input_text=format_vector(v)), count
    return None, count


def check_normal_pair_commutator(n: int, m: int, k: int, max_level: int,
                                 alpha) -> VerificationReport:
    """[L(n), :J(m-k)J(k):] expanded against its closed form, one index triple.

    The closed form is -k :J(m-k)J(n+k): - (m-k) :J(n+m-k)J(k): plus the
    central term k(n+k) delta_{n+m,0} (1_{0<=k<-n} - 1_{-n<=k<0}).
    """
    alpha = as_scalar(alpha)
    parameters = {"n": str(n), "m": str(m), "k": str(k),
                  "max_level": str(max_level), "alpha": format_scalar(alpha)}
    found, checked = _run_tasks([(n, m, k, max_level, alpha)],
                                _normal_pair_commutator_task, 1)
    return _report("normal-pair-commutator", parameters, found, checked)


def sweep_normal_pair(max_index: int, max_k: int, max_level: int, alpha,
                      jobs: int = 1) -> VerificationReport:
    """check_normal_pair_commutator over |n|, |m| <= max_index, |k| <= max_k."""
    alpha = as_scalar(alpha)
    parameters = {"max_index": str(max_index), "max_k": str(max_k),
                  "max_level": str(max_level), "alpha": format_scalar(alpha)}
    indices = range(-max_index, max_index + 1)
    tasks = [(n, m, k, max_level, alpha)
             for n in indices for m in indices
             for k in range(-max_k, max_k + 1)]
    found, checked = _run_tasks(tasks, _normal_pair_commutator_task, jobs)
    return _report("normal-pair-commutator", parameters, found, checked)


def _sugawara_commutator_task(task):
    n, m, max_level, alpha = task
    central = Fraction(n**3 - n, 12) if n + m == 0 else ZERO
    count = 0
    for partition in partitions_up_to(max_level):
        count += 1
        v = FockVector(alpha, FreeVector.basis(partition))
        lhs = sugawara_l(n, sugawara_l(m, v)) - sugawara_l(m, sugawara_l(n, v))
        rhs = (n - m) * sugawara_l(n + m, v) + central * v
        if lhs != rhs:
            return counterexample({"n": n, "m": m},
                                  expected=format_vector(rhs), actual=format_vector(lhs),
                                  input_text=format_vector(v)), count
    return None, count


def check_sugawara_commutator(max_index: int, max_level: int, alpha,
                              jobs: int = 1) -> VerificationReport:
    """[L(n), L(m)] = (n - m) L(n+m) + (n^3 - n)/12 delta_{n,-m} id.

    The central charge is 1, independent of the charge alpha.
    """
    alpha = as_scalar(alpha)
    parameters = {"max_index": str(max_index), "max_level": str(max_level),
                  "alpha": format_scalar(alpha)}
    indices = range(-max_index, max_index + 1)
    tasks = [(n, m, max_level, alpha) for n in indices for m in indices]
    found, checked = _run_tasks(tasks, _sugawara_commutator_task, jobs)
    return _report("sugawara-commutator", parameters, found, checked)
