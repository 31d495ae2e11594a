"""Free Boolean algebras over a finite generator set.

Elements are truth tables over the 2^s assignments, stored as ints (bit a
of the table is the value at assignment a).  Ultrafilters correspond to
assignments; the support of an assignment is the set of generators it
sends to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
import random

from .errors import ValidationError

DEFAULT_GENERATOR_CAP = 16


class FreeAlgebra:
    """Free Boolean algebra on ``generator_count`` generators."""

    __slots__ = ("generator_count", "table_mask")

    def __init__(self, generator_count: int, cap: int = DEFAULT_GENERATOR_CAP):
        if not isinstance(generator_count, int) or isinstance(generator_count, bool):
            raise ValidationError("generator_count must be an integer")
        if not 1 <= generator_count <= cap:
            raise ValidationError(
                f"generator_count must be in [1, {cap}]"
            )
        self.generator_count = generator_count
        self.table_mask = (1 << (1 << generator_count)) - 1

    def __eq__(self, other):
        return (
            isinstance(other, FreeAlgebra)
            and other.generator_count == self.generator_count
        )

    def __hash__(self):
        return hash(("FreeAlgebra", self.generator_count))

    def __repr__(self):
        return f"FreeAlgebra(s={self.generator_count})"

    @property
    def zero(self) -> "FreeElement":
        return FreeElement(self, 0)

    @property
    def one(self) -> "FreeElement":
        return FreeElement(self, self.table_mask)

    def generator(self, i: int) -> "FreeElement":
        if not 0 <= i < self.generator_count:
            raise ValidationError(f"generator index {i} out of range")
        table = 0
        for a in range(1 << self.generator_count):
            if a >> i & 1:
                table |= 1 << a
        return FreeElement(self, table)

    def basic_clopen(self, sigma, tau) -> "FreeElement":
        """Conjunction of the generators in sigma and the negations of tau.

        The two sets must be disjoint; the result is the basic clopen set
        of assignments extending (sigma -> 1, tau -> 0).
        """
        sset, tset = set(sigma), set(tau)
        if sset & tset:
            raise ValidationError("sigma and tau must be disjoint")
        for i in sset | tset:
            if not 0 <= i < self.generator_count:
                raise ValidationError(f"generator index {i} out of range")
        table = 0
        for a in range(1 << self.generator_count):
            if all(a >> i & 1 for i in sset) and not any(a >> i & 1 for i in tset):
                table |= 1 << a
        return FreeElement(self, table)


@dataclass(frozen=True)
class FreeElement:
    algebra: FreeAlgebra
    table: int

    def __post_init__(self):
        if not 0 <= self.table <= self.algebra.table_mask:
            raise ValidationError("truth table out of range")

    def _check(self, other):
        if self.algebra != other.algebra:
            raise ValidationError("algebra mismatch")

    def meet(self, other: "FreeElement") -> "FreeElement":
        self._check(other)
        return FreeElement(self.algebra, self.table & other.table)

    def join(self, other: "FreeElement") -> "FreeElement":
        self._check(other)
        return FreeElement(self.algebra, self.table | other.table)

    def complement(self) -> "FreeElement":
        return FreeElement(self.algebra, self.table ^ self.algebra.table_mask)

    __and__ = meet
    __or__ = join
    __invert__ = complement

    def leq(self, other: "FreeElement") -> bool:
        self._check(other)
        return self.table & ~other.table == 0

    def is_zero(self) -> bool:
        return self.table == 0

    def satisfied_by(self, assignment_bits: int) -> bool:
        return bool(self.table >> assignment_bits & 1)


@dataclass(frozen=True)
class Assignment:
    """An ultrafilter of the free algebra, i.e. a generator assignment."""

    generator_count: int
    bits: int

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(self.generator_count) if self.bits >> i & 1
        )

    @property
    def support_size(self) -> int:
        return self.bits.bit_count()


def min_support_ultrafilter(w: FreeElement) -> tuple[Assignment, int]:
    """A satisfying assignment of minimal support, found exactly.

    Tries weight levels 0, 1, 2, ... and within a level the supports in
    lexicographic order, so the common small-support cases terminate
    immediately and the result is deterministic.
    """
    if w.table == 0:
        raise ValidationError("empty clopen set")
    s = w.algebra.generator_count
    for weight in range(s + 1):
        for positions in combinations(range(s), weight):
            a = 0
            for i in positions:
                a |= 1 << i
            if w.table >> a & 1:
                return Assignment(s, a), weight
    raise AssertionError("nonzero table has a satisfying assignment")


@dataclass(frozen=True)
class DensityReport:
    generator_count: int
    pairs_checked: int
    exhaustive: bool
    failures: tuple


def dense_small_support_check(s: int, exhaustive_cap: int = 4,
                              samples: int = 500, seed: int = 0) -> DensityReport:
    """For every nonzero basic clopen set, the minimal support inside it is
    exactly sigma.

    Exhaustive over all disjoint (sigma, tau) pairs for s <= exhaustive_cap,
    seeded sampling above.
    """
    alg = FreeAlgebra(s)
    failures = []
    checked = 0
    exhaustive = s <= exhaustive_cap

    def check(sigma, tau):
        nonlocal checked
        checked += 1
        w = alg.basic_clopen(sigma, tau)
        assignment, size = min_support_ultrafilter(w)
        if size != len(sigma) or set(assignment.support) != set(sigma):
            failures.append((tuple(sigma), tuple(tau), assignment.support))

    if exhaustive:
        for assignment in product((0, 1, 2), repeat=s):
            sigma = [i for i, v in enumerate(assignment) if v == 1]
            tau = [i for i, v in enumerate(assignment) if v == 2]
            check(sigma, tau)
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            sigma, tau = [], []
            for i in range(s):
                r = rng.randrange(3)
                if r == 1:
                    sigma.append(i)
                elif r == 2:
                    tau.append(i)
            check(sigma, tau)
    return DensityReport(s, checked, exhaustive, tuple(failures))
