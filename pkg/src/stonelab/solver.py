"""The constrained min-max-order optimization.

Given a point set and a labeled pool of candidate subsets, find a
T0-separating subfamily minimizing the maximum point order.  Solved
through the decision variant ("is there a separating subfamily with every
order <= k?") with increasing k; the witness family falls out of the
successful decision run.  Preset pools realize the structured examples:
all subsets of an algebra's atoms, interval tails of a chain, the
canonical up-set generators over a poset's segment lattice, the node sets
over a tree's path space, and the clopen filters over a semilattice's
filter lattice.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .algebra import FiniteBooleanAlgebra
from .errors import CapExceededError, PoolInsufficientError, ValidationError
from .families import (
    Member,
    PointSet,
    SeparatingFamily,
    order_profile,
)
from .orders import (
    FilterLattice,
    FinalSegmentLattice,
    FinitePoset,
    MeetSemilattice,
    final_segments,
    filters as semilattice_filters,
    modest_analysis,
    set_label,
)
from .trees import FiniteForest, sigma_system

DEFAULT_EXACT_POINT_CAP = 12
DEFAULT_EXACT_POOL_CAP = 32


@dataclass(frozen=True)
class GeneratorPool:
    points: PointSet
    candidates: tuple[Member, ...]
    preset_tag: str = "custom"

    def __post_init__(self):
        full = (1 << self.points.size) - 1
        for c in self.candidates:
            if not 0 <= c.bits <= full:
                raise ValidationError(f"candidate {c.label!r} not a subset of the points")
        if self.points.size > 1 and not self.candidates:
            raise ValidationError("empty candidate pool cannot separate points")

    @property
    def size(self) -> int:
        return len(self.candidates)


@dataclass(frozen=True)
class DecisionResult:
    achievable: bool
    family: SeparatingFamily | None
    nodes_explored: int


@dataclass(frozen=True)
class SolveResult:
    value: int
    family: SeparatingFamily
    exact: bool
    nodes_explored: int
    elapsed: float  # wall seconds; excluded from canonical reports


def _pair_check(pool: GeneratorPool):
    """Fail fast when some pair is covered by no candidate at all."""
    n = pool.points.size
    for x in range(n):
        for y in range(x + 1, n):
            if not any(
                (c.bits >> x & 1) != (c.bits >> y & 1) for c in pool.candidates
            ):
                raise PoolInsufficientError(
                    f"pool cannot separate points {x} and {y}", witness=(x, y)
                )


def _family_of(pool: GeneratorPool, chosen) -> SeparatingFamily:
    members = tuple(pool.candidates[i] for i in sorted(chosen))
    return SeparatingFamily(pool.points, members)


def decision_max_order_at_most(pool: GeneratorPool, k: int) -> DecisionResult:
    """Exact backtracking over unseparated pairs.

    Branches on the pair with the fewest feasible covering candidates
    (fail-first), trying candidates in pool order, so the reported witness
    comes from the lexicographically least successful branch.
    """
    if k < 0:
        raise ValidationError("budget k must be >= 0")
    _pair_check(pool)
    n = pool.points.size
    cands = pool.candidates
    pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    covers = {
        (x, y): [
            i
            for i, c in enumerate(cands)
            if (c.bits >> x & 1) != (c.bits >> y & 1)
        ]
        for (x, y) in pairs
    }
    orders = [0] * n
    chosen: list[int] = []
    chosen_set = set()
    nodes = 0

    def separated(pair) -> bool:
        x, y = pair
        return any(
            (cands[i].bits >> x & 1) != (cands[i].bits >> y & 1)
            for i in chosen
        )

    def solve() -> bool:
        nonlocal nodes
        nodes += 1
        open_pairs = [p for p in pairs if not separated(p)]
        if not open_pairs:
            return True
        best_pair = None
        best_feasible = None
        for p in open_pairs:
            feasible = [
                i
                for i in covers[p]
                if i not in chosen_set
                and all(
                    orders[pt] + 1 <= k
                    for pt in _points_of(cands[i].bits)
                )
            ]
            if best_feasible is None or len(feasible) < len(best_feasible):
                best_pair, best_feasible = p, feasible
                if not feasible:
                    break
        if not best_feasible:
            return False
        for i in best_feasible:
            chosen.append(i)
            chosen_set.add(i)
            for pt in _points_of(cands[i].bits):
                orders[pt] += 1
            if solve():
                return True
            for pt in _points_of(cands[i].bits):
                orders[pt] -= 1
            chosen_set.discard(i)
            chosen.pop()
        return False

    ok = solve()
    family = _family_of(pool, chosen) if ok else None
    return DecisionResult(ok, family, nodes)


def _points_of(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def min_max_order(pool: GeneratorPool, mode: str = "exact",
                  max_points: int = DEFAULT_EXACT_POINT_CAP,
                  max_pool: int = DEFAULT_EXACT_POOL_CAP) -> SolveResult:
    """Minimum achievable maximum order over T0-separating subfamilies.

    Exact mode sweeps the decision variant with increasing budget k; greedy
    mode repeatedly takes the candidate separating the most open pairs
    (ties: least increase to the current maximum order, then pool order)
    and reports an upper bound flagged inexact.
    """
    start = time.perf_counter()
    if mode == "exact":
        if pool.points.size > max_points or pool.size > max_pool:
            raise CapExceededError(
                f"exact mode capped at {max_points} points / {max_pool} candidates; "
                "use greedy mode or raise the caps"
            )
        nodes = 0
        for k in range(pool.size + 1):
            res = decision_max_order_at_most(pool, k)
            nodes += res.nodes_explored
            if res.achievable:
                return SolveResult(
                    k, res.family, True, nodes, time.perf_counter() - start
                )
        raise AssertionError("separating pool must succeed at k = pool size")
    if mode != "greedy":
        raise ValidationError(f"unknown mode {mode!r}")

    _pair_check(pool)
    n = pool.points.size
    cands = pool.candidates
    open_pairs = {(x, y) for x in range(n) for y in range(x + 1, n)}
    orders = [0] * n
    chosen: list[int] = []
    steps = 0
    while open_pairs:
        steps += 1
        best = None
        for i, c in enumerate(cands):
            if i in chosen:
                continue
            gain = sum(
                1
                for (x, y) in open_pairs
                if (c.bits >> x & 1) != (c.bits >> y & 1)
            )
            if gain == 0:
                continue
            new_max = max(
                max((orders[pt] + 1 for pt in _points_of(c.bits)), default=0),
                max(orders, default=0),
            )
            key = (-gain, new_max, i)
            if best is None or key < best[0]:
                best = (key, i)
        i = best[1]
        chosen.append(i)
        for pt in _points_of(cands[i].bits):
            orders[pt] += 1
        open_pairs = {
            (x, y)
            for (x, y) in open_pairs
            if (cands[i].bits >> x & 1) == (cands[i].bits >> y & 1)
        }
    family = _family_of(pool, chosen)
    value = order_profile(family).max_order if chosen else 0
    return SolveResult(value, family, False, steps, time.perf_counter() - start)


def preset_pool(kind: str, structure) -> GeneratorPool:
    """Labeled candidate pools over the structured point sets.

    kind="free"      all subsets of the atoms of a FiniteBooleanAlgebra
    kind="intervals" the tails [a, ->) of a chain, over its atoms
    kind="upsets"    the principal up-sets of the segment lattice FS(P)
    kind="tree"      the node sets V_t over the path space of a forest
    kind="filters"   the clopen filters over the filter lattice Fil(M)
    """
    if kind == "free":
        if not isinstance(structure, FiniteBooleanAlgebra):
            raise ValidationError("free pool needs a FiniteBooleanAlgebra")
        if structure.atom_count > 12:
            raise CapExceededError("free pool enumerates all subsets; atoms capped at 12")
        pts = PointSet(structure.atom_count)
        cands = tuple(
            Member(set_label(m), m) for m in range(1 << structure.atom_count)
        )
        return GeneratorPool(pts, cands, "free")
    if kind == "intervals":
        if not isinstance(structure, int) or structure < 1:
            raise ValidationError("intervals pool needs a positive chain length")
        n = structure
        pts = PointSet(n)
        full = (1 << n) - 1
        cands = tuple(
            Member(f"[{a},->)", full & ~((1 << a) - 1)) for a in range(n)
        )
        return GeneratorPool(pts, cands, "intervals")
    if kind == "upsets":
        if isinstance(structure, FinitePoset):
            lattice = final_segments(structure)
        elif isinstance(structure, FinalSegmentLattice):
            lattice = structure
        else:
            raise ValidationError("upsets pool needs a FinitePoset")
        pts = PointSet(
            lattice.size, tuple(lattice.label(i) for i in range(lattice.size))
        )
        cands = []
        for i, seg in enumerate(lattice.segments):
            mask = 0
            for j, other in enumerate(lattice.segments):
                if seg & ~other == 0:
                    mask |= 1 << j
            cands.append(Member(f"up:{lattice.label(i)}", mask))
        return GeneratorPool(pts, tuple(cands), "upsets")
    if kind == "tree":
        if not isinstance(structure, FiniteForest):
            raise ValidationError("tree pool needs a FiniteForest")
        system = sigma_system(structure)
        return GeneratorPool(system.points, system.family.members, "tree")
    if kind == "filters":
        if isinstance(structure, MeetSemilattice):
            lattice = semilattice_filters(structure)
        elif isinstance(structure, FilterLattice):
            lattice = structure
        else:
            raise ValidationError("filters pool needs a MeetSemilattice")
        report = modest_analysis(lattice)
        fam = report.clopen_filter_family
        return GeneratorPool(fam.points, fam.members, "filters")
    raise ValidationError(f"unknown pool preset {kind!r}")
