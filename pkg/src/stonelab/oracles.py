"""Independent brute-force oracles used by the self-test suite and the tests.

Each oracle recomputes a quantity by a different route than the main
implementation: fixpoint closure instead of pattern partitions, full
subfamily enumeration instead of branch-and-bound, raw subset scans
instead of structured DFS.
"""

from __future__ import annotations

from itertools import permutations

from .errors import ValidationError
from .solver import GeneratorPool


def closure_generates(atom_count: int, masks) -> bool:
    """Close the generators under meet, join and complement to a fixpoint
    and report whether the result is the whole powerset."""
    full = (1 << atom_count) - 1
    target = 1 << atom_count
    closed = {0, full}
    work = [m for m in set(masks) if m not in closed]
    closed.update(work)
    while work:
        if len(closed) == target:
            return True
        x = work.pop()
        new = {x & y for y in closed}
        new |= {x | y for y in closed}
        new.add(x ^ full)
        new -= closed
        closed |= new
        work.extend(new)
    return len(closed) == target


def subalgebra_closure(atom_count: int, masks) -> frozenset[int]:
    """The full closure set, for size comparisons against the partition route."""
    full = (1 << atom_count) - 1
    closed = {0, full}
    work = [m for m in set(masks) if m not in closed]
    closed.update(work)
    while work:
        x = work.pop()
        new = {x & y for y in closed} | {x | y for y in closed}
        new.add(x ^ full)
        new -= closed
        closed |= new
        work.extend(new)
    return frozenset(closed)


def exhaustive_min_max_order(pool: GeneratorPool, max_points: int = 6,
                             max_pool: int = 12):
    """Minimum max-order over all separating subfamilies, by enumerating
    every subfamily mask.  Returns None when no subfamily separates."""
    n = pool.points.size
    m = pool.size
    if n > max_points or m > max_pool:
        raise ValidationError(
            f"exhaustive oracle capped at {max_points} points / {max_pool} candidates"
        )
    contains = []  # per point: mask of candidates containing it
    for p in range(n):
        cmask = 0
        for i, c in enumerate(pool.candidates):
            if c.bits >> p & 1:
                cmask |= 1 << i
        contains.append(cmask)
    best = None
    for sub in range(1 << m):
        sigs = [contains[p] & sub for p in range(n)]
        if len(set(sigs)) != n:
            continue
        value = max(s.bit_count() for s in sigs)
        if best is None or value < best:
            best = value
    return best


def upsets_bruteforce(size: int, up_masks) -> set[int]:
    """All up-closed subsets by scanning every subset mask."""
    out = set()
    for mask in range(1 << size):
        ok = True
        for i in range(size):
            if mask >> i & 1 and up_masks[i] & ~mask:
                ok = False
                break
        if ok:
            out.add(mask)
    return out


def paths_bruteforce(forest) -> set[int]:
    """All downward-closed chains of a forest by scanning every subset."""
    out = set()
    for mask in range(1 << forest.size):
        nodes = [t for t in range(forest.size) if mask >> t & 1]
        closed = all(forest.ancestors[t] & ~mask == 0 for t in nodes)
        chain = all(
            forest.ancestors[a] >> b & 1 or forest.ancestors[b] >> a & 1
            for i, a in enumerate(nodes)
            for b in nodes[i + 1 :]
        )
        if closed and chain:
            out.add(mask)
    return out


def strict_orders(n: int):
    """All labeled strict partial orders on n points, as tuples of up-masks
    (reflexive closure included)."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for choice in range(1 << len(pairs)):
        rel = [[False] * n for _ in range(n)]
        ok = True
        for idx, (i, j) in enumerate(pairs):
            if choice >> idx & 1:
                rel[i][j] = True
        for i, j in pairs:
            if rel[i][j] and rel[j][i]:
                ok = False
                break
        if ok:
            for i in range(n):
                for j in range(n):
                    if rel[i][j]:
                        for k in range(n):
                            if rel[j][k] and not rel[i][k]:
                                ok = False
            if ok:
                up = []
                for i in range(n):
                    m = 1 << i
                    for j in range(n):
                        if rel[i][j]:
                            m |= 1 << j
                    up.append(m)
                out.append(tuple(up))
    return out


def posets_up_to_iso(n: int):
    """Representatives of the isomorphism classes of posets on n points."""
    seen = set()
    reps = []
    for up in strict_orders(n):
        canon = None
        for perm in permutations(range(n)):
            img = [0] * n
            for i in range(n):
                m = 0
                for j in range(n):
                    if up[i] >> j & 1:
                        m |= 1 << perm[j]
                img[perm[i]] = m
            key = tuple(img)
            if canon is None or key < canon:
                canon = key
        if canon not in seen:
            seen.add(canon)
            reps.append(up)
    return reps


def rooted_tree_shapes(n: int):
    """Parent arrays for all rooted trees on n nodes, up to isomorphism.

    Shapes are canonical forms: a tree is the sorted tuple of its subtree
    shapes.  Counts follow 1, 1, 2, 4, 9, 20, ...
    """
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def tree_shapes(k: int):
        if k == 1:
            return frozenset({()})
        out = set()
        for forest in forest_shapes(k - 1):
            out.add(forest)
        return frozenset(out)

    @lru_cache(maxsize=None)
    def forest_shapes(total: int, max_part: int = None):
        """Multisets (sorted tuples) of tree shapes with sizes summing to total."""
        if max_part is None:
            max_part = total
        if total == 0:
            return frozenset({()})
        out = set()
        for part in range(min(total, max_part), 0, -1):
            for t in tree_shapes(part):
                for rest in forest_shapes(total - part, part):
                    candidate = tuple(sorted((t,) + rest))
                    out.add(candidate)
        return frozenset(out)

    def to_parents(shape):
        parents = [None]
        def attach(children, parent_idx):
            for c in children:
                idx = len(parents)
                parents.append(parent_idx)
                attach(c, idx)
        attach(shape, 0)
        return parents

    return [to_parents(s) for s in sorted(tree_shapes(n))]


def point_sequence_is_free_by_closure(algebra, atoms) -> bool:
    """Check a point sequence's freeness literally via the closure formula:
    every front/back split must have disjoint closures."""
    from .algebra import closure_of_ultrafilter_set

    ultra = [algebra.ultrafilter(a) for a in atoms]
    for beta in range(len(ultra) + 1):
        front = closure_of_ultrafilter_set(algebra, ultra[:beta])
        back = closure_of_ultrafilter_set(algebra, ultra[beta:])
        if front & back:
            return False
    return True
