"""Symmetry invariants of a finite graph's automorphism group.

All operations take the automorphism group (see
:func:`halinkit.autgroup.automorphism_group`) rather than the graph itself;
a base is a vertex set with trivial pointwise stabilizer, a distinguishing
set one with trivial setwise stabilizer.  Exhaustive searches run
size-ascending in lexicographic subset order and every tie is broken toward
the least vertex index, so results are reproducible.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

from .groups import PermGroup
from .perms import Permutation

DEFAULT_SUBSET_BUDGET = 10_000_000
ENUM_LIMIT = 1_000_000


class BudgetExceededError(RuntimeError):
    """An exhaustive subset search hit its budget before finishing."""

    def __init__(self, examined: int, budget: int):
        super().__init__(
            f"subset search budget exhausted ({examined} > {budget})")
        self.examined = examined
        self.budget = budget


@dataclass(frozen=True)
class Bounds:
    """The two size bounds attached to a base of size n.

    ``cost_bound`` caps the final distinguishing set produced by the greedy
    chain; ``chain_bound`` caps the number of strict subgroup steps, via the
    longest subgroup chain in Sym(n).  ``popcount`` is the number of 1s in
    the binary expansion of n.
    """

    n: int
    popcount: int
    cost_bound: int
    chain_bound: int

    def to_json(self) -> dict:
        return {"n": self.n, "popcount": self.popcount,
                "cost_bound": self.cost_bound,
                "chain_bound": self.chain_bound}


def bounds(n: int) -> Bounds:
    """Exact integer evaluation of the two bound formulas for base size n."""
    if n < 1:
        raise ValueError("bounds are defined for base size n >= 1")
    b = bin(n).count("1")
    cost = -(-5 * n // 2) - b - 1
    chain = -(-3 * n // 2) - b - 1
    return Bounds(n, b, cost, chain)


@dataclass(frozen=True)
class StabilizerChain:
    """Record of a greedy run Y_0 = base, Y_i = Y_{i-1} + one vertex.

    ``orders`` holds |setwise stabilizer of Y_i| for i = 0..k and must be
    strictly decreasing; the run is complete when the last order is 1 and
    ``stalled`` marks runs where no vertex could cut the stabilizer further.
    """

    base: tuple[int, ...]
    added: tuple[int, ...]
    orders: tuple[int, ...]
    stalled: bool

    @property
    def final_set(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.base) | set(self.added)))

    @property
    def completed(self) -> bool:
        return not self.stalled and self.orders[-1] == 1

    @property
    def length(self) -> int:
        return len(self.added)

    def to_json(self) -> dict:
        return {"base": sorted(self.base), "added": list(self.added),
                "orders": list(self.orders), "stalled": self.stalled,
                "final_set": list(self.final_set),
                "final_size": len(self.final_set),
                "completed": self.completed}


def is_base(group: PermGroup, points: Iterable[int]) -> bool:
    """True iff the pointwise stabilizer of the set is trivial."""
    return group.point_stabilizer(points).is_trivial()


def is_distinguishing(group: PermGroup, points: Iterable[int]) -> bool:
    """True iff the setwise stabilizer of the set is trivial."""
    return group.set_stabilizer_is_trivial(points)


def determining_number(
        group: PermGroup,
        budget: int = DEFAULT_SUBSET_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Minimum base size with its lexicographically least witness.

    Size-ascending search; the full vertex set is always a base for a
    faithful action, so the search terminates.  Returns (0, ()) for the
    trivial group.
    """
    if group.is_trivial():
        return 0, ()
    examined = 0
    for k in range(1, group.degree + 1):
        for subset in combinations(range(group.degree), k):
            examined += 1
            if examined > budget:
                raise BudgetExceededError(examined, budget)
            if is_base(group, subset):
                return k, subset
    raise AssertionError("a faithful group must have the full set as a base")


def distinguishing_cost(
        group: PermGroup,
        budget: int = DEFAULT_SUBSET_BUDGET) -> tuple[int, tuple[int, ...]] | None:
    """Minimum distinguishing-set size with witness, or None if none exists.

    Nonexistence (every subset has a nontrivial setwise stabilizer, as in
    complete graphs) is reported only after exhausting all subsets.
    """
    if group.is_trivial():
        return 0, ()
    examined = 0
    for k in range(1, group.degree + 1):
        for subset in combinations(range(group.degree), k):
            examined += 1
            if examined > budget:
                raise BudgetExceededError(examined, budget)
            if is_distinguishing(group, subset):
                return k, subset
    return None


def motion_of(p: Permutation) -> int:
    """Number of points the permutation moves."""
    return p.num_moved()


def motion(group: PermGroup,
           enum_limit: int = ENUM_LIMIT) -> tuple[int, Permutation]:
    """Minimum motion over nontrivial elements, with a witness.

    Enumerates the group when its order fits the limit; otherwise runs a
    branch-and-bound search over the stabilizer chain, pruning partial coset
    products whose decided base-point images already move too much.
    """
    if group.order() <= 1:
        raise ValueError("motion is undefined for the trivial group")
    if group.order() <= enum_limit:
        best: tuple[int, Permutation] | None = None
        for p in group.elements(enum_limit):
            if p.is_identity():
                continue
            m = p.num_moved()
            if best is None or m < best[0]:
                best = (m, p)
        assert best is not None
        return best
    return _motion_search(group)


def _motion_search(group: PermGroup) -> tuple[int, Permutation]:
    chain = group.chain()
    base = chain.base
    identity = Permutation.identity(group.degree)
    best: list = [group.degree + 1, identity]

    def rec(level: int, w: Permutation, moved: int) -> None:
        if moved >= best[0]:
            return
        if level == len(base):
            if not w.is_identity():
                m = w.num_moved()
                if m < best[0]:
                    best[0] = m
                    best[1] = w
            return
        t = chain.transversals[level]
        for a in sorted(t):
            w2 = w * t[a]
            rec(level + 1, w2,
                moved + (1 if w2(base[level]) != base[level] else 0))

    rec(0, identity, 0)
    return best[0], best[1]


def disjoint_translate(group: PermGroup, y: Iterable[int],
                       z: Iterable[int]) -> Permutation | None:
    """Some group element mapping Z completely off Y, or None.

    Finite groups may have no such element; the search walks the stabilizer
    chain depth-first, pruning branches whose decided images of Z already
    meet Y.
    """
    yset = frozenset(y)
    zset = frozenset(z)
    if not yset or not zset:
        return Permutation.identity(group.degree)
    chain = group.chain()
    base = chain.base
    z_in_base = [b for b in base if b in zset]

    def rec(level: int, w: Permutation) -> Permutation | None:
        decided = set(base[:level])
        if zset <= decided:
            return w  # all images of Z decided and disjoint from Y
        if level == len(base):
            return w if yset.isdisjoint(w(v) for v in zset) else None
        t = chain.transversals[level]
        for a in sorted(t):
            w2 = w * t[a]
            if any(w2(b) in yset for b in z_in_base if b in decided | {base[level]}):
                continue
            found = rec(level + 1, w2)
            if found is not None:
                return found
        return None

    return rec(0, Permutation.identity(group.degree))


def reducing_vertex(group: PermGroup, y: Iterable[int],
                    enum_limit: int = ENUM_LIMIT) -> int | None:
    """Least vertex whose addition strictly cuts the setwise stabilizer of Y.

    Tries the candidate filter from the subgroup-reduction argument first:
    collect D = {a in group : a(Y) meets Y}, X = union of a(Y) over D, and
    prefer vertices outside X that are moved by the stabilizer of Y.  Falls
    back to scanning every vertex.  Returns None ("stalled") when no vertex
    produces a proper subgroup, which finite graphs can legitimately hit.
    """
    yset = frozenset(y)
    if len(yset) < 2:
        raise ValueError("reducing vertex needs |Y| >= 2")
    stab_y = group.set_stabilizer(yset)
    order_y = stab_y.order()
    if order_y == 1:
        raise ValueError("setwise stabilizer of Y is already trivial")

    moved_by_stab: set[int] = set()
    for gen in stab_y.generators:
        moved_by_stab.update(gen.support())

    filtered: list[int] = []
    if group.order() <= enum_limit:
        x_union: set[int] = set()
        for a in group.elements(enum_limit):
            image = {a(v) for v in yset}
            if image & yset:
                x_union |= image
        filtered = sorted(v for v in moved_by_stab
                          if v not in x_union and v not in yset)

    rest = sorted(v for v in range(group.degree)
                  if v not in yset and v not in filtered)
    for v in filtered + rest:
        stab_v = group.set_stabilizer(yset | {v})
        if stab_v.order() >= order_y:
            continue
        if all(frozenset(gen(u) for u in yset) == yset
               for gen in stab_v.generators):
            return v
    return None


def greedy_distinguishing_chain(group: PermGroup,
                                base: Iterable[int]) -> StabilizerChain:
    """Grow a base one vertex at a time until its setwise stabilizer is trivial.

    Singleton bases are already distinguishing (setwise = pointwise for a
    single vertex), so the loop only ever calls the reduction step with
    |Y| >= 2.  A stalled run returns the partial chain with the flag set.
    """
    base_set = frozenset(base)
    if not is_base(group, base_set):
        raise ValueError("the starting set must be a base (trivial pointwise stabilizer)")
    orders = [group.set_stabilizer(base_set).order()]
    added: list[int] = []
    current = base_set
    stalled = False
    while orders[-1] > 1:
        v = reducing_vertex(group, current)
        if v is None:
            stalled = True
            break
        added.append(v)
        current = current | {v}
        orders.append(group.set_stabilizer(current).order())
    return StabilizerChain(tuple(sorted(base_set)), tuple(added),
                           tuple(orders), stalled)


def subdegree_report(group: PermGroup) -> list[tuple[int, int]]:
    """(vertex, largest orbit size of its point stabilizer) for every vertex.

    Finite graphs are trivially subdegree-finite; the sizes contextualize
    how truncation scales stabilizer orbits.
    """
    out = []
    for v in range(group.degree):
        stab = group.point_stabilizer({v})
        largest = max((len(o) for o in stab.orbits()), default=1)
        out.append((v, largest))
    return out


def longest_subgroup_chain(n: int) -> int:
    """Exact longest strict subgroup chain length in Sym(n), for n <= 5.

    Enumerates the full subgroup lattice by closing subgroups under one
    added element at a time, then takes the longest path by dynamic
    programming over the inclusion order.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > 5:
        raise ValueError("subgroup lattice enumeration is limited to n <= 5")
    from itertools import permutations as iter_perms

    elems = [tuple(p) for p in iter_perms(range(n))]
    index = {p: i for i, p in enumerate(elems)}
    size = len(elems)
    mul = [[0] * size for _ in range(size)]
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            mul[i][j] = index[tuple(p[x] for x in q)]

    ident = index[tuple(range(n))]

    def closure(seed: frozenset[int]) -> frozenset[int]:
        members = set(seed) | {ident}
        frontier = list(members)
        while frontier:
            new = []
            for a in frontier:
                row = mul[a]
                for b in list(members):
                    for c in (row[b], mul[b][a]):
                        if c not in members:
                            members.add(c)
                            new.append(c)
            frontier = new
        return frozenset(members)

    trivial = frozenset({ident})
    subgroups = {trivial}
    queue = [trivial]
    while queue:
        h = queue.pop()
        for g in range(size):
            if g in h:
                continue
            k = closure(h | {g})
            if k not in subgroups:
                subgroups.add(k)
                queue.append(k)

    ordered = sorted(subgroups, key=len)
    longest: dict[frozenset[int], int] = {}
    for h in ordered:
        best = 0
        for k in ordered:
            if len(k) >= len(h):
                break
            if k < h:
                best = max(best, longest[k] + 1)
        longest[h] = best
    return longest[frozenset(range(size))]
