"""Structural sets of a finite ring: units, idempotents, nilpotents, radical, ideals.

The Jacobson radical is computed with the finite-ring quasi-regularity test
J(R) = {x : 1 - r*x is a unit for every r}; in a finite ring one-sided
invertibility already implies invertibility, so no side distinction is needed.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import CrossRingError
from .table import ElementId, RingTable


@dataclass(frozen=True, eq=False)
class StructureCache:
    """Memoized structural sets of one ring.

    nilpotency maps x to the smallest k >= 1 with x**k = 0; its key set is Nil(R).
    """

    ring: RingTable
    units: frozenset[ElementId]
    inverse: dict[ElementId, ElementId]
    idempotents: tuple[ElementId, ...]
    nilpotency: dict[ElementId, int]
    radical: frozenset[ElementId]

    @property
    def idempotent_set(self) -> frozenset[ElementId]:
        return frozenset(self.idempotents)

    @property
    def nilpotents(self) -> frozenset[ElementId]:
        return frozenset(self.nilpotency)


_structure_memo: "weakref.WeakKeyDictionary[RingTable, StructureCache]" = weakref.WeakKeyDictionary()


def _nilpotency_indices(ring: RingTable) -> dict[int, int]:
    n = ring.order
    idx = np.arange(n)
    powers = idx.copy()
    undecided = np.ones(n, dtype=bool)
    out: dict[int, int] = {}
    seen_states: set[bytes] = set()
    for k in range(1, n + 1):
        hits = undecided & (powers == ring.zero)
        for x in np.flatnonzero(hits):
            out[int(x)] = k
        undecided &= ~hits
        if not undecided.any():
            break
        state = powers.tobytes()
        if state in seen_states:
            break
        seen_states.add(state)
        powers = ring.mul[powers, idx]
    return dict(sorted(out.items()))


def structure(ring: RingTable) -> StructureCache:
    """Compute (and memoize) units with inverses, Idem(R), Nil(R) and J(R)."""
    cached = _structure_memo.get(ring)
    if cached is not None:
        return cached
    n = ring.order
    idx = np.arange(n)
    mul = ring.mul

    idempotents = tuple(int(x) for x in np.flatnonzero(mul[idx, idx] == idx))

    two_sided = (mul == ring.one) & (mul == ring.one).T
    unit_mask = two_sided.any(axis=1)
    inverse = {int(a): int(two_sided[a].argmax()) for a in np.flatnonzero(unit_mask)}
    units = frozenset(inverse)

    nilpotency = _nilpotency_indices(ring)

    one_minus = ring.add[ring.one][ring.neg[mul]]
    radical_mask = unit_mask[one_minus].all(axis=0)
    radical = frozenset(int(x) for x in np.flatnonzero(radical_mask))

    cache = StructureCache(ring, units, inverse, idempotents, nilpotency, radical)
    _structure_memo[ring] = cache
    return cache


@dataclass(frozen=True, eq=False)
class Subset:
    """A subset of a ring's elements, with recomputable structural flags."""

    ring: RingTable
    members: frozenset[ElementId]
    is_additive_subgroup: bool
    is_left_ideal: bool
    is_right_ideal: bool

    @property
    def is_two_sided_ideal(self) -> bool:
        return self.is_additive_subgroup and self.is_left_ideal and self.is_right_ideal

    def sorted_members(self) -> tuple[ElementId, ...]:
        return tuple(sorted(self.members))

    def __contains__(self, x: ElementId) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def _check_same_ring(self, other: "Subset") -> None:
        if self.ring is not other.ring:
            raise CrossRingError(
                f"subsets of {self.ring.label} and {other.ring.label} cannot be mixed"
            )

    def issubset(self, other: "Subset") -> bool:
        self._check_same_ring(other)
        return self.members <= other.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subset):
            return NotImplemented
        return self.ring is other.ring and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.ring), self.members))

    def __repr__(self) -> str:
        return f"Subset({self.ring.label}, {sorted(self.members)})"


def subset(ring: RingTable, members: Iterable[ElementId]) -> Subset:
    """Build a Subset, computing its subgroup/ideal flags from the member set."""
    mset = frozenset(int(x) for x in members)
    for x in mset:
        ring.check_element(x)
    add, mul, neg = ring.add, ring.mul, ring.neg
    is_group = ring.zero in mset
    if is_group:
        for a in mset:
            if int(neg[a]) not in mset:
                is_group = False
                break
            for b in mset:
                if int(add[a, b]) not in mset:
                    is_group = False
                    break
            if not is_group:
                break
    left = is_group and all(
        int(mul[r, x]) in mset for r in ring.elements() for x in mset
    )
    right = is_group and all(
        int(mul[x, r]) in mset for r in ring.elements() for x in mset
    )
    return Subset(ring, mset, is_group, left, right)


def element_of(handle: Subset, x: ElementId) -> bool:
    handle.ring.check_element(x)
    return x in handle.members


def is_subring_unital(ring: RingTable, members: Iterable[ElementId]) -> bool:
    """True when the member set is closed under add/neg/mul and contains 0 and 1."""
    mset = frozenset(int(x) for x in members)
    if ring.zero not in mset or ring.one not in mset:
        return False
    for a in mset:
        if int(ring.neg[a]) not in mset:
            return False
        for b in mset:
            if int(ring.add[a, b]) not in mset or int(ring.mul[a, b]) not in mset:
                return False
    return True


def ann_left(ring: RingTable, x: ElementId) -> Subset:
    """Left annihilator {r : r*x = 0}; always a left ideal."""
    ring.check_element(x)
    members = np.flatnonzero(ring.mul[:, x] == ring.zero)
    return subset(ring, members)


def ann_right(ring: RingTable, x: ElementId) -> Subset:
    """Right annihilator {r : x*r = 0}; always a right ideal."""
    ring.check_element(x)
    members = np.flatnonzero(ring.mul[x] == ring.zero)
    return subset(ring, members)


def _ideal_closure(ring: RingTable, gens: Iterable[ElementId]) -> frozenset[int]:
    add, mul, neg = ring.add, ring.mul, ring.neg
    members: set[int] = {ring.zero}
    queue: list[int] = []
    for g in gens:
        g = int(g)
        if g not in members:
            members.add(g)
            queue.append(g)
    while queue:
        x = queue.pop()
        candidates = [int(neg[x])]
        candidates.extend(int(v) for v in mul[:, x])
        candidates.extend(int(v) for v in mul[x])
        candidates.extend(int(add[x, y]) for y in tuple(members))
        for c in candidates:
            if c not in members:
                members.add(c)
                queue.append(c)
    return frozenset(members)


def ideal_generated_by(ring: RingTable, gens: Iterable[ElementId]) -> Subset:
    """Smallest two-sided ideal containing the generators (closure to fixpoint)."""
    gens = [int(g) for g in gens]
    for g in gens:
        ring.check_element(g)
    return subset(ring, _ideal_closure(ring, gens))


_ideals_memo: "weakref.WeakKeyDictionary[RingTable, tuple[frozenset[int], ...]]" = (
    weakref.WeakKeyDictionary()
)


def all_ideals(ring: RingTable) -> tuple[frozenset[int], ...]:
    """Every two-sided ideal: principal ideals saturated under pairwise sums.

    Complete because each ideal is the sum of the principal ideals of its members.
    """
    cached = _ideals_memo.get(ring)
    if cached is not None:
        return cached
    add = ring.add
    ideals: set[frozenset[int]] = {_ideal_closure(ring, (x,)) for x in ring.elements()}
    changed = True
    while changed:
        changed = False
        current = sorted(ideals, key=lambda s: (len(s), sorted(s)))
        for i, a in enumerate(current):
            ta = sorted(a)
            for b in current[i + 1 :]:
                if a <= b or b <= a:
                    continue
                total = frozenset(int(v) for v in np.unique(add[np.ix_(ta, sorted(b))]))
                if total not in ideals:
                    ideals.add(total)
                    changed = True
    result = tuple(sorted(ideals, key=lambda s: (len(s), sorted(s))))
    _ideals_memo[ring] = result
    return result


def maximal_ideals(ring: RingTable) -> list[Subset]:
    """All maximal proper two-sided ideals, canonically sorted."""
    everything = frozenset(ring.elements())
    proper = [i for i in all_ideals(ring) if i != everything]
    maximal = [
        i for i in proper if not any(i < j for j in proper)
    ]
    maximal.sort(key=lambda s: (len(s), sorted(s)))
    return [subset(ring, m) for m in maximal]
