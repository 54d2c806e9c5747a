"""Targeted ring-isomorphism search for small rings.

Backtracking over element images with closure propagation; candidate images
are pruned by cheap per-element invariants (additive order, idempotency,
nilpotency index, unit flag).  Intended for fixture-sized rings, not for
isomorphism classification at scale.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .structure import structure
from .table import RingTable


def _additive_order(ring: RingTable, x: int) -> int:
    acc = x
    k = 1
    while acc != ring.zero:
        acc = int(ring.add[acc, x])
        k += 1
    return k


def _signatures(ring: RingTable) -> list[tuple[int, bool, int, bool]]:
    cache = structure(ring)
    sigs = []
    for x in ring.elements():
        sigs.append(
            (
                _additive_order(ring, x),
                int(ring.mul[x, x]) == x,
                cache.nilpotency.get(x, 0),
                x in cache.units,
            )
        )
    return sigs


def find_isomorphism(a: RingTable, b: RingTable) -> Optional[tuple[int, ...]]:
    """A ring isomorphism a -> b as an id mapping, or None."""
    if a.order != b.order:
        return None
    siga, sigb = _signatures(a), _signatures(b)
    if sorted(siga) != sorted(sigb):
        return None
    n = a.order
    map_ab = [-1] * n
    map_ba = [-1] * n
    trail: list[int] = []
    aadd, amul, badd, bmul = a.add, a.mul, b.add, b.mul

    def assign(x: int, y: int) -> bool:
        queue = [(x, y)]
        while queue:
            x, y = queue.pop()
            if map_ab[x] != -1:
                if map_ab[x] != y:
                    return False
                continue
            if map_ba[y] != -1 or siga[x] != sigb[y]:
                return False
            map_ab[x] = y
            map_ba[y] = x
            trail.append(x)
            for z in tuple(trail):
                w = map_ab[z]
                queue.append((int(aadd[x, z]), int(badd[y, w])))
                queue.append((int(aadd[z, x]), int(badd[w, y])))
                queue.append((int(amul[x, z]), int(bmul[y, w])))
                queue.append((int(amul[z, x]), int(bmul[w, y])))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            x = trail.pop()
            map_ba[map_ab[x]] = -1
            map_ab[x] = -1

    def backtrack() -> bool:
        x = next((i for i in range(n) if map_ab[i] == -1), None)
        if x is None:
            return True
        for y in range(n):
            if map_ba[y] != -1 or sigb[y] != siga[x]:
                continue
            mark = len(trail)
            if assign(x, y) and backtrack():
                return True
            undo(mark)
        return False

    if not (assign(a.zero, b.zero) and assign(a.one, b.one)):
        return None
    if not backtrack():
        return None
    mapped = np.array(map_ab)
    if not np.array_equal(mapped[a.add], b.add[np.ix_(mapped, mapped)]):
        return None
    if not np.array_equal(mapped[a.mul], b.mul[np.ix_(mapped, mapped)]):
        return None
    return tuple(map_ab)
