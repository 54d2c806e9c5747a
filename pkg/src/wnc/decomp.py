"""Certificate-producing decision procedures for cleanness notions.

A decomposition writes a target element as companion + idempotent or
companion - idempotent, where the companion is drawn from the nilpotents,
the units or the Jacobson radical depending on the kind.  The search order
is canonical: idempotents ascending by element id, sign '+' before '-',
so returned certificates are deterministic.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional

from .construct import quotient
from .errors import InvalidSubsetError
from .structure import StructureCache, Subset, structure, subset
from .table import ElementId, RingTable


class DecompKind(Enum):
    CLEAN = "clean"
    STRONGLY_CLEAN = "strongly-clean"
    WEAKLY_CLEAN = "weakly-clean"
    NIL_CLEAN = "nil-clean"
    STRONGLY_NIL_CLEAN = "strongly-nil-clean"
    WEAK_NIL_CLEAN = "weak-nil-clean"
    WEAK_STAR_NIL_CLEAN = "weak-star-nil-clean"
    S_WEAK_NIL_CLEAN = "s-weak-nil-clean"
    S_WEAK_STAR_NIL_CLEAN = "s-weak-star-nil-clean"
    J_CLEAN = "j-clean"
    STRONGLY_J_CLEAN = "strongly-j-clean"
    WEAK_J_CLEAN = "weak-j-clean"
    WEAK_STAR_J_CLEAN = "weak-star-j-clean"

    @classmethod
    def from_name(cls, name: str) -> "DecompKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown decomposition kind {name!r}")


# companion class, both signs allowed, commuting required, takes an S argument
_KIND_RULES: dict[DecompKind, tuple[str, bool, bool, bool]] = {
    DecompKind.CLEAN: ("unit", False, False, False),
    DecompKind.STRONGLY_CLEAN: ("unit", False, True, False),
    DecompKind.WEAKLY_CLEAN: ("unit", True, False, False),
    DecompKind.NIL_CLEAN: ("nil", False, False, False),
    DecompKind.STRONGLY_NIL_CLEAN: ("nil", False, True, False),
    DecompKind.WEAK_NIL_CLEAN: ("nil", True, False, False),
    DecompKind.WEAK_STAR_NIL_CLEAN: ("nil", True, True, False),
    DecompKind.S_WEAK_NIL_CLEAN: ("nil", True, False, True),
    DecompKind.S_WEAK_STAR_NIL_CLEAN: ("nil", True, True, True),
    DecompKind.J_CLEAN: ("radical", False, False, False),
    DecompKind.STRONGLY_J_CLEAN: ("radical", False, True, False),
    DecompKind.WEAK_J_CLEAN: ("radical", True, False, False),
    DecompKind.WEAK_STAR_J_CLEAN: ("radical", True, True, False),
}


def kind_takes_subset(kind: DecompKind) -> bool:
    return _KIND_RULES[kind][3]


@dataclass(frozen=True)
class DecompCert:
    """A checked decomposition: target = companion (sign) idempotent."""

    kind: DecompKind
    target: ElementId
    idempotent: ElementId
    companion: ElementId
    sign: str  # "+" or "-"
    commutes: bool


@dataclass(frozen=True)
class RingVerdict:
    """Ring-level outcome of one decomposition kind, with all certificates."""

    kind: DecompKind
    holds: bool
    witness: Optional[ElementId]
    certs: dict[ElementId, DecompCert]
    s: Optional[tuple[ElementId, ...]] = None


def _companion_pool(cache: StructureCache, family: str):
    if family == "nil":
        return cache.nilpotency
    if family == "unit":
        return cache.units
    return cache.radical


def _resolve_s(ring: RingTable, cache: StructureCache,
               s: Optional[Iterable[ElementId] | Subset]) -> tuple[ElementId, ...]:
    if s is None:
        raise InvalidSubsetError("this kind needs an idempotent subset S")
    members = s.members if isinstance(s, Subset) else frozenset(int(x) for x in s)
    if not members:
        raise InvalidSubsetError("S must be a non-empty set of idempotents")
    bad = members - cache.idempotent_set
    if bad:
        raise InvalidSubsetError(
            f"S contains non-idempotent elements {sorted(bad)} of {ring.label}"
        )
    return tuple(sorted(members))


def iter_decomps(ring: RingTable, x: ElementId, kind: DecompKind,
                 s: Optional[Iterable[ElementId] | Subset] = None) -> Iterator[DecompCert]:
    """All decompositions of x of the given kind, in canonical search order."""
    ring.check_element(x)
    cache = structure(ring)
    family, both_signs, need_commute, takes_s = _KIND_RULES[kind]
    pool = _companion_pool(cache, family)
    idems = _resolve_s(ring, cache, s) if takes_s else cache.idempotents
    add, mul, neg = ring.add, ring.mul, ring.neg
    signs = ("+", "-") if both_signs else ("+",)
    for e in idems:
        for sign in signs:
            companion = int(add[x, neg[e]]) if sign == "+" else int(add[x, e])
            if companion not in pool:
                continue
            commutes = int(mul[companion, e]) == int(mul[e, companion])
            if need_commute and not commutes:
                continue
            yield DecompCert(kind, x, e, companion, sign, commutes)


def find_decomp(ring: RingTable, x: ElementId, kind: DecompKind,
                s: Optional[Iterable[ElementId] | Subset] = None) -> Optional[DecompCert]:
    """First certificate in canonical order, or None when no decomposition exists."""
    return next(iter_decomps(ring, x, kind, s), None)


def cert_is_valid(ring: RingTable, cert: DecompCert,
                  s: Optional[Iterable[ElementId] | Subset] = None) -> bool:
    """Re-evaluate a certificate directly against the ring tables."""
    cache = structure(ring)
    family, both_signs, need_commute, takes_s = _KIND_RULES[cert.kind]
    if cert.companion not in _companion_pool(cache, family):
        return False
    idems = _resolve_s(ring, cache, s) if takes_s else cache.idempotents
    if cert.idempotent not in idems:
        return False
    if cert.sign == "+":
        recomposed = int(ring.add[cert.companion, cert.idempotent])
    elif both_signs:
        recomposed = int(ring.add[cert.companion, ring.neg[cert.idempotent]])
    else:
        return False
    if recomposed != cert.target:
        return False
    commutes = int(ring.mul[cert.companion, cert.idempotent]) == int(
        ring.mul[cert.idempotent, cert.companion]
    )
    if commutes != cert.commutes:
        return False
    return commutes or not need_commute


_verdict_memo: "weakref.WeakKeyDictionary[RingTable, dict]" = weakref.WeakKeyDictionary()


def ring_verdict(ring: RingTable, kind: DecompKind,
                 s: Optional[Iterable[ElementId] | Subset] = None) -> RingVerdict:
    """Decide the ring-level property; certificates are kept for every element."""
    cache = structure(ring)
    s_tuple = _resolve_s(ring, cache, s) if kind_takes_subset(kind) else None
    memo = _verdict_memo.setdefault(ring, {})
    key = (kind, s_tuple)
    if key in memo:
        return memo[key]
    certs: dict[ElementId, DecompCert] = {}
    witness: Optional[ElementId] = None
    for x in ring.elements():
        cert = find_decomp(ring, x, kind, s_tuple)
        if cert is not None:
            certs[x] = cert
        elif witness is None:
            witness = x
    verdict = RingVerdict(kind, witness is None, witness, certs, s_tuple)
    memo[key] = verdict
    return verdict


def verdict_to_json(ring: RingTable, verdict: RingVerdict) -> dict:
    """Documented JSON shape with fixed field order."""
    out: dict = {"ring": ring.label, "kind": verdict.kind.value}
    if verdict.s is not None:
        out["s"] = list(verdict.s)
    out["holds"] = verdict.holds
    out["witness"] = verdict.witness
    out["certs"] = [
        {
            "x": x,
            "e": cert.idempotent,
            "companion": cert.companion,
            "sign": cert.sign,
            "commutes": cert.commutes,
        }
        for x, cert in sorted(verdict.certs.items())
    ]
    return out


@dataclass(frozen=True)
class ExchangeReport:
    side: str
    holds: bool
    witnesses: dict[ElementId, ElementId]
    failure: Optional[ElementId]


def is_exchange(ring: RingTable, side: str = "right") -> ExchangeReport:
    """Exchange-ring test: an idempotent e in xR with 1-e in (1-x)R.

    ``side`` selects the right-module or left-module form; both are decided
    by brute force and compared elsewhere since the convention is ambiguous.
    """
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")
    cache = structure(ring)
    mul = ring.mul
    witnesses: dict[ElementId, ElementId] = {}
    for x in ring.elements():
        one_minus_x = ring.sub(ring.one, x)
        if side == "right":
            reach_x = set(int(v) for v in mul[x])
            reach_1mx = set(int(v) for v in mul[one_minus_x])
        else:
            reach_x = set(int(v) for v in mul[:, x])
            reach_1mx = set(int(v) for v in mul[:, one_minus_x])
        found = None
        for e in cache.idempotents:
            if e in reach_x and ring.sub(ring.one, e) in reach_1mx:
                found = e
                break
        if found is None:
            return ExchangeReport(side, False, witnesses, x)
        witnesses[x] = found
    return ExchangeReport(side, True, witnesses, None)


def is_strongly_pi_regular(ring: RingTable) -> bool:
    """Some power a**k lies in a**(k+1)R and in R a**(k+1), for every a."""
    mul = ring.mul
    for a in ring.elements():
        power = a
        ok = False
        for _ in range(ring.order):
            next_power = int(mul[power, a])
            if power in set(int(v) for v in mul[next_power]) and power in set(
                int(v) for v in mul[:, next_power]
            ):
                ok = True
                break
            power = next_power
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class LiftReport:
    holds: bool
    witnesses: dict[ElementId, ElementId]  # quotient idempotent -> lifted idempotent
    failure: Optional[ElementId]


def _lift_report(ring: RingTable, ideal: Subset, weak: bool) -> LiftReport:
    quot, proj = quotient(ring, ideal)
    qcache = structure(quot)
    cache = structure(ring)
    witnesses: dict[ElementId, ElementId] = {}
    for ebar in qcache.idempotents:
        targets = {ebar, int(quot.neg[ebar])} if weak else {ebar}
        found = next((e for e in cache.idempotents if proj[e] in targets), None)
        if found is None:
            return LiftReport(False, witnesses, ebar)
        witnesses[ebar] = found
    return LiftReport(True, witnesses, None)


def lifts_idempotents_weakly(ring: RingTable, ideal: Subset) -> LiftReport:
    """For each idempotent coset, some ring idempotent e has e-x or e+x in I."""
    return _lift_report(ring, ideal, weak=True)


def lifts_idempotents(ring: RingTable, ideal: Subset) -> LiftReport:
    """Classical lifting: for each idempotent coset, some idempotent maps onto it."""
    return _lift_report(ring, ideal, weak=False)


def nil_clean_count_bound(p: int, k: int) -> int:
    """The cardinality bound 4*p**(k-1) on elements expressible as +-n +- e in Z_{p**k}."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"p must be prime, got {p}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return 4 * p ** (k - 1)


def zero_one_subset(ring: RingTable) -> Subset:
    """The subset {0, 1}, the distinguished S of the unique-maximal-ideal test."""
    return subset(ring, {ring.zero, ring.one})
