"""Executable checks for the structural results about weak nil clean rings.

Each check runs against one built ring and returns pass, fail (with a minimal
witness) or not-applicable.  run_suite evaluates a corpus of ring expressions
against the registry and produces a deterministic report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .construct import (
    Idealize,
    Prod,
    RingExpr,
    Zn,
    build,
    corner,
    expr_label,
    parse_ring_expr,
    quotient,
)
from .decomp import (
    DecompKind,
    is_exchange,
    is_strongly_pi_regular,
    iter_decomps,
    lifts_idempotents,
    lifts_idempotents_weakly,
    ring_verdict,
    zero_one_subset,
)
from .errors import CapacityError, RingError
from .structure import all_ideals, maximal_ideals, structure, subset
from .table import RingTable, verify_ring_axioms


def _holds(ring: RingTable, kind: DecompKind, s=None) -> bool:
    return ring_verdict(ring, kind, s).holds


def _weak_nil_clean(ring: RingTable) -> bool:
    return _holds(ring, DecompKind.WEAK_NIL_CLEAN)


def _is_2r3t(n: int) -> bool:
    """n = 2**r * 3**t with t >= 1."""
    if n < 3 or n % 3 != 0:
        return False
    while n % 2 == 0:
        n //= 2
    while n % 3 == 0:
        n //= 3
    return n == 1


def _is_prime_power(n: int, p: int) -> bool:
    if n < p:
        return False
    while n % p == 0:
        n //= p
    return n == 1


# --- single-ring check operations ---------------------------------------------


def check_J_subset_Nil(ring: RingTable) -> tuple[bool, Optional[str]]:
    """J(R) is contained in Nil(R)."""
    cache = structure(ring)
    stray = sorted(cache.radical - cache.nilpotents)
    if stray:
        return False, f"radical element {stray[0]} is not nilpotent"
    return True, None


def check_quotient_preservation(ring: RingTable, ideal) -> tuple[bool, Optional[str]]:
    """R/I stays weak nil clean."""
    quot, _ = quotient(ring, ideal)
    verdict = ring_verdict(quot, DecompKind.WEAK_NIL_CLEAN)
    if not verdict.holds:
        return False, (
            f"quotient by {sorted(ideal.members)} fails at element {verdict.witness}"
        )
    return True, None


def check_product_theorem(product_ring: RingTable,
                          factors: Sequence[RingTable]) -> tuple[bool, Optional[str]]:
    """Product is weak nil clean iff all factors are and at most one is not nil clean."""
    lhs = _weak_nil_clean(product_ring)
    all_weak = all(_weak_nil_clean(f) for f in factors)
    bad = sum(1 for f in factors if not _holds(f, DecompKind.NIL_CLEAN))
    rhs = all_weak and bad <= 1
    if lhs != rhs:
        return False, (
            f"product verdict {lhs} but factors weak={all_weak}, non-nil-clean count={bad}"
        )
    return True, None


def check_nilradical_quotient(ring: RingTable) -> tuple[bool, Optional[str]]:
    """R weak nil clean iff R/Nil(R) is, given classical idempotent lifting."""
    cache = structure(ring)
    nil = subset(ring, cache.nilpotents)
    if not nil.is_two_sided_ideal:
        return False, "nilpotent set is not an ideal"
    quot, _ = quotient(ring, nil)
    r_weak = _weak_nil_clean(ring)
    q_weak = _weak_nil_clean(quot)
    if r_weak and not q_weak:
        return False, "ring is weak nil clean but its nil-radical quotient is not"
    lifting = lifts_idempotents(ring, nil).holds
    if q_weak and lifting and not r_weak:
        return False, "quotient weak nil clean with lifting, yet ring fails"
    return True, None


def check_idealization(base: RingTable, extended: RingTable) -> tuple[bool, Optional[str]]:
    """R weak nil clean iff the idealization R(M) is."""
    lhs = _weak_nil_clean(base)
    rhs = _weak_nil_clean(extended)
    if lhs != rhs:
        return False, f"base verdict {lhs} but idealization verdict {rhs}"
    return True, None


def check_zn_flags(n: int, ring: RingTable) -> tuple[bool, Optional[str]]:
    """Z_n classification facts for a single n."""
    weak = _weak_nil_clean(ring)
    nil = _holds(ring, DecompKind.NIL_CLEAN)
    if (weak and not nil) != _is_2r3t(n):
        return False, f"n={n}: weak={weak}, nil={nil} contradicts the 2^r*3^t classification"
    if _is_prime_power(n, 2) and not nil:
        return False, f"n={n}: a 2-power ring must be nil clean"
    if _is_prime_power(n, 3) and not (weak and not nil):
        return False, f"n={n}: a 3-power ring must be weak nil clean and not nil clean"
    return True, None


def zn_classification(n_max: int, budget: Optional[int] = None) -> tuple[bool, list[str]]:
    """Sweep Z_n for 2 <= n <= n_max against the 2^r*3^t classification."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    mismatches: list[str] = []
    for n in range(2, n_max + 1):
        ring = build(Zn(n), budget)
        ok, witness = check_zn_flags(n, ring)
        if not ok:
            mismatches.append(witness or f"n={n}")
    return not mismatches, mismatches


def _left_annihilator_set(ring: RingTable, x: int) -> frozenset[int]:
    return frozenset(int(v) for v in np.flatnonzero(ring.mul[:, x] == ring.zero))


def _right_annihilator_set(ring: RingTable, x: int) -> frozenset[int]:
    return frozenset(int(v) for v in np.flatnonzero(ring.mul[x] == ring.zero))


def check_annihilator_lemmas(ring: RingTable) -> tuple[bool, Optional[str]]:
    """Annihilator containments for every commuting nil decomposition."""
    mul = ring.mul
    for x in ring.elements():
        ann_l_x = _left_annihilator_set(ring, x)
        ann_r_x = _right_annihilator_set(ring, x)
        for cert in iter_decomps(ring, x, DecompKind.WEAK_STAR_NIL_CLEAN):
            e = cert.idempotent
            one_minus_e = ring.sub(ring.one, e)
            if not ann_l_x <= _left_annihilator_set(ring, e):
                return False, f"x={x}, e={e}: left annihilator escapes ann_l(e)"
            if not ann_r_x <= _right_annihilator_set(ring, e):
                return False, f"x={x}, e={e}: right annihilator escapes ann_r(e)"
            left_multiples = frozenset(int(v) for v in mul[:, one_minus_e])
            right_multiples = frozenset(int(v) for v in mul[one_minus_e])
            if not ann_l_x <= left_multiples:
                return False, f"x={x}, e={e}: ann_l(x) escapes R(1-e)"
            if not ann_r_x <= right_multiples:
                return False, f"x={x}, e={e}: ann_r(x) escapes (1-e)R"
    return True, None


def check_corner_theorem(ring: RingTable, f: int) -> tuple[bool, Optional[str]]:
    """Commuting nil decomposability in R and in fRf agree on fRf.

    When an element decomposes in R, the conjugated certificate (fnf, fef)
    must re-validate inside the corner ring.
    """
    corner_ring, embed = corner(ring, f)
    to_corner = {x: i for i, x in enumerate(embed)}
    parent_certs = ring_verdict(ring, DecompKind.WEAK_STAR_NIL_CLEAN).certs
    corner_certs = ring_verdict(corner_ring, DecompKind.WEAK_STAR_NIL_CLEAN).certs
    corner_cache = structure(corner_ring)
    mul = ring.mul
    for ci, x in enumerate(embed):
        in_parent = x in parent_certs
        in_corner = ci in corner_certs
        if in_parent != in_corner:
            return False, f"f={f}, x={x}: decomposable in R is {in_parent}, in fRf is {in_corner}"
        if not in_parent:
            continue
        cert = parent_certs[x]
        fnf = int(mul[f, mul[cert.companion, f]])
        fef = int(mul[f, mul[cert.idempotent, f]])
        if fnf not in to_corner or fef not in to_corner:
            return False, f"f={f}, x={x}: conjugated parts leave the corner"
        cn, ce = to_corner[fnf], to_corner[fef]
        if cn not in corner_cache.nilpotency:
            return False, f"f={f}, x={x}: fnf={fnf} is not nilpotent in the corner"
        if int(corner_ring.mul[ce, ce]) != ce:
            return False, f"f={f}, x={x}: fef={fef} is not idempotent in the corner"
        if int(corner_ring.mul[cn, ce]) != int(corner_ring.mul[ce, cn]):
            return False, f"f={f}, x={x}: conjugated parts do not commute"
        if cert.sign == "+":
            recomposed = int(corner_ring.add[cn, ce])
        else:
            recomposed = int(corner_ring.add[cn, corner_ring.neg[ce]])
        if recomposed != ci:
            return False, f"f={f}, x={x}: conjugated certificate does not recompose"
    return True, None


def check_S_unique_maximal(ring: RingTable) -> tuple[bool, Optional[str]]:
    """{0,1}-weak nil clean rings have one maximal ideal, via the proof facts."""
    cache = structure(ring)
    everything = set(ring.elements())
    if set(cache.units) | set(cache.nilpotents) != everything:
        return False, "some element is neither a unit nor nilpotent"
    shifted = {int(ring.add[ring.one, n]) for n in cache.nilpotents} | {
        int(ring.add[ring.neg[ring.one], n]) for n in cache.nilpotents
    }
    if shifted != set(cache.units):
        return False, "units differ from (1 + Nil) union (-1 + Nil)"
    nil = subset(ring, cache.nilpotents)
    if not nil.is_two_sided_ideal:
        return False, "nilpotents do not form a two-sided ideal"
    if cache.radical != cache.nilpotents:
        return False, "radical differs from the nilpotent set"
    found = maximal_ideals(ring)
    if len(found) != 1:
        return False, f"found {len(found)} maximal ideals"
    return True, None


def check_S_rigidity(ring: RingTable, s: Iterable[int]) -> tuple[bool, Optional[str]]:
    """If the ring is S-weak* nil clean then S is all of Idem(R)."""
    cache = structure(ring)
    s_tuple = tuple(sorted(int(x) for x in s))
    verdict = ring_verdict(ring, DecompKind.S_WEAK_STAR_NIL_CLEAN, s_tuple)
    if verdict.holds and set(s_tuple) != set(cache.idempotents):
        return False, f"S={list(s_tuple)} suffices but is a proper subset of the idempotents"
    return True, None


def check_weakstar_exchange(ring: RingTable) -> tuple[bool, Optional[str]]:
    """Weak* nil clean rings are exchange (both side conventions)."""
    for side in ("right", "left"):
        report = is_exchange(ring, side)
        if not report.holds:
            return False, f"{side} exchange fails at element {report.failure}"
    return True, None


def check_strongly_nilclean_equiv(ring: RingTable) -> tuple[bool, Optional[str]]:
    """Strongly nil clean iff weak* nil clean with 2 nilpotent."""
    cache = structure(ring)
    two = int(ring.add[ring.one, ring.one])
    lhs = _holds(ring, DecompKind.STRONGLY_NIL_CLEAN)
    rhs = _holds(ring, DecompKind.WEAK_STAR_NIL_CLEAN) and two in cache.nilpotency
    if lhs != rhs:
        return False, f"strongly nil clean is {lhs} but weak*-with-2-nilpotent is {rhs}"
    return True, None


def _is_boolean(ring: RingTable) -> bool:
    return len(structure(ring).idempotents) == ring.order


def check_weak_jclean_suite(ring: RingTable) -> tuple[bool, Optional[str]]:
    """Bundle of radical-decomposition facts (see the registry entry)."""
    cache = structure(ring)
    strongly_clean_certs = ring_verdict(ring, DecompKind.STRONGLY_CLEAN).certs
    wsj_certs = ring_verdict(ring, DecompKind.WEAK_STAR_J_CLEAN).certs
    for x in ring.elements():
        ann_l_x = ann_r_x = None
        for cert in iter_decomps(ring, x, DecompKind.WEAK_STAR_J_CLEAN):
            if x not in strongly_clean_certs:
                return False, f"(a) x={x} is weak* J-clean but not strongly clean"
            if ann_l_x is None or ann_r_x is None:
                ann_l_x = _left_annihilator_set(ring, x)
                ann_r_x = _right_annihilator_set(ring, x)
            e = cert.idempotent
            if not ann_l_x <= _left_annihilator_set(ring, e):
                return False, f"(b) x={x}, e={e}: left annihilator escapes ann_l(e)"
            if not ann_r_x <= _right_annihilator_set(ring, e):
                return False, f"(b) x={x}, e={e}: right annihilator escapes ann_r(e)"
    for f in cache.idempotents:
        corner_ring, embed = corner(ring, f)
        corner_certs = ring_verdict(corner_ring, DecompKind.WEAK_STAR_J_CLEAN).certs
        for ci, x in enumerate(embed):
            if (x in wsj_certs) != (ci in corner_certs):
                return False, f"(c) f={f}, x={x}: weak* J-cleanness differs in the corner"
    radical = subset(ring, cache.radical)
    quot, _ = quotient(ring, radical)
    boolean = _is_boolean(quot)
    if boolean and lifts_idempotents_weakly(ring, radical).holds:
        verdict = ring_verdict(ring, DecompKind.WEAK_J_CLEAN)
        if not verdict.holds:
            return False, f"(d) boolean quotient with weak lifting, element {verdict.witness} fails"
    if boolean and len(wsj_certs) == ring.order:
        verdict = ring_verdict(ring, DecompKind.J_CLEAN)
        if not verdict.holds:
            return False, f"(e) weak* J-clean with boolean quotient, element {verdict.witness} fails"
    return True, None


def check_pi_regular(ring: RingTable) -> tuple[bool, Optional[str]]:
    """Strong pi-regularity (always expected in a finite ring)."""
    if not is_strongly_pi_regular(ring):
        return False, "some power chain never stabilizes"
    return True, None


# --- corpus -------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusLine:
    text: str
    waive_over_budget: bool = False


@dataclass(frozen=True)
class CorpusEntry:
    text: str
    label: str
    expr: Optional[RingExpr]
    ring: Optional[RingTable]
    error: Optional[str] = None
    waived: bool = False


def parse_corpus(text: str) -> list[CorpusLine]:
    """One expression per line; '#' starts a comment; '!waive' marks a size waiver."""
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        waive = stripped.endswith("!waive")
        if waive:
            stripped = stripped[: -len("!waive")].strip()
        lines.append(CorpusLine(stripped, waive))
    return lines


def default_corpus() -> list[str]:
    """The built-in corpus exercising every check positively and negatively."""
    entries = [f"Z({n})" for n in range(2, 37)]
    entries += ["M2(Z(2))", "M2(Z(3))", "T2(Z(2))", "T2(Z(3))"]
    entries += ["eqdiag2(Z(2))", "eqdiag2(Z(6))"]
    entries += ["prod(Z(4),Z(9))", "prod(Z(9),Z(9))", "prod(Z(2),Z(3),Z(3))"]
    entries += ["idealize(Z(6),self)", "idealize(Z(5),self)", "idealize(Z(6),Z(3))"]
    for base in ("M2(Z(2))", "M2(Z(3))"):
        ring = build(parse_ring_expr(base))
        for e in structure(ring).idempotents:
            entries.append(f"corner({base},{e})")
    entries += ["quot(Z(36),[6])", "skew(Z(6),id,2)", "skew(prod(Z(3),Z(3)),swap(1,2),2)"]
    return entries


def build_corpus(corpus: Iterable[str | CorpusLine],
                 budget: Optional[int] = None) -> list[CorpusEntry]:
    entries = []
    for line in corpus:
        if isinstance(line, str):
            parsed = parse_corpus(line)
            if not parsed:
                continue
            line = parsed[0]
        try:
            expr = parse_ring_expr(line.text)
            label = expr_label(expr)
        except RingError as exc:
            entries.append(CorpusEntry(line.text, line.text, None, None, str(exc)))
            continue
        try:
            ring = build(expr, budget)
        except CapacityError as exc:
            entries.append(
                CorpusEntry(line.text, label, expr, None, str(exc), line.waive_over_budget)
            )
            continue
        except RingError as exc:
            entries.append(CorpusEntry(line.text, label, expr, None, str(exc)))
            continue
        entries.append(CorpusEntry(line.text, label, expr, ring))
    return entries


# --- registry and runner ------------------------------------------------------


@dataclass(frozen=True)
class TheoremCheck:
    check_id: str
    statements: tuple[str, ...]
    applicable: Callable[[CorpusEntry], bool]
    run: Callable[[CorpusEntry], tuple[bool, Optional[str]]]


def _always(entry: CorpusEntry) -> bool:
    return True


def _applicable_weak(entry: CorpusEntry) -> bool:
    return _weak_nil_clean(entry.ring)


def _run_quotient_image(entry: CorpusEntry) -> tuple[bool, Optional[str]]:
    ring = entry.ring
    for members in all_ideals(ring):
        ok, witness = check_quotient_preservation(ring, subset(ring, members))
        if not ok:
            return False, witness
    return True, None


def _run_product(entry: CorpusEntry) -> tuple[bool, Optional[str]]:
    assert isinstance(entry.expr, Prod)
    factors = [build(f) for f in entry.expr.factors]
    return check_product_theorem(entry.ring, factors)


def _run_idealization(entry: CorpusEntry) -> tuple[bool, Optional[str]]:
    assert isinstance(entry.expr, Idealize)
    return check_idealization(build(entry.expr.inner), entry.ring)


def _run_zn(entry: CorpusEntry) -> tuple[bool, Optional[str]]:
    assert isinstance(entry.expr, Zn)
    return check_zn_flags(entry.expr.n, entry.ring)


def _run_corner(entry: CorpusEntry) -> tuple[bool, Optional[str]]:
    for f in structure(entry.ring).idempotents:
        ok, witness = check_corner_theorem(entry.ring, f)
        if not ok:
            return False, witness
    return True, None


def _rigidity_subsets(idempotents: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    m = len(idempotents)
    if m <= 8:
        for mask in range(1, 1 << m):
            yield tuple(idempotents[i] for i in range(m) if mask >> i & 1)
    else:
        for drop in idempotents:
            yield tuple(e for e in idempotents if e != drop)
        yield idempotents


def _run_rigidity(entry: CorpusEntry) -> tuple[bool, Optional[str]]:
    idems = structure(entry.ring).idempotents
    for s in _rigidity_subsets(idems):
        ok, witness = check_S_rigidity(entry.ring, s)
        if not ok:
            return False, witness
    return True, None


def _run_unique_maximal(entry: CorpusEntry) -> tuple[bool, Optional[str]]:
    return check_S_unique_maximal(entry.ring)


def _applicable_zero_one_weak(entry: CorpusEntry) -> bool:
    if entry.ring.order == 1:
        return False  # no proper ideals exist; the statement presumes 0 != 1
    return _holds(entry.ring, DecompKind.S_WEAK_NIL_CLEAN, zero_one_subset(entry.ring))


def _applicable_weak_star(entry: CorpusEntry) -> bool:
    return _holds(entry.ring, DecompKind.WEAK_STAR_NIL_CLEAN)


def _applicable_weak_star_two_nil(entry: CorpusEntry) -> bool:
    two = int(entry.ring.add[entry.ring.one, entry.ring.one])
    return _applicable_weak_star(entry) and two in structure(entry.ring).nilpotency


def _applicable_commutative(entry: CorpusEntry) -> bool:
    return entry.ring.is_commutative()


REGISTRY: tuple[TheoremCheck, ...] = (
    TheoremCheck(
        "prop-J-subset-Nil",
        ("radical-inside-nilpotents",),
        _applicable_weak,
        lambda entry: check_J_subset_Nil(entry.ring),
    ),
    TheoremCheck(
        "thm-quotient-image",
        ("homomorphic-image-preservation",),
        _applicable_weak,
        _run_quotient_image,
    ),
    TheoremCheck(
        "thm-finite-product",
        ("finite-product-characterization",),
        lambda entry: isinstance(entry.expr, Prod),
        _run_product,
    ),
    TheoremCheck(
        "prop-nilradical-quotient",
        ("nilradical-quotient-transfer",),
        _applicable_commutative,
        lambda entry: check_nilradical_quotient(entry.ring),
    ),
    TheoremCheck(
        "thm-idealization",
        ("idealization-equivalence",),
        lambda entry: isinstance(entry.expr, Idealize),
        _run_idealization,
    ),
    TheoremCheck(
        "thm-zn-classification",
        ("z3k-weak-not-nil", "zpk-weak-not-nil-iff-p-equals-3", "zn-weak-not-nil-iff-2r3t"),
        lambda entry: isinstance(entry.expr, Zn),
        _run_zn,
    ),
    TheoremCheck(
        "lem-weakstar-annihilators",
        ("weakstar-annihilator-containment", "weakstar-annihilator-complement"),
        _always,
        lambda entry: check_annihilator_lemmas(entry.ring),
    ),
    TheoremCheck(
        "thm-weakstar-corner",
        ("weakstar-corner-elementwise", "weakstar-corner-ring"),
        _always,
        _run_corner,
    ),
    TheoremCheck(
        "prop-01-unique-maximal",
        ("zero-one-weak-unique-maximal-ideal",),
        _applicable_zero_one_weak,
        _run_unique_maximal,
    ),
    TheoremCheck(
        "thm-s-rigidity",
        ("s-weakstar-forces-s-equals-idempotents",),
        _always,
        _run_rigidity,
    ),
    TheoremCheck(
        "thm-weakstar-exchange",
        ("weakstar-implies-exchange",),
        _applicable_weak_star,
        lambda entry: check_weakstar_exchange(entry.ring),
    ),
    TheoremCheck(
        "thm-strongly-nil-clean-iff",
        ("strongly-nil-clean-iff-weakstar-with-2-nilpotent",),
        _always,
        lambda entry: check_strongly_nilclean_equiv(entry.ring),
    ),
    TheoremCheck(
        "cor-strongly-pi-regular",
        ("weakstar-with-2-nilpotent-strongly-pi-regular",),
        _applicable_weak_star_two_nil,
        lambda entry: check_pi_regular(entry.ring),
    ),
    TheoremCheck(
        "thm-weak-jclean-bundle",
        (
            "weakstar-jclean-elements-strongly-clean",
            "jclean-annihilator-containment",
            "weakstar-jclean-corner",
            "boolean-quotient-weak-lifting-gives-weak-jclean",
            "weakstar-jclean-boolean-quotient-gives-jclean",
        ),
        _always,
        lambda entry: check_weak_jclean_suite(entry.ring),
    ),
)


def check_ids() -> list[str]:
    return [check.check_id for check in REGISTRY]


def run_suite(corpus: Iterable[str | CorpusLine | CorpusEntry],
              checks: Optional[Sequence[str]] = None,
              budget: Optional[int] = None) -> list[dict]:
    """Evaluate the selected checks on every corpus member.

    Returns cells {ring, check_id, outcome, witness?} sorted by (ring, check_id).
    Build failures become one 'build' cell; they never abort the run.
    """
    raw = list(corpus)
    prepared = [e for e in raw if isinstance(e, CorpusEntry)]
    to_build = [e for e in raw if not isinstance(e, CorpusEntry)]
    entries = prepared + build_corpus(to_build, budget)
    if checks is None:
        selected = REGISTRY
    else:
        known = {check.check_id: check for check in REGISTRY}
        missing = [cid for cid in checks if cid not in known]
        if missing:
            raise ValueError(f"unknown check ids: {missing}")
        selected = tuple(known[cid] for cid in checks)
    cells: list[dict] = []
    for entry in entries:
        if entry.ring is None:
            outcome = "waived" if entry.waived else "error"
            cells.append(
                {"ring": entry.label, "check_id": "build", "outcome": outcome,
                 "witness": entry.error}
            )
            continue
        report = verify_ring_axioms(entry.ring)
        if not report.passed:
            name, witness = report.failures()[0]
            cells.append(
                {"ring": entry.label, "check_id": "build", "outcome": "error",
                 "witness": f"axiom {name} fails at {witness}"}
            )
            continue
        for check in selected:
            if not check.applicable(entry):
                cells.append(
                    {"ring": entry.label, "check_id": check.check_id,
                     "outcome": "not-applicable"}
                )
                continue
            ok, witness = check.run(entry)
            cell = {"ring": entry.label, "check_id": check.check_id,
                    "outcome": "pass" if ok else "fail"}
            if witness is not None:
                cell["witness"] = witness
            cells.append(cell)
    cells.sort(key=lambda c: (c["ring"], c["check_id"]))
    return cells


def suite_failed(cells: Sequence[dict]) -> bool:
    return any(cell["outcome"] in ("fail", "error") for cell in cells)


def report_to_json(cells: Sequence[dict]) -> str:
    return json.dumps(cells, indent=2) + "\n"


def traceability_matrix() -> str:
    """Markdown table mapping each check id to the facts it verifies."""
    lines = [
        "# Check traceability",
        "",
        "| check id | verifies |",
        "| --- | --- |",
    ]
    for check in REGISTRY:
        lines.append(f"| {check.check_id} | {', '.join(check.statements)} |")
    return "\n".join(lines) + "\n"
