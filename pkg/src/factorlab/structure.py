"""Structural analyzers and bounded probes.

One-relation classification, the subgroup of length deltas, the Adyan
embedding test, probes for irredundancy / atoms / reducedness / acyclicity
/ the normalizing swap condition, and the empirical verifier for the
sandwich property of unions of length sets.

Most underlying questions are undecidable, so probes are one-sided: a
``fails`` verdict always ships a replayable witness, while ``holds`` is
definitive only where documented (typically when every exploration
involved was exact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .invariants import LengthSet, UnionsProfile, distance_set
from .presentation import EMPTY_WORD, Presentation, Word, side_graphs
from .rewrite import (
    Equality,
    ExplorationBudget,
    TransitionStep,
    default_budget,
    equal_in_monoid,
    explore_class,
)


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN_AT_BOUND = "unknown_at_bound"


@dataclass(frozen=True)
class ProbeWitness:
    """Counterexample data: the words involved and an optional transition
    certificate replayable through the rewrite engine."""

    kind: str
    words: tuple[Word, ...]
    detail: str
    certificate: tuple[TransitionStep, ...] | None = None


@dataclass(frozen=True)
class ProbeVerdict:
    """Outcome of a bounded probe.

    ``definitive`` is True when the verdict would not change with a larger
    budget: every fails verdict is definitive about the witnessed fact,
    and a holds verdict is definitive only when the probe says so.
    """

    verdict: Verdict
    bound_used: ExplorationBudget
    witness: ProbeWitness | None = None
    definitive: bool = False


@dataclass(frozen=True)
class DeltaSubgroup:
    """The subgroup d*Z of length differences between equal words; d = 0
    encodes the trivial subgroup."""

    d: int

    def contains(self, n: int) -> bool:
        return n == 0 if self.d == 0 else n % self.d == 0


def delta_subgroup(p: Presentation) -> DeltaSubgroup:
    """gcd of the relation length deltas (0 when all deltas vanish)."""
    g = 0
    for rel in p.relations:
        g = math.gcd(g, abs(rel.delta))
    return DeltaSubgroup(g)


class OneRelationKind(Enum):
    HALF_FACTORIAL = "half_factorial"
    ARITHMETIC_PROGRESSIONS = "arithmetic_progressions"


@dataclass(frozen=True)
class OneRelationAnalysis:
    kind: OneRelationKind
    difference: int


def one_relation_analysis(p: Presentation) -> OneRelationAnalysis:
    """Classify a one-relation presentation by its length delta d.

    d = 0 makes every length set a singleton; otherwise every length set
    is an arithmetic progression with difference d.
    """
    if len(p.relations) != 1:
        raise ValueError(f"expected exactly one relation, found {len(p.relations)}")
    d = abs(p.relations[0].delta)
    if d == 0:
        return OneRelationAnalysis(OneRelationKind.HALF_FACTORIAL, 0)
    return OneRelationAnalysis(OneRelationKind.ARITHMETIC_PROGRESSIONS, d)


def is_arithmetic_progression(values: Sequence[int], difference: int) -> bool:
    """True when the sorted values form an AP with the given difference
    (singletons and the empty set count vacuously)."""
    if len(values) <= 1:
        return True
    return all(b - a == difference for a, b in zip(values, values[1:]))


def delta_bound_check(
    p: Presentation,
    sample_words: Iterable[Word],
    budget: ExplorationBudget | None = None,
) -> ProbeVerdict:
    """Check that gaps in exact length sets never exceed the largest
    relation delta. Decidable per exact sample; inexact samples are
    skipped."""
    bound = p.max_closure_delta
    checked = 0
    all_exact = True
    used = budget if budget is not None else default_budget(8)
    for w in sample_words:
        w = tuple(w)
        b = budget if budget is not None else default_budget(len(w))
        used = b
        fc = explore_class(w, p, b)
        if not fc.exact:
            all_exact = False
            continue
        ds = distance_set(LengthSet.from_class(fc))
        bad = [d for d in ds.values if d > bound]
        if bad:
            return ProbeVerdict(
                Verdict.FAILS,
                b,
                ProbeWitness(
                    "distance_bound",
                    (w,),
                    f"length set {fc.lengths()} has gap {bad[0]} > {bound}",
                ),
                definitive=True,
            )
        checked += 1
    if checked == 0:
        return ProbeVerdict(Verdict.UNKNOWN_AT_BOUND, used, None, definitive=False)
    return ProbeVerdict(Verdict.HOLDS, used, None, definitive=all_exact)


@dataclass(frozen=True)
class AdyanVerdict:
    """Decidable eligibility for the group-embedding criterion: finitely
    many generators, no empty relation side, and acyclic first-letter and
    last-letter graphs. Eligible monoids embed in a group, hence are
    cancellative."""

    is_adyan: bool
    reasons: tuple[str, ...]


def adyan_check(p: Presentation) -> AdyanVerdict:
    reasons: list[str] = []
    if any(not rel.lhs or not rel.rhs for rel in p.relations):
        reasons.append("a relation has an empty side")
    left, right = side_graphs(p)
    if not left.is_acyclic():
        reasons.append("first-letter graph has a cycle")
    if not right.is_acyclic():
        reasons.append("last-letter graph has a cycle")
    return AdyanVerdict(not reasons, tuple(reasons))


@dataclass(frozen=True)
class GeneratorSwapTable:
    """For ordered generator pairs (x, y), a generator z with xy = zx in
    the monoid, plus the transition certificate for each stored swap."""

    swaps: Mapping[tuple[int, int], int]
    certificates: Mapping[tuple[int, int], tuple[TransitionStep, ...]]
    complete: bool


def normalizing_probe(
    p: Presentation,
    budget: ExplorationBudget | None = None,
) -> tuple[ProbeVerdict, GeneratorSwapTable]:
    """Test the finitary swap condition necessary for a normalizing
    cancellative bounded-factorization monoid on an irredundant generating
    set: every xy must equal zx for some generator z.

    Fails definitively when some pair's class is exact and contains no zx;
    unknown when a pair is unresolved only because exploration truncated.
    """
    b = budget if budget is not None else default_budget(2)
    ids = range(len(p.generators))
    swaps: dict[tuple[int, int], int] = {}
    certs: dict[tuple[int, int], tuple[TransitionStep, ...]] = {}
    fail: ProbeWitness | None = None
    unresolved: list[tuple[int, int]] = []
    for x in ids:
        for y in ids:
            fc = explore_class((x, y), p, b)
            found = None
            for z in ids:
                if (z, x) in fc:
                    found = z
                    break
            if found is not None:
                swaps[(x, y)] = found
                certs[(x, y)] = fc.path_to((found, x))
            elif fc.exact:
                if fail is None:
                    gx, gy = p.generators[x].name, p.generators[y].name
                    shown = ", ".join(p.format_word(w) for w in fc.members)
                    fail = ProbeWitness(
                        "swap_missing",
                        ((x, y),),
                        f"no generator z satisfies {gx} {gy} = z {gx}; "
                        f"the class of {gx} {gy} is exactly {{{shown}}}",
                    )
            else:
                unresolved.append((x, y))
    table = GeneratorSwapTable(swaps, certs, complete=len(swaps) == len(p.generators) ** 2)
    if fail is not None:
        return ProbeVerdict(Verdict.FAILS, b, fail, definitive=True), table
    if unresolved:
        return ProbeVerdict(Verdict.UNKNOWN_AT_BOUND, b, None, definitive=False), table
    return ProbeVerdict(Verdict.HOLDS, b, None, definitive=True), table


def atom_probe(
    p: Presentation,
    generator: int,
    budget: ExplorationBudget | None = None,
) -> ProbeVerdict:
    """Search for a two-sided factorization of a generator into non-identity
    parts. Fails with a witness when some member of its class splits into
    parts not known to equal the identity; definitive when both parts are
    certified non-identity. Holds definitively when the class is exact and
    every split is refuted."""
    b = budget if budget is not None else default_budget(1)
    x: Word = (generator,)
    fc = explore_class(x, p, b)
    if EMPTY_WORD in fc:
        return ProbeVerdict(
            Verdict.FAILS,
            b,
            ProbeWitness(
                "identity",
                (x,),
                "the generator equals the identity",
                fc.path_to(EMPTY_WORD),
            ),
            definitive=True,
        )

    unit_cache: dict[Word, Equality] = {}

    def identity_status(w: Word) -> Equality:
        hit = unit_cache.get(w)
        if hit is None:
            try:
                hit = equal_in_monoid(w, EMPTY_WORD, p, b)
            except ValueError:
                hit = Equality.NO_WITHIN_BUDGET
            unit_cache[w] = hit
        return hit

    fallback: ProbeWitness | None = None
    for w in fc.members:
        if len(w) < 2:
            continue
        for i in range(1, len(w)):
            left, right = w[:i], w[i:]
            lv = identity_status(left)
            rv = identity_status(right)
            if lv is Equality.YES or rv is Equality.YES:
                continue
            witness = ProbeWitness(
                "splits",
                (x, left, right),
                f"{p.format_word(x)} = {p.format_word(left)} * {p.format_word(right)}",
                fc.path_to(w),
            )
            if lv is Equality.NO and rv is Equality.NO:
                return ProbeVerdict(Verdict.FAILS, b, witness, definitive=True)
            if fallback is None:
                fallback = witness
    if fallback is not None:
        return ProbeVerdict(Verdict.FAILS, b, fallback, definitive=False)
    if fc.exact:
        return ProbeVerdict(Verdict.HOLDS, b, None, definitive=True)
    return ProbeVerdict(Verdict.UNKNOWN_AT_BOUND, b, None, definitive=False)


def irredundancy_probe(
    p: Presentation,
    budget: ExplorationBudget | None = None,
) -> ProbeVerdict:
    """Look for a generator expressible without itself. One-sided: fails
    with a witness word avoiding the generator; holds definitively only
    when every generator's class is exact."""
    b = budget if budget is not None else default_budget(1)
    all_exact = True
    for g in range(len(p.generators)):
        fc = explore_class((g,), p, b)
        for w in fc.members:
            if w != (g,) and g not in w:
                return ProbeVerdict(
                    Verdict.FAILS,
                    b,
                    ProbeWitness(
                        "redundant_generator",
                        ((g,), w),
                        f"{p.generators[g].name} = {p.format_word(w)}",
                        fc.path_to(w),
                    ),
                    definitive=True,
                )
        all_exact = all_exact and fc.exact
    if all_exact:
        return ProbeVerdict(Verdict.HOLDS, b, None, definitive=True)
    return ProbeVerdict(Verdict.UNKNOWN_AT_BOUND, b, None, definitive=False)


def _contains_subword(w: Word, a: Word) -> bool:
    n, m = len(w), len(a)
    return any(w[i : i + m] == a for i in range(n - m + 1))


def acyclicity_reducedness_probe(
    p: Presentation,
    sample_words: Iterable[Word],
    budget: ExplorationBudget | None = None,
) -> ProbeVerdict:
    """Search sampled classes for a = b a c with (b, c) != (1, 1), and for
    non-identity words equal to the identity. Bounded and one-sided: holds
    never rules the properties out beyond the sampled region."""
    b0 = budget if budget is not None else default_budget(1)
    fc1 = explore_class(EMPTY_WORD, p, b0)
    for w in fc1.members:
        if w != EMPTY_WORD:
            return ProbeVerdict(
                Verdict.FAILS,
                b0,
                ProbeWitness(
                    "unit",
                    (w,),
                    f"{p.format_word(w)} equals the identity",
                    fc1.path_to(w),
                ),
                definitive=True,
            )
    used = b0
    for a in sample_words:
        a = tuple(a)
        if not a:
            continue
        b = budget if budget is not None else default_budget(len(a))
        used = b
        fc = explore_class(a, p, b)
        if EMPTY_WORD in fc:
            return ProbeVerdict(
                Verdict.FAILS,
                b,
                ProbeWitness(
                    "unit",
                    (a,),
                    f"{p.format_word(a)} equals the identity",
                    fc.path_to(EMPTY_WORD),
                ),
                definitive=True,
            )
        for w in fc.members:
            if len(w) > len(a) and _contains_subword(w, a):
                return ProbeVerdict(
                    Verdict.FAILS,
                    b,
                    ProbeWitness(
                        "cycle",
                        (a, w),
                        f"{p.format_word(a)} = {p.format_word(w)} embeds its own "
                        "factorization strictly inside a longer one",
                        fc.path_to(w),
                    ),
                    definitive=True,
                )
    return ProbeVerdict(Verdict.HOLDS, used, None, definitive=False)


@dataclass(frozen=True)
class SearchCaps:
    """Caps for the sandwich-parameter search; kstar_max defaults to the
    largest computed k so every candidate constrains at least one entry."""

    d_max: int = 6
    kstar_max: int | None = None
    m_max: int = 32


@dataclass(frozen=True)
class StructureUnionsReport:
    """Result of the empirical sandwich check on a unions profile.

    A candidate (d, k*, m) satisfies, for every computed k >= k*:
    the union at k lies inside k + dZ, and every element of k + dZ within
    [min + m, max - m] lies inside the union. When no candidate exists
    within the caps, ``failure_trend`` lists, per k, the least m that
    would satisfy the inner containment at d = 1.
    """

    ks: tuple[int, ...]
    candidate: tuple[int, int, int] | None
    failure_trend: tuple[tuple[int, int], ...] | None


def _middle_ok(entry, d: int, m: int, values: frozenset[int]) -> bool:
    lo = entry.lambda_k + m
    hi = entry.rho_k - m
    if lo > hi:
        return True
    start = lo + ((entry.k - lo) % d)
    for v in range(start, hi + 1, d):
        if v not in values:
            return False
    return True


def unions_structure_verifier(
    profile: UnionsProfile,
    caps: SearchCaps = SearchCaps(),
) -> StructureUnionsReport:
    """Exhaustive search for sandwich parameters over an exact profile.

    Returns the lexicographically least (d, k*, m) within the caps, or a
    per-k trend of the least workable m when none exists.
    """
    if not profile.exact:
        raise ValueError("profile must be exact")
    entries = sorted(profile.entries, key=lambda e: e.k)
    ks = tuple(e.k for e in entries)
    value_sets = {e.k: frozenset(e.values) for e in entries}
    kstar_max = caps.kstar_max if caps.kstar_max is not None else max(ks)

    for d in range(1, caps.d_max + 1):
        for kstar in range(1, kstar_max + 1):
            scope = [e for e in entries if e.k >= kstar]
            if not scope:
                continue
            if not all(
                all(v % d == e.k % d for v in e.values) for e in scope
            ):
                continue
            for m in range(0, caps.m_max + 1):
                if all(_middle_ok(e, d, m, value_sets[e.k]) for e in scope):
                    return StructureUnionsReport(ks, (d, kstar, m), None)

    trend: list[tuple[int, int]] = []
    for e in entries:
        m = 0
        while not _middle_ok(e, 1, m, value_sets[e.k]):
            m += 1
        trend.append((e.k, m))
    return StructureUnionsReport(ks, None, tuple(trend))


@dataclass(frozen=True)
class ConsecutivePairRecord:
    """Per-k record of the largest union element whose predecessor is also
    in the union, compared against the two-steps-back ceiling max + 4."""

    k: int
    ceiling: int | None
    bound: int | None
    within_bound: bool | None


def consecutive_pair_analysis(profile: UnionsProfile) -> tuple[ConsecutivePairRecord, ...]:
    """For each computed k >= 3, find the top consecutive pair in the union
    and check it against the union maximum two indices back plus 4. An
    absent pair or missing reference entry is reported, not raised."""
    if not profile.exact:
        raise ValueError("profile must be exact")
    if not any(e.k >= 3 for e in profile.entries):
        raise ValueError("profile has no entries with k >= 3")
    records: list[ConsecutivePairRecord] = []
    for e in profile.entries:
        if e.k < 3:
            continue
        vals = set(e.values)
        pairs = [v for v in e.values if v - 1 in vals]
        ceiling = max(pairs) if pairs else None
        bound = None
        if (e.k - 2) in profile:
            bound = profile.entry(e.k - 2).rho_k + 4
        within = (ceiling <= bound) if (ceiling is not None and bound is not None) else None
        records.append(ConsecutivePairRecord(e.k, ceiling, bound, within))
    return tuple(records)


__all__ = [
    "Verdict",
    "ProbeWitness",
    "ProbeVerdict",
    "DeltaSubgroup",
    "delta_subgroup",
    "OneRelationKind",
    "OneRelationAnalysis",
    "one_relation_analysis",
    "is_arithmetic_progression",
    "delta_bound_check",
    "AdyanVerdict",
    "adyan_check",
    "GeneratorSwapTable",
    "normalizing_probe",
    "atom_probe",
    "irredundancy_probe",
    "acyclicity_reducedness_probe",
    "SearchCaps",
    "StructureUnionsReport",
    "unions_structure_verifier",
    "ConsecutivePairRecord",
    "consecutive_pair_analysis",
]
