"""Arithmetic invariants of explored factorization classes.

Length sets, distance sets, elasticities, unions of length sets over a
range of lengths, and the constructive witness that realizes a prescribed
rational elasticity in monoids with a free generator. All rationals are
exact Fractions; nothing here uses floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .presentation import Generator, Presentation, Word
from .rewrite import (
    ExplorationBudget,
    FactorizationClass,
    default_budget,
    explore_class,
)


@dataclass(frozen=True)
class LengthSet:
    """Sorted set of factorization lengths of a word; exact mirrors the class."""

    values: tuple[int, ...]
    exact: bool

    def __post_init__(self) -> None:
        if tuple(sorted(set(self.values))) != self.values:
            raise ValueError("values must be sorted and duplicate-free")

    @classmethod
    def from_class(cls, fc: FactorizationClass) -> "LengthSet":
        return cls(fc.lengths(), fc.exact)

    @property
    def minimum(self) -> int:
        return self.values[0]

    @property
    def maximum(self) -> int:
        return self.values[-1]

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, v: object) -> bool:
        return v in self.values


def length_set(seed: Word, p: Presentation, budget: ExplorationBudget | None = None) -> LengthSet:
    """Lengths of all members of the explored class of ``seed``."""
    b = budget if budget is not None else default_budget(len(seed))
    return LengthSet.from_class(explore_class(seed, p, b))


@dataclass(frozen=True)
class DistanceSet:
    """Gaps between consecutive elements of a length set.

    ``exact`` mirrors the source set; a distance set derived from an
    inexact length set is advisory only.
    """

    values: tuple[int, ...]
    exact: bool


def distance_set(ls: LengthSet) -> DistanceSet:
    vals = ls.values
    gaps = sorted({vals[i + 1] - vals[i] for i in range(len(vals) - 1)})
    return DistanceSet(tuple(gaps), ls.exact)


@dataclass(frozen=True)
class Elasticity:
    """max/min of the positive part of a length set, as an exact rational.

    ``value`` is None for infinity. The zero convention applies when the
    set has no positive element. ``lower_bound_only`` marks values derived
    from truncated explorations, which can only under-report.
    """

    value: Fraction | None
    lower_bound_only: bool = False

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


def elasticity_of(ls: LengthSet) -> Elasticity:
    positive = [v for v in ls.values if v > 0]
    if not positive:
        return Elasticity(Fraction(0), lower_bound_only=not ls.exact)
    return Elasticity(Fraction(max(positive), min(positive)), lower_bound_only=not ls.exact)


@dataclass(frozen=True)
class UnionsEntry:
    """Union of all length sets containing k, with its extremes."""

    k: int
    values: tuple[int, ...]
    exact: bool

    @property
    def rho_k(self) -> int:
        """Largest element of the union (a lower bound when inexact)."""
        return self.values[-1]

    @property
    def lambda_k(self) -> int:
        return self.values[0]


@dataclass(frozen=True)
class UnionsProfile:
    entries: tuple[UnionsEntry, ...]

    @property
    def ks(self) -> tuple[int, ...]:
        return tuple(e.k for e in self.entries)

    @property
    def exact(self) -> bool:
        return all(e.exact for e in self.entries)

    def entry(self, k: int) -> UnionsEntry:
        for e in self.entries:
            if e.k == k:
                return e
        raise KeyError(f"no entry for k={k}")

    def __contains__(self, k: object) -> bool:
        return any(e.k == k for e in self.entries)


def reduced_alphabet(p: Presentation) -> tuple[int, ...]:
    """Generator ids that matter for length sets: all relation letters plus
    one representative of the letters no relation touches (they are
    interchangeable for length purposes)."""
    active = sorted(p.active_generator_ids)
    inert = [g.id for g in p.generators if g.id not in p.active_generator_ids]
    if inert:
        active.append(inert[0])
    return tuple(sorted(active))


def unions_profile(
    p: Presentation,
    k_values: Iterable[int],
    budget: ExplorationBudget | None = None,
) -> UnionsProfile:
    """Union of length sets over all words of each length k.

    Enumerates seed words over the reduced alphabet, which preserves the
    union because untouched letters only shift lengths uniformly. A fixed
    budget applies to every seed when given; otherwise each seed gets the
    default budget for its length.
    """
    ks = sorted(set(k_values))
    if not ks:
        raise ValueError("k range is empty")
    if any(k < 0 for k in ks):
        raise ValueError("k values must be non-negative")
    if not p.generators:
        raise ValueError("presentation has no generators")
    alphabet = reduced_alphabet(p)
    cache: dict[Word, tuple[tuple[int, ...], bool]] = {}
    entries: list[UnionsEntry] = []
    for k in ks:
        b = budget if budget is not None else default_budget(k)
        values: set[int] = set()
        exact = True
        for seed in itertools.product(alphabet, repeat=k):
            hit = cache.get(seed)
            if hit is not None:
                lens, was_exact = hit
            else:
                fc = explore_class(seed, p, b)
                lens = fc.lengths()
                was_exact = fc.exact
                if was_exact:
                    for m in fc.members:
                        cache[m] = (lens, True)
            values.update(lens)
            exact = exact and was_exact
        entries.append(UnionsEntry(k, tuple(sorted(values)), exact))
    return UnionsProfile(tuple(entries))


class AcceptedStatus(Enum):
    """Whether the sampled evidence shows the elasticity being attained."""

    YES = "yes"
    NO_EVIDENCE = "no_evidence"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TrendFit:
    """Exact fit of strictly increasing witness elasticities to A - B/(i + C).

    ``limit`` (= A) is the extrapolated supremum of the fitted family; it
    is pattern evidence, never a proof.
    """

    limit: Fraction
    shift: Fraction
    scale: Fraction

    def describe(self) -> str:
        return f"values fit {self.limit} - {self.scale}/(i + {self.shift}) exactly"


def _fit_shifted_reciprocal(values: Sequence[Fraction]) -> TrendFit | None:
    if len(values) < 3:
        return None
    i0 = len(values) - 2
    t0, t1, t2 = values[-3:]
    d1 = t1 - t0
    d2 = t2 - t1
    if d1 <= 0 or d2 <= 0 or d2 >= d1:
        return None
    base = 2 / (d1 / d2 - 1)
    if base <= 0:
        return None
    shift = base - i0
    scale = d1 * base * (base + 1)
    limit = t0 + scale / base
    for i, t in enumerate(values, start=1):
        if i + shift <= 0 or t != limit - scale / (i + shift):
            return None
    return TrendFit(limit, shift, scale)


@dataclass(frozen=True)
class SystemElasticityReport:
    """Evidence about the supremum of elasticities over the length system."""

    elasticity: Elasticity
    accepted: AcceptedStatus
    witness: LengthSet | None
    trend: TrendFit | None


def system_elasticity(
    profile: UnionsProfile | None,
    witnesses: Sequence[LengthSet],
) -> SystemElasticityReport:
    """Report the best elasticity seen and whether it looks attained.

    The maximum witness elasticity is always a certified lower bound for
    the system elasticity. A strictly increasing witness sequence yields
    NO_EVIDENCE together with a pattern extrapolation when the values fit
    a shifted-reciprocal family exactly. Nothing here is a proof about the
    infinite system.
    """
    rhos = [elasticity_of(ls) for ls in witnesses]
    finite = [r.value for r in rhos if r.value is not None]
    if not finite:
        return SystemElasticityReport(Elasticity(None, True), AcceptedStatus.UNKNOWN, None, None)
    best = max(finite)
    best_index = next(i for i, r in enumerate(rhos) if r.value == best)

    profile_bound = Fraction(0)
    if profile is not None:
        for e in profile.entries:
            if e.k > 0:
                profile_bound = max(profile_bound, Fraction(e.rho_k, e.k))

    increasing = len(finite) >= 3 and all(a < b for a, b in zip(finite, finite[1:]))
    if increasing:
        trend = _fit_shifted_reciprocal(finite)
        return SystemElasticityReport(
            Elasticity(max(best, profile_bound), lower_bound_only=True),
            AcceptedStatus.NO_EVIDENCE,
            None,
            trend,
        )
    if any(r.lower_bound_only for r in rhos) or profile_bound > best:
        return SystemElasticityReport(
            Elasticity(max(best, profile_bound), lower_bound_only=True),
            AcceptedStatus.UNKNOWN,
            None,
            None,
        )
    return SystemElasticityReport(
        Elasticity(best, lower_bound_only=False),
        AcceptedStatus.YES,
        witnesses[best_index],
        None,
    )


class WitnessConstructionError(ValueError):
    """The requested elasticity cannot be realized from the given word."""


class WitnessVerificationError(RuntimeError):
    """The constructed word failed its small-scale elasticity check."""


def full_elasticity_witness(
    p: Presentation,
    free_gen: Generator | int | str,
    c: Word,
    q: Fraction,
    budget: ExplorationBudget | None = None,
) -> Word:
    """Build a word whose elasticity is exactly q, given a free generator.

    With q = r/s in lowest terms, returns x^k c^(r-s) where x is the free
    generator and k = s*max(L(c)) - r*min(L(c)). This realizes elasticity
    q whenever powers of c multiply their length extremes, which holds
    when c attains the system elasticity. The result is verified at small
    scale when the budget allows an exact exploration.

    Raises WitnessConstructionError when k < 0 (q too large for c), q < 1,
    or the length set of c is inexact; WitnessVerificationError when the
    verification runs exactly and disagrees.
    """
    if isinstance(free_gen, Generator):
        x = free_gen.id
    elif isinstance(free_gen, str):
        x = p.name_to_id[free_gen]
    else:
        x = int(free_gen)
    if x in p.active_generator_ids:
        raise WitnessConstructionError(
            f"generator {p.generators[x].name!r} occurs in a relation; a free generator is required"
        )
    q = Fraction(q)
    r, s = q.numerator, q.denominator
    if r < s:
        raise WitnessConstructionError("q must be at least 1")
    ls = length_set(c, p, budget)
    if not ls.exact:
        raise WitnessConstructionError("the witness word has an inexact length set")
    k = s * ls.maximum - r * ls.minimum
    if k < 0:
        raise WitnessConstructionError(
            f"q = {q} is too large for this witness (k = {k} < 0)"
        )
    n = r - s
    b: Word = (x,) * k + tuple(c) * n

    verify_budget = budget if budget is not None else default_budget(len(b))
    if len(b) <= verify_budget.max_word_len:
        out = length_set(b, p, verify_budget)
        if out.exact:
            got = elasticity_of(out)
            if b and got.value != q:
                raise WitnessVerificationError(
                    f"constructed word has elasticity {got}, expected {q}"
                )
    return b


__all__ = [
    "LengthSet",
    "length_set",
    "DistanceSet",
    "distance_set",
    "Elasticity",
    "elasticity_of",
    "UnionsEntry",
    "UnionsProfile",
    "unions_profile",
    "reduced_alphabet",
    "AcceptedStatus",
    "TrendFit",
    "SystemElasticityReport",
    "system_elasticity",
    "WitnessConstructionError",
    "WitnessVerificationError",
    "full_elasticity_witness",
]
