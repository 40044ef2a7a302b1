"""Shipped example presentations with closed-form oracles.

Each entry pairs a presentation file with executable checks that compare
engine output against closed-form expectations and against a deliberately
naive brute-force oracle whose structure shares nothing with the BFS
engine (fixpoint saturation, no interning, no frontier).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources

from .invariants import (
    LengthSet,
    elasticity_of,
    length_set,
    unions_profile,
)
from .presentation import EMPTY_WORD, Presentation, Word, parse_presentation
from .rewrite import (
    Equality,
    ExplorationBudget,
    default_budget,
    equal_in_monoid,
    explore_class,
)
from .structure import (
    OneRelationKind,
    SearchCaps,
    Verdict,
    acyclicity_reducedness_probe,
    adyan_check,
    atom_probe,
    consecutive_pair_analysis,
    normalizing_probe,
    one_relation_analysis,
    unions_structure_verifier,
)


def brute_force_class(p: Presentation, seed: Word, max_len: int) -> frozenset[Word]:
    """Naive saturation oracle: repeatedly apply every relation occurrence
    to every known word until nothing new appears below the length cap.

    Intentionally unlike the engine (no queue, no ids, re-scans the whole
    set each round) so the two share no failure mode.
    """
    rules = [(rel.lhs, rel.rhs) for rel in p.symmetric_closure if not rel.is_inert]
    words: set[Word] = {tuple(seed)}
    changed = True
    while changed:
        changed = False
        for w in sorted(words):
            for lhs, rhs in rules:
                ln = len(lhs)
                for i in range(len(w) - ln + 1):
                    if w[i : i + ln] != lhs:
                        continue
                    nw = w[:i] + rhs + w[i + ln :]
                    if len(nw) <= max_len and nw not in words:
                        words.add(nw)
                        changed = True
    return frozenset(words)


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: CheckStatus
    detail: str = ""


@dataclass
class _Collector:
    results: list[CheckResult] = field(default_factory=list)
    oracle_comparisons: int = 0

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.results.append(
            CheckResult(name, CheckStatus.PASS if ok else CheckStatus.FAIL, detail)
        )

    def inconclusive(self, name: str, detail: str) -> None:
        self.results.append(CheckResult(name, CheckStatus.INCONCLUSIVE, detail))


@dataclass(frozen=True)
class SuiteReport:
    entry: str
    scale: int
    results: tuple[CheckResult, ...]
    oracle_comparisons: int

    @property
    def ok(self) -> bool:
        return all(r.status is not CheckStatus.FAIL for r in self.results)

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "inconclusive": 0}
        for r in self.results:
            out[r.status.value] += 1
        return out


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    filename: str
    description: str
    max_scale: int
    presentation: Presentation


def _load_text(filename: str) -> str:
    return resources.files("factorlab").joinpath("data", filename).read_text(encoding="utf-8")


_ENTRY_SPECS = (
    ("m1", "m1.mon", "one relation; elasticity tends to 2 without being attained", 6),
    ("m2_n2", "m2_n2.mon", "one relation with doubling growth", 4),
    ("m2_n3", "m2_n3.mon", "one relation with tripling growth", 3),
    ("m3_n2", "m3_n2.mon", "two relations, doubling variant; unions are full intervals", 6),
    ("m3_n3", "m3_n3.mon", "two relations, tripling variant; unions are not sandwiched", 5),
    ("non_atomic", "non_atomic.mon", "cancellative, not acyclic, not atomic", 4),
    ("half_factorial", "half_factorial.mon", "commuting pair; every length set a singleton", 5),
    ("free2", "free2.mon", "free monoid on two generators", 6),
    ("free_elastic", "free_elastic.mon", "free generator plus a two-valued length set", 6),
    ("unit", "unit.mon", "empty relation side; has a nontrivial unit", 4),
)


def corpus_entries() -> tuple[CorpusEntry, ...]:
    """All shipped entries, parsed fresh from their presentation files."""
    return tuple(
        CorpusEntry(name, fn, desc, cap, parse_presentation(_load_text(fn)))
        for name, fn, desc, cap in _ENTRY_SPECS
    )


def _compare_oracle(p: Presentation, seed: Word, budget: ExplorationBudget, out: _Collector) -> bool:
    """Engine members vs brute-force saturation on one exact class.

    Returns True when the class was exact and got compared.
    """
    fc = explore_class(seed, p, budget)
    if not fc.exact:
        return False
    naive = brute_force_class(p, seed, budget.max_word_len)
    out.oracle_comparisons += 1
    out.record(
        f"oracle:{p.format_word(seed)}",
        set(fc.members) == naive,
        f"engine {len(fc.members)} members vs oracle {len(naive)}",
    )
    return True


def _oracle_sweep(p: Presentation, max_len: int, budget: ExplorationBudget, out: _Collector) -> None:
    gens = range(len(p.generators))
    for n in range(0, max_len + 1):
        for seed in itertools.product(gens, repeat=n):
            _compare_oracle(p, seed, budget, out)


def _word(gens_counts: list[tuple[int, int]]) -> Word:
    out: list[int] = []
    for g, c in gens_counts:
        out.extend([g] * c)
    return tuple(out)


def _check_m1(entry: CorpusEntry, scale: int, out: _Collector) -> None:
    p = entry.presentation
    x, y = 0, 1
    budget = ExplorationBudget(max_word_len=2 * scale + 8, max_states=200_000)
    out.record("adyan", adyan_check(p).is_adyan)
    out.record(
        "one-relation:AP-difference-1",
        one_relation_analysis(p).difference == 1,
    )
    for total in range(2, scale + 1):
        for k in range(1, total):
            seed = _word([(x, k), (y, total - k)])
            fc = explore_class(seed, p, budget)
            if not fc.exact:
                out.inconclusive(f"interval:{p.format_word(seed)}", "class truncated")
                continue
            ls = LengthSet.from_class(fc)
            expect = tuple(range(total, 2 * total))
            out.record(
                f"interval:{p.format_word(seed)}",
                ls.values == expect,
                f"{ls.values} vs {expect}",
            )
            out.record(
                f"elasticity:{p.format_word(seed)}",
                elasticity_of(ls).value == 2 - Fraction(1, total),
            )
    # maximality sweep: the mixed power words dominate every word of equal length
    cache: dict[Word, Fraction] = {}
    for n in range(2, min(scale, 6) + 1):
        best = Fraction(0)
        for seed in itertools.product(range(3), repeat=n):
            if seed in cache:
                rho = cache[seed]
            else:
                fc = explore_class(seed, p, budget)
                if not fc.exact:
                    out.inconclusive(f"maximality:n={n}", "class truncated")
                    break
                rho = elasticity_of(LengthSet.from_class(fc)).value
                for m in fc.members:
                    cache[m] = rho
            best = max(best, rho)
        else:
            out.record(
                f"maximality:n={n}",
                best == 2 - Fraction(1, n) and cache[_word([(x, n - 1), (y, 1)])] == best,
                f"max elasticity {best}",
            )
    _oracle_sweep(p, 3, ExplorationBudget(16), out)


def _check_m2(n: int):
    def check(entry: CorpusEntry, scale: int, out: _Collector) -> None:
        p = entry.presentation
        x, y = 0, 1
        out.record("adyan", adyan_check(p).is_adyan)
        out.record("one-relation:AP-difference", one_relation_analysis(p).difference == n - 1)
        for k in range(0, scale + 1):
            rhs = _word([(y, n**k), (x, k)])
            budget = ExplorationBudget(max_word_len=n**k + k + 4, max_states=500_000)
            verdict = equal_in_monoid(_word([(x, k), (y, 1)]), rhs, p, budget)
            out.record(f"power-push:k={k}", verdict is Equality.YES, verdict.value)
        budget = ExplorationBudget(max_word_len=n ** max(scale - 1, 1) + scale + 4, max_states=500_000)
        profile = unions_profile(p, range(1, scale + 1), budget)
        if not profile.exact:
            out.inconclusive("unions", "profile truncated")
            return
        for e in profile.entries:
            out.record(
                f"kth-elasticity:k={e.k}",
                e.rho_k == n ** (e.k - 1) + e.k - 1,
                f"{e.rho_k}",
            )
        diffs = [
            profile.entry(k).rho_k - profile.entry(k - 1).rho_k
            for k in range(2, scale + 1)
        ]
        out.record(
            "growth-differences",
            diffs == [n ** (k - 2) * (n - 1) + 1 for k in range(2, scale + 1)]
            and all(a < b for a, b in zip(diffs, diffs[1:])),
            f"{diffs}",
        )
        _oracle_sweep(p, 3, ExplorationBudget(24), out)

    return check


def _check_m3(n: int):
    def check(entry: CorpusEntry, scale: int, out: _Collector) -> None:
        p = entry.presentation
        out.record("adyan", adyan_check(p).is_adyan)
        budget = ExplorationBudget(max_word_len=n ** max(scale - 1, 1) + scale + 4, max_states=500_000)
        profile = unions_profile(p, range(1, scale + 1), budget)
        if not profile.exact:
            out.inconclusive("unions", "profile truncated")
            return
        for e in profile.entries:
            out.record(
                f"kth-elasticity:k={e.k}",
                e.rho_k == n ** (e.k - 1) + e.k - 1,
                f"{e.rho_k}",
            )
            if e.k >= 2:
                out.record(
                    f"consecutive:k={e.k}",
                    {e.k, e.k + 1} <= set(e.values),
                )
        if n == 2:
            # every relation delta is 1, so every union is a full interval
            for e in profile.entries:
                out.record(
                    f"full-interval:k={e.k}",
                    e.values == tuple(range(e.lambda_k, e.rho_k + 1)),
                )
            report = unions_structure_verifier(profile)
            out.record(
                "sandwich-candidate",
                report.candidate == (1, 1, 0),
                f"{report.candidate}",
            )
        else:
            if scale >= 5:
                records = consecutive_pair_analysis(profile)
                for rec in records:
                    out.record(
                        f"pair-ceiling:k={rec.k}",
                        rec.within_bound is True,
                        f"ceiling {rec.ceiling} vs bound {rec.bound}",
                    )
                sub = unions_profile(p, range(3, scale + 1), budget)
                report = unions_structure_verifier(sub)
                out.record(
                    "sandwich-absent",
                    report.candidate is None,
                    f"trend {report.failure_trend}",
                )
        _oracle_sweep(p, 2, ExplorationBudget(16), out)

    return check


def _check_non_atomic(entry: CorpusEntry, scale: int, out: _Collector) -> None:
    p = entry.presentation
    x, y = 0, 1
    out.record("adyan", adyan_check(p).is_adyan)
    out.record("one-relation:AP-difference", one_relation_analysis(p).difference == 2)
    verdict = acyclicity_reducedness_probe(p, [(y,)], ExplorationBudget(12))
    out.record(
        "acyclicity-fails",
        verdict.verdict is Verdict.FAILS and verdict.witness is not None
        and verdict.witness.kind == "cycle",
    )
    out.record(
        "generator-not-atom",
        atom_probe(p, y, ExplorationBudget(12)).verdict is Verdict.FAILS,
    )
    out.record(
        "embedded-once",
        equal_in_monoid((y,), (x, y, x), p, ExplorationBudget(12)) is Equality.YES,
    )
    for j in range(1, scale + 1):
        _compare_oracle(p, (x,) * j, ExplorationBudget(12), out)


def _check_half_factorial(entry: CorpusEntry, scale: int, out: _Collector) -> None:
    p = entry.presentation
    out.record(
        "one-relation:half-factorial",
        one_relation_analysis(p).kind is OneRelationKind.HALF_FACTORIAL,
    )
    budget = ExplorationBudget(max(8, scale + 2))
    for word_len in range(0, scale + 1):
        for seed in itertools.product(range(2), repeat=word_len):
            ls = length_set(seed, p, budget)
            out.record(
                f"singleton:{p.format_word(seed)}",
                ls.exact and ls.values == (word_len,),
            )
    verdict, table = normalizing_probe(p, budget)
    out.record("swap-table-complete", verdict.verdict is Verdict.HOLDS and table.complete)
    _oracle_sweep(p, min(scale, 4), budget, out)


def _check_free2(entry: CorpusEntry, scale: int, out: _Collector) -> None:
    p = entry.presentation
    out.record("adyan", adyan_check(p).is_adyan)
    budget = ExplorationBudget(scale + 2)
    profile = unions_profile(p, range(1, scale + 1), budget)
    out.record(
        "unions-singletons",
        profile.exact and all(e.values == (e.k,) for e in profile.entries),
    )
    for word_len in range(0, min(scale, 3) + 1):
        for seed in itertools.product(range(2), repeat=word_len):
            fc = explore_class(seed, p, budget)
            out.record(
                f"singleton-class:{p.format_word(seed)}",
                fc.exact and fc.members == (seed,),
            )
            _compare_oracle(p, seed, budget, out)


def _check_free_elastic(entry: CorpusEntry, scale: int, out: _Collector) -> None:
    p = entry.presentation
    a, b = 1, 2
    out.record("adyan", adyan_check(p).is_adyan)
    budget = ExplorationBudget(32, max_states=100_000)
    ls = length_set((a, a), p, budget)
    out.record("two-valued", ls.exact and ls.values == (2, 4))
    shift = length_set((0, 0, 0, a, a), p, budget)
    out.record("free-shift", shift.exact and shift.values == (5, 7))
    out.record(
        "block-pair",
        equal_in_monoid((a, a), (b,) * 4, p, budget) is Equality.YES,
    )
    _oracle_sweep(p, min(scale, 3), ExplorationBudget(16), out)


def _check_unit(entry: CorpusEntry, scale: int, out: _Collector) -> None:
    p = entry.presentation
    verdict = adyan_check(p)
    out.record("not-adyan", not verdict.is_adyan, "; ".join(verdict.reasons))
    probe = acyclicity_reducedness_probe(p, [(0,) * 2], ExplorationBudget(8, 1000, 10_000))
    out.record(
        "reducedness-fails",
        probe.verdict is Verdict.FAILS and probe.witness is not None
        and probe.witness.kind == "unit",
    )


_CHECKS = {
    "m1": _check_m1,
    "m2_n2": _check_m2(2),
    "m2_n3": _check_m2(3),
    "m3_n2": _check_m3(2),
    "m3_n3": _check_m3(3),
    "non_atomic": _check_non_atomic,
    "half_factorial": _check_half_factorial,
    "free2": _check_free2,
    "free_elastic": _check_free_elastic,
    "unit": _check_unit,
}


def run_oracle_suite(entry: CorpusEntry, scale: int) -> SuiteReport:
    """Evaluate every oracle of one entry up to the given scale.

    Budget exhaustion in a check surfaces as INCONCLUSIVE, never as a
    silent pass. Raises when the scale exceeds the entry's documented cap.
    """
    if scale < 1:
        raise ValueError("scale must be positive")
    if scale > entry.max_scale:
        raise ValueError(
            f"scale {scale} exceeds the cap {entry.max_scale} for entry {entry.name!r}"
        )
    out = _Collector()
    _CHECKS[entry.name](entry, scale, out)
    return SuiteReport(entry.name, scale, tuple(out.results), out.oracle_comparisons)


__all__ = [
    "brute_force_class",
    "CheckStatus",
    "CheckResult",
    "SuiteReport",
    "CorpusEntry",
    "corpus_entries",
    "run_oracle_suite",
]
