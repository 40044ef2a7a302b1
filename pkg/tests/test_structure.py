import pytest

from factorlab import (
    EMPTY_WORD,
    ExplorationBudget,
    OneRelationKind,
    SearchCaps,
    Verdict,
    acyclicity_reducedness_probe,
    adyan_check,
    atom_probe,
    brute_force_class,
    consecutive_pair_analysis,
    default_budget,
    delta_bound_check,
    delta_subgroup,
    equal_in_monoid,
    irredundancy_probe,
    is_arithmetic_progression,
    normalizing_probe,
    one_relation_analysis,
    parse_presentation,
    unions_profile,
    unions_structure_verifier,
)


class TestOneRelation:
    def test_m1_progression(self, m1):
        out = one_relation_analysis(m1)
        assert out.kind is OneRelationKind.ARITHMETIC_PROGRESSIONS
        assert out.difference == 1

    def test_commuting_pair_half_factorial(self, half_factorial):
        assert one_relation_analysis(half_factorial).kind is OneRelationKind.HALF_FACTORIAL

    def test_m2_progression(self, m2_n2):
        assert one_relation_analysis(m2_n2).difference == 1

    def test_wrong_relation_count(self, m3_n2, free2):
        with pytest.raises(ValueError):
            one_relation_analysis(m3_n2)
        with pytest.raises(ValueError):
            one_relation_analysis(free2)


class TestDeltaSubgroup:
    def test_m3(self, m3_n2):
        assert delta_subgroup(m3_n2).d == 1

    def test_free(self, free2):
        d = delta_subgroup(free2)
        assert d.d == 0
        assert d.contains(0) and not d.contains(2)

    def test_gcd_of_two_and_four(self):
        p = parse_presentation(
            "gens: a b c e\nrel: a a a = b b b b b\nrel: c c = e e e e e e\n"
        )
        assert delta_subgroup(p).d == 2


class TestDeltaBoundCheck:
    def test_m1_samples(self, m1):
        verdict = delta_bound_check(m1, [m1.word("x x y y")], ExplorationBudget(24))
        assert verdict.verdict is Verdict.HOLDS and verdict.definitive

    def test_free_monoid_vacuous(self, free2):
        verdict = delta_bound_check(free2, [free2.word("x y")], default_budget(2))
        assert verdict.verdict is Verdict.HOLDS

    def test_tripling_relation_gaps_at_most_two(self, m2_n3):
        verdict = delta_bound_check(m2_n3, [m2_n3.word("x x y")], ExplorationBudget(24))
        assert verdict.verdict is Verdict.HOLDS and verdict.definitive

    def test_all_inexact_is_unknown(self, m2_n2):
        verdict = delta_bound_check(m2_n2, [m2_n2.word("x x y")], ExplorationBudget(4))
        assert verdict.verdict is Verdict.UNKNOWN_AT_BOUND


class TestAdyan:
    def test_corpus_positives(self, m1, m2_n2, m2_n3, m3_n2, m3_n3, non_atomic):
        for p in (m1, m2_n2, m2_n3, m3_n2, m3_n3, non_atomic):
            assert adyan_check(p).is_adyan

    def test_empty_side_excluded(self):
        p = parse_presentation("gens: x\nrel: x = 1\n")
        verdict = adyan_check(p)
        assert not verdict.is_adyan
        assert any("empty" in r for r in verdict.reasons)

    def test_self_loop_counts_as_cycle(self):
        p = parse_presentation("gens: x y\nrel: x y = x y y\n")
        verdict = adyan_check(p)
        assert not verdict.is_adyan
        assert any("first-letter" in r for r in verdict.reasons)

    def test_triangle_cycle(self):
        p = parse_presentation(
            "gens: x y z\nrel: x x = y y\nrel: y x = z z\nrel: z y = x z\n"
        )
        assert not adyan_check(p).is_adyan

    def test_deterministic(self, m1):
        assert adyan_check(m1) == adyan_check(m1)


class TestNormalizingProbe:
    def test_commuting_pair_complete_table(self, half_factorial):
        verdict, table = normalizing_probe(half_factorial)
        assert verdict.verdict is Verdict.HOLDS and verdict.definitive
        assert table.complete
        assert table.swaps[(0, 1)] == 1
        assert table.swaps[(1, 0)] == 0
        # certificates replay to the swapped word
        cert = table.certificates[(1, 0)]
        assert cert[-1].target == (0, 1)

    def test_m1_fails_definitively(self, m1):
        verdict, _ = normalizing_probe(m1)
        assert verdict.verdict is Verdict.FAILS
        assert verdict.definitive
        assert verdict.witness is not None
        assert verdict.witness.words[0] == (0, 1)

    def test_m2_pair_xy_unswappable(self, m2_n2):
        verdict, table = normalizing_probe(m2_n2)
        assert verdict.verdict is Verdict.FAILS
        assert (0, 1) not in table.swaps

    def test_free2_fails(self, free2):
        verdict, _ = normalizing_probe(free2)
        assert verdict.verdict is Verdict.FAILS


class TestAtomProbe:
    def test_free_generator_definitive_atom(self, free2):
        verdict = atom_probe(free2, 0)
        assert verdict.verdict is Verdict.HOLDS and verdict.definitive

    def test_non_atomic_generator(self, non_atomic):
        verdict = atom_probe(non_atomic, 1, ExplorationBudget(12))
        assert verdict.verdict is Verdict.FAILS
        assert verdict.witness is not None and verdict.witness.kind == "splits"

    def test_m3_generators_hold(self, m3_n2):
        for g in range(4):
            assert atom_probe(m3_n2, g).verdict is Verdict.HOLDS

    def test_unit_generator_not_atom(self):
        p = parse_presentation("gens: x\nrel: x = 1\n")
        verdict = atom_probe(p, 0, ExplorationBudget(6, 100, 1000))
        assert verdict.verdict is Verdict.FAILS
        assert verdict.witness.kind == "identity"


class TestIrredundancyProbe:
    def test_m1_definitive(self, m1):
        verdict = irredundancy_probe(m1)
        assert verdict.verdict is Verdict.HOLDS and verdict.definitive

    def test_redundant_generator(self):
        p = parse_presentation("gens: x y\nrel: y = x x\n")
        verdict = irredundancy_probe(p)
        assert verdict.verdict is Verdict.FAILS
        assert verdict.witness.words == ((1,), (0, 0))

    def test_free_definitive(self, free2):
        verdict = irredundancy_probe(free2)
        assert verdict.verdict is Verdict.HOLDS and verdict.definitive

    def test_unknown_when_classes_truncate(self, non_atomic):
        verdict = irredundancy_probe(non_atomic, ExplorationBudget(8))
        assert verdict.verdict is Verdict.UNKNOWN_AT_BOUND


class TestAcyclicityReducedness:
    def test_m2_samples_hold_at_bound(self, m2_n2):
        import itertools

        samples = [
            w for k in range(1, 5) for w in itertools.product(range(2), repeat=k)
        ]
        verdict = acyclicity_reducedness_probe(m2_n2, samples, ExplorationBudget(24))
        assert verdict.verdict is Verdict.HOLDS
        assert not verdict.definitive

    def test_unit_witness(self, unit_monoid):
        verdict = acyclicity_reducedness_probe(
            unit_monoid, [(0,)], ExplorationBudget(8, 100, 2000)
        )
        assert verdict.verdict is Verdict.FAILS
        assert verdict.witness.kind == "unit"

    def test_cycle_witness(self, non_atomic):
        verdict = acyclicity_reducedness_probe(non_atomic, [(1,)], ExplorationBudget(10))
        assert verdict.verdict is Verdict.FAILS
        assert verdict.witness.kind == "cycle"
        assert verdict.witness.words == ((1,), (0, 1, 0))


def _independent_min_m(entry):
    """Least trim m making the d=1 inner containment true, by direct scan."""
    values = set(entry.values)
    m = 0
    while True:
        lo, hi = entry.lambda_k + m, entry.rho_k - m
        if all(v in values for v in range(lo, hi + 1)):
            return m
        m += 1


class TestUnionsStructureVerifier:
    def test_m1_candidate(self, m1):
        profile = unions_profile(m1, range(1, 7), ExplorationBudget(24, 200_000))
        report = unions_structure_verifier(profile)
        assert report.candidate == (1, 1, 0)

    def test_free_monoid_candidate(self, free2):
        profile = unions_profile(free2, range(1, 5))
        assert unions_structure_verifier(profile).candidate == (1, 1, 0)

    def test_m3_doubling_is_sandwiched(self, m3_n2):
        # with doubling growth every relation shifts length by one, so the
        # unions are full intervals and the least parameters work
        profile = unions_profile(m3_n2, range(3, 7), ExplorationBudget(42, 500_000))
        assert profile.exact
        for e in profile.entries:
            assert e.values == tuple(range(e.lambda_k, e.rho_k + 1))
        assert unions_structure_verifier(profile).candidate == (1, 1, 0)

    def test_m3_tripling_has_no_candidate(self, m3_n3):
        profile = unions_profile(m3_n3, range(3, 6), ExplorationBudget(90, 500_000))
        assert profile.exact
        report = unions_structure_verifier(profile)
        assert report.candidate is None
        expected_trend = tuple(
            (e.k, _independent_min_m(e)) for e in sorted(profile.entries, key=lambda e: e.k)
        )
        assert report.failure_trend == expected_trend
        assert report.failure_trend == ((3, 5), (4, 14), (5, 42))
        ms = [m for _, m in report.failure_trend]
        assert all(a < b for a, b in zip(ms, ms[1:]))

    def test_inexact_profile_rejected(self, m2_n2):
        profile = unions_profile(m2_n2, [4], ExplorationBudget(6))
        assert not profile.exact
        with pytest.raises(ValueError):
            unions_structure_verifier(profile)

    def test_candidate_is_reproducible(self, m3_n3):
        profile = unions_profile(m3_n3, range(3, 5), ExplorationBudget(40, 200_000))
        first = unions_structure_verifier(profile, SearchCaps(m_max=20))
        second = unions_structure_verifier(profile, SearchCaps(m_max=20))
        assert first == second


class TestConsecutivePairAnalysis:
    def test_m3_doubling_violates_pair_bound(self, m3_n2):
        profile = unions_profile(m3_n2, range(1, 7), ExplorationBudget(42, 500_000))
        records = {r.k: r for r in consecutive_pair_analysis(profile)}
        assert records[3].ceiling == 6
        assert records[3].bound == 5
        assert records[3].within_bound is False

    def test_m3_tripling_meets_pair_bound(self, m3_n3):
        profile = unions_profile(m3_n3, range(1, 6), ExplorationBudget(90, 500_000))
        records = {r.k: r for r in consecutive_pair_analysis(profile)}
        assert {k: r.ceiling for k, r in records.items()} == {3: 5, 4: 8, 5: 15}
        assert all(r.within_bound for r in records.values())

    def test_free_monoid_pairs_undefined(self, free2):
        profile = unions_profile(free2, range(1, 5))
        records = consecutive_pair_analysis(profile)
        assert all(r.ceiling is None and r.within_bound is None for r in records)

    def test_requires_k_three(self, free2):
        profile = unions_profile(free2, [1, 2])
        with pytest.raises(ValueError):
            consecutive_pair_analysis(profile)


class TestArithmeticProgressionHelper:
    def test_cases(self):
        assert is_arithmetic_progression([], 3)
        assert is_arithmetic_progression([5], 0)
        assert is_arithmetic_progression([2, 4, 6], 2)
        assert not is_arithmetic_progression([2, 4, 7], 2)
