"""Property-based tests for engine invariants on randomized inputs."""

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from factorlab import (
    ExplorationBudget,
    LengthSet,
    Presentation,
    delta_subgroup,
    distance_set,
    explore_class,
    is_arithmetic_progression,
    neighbors,
    parse_presentation,
    relation_deltas,
    serialize_presentation,
    symmetric_closure,
)

NAMES = ("a", "b", "c")


@st.composite
def presentations(draw, max_gens=3, max_rels=2, max_side=3):
    n = draw(st.integers(1, max_gens))
    rel_count = draw(st.integers(0, max_rels))
    rels = []
    for _ in range(rel_count):
        lhs = tuple(draw(st.lists(st.integers(0, n - 1), max_size=max_side)))
        rhs = tuple(draw(st.lists(st.integers(0, n - 1), max_size=max_side)))
        if (lhs, rhs) not in rels:  # the parser drops duplicates
            rels.append((lhs, rhs))
    return Presentation.build(NAMES[:n], rels)


@st.composite
def one_relation_presentations(draw):
    """Two or three generators, one relation whose sides start and end with
    different letters (so the monoid is cancellative by the embedding test)."""
    n = draw(st.integers(2, 3))
    lhs = tuple(draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=4)))
    rhs = tuple(
        draw(
            st.lists(st.integers(0, n - 1), min_size=1, max_size=4).filter(
                lambda w: w[0] != lhs[0] and w[-1] != lhs[-1]
            )
        )
    )
    return Presentation.build(NAMES[:n], [(lhs, rhs)])


@st.composite
def words_over(draw, p, max_len=4):
    n = len(p.generators)
    return tuple(draw(st.lists(st.integers(0, n - 1), max_size=max_len)))


@given(presentations())
@settings(max_examples=100)
def test_symmetric_closure_idempotent(p):
    closed = Presentation.build(
        [g.name for g in p.generators],
        [(r.lhs, r.rhs) for r in symmetric_closure(p)],
    )
    assert set(symmetric_closure(closed)) == set(symmetric_closure(p))


@given(presentations())
@settings(max_examples=100)
def test_closure_deltas_are_symmetric(p):
    deltas = sorted(r.delta for r in symmetric_closure(p))
    assert deltas == sorted(-d for d in deltas)


@given(one_relation_presentations())
@settings(max_examples=60)
def test_one_relation_has_one_delta(p):
    assert len(relation_deltas(p)) == 1


@given(presentations())
@settings(max_examples=100)
def test_serialize_round_trip(p):
    assert parse_presentation(serialize_presentation(p)) == p


@given(presentations(), st.data())
@settings(max_examples=100, deadline=None)
def test_every_step_is_reversible(p, data):
    w = data.draw(words_over(p))
    closure = symmetric_closure(p)
    for step in neighbors(w, p):
        rel = closure[step.relation_index]
        back = [
            s
            for s in neighbors(step.target, p)
            if s.target == w and s.position == step.position
        ]
        assert back, f"no reverse step for {step}"
        assert rel.reversed() in closure


@given(one_relation_presentations(), st.data())
@settings(max_examples=60, deadline=None)
def test_exact_classes_closed_and_ap(p, data):
    w = data.draw(words_over(p, max_len=4))
    budget = ExplorationBudget(14, max_states=600, max_transitions=8000)
    if len(w) > budget.max_word_len:
        return
    fc = explore_class(w, p, budget)
    if not fc.exact:
        return
    # closure under single steps
    for member in fc.members:
        for step in neighbors(member, p):
            assert step.target in fc
    # one-relation length sets are arithmetic progressions
    d = abs(p.relations[0].delta)
    lengths = fc.lengths()
    assert is_arithmetic_progression(lengths, d) or len(lengths) == 1
    if d == 0:
        assert lengths == (len(w),)


@given(presentations(max_rels=2), st.data())
@settings(max_examples=80, deadline=None)
def test_path_deltas_lie_in_delta_subgroup(p, data):
    w = data.draw(words_over(p, max_len=3))
    budget = ExplorationBudget(12, max_states=400, max_transitions=5000)
    if len(w) > budget.max_word_len:
        return
    fc = explore_class(w, p, budget)
    allowed = {r.delta for r in symmetric_closure(p) if not r.is_inert}
    d = delta_subgroup(p)
    for member in fc.members:
        total = 0
        for step in fc.path_to(member):
            delta = len(step.target) - len(step.source)
            assert delta in allowed
            total += delta
        assert d.contains(total)
        assert total == len(member) - len(w)


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_free_monoid_classes_are_singletons(data):
    n = data.draw(st.integers(1, 3))
    p = Presentation.build(NAMES[:n], [])
    w = data.draw(words_over(p, max_len=5))
    fc = explore_class(w, p, ExplorationBudget(8))
    assert fc.exact and fc.members == (w,)


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_subadditivity_in_corpus_monoid(data):
    p = parse_presentation("gens: x y z\nrel: x y = y z x\n")
    budget = ExplorationBudget(24, max_states=50_000)
    a = data.draw(words_over(p, max_len=3))
    b = data.draw(words_over(p, max_len=3))
    la = explore_class(a, p, budget)
    lb = explore_class(b, p, budget)
    lab = explore_class(a + b, p, budget)
    assert la.exact and lb.exact and lab.exact
    sums = {x + y for x in la.lengths() for y in lb.lengths()}
    assert sums <= set(lab.lengths())


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_distances_bounded_by_max_delta(data):
    p = parse_presentation("gens: u v x y\nrel: u u = v v v\nrel: x y = y y x\n")
    budget = ExplorationBudget(20, max_states=20_000)
    w = data.draw(words_over(p, max_len=3))
    fc = explore_class(w, p, budget)
    if not fc.exact:
        return
    ds = distance_set(LengthSet.from_class(fc))
    assert all(1 <= d <= p.max_closure_delta for d in ds.values)


def test_exhaustive_small_word_determinism():
    p = parse_presentation("gens: x y\nrel: x y = y y x\n")
    budget = ExplorationBudget(16, max_states=10_000)
    for k in range(0, 4):
        for w in itertools.product(range(2), repeat=k):
            first = explore_class(w, p, budget)
            second = explore_class(w, p, budget)
            assert first.members == second.members
            assert first.exact == second.exact
