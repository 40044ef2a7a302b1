"""Bounded breadth-first exploration of equivalence classes of words.

Two words are equal in the monoid when one can be turned into the other by
a chain of elementary transitions, each replacing one occurrence of a
relation side by the other side. The word problem is undecidable in
general, so every exploration here runs under an explicit budget and
reports whether its result is exact or truncated.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping

from .presentation import EMPTY_WORD, Presentation, Word


class Truncation(Enum):
    """Which budget limit fired first during an exploration."""

    WORD_LEN = "word_len"
    STATES = "states"
    TRANSITIONS = "transitions"


@dataclass(frozen=True)
class ExplorationBudget:
    """Hard limits for a class exploration; all must be positive.

    max_word_len bounds the length of any word the search will visit,
    max_states bounds the number of distinct words, and max_transitions
    bounds the number of rewrite occurrences examined.
    """

    max_word_len: int
    max_states: int = 1_000_000
    max_transitions: int = 10_000_000

    def __post_init__(self) -> None:
        for field_name in ("max_word_len", "max_states", "max_transitions"):
            if getattr(self, field_name) <= 0:
                raise ValueError(f"{field_name} must be positive")


_PRESETS = {
    "small": (2, 8, 10**5, 10**6),
    "default": (4, 8, 10**6, 10**7),
    "large": (8, 16, 10**7, 10**8),
}


def default_budget(seed_len: int, preset: str = "default") -> ExplorationBudget:
    """Budget scaled to the seed word length; preset in {small, default, large}."""
    try:
        factor, offset, states, transitions = _PRESETS[preset]
    except KeyError:
        raise ValueError(f"unknown budget preset {preset!r}") from None
    return ExplorationBudget(factor * seed_len + offset, states, transitions)


@dataclass(frozen=True)
class TransitionStep:
    """One elementary rewrite: source = d + lhs + h, target = d + rhs + h.

    relation_index points into the presentation's symmetric closure and
    position is len(d), the offset of the replaced occurrence.
    """

    source: Word
    target: Word
    relation_index: int
    position: int


class FactorizationClass:
    """The explored portion of a word's equivalence class.

    ``members`` lists words in BFS discovery order, seed first. ``exact``
    is True only when the search frontier emptied with no budget limit
    firing, in which case members is the entire class. Membership checks
    run on an id table and do not rescan symbol sequences.
    """

    __slots__ = ("seed", "members", "exact", "truncation_reason", "_ids", "_parents")

    def __init__(
        self,
        seed: Word,
        members: tuple[Word, ...],
        exact: bool,
        truncation_reason: Truncation | None,
        ids: dict[Word, int],
        parents: list[tuple[int, int, int]],
    ):
        self.seed = seed
        self.members = members
        self.exact = exact
        self.truncation_reason = truncation_reason
        self._ids = ids
        self._parents = parents

    def __contains__(self, word: object) -> bool:
        return word in self._ids

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.members)

    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(w) for w in self.members}))

    def path_to(self, word: Word) -> tuple[TransitionStep, ...]:
        """Transition chain from the seed to a member; the equality certificate."""
        wid = self._ids.get(tuple(word))
        if wid is None:
            raise KeyError(f"{word!r} is not a member of this class")
        steps: list[TransitionStep] = []
        while wid != 0:
            pid, ridx, pos = self._parents[wid]
            steps.append(
                TransitionStep(self.members[pid], self.members[wid], ridx, pos)
            )
            wid = pid
        steps.reverse()
        return tuple(steps)


def neighbors(word: Word, p: Presentation) -> list[TransitionStep]:
    """All single-step rewrites of a word, ordered by position then rule.

    Every occurrence of every non-inert closure relation's left side is
    used, including empty left sides (which insert the right side).
    """
    rules = p.rewrite_rules
    w = tuple(word)
    n = len(w)
    out: list[TransitionStep] = []
    for pos in range(n + 1):
        for ridx, lhs, rhs in rules:
            ln = len(lhs)
            if pos + ln > n:
                continue
            if w[pos : pos + ln] != lhs:
                continue
            out.append(TransitionStep(w, w[:pos] + rhs + w[pos + ln :], ridx, pos))
    return out


def explore_class(seed: Word, p: Presentation, budget: ExplorationBudget) -> FactorizationClass:
    """Breadth-first closure of a seed word under elementary rewrites.

    Words longer than the budget's max_word_len are never enqueued; state
    and transition caps stop the search outright. Budget exhaustion is not
    an error: the result carries exact=False and the reason. Output order
    is deterministic for equal inputs.
    """
    seed = tuple(seed)
    if len(seed) > budget.max_word_len:
        raise ValueError(
            f"seed length {len(seed)} exceeds budget max_word_len {budget.max_word_len}"
        )
    rules = p.rewrite_rules
    max_len = budget.max_word_len
    max_states = budget.max_states
    max_transitions = budget.max_transitions

    words: list[Word] = [seed]
    ids: dict[Word, int] = {seed: 0}
    parents: list[tuple[int, int, int]] = [(-1, -1, -1)]
    queue: deque[int] = deque((0,))
    truncation: Truncation | None = None
    transitions = 0
    stopped = False

    while queue and not stopped:
        wid = queue.popleft()
        w = words[wid]
        n = len(w)
        for pos in range(n + 1):
            if stopped:
                break
            for ridx, lhs, rhs in rules:
                ln = len(lhs)
                if pos + ln > n or w[pos : pos + ln] != lhs:
                    continue
                transitions += 1
                if transitions > max_transitions:
                    truncation = truncation or Truncation.TRANSITIONS
                    stopped = True
                    break
                nw = w[:pos] + rhs + w[pos + ln :]
                if nw in ids:
                    continue
                if len(nw) > max_len:
                    truncation = truncation or Truncation.WORD_LEN
                    continue
                if len(words) >= max_states:
                    truncation = truncation or Truncation.STATES
                    stopped = True
                    break
                ids[nw] = len(words)
                words.append(nw)
                parents.append((wid, ridx, pos))
                queue.append(len(words) - 1)

    exact = truncation is None and not queue
    return FactorizationClass(seed, tuple(words), exact, truncation, ids, parents)


class Equality(Enum):
    """Three-valued answer to the bounded word problem.

    YES: equality witnessed by a transition path. NO: the first word's
    class was explored exactly and the second is absent, a definitive
    answer. NO_WITHIN_BUDGET: not found, but the exploration truncated,
    so the answer is inconclusive.
    """

    YES = "yes"
    NO = "no"
    NO_WITHIN_BUDGET = "no_within_budget"


def equal_in_monoid(a: Word, b: Word, p: Presentation, budget: ExplorationBudget) -> Equality:
    """Decide a = b in the monoid, within the budget."""
    a = tuple(a)
    b = tuple(b)
    if a == b:
        return Equality.YES
    fc = explore_class(a, p, budget)
    if b in fc:
        return Equality.YES
    return Equality.NO if fc.exact else Equality.NO_WITHIN_BUDGET


def _exponent_vector(word: Word, gen_count: int) -> tuple[int, ...]:
    counts = [0] * gen_count
    for sym in word:
        counts[sym] += 1
    return tuple(counts)


def sorted_normal_form(
    word: Word,
    p: Presentation,
    swap_table: Mapping[tuple[int, int], int] | object,
    budget: ExplorationBudget,
) -> Word | None:
    """Length-preserving sorted form with lexicographically least exponents.

    Searches the words reachable from ``word`` using only generator swap
    moves (an adjacent pair (x, y) may be replaced by (z, x) when the swap
    table maps (x, y) to z), collects those whose symbols are sorted by
    generator id, and returns the one whose exponent vector is smallest in
    the lexicographic order. Returns None when the search truncates or no
    sorted representative is reachable.

    ``swap_table`` may be a plain mapping or an object with a ``swaps``
    mapping attribute.
    """
    swaps: Mapping[tuple[int, int], int] = getattr(swap_table, "swaps", swap_table)  # type: ignore[assignment]
    start = tuple(word)
    gen_count = len(p.generators)
    seen: set[Word] = {start}
    queue: deque[Word] = deque((start,))
    best: tuple[tuple[int, ...], Word] | None = None
    transitions = 0

    while queue:
        w = queue.popleft()
        if all(w[i] <= w[i + 1] for i in range(len(w) - 1)):
            vec = _exponent_vector(w, gen_count)
            if best is None or vec < best[0]:
                best = (vec, w)
        for i in range(len(w) - 1):
            z = swaps.get((w[i], w[i + 1]))
            if z is None:
                continue
            transitions += 1
            if transitions > budget.max_transitions:
                return None
            nw = w[:i] + (z, w[i]) + w[i + 2 :]
            if nw in seen:
                continue
            if len(seen) >= budget.max_states:
                return None
            seen.add(nw)
            queue.append(nw)

    return best[1] if best is not None else None


__all__ = [
    "Truncation",
    "ExplorationBudget",
    "default_budget",
    "TransitionStep",
    "FactorizationClass",
    "neighbors",
    "explore_class",
    "Equality",
    "equal_in_monoid",
    "sorted_normal_form",
    "EMPTY_WORD",
]
