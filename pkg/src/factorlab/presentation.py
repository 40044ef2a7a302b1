"""Finite monoid presentations: parsing, serialization, derived structure.

A presentation consists of a finite ordered list of named generators and a
finite list of relation pairs (lhs, rhs) of words over those generators.
Words are tuples of generator ids; the empty tuple is the identity.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Word = tuple[int, ...]

EMPTY_WORD: Word = ()

IDENTITY_TOKEN = "1"

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class PresentationError(ValueError):
    """Invalid presentation structure (ids, names, or symbol ranges)."""


class PresentationSyntaxError(PresentationError):
    """Malformed presentation text; carries 1-based line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class DuplicateRelationWarning(UserWarning):
    """A relation appeared more than once and was dropped."""


@dataclass(frozen=True)
class Generator:
    """A named generator; ids are dense 0..n-1 in declaration order."""

    id: int
    name: str


@dataclass(frozen=True)
class Relation:
    """An ordered pair of words declared equal in the monoid."""

    lhs: Word
    rhs: Word

    @property
    def delta(self) -> int:
        """Length difference len(lhs) - len(rhs)."""
        return len(self.lhs) - len(self.rhs)

    @property
    def is_inert(self) -> bool:
        """True for identity pairs (a, a), which rewrite nothing."""
        return self.lhs == self.rhs

    def reversed(self) -> "Relation":
        return Relation(self.rhs, self.lhs)


@dataclass(frozen=True)
class SideGraph:
    """Simple undirected graph on generator ids, used by the Adyan test.

    Self-loops (a relation pair whose tracked letters coincide) are not
    stored as edges; they are recorded in ``has_self_loop`` and count as
    cycles.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    has_self_loop: bool

    def is_acyclic(self) -> bool:
        if self.has_self_loop:
            return False
        parent = list(range(self.vertex_count))

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True


@dataclass(frozen=True)
class Presentation:
    """A finite presentation; immutable and safe to share across threads."""

    generators: tuple[Generator, ...]
    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        seen_names: set[str] = set()
        for i, gen in enumerate(self.generators):
            if gen.id != i:
                raise PresentationError(f"generator ids must be dense, got id {gen.id} at index {i}")
            if not _NAME_RE.match(gen.name):
                raise PresentationError(f"invalid generator name {gen.name!r}")
            if gen.name in seen_names:
                raise PresentationError(f"duplicate generator name {gen.name!r}")
            seen_names.add(gen.name)
        n = len(self.generators)
        for rel in self.relations:
            for word in (rel.lhs, rel.rhs):
                for sym in word:
                    if not 0 <= sym < n:
                        raise PresentationError(f"relation symbol {sym} out of range for {n} generators")

    @classmethod
    def build(
        cls,
        names: Sequence[str],
        relations: Iterable[tuple[Sequence[int], Sequence[int]]] = (),
    ) -> "Presentation":
        """Construct a presentation from generator names and id-pair relations."""
        gens = tuple(Generator(i, name) for i, name in enumerate(names))
        rels = tuple(Relation(tuple(lhs), tuple(rhs)) for lhs, rhs in relations)
        return cls(gens, rels)

    @cached_property
    def name_to_id(self) -> dict[str, int]:
        return {g.name: g.id for g in self.generators}

    @cached_property
    def symmetric_closure(self) -> tuple[Relation, ...]:
        """Smallest symmetric superset of the relations, deduplicated.

        Originals come first in declaration order, then missing reversals.
        Identity pairs are retained; consumers skip them via ``is_inert``.
        """
        out: list[Relation] = []
        seen: set[tuple[Word, Word]] = set()
        for rel in self.relations:
            key = (rel.lhs, rel.rhs)
            if key not in seen:
                seen.add(key)
                out.append(rel)
        for rel in self.relations:
            rev = rel.reversed()
            key = (rev.lhs, rev.rhs)
            if key not in seen:
                seen.add(key)
                out.append(rev)
        return tuple(out)

    @cached_property
    def rewrite_rules(self) -> tuple[tuple[int, Word, Word], ...]:
        """Non-inert closure relations as (closure_index, lhs, rhs) triples."""
        return tuple(
            (i, rel.lhs, rel.rhs)
            for i, rel in enumerate(self.symmetric_closure)
            if not rel.is_inert
        )

    @cached_property
    def active_generator_ids(self) -> frozenset[int]:
        """Ids of generators that occur in some relation side."""
        ids: set[int] = set()
        for rel in self.relations:
            ids.update(rel.lhs)
            ids.update(rel.rhs)
        return frozenset(ids)

    @cached_property
    def max_closure_delta(self) -> int:
        """Largest length increase any single rewrite can cause (0 if none)."""
        return max((abs(rel.delta) for rel in self.relations), default=0)

    def word(self, text: str) -> Word:
        return parse_word(self, text)

    def format_word(self, word: Word) -> str:
        if not word:
            return IDENTITY_TOKEN
        return " ".join(self.generators[sym].name for sym in word)


def _tokens_with_columns(segment: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", segment)]


def _parse_word_tokens(
    tokens: list[tuple[str, int]],
    name_to_id: dict[str, int],
    line: int | None,
    base_column: int,
) -> Word:
    if len(tokens) == 1 and tokens[0][0] == IDENTITY_TOKEN:
        return EMPTY_WORD
    symbols: list[int] = []
    for token, col in tokens:
        if token == IDENTITY_TOKEN:
            raise PresentationSyntaxError(
                "identity token '1' must stand alone in a word", line, base_column + col - 1
            )
        gid = name_to_id.get(token)
        if gid is None:
            if not name_to_id:
                raise PresentationSyntaxError(
                    "relation uses generators but the generator list is empty",
                    line,
                    base_column + col - 1,
                )
            raise PresentationSyntaxError(
                f"unknown generator {token!r}", line, base_column + col - 1
            )
        symbols.append(gid)
    return tuple(symbols)


def parse_word(p: Presentation, text: str) -> Word:
    """Parse a whitespace-separated word over the presentation's generators.

    The literal ``1`` denotes the empty word.
    """
    tokens = _tokens_with_columns(text)
    if not tokens:
        raise PresentationSyntaxError("empty word (use '1' for the identity)")
    return _parse_word_tokens(tokens, p.name_to_id, None, 1)


def parse_presentation(text: str) -> Presentation:
    """Parse the textual presentation format.

    Format (UTF-8): one ``gens: <name> ...`` line, then zero or more
    ``rel: <word> = <word>`` lines; ``#`` starts a comment; ``1`` denotes
    the empty word. Duplicate relations are dropped with a warning.
    """
    names: list[str] | None = None
    relations: list[Relation] = []
    seen_rel: set[tuple[Word, Word]] = set()
    name_to_id: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if stripped.startswith("gens:"):
            if names is not None:
                raise PresentationSyntaxError("duplicate 'gens:' line", lineno, indent + 1)
            payload = stripped[len("gens:"):]
            base = indent + len("gens:") + 1
            names = []
            for token, col in _tokens_with_columns(payload):
                if not _NAME_RE.match(token):
                    raise PresentationSyntaxError(
                        f"invalid generator name {token!r}", lineno, base + col - 1
                    )
                if token in name_to_id:
                    raise PresentationSyntaxError(
                        f"duplicate generator name {token!r}", lineno, base + col - 1
                    )
                name_to_id[token] = len(names)
                names.append(token)
        elif stripped.startswith("rel:"):
            if names is None:
                raise PresentationSyntaxError(
                    "'rel:' line before the 'gens:' line", lineno, indent + 1
                )
            payload = stripped[len("rel:"):]
            base = indent + len("rel:") + 1
            if payload.count("=") != 1:
                raise PresentationSyntaxError(
                    "relation must contain exactly one '='", lineno, indent + 1
                )
            lhs_text, _, rhs_text = payload.partition("=")
            lhs = _parse_word_tokens(_tokens_with_columns(lhs_text), name_to_id, lineno, base)
            rhs = _parse_word_tokens(
                _tokens_with_columns(rhs_text),
                name_to_id,
                lineno,
                base + len(lhs_text) + 1,
            )
            key = (lhs, rhs)
            if key in seen_rel:
                warnings.warn(
                    f"duplicate relation on line {lineno} dropped",
                    DuplicateRelationWarning,
                    stacklevel=2,
                )
                continue
            seen_rel.add(key)
            relations.append(Relation(lhs, rhs))
        else:
            raise PresentationSyntaxError(
                "expected a 'gens:' or 'rel:' line", lineno, indent + 1
            )

    if names is None:
        raise PresentationSyntaxError("missing 'gens:' line")
    return Presentation.build(names, [(r.lhs, r.rhs) for r in relations])


def serialize_presentation(p: Presentation) -> str:
    """Deterministic textual form; round-trips through parse_presentation."""
    lines = ["gens: " + " ".join(g.name for g in p.generators) if p.generators else "gens:"]
    for rel in p.relations:
        lines.append(f"rel: {p.format_word(rel.lhs)} = {p.format_word(rel.rhs)}")
    return "\n".join(lines) + "\n"


def symmetric_closure(p: Presentation) -> tuple[Relation, ...]:
    """The symmetric closure of the relation list (derived, deduplicated)."""
    return p.symmetric_closure


def relation_deltas(p: Presentation) -> list[int]:
    """Length differences len(lhs) - len(rhs) of the relations as given.

    Returned as a list in declaration order; duplicates are meaningful.
    """
    return [rel.delta for rel in p.relations]


def side_graphs(p: Presentation) -> tuple[SideGraph, SideGraph]:
    """First-letter and last-letter graphs over the generators.

    Relations with an empty side are skipped here; adyan_check reports
    them separately. A pair whose tracked letters coincide sets the
    self-loop flag on the corresponding graph.
    """
    left_edges: set[tuple[int, int]] = set()
    right_edges: set[tuple[int, int]] = set()
    left_loop = False
    right_loop = False
    for rel in p.relations:
        if not rel.lhs or not rel.rhs:
            continue
        a, b = rel.lhs[0], rel.rhs[0]
        if a == b:
            left_loop = True
        else:
            left_edges.add((min(a, b), max(a, b)))
        a, b = rel.lhs[-1], rel.rhs[-1]
        if a == b:
            right_loop = True
        else:
            right_edges.add((min(a, b), max(a, b)))
    n = len(p.generators)
    return (
        SideGraph(n, tuple(sorted(left_edges)), left_loop),
        SideGraph(n, tuple(sorted(right_edges)), right_loop),
    )
