"""Serialise leveled graphs to structure-aware text and parse it back.

The wire format, bit-exact:

    [S | head, P | relation, O | tail, level]

one bracket group per triple, groups joined by ", ", sorted by
(level, input index).  With level markers disabled the trailing
", level" is omitted.  Masked variants produced by the masker are part of
the format: a whole-triple mask renders as "[<X>, level]" and a masked
relation replaces its "P | relation" segment with "<Y>".

Labels may contain commas; the parser re-attaches comma-split chunks to
the current field until the next role prefix, which is why labels
containing a literal ", P | " (or ", O | ", ", S | ") are the one
documented ambiguity of the format.  '[' and ']' never occur in labels
(rejected at triple construction).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadRolePrefix, BadSegmentCount, UnbalancedBrackets
from .graph import LeveledGraph, Triple

TRIPLE_SENTINEL = "<X>"
RELATION_SENTINEL = "<Y>"
END_SENTINEL = "<Z>"


@dataclass(frozen=True)
class LinearizeOptions:
    """Rendering options; `order` admits only the documented rule."""

    include_level_markers: bool = True
    order: str = "level"  # level-ascending, stable within a level

    def __post_init__(self):
        if self.order != "level":
            raise ValueError(f"unknown triple ordering rule: {self.order!r}")


DEFAULT_OPTIONS = LinearizeOptions()


@dataclass(frozen=True)
class ParsedUnit:
    """One bracket group of a (possibly masked) linearisation.

    `masked` marks a whole-triple "<X>" placeholder (head/relation/tail are
    None); `relation_masked` marks a "<Y>" in place of the relation segment.
    """

    head: str | None
    relation: str | None
    tail: str | None
    level: int | None
    masked: bool = False
    relation_masked: bool = False

    def to_triple(self) -> Triple:
        if self.masked or self.relation_masked:
            raise ValueError("cannot materialise a masked unit as a Triple")
        return Triple(self.head, self.relation, self.tail)


def linearized_order(lg: LeveledGraph) -> list[int]:
    """Triple indices sorted by (level, input index)."""
    return sorted(range(len(lg.levels)), key=lambda i: (lg.levels[i], i))


def render_triple(triple: Triple, level: int | None) -> str:
    if level is None:
        return f"[S | {triple.head}, P | {triple.relation}, O | {triple.tail}]"
    return f"[S | {triple.head}, P | {triple.relation}, O | {triple.tail}, {level}]"


def linearize(lg: LeveledGraph, opts: LinearizeOptions = DEFAULT_OPTIONS) -> str:
    """Render a leveled graph in the wire format above."""
    order = linearized_order(lg)
    marker = opts.include_level_markers
    return ", ".join(
        render_triple(lg.graph.triples[i], lg.levels[i] if marker else None) for i in order
    )


def _split_groups(text: str) -> list[str]:
    """Split a linearisation into its top-level bracket groups."""
    groups = []
    i, n = 0, len(text)
    while i < n:
        if text[i] != "[":
            raise UnbalancedBrackets(f"expected '[' at position {i}")
        end = text.find("]", i + 1)
        if end == -1:
            raise UnbalancedBrackets(f"unterminated bracket group at position {i}")
        if "[" in text[i + 1 : end]:
            raise UnbalancedBrackets(f"nested '[' inside group at position {i}")
        groups.append(text[i + 1 : end])
        i = end + 1
        if i < n:
            if not text.startswith(", ", i):
                raise UnbalancedBrackets(f"expected ', ' between groups at position {i}")
            i += 2
    if not groups:
        raise UnbalancedBrackets("no bracket groups found")
    return groups


def _parse_group(interior: str) -> ParsedUnit:
    chunks = interior.split(", ")

    # whole-triple mask: "<X>" or "<X>, level"
    if chunks[0] == TRIPLE_SENTINEL:
        if len(chunks) == 1:
            return ParsedUnit(None, None, None, None, masked=True)
        if len(chunks) == 2 and chunks[1].isdigit():
            return ParsedUnit(None, None, None, int(chunks[1]), masked=True)
        raise BadSegmentCount(f"malformed masked-triple group: [{interior}]")

    level: int | None = None
    if len(chunks) > 1 and chunks[-1].isdigit():
        level = int(chunks[-1])
        chunks = chunks[:-1]

    # Reassemble comma-containing labels: a chunk opens a new field only
    # when it carries a role prefix (or is the relation sentinel).
    fields: list[tuple[str, str]] = []  # (role, text)
    for chunk in chunks:
        if chunk.startswith("S | "):
            fields.append(("S", chunk[4:]))
        elif chunk.startswith("P | "):
            fields.append(("P", chunk[4:]))
        elif chunk.startswith("O | "):
            fields.append(("O", chunk[4:]))
        elif chunk == RELATION_SENTINEL:
            fields.append(("Y", ""))
        elif fields:
            fields[-1] = (fields[-1][0], fields[-1][1] + ", " + chunk)
        else:
            raise BadRolePrefix(f"group does not start with a role prefix: [{interior}]")

    if len(fields) != 3:
        raise BadSegmentCount(
            f"expected 3 role segments (plus optional level), got {len(fields)}: [{interior}]"
        )
    roles = tuple(role for role, _ in fields)
    if roles == ("S", "P", "O"):
        return ParsedUnit(fields[0][1], fields[1][1], fields[2][1], level)
    if roles == ("S", "Y", "O"):
        return ParsedUnit(fields[0][1], None, fields[2][1], level, relation_masked=True)
    raise BadRolePrefix(f"role prefixes out of order: {roles} in [{interior}]")


def parse_linearized(text: str) -> list[ParsedUnit]:
    """Parse a linearisation (masked or not) back into its bracket groups.

    Exact inverse of :func:`linearize` on unmasked text; masked groups come
    back as ParsedUnits with the corresponding mask flag set.
    """
    return [_parse_group(g) for g in _split_groups(text)]


def parsed_triples(units: list[ParsedUnit]) -> tuple[list[Triple], list[int] | None]:
    """Convenience view of a fully unmasked parse: (triples, levels or None).

    Levels are returned only when every group carries one.
    """
    triples = [u.to_triple() for u in units]
    if all(u.level is not None for u in units):
        return triples, [u.level for u in units]
    return triples, None
