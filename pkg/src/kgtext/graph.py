"""Directed labelled graphs with per-triple level markers.

A triple is one directed edge (head entity, relation, tail entity).  The
level of a triple is the shortest directed distance of its tail entity from
the nearest root, where a root is a node with no incoming edge.  Levels
start at 1: a triple whose head is a root has level 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import DuplicateTriple, EmptyGraph, MalformedTriple

_FORBIDDEN_CHARS = ("[", "]")


@dataclass(frozen=True, slots=True)
class Triple:
    """One directed edge. Fields are trimmed at construction; empty fields
    and the linearisation delimiters '[' / ']' are rejected."""

    head: str
    relation: str
    tail: str

    def __post_init__(self):
        for name in ("head", "relation", "tail"):
            value = getattr(self, name).strip()
            if not value:
                raise MalformedTriple(f"triple field '{name}' is empty")
            if any(ch in value for ch in _FORBIDDEN_CHARS):
                raise MalformedTriple(
                    f"triple field '{name}' contains a reserved bracket character: {value!r}"
                )
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class KnowledgeGraph:
    """An ordered, duplicate-free list of triples plus its entity set."""

    triples: tuple[Triple, ...]
    entities: frozenset[str] = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "entities",
            frozenset(t.head for t in self.triples) | frozenset(t.tail for t in self.triples),
        )

    def __len__(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class LeveledGraph:
    """A graph with one level per triple (aligned to triple order) and the
    root set the levels were computed from."""

    graph: KnowledgeGraph
    levels: tuple[int, ...]
    roots: frozenset[str]

    def __post_init__(self):
        if len(self.levels) != len(self.graph.triples):
            raise ValueError("levels must align one-to-one with triples")


def build_graph(triples) -> KnowledgeGraph:
    """Build a KnowledgeGraph from an ordered iterable of triples.

    Accepts Triple instances or (head, relation, tail) string tuples.
    Raises EmptyGraph on an empty input, MalformedTriple on an empty field
    and DuplicateTriple (with the offending index) on an exact repeat.
    """
    items: list[Triple] = []
    seen: set[tuple[str, str, str]] = set()
    for index, raw in enumerate(triples):
        t = raw if isinstance(raw, Triple) else Triple(*raw)
        key = (t.head, t.relation, t.tail)
        if key in seen:
            raise DuplicateTriple(index, f"duplicate triple at index {index}: {key}")
        seen.add(key)
        items.append(t)
    if not items:
        raise EmptyGraph("cannot build a graph from an empty triple list")
    return KnowledgeGraph(tuple(items))


def find_roots(graph: KnowledgeGraph) -> set[str]:
    """Entities with zero in-degree, plus one fallback root per weakly
    connected component that has none (fully cyclic components).

    The fallback is the component's node with maximum out-degree, ties
    broken by lexicographically smallest label, so the choice is
    deterministic and favours hub nodes.
    """
    tails = {t.tail for t in graph.triples}
    roots = {e for e in graph.entities if e not in tails}

    # Union-find over the undirected skeleton to locate rootless components.
    parent = {e: e for e in graph.entities}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in graph.triples:
        a, b = find(t.head), find(t.tail)
        if a != b:
            parent[a] = b

    rooted = {find(r) for r in roots}
    out_degree: dict[str, int] = {}
    for t in graph.triples:
        out_degree[t.head] = out_degree.get(t.head, 0) + 1

    fallback: dict[str, str] = {}
    for e in sorted(graph.entities):
        comp = find(e)
        if comp in rooted:
            continue
        deg = out_degree.get(e, 0)
        best = fallback.get(comp)
        if best is None or deg > out_degree.get(best, 0):
            fallback[comp] = e
    roots.update(fallback.values())
    return roots


def assign_levels(graph: KnowledgeGraph) -> LeveledGraph:
    """Assign each triple the BFS distance of its tail from the root set.

    Distances are computed by breadth-first search from all roots at once
    (d(root) = 0), so each node gets its first-visit depth and a back edge
    gets the smaller depth of its tail.  Degenerate cases keep levels >= 1:
    a tail that is itself a (fallback) root is clamped to 1, an unreachable
    tail takes d(head) + 1 when the head is reachable and 1 otherwise.
    """
    roots = find_roots(graph)
    succ: dict[str, list[str]] = {}
    for t in graph.triples:
        succ.setdefault(t.head, []).append(t.tail)

    dist: dict[str, int] = {r: 0 for r in roots}
    queue = deque(roots)
    while queue:
        node = queue.popleft()
        d = dist[node] + 1
        for nxt in succ.get(node, ()):
            if nxt not in dist:
                dist[nxt] = d
                queue.append(nxt)

    levels = []
    for t in graph.triples:
        if t.tail in dist:
            levels.append(max(1, dist[t.tail]))
        elif t.head in dist:
            levels.append(dist[t.head] + 1)
        else:
            levels.append(1)
    return LeveledGraph(graph, tuple(levels), frozenset(roots))
