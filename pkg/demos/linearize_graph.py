"""Walkthrough: from a triple list to structure-aware text and back.

Run:  python demos/linearize_graph.py
"""

from kgtext import (
    LinearizeOptions,
    assign_levels,
    build_graph,
    find_roots,
    linearize,
    parse_linearized,
    parsed_triples,
)

# A small knowledge graph about a public bathhouse in Manhattan.  Each
# triple is one directed edge: (head entity, relation, tail entity).
triples = [
    ("Asser Levy Public Baths", "location", "New York City"),
    ("New York City", "country", "United States"),
    ("New York City", "is Part Of", "Manhattan"),
    ("Manhattan", "leader Name", "Cyrus Vance Jr."),
    ("Manhattan", "is Part Of", "New York"),
]

graph = build_graph(triples)
print(f"graph: {len(graph)} triples over {len(graph.entities)} entities")

# The root is the node nothing points at; levels measure how far each
# triple's tail sits from it.
print("roots:", find_roots(graph))
leveled = assign_levels(graph)
for triple, level in zip(graph.triples, leveled.levels):
    print(f"  level {level}: ({triple.head}) -[{triple.relation}]-> ({triple.tail})")

# Linearisation renders one bracket group per triple with S|/P|/O| role
# prefixes and the level marker, ordered by level.
text = linearize(leveled)
print("\nstructure-aware input:")
print(" ", text)

# The ablation variant simply drops the trailing level markers.
print("\nwithout level markers:")
print(" ", linearize(leveled, LinearizeOptions(include_level_markers=False)))

# The format is fully parseable, which is what all round-trip checks use.
units = parse_linearized(text)
recovered, levels = parsed_triples(units)
print("\nparsed back:", len(recovered), "triples, levels", levels)
assert [u.to_triple() for u in units] == list(recovered)
