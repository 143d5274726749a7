"""Walkthrough: the three graph-masking pre-training strategies.

Each strategy corrupts the linearised graph and asks a model to predict
the masked content.  Corruption is lossless: input + target always
reconstruct the original linearisation.

Run:  python demos/masking_strategies.py
"""

from kgtext import (
    MaskPolicy,
    assign_levels,
    build_graph,
    linearize,
    mask_relation,
    mask_triple,
    mask_triple_relation,
    reconstruct,
)

graph = build_graph([
    ("Asser Levy Public Baths", "location", "New York City"),
    ("New York City", "country", "United States"),
    ("New York City", "is Part Of", "Manhattan"),
    ("Manhattan", "leader Name", "Cyrus Vance Jr."),
    ("Manhattan", "is Part Of", "New York"),
])
leveled = assign_levels(graph)
print("unmasked:", linearize(leveled), "\n")

# per_level=False masks a single element in the whole graph, which is the
# easiest variant to eyeball; the default policy masks once on every level.
single = MaskPolicy(per_level=False)

for name, masker in (
    ("triple prediction", mask_triple),
    ("relation prediction", mask_relation),
    ("triple + relation prediction", mask_triple_relation),
):
    example = masker(leveled, single, seed=3)
    print(f"--- {name} ---")
    print("input :", example.input_text)
    print("target:", example.target_text)
    assert reconstruct(example) == linearize(leveled)
    print("reconstructs losslessly: yes\n")

# The default per-level policy masks one candidate on each level, so deeper
# graphs produce several <X> placeholders at once.
example = mask_triple(leveled, MaskPolicy(per_level=True), seed=3)
print("--- per-level triple prediction ---")
print("input :", example.input_text)
print("target:", example.target_text)
