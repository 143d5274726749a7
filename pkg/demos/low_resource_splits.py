"""Walkthrough: low-resource split plans and pre-training fractions.

Run:  python demos/low_resource_splits.py
"""

from kgtext import Dataset, DatasetEntry, SplitPlan, build_graph, sample_fraction, split_low_resource

# A synthetic train split; ids are all that matters for selection.
entries = tuple(
    DatasetEntry(
        graph=build_graph([(f"Head {i}", "relation", f"Tail {i}")]),
        references=(f"Sentence {i}.",),
        split="train",
        entry_id=f"train-{i:04d}",
    )
    for i in range(2000)
)
dataset = Dataset(entries, name="synthetic")

# k% of train for fine-tuning; the pre-training side is either the same
# subset, its complement, or everything.
for mode in ("same", "complement", "full"):
    plan = SplitPlan(k_percent=5, mode=mode, seed=11)
    pretrain, finetune, _ = split_low_resource(dataset, plan)
    overlap = len(set(pretrain) & set(finetune))
    print(f"mode={mode:10s} finetune={len(finetune):5d} pretrain={len(pretrain):5d} overlap={overlap}")

# Selections are prefixes of one seeded permutation, so subsets nest as k
# grows, keeping trend comparisons across k coherent.
previous = set()
for k in (5, 10, 25):
    _, finetune, _ = split_low_resource(dataset, SplitPlan(k_percent=k, seed=11))
    nested = previous <= set(finetune)
    print(f"k={k:2d}% -> {len(finetune):4d} ids, contains the smaller selection: {nested}")
    previous = set(finetune)

# Fraction sampling for the pre-training data-size analysis.
for fraction in (0.05, 0.25, 1.0):
    subset, manifest = sample_fraction(dataset, fraction, seed=11)
    print(f"fraction={fraction:4.2f} -> {manifest['count']:4d} ids")
