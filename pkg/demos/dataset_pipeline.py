"""Walkthrough: WebNLG XML -> canonical format -> masking corpus.

Uses the small WebNLG-shaped fixture checked into tests/data; point
`source` at a real release directory to run the same pipeline at scale.

Run:  python demos/dataset_pipeline.py
"""

import json
import tempfile
from pathlib import Path

from kgtext import (
    MaskPolicy,
    build_corpus,
    dataset_stats,
    load_canonical,
    load_webnlg_xml,
    write_canonical,
)

source = Path(__file__).parent.parent / "tests" / "data" / "webnlg" / "train"
dataset = load_webnlg_xml(source, split="train")
print(f"loaded {len(dataset)} entries from {source.name}/")

report = dataset_stats(dataset)
print("split sizes:", report.split_sizes)
print("triple-count histogram:", dict(sorted(report.triple_histogram.items())))
print("distinct relations:", report.distinct_relations,
      "| distinct entities:", report.distinct_entities,
      "| max level:", report.max_level)

workdir = Path(tempfile.mkdtemp(prefix="kgtext_demo_"))

# The canonical line format is the integration contract; the round trip is
# exact, so external datasets converted into it behave identically.
canon = workdir / "train.canon"
write_canonical(dataset, canon)
assert load_canonical(canon) == dataset
print("\ncanonical round trip: exact")
print("first record:", canon.read_text(encoding="utf-8").splitlines()[0][:100], "...")

# Build a pre-training corpus with the triple strategy.  Entries below the
# policy's min_triples are skipped and counted in the manifest.
corpus = workdir / "triple_corpus.jsonl"
manifest = build_corpus(dataset, "triple", MaskPolicy(), global_seed=42, out_path=corpus)
print(f"\ncorpus: {manifest.emitted} examples emitted, {manifest.skipped} skipped")
record = json.loads(corpus.read_text(encoding="utf-8").splitlines()[0])
print("input :", record["input"][:90], "...")
print("target:", record["target"][:90], "...")
print("\nfiles under", workdir)
