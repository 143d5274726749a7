import json
import random

import pytest

from kgtext import (
    MaskPolicy,
    assign_levels,
    build_corpus,
    build_graph,
    linearize,
    mask_relation,
    mask_triple,
    mask_triple_relation,
    reconstruct,
)
from kgtext.errors import AllEntriesSkipped, GraphTooSmall, SentinelMismatch
from kgtext.ingest import Dataset, DatasetEntry
from kgtext.mask import MaskedExample

from oracles import random_graph_triples

SINGLE_MASK = MaskPolicy(per_level=False)

TABLE1_TRIPLE_INPUT = (
    "[<X>, 1], "
    "[S | New York City, P | country, O | United States, 2], "
    "[S | New York City, P | is Part Of, O | Manhattan, 2], "
    "[S | Manhattan, P | leader Name, O | Cyrus Vance Jr., 3], "
    "[S | Manhattan, P | is Part Of, O | New York, 3]"
)
TABLE1_TRIPLE_TARGET = "<X> [S | Asser Levy Public Baths, P | location, O | New York City] <Z>"

TABLE1_RELATION_INPUT = (
    "[S | Asser Levy Public Baths, P | location, O | New York City, 1], "
    "[S | New York City, <Y>, O | United States, 2], "
    "[S | New York City, P | is Part Of, O | Manhattan, 2], "
    "[S | Manhattan, P | leader Name, O | Cyrus Vance Jr., 3], "
    "[S | Manhattan, P | is Part Of, O | New York, 3]"
)
TABLE1_RELATION_TARGET = "<Y> P | country <Z>"

TABLE1_COMBINED_INPUT = (
    "[<X>, 1], "
    "[S | New York City, P | country, O | United States, 2], "
    "[S | New York City, P | is Part Of, O | Manhattan, 2], "
    "[S | Manhattan, <Y>, O | Cyrus Vance Jr., 3], "
    "[S | Manhattan, P | is Part Of, O | New York, 3]"
)
TABLE1_COMBINED_TARGET = (
    "<X> [S | Asser Levy Public Baths, P | location, O | New York City] "
    "<Y> P | leader Name <Z>"
)


def force_seed(predicate, limit=10_000):
    """Smallest seed whose masking outcome satisfies `predicate`."""
    for seed in range(limit):
        if predicate(seed):
            return seed
    raise AssertionError("no forcing seed found")


def test_triple_strategy_golden(figure1_graph):
    lg = assign_levels(figure1_graph)
    seed = force_seed(lambda s: mask_triple(lg, SINGLE_MASK, s).input_text.startswith("[<X>, 1]"))
    example = mask_triple(lg, SINGLE_MASK, seed)
    assert example.input_text == TABLE1_TRIPLE_INPUT
    assert example.target_text == TABLE1_TRIPLE_TARGET


def test_relation_strategy_golden(figure1_graph):
    lg = assign_levels(figure1_graph)
    seed = force_seed(lambda s: "<Y>" in mask_relation(lg, SINGLE_MASK, s).input_text.split(", ")[5])
    example = mask_relation(lg, SINGLE_MASK, seed)
    assert example.input_text == TABLE1_RELATION_INPUT
    assert example.target_text == TABLE1_RELATION_TARGET


def test_combined_strategy_golden(figure1_graph):
    lg = assign_levels(figure1_graph)

    def is_table1(seed):
        example = mask_triple_relation(lg, SINGLE_MASK, seed)
        return example.input_text == TABLE1_COMBINED_INPUT

    example = mask_triple_relation(lg, SINGLE_MASK, force_seed(is_table1))
    assert example.target_text == TABLE1_COMBINED_TARGET


def test_per_level_chain_masks_every_level():
    lg = assign_levels(build_graph([("A", "r", "B"), ("B", "s", "C")]))
    example = mask_triple(lg, MaskPolicy(per_level=True), seed=7)
    assert example.input_text == "[<X>, 1], [<X>, 2]"
    assert example.target_text == "<X> [S | A, P | r, O | B] <X> [S | B, P | s, O | C] <Z>"


def test_relation_single_triple_min_one():
    lg = assign_levels(build_graph([("A", "r", "B")]))
    example = mask_relation(lg, MaskPolicy(min_triples=1), seed=3)
    assert example.input_text == "[S | A, <Y>, O | B, 1]"
    assert example.target_text == "<Y> P | r <Z>"


def test_combined_no_eligible_triple():
    lg = assign_levels(build_graph([("A", "r", "B"), ("B", "s", "C")]))
    for seed in range(20):
        example = mask_triple_relation(lg, SINGLE_MASK, seed)
        assert "<Y>" not in example.input_text
        assert example.target_text.startswith("<X> [S | ")
        assert example.target_text.endswith(" <Z>")


def test_graph_too_small():
    lg = assign_levels(build_graph([("A", "r", "B")]))
    with pytest.raises(GraphTooSmall):
        mask_triple(lg, MaskPolicy(), seed=0)
    with pytest.raises(GraphTooSmall):
        mask_triple_relation(lg, MaskPolicy(min_triples=1), seed=0)


@pytest.mark.parametrize("masker", [mask_triple, mask_relation, mask_triple_relation])
@pytest.mark.parametrize("per_level", [True, False])
def test_reconstruction_oracle(masker, per_level):
    rng = random.Random(101)
    policy = MaskPolicy(per_level=per_level)
    for i in range(500):
        lg = assign_levels(build_graph(random_graph_triples(rng, 2, 12)))
        example = masker(lg, policy, seed=rng.getrandbits(64))
        assert reconstruct(example) == linearize(lg)


def test_sentinel_arithmetic():
    rng = random.Random(55)
    for masker in (mask_triple, mask_relation, mask_triple_relation):
        for _ in range(100):
            lg = assign_levels(build_graph(random_graph_triples(rng, 2, 10)))
            example = masker(lg, MaskPolicy(), seed=rng.getrandbits(64))
            assert example.input_text.count("[<X>,") == example.target_text.count("<X> ")
            assert example.input_text.count("<Y>") == example.target_text.count("<Y> ")
            assert example.target_text.count("<Z>") == 1
            assert example.target_text.endswith("<Z>")


def test_combined_disjointness_exhaustive():
    rng = random.Random(999)
    for _ in range(500):
        triples = random_graph_triples(rng, 2, 12)
        lg = assign_levels(build_graph(triples))
        example = mask_triple_relation(lg, MaskPolicy(), seed=rng.getrandbits(64))
        from kgtext import parse_linearized

        units = parse_linearized(example.input_text)
        masked = [u for u in units if u.masked]
        assert len(masked) == 1
        level = masked[0].level
        order = sorted(range(len(triples)), key=lambda i: (lg.levels[i], i))
        x_index = next(
            i for pos, i in enumerate(order)
            if units[pos].masked
        )
        x_triple = lg.graph.triples[x_index]
        assert lg.levels[x_index] == level
        for pos, unit in enumerate(units):
            if unit.relation_masked:
                assert unit.head not in (x_triple.head, x_triple.tail)
                assert unit.tail not in (x_triple.head, x_triple.tail)


def test_uniform_choice_over_three_candidates():
    # one root with 3 children: a single level with exactly 3 candidates
    lg = assign_levels(build_graph([("R", "a", "B"), ("R", "b", "C"), ("R", "c", "D")]))
    counts = {0: 0, 1: 0, 2: 0}
    for seed in range(10_000):
        example = mask_triple(lg, MaskPolicy(per_level=True), seed)
        groups = example.input_text.split("], ")
        masked_index = next(i for i, g in enumerate(groups) if "<X>" in g)
        counts[masked_index] += 1
    for index in counts:
        assert abs(counts[index] / 10_000 - 1 / 3) <= 0.02, counts


def test_seed_recorded():
    lg = assign_levels(build_graph([("A", "r", "B"), ("B", "s", "C")]))
    example = mask_triple(lg, MaskPolicy(), seed=1234, entry_id="e1")
    assert example.seed == 1234
    assert example.entry_id == "e1"
    assert example.strategy == "triple"


def test_reconstruct_noop_on_unmasked():
    text = "[S | A, P | r, O | B, 1]"
    example = MaskedExample(text, "<Z>", "triple", "", 0)
    assert reconstruct(example) == text


def test_reconstruct_detects_missing_segment():
    lg = assign_levels(build_graph([("A", "r", "B"), ("B", "s", "C")]))
    example = mask_triple(lg, MaskPolicy(per_level=True), seed=7)
    corrupt = MaskedExample(
        example.input_text,
        "<X> [S | A, P | r, O | B] <Z>",  # second segment dropped
        example.strategy, example.entry_id, example.seed,
    )
    with pytest.raises(SentinelMismatch):
        reconstruct(corrupt)


def _toy_dataset(n=6):
    rng = random.Random(4)
    entries = []
    for i in range(n):
        triples = random_graph_triples(rng, 1 if i == 0 else 2, 6)
        entries.append(DatasetEntry(
            graph=build_graph(triples),
            references=(f"text {i}",),
            split="train",
            entry_id=f"e{i}",
        ))
    return Dataset(tuple(entries), name="toy")


def test_build_corpus_round(tmp_path):
    dataset = _toy_dataset()
    out = tmp_path / "corpus.jsonl"
    manifest = build_corpus(dataset, "triple", MaskPolicy(), 42, out)
    lines = out.read_text(encoding="utf-8").splitlines()
    assert manifest.emitted == len(lines)
    assert manifest.emitted + manifest.skipped == len(dataset)
    record = json.loads(lines[0])
    assert set(record) == {"input", "target", "id", "strategy", "seed"}
    assert record["strategy"] == "triple"
    assert isinstance(record["seed"], str)

    sidecar = json.loads((tmp_path / "corpus.jsonl.manifest.json").read_text())
    assert sidecar["global_seed"] == 42
    assert sidecar["emitted"] == manifest.emitted
    assert sidecar["skipped"] == manifest.skipped
    assert sidecar["policy"] == {"per_level": True, "min_triples": 2}


def test_build_corpus_skips_small_graphs(tmp_path):
    dataset = _toy_dataset()
    singletons = sum(1 for e in dataset.entries if len(e.graph) < 2)
    manifest = build_corpus(dataset, "triple", MaskPolicy(), 1, tmp_path / "c.jsonl")
    assert manifest.skipped == singletons


def test_build_corpus_deterministic(tmp_path):
    dataset = _toy_dataset()
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    build_corpus(dataset, "triple_relation", MaskPolicy(), 7, a)
    build_corpus(dataset, "triple_relation", MaskPolicy(), 7, b)
    assert a.read_bytes() == b.read_bytes()


def test_build_corpus_independent_of_jobs(tmp_path):
    dataset = _toy_dataset(12)
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    build_corpus(dataset, "relation", MaskPolicy(), 7, a, jobs=1)
    build_corpus(dataset, "relation", MaskPolicy(), 7, b, jobs=3)
    assert a.read_bytes() == b.read_bytes()


def test_build_corpus_all_skipped(tmp_path):
    entries = (DatasetEntry(
        graph=build_graph([("A", "r", "B")]),
        references=("t",), split="train", entry_id="only",
    ),)
    with pytest.raises(AllEntriesSkipped):
        build_corpus(Dataset(entries), "triple", MaskPolicy(), 0, tmp_path / "c.jsonl")
    assert not (tmp_path / "c.jsonl").exists()


def test_build_corpus_empty_dataset(tmp_path):
    with pytest.raises(AllEntriesSkipped):
        build_corpus(Dataset(()), "triple", MaskPolicy(), 0, tmp_path / "c.jsonl")
