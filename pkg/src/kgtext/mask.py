"""Self-supervised graph-masking strategies over linearised graphs.

Three corruption strategies produce (input, target) pre-training pairs:

* ``triple``          - replace whole triples with "[<X>, level]"; the
                        target spells the masked triples out.
* ``relation``        - replace "P | relation" segments with "<Y>"; the
                        target spells the masked relations out.
* ``triple_relation`` - one whole-triple mask, plus relation masks limited
                        to triples sharing no entity with the masked one.

Targets list all <X> segments, then all <Y> segments, each group in input
order, and always end with the <Z> end token.  Corruption is lossless:
splicing the target back into the input recovers the unmasked
linearisation exactly (see :func:`reconstruct`).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from multiprocessing import Pool

from .errors import AllEntriesSkipped, GraphTooSmall, IoError, SentinelMismatch
from .graph import LeveledGraph, assign_levels
from .linearize import (
    END_SENTINEL,
    RELATION_SENTINEL,
    TRIPLE_SENTINEL,
    linearized_order,
    parse_linearized,
    render_triple,
)
from .rng import SplitMix64, derive_seed

STRATEGIES = ("triple", "relation", "triple_relation")


@dataclass(frozen=True)
class MaskPolicy:
    """per_level=True masks once on every level; False masks once per graph.
    Graphs with fewer than min_triples triples are skipped."""

    per_level: bool = True
    min_triples: int = 2

    def __post_init__(self):
        if self.min_triples < 1:
            raise ValueError("min_triples must be >= 1")


@dataclass(frozen=True)
class MaskedExample:
    input_text: str
    target_text: str
    strategy: str
    entry_id: str
    seed: int


def _ordered_view(lg: LeveledGraph) -> tuple[list, list[int]]:
    """Triples and levels in linearised (level, input index) order."""
    order = linearized_order(lg)
    triples = [lg.graph.triples[i] for i in order]
    levels = [lg.levels[i] for i in order]
    return triples, levels


def _pick_positions(rng: SplitMix64, levels: list[int], candidates: list[int], per_level: bool) -> list[int]:
    """Choose masked positions among `candidates` (linearised positions,
    ascending).  Per level: one uniform draw on each level that has any
    candidate, levels ascending; otherwise one draw over all candidates."""
    if not candidates:
        return []
    if not per_level:
        return [candidates[rng.randrange(len(candidates))]]
    picked = []
    by_level: dict[int, list[int]] = {}
    for pos in candidates:
        by_level.setdefault(levels[pos], []).append(pos)
    for level in sorted(by_level):
        group = by_level[level]
        picked.append(group[rng.randrange(len(group))])
    return picked


def _finish_target(segments: list[str]) -> str:
    return " ".join(segments + [END_SENTINEL])


def mask_triple(lg: LeveledGraph, policy: MaskPolicy = MaskPolicy(), seed: int = 0,
                entry_id: str = "") -> MaskedExample:
    """Whole-triple masking: masked groups become "[<X>, level]" and the
    target concatenates "<X> [S | h, P | r, O | t]" segments."""
    triples, levels = _ordered_view(lg)
    if len(triples) < policy.min_triples:
        raise GraphTooSmall(f"graph has {len(triples)} triples, policy needs {policy.min_triples}")
    rng = SplitMix64(seed)
    masked = set(_pick_positions(rng, levels, list(range(len(triples))), policy.per_level))

    parts, target = [], []
    for pos, (t, level) in enumerate(zip(triples, levels)):
        if pos in masked:
            parts.append(f"[{TRIPLE_SENTINEL}, {level}]")
            target.append(f"{TRIPLE_SENTINEL} {render_triple(t, None)}")
        else:
            parts.append(render_triple(t, level))
    return MaskedExample(", ".join(parts), _finish_target(target), "triple", entry_id, seed)


def mask_relation(lg: LeveledGraph, policy: MaskPolicy = MaskPolicy(), seed: int = 0,
                  entry_id: str = "") -> MaskedExample:
    """Relation masking: the "P | relation" segment of the chosen triples is
    replaced by "<Y>"; the target concatenates "<Y> P | relation" segments."""
    triples, levels = _ordered_view(lg)
    if len(triples) < policy.min_triples:
        raise GraphTooSmall(f"graph has {len(triples)} triples, policy needs {policy.min_triples}")
    rng = SplitMix64(seed)
    masked = set(_pick_positions(rng, levels, list(range(len(triples))), policy.per_level))

    parts, target = [], []
    for pos, (t, level) in enumerate(zip(triples, levels)):
        if pos in masked:
            parts.append(f"[S | {t.head}, {RELATION_SENTINEL}, O | {t.tail}, {level}]")
            target.append(f"{RELATION_SENTINEL} P | {t.relation}")
        else:
            parts.append(render_triple(t, level))
    return MaskedExample(", ".join(parts), _finish_target(target), "relation", entry_id, seed)


def mask_triple_relation(lg: LeveledGraph, policy: MaskPolicy = MaskPolicy(), seed: int = 0,
                         entry_id: str = "") -> MaskedExample:
    """Combined masking: exactly one whole-triple mask chosen over all
    triples, then relation masks among triples that share neither head nor
    tail with it (exact label equality).  With no eligible triple the
    target carries only the <X> segment."""
    triples, levels = _ordered_view(lg)
    if len(triples) < 2 or len(triples) < policy.min_triples:
        raise GraphTooSmall(f"graph has {len(triples)} triples, combined masking needs >= 2")
    rng = SplitMix64(seed)
    x_pos = rng.randrange(len(triples))
    blocked = {triples[x_pos].head, triples[x_pos].tail}
    eligible = [
        pos for pos, t in enumerate(triples)
        if t.head not in blocked and t.tail not in blocked
    ]
    y_masked = set(_pick_positions(rng, levels, eligible, policy.per_level))

    parts, x_target, y_target = [], [], []
    for pos, (t, level) in enumerate(zip(triples, levels)):
        if pos == x_pos:
            parts.append(f"[{TRIPLE_SENTINEL}, {level}]")
            x_target.append(f"{TRIPLE_SENTINEL} {render_triple(t, None)}")
        elif pos in y_masked:
            parts.append(f"[S | {t.head}, {RELATION_SENTINEL}, O | {t.tail}, {level}]")
            y_target.append(f"{RELATION_SENTINEL} P | {t.relation}")
        else:
            parts.append(render_triple(t, level))
    return MaskedExample(
        ", ".join(parts), _finish_target(x_target + y_target), "triple_relation", entry_id, seed
    )


_MASKERS = {
    "triple": mask_triple,
    "relation": mask_relation,
    "triple_relation": mask_triple_relation,
}

_TARGET_SPLIT = re.compile(r" (?=<[XY]> )")


def _target_segments(target_text: str) -> tuple[list[str], list[str]]:
    """Split a target into its <X> and <Y> segment payloads."""
    if target_text == END_SENTINEL:
        return [], []
    if not target_text.endswith(" " + END_SENTINEL):
        raise SentinelMismatch(f"target does not end with {END_SENTINEL}: {target_text!r}")
    body = target_text[: -len(END_SENTINEL) - 1]
    x_segments, y_segments = [], []
    for segment in _TARGET_SPLIT.split(body):
        if segment.startswith(TRIPLE_SENTINEL + " "):
            x_segments.append(segment[len(TRIPLE_SENTINEL) + 1 :])
        elif segment.startswith(RELATION_SENTINEL + " "):
            y_segments.append(segment[len(RELATION_SENTINEL) + 1 :])
        else:
            raise SentinelMismatch(f"target segment lacks a sentinel prefix: {segment!r}")
    return x_segments, y_segments


def reconstruct(example: MaskedExample) -> str:
    """Splice the target segments back into the corrupted input.

    For every emitted example this returns the unmasked linearisation of the
    source graph.  Raises SentinelMismatch when the sentinel counts of input
    and target disagree.
    """
    units = parse_linearized(example.input_text)
    x_segments, y_segments = _target_segments(example.target_text)
    n_x = sum(1 for u in units if u.masked)
    n_y = sum(1 for u in units if u.relation_masked)
    if n_x != len(x_segments) or n_y != len(y_segments):
        raise SentinelMismatch(
            f"input has {n_x} <X> / {n_y} <Y> slots but target has "
            f"{len(x_segments)} / {len(y_segments)} segments"
        )

    x_iter, y_iter = iter(x_segments), iter(y_segments)
    groups = []
    for unit in units:
        if unit.masked:
            segment = next(x_iter)  # "[S | h, P | r, O | t]"
            if unit.level is not None:
                segment = f"{segment[:-1]}, {unit.level}]"
            groups.append(segment)
        elif unit.relation_masked:
            relation_segment = next(y_iter)  # "P | r"
            level_part = f", {unit.level}" if unit.level is not None else ""
            groups.append(f"[S | {unit.head}, {relation_segment}, O | {unit.tail}{level_part}]")
        else:
            groups.append(render_triple(unit.to_triple(), unit.level))
    return ", ".join(groups)


@dataclass(frozen=True)
class CorpusManifest:
    strategy: str
    policy: MaskPolicy
    global_seed: int
    emitted: int
    skipped: int

    def to_json(self) -> str:
        payload = {
            "strategy": self.strategy,
            "policy": {"per_level": self.policy.per_level, "min_triples": self.policy.min_triples},
            "global_seed": self.global_seed,
            "emitted": self.emitted,
            "skipped": self.skipped,
        }
        return json.dumps(payload, indent=2) + "\n"


def _corpus_record(entry, strategy: str, policy: MaskPolicy, global_seed: int) -> dict | None:
    seed = derive_seed(global_seed, entry.entry_id)
    try:
        example = _MASKERS[strategy](assign_levels(entry.graph), policy, seed, entry.entry_id)
    except GraphTooSmall:
        return None
    return {
        "input": example.input_text,
        "target": example.target_text,
        "id": example.entry_id,
        "strategy": example.strategy,
        "seed": str(example.seed),
    }


def build_corpus(dataset, strategy: str, policy: MaskPolicy, global_seed: int,
                 out_path, jobs: int = 1) -> CorpusManifest:
    """Mask every eligible entry of `dataset` and write a corpus file.

    One record per line (fields input, target, id, strategy, seed), entries
    in dataset order, UTF-8 with LF endings; a manifest sidecar at
    "<out_path>.manifest.json" records strategy, policy, global_seed and the
    emitted/skipped counts.  Per-entry seeds come from
    rng.derive_seed(global_seed, entry_id), so output bytes do not depend
    on `jobs`.
    """
    if strategy not in _MASKERS:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    entries = list(dataset.entries)
    if jobs > 1 and len(entries) > 1:
        with Pool(jobs) as pool:
            records = pool.starmap(
                _corpus_record,
                ((e, strategy, policy, global_seed) for e in entries),
                chunksize=max(1, len(entries) // (jobs * 4)),
            )
    else:
        records = [_corpus_record(e, strategy, policy, global_seed) for e in entries]

    kept = [r for r in records if r is not None]
    skipped = len(records) - len(kept)
    if not kept:
        raise AllEntriesSkipped(f"no eligible entries (skipped {skipped})")

    manifest = CorpusManifest(strategy, policy, global_seed, len(kept), skipped)
    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            for record in kept:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        with open(f"{out_path}.manifest.json", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(manifest.to_json())
    except OSError as exc:
        raise IoError(f"cannot write corpus: {exc}") from exc
    return manifest
