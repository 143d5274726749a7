"""Experiment-design machinery: low-resource splits and fraction sampling.

All selections are prefixes of a single seeded permutation of the train
entry ids, so for a fixed seed the k=5% subset is contained in the k=10%
subset is contained in the k=25% subset, and every selection is
reproducible from (dataset, plan) alone.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import EmptySelection
from .ingest import Dataset
from .rng import SplitMix64

MODES = ("same", "complement", "full")


@dataclass(frozen=True)
class SplitPlan:
    """k_percent of train data for fine-tuning; `mode` picks the
    pre-training side: the same subset, its complement, or all of train."""

    k_percent: float
    mode: str = "same"
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.k_percent <= 100:
            raise ValueError(f"k_percent must be in (0, 100], got {self.k_percent}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


def _train_ids(dataset: Dataset) -> list[str]:
    return [e.entry_id for e in dataset.entries if e.split == "train"]


def _permuted_prefix(ids: list[str], count: int, seed: int) -> list[str]:
    permutation = list(ids)
    SplitMix64(seed).shuffle(permutation)
    return permutation[:count]


def _stratified_prefix(dataset: Dataset, count: int, seed: int) -> list[str]:
    """Per-category permutation prefixes; category quotas are proportional,
    rounded by largest remainder so they sum exactly to `count`.  Nesting
    across k values is not guaranteed in this mode."""
    groups: dict[str, list[str]] = {}
    for e in dataset.entries:
        if e.split == "train":
            groups.setdefault(e.category or "", []).append(e.entry_id)
    total = sum(len(g) for g in groups.values())
    quotas = {c: count * len(g) / total for c, g in groups.items()}
    floors = {c: math.floor(q) for c, q in quotas.items()}
    leftover = count - sum(floors.values())
    by_remainder = sorted(groups, key=lambda c: (-(quotas[c] - floors[c]), c))
    for c in by_remainder[:leftover]:
        floors[c] += 1
    picked: list[str] = []
    rng = SplitMix64(seed)
    for c in sorted(groups):
        g = list(groups[c])
        rng.shuffle(g)
        picked.extend(g[: floors[c]])
    return picked


def split_low_resource(dataset: Dataset, plan: SplitPlan,
                       stratify_by_category: bool = False) -> tuple[list[str], list[str], dict]:
    """Select fine-tuning and pre-training id sets for a low-resource run.

    finetune_ids is a uniform floor(k/100 * |train|) sample without
    replacement; pretrain_ids follows plan.mode (same subset, the
    complement, or all of train).  Returns (pretrain_ids, finetune_ids,
    manifest); the manifest carries the plan and both id lists sorted, in a
    stable field order.
    """
    train = _train_ids(dataset)
    count = math.floor(plan.k_percent / 100 * len(train))
    if count == 0:
        raise EmptySelection(
            f"k={plan.k_percent}% of {len(train)} train entries selects nothing"
        )
    if stratify_by_category:
        finetune = _stratified_prefix(dataset, count, plan.seed)
    else:
        finetune = _permuted_prefix(train, count, plan.seed)

    if plan.mode == "same":
        pretrain = list(finetune)
    elif plan.mode == "complement":
        chosen = set(finetune)
        pretrain = [i for i in train if i not in chosen]
    else:  # full
        pretrain = list(train)

    manifest = {
        "k_percent": plan.k_percent,
        "mode": plan.mode,
        "seed": plan.seed,
        "stratify_by_category": stratify_by_category,
        "finetune_count": len(finetune),
        "pretrain_count": len(pretrain),
        "finetune_ids": sorted(finetune),
        "pretrain_ids": sorted(pretrain),
    }
    return pretrain, finetune, manifest


def sample_fraction(dataset: Dataset, fraction: float, seed: int) -> tuple[list[str], dict]:
    """Uniform floor(fraction * |train|) sample of train ids, deterministic
    in `seed`; fraction=1 returns the full train id list in dataset order."""
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    train = _train_ids(dataset)
    if fraction == 1:
        subset = list(train)
    else:
        count = math.floor(fraction * len(train))
        if count == 0:
            raise EmptySelection(f"fraction={fraction} of {len(train)} train entries selects nothing")
        subset = _permuted_prefix(train, count, seed)
    manifest = {
        "fraction": fraction,
        "seed": seed,
        "count": len(subset),
        "ids": sorted(subset),
    }
    return subset, manifest


def write_manifest(manifest: dict, path) -> None:
    """Write a selection manifest as pretty JSON, UTF-8 with LF endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(manifest, indent=2) + "\n")
