"""Trainer bridge: graph-masking pre-training, G2T fine-tuning, generation.

The bridge is a pure consumer/producer across the kgtext file interfaces:
it reads masking corpora and canonical dataset files, obtains linearised
inputs by invoking the `kgtext levelize` subcommand, and writes plain-text
hypothesis files the `kgtext score` subcommand can evaluate.  It never
imports kgtext as a library and never mutates files it did not create.

A TrainManifest fully determines a run; every output directory gets a
run_manifest.json recording it alongside the per-step loss log.
"""

from __future__ import annotations

import json
import subprocess
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import torch
from torch import nn

from .errors import CorpusFormatError, DecodeError, KgTrainerError, MissingReferences, SentinelRemapError
from .model import SIZES, Seq2SeqTransformer
from .vocab import SPECIALS, Vocab

SENTINELS = ("<X>", "<Y>", "<Z>")
DEFAULT_SENTINEL_MAP = {"<X>": "<mask_0>", "<Y>": "<mask_1>", "<Z>": "<stop>"}


@dataclass(frozen=True)
class TrainManifest:
    """Everything that determines a run.  Learning rate and batch size
    default to the reference setup (Adam, 3e-5, batch 3); desk-scale runs
    usually override them, and the values used are always recorded."""

    model_size: str = "tiny"
    sentinel_map: dict = field(default_factory=lambda: dict(DEFAULT_SENTINEL_MAP))
    learning_rate: float = 3e-5
    batch_size: int = 3
    steps: int = 200
    seed: int = 0
    level_markers: bool = True
    dropout: float = 0.1
    max_source_len: int = 160
    max_target_len: int = 64
    vocab_files: tuple = ()

    def __post_init__(self):
        if self.model_size not in SIZES:
            raise ValueError(f"unknown model size {self.model_size!r}")
        if set(self.sentinel_map) != set(SENTINELS):
            raise SentinelRemapError(
                f"sentinel map must cover exactly {SENTINELS}, got {sorted(self.sentinel_map)}"
            )
        values = list(self.sentinel_map.values())
        if len(set(values)) != len(values):
            raise SentinelRemapError(f"sentinel map is not a bijection: {self.sentinel_map}")
        if set(values) & set(SPECIALS):
            raise SentinelRemapError("sentinel targets collide with vocabulary specials")


def remap_sentinels(text: str, mapping: dict) -> str:
    """Token-level sentinel replacement (tokens equal to a sentinel only)."""
    return " ".join(mapping.get(tok, tok) for tok in text.split())


def read_corpus(path) -> list[tuple[str, str, str]]:
    """(input, target, id) rows from a kgtext masking corpus file."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                rows.append((record["input"], record["target"], record["id"]))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise CorpusFormatError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise CorpusFormatError(f"{path}: corpus file is empty")
    return rows


def read_canonical(path) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise CorpusFormatError(f"{path}: dataset file is empty")
    return rows


def levelize(dataset_path, out_path, level_markers: bool = True) -> list[str]:
    """Linearise a canonical dataset through the kgtext CLI."""
    argv = [sys.executable, "-m", "kgtext", "levelize",
            "--in", str(dataset_path), "--out", str(out_path), "--force"]
    if not level_markers:
        argv.append("--no-level-markers")
    result = subprocess.run(argv, capture_output=True, text=True)
    if result.returncode != 0:
        raise KgTrainerError(f"kgtext levelize failed: {result.stderr.strip()}")
    return Path(out_path).read_text(encoding="utf-8").splitlines()


# ------------------------------------------------------------- training

def _encode_pairs(pairs, vocab: Vocab, manifest: TrainManifest):
    encoded = []
    for source, target in pairs:
        src = vocab.encode(source)[: manifest.max_source_len]
        tgt = vocab.encode(target)[: manifest.max_target_len]
        encoded.append((src, tgt))
    return encoded


def _batches(encoded, batch_size: int, pad_id: int, bos_id: int, eos_id: int):
    """Fixed-order batches, padded per batch."""
    batches = []
    for start in range(0, len(encoded), batch_size):
        chunk = encoded[start : start + batch_size]
        src_width = max(len(s) for s, _ in chunk)
        tgt_width = max(len(t) for _, t in chunk) + 1  # room for BOS/EOS
        src = torch.full((len(chunk), src_width), pad_id, dtype=torch.long)
        tgt_in = torch.full((len(chunk), tgt_width), pad_id, dtype=torch.long)
        tgt_out = torch.full((len(chunk), tgt_width), pad_id, dtype=torch.long)
        for row, (s, t) in enumerate(chunk):
            src[row, : len(s)] = torch.tensor(s, dtype=torch.long)
            tgt_in[row, 0] = bos_id
            tgt_in[row, 1 : len(t) + 1] = torch.tensor(t, dtype=torch.long)
            tgt_out[row, : len(t)] = torch.tensor(t, dtype=torch.long)
            tgt_out[row, len(t)] = eos_id
        batches.append((src, tgt_in, tgt_out))
    return batches


def _train(model: Seq2SeqTransformer, vocab: Vocab, pairs, manifest: TrainManifest,
           log_path) -> list[float]:
    encoded = _encode_pairs(pairs, vocab, manifest)
    batches = _batches(encoded, manifest.batch_size, vocab.pad_id, vocab.bos_id, vocab.eos_id)
    optimizer = torch.optim.Adam(model.parameters(), lr=manifest.learning_rate)
    criterion = nn.CrossEntropyLoss(ignore_index=vocab.pad_id)
    model.train()
    losses = []
    with open(log_path, "w", encoding="utf-8", newline="\n") as log:
        for step in range(manifest.steps):
            src, tgt_in, tgt_out = batches[step % len(batches)]
            logits = model(src, tgt_in)
            loss = criterion(logits.reshape(-1, logits.size(-1)), tgt_out.reshape(-1))
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            value = float(loss.detach())
            losses.append(value)
            log.write(json.dumps({"step": step + 1, "loss": value}) + "\n")
    return losses


def _save_checkpoint(path, model: Seq2SeqTransformer, vocab: Vocab,
                     manifest: TrainManifest, kind: str, final_loss: float) -> None:
    torch.save({
        "kind": kind,
        "model_state": model.state_dict(),
        "vocab_tokens": vocab.tokens,
        "model_size": model.size,
        "max_len": model.max_len,
        "manifest": _manifest_dict(manifest),
        "final_loss": final_loss,
    }, path)


def _manifest_dict(manifest: TrainManifest) -> dict:
    payload = asdict(manifest)
    payload["vocab_files"] = [str(p) for p in manifest.vocab_files]
    return payload


def load_checkpoint(path) -> tuple[Seq2SeqTransformer, Vocab, dict]:
    payload = torch.load(path, map_location="cpu", weights_only=True)
    vocab = Vocab(payload["vocab_tokens"])
    model = Seq2SeqTransformer(
        len(vocab), size=payload["model_size"], max_len=payload["max_len"],
        dropout=payload["manifest"]["dropout"], pad_id=vocab.pad_id,
    )
    model.load_state_dict(payload["model_state"])
    return model, vocab, payload


def _grow_embeddings(model: Seq2SeqTransformer, new_size: int, seed: int) -> None:
    """Deterministically append embedding rows for new vocab entries,
    preserving the tied output projection."""
    old = model.token_embedding.weight.data
    if new_size == old.size(0):
        return
    generator = torch.Generator().manual_seed(seed)
    extra = torch.randn(new_size - old.size(0), old.size(1), generator=generator) * 0.02
    embedding = nn.Embedding(new_size, old.size(1), padding_idx=model.pad_id)
    embedding.weight.data = torch.cat([old, extra])
    model.token_embedding = embedding

    out = nn.Linear(old.size(1), new_size)
    out.weight = embedding.weight
    out.bias.data = torch.cat([
        model.out.bias.data, torch.zeros(new_size - old.size(0)),
    ])
    model.out = out


def _extra_vocab_texts(manifest: TrainManifest) -> list[str]:
    texts = []
    for path in manifest.vocab_files:
        texts.append(Path(path).read_text(encoding="utf-8"))
    return texts


def _write_run_manifest(out_dir: Path, manifest: TrainManifest, info: dict) -> None:
    payload = {"manifest": _manifest_dict(manifest), **info}
    with open(out_dir / "run_manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(payload, indent=2) + "\n")


def pretrain(corpus_path, manifest: TrainManifest, out_dir) -> Path:
    """Sequence-to-sequence cross-entropy on (input -> target) corpus pairs
    after sentinel remapping.  Returns the checkpoint path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = read_corpus(corpus_path)
    pairs = [
        (remap_sentinels(source, manifest.sentinel_map),
         remap_sentinels(target, manifest.sentinel_map))
        for source, target, _ in rows
    ]
    torch.manual_seed(manifest.seed)
    vocab = Vocab.build(
        (text for pair in pairs for text in pair),
        extra_tokens=list(manifest.sentinel_map.values()),
    )
    vocab.extend(_extra_vocab_texts(manifest))
    model = Seq2SeqTransformer(
        len(vocab), size=manifest.model_size, dropout=manifest.dropout, pad_id=vocab.pad_id,
    )
    losses = _train(model, vocab, pairs, manifest, out_dir / "pretrain_loss.jsonl")
    checkpoint = out_dir / "pretrain.pt"
    _save_checkpoint(checkpoint, model, vocab, manifest, "pretrain", losses[-1])
    _write_run_manifest(out_dir, manifest, {
        "stage": "pretrain",
        "corpus": str(corpus_path),
        "examples": len(pairs),
        "final_loss": losses[-1],
    })
    return checkpoint


def finetune(dataset_path, checkpoint_path, manifest: TrainManifest, out_dir) -> Path:
    """Cross-entropy on (linearised graph -> first reference) pairs, starting
    from a pretrain checkpoint or from scratch (checkpoint_path=None).
    The level-marker-off ablation arm is selected via the manifest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sources = levelize(dataset_path, out_dir / "inputs.txt", manifest.level_markers)
    entries = read_canonical(dataset_path)
    pairs = []
    for entry, source in zip(entries, sources):
        refs = entry.get("refs") or []
        if not refs:
            raise MissingReferences(f"entry {entry.get('id')!r} has no reference text")
        pairs.append((source, refs[0]))

    torch.manual_seed(manifest.seed)
    if checkpoint_path is None:
        vocab = Vocab.build((text for pair in pairs for text in pair),
                            extra_tokens=list(manifest.sentinel_map.values()))
        vocab.extend(_extra_vocab_texts(manifest))
        model = Seq2SeqTransformer(
            len(vocab), size=manifest.model_size, dropout=manifest.dropout, pad_id=vocab.pad_id,
        )
        start = "scratch"
    else:
        model, vocab, _ = load_checkpoint(checkpoint_path)
        vocab.extend(text for pair in pairs for text in pair)
        _grow_embeddings(model, len(vocab), manifest.seed)
        start = str(checkpoint_path)

    losses = _train(model, vocab, pairs, manifest, out_dir / "finetune_loss.jsonl")
    checkpoint = out_dir / "finetune.pt"
    _save_checkpoint(checkpoint, model, vocab, manifest, "finetune", losses[-1])
    _write_run_manifest(out_dir, manifest, {
        "stage": "finetune",
        "dataset": str(dataset_path),
        "initialised_from": start,
        "examples": len(pairs),
        "ablation_level_markers_off": not manifest.level_markers,
        "final_loss": losses[-1],
    })
    return checkpoint


def generate(checkpoint_path, graphs_path, out_path, batch_size: int = 16) -> Path:
    """Greedy-decode one hypothesis line per input graph, in input order.
    The output file is directly consumable by `kgtext score --hyp`."""
    model, vocab, payload = load_checkpoint(checkpoint_path)
    manifest = TrainManifest(**{
        key: tuple(value) if key == "vocab_files" else value
        for key, value in payload["manifest"].items()
    })
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    sources = levelize(graphs_path, out_path.with_suffix(".inputs.txt"), manifest.level_markers)
    if not sources:
        raise DecodeError(f"no graphs to decode in {graphs_path}")
    lines = []
    for start in range(0, len(sources), batch_size):
        chunk = sources[start : start + batch_size]
        encoded = [vocab.encode(s)[: manifest.max_source_len] for s in chunk]
        width = max(len(e) for e in encoded)
        src = torch.full((len(chunk), width), vocab.pad_id, dtype=torch.long)
        for row, ids in enumerate(encoded):
            src[row, : len(ids)] = torch.tensor(ids, dtype=torch.long)
        for ids in model.greedy_decode(src, vocab.bos_id, vocab.eos_id,
                                       max_new_tokens=manifest.max_target_len):
            lines.append(vocab.decode(ids))
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")
    return out_path


def window_means(losses, window: int = 10) -> list[float]:
    """Means of consecutive full windows (used for monotonicity checks)."""
    return [
        sum(losses[start : start + window]) / window
        for start in range(0, len(losses) - window + 1, window)
    ]
