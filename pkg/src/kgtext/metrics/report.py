"""Combined score report: BLEU + TER + external pass-through values.

METEOR and BERTScore need linguistic resources / embedding models and are
not computed here; externally computed values can be attached and are
echoed untouched under "external.<name>" keys.  The report file is flat
"key = value" text with fixed key names, and pins the metric configuration
so scores stay comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import EmptyReference
from .bleu import BleuResult, bleu_corpus, sentence_bleu
from .ter import TerResult, segment_edits, ter_corpus


@dataclass(frozen=True)
class SegmentPair:
    hypothesis: str
    references: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "references", tuple(self.references))
        if not self.references:
            raise EmptyReference("a segment pair needs at least one reference")


@dataclass(frozen=True)
class MetricConfig:
    """One pinned configuration shared by both scorers."""

    tokenizer: str = "international"
    lowercase: bool = False
    max_order: int = 4
    smooth_eps: float = 0.0  # segment-level diagnostics only
    max_shift_iterations: int = 50
    max_shift_size: int = 10

    def smoothing_label(self) -> str:
        return "none" if self.smooth_eps == 0 else f"epsilon:{self.smooth_eps}"


@dataclass(frozen=True)
class SegmentDiagnostic:
    bleu: float  # epsilon-smoothed sentence BLEU
    ter: float
    edits: int
    ref_len: int


@dataclass(frozen=True)
class ScoreReport:
    bleu: BleuResult
    ter: TerResult
    config: MetricConfig
    external: dict[str, object] = field(default_factory=dict)
    segments: tuple[SegmentDiagnostic, ...] = ()

    def to_text(self) -> str:
        lines = [
            f"bleu = {self.bleu.score:.2f}",
            f"bleu_p1 = {self.bleu.precisions[0]:.4f}",
            f"bleu_p2 = {self.bleu.precisions[1]:.4f}",
            f"bleu_p3 = {self.bleu.precisions[2]:.4f}",
            f"bleu_p4 = {self.bleu.precisions[3]:.4f}",
            f"bleu_bp = {self.bleu.brevity_penalty:.4f}",
            f"ter = {self.ter.score:.4f}",
            f"ter_edits = {self.ter.total_edits}",
            f"ter_ref_len = {self.ter.ref_len}",
            f"config.tokenizer = {self.config.tokenizer}",
            f"config.lowercase = {str(self.config.lowercase).lower()}",
            f"config.smoothing = {self.config.smoothing_label()}",
        ]
        for key in sorted(self.external):
            lines.append(f"external.{key} = {self.external[key]}")
        return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict[str, str]:
    """Inverse of ScoreReport.to_text (values stay strings)."""
    values: dict[str, str] = {}
    for line in text.splitlines():
        if " = " in line:
            key, _, value = line.partition(" = ")
            values[key] = value
    return values


def score_report(pairs, config: MetricConfig = MetricConfig(), external_values=None,
                 include_segments: bool = False) -> ScoreReport:
    """Bundle corpus BLEU and TER over the same pairs, plus pass-through
    external metric values; optionally attach per-segment diagnostics."""
    pairs = list(pairs)
    bleu = bleu_corpus(pairs, config)
    ter = ter_corpus(pairs, config)
    segments: tuple[SegmentDiagnostic, ...] = ()
    if include_segments:
        diag_config = config if config.smooth_eps > 0 else MetricConfig(
            tokenizer=config.tokenizer, lowercase=config.lowercase,
            max_order=config.max_order, smooth_eps=0.1,
            max_shift_iterations=config.max_shift_iterations,
            max_shift_size=config.max_shift_size,
        )
        collected = []
        for pair in pairs:
            edits, ref_len = segment_edits(pair.hypothesis, pair.references, config)
            collected.append(SegmentDiagnostic(
                bleu=sentence_bleu(pair.hypothesis, pair.references, diag_config).score,
                ter=edits / ref_len,
                edits=edits,
                ref_len=ref_len,
            ))
        segments = tuple(collected)
    return ScoreReport(bleu, ter, config, dict(external_values or {}), segments)
