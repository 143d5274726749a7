"""Native corpus-level evaluation metrics: multi-reference BLEU and TER."""

from .bleu import BleuResult, bleu_corpus, sentence_bleu
from .report import MetricConfig, ScoreReport, SegmentPair, score_report
from .ter import TerResult, ter_corpus
from .tokenizers import tokenize

__all__ = [
    "BleuResult",
    "MetricConfig",
    "ScoreReport",
    "SegmentPair",
    "TerResult",
    "bleu_corpus",
    "score_report",
    "sentence_bleu",
    "ter_corpus",
    "tokenize",
]
