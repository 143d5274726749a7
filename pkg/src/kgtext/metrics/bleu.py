"""Corpus-level multi-reference BLEU-4.

Modified n-gram precisions are pooled over the corpus, clipping each
segment's n-gram counts against the maximum count over its references.
The brevity penalty uses the sum of per-segment closest-reference lengths
(ties going to the shorter reference).  No smoothing by default: any zero
pooled precision makes the corpus score 0.  An additive-epsilon option
exists for segment-level diagnostics only.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from ..errors import EmptyCorpus
from .tokenizers import tokenize


@dataclass(frozen=True)
class BleuResult:
    """Score on the 0-100 scale plus its sufficient statistics; precisions
    are percentages, so score == bp * exp(mean(log(p_n))) by construction."""

    score: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    sys_len: int
    ref_len: int
    correct: tuple[int, ...]
    total: tuple[int, ...]

    def rounded(self) -> float:
        return round(self.score, 2)


def _ngram_counts(tokens: list[str], max_order: int) -> Counter:
    counts: Counter = Counter()
    for n in range(1, max_order + 1):
        for i in range(len(tokens) - n + 1):
            counts[tuple(tokens[i : i + n])] += 1
    return counts


def _closest_ref_len(hyp_len: int, ref_lens: list[int]) -> int:
    return min(ref_lens, key=lambda rl: (abs(rl - hyp_len), rl))


def _compose(correct, total, sys_len, ref_len, max_order, smooth_eps=0.0):
    precisions = []
    for n in range(max_order):
        if total[n] == 0:
            precisions.append(0.0)
        elif correct[n] == 0 and smooth_eps > 0:
            precisions.append(100.0 * smooth_eps / total[n])
        else:
            precisions.append(100.0 * correct[n] / total[n])

    if sys_len == 0:
        brevity_penalty = 0.0
    elif sys_len <= ref_len:
        brevity_penalty = math.exp(1 - ref_len / sys_len)
    else:
        brevity_penalty = 1.0

    # With epsilon smoothing (segment diagnostics) the geometric mean runs
    # over the effective orders only, so 3-token segments still score.
    if smooth_eps > 0:
        used = [p for p, t in zip(precisions, total) if t > 0]
    else:
        used = precisions
    if not used or any(p == 0.0 for p in used) or brevity_penalty == 0.0:
        score = 0.0
    else:
        score = brevity_penalty * math.exp(sum(math.log(p) for p in used) / len(used))
    return BleuResult(
        score, tuple(precisions), brevity_penalty, sys_len, ref_len,
        tuple(correct), tuple(total),
    )


def bleu_corpus(pairs, config) -> BleuResult:
    """Score a corpus of SegmentPairs.  Empty hypotheses are allowed and
    contribute zero matches; an empty corpus raises EmptyCorpus."""
    pairs = list(pairs)
    if not pairs:
        raise EmptyCorpus("no segment pairs to score")
    max_order = config.max_order
    correct = [0] * max_order
    total = [0] * max_order
    sys_len = 0
    ref_len = 0
    for pair in pairs:
        hyp = tokenize(pair.hypothesis, config.tokenizer, config.lowercase)
        refs = [tokenize(r, config.tokenizer, config.lowercase) for r in pair.references]
        sys_len += len(hyp)
        ref_len += _closest_ref_len(len(hyp), [len(r) for r in refs])

        hyp_counts = _ngram_counts(hyp, max_order)
        max_ref_counts: Counter = Counter()
        for ref in refs:
            for ngram, count in _ngram_counts(ref, max_order).items():
                if count > max_ref_counts[ngram]:
                    max_ref_counts[ngram] = count
        for ngram, count in hyp_counts.items():
            n = len(ngram) - 1
            total[n] += count
            clipped = min(count, max_ref_counts.get(ngram, 0))
            if clipped:
                correct[n] += clipped
    return _compose(correct, total, sys_len, ref_len, max_order)


def sentence_bleu(hypothesis: str, references, config) -> BleuResult:
    """Single-segment diagnostic score; zero precisions are replaced by
    config.smooth_eps / total so short segments stay comparable."""
    hyp = tokenize(hypothesis, config.tokenizer, config.lowercase)
    refs = [tokenize(r, config.tokenizer, config.lowercase) for r in references]
    max_order = config.max_order
    correct = [0] * max_order
    total = [0] * max_order
    hyp_counts = _ngram_counts(hyp, max_order)
    max_ref_counts: Counter = Counter()
    for ref in refs:
        for ngram, count in _ngram_counts(ref, max_order).items():
            if count > max_ref_counts[ngram]:
                max_ref_counts[ngram] = count
    for ngram, count in hyp_counts.items():
        n = len(ngram) - 1
        total[n] += count
        correct[n] += min(count, max_ref_counts.get(ngram, 0))
    return _compose(
        correct, total, len(hyp), _closest_ref_len(len(hyp), [len(r) for r in refs]),
        max_order, smooth_eps=config.smooth_eps,
    )
