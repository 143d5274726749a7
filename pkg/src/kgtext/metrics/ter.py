"""Translation Edit Rate with greedy phrase shifts.

Per segment: the minimum over references of (shifts + remaining word edit
distance), where the shift search repeatedly applies the single shift that
most reduces the edit distance.  A shift moves a contiguous hypothesis
block whose word sequence occurs somewhere in the reference; every shift,
insertion, deletion and substitution costs 1.  The corpus score is total
best edits divided by the total word count of the edit-minimising
references (first reference wins ties).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyCorpus, EmptyReference
from .tokenizers import tokenize


@dataclass(frozen=True)
class TerResult:
    score: float
    total_edits: int
    ref_len: int


def word_edit_distance(a: list[str], b: list[str]) -> int:
    """Levenshtein distance over word lists, unit costs."""
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, wa in enumerate(a, start=1):
        current = [i]
        for j, wb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (wa != wb),
            ))
        previous = current
    return previous[-1]


def _ref_block_index(ref: list[str], max_size: int) -> set[tuple[str, ...]]:
    blocks: set[tuple[str, ...]] = set()
    for size in range(1, min(max_size, len(ref)) + 1):
        for i in range(len(ref) - size + 1):
            blocks.add(tuple(ref[i : i + size]))
    return blocks


def _apply_shift(hyp: list[str], start: int, size: int, destination: int) -> list[str]:
    block = hyp[start : start + size]
    rest = hyp[:start] + hyp[start + size :]
    return rest[:destination] + block + rest[destination:]


def shifted_edit_distance(hyp: list[str], ref: list[str],
                          max_iterations: int = 50, max_block: int = 10) -> int:
    """Greedy TER edit count for one hypothesis/reference pair.

    Each round scans every reference-matching block and every landing
    position, applies the shift yielding the lowest edit distance if that
    strictly improves on the current one, and stops otherwise (or after
    `max_iterations` rounds, which bounds the runtime)."""
    current = list(hyp)
    distance = word_edit_distance(current, ref)
    if distance == 0:
        return 0
    blocks = _ref_block_index(ref, max_block)
    shifts = 0
    for _ in range(max_iterations):
        best_distance = distance
        best_move = None
        n = len(current)
        for size in range(1, min(max_block, n) + 1):
            for start in range(n - size + 1):
                if tuple(current[start : start + size]) not in blocks:
                    continue
                for destination in range(n - size + 1):
                    if destination == start:
                        continue
                    candidate = _apply_shift(current, start, size, destination)
                    d = word_edit_distance(candidate, ref)
                    if d < best_distance:
                        best_distance = d
                        best_move = candidate
        if best_move is None:
            break
        current = best_move
        distance = best_distance
        shifts += 1
        if distance == 0:
            break
    return shifts + distance


def segment_edits(hypothesis: str, references, config) -> tuple[int, int]:
    """(best edit count, word length of the edit-minimising reference).

    Ties on the edit count go to the longest such reference, so the result
    does not depend on reference order."""
    hyp = tokenize(hypothesis, config.tokenizer, config.lowercase)
    best: tuple[int, int] | None = None
    for reference in references:
        ref = tokenize(reference, config.tokenizer, config.lowercase)
        if not ref:
            continue
        edits = shifted_edit_distance(
            hyp, ref, config.max_shift_iterations, config.max_shift_size
        )
        if best is None or (edits, -len(ref)) < (best[0], -best[1]):
            best = (edits, len(ref))
    if best is None:
        raise EmptyReference(f"no non-empty reference for hypothesis {hypothesis!r}")
    return best


def ter_corpus(pairs, config) -> TerResult:
    """Corpus TER: sum of per-segment best edits over the sum of the
    corresponding reference lengths.  Lower is better; may exceed 1."""
    pairs = list(pairs)
    if not pairs:
        raise EmptyCorpus("no segment pairs to score")
    total_edits = 0
    total_ref_len = 0
    for pair in pairs:
        edits, ref_len = segment_edits(pair.hypothesis, pair.references, config)
        total_edits += edits
        total_ref_len += ref_len
    return TerResult(total_edits / total_ref_len, total_edits, total_ref_len)
