"""Whitespace word-level vocabulary with the usual specials.

The linearised wire format and masking targets are whitespace-friendly, so
plain splitting is enough at desk scale.  Vocabularies are ordered (specials,
then first-seen corpus order) to keep checkpoints reproducible.
"""

from __future__ import annotations

PAD, BOS, EOS, UNK = "<pad>", "<s>", "</s>", "<unk>"
SPECIALS = (PAD, BOS, EOS, UNK)


class Vocab:
    def __init__(self, tokens: list[str]):
        self.tokens = list(tokens)
        self.index = {tok: i for i, tok in enumerate(self.tokens)}
        if self.tokens[: len(SPECIALS)] != list(SPECIALS):
            raise ValueError("vocabulary must start with the special tokens")

    @classmethod
    def build(cls, texts, extra_tokens=()) -> "Vocab":
        tokens = list(SPECIALS)
        seen = set(tokens)
        for tok in extra_tokens:
            if tok not in seen:
                seen.add(tok)
                tokens.append(tok)
        for text in texts:
            for tok in text.split():
                if tok not in seen:
                    seen.add(tok)
                    tokens.append(tok)
        return cls(tokens)

    def extend(self, texts) -> int:
        """Add unseen tokens from `texts`; returns how many were added."""
        added = 0
        for text in texts:
            for tok in text.split():
                if tok not in self.index:
                    self.index[tok] = len(self.tokens)
                    self.tokens.append(tok)
                    added += 1
        return added

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def pad_id(self) -> int:
        return self.index[PAD]

    @property
    def bos_id(self) -> int:
        return self.index[BOS]

    @property
    def eos_id(self) -> int:
        return self.index[EOS]

    def encode(self, text: str) -> list[int]:
        unk = self.index[UNK]
        return [self.index.get(tok, unk) for tok in text.split()]

    def decode(self, ids) -> str:
        drop = {self.pad_id, self.bos_id, self.eos_id}
        return " ".join(self.tokens[i] for i in ids if i not in drop)
