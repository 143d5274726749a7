"""A small encoder-decoder Transformer for desk-scale experiments."""

from __future__ import annotations

import math

import torch
from torch import nn

SIZES = {
    "tiny": dict(d_model=96, nhead=4, layers=2, ffn=192),
    "small": dict(d_model=160, nhead=4, layers=3, ffn=384),
}


class Seq2SeqTransformer(nn.Module):
    def __init__(self, vocab_size: int, size: str = "tiny", max_len: int = 512,
                 dropout: float = 0.1, pad_id: int = 0):
        super().__init__()
        if size not in SIZES:
            raise ValueError(f"unknown model size {size!r}; expected one of {sorted(SIZES)}")
        cfg = SIZES[size]
        self.size = size
        self.pad_id = pad_id
        self.d_model = cfg["d_model"]
        self.token_embedding = nn.Embedding(vocab_size, self.d_model, padding_idx=pad_id)
        self.position_embedding = nn.Embedding(max_len, self.d_model)
        self.transformer = nn.Transformer(
            d_model=self.d_model,
            nhead=cfg["nhead"],
            num_encoder_layers=cfg["layers"],
            num_decoder_layers=cfg["layers"],
            dim_feedforward=cfg["ffn"],
            dropout=dropout,
            batch_first=True,
        )
        self.out = nn.Linear(self.d_model, vocab_size)
        self.out.weight = self.token_embedding.weight  # tied projection
        self.max_len = max_len

    def _embed(self, ids: torch.Tensor) -> torch.Tensor:
        positions = torch.arange(ids.size(1), device=ids.device).unsqueeze(0)
        return (self.token_embedding(ids) * math.sqrt(self.d_model)
                + self.position_embedding(positions))

    @staticmethod
    def _causal_mask(size: int, device) -> torch.Tensor:
        return torch.triu(torch.ones(size, size, dtype=torch.bool, device=device), diagonal=1)

    def forward(self, src: torch.Tensor, tgt_in: torch.Tensor) -> torch.Tensor:
        """Logits over the vocabulary for every target position."""
        causal = self._causal_mask(tgt_in.size(1), tgt_in.device)
        hidden = self.transformer(
            self._embed(src),
            self._embed(tgt_in),
            tgt_mask=causal,
            src_key_padding_mask=src.eq(self.pad_id),
            tgt_key_padding_mask=tgt_in.eq(self.pad_id),
            memory_key_padding_mask=src.eq(self.pad_id),
        )
        return self.out(hidden)

    @torch.no_grad()
    def greedy_decode(self, src: torch.Tensor, bos_id: int, eos_id: int,
                      max_new_tokens: int = 64) -> list[list[int]]:
        """Deterministic greedy decoding, one finished sequence per row."""
        self.eval()
        batch = src.size(0)
        src_pad = src.eq(self.pad_id)
        memory = self.transformer.encoder(self._embed(src), src_key_padding_mask=src_pad)
        ys = torch.full((batch, 1), bos_id, dtype=torch.long, device=src.device)
        finished = torch.zeros(batch, dtype=torch.bool, device=src.device)
        for step in range(max_new_tokens):
            causal = self._causal_mask(ys.size(1), src.device)
            hidden = self.transformer.decoder(
                self._embed(ys), memory,
                tgt_mask=causal, memory_key_padding_mask=src_pad,
            )
            logits = self.out(hidden[:, -1])
            logits[:, self.pad_id] = float("-inf")
            if step == 0:  # min length 1: never emit an empty hypothesis
                logits[:, eos_id] = float("-inf")
            next_ids = logits.argmax(dim=-1)
            next_ids = next_ids.masked_fill(finished, self.pad_id)
            ys = torch.cat([ys, next_ids.unsqueeze(1)], dim=1)
            finished |= next_ids.eq(eos_id)
            if bool(finished.all()):
                break
        return [row[1:].tolist() for row in ys]
