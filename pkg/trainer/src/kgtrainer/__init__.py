"""kgtrainer: desk-scale trainer bridge over kgtext corpora and datasets."""

from . import errors
from .bridge import (
    DEFAULT_SENTINEL_MAP,
    TrainManifest,
    finetune,
    generate,
    levelize,
    load_checkpoint,
    pretrain,
    read_canonical,
    read_corpus,
    remap_sentinels,
    window_means,
)
from .model import Seq2SeqTransformer
from .vocab import Vocab

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SENTINEL_MAP",
    "Seq2SeqTransformer",
    "TrainManifest",
    "Vocab",
    "errors",
    "finetune",
    "generate",
    "levelize",
    "load_checkpoint",
    "pretrain",
    "read_canonical",
    "read_corpus",
    "remap_sentinels",
    "window_means",
]
