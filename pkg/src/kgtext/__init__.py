"""kgtext: knowledge-graph linearisation with level markers, graph-masking
pre-training corpora, low-resource split protocols, and BLEU/TER scoring."""

from . import errors
from .graph import KnowledgeGraph, LeveledGraph, Triple, assign_levels, build_graph, find_roots
from .ingest import (
    Dataset,
    DatasetEntry,
    StatsReport,
    dataset_stats,
    load_canonical,
    load_webnlg_xml,
    write_canonical,
)
from .linearize import LinearizeOptions, ParsedUnit, linearize, parse_linearized, parsed_triples
from .mask import (
    MaskedExample,
    MaskPolicy,
    build_corpus,
    mask_relation,
    mask_triple,
    mask_triple_relation,
    reconstruct,
)
from .metrics import MetricConfig, ScoreReport, SegmentPair, bleu_corpus, score_report, ter_corpus
from .protocol import SplitPlan, sample_fraction, split_low_resource

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "DatasetEntry",
    "KnowledgeGraph",
    "LeveledGraph",
    "LinearizeOptions",
    "MaskPolicy",
    "MaskedExample",
    "MetricConfig",
    "ParsedUnit",
    "ScoreReport",
    "SegmentPair",
    "SplitPlan",
    "StatsReport",
    "Triple",
    "assign_levels",
    "bleu_corpus",
    "build_corpus",
    "build_graph",
    "dataset_stats",
    "errors",
    "find_roots",
    "linearize",
    "load_canonical",
    "load_webnlg_xml",
    "mask_relation",
    "mask_triple",
    "mask_triple_relation",
    "parse_linearized",
    "parsed_triples",
    "reconstruct",
    "sample_fraction",
    "score_report",
    "split_low_resource",
    "ter_corpus",
    "write_canonical",
]
