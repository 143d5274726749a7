"""Dataset loading: WebNLG release XML and the canonical line format.

The canonical format is the integration contract for every other source
(DART, EventNarrative, ... are converted to it externally): one JSON object
per line with fields id, triples ([head, relation, tail] arrays), refs,
split and optional category; UTF-8, LF line endings.

WebNLG surface normalisation happens here and only here: entity
underscores become spaces ("New_York_City" -> "New York City") and
camel-case relations are split on lower-to-upper boundaries
("isPartOf" -> "is Part Of").
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DuplicateId,
    EmptyEntry,
    IoError,
    KgTextError,
    MissingReferences,
    ParseError,
    TripleFieldCount,
    XmlMalformed,
)
from .graph import KnowledgeGraph, assign_levels, build_graph

SPLITS = ("train", "dev", "test")

_CAMEL_BOUNDARY = re.compile(r"(?<=[a-z])(?=[A-Z])")


@dataclass(frozen=True)
class DatasetEntry:
    """One task example: a graph, its reference texts and bookkeeping."""

    graph: KnowledgeGraph
    references: tuple[str, ...]
    split: str
    entry_id: str
    category: str | None = None

    def __post_init__(self):
        if self.split not in SPLITS:
            raise ParseError(f"unknown split {self.split!r} for entry {self.entry_id!r}")
        if not self.references and self.split in ("train", "dev"):
            raise MissingReferences(
                f"entry {self.entry_id!r} in split {self.split!r} has no reference text"
            )


@dataclass(frozen=True)
class Dataset:
    entries: tuple[DatasetEntry, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        seen: set[str] = set()
        for entry in self.entries:
            if entry.entry_id in seen:
                raise DuplicateId(f"duplicate entry id {entry.entry_id!r}")
            seen.add(entry.entry_id)

    def __len__(self) -> int:
        return len(self.entries)

    def split_sizes(self) -> dict[str, int]:
        sizes = {s: 0 for s in SPLITS}
        for entry in self.entries:
            sizes[entry.split] += 1
        return sizes


@dataclass(frozen=True)
class StatsReport:
    split_sizes: dict[str, int]
    triple_histogram: dict[int, int]
    distinct_relations: int
    distinct_entities: int
    max_level: int
    total: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", sum(self.split_sizes.values()))

    def to_json(self) -> str:
        payload = {
            "total": self.total,
            "split_sizes": self.split_sizes,
            "triple_histogram": {str(k): v for k, v in sorted(self.triple_histogram.items())},
            "distinct_relations": self.distinct_relations,
            "distinct_entities": self.distinct_entities,
            "max_level": self.max_level,
        }
        return json.dumps(payload, indent=2) + "\n"


def normalize_entity(label: str) -> str:
    """WebNLG entity surface form: underscores to spaces, then trim."""
    return label.replace("_", " ").strip()


def normalize_relation(label: str) -> str:
    """WebNLG relation surface form: split camel case on lower-to-upper
    boundaries, preserving case ("isPartOf" -> "is Part Of")."""
    return _CAMEL_BOUNDARY.sub(" ", label.strip())


def _parse_mtriple(text: str, where: str) -> tuple[str, str, str]:
    if text.count("|") != 2:
        raise TripleFieldCount(
            f"{where}: triple string needs exactly 2 '|' separators: {text!r}"
        )
    head, relation, tail = (part.strip() for part in text.split("|"))
    return normalize_entity(head), normalize_relation(relation), normalize_entity(tail)


def load_webnlg_xml(path, split: str) -> Dataset:
    """Load a WebNLG release v3.0 XML file, or a directory of them.

    Directories are walked recursively in sorted order.  One DatasetEntry
    per <entry> element: triples come from <modifiedtripleset>/<mtriple>
    strings, every <lex> text becomes a reference (document order), and
    entry ids are "<relative file stem>#<eid>".
    """
    root_path = Path(path)
    if root_path.is_dir():
        files = sorted(root_path.rglob("*.xml"))
        if not files:
            raise IoError(f"no XML files under {root_path}")
    elif root_path.exists():
        files = [root_path]
    else:
        raise IoError(f"no such file or directory: {root_path}")

    entries: list[DatasetEntry] = []
    for file_path in files:
        if root_path.is_dir():
            stem = file_path.relative_to(root_path).with_suffix("").as_posix()
        else:
            stem = file_path.stem
        try:
            tree = ET.parse(file_path)
        except ET.ParseError as exc:
            position = getattr(exc, "position", None)
            raise XmlMalformed(
                f"{file_path}: {exc}", line=position[0] if position else None
            ) from exc
        except OSError as exc:
            raise IoError(str(exc)) from exc

        for element in tree.getroot().iter("entry"):
            eid = element.get("eid", f"e{len(entries)}")
            entry_id = f"{stem}#{eid}"
            raw_triples = [
                m.text or "" for m in element.findall("./modifiedtripleset/mtriple")
            ]
            if not raw_triples:
                raise EmptyEntry(f"{file_path}: entry {eid} has no triples")
            triples = [_parse_mtriple(t, f"{file_path} entry {eid}") for t in raw_triples]
            references = tuple(
                (lex.text or "").strip() for lex in element.findall("./lex")
            )
            references = tuple(r for r in references if r)
            entries.append(
                DatasetEntry(
                    graph=build_graph(triples),
                    references=references,
                    split=split,
                    entry_id=entry_id,
                    category=element.get("category"),
                )
            )
    return Dataset(tuple(entries), name=root_path.stem)


def write_canonical(dataset: Dataset, path) -> None:
    """Write a dataset in the canonical line format (stable field order)."""
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for entry in dataset.entries:
                record = {
                    "id": entry.entry_id,
                    "triples": [[t.head, t.relation, t.tail] for t in entry.graph.triples],
                    "refs": list(entry.references),
                    "split": entry.split,
                }
                if entry.category is not None:
                    record["category"] = entry.category
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write canonical file: {exc}") from exc


def load_canonical(path) -> Dataset:
    """Load a canonical-format file; entries in file order.

    Per-entry validation is the same as build_graph; field and graph
    problems surface as ParseError with the 1-based line number.
    """
    entries: list[DatasetEntry] = []
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise IoError(str(exc)) from exc

    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: invalid JSON: {exc.msg}", line=lineno) from exc
        try:
            if not isinstance(record, dict):
                raise ParseError("record is not an object")
            for key in ("id", "triples", "refs", "split"):
                if key not in record:
                    raise ParseError(f"missing field {key!r}")
            triples = [tuple(t) for t in record["triples"]]
            entries.append(
                DatasetEntry(
                    graph=build_graph(triples),
                    references=tuple(record["refs"]),
                    split=record["split"],
                    entry_id=record["id"],
                    category=record.get("category"),
                )
            )
        except (DuplicateId, MissingReferences):
            raise
        except (KgTextError, TypeError) as exc:
            raise ParseError(f"line {lineno}: {exc}", line=lineno) from exc
    return Dataset(tuple(entries), name=Path(path).stem)


def dataset_stats(dataset: Dataset) -> StatsReport:
    """Exact dataset statistics (no sampling)."""
    histogram: dict[int, int] = {}
    relations: set[str] = set()
    entities: set[str] = set()
    max_level = 0
    for entry in dataset.entries:
        n = len(entry.graph.triples)
        histogram[n] = histogram.get(n, 0) + 1
        for t in entry.graph.triples:
            relations.add(t.relation)
        entities.update(entry.graph.entities)
        max_level = max(max_level, max(assign_levels(entry.graph).levels))
    return StatsReport(
        split_sizes=dataset.split_sizes(),
        triple_histogram=histogram,
        distinct_relations=len(relations),
        distinct_entities=len(entities),
        max_level=max_level,
    )
