"""Command-line entry point: ingest -> levelize -> mask -> split -> score -> stats.

Every subcommand is a thin adapter over one module operation.  Exit codes:
0 success, 1 validation/usage error, 2 I/O error.  Stochastic subcommands
(mask, split, sample) require an explicit --seed; outputs are never
overwritten without --force, and every file output gets a manifest sidecar.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .errors import IoError, KgTextError
from .graph import assign_levels
from .ingest import dataset_stats, load_canonical, load_webnlg_xml, write_canonical
from .linearize import LinearizeOptions, linearize
from .mask import STRATEGIES, MaskPolicy, build_corpus
from .metrics import MetricConfig, SegmentPair, score_report
from .protocol import MODES, SplitPlan, sample_fraction, split_low_resource, write_manifest


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the spec wants 1."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _check_out(path: str, force: bool) -> None:
    if os.path.exists(path) and not force:
        raise KgTextError(f"output {path!r} exists; pass --force to overwrite")


def _write_sidecar(out_path: str, payload: dict) -> None:
    with open(f"{out_path}.manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(payload, indent=2) + "\n")


def _cmd_ingest(args) -> int:
    _check_out(args.out, args.force)
    dataset = load_webnlg_xml(args.input, args.split)
    write_canonical(dataset, args.out)
    _write_sidecar(args.out, {
        "subcommand": "ingest",
        "source": str(args.input),
        "split": args.split,
        "entries": len(dataset),
    })
    print(f"ingested {len(dataset)} entries -> {args.out}")
    return 0


def _cmd_levelize(args) -> int:
    _check_out(args.out, args.force)
    dataset = load_canonical(args.input)
    opts = LinearizeOptions(include_level_markers=args.level_markers)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for entry in dataset.entries:
            fh.write(linearize(assign_levels(entry.graph), opts) + "\n")
    _write_sidecar(args.out, {
        "subcommand": "levelize",
        "source": str(args.input),
        "level_markers": args.level_markers,
        "entries": len(dataset),
    })
    print(f"linearised {len(dataset)} graphs -> {args.out}")
    return 0


def _cmd_mask(args) -> int:
    _check_out(args.out, args.force)
    dataset = load_canonical(args.input)
    policy = MaskPolicy(per_level=args.per_level, min_triples=args.min_triples)
    manifest = build_corpus(dataset, args.strategy, policy, args.seed, args.out, jobs=args.jobs)
    print(f"emitted {manifest.emitted} examples (skipped {manifest.skipped}) -> {args.out}")
    return 0


def _cmd_split(args) -> int:
    _check_out(args.out, args.force)
    dataset = load_canonical(args.input)
    plan = SplitPlan(k_percent=args.k, mode=args.mode, seed=args.seed)
    pretrain, finetune, manifest = split_low_resource(dataset, plan, args.stratify)
    write_manifest(manifest, args.out)
    print(f"finetune {len(finetune)} ids, pretrain {len(pretrain)} ids -> {args.out}")
    return 0


def _cmd_sample(args) -> int:
    _check_out(args.out, args.force)
    dataset = load_canonical(args.input)
    subset, manifest = sample_fraction(dataset, args.fraction, args.seed)
    write_manifest(manifest, args.out)
    print(f"sampled {len(subset)} ids -> {args.out}")
    return 0


def _read_lines(path: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise IoError(str(exc)) from exc


def _cmd_score(args) -> int:
    if args.out:
        _check_out(args.out, args.force)
    hyp_lines = _read_lines(args.hyp)
    ref_files = [_read_lines(p) for p in args.ref]
    for p, lines in zip(args.ref, ref_files):
        if len(lines) != len(hyp_lines):
            raise KgTextError(
                f"reference file {p!r} has {len(lines)} lines, hypothesis has {len(hyp_lines)}"
            )
    external = {}
    for item in args.external:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--external expects KEY=VALUE, got {item!r}")
        external[key] = value
    config = MetricConfig(tokenizer=args.tokenizer, lowercase=args.lowercase)
    pairs = []
    for i, hyp in enumerate(hyp_lines):
        refs = tuple(f[i] for f in ref_files if f[i].strip())
        pairs.append(SegmentPair(hyp, refs))
    report = score_report(pairs, config, external)
    text = report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


def _cmd_stats(args) -> int:
    dataset = load_canonical(args.input)
    text = dataset_stats(dataset).to_json()
    if args.out:
        _check_out(args.out, args.force)
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="kgtext", description=__doc__)
    parser.add_argument("--version", action="version", version=f"kgtext {__version__}")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--force", action="store_true", help="overwrite existing outputs")
        return p

    p = add("ingest", _cmd_ingest, "WebNLG XML (file or directory) to canonical format")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--split", required=True, choices=("train", "dev", "test"))
    p.add_argument("--out", required=True)

    p = add("levelize", _cmd_levelize, "canonical file to linearised text, one line per graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--level-markers", action=argparse.BooleanOptionalAction, default=True)

    p = add("mask", _cmd_mask, "build a graph-masking pre-training corpus")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--strategy", required=True, choices=STRATEGIES)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--per-level", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--min-triples", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)

    p = add("split", _cmd_split, "low-resource pretrain/finetune id selection")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k", required=True, type=float, help="percent of train for fine-tuning")
    p.add_argument("--mode", default="same", choices=MODES)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--stratify", action="store_true", help="stratify by category")

    p = add("sample", _cmd_sample, "sample a fraction of train ids")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--fraction", required=True, type=float)
    p.add_argument("--seed", required=True, type=int)

    p = add("score", _cmd_score, "corpus BLEU/TER over hypothesis and reference files")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", action="append", required=True,
                   help="reference file, repeatable for multi-reference")
    p.add_argument("--out")
    p.add_argument("--tokenizer", default="international", choices=("international", "whitespace"))
    p.add_argument("--lowercase", action="store_true")
    p.add_argument("--external", action="append", default=[], metavar="KEY=VALUE",
                   help="pass-through external metric value")

    p = add("stats", _cmd_stats, "dataset statistics for a canonical file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "subcommand", None):
            parser.print_help()
            return 1
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except IoError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    except (KgTextError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
