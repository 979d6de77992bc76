"""Batch pipeline driver.

Reads a treebank stream, builds or loads the label inventories and
(optionally) a pronunciation lexicon, extracts phrase-structure and/or
word-relation features per sentence, optionally upsamples to phoneme
level and projects to fixed-width conditioning vectors, and writes the
matrices in json, csv, or binary form together with a sidecar manifest.

Sentences are processed independently (optionally by a process pool
sized via ``SYNFEAT_WORKERS``) and emitted strictly in input order, so
output bytes are identical across runs and worker counts.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import matrixio
from .conditioning import DEFAULT_OUT_DIM, Projection, init_projection, project_relu
from .inventories import (
    PHRASE,
    POS,
    LabelInventory,
    UnknownLabelError,
    build_inventory_from_corpus,
    default_phrase_inventory,
    default_pos_inventory,
    load_inventory,
)
from .phonemes import Lexicon, OovError, load_lexicon, phonemize, upsample
from .psf import PsfConfig, extract_psf, psf_schema
from .schema import ColumnBlock, blocks_to_json, column_names, prefixed, total_width
from .treebank import SyntaxTree, TreeParseError, parse_bracketed, read_corpus, serialize
from .wrf import extract_wrf, wrf_schema

EXIT_OK = 0
EXIT_BAD_TREE = 1
EXIT_POLICY = 2
EXIT_IO = 3

WORKERS_ENV = "SYNFEAT_WORKERS"

_DEFAULTS = {
    "features": "wrf",
    "levels": 10,
    "direction": "top-down",
    "output_level": "word",
    "format": "json",
    "unknown_labels": "error",
    "oov": "error",
    "projection_dim": DEFAULT_OUT_DIM,
}


class InputTreeError(ValueError):
    """A malformed input tree, annotated with its line number."""


@dataclass(frozen=True)
class RunConfig:
    input: str
    output: str
    features: str = "wrf"
    levels: int = 10
    direction: str = "top-down"
    pos_inventory: str | None = None
    phrase_inventory: str | None = None
    build_inventories: bool = False
    lexicon: str | None = None
    output_level: str = "word"
    format: str = "json"
    unknown_labels: str = "error"
    oov: str = "error"
    projection_seed: int | None = None
    projection_dim: int = DEFAULT_OUT_DIM
    workers: int = 1


@dataclass(frozen=True)
class SentenceResult:
    index: int
    line: int
    words: tuple[str, ...]
    tree: str
    matrix: np.ndarray


# ---------------------------------------------------------------------------
# Configuration


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synfeat",
        description="Extract syntactic features from bracketed constituency trees.",
    )
    parser.add_argument("-i", "--input", help="treebank file (one tree per line or an s-expression stream)")
    parser.add_argument("-o", "--output", help="output data file; the manifest lands next to it")
    parser.add_argument("--features", choices=["psf", "wrf", "both"], help="feature set (default wrf)")
    parser.add_argument("--levels", type=int, help="tree levels per word for psf (default 10)")
    parser.add_argument("--direction", choices=["top-down", "bottom-up"], help="psf level selection (default top-down)")
    parser.add_argument("--pos-inventory", help="POS label file (default: shipped 39-tag set)")
    parser.add_argument("--phrase-inventory", help="phrase label file (default: shipped 27-label set)")
    parser.add_argument(
        "--build-inventories",
        action="store_const",
        const=True,
        help="collect inventories from the input corpus instead of loading files",
    )
    parser.add_argument("--lexicon", help="CMUdict-style pronunciation lexicon")
    parser.add_argument("--output-level", choices=["word", "phoneme"], help="row granularity (default word)")
    parser.add_argument("--format", choices=["json", "csv", "bin"], help="output format (default json)")
    parser.add_argument("--unknown-labels", choices=["error", "zero"], help="policy for labels outside the inventory")
    parser.add_argument("--oov", choices=["error", "letters", "skip"], help="policy for words outside the lexicon")
    parser.add_argument("--projection-seed", type=int, help="enable the seeded ReLU projection")
    parser.add_argument("--projection-dim", type=int, help="projection width (default 256)")
    parser.add_argument("--config", help="key = value config file; flags take precedence")
    return parser


def load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


_BOOL_KEYS = {"build_inventories"}
_INT_KEYS = {"levels", "projection_seed", "projection_dim"}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge flags over config-file entries over defaults."""
    known = set(RunConfig.__dataclass_fields__) - {"workers"}
    file_values: dict[str, object] = {}
    if args.config:
        for key, raw in load_config_file(args.config).items():
            if key not in known:
                raise ValueError(f"{args.config}: unknown option {key!r}")
            if key in _BOOL_KEYS:
                file_values[key] = raw.lower() in ("1", "true", "yes")
            elif key in _INT_KEYS:
                file_values[key] = int(raw)
            else:
                file_values[key] = raw

    def pick(name: str):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_values:
            return file_values[name]
        return _DEFAULTS.get(name)

    merged = {name: pick(name) for name in RunConfig.__dataclass_fields__ if name != "workers"}
    merged["build_inventories"] = bool(merged["build_inventories"])
    missing = [name for name in ("input", "output") if not merged[name]]
    if missing:
        raise ValueError(f"missing required option(s): {', '.join('--' + m for m in missing)}")
    if merged["output_level"] == "phoneme" and not merged["lexicon"]:
        raise ValueError("--output-level phoneme requires --lexicon")
    workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers < 1:
        raise ValueError(f"{WORKERS_ENV} must be >= 1, got {workers}")
    return RunConfig(workers=workers, **merged)


# ---------------------------------------------------------------------------
# Extraction


@dataclass(frozen=True)
class _Context:
    """Everything a worker needs; built once per process."""

    config: RunConfig
    pos_inv: LabelInventory
    phrase_inv: LabelInventory
    lexicon: Lexicon | None
    blocks: list[ColumnBlock]
    feature_cols: int
    projection: Projection | None


def feature_blocks(config: RunConfig, pos_inv: LabelInventory, phrase_inv: LabelInventory) -> list[ColumnBlock]:
    """Word-level column schema for the configured feature set."""
    psf_cfg = PsfConfig(config.levels, config.direction)
    if config.features == "psf":
        return psf_schema(psf_cfg, pos_inv, phrase_inv)
    if config.features == "wrf":
        return wrf_schema(pos_inv, phrase_inv)
    psf_blocks = psf_schema(psf_cfg, pos_inv, phrase_inv)
    wrf_blocks = wrf_schema(pos_inv, phrase_inv)
    return prefixed(psf_blocks, "psf_") + prefixed(wrf_blocks, "wrf_", offset=total_width(psf_blocks))


def _build_context(config: RunConfig, pos_inv: LabelInventory, phrase_inv: LabelInventory) -> _Context:
    lexicon = None
    if config.lexicon:
        lexicon = load_lexicon(config.lexicon, oov_policy=config.oov)
    blocks = feature_blocks(config, pos_inv, phrase_inv)
    cols = total_width(blocks)
    projection = None
    if config.projection_seed is not None:
        projection = init_projection(config.projection_seed, cols, config.projection_dim)
        blocks = [ColumnBlock("projected", 0, config.projection_dim)]
    return _Context(config, pos_inv, phrase_inv, lexicon, blocks, cols, projection)


def _compute_word_features(ctx: _Context, tree: SyntaxTree) -> np.ndarray:
    cfg = ctx.config
    policy = cfg.unknown_labels
    if cfg.features == "psf":
        return extract_psf(tree, PsfConfig(cfg.levels, cfg.direction), ctx.pos_inv, ctx.phrase_inv, policy)
    if cfg.features == "wrf":
        return extract_wrf(tree, ctx.pos_inv, ctx.phrase_inv, policy)
    left = extract_psf(tree, PsfConfig(cfg.levels, cfg.direction), ctx.pos_inv, ctx.phrase_inv, policy)
    right = extract_wrf(tree, ctx.pos_inv, ctx.phrase_inv, policy)
    return np.hstack([left, right])


def _process_sentence(ctx: _Context, item: tuple[int, str, int]) -> SentenceResult:
    index, source, line = item
    try:
        tree = parse_bracketed(source)
    except TreeParseError as exc:
        raise InputTreeError(f"line {line}: {exc}") from exc
    try:
        matrix = _compute_word_features(ctx, tree)
        if ctx.config.output_level == "phoneme":
            alignment = phonemize(tree, ctx.lexicon)
            kept = [entry.word_index - 1 for entry in alignment.entries]
            matrix = upsample(matrix[kept], alignment)
    except UnknownLabelError as exc:
        raise UnknownLabelError(f"line {line}: {exc.args[0]}", exc.label) from None
    except OovError as exc:
        raise OovError(f"line {line}: {exc.args[0]}", exc.word) from None
    if ctx.projection is not None:
        matrix = project_relu(matrix, ctx.projection)
    return SentenceResult(index, line, tuple(w.text for w in tree.words), serialize(tree), matrix)


_WORKER_CTX: _Context | None = None


def _init_worker(config: RunConfig, pos_labels: tuple[str, ...], phrase_labels: tuple[str, ...]) -> None:
    global _WORKER_CTX
    _WORKER_CTX = _build_context(config, LabelInventory(POS, pos_labels), LabelInventory(PHRASE, phrase_labels))


def _worker(item: tuple[int, str, int]) -> SentenceResult:
    return _process_sentence(_WORKER_CTX, item)


def _extract_all(ctx: _Context, items: list[tuple[int, str, int]]) -> list[SentenceResult]:
    if ctx.config.workers == 1 or len(items) <= 1:
        return [_process_sentence(ctx, item) for item in items]
    init_args = (ctx.config, ctx.pos_inv.labels, ctx.phrase_inv.labels)
    with concurrent.futures.ProcessPoolExecutor(
        max_workers=ctx.config.workers, initializer=_init_worker, initargs=init_args
    ) as pool:
        chunksize = max(1, len(items) // (ctx.config.workers * 4))
        return list(pool.map(_worker, items, chunksize=chunksize))


# ---------------------------------------------------------------------------
# Output


def _write_json(path: str, results: list[SentenceResult], blocks: list[ColumnBlock]) -> None:
    compact_schema = [{"name": b.name, "offset": b.offset, "width": b.width} for b in blocks]
    with open(path, "w", encoding="utf-8") as fh:
        for res in results:
            record = {
                "line": res.line,
                "words": list(res.words),
                "tree": res.tree,
                "schema": compact_schema,
                "rows": [[float(v) for v in row] for row in res.matrix],
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def _write_csv(path: str, results: list[SentenceResult], blocks: list[ColumnBlock]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(column_names(blocks))
        for res in results:
            for row in res.matrix:
                writer.writerow([str(float(v)) for v in row])


def _write_bin(path: str, results: list[SentenceResult], cols: int) -> None:
    if results:
        stacked = np.vstack([res.matrix for res in results])
    else:
        stacked = np.zeros((0, cols), dtype=np.float32)
    matrixio.write_matrix(path, stacked)


def _write_manifest(path: str, ctx: _Context, results: list[SentenceResult]) -> None:
    cfg = ctx.config
    manifest = {
        "format": cfg.format,
        "output": os.path.basename(cfg.output),
        "features": cfg.features,
        "columns": total_width(ctx.blocks),
        "schema": {"blocks": blocks_to_json(ctx.blocks)},
        "inventories": {"pos": list(ctx.pos_inv.labels), "phrase": list(ctx.phrase_inv.labels)},
        "config": {
            "levels": cfg.levels,
            "direction": cfg.direction,
            "output_level": cfg.output_level,
            "unknown_labels": cfg.unknown_labels,
            "oov": cfg.oov,
            "projection_seed": cfg.projection_seed,
            "projection_dim": cfg.projection_dim if cfg.projection_seed is not None else None,
        },
        "sentences": [
            {
                "index": res.index,
                "line": res.line,
                "num_words": len(res.words),
                "rows": int(res.matrix.shape[0]),
                "cols": int(res.matrix.shape[1]),
            }
            for res in results
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def manifest_path(output: str) -> str:
    return output + ".manifest.json"


# ---------------------------------------------------------------------------
# Driver


def _load_inventories(config: RunConfig, trees_for_build) -> tuple[LabelInventory, LabelInventory]:
    if config.build_inventories:
        trees = trees_for_build()
        return (
            build_inventory_from_corpus(trees, POS),
            build_inventory_from_corpus(trees, PHRASE),
        )
    pos_inv = load_inventory(config.pos_inventory, POS) if config.pos_inventory else default_pos_inventory()
    phrase_inv = (
        load_inventory(config.phrase_inventory, PHRASE) if config.phrase_inventory else default_phrase_inventory()
    )
    return pos_inv, phrase_inv


def run(config: RunConfig) -> None:
    """Execute one batch; raises typed errors that ``main`` maps to exit codes."""
    with open(config.input, encoding="utf-8-sig") as fh:  # tolerate a BOM
        text = fh.read()
    try:
        chunks = read_corpus(text)
    except TreeParseError as exc:
        line = text[: exc.offset].count("\n") + 1
        raise InputTreeError(f"line {line}: {exc}") from exc
    items = [(i, source, line) for i, (source, line) in enumerate(chunks)]

    def trees_for_build():
        out = []
        for _, source, line in items:
            try:
                out.append(parse_bracketed(source))
            except TreeParseError as exc:
                raise InputTreeError(f"line {line}: {exc}") from exc
        return out

    pos_inv, phrase_inv = _load_inventories(config, trees_for_build)
    ctx = _build_context(config, pos_inv, phrase_inv)
    results = _extract_all(ctx, items)

    created: list[str] = []
    try:
        created.append(config.output)
        if config.format == "json":
            _write_json(config.output, results, ctx.blocks)
        elif config.format == "csv":
            _write_csv(config.output, results, ctx.blocks)
        else:
            _write_bin(config.output, results, total_width(ctx.blocks))
        created.append(manifest_path(config.output))
        _write_manifest(manifest_path(config.output), ctx, results)
    except BaseException:
        for path in created:
            try:
                os.unlink(path)
            except OSError:
                pass
        raise


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except (ValueError, OSError) as exc:
        parser.exit(EXIT_POLICY, f"synfeat: error: {exc}\n")
    try:
        run(config)
    except InputTreeError as exc:
        print(f"synfeat: bad input tree: {exc}", file=sys.stderr)
        return EXIT_BAD_TREE
    except (UnknownLabelError, OovError, ValueError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"synfeat: policy violation: {message}", file=sys.stderr)
        return EXIT_POLICY
    except OSError as exc:
        print(f"synfeat: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
