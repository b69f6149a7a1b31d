"""End-to-end run: corpus -> documents -> match pairs -> graphs -> partition."""
from __future__ import annotations

import hashlib
import json
import logging
import platform
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, kernels
from .community import community_pos_census, detect_communities, partition_json
from .compound import CompoundRules, apply_compounding
from .corpus_io import FORMATS, export_graph, load_conllu, load_csv
from .document import Document
from .graph import (ConativeFilter, NNMode, PerceptionGraph, Unit, build_graph,
                    report_csv, semantic_relations_report)
from .match import MatchPair, map_suffixes, match_av2n
from .normalize import Lexicon, load_lexicon, normalize_text
from .reduce import ReduceParams, reduce_graph
from .tag import TagModel, load_model, tag_tokens

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_STAGE_ERROR = 1
EXIT_USAGE = 2
EXIT_EMPTY = 3


class StageError(RuntimeError):
    def __init__(self, stage, doc_id, cause):
        super().__init__(f"stage {stage!r} failed on document {doc_id!r}: {cause}")
        self.stage = stage
        self.doc_id = doc_id


@dataclass
class PipelineConfig:
    input: str = ""
    format: str = "csv"
    text_column: str | None = None
    lexicon: str | None = None
    tagger_model: str | None = None
    nn_mode: str = "greedy"
    unit: str = "document"
    conative: bool = True
    conative_list: str | None = None
    k_weight: int = 2
    k_core: int = 2
    gamma: float = 1.0
    seed: int = 42
    export: tuple = FORMATS
    out_dir: str = "out"
    workers: int = 1

    def validate(self) -> None:
        if self.format not in ("csv", "conllu"):
            raise ValueError(f"format must be csv or conllu, got {self.format!r}")
        NNMode(self.nn_mode)
        Unit(self.unit)
        ReduceParams(self.k_weight, self.k_core)
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        for fmt in self.export:
            if fmt not in FORMATS:
                raise ValueError(f"unknown export format {fmt!r}; choose from {FORMATS}")
        for name in ("input", "lexicon", "tagger_model", "conative_list"):
            p = getattr(self, name)
            if name == "input" or p:
                if not p or not Path(p).exists():
                    raise FileNotFoundError(f"{name.replace('_', '-')} not found: {p!r}")

    def conative_filter(self) -> ConativeFilter:
        if self.conative_list:
            return ConativeFilter.from_file(self.conative_list, self.conative)
        return ConativeFilter(enabled=self.conative)


@dataclass
class Resources:
    lexicon: Lexicon | None
    model: TagModel
    rules: CompoundRules = field(default_factory=CompoundRules)


def load_resources(cfg: PipelineConfig) -> Resources:
    lex = load_lexicon(cfg.lexicon) if cfg.format == "csv" else None
    return Resources(lex, load_model(cfg.tagger_model))


def nlp_document(doc: Document, res: Resources) -> tuple[Document, list[MatchPair]]:
    """Tagging, compounding, suffix mapping and matching for one document."""
    stage = "tag"
    try:
        doc = tag_tokens(doc, res.model)
        stage = "compound"
        doc = apply_compounding(doc, res.rules)
        stage = "match"
        doc = map_suffixes(doc)
        return doc, match_av2n(doc, res.model)
    except Exception as e:  # noqa: BLE001 - reported with stage and doc id
        raise StageError(stage, doc.doc_id, e) from e


def process_text(doc_id: str, text: str, res: Resources | None = None):
    """Run the NLP phase on one raw text; returns (Document, match pairs)."""
    res = res or Resources(load_lexicon(), load_model())
    try:
        doc = normalize_text(doc_id, text, res.lexicon)
    except Exception as e:  # noqa: BLE001
        raise StageError("normalize", doc_id, e) from e
    return nlp_document(doc, res)


_worker_res: Resources | None = None


def _init_worker(cfg_dict):
    global _worker_res
    _worker_res = load_resources(PipelineConfig(**cfg_dict))


def _work(item):
    if isinstance(item, Document):
        return nlp_document(item, _worker_res)
    return process_text(item[0], item[1], _worker_res)


def run_nlp(items, cfg: PipelineConfig, res: Resources):
    """Process raw (id, text) items or pre-tagged Documents, preserving order."""
    items = list(items)
    if cfg.workers > 1 and len(items) > 1:
        chunk = max(1, len(items) // (cfg.workers * 4))
        with ProcessPoolExecutor(cfg.workers, initializer=_init_worker,
                                 initargs=(asdict(cfg),)) as ex:
            return list(ex.map(_work, items, chunksize=chunk))
    out = []
    for item in items:
        if isinstance(item, Document):
            out.append(nlp_document(item, res))
        else:
            out.append(process_text(item[0], item[1], res))
    return out


def graph_from_results(results, cfg: PipelineConfig) -> PerceptionGraph:
    flt = cfg.conative_filter()
    g = PerceptionGraph()
    # per-document graphs summed in place; same result as folding with merge()
    for doc, pairs in results:
        part = build_graph(pairs, [doc], cfg.nn_mode, cfg.unit, flt)
        for (s, d), w in part.directed.items():
            g.add_arc(s, d, w)
        for (u, v), w in part.undirected.items():
            g.add_pair(u, v, w)
    return g.canonical()


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _versions() -> dict:
    out = {"keypartx": __version__, "python": platform.python_version(),
           "numpy": np.__version__, "kernel_backend": kernels.BACKEND}
    try:
        import numba
        out["numba"] = numba.__version__
    except ImportError:
        out["numba"] = None
    return out


def _write(path: Path, text: str | bytes) -> None:
    if isinstance(text, str):
        text = text.encode("utf-8")
    path.write_bytes(text)


@dataclass
class RunResult:
    status: int
    message: str
    manifest: dict
    full: PerceptionGraph | None = None
    reduced: PerceptionGraph | None = None
    partition: object = None


def run_pipeline(cfg: PipelineConfig) -> RunResult:
    """Run everything and write the artifacts into ``cfg.out_dir``.

    Status is EXIT_OK, EXIT_STAGE_ERROR, or EXIT_EMPTY when nothing survives
    the reduction (partitioning is then skipped).
    """
    cfg.validate()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stages: dict = {}
    manifest = {"config": {**asdict(cfg), "export": list(cfg.export)},
                "versions": _versions(), "corpus_sha256": _sha256(cfg.input),
                "stages": stages}

    try:
        if cfg.format == "csv":
            items = list(load_csv(cfg.input, cfg.text_column))
        else:
            items = load_conllu(cfg.input)
    except Exception as e:  # noqa: BLE001
        return _finish(out, manifest, RunResult(EXIT_STAGE_ERROR, f"stage 'load' failed: {e}",
                                                manifest))
    stages["documents"] = len(items)

    res = load_resources(cfg)
    try:
        results = run_nlp(items, cfg, res)
    except StageError as e:
        return _finish(out, manifest, RunResult(EXIT_STAGE_ERROR, str(e), manifest))
    stages["tokens"] = sum(len(d) for d, _ in results)
    raw_pairs = [p for _, ps in results for p in ps]
    flt = cfg.conative_filter()
    stages["match_pairs"] = len(raw_pairs)
    stages["match_pairs_kept"] = sum(flt.keeps(p.modifier) for p in raw_pairs)

    try:
        full = graph_from_results(results, cfg)
    except Exception as e:  # noqa: BLE001
        return _finish(out, manifest, RunResult(EXIT_STAGE_ERROR, f"stage 'graph' failed: {e}",
                                                manifest))
    stages["full"] = full.counts()
    reduce_stages: dict = {}
    reduced = reduce_graph(full, ReduceParams(cfg.k_weight, cfg.k_core), reduce_stages)
    stages.update(reduce_stages)
    stages["reduced"] = reduced.counts()

    for fmt in cfg.export:
        _write(out / f"graph_full.{fmt}", export_graph(full, fmt).payload)
        _write(out / f"graph_reduced.{fmt}", export_graph(reduced, fmt).payload)
    _write(out / "report.csv", report_csv(semantic_relations_report(full)))

    result = RunResult(EXIT_OK, "ok", manifest, full, reduced)
    if not reduced.nodes:
        stages["communities"] = None
        result.status = EXIT_EMPTY
        result.message = (f"reduced graph is empty at k_weight={cfg.k_weight}, "
                          f"k_core={cfg.k_core}; partitioning skipped")
        return _finish(out, manifest, result)

    part = detect_communities(reduced, cfg.gamma, cfg.seed)
    census = community_pos_census(reduced, part)
    stages["communities"] = {"count": part.n_communities,
                             "noun_only": sum(r["noun_only"] for r in census),
                             "Q_raw": part.quality, "Q_normalized": part.q_normalized}
    _write(out / "partition.json", partition_json(reduced, part))
    result.partition = part
    return _finish(out, manifest, result)


def _finish(out: Path, manifest: dict, result: RunResult) -> RunResult:
    manifest["status"] = result.status
    manifest["message"] = result.message
    manifest["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    _write(out / "run_manifest.json", json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    return result
