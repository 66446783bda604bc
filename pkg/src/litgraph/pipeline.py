"""End-to-end pipeline: corpus to persisted graph snapshot.

All stage outputs are dumped as canonical line-delimited JSON next to the
graph, so every number in the summary can be recomputed from the dumps.
The run is idempotent: identical inputs produce byte-identical outputs.
"""

import json
import logging
import os
import shutil
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .corpus import document_to_record, load_corpus
from .evalharness import load_gold, run_evaluation
from .graphstore import build_graph, compute_stats, load_cnv_profiles, save_graph
from .matcher import match_document, mention_to_record
from .ontology import CATEGORIES, build_dictionary, hierarchy_edges, load_ontologies
from .scoring import aggregate, aggregate_to_record, compute_pair_scores, score_to_record
from .triples import extract_document, triple_to_record

logger = logging.getLogger(__name__)

# Conventional ontology file names inside an ontology directory.
ONTOLOGY_FILENAMES = {
    "Gene": "genes.jsonl",
    "CellLine": "celllines.jsonl",
    "Disease": "diseases.jsonl",
    "Anatomy": "anatomy.jsonl",
    "Cytoband": "cytobands.jsonl",
}


class PipelineError(Exception):
    def __init__(self, stage, cause):
        super().__init__(f"pipeline stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class PipelineConfig:
    corpus: str
    ontologies: dict                  # category -> path
    out_dir: str
    cnv_profiles: str = None
    top_k_markers: int = 5
    workers: int = 1
    log_level: str = "INFO"

    def validate(self):
        problems = []
        if not os.path.isfile(self.corpus):
            problems.append(f"corpus file not found: {self.corpus}")
        for category, path in sorted(self.ontologies.items()):
            if category not in CATEGORIES:
                problems.append(f"unknown ontology category {category!r}")
            elif not os.path.isfile(path):
                problems.append(f"ontology file not found: {path}")
        if self.cnv_profiles is not None and not os.path.isfile(self.cnv_profiles):
            problems.append(f"CNV profile file not found: {self.cnv_profiles}")
        if self.top_k_markers < 0:
            problems.append("top_k_markers must be >= 0")
        if self.workers < 1:
            problems.append("workers must be >= 1")
        if problems:
            raise PipelineError("config", "; ".join(problems))

    @classmethod
    def from_file(cls, path, **overrides):
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        base = os.path.dirname(os.path.abspath(path))

        def resolve(p):
            return p if p is None or os.path.isabs(p) else os.path.join(base, p)

        config = cls(
            corpus=resolve(raw.get("corpus")),
            ontologies={c: resolve(p) for c, p in raw.get("ontologies", {}).items()},
            out_dir=resolve(raw.get("out_dir")),
            cnv_profiles=resolve(raw.get("cnv_profiles")),
            top_k_markers=int(raw.get("top_k_markers", 5)),
            workers=int(raw.get("workers", 1)),
            log_level=raw.get("log_level", "INFO"),
        )
        for key, value in overrides.items():
            if value is not None:
                setattr(config, key, value)
        return config


@dataclass
class PipelineSummary:
    stats: dict
    dictionary: dict
    counts: dict = field(default_factory=dict)

    def to_dict(self):
        return {"stats": self.stats, "dictionary": self.dictionary, "counts": self.counts}


def ontology_paths_for_dir(directory):
    paths = {}
    for category, name in ONTOLOGY_FILENAMES.items():
        path = os.path.join(directory, name)
        if os.path.isfile(path):
            paths[category] = path
    return paths


def _dump_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True, separators=(",", ":"),
                                ensure_ascii=True))
            fh.write("\n")


def _process_document(doc, dictionary):
    mentions = match_document(doc, dictionary)
    extraction = extract_document(doc, dictionary)
    scores = compute_pair_scores(doc, mentions, extraction.triples)
    return mentions, extraction, scores


def run_pipeline(config):
    """Execute ingest through graph persistence; returns the run summary."""
    config.validate()
    tmp_dir = config.out_dir.rstrip("/\\") + ".tmp"
    if os.path.exists(tmp_dir):
        shutil.rmtree(tmp_dir)
    os.makedirs(tmp_dir)

    stage = "ingest"
    try:
        load = load_corpus(config.corpus)
        documents = load.documents

        stage = "dictionary"
        entities = load_ontologies(config.ontologies)
        dictionary = build_dictionary(entities)

        stage = "extract"
        if config.workers > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                results = list(pool.map(
                    lambda d: _process_document(d, dictionary), documents
                ))
        else:
            results = [_process_document(d, dictionary) for d in documents]

        mentions = []
        triples = []
        scores = []
        skipped_sentences = 0
        for doc_mentions, extraction, doc_scores in results:
            mentions.extend(doc_mentions)
            triples.extend(extraction.triples)
            scores.extend(doc_scores)
            skipped_sentences += extraction.skipped_sentences

        stage = "aggregate"
        relations = aggregate(scores)

        stage = "graph"
        hierarchy = hierarchy_edges(entities)
        graph = build_graph(mentions, triples, relations, hierarchy,
                            entities, documents)
        if config.cnv_profiles:
            # validated here so a bad profile file fails the run
            load_cnv_profiles(config.cnv_profiles)

        stage = "persist"
        _dump_jsonl(os.path.join(tmp_dir, "documents.jsonl"),
                    (document_to_record(d) for d in documents))
        _dump_jsonl(os.path.join(tmp_dir, "mentions.jsonl"),
                    (mention_to_record(m) for m in mentions))
        _dump_jsonl(os.path.join(tmp_dir, "triples.jsonl"),
                    (triple_to_record(t) for t in triples))
        _dump_jsonl(os.path.join(tmp_dir, "scores.jsonl"),
                    (score_to_record(s) for s in scores))
        _dump_jsonl(os.path.join(tmp_dir, "aggregates.jsonl"),
                    (aggregate_to_record(r) for r in relations))
        save_graph(graph, os.path.join(tmp_dir, "graph"))

        summary = PipelineSummary(
            stats=graph.stats.to_dict(),
            dictionary=dictionary.stats(),
            counts={
                "skipped_corpus_records": load.skip_count,
                "empty_abstracts": load.empty_abstracts,
                "skipped_long_sentences": skipped_sentences,
                "mentions": len(mentions),
                "triples": len(triples),
                "linked_triples": sum(1 for t in triples if t.is_linked),
                "pair_scores": len(scores),
                "aggregated_relations": len(relations),
            },
        )
        with open(os.path.join(tmp_dir, "summary.json"), "w", encoding="utf-8") as fh:
            json.dump(summary.to_dict(), fh, sort_keys=True, indent=2)
            fh.write("\n")
    except Exception as exc:
        shutil.rmtree(tmp_dir, ignore_errors=True)
        if isinstance(exc, PipelineError):
            raise
        raise PipelineError(stage, exc) from exc

    # swap the finished snapshot into place
    if os.path.exists(config.out_dir):
        shutil.rmtree(config.out_dir)
    os.rename(tmp_dir, config.out_dir)
    logger.info("pipeline finished: %s", config.out_dir)
    return summary


def run_gold_evaluation(corpus_path, gold_path, ontology_paths):
    """Match a gold corpus and score it against its annotations."""
    documents = load_corpus(corpus_path).documents
    entities = load_ontologies(ontology_paths)
    dictionary = build_dictionary(entities)
    mentions = []
    for doc in documents:
        mentions.extend(match_document(doc, dictionary))
    gold = load_gold(gold_path, documents=documents)
    return run_evaluation(documents, mentions, gold, dictionary)
