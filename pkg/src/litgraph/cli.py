"""Command line interface.

Subcommands mirror the pipeline stages (ingest, dict, extract, score,
graph, eval), plus `run` for the whole pipeline and `serve` for the query
service. Every data option accepts --demo to fall back to the bundled
fixture corpus and ontologies.
"""

import argparse
import json
import logging
import sys

from . import demo
from .corpus import document_to_record, load_corpus
from .evalharness import load_gold, run_evaluation
from .graphstore import load_graph
from .matcher import match_document, mention_to_record
from .ontology import build_dictionary, load_ontologies
from .pipeline import (
    PipelineConfig,
    PipelineError,
    ontology_paths_for_dir,
    run_pipeline,
)
from .scoring import aggregate, aggregate_to_record, compute_pair_scores, score_to_record
from .service import BIND_ENV_VAR, DEFAULT_BIND, serve
from .triples import extract_document, triple_to_record


def _write_jsonl(path, records):
    out = sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8")
    try:
        for record in records:
            out.write(json.dumps(record, sort_keys=True, separators=(",", ":")))
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _ontology_paths(args):
    if getattr(args, "demo", False):
        return demo.demo_ontology_paths()
    paths = {}
    if getattr(args, "ontology_dir", None):
        paths.update(ontology_paths_for_dir(args.ontology_dir))
    for item in getattr(args, "ontology", None) or []:
        category, _, path = item.partition("=")
        if not path:
            raise SystemExit(f"--ontology expects CATEGORY=PATH, got {item!r}")
        paths[category] = path
    if not paths:
        raise SystemExit("no ontologies given; use --ontology, --ontology-dir or --demo")
    return paths


def _corpus_path(args):
    if getattr(args, "demo", False) and not args.corpus:
        return demo.demo_corpus_path()
    if not args.corpus:
        raise SystemExit("no corpus given; use --corpus or --demo")
    return args.corpus


def _load_matched(args):
    documents = load_corpus(_corpus_path(args)).documents
    dictionary = build_dictionary(load_ontologies(_ontology_paths(args)))
    return documents, dictionary


def cmd_ingest(args):
    load = load_corpus(_corpus_path(args))
    _write_jsonl(args.out, (document_to_record(d) for d in load.documents))
    print(
        f"ingested {len(load.documents)} documents "
        f"({load.skip_count} skipped, {load.empty_abstracts} empty abstracts)",
        file=sys.stderr,
    )
    return 0


def cmd_dict(args):
    dictionary = build_dictionary(load_ontologies(_ontology_paths(args)))
    stats = dictionary.stats()
    if args.action == "stats":
        print(f"{'category':<10} {'entities':>9} {'forms':>7}")
        for category, row in stats["per_category"].items():
            print(f"{category:<10} {row['entities']:>9} {row['forms']:>7}")
        print(f"{'total':<10} {stats['total_entities']:>9} {stats['total_forms']:>7}")
        if stats["skipped_long_forms"]:
            print(f"skipped over-long forms: {stats['skipped_long_forms']}")
    return 0


def cmd_extract(args):
    documents, dictionary = _load_matched(args)
    mentions = []
    triples = []
    for doc in documents:
        mentions.extend(match_document(doc, dictionary))
        triples.extend(extract_document(doc, dictionary).triples)
    if args.mentions_out:
        _write_jsonl(args.mentions_out, (mention_to_record(m) for m in mentions))
    if args.triples_out:
        _write_jsonl(args.triples_out, (triple_to_record(t) for t in triples))
    print(f"{len(mentions)} mentions, {len(triples)} triples", file=sys.stderr)
    return 0


def cmd_score(args):
    documents, dictionary = _load_matched(args)
    scores = []
    for doc in documents:
        mentions = match_document(doc, dictionary)
        triples = extract_document(doc, dictionary).triples
        scores.extend(compute_pair_scores(doc, mentions, triples))
    relations = aggregate(scores)
    if args.scores_out:
        _write_jsonl(args.scores_out, (score_to_record(s) for s in scores))
    if args.aggregates_out:
        _write_jsonl(args.aggregates_out, (aggregate_to_record(r) for r in relations))
    print(f"{len(scores)} pair scores, {len(relations)} relations", file=sys.stderr)
    return 0


def cmd_graph(args):
    if args.action == "stats":
        graph = load_graph(args.graph)
        stats = graph.stats.to_dict()
        labels = {
            "number_of_abstracts": "Number of Abstracts",
            "total_entity_matches": "Total Entity Matches",
            "unique_entity_matches": "Unique Entity Matches",
            "unique_cell_lines": "Unique Cell Lines",
            "abstracts_per_cell_line": "Abstracts per Cell Line",
            "linked_entities_per_cell_line": "Linked Entities per Cell Line",
        }
        for key, label in labels.items():
            value = stats[key]
            if isinstance(value, float):
                value = f"{value:.3f}"
            print(f"{label:<32} {value}")
        if args.json:
            print(json.dumps(stats, sort_keys=True))
    return 0


def cmd_eval(args):
    corpus = args.corpus or (demo.mini_gold_corpus_path() if args.demo else None)
    gold_path = args.gold or (demo.mini_gold_path() if args.demo else None)
    if not corpus or not gold_path:
        raise SystemExit("eval needs --corpus and --gold (or --demo)")
    documents = load_corpus(corpus).documents
    dictionary = build_dictionary(load_ontologies(_ontology_paths(args)))
    mentions = []
    for doc in documents:
        mentions.extend(match_document(doc, dictionary))
    gold = load_gold(gold_path, documents=documents)
    report = run_evaluation(documents, mentions, gold, dictionary)
    print(report.format_table())
    if args.report_out:
        with open(args.report_out, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, sort_keys=True, indent=2)
            fh.write("\n")
    return 0


def cmd_run(args):
    if args.config:
        config = PipelineConfig.from_file(
            args.config,
            corpus=args.corpus,
            out_dir=args.out_dir,
            cnv_profiles=args.profiles,
            workers=args.workers,
        )
    else:
        config = PipelineConfig(
            corpus=args.corpus or (demo.demo_corpus_path() if args.demo else None),
            ontologies=_ontology_paths(args),
            out_dir=args.out_dir,
            cnv_profiles=args.profiles or (demo.demo_profiles_path() if args.demo else None),
            workers=args.workers or 1,
        )
    if not config.out_dir:
        raise SystemExit("run needs --out-dir")
    try:
        summary = run_pipeline(config)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(summary.to_dict(), sort_keys=True, indent=2))
    return 0


def cmd_serve(args):
    profiles = args.profiles or (demo.demo_profiles_path() if args.demo else None)
    serve(args.graph, profiles, bind=args.bind, static_dir=args.static_dir)
    return 0


def _add_ontology_options(parser):
    parser.add_argument("--ontology", action="append", metavar="CATEGORY=PATH",
                        help="ontology file for one category (repeatable)")
    parser.add_argument("--ontology-dir", help="directory with conventional ontology file names")
    parser.add_argument("--demo", action="store_true",
                        help="use the bundled demo corpus and fixture ontologies")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="litgraph",
        description="literature-derived entity graphs for cancer cell line genomics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="tokenize a corpus file and dump documents")
    p.add_argument("--corpus")
    p.add_argument("--out", help="output path for document records (- for stdout)")
    p.add_argument("--demo", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("dict", help="build the entity dictionary and report stats")
    p.add_argument("action", choices=["stats"])
    _add_ontology_options(p)
    p.set_defaults(func=cmd_dict)

    p = sub.add_parser("extract", help="dump entity mentions and triples")
    p.add_argument("--corpus")
    _add_ontology_options(p)
    p.add_argument("--mentions-out")
    p.add_argument("--triples-out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("score", help="dump pair scores and aggregated relations")
    p.add_argument("--corpus")
    _add_ontology_options(p)
    p.add_argument("--scores-out")
    p.add_argument("--aggregates-out")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("graph", help="inspect a persisted graph snapshot")
    p.add_argument("action", choices=["stats"])
    p.add_argument("--graph", required=True, help="graph snapshot directory")
    p.add_argument("--json", action="store_true", help="also print machine-readable stats")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("eval", help="evaluate extraction against a gold file")
    p.add_argument("--corpus")
    p.add_argument("--gold")
    _add_ontology_options(p)
    p.add_argument("--report-out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("run", help="run the full pipeline")
    p.add_argument("--config", help="pipeline config file (JSON)")
    p.add_argument("--corpus")
    _add_ontology_options(p)
    p.add_argument("--profiles", help="CNV profile file")
    p.add_argument("--out-dir")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("serve", help="serve the read-only query API")
    p.add_argument("--graph", required=True, help="graph snapshot directory")
    p.add_argument("--profiles")
    p.add_argument("--demo", action="store_true",
                   help="use the bundled demo CNV profiles")
    p.add_argument("--bind", help=f"HOST:PORT (default {DEFAULT_BIND}, "
                                  f"or ${BIND_ENV_VAR})")
    p.add_argument("--static-dir", help="directory with the UI bundle to serve at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, "INFO"),
        format="%(levelname)s %(name)s: %(message)s",
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
