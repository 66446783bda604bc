"""Benchmark harness for gene / cell line extraction quality.

Gold files use a small adapter format (one JSON record per document with
annotated entity spans); a converter from any upstream benchmark release is
a separate utility. Pairs are derived by co-annotation: a gene and a cell
line annotated in the same abstract count as a gold relationship pair.
"""

import json
import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

EVAL_CATEGORIES = ("Gene", "CellLine")


class GoldError(Exception):
    pass


@dataclass
class GoldAnnotation:
    doc_id: str
    spans: list                  # [(start, end, category, entity_id)]

    @property
    def pairs(self):
        """Co-annotation rule: every annotated gene pairs with every cell line."""
        genes = sorted({e for _, _, c, e in self.spans if c == "Gene"})
        lines = sorted({e for _, _, c, e in self.spans if c == "CellLine"})
        return {(g, l) for g in genes for l in lines}


@dataclass
class MetricBlock:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self):
        denom = self.tp + self.fp
        return self.tp / denom if denom else 0.0

    @property
    def recall(self):
        denom = self.tp + self.fn
        return self.tp / denom if denom else 0.0

    @property
    def f1(self):
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if (p + r) else 0.0

    def to_dict(self):
        return {
            "tp": self.tp, "fp": self.fp, "fn": self.fn,
            "precision": self.precision, "recall": self.recall, "f1": self.f1,
        }


@dataclass
class EvalReport:
    pair: MetricBlock = field(default_factory=MetricBlock)
    ner: dict = field(default_factory=dict)          # category -> MetricBlock
    per_document: dict = field(default_factory=dict)
    excluded_gold_entities: list = field(default_factory=list)

    def to_dict(self):
        return {
            "pair": self.pair.to_dict(),
            "ner": {c: m.to_dict() for c, m in sorted(self.ner.items())},
            "per_document": {
                d: m.to_dict() for d, m in sorted(self.per_document.items())
            },
            "excluded_gold_entities": list(self.excluded_gold_entities),
        }

    def format_table(self):
        lines = ["metric            P       R       F1      TP   FP   FN"]
        rows = [("pairs", self.pair)]
        rows += [(f"ner {c.lower()}", m) for c, m in sorted(self.ner.items())]
        for name, m in rows:
            lines.append(
                f"{name:<15} {m.precision:7.4f} {m.recall:7.4f} {m.f1:7.4f}"
                f"  {m.tp:4d} {m.fp:4d} {m.fn:4d}"
            )
        if self.excluded_gold_entities:
            lines.append(
                f"excluded gold entities: {len(self.excluded_gold_entities)}"
            )
        return "\n".join(lines)


def load_gold(path, documents=None):
    """Read gold annotations; spans are token indices into our tokenization.

    When documents are supplied, spans outside the document's token range
    are per-record errors: the offending record is skipped with a warning.
    """
    doc_index = {d.doc_id: d for d in documents} if documents is not None else None
    annotations = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise GoldError(f"{path}:{line_no}: bad JSON: {exc.msg}") from None
            doc_id = record["doc_id"]
            spans = []
            bad = None
            for span in record.get("spans", []):
                start, end = int(span["start"]), int(span["end"])
                category = span["category"]
                if category not in EVAL_CATEGORIES:
                    bad = f"unknown category {category!r}"
                    break
                if start < 0 or end <= start:
                    bad = f"degenerate span [{start}, {end})"
                    break
                if doc_index is not None:
                    doc = doc_index.get(doc_id)
                    if doc is None:
                        bad = f"unknown doc_id {doc_id!r}"
                        break
                    if end > len(doc.tokens):
                        bad = f"span [{start}, {end}) outside document bounds"
                        break
                spans.append((start, end, category, span["entity_id"]))
            if bad:
                logger.warning("%s:%d: %s; record skipped", path, line_no, bad)
                continue
            annotations.append(GoldAnnotation(doc_id, spans))
    return annotations


def align_gold(annotations, dictionary):
    """Drop gold spans whose entity id our ontologies do not know.

    Returns the filtered annotations and the sorted list of excluded ids, so
    the report can state how much of the gold set was out of reach.
    """
    excluded = set()
    aligned = []
    for ann in annotations:
        keep = []
        for span in ann.spans:
            if span[3] in dictionary.entities:
                keep.append(span)
            else:
                excluded.add(span[3])
        aligned.append(GoldAnnotation(ann.doc_id, keep))
    return aligned, sorted(excluded)


def predicted_pairs_from_mentions(mentions):
    """Document-level (doc, gene, cell line) pairs implied by the mentions."""
    genes = {}
    lines = {}
    for m in mentions:
        if m.category == "Gene":
            genes.setdefault(m.doc_id, set()).add(m.entity_id)
        elif m.category == "CellLine":
            lines.setdefault(m.doc_id, set()).add(m.entity_id)
    pairs = set()
    for doc_id in genes.keys() & lines.keys():
        for g in genes[doc_id]:
            for l in lines[doc_id]:
                pairs.add((doc_id, g, l))
    return pairs


def evaluate_pairs(predicted, gold):
    """Micro-averaged P/R/F1 of document-level entity pairs, exact matching."""
    gold_pairs = set()
    gold_docs = set()
    for ann in gold:
        gold_docs.add(ann.doc_id)
        for g, l in ann.pairs:
            gold_pairs.add((ann.doc_id, g, l))
    report = EvalReport()
    for doc_id, g, l in sorted(predicted):
        if doc_id not in gold_docs:
            logger.warning("prediction for unknown doc %s counted as FP", doc_id)
    per_doc = {}
    tp = predicted & gold_pairs
    fp = predicted - gold_pairs
    fn = gold_pairs - predicted
    report.pair = MetricBlock(len(tp), len(fp), len(fn))
    for bucket, attr in ((tp, "tp"), (fp, "fp"), (fn, "fn")):
        for doc_id, _, _ in bucket:
            block = per_doc.setdefault(doc_id, MetricBlock())
            setattr(block, attr, getattr(block, attr) + 1)
    report.per_document = per_doc
    return report


def evaluate_ner(predicted_mentions, gold):
    """Strict span-level NER scores per category.

    A predicted span counts only when (doc, start, end, category) matches a
    gold span exactly; boundary errors produce both a FP and a FN.
    """
    gold_spans = {c: set() for c in EVAL_CATEGORIES}
    for ann in gold:
        for start, end, category, _ in ann.spans:
            gold_spans[category].add((ann.doc_id, start, end))
    predicted = {c: set() for c in EVAL_CATEGORIES}
    for m in predicted_mentions:
        if m.category in predicted:
            predicted[m.category].add((m.doc_id, m.start, m.end))
    report = EvalReport()
    for category in EVAL_CATEGORIES:
        tp = predicted[category] & gold_spans[category]
        fp = predicted[category] - gold_spans[category]
        fn = gold_spans[category] - predicted[category]
        report.ner[category] = MetricBlock(len(tp), len(fp), len(fn))
    return report


def run_evaluation(documents, mentions, gold, dictionary):
    """Full harness: align gold, score pairs and NER, merge into one report."""
    aligned, excluded = align_gold(gold, dictionary)
    predicted = predicted_pairs_from_mentions(mentions)
    report = evaluate_pairs(predicted, aligned)
    ner = evaluate_ner(mentions, aligned)
    report.ner = ner.ner
    report.excluded_gold_entities = excluded
    return report
