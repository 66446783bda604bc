"""Entity graph: text-derived relation edges, ontology hierarchy and CNV joins.

The graph is an immutable snapshot. Every edge is traceable either to
document evidence (TextRelation, one per aggregated pair) or to an ontology
parent list (ParentOf); nothing is ever inferred from the graph itself.
Persistence uses canonical line-delimited JSON so that two runs over the
same inputs serialize byte-identically.
"""

import json
import math
import os
from dataclasses import dataclass, field

from .ontology import CHROMOSOMES, GenomicInterval
from .scoring import supporting_triples

TEXT_RELATION = "TextRelation"
PARENT_OF = "ParentOf"

GRAPH_FORMAT = "litgraph.graph"
GRAPH_VERSION = 1

_META_FILE = "meta.json"
_NODES_FILE = "nodes.jsonl"
_EDGES_FILE = "edges.jsonl"
_EVIDENCE_FILE = "evidence.jsonl"


class GraphError(Exception):
    pass


class UnknownEntityError(GraphError):
    pass


class GraphCorruptionError(GraphError):
    pass


class CnvError(Exception):
    pass


@dataclass
class GraphNode:
    entity_id: str
    category: str
    canonical_name: str
    synonyms: list = field(default_factory=list)
    genomic_location: GenomicInterval = None


@dataclass
class GraphEdge:
    kind: str
    entity_a: str
    entity_b: str
    corpus_score: float = 0.0
    predicate_heads: list = field(default_factory=list)
    n_evidence: int = 0


@dataclass
class EvidenceRecord:
    doc_id: str
    title: str
    body: str
    total: float
    distance_score: float
    triple_bonus: int
    has_triple: bool
    sentence_char_span: tuple      # (start, end) into body
    marks: list                    # [(char_start, char_end, entity_id)]


@dataclass
class CnvProfile:
    cell_line_id: str
    sample_count: int
    bins: list                     # [(GenomicInterval, gain_freq, loss_freq)]


@dataclass
class AnnotatedProfile:
    profile: CnvProfile
    markers: list                  # [(entity_id, GenomicInterval, corpus_score)]


@dataclass
class TableStats:
    """The six corpus statistics reported by `graph stats`."""
    number_of_abstracts: int
    total_entity_matches: int
    unique_entity_matches: int
    unique_cell_lines: int
    abstracts_per_cell_line: float
    linked_entities_per_cell_line: float

    def to_dict(self):
        return {
            "number_of_abstracts": self.number_of_abstracts,
            "total_entity_matches": self.total_entity_matches,
            "unique_entity_matches": self.unique_entity_matches,
            "unique_cell_lines": self.unique_cell_lines,
            "abstracts_per_cell_line": self.abstracts_per_cell_line,
            "linked_entities_per_cell_line": self.linked_entities_per_cell_line,
        }


def _pair_key(a, b):
    return (a, b) if a <= b else (b, a)


class Graph:
    def __init__(self, nodes, edges, evidence, stats):
        self.nodes = nodes                  # entity_id -> GraphNode
        self.edges = edges                  # [GraphEdge]
        self.evidence = evidence            # (a, b) -> [EvidenceRecord]
        self.stats = stats
        self._partners = {}
        for edge in edges:
            if edge.kind != TEXT_RELATION:
                continue
            self._partners.setdefault(edge.entity_a, []).append(edge)
            self._partners.setdefault(edge.entity_b, []).append(edge)

    def require(self, entity_id):
        try:
            return self.nodes[entity_id]
        except KeyError:
            raise UnknownEntityError(f"unknown entity {entity_id!r}") from None

    def cell_lines(self):
        lines = [n for n in self.nodes.values() if n.category == "CellLine"]
        lines.sort(key=lambda n: n.entity_id)
        return lines

    def ranked_partners(self, cell_line, category_filter=None, limit=None):
        """TextRelation partners sorted by corpus score, ties by identity."""
        self.require(cell_line)
        ranked = []
        for edge in self._partners.get(cell_line, []):
            partner = edge.entity_b if edge.entity_a == cell_line else edge.entity_a
            node = self.nodes[partner]
            if category_filter and node.category != category_filter:
                continue
            ranked.append((node, edge))
        ranked.sort(key=lambda pe: (-pe[1].corpus_score, pe[0].category, pe[0].entity_id))
        if limit is not None:
            ranked = ranked[:limit]
        return ranked

    def evidence_for(self, cell_line, partner):
        self.require(cell_line)
        self.require(partner)
        key = _pair_key(cell_line, partner)
        if key not in self.evidence:
            raise UnknownEntityError(f"no relation between {cell_line} and {partner}")
        return self.evidence[key]

    def annotate_profile(self, profile, cell_line, top_k):
        """Pin the top ranked located Gene/Cytoband partners onto a profile."""
        if profile.cell_line_id != cell_line:
            raise GraphError(
                f"profile belongs to {profile.cell_line_id}, not {cell_line}"
            )
        markers = []
        if top_k > 0:
            for node, edge in self.ranked_partners(cell_line):
                if node.category not in ("Gene", "Cytoband"):
                    continue
                if node.genomic_location is None:
                    continue
                markers.append((node.entity_id, node.genomic_location, edge.corpus_score))
                if len(markers) >= top_k:
                    break
        return AnnotatedProfile(profile, markers)


def compute_stats(documents, mentions, edges):
    """Corpus statistics over one pipeline run's artifacts.

    Per-cell-line ratios average over cell lines with at least one linked
    abstract (resp. at least one relation edge).
    """
    docs_per_line = {}
    for m in mentions:
        if m.category == "CellLine":
            docs_per_line.setdefault(m.entity_id, set()).add(m.doc_id)
    partners_per_line = {}
    for edge in edges:
        if edge.kind != TEXT_RELATION:
            continue
        for a, b in ((edge.entity_a, edge.entity_b), (edge.entity_b, edge.entity_a)):
            partners_per_line.setdefault(a, set()).add(b)
    cell_line_partner_counts = [
        len(partners) for line, partners in partners_per_line.items()
        if line in docs_per_line
    ]
    abstracts_per_line = (
        math.fsum(len(d) for d in docs_per_line.values()) / len(docs_per_line)
        if docs_per_line else 0.0
    )
    linked_per_line = (
        math.fsum(cell_line_partner_counts) / len(cell_line_partner_counts)
        if cell_line_partner_counts else 0.0
    )
    return TableStats(
        number_of_abstracts=len(documents),
        total_entity_matches=len(mentions),
        unique_entity_matches=len({m.entity_id for m in mentions}),
        unique_cell_lines=len(docs_per_line),
        abstracts_per_cell_line=abstracts_per_line,
        linked_entities_per_cell_line=linked_per_line,
    )


def _evidence_records(relation, documents, mentions_by_doc, triples_by_doc):
    pair = {relation.entity_a, relation.entity_b}
    records = []
    for ev in relation.evidence:
        doc = documents[ev.doc_id]
        marks = []
        for m in mentions_by_doc.get(ev.doc_id, []):
            if m.entity_id in pair:
                lo, hi = m.token_span
                marks.append(
                    (doc.tokens[lo].char_start, doc.tokens[hi - 1].char_end, m.entity_id)
                )
        marks.sort()
        lo, hi = ev.sentence_span
        sentence_chars = (doc.tokens[lo].char_start, doc.tokens[hi - 1].char_end)
        records.append(
            EvidenceRecord(
                doc_id=ev.doc_id,
                title=doc.title,
                body=doc.body,
                total=ev.total,
                distance_score=ev.distance_score,
                triple_bonus=ev.triple_bonus,
                has_triple=ev.has_triple,
                sentence_char_span=sentence_chars,
                marks=marks,
            )
        )
    return records


def build_graph(mentions, triples, aggregates, hierarchy, entities, documents):
    """Assemble the graph snapshot from one pipeline run's artifacts.

    Nodes exist only for entities with at least one mention or hierarchy
    edge; edge counts are exactly |aggregates| + |hierarchy|.
    """
    entity_index = {e.entity_id: e for e in entities}
    doc_index = {d.doc_id: d for d in documents}

    node_ids = {m.entity_id for m in mentions}
    for parent, child in hierarchy:
        node_ids.add(parent)
        node_ids.add(child)

    nodes = {}
    for entity_id in sorted(node_ids):
        entity = entity_index.get(entity_id)
        if entity is None:
            raise GraphError(f"edge or mention references unknown entity {entity_id!r}")
        nodes[entity_id] = GraphNode(
            entity_id=entity_id,
            category=entity.category,
            canonical_name=entity.canonical_name,
            synonyms=list(entity.synonyms),
            genomic_location=entity.genomic_location,
        )

    triples_by_doc = {}
    for t in triples:
        triples_by_doc.setdefault(t.doc_id, []).append(t)
    mentions_by_doc = {}
    for m in mentions:
        mentions_by_doc.setdefault(m.doc_id, []).append(m)

    edges = []
    evidence = {}
    for relation in aggregates:
        for endpoint in (relation.entity_a, relation.entity_b):
            if endpoint not in nodes:
                raise GraphError(f"relation references unknown node {endpoint!r}")
        heads = set()
        for doc_id in {e.doc_id for e in relation.evidence}:
            for t in supporting_triples(
                triples_by_doc.get(doc_id, []), relation.entity_a, relation.entity_b
            ):
                heads.add(t.predicate.head)
        edges.append(
            GraphEdge(
                kind=TEXT_RELATION,
                entity_a=relation.entity_a,
                entity_b=relation.entity_b,
                corpus_score=relation.corpus_score,
                predicate_heads=sorted(heads),
                n_evidence=len(relation.evidence),
            )
        )
        evidence[(relation.entity_a, relation.entity_b)] = _evidence_records(
            relation, doc_index, mentions_by_doc, triples_by_doc
        )
    for parent, child in sorted(hierarchy):
        edges.append(GraphEdge(kind=PARENT_OF, entity_a=parent, entity_b=child))

    edges.sort(key=lambda e: (e.kind, e.entity_a, e.entity_b))
    stats = compute_stats(documents, mentions, edges)
    return Graph(nodes, edges, evidence, stats)


# ---------------------------------------------------------------------------
# persistence

def _dump(record):
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _node_record(node):
    return {
        "entity_id": node.entity_id,
        "category": node.category,
        "canonical_name": node.canonical_name,
        "synonyms": node.synonyms,
        "location": None if node.genomic_location is None else {
            "chromosome": node.genomic_location.chromosome,
            "start": node.genomic_location.start,
            "end": node.genomic_location.end,
        },
    }


def _edge_record(edge):
    return {
        "kind": edge.kind,
        "entity_a": edge.entity_a,
        "entity_b": edge.entity_b,
        "corpus_score": edge.corpus_score,
        "predicate_heads": edge.predicate_heads,
        "n_evidence": edge.n_evidence,
    }


def _evidence_record(pair, rank, record):
    return {
        "entity_a": pair[0],
        "entity_b": pair[1],
        "rank": rank,
        "doc_id": record.doc_id,
        "title": record.title,
        "body": record.body,
        "total": record.total,
        "distance_score": record.distance_score,
        "triple_bonus": record.triple_bonus,
        "has_triple": record.has_triple,
        "sentence": list(record.sentence_char_span),
        "marks": [list(m) for m in record.marks],
    }


def save_graph(graph, path):
    """Write the snapshot as meta + three canonical line-delimited files."""
    os.makedirs(path, exist_ok=True)
    node_lines = [_dump(_node_record(n)) for _, n in sorted(graph.nodes.items())]
    edge_lines = [_dump(_edge_record(e)) for e in graph.edges]
    evidence_lines = []
    for pair in sorted(graph.evidence):
        for rank, record in enumerate(graph.evidence[pair]):
            evidence_lines.append(_dump(_evidence_record(pair, rank, record)))
    meta = {
        "format": GRAPH_FORMAT,
        "version": GRAPH_VERSION,
        "counts": {
            "nodes": len(node_lines),
            "edges": len(edge_lines),
            "evidence": len(evidence_lines),
        },
        "stats": graph.stats.to_dict(),
    }
    files = {
        _META_FILE: _dump(meta) + "\n",
        _NODES_FILE: "".join(line + "\n" for line in node_lines),
        _EDGES_FILE: "".join(line + "\n" for line in edge_lines),
        _EVIDENCE_FILE: "".join(line + "\n" for line in evidence_lines),
    }
    for name, content in files.items():
        with open(os.path.join(path, name), "w", encoding="utf-8") as fh:
            fh.write(content)


def _read_jsonl(path, expected, what):
    records = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    records.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise GraphCorruptionError(f"{path}: bad record: {exc.msg}") from None
    except OSError as exc:
        raise GraphCorruptionError(f"cannot read {path}: {exc}") from None
    if len(records) != expected:
        raise GraphCorruptionError(
            f"{path}: expected {expected} {what} records, found {len(records)}"
        )
    return records


def load_graph(path):
    """Load a persisted snapshot; corrupt or truncated files fail loudly."""
    meta_path = os.path.join(path, _META_FILE)
    try:
        with open(meta_path, "r", encoding="utf-8") as fh:
            meta = json.load(fh)
    except OSError as exc:
        raise GraphCorruptionError(f"cannot read {meta_path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise GraphCorruptionError(f"{meta_path}: bad JSON: {exc.msg}") from None
    if meta.get("format") != GRAPH_FORMAT:
        raise GraphCorruptionError(f"{meta_path}: not a graph snapshot")
    if meta.get("version") != GRAPH_VERSION:
        raise GraphError(
            f"unsupported graph version {meta.get('version')!r}, "
            f"expected {GRAPH_VERSION}"
        )
    counts = meta["counts"]

    nodes = {}
    for rec in _read_jsonl(os.path.join(path, _NODES_FILE), counts["nodes"], "node"):
        location = None
        if rec["location"] is not None:
            loc = rec["location"]
            location = GenomicInterval(loc["chromosome"], loc["start"], loc["end"])
        nodes[rec["entity_id"]] = GraphNode(
            entity_id=rec["entity_id"],
            category=rec["category"],
            canonical_name=rec["canonical_name"],
            synonyms=list(rec["synonyms"]),
            genomic_location=location,
        )

    edges = []
    for rec in _read_jsonl(os.path.join(path, _EDGES_FILE), counts["edges"], "edge"):
        edges.append(
            GraphEdge(
                kind=rec["kind"],
                entity_a=rec["entity_a"],
                entity_b=rec["entity_b"],
                corpus_score=rec["corpus_score"],
                predicate_heads=list(rec["predicate_heads"]),
                n_evidence=rec["n_evidence"],
            )
        )

    evidence = {}
    for rec in _read_jsonl(
        os.path.join(path, _EVIDENCE_FILE), counts["evidence"], "evidence"
    ):
        key = (rec["entity_a"], rec["entity_b"])
        evidence.setdefault(key, []).append(
            (
                rec["rank"],
                EvidenceRecord(
                    doc_id=rec["doc_id"],
                    title=rec["title"],
                    body=rec["body"],
                    total=rec["total"],
                    distance_score=rec["distance_score"],
                    triple_bonus=rec["triple_bonus"],
                    has_triple=rec["has_triple"],
                    sentence_char_span=tuple(rec["sentence"]),
                    marks=[tuple(m) for m in rec["marks"]],
                ),
            )
        )
    ordered = {
        key: [record for _, record in sorted(items, key=lambda x: x[0])]
        for key, items in evidence.items()
    }
    stats = TableStats(**meta["stats"])
    return Graph(nodes, edges, ordered, stats)


# ---------------------------------------------------------------------------
# CNV profiles

_CHROM_ORDER = {c: i for i, c in enumerate(CHROMOSOMES)}


def load_cnv_profiles(path):
    """Read CNV profiles: one header record per cell line, then bin records."""
    profiles = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CnvError(f"{path}:{line_no}: bad JSON: {exc.msg}") from None
            kind = rec.get("record")
            if kind == "profile":
                cell_line = rec["cell_line_id"]
                if cell_line in profiles:
                    raise CnvError(f"{path}:{line_no}: duplicate profile {cell_line}")
                profiles[cell_line] = CnvProfile(cell_line, int(rec["sample_count"]), [])
            elif kind == "bin":
                cell_line = rec["cell_line_id"]
                if cell_line not in profiles:
                    raise CnvError(
                        f"{path}:{line_no}: bin for {cell_line} before its profile record"
                    )
                gain = float(rec["gain_frequency"])
                loss = float(rec["loss_frequency"])
                if not (0.0 <= gain <= 1.0 and 0.0 <= loss <= 1.0):
                    raise CnvError(f"{path}:{line_no}: frequency outside [0, 1]")
                interval = GenomicInterval(str(rec["chromosome"]), int(rec["start"]), int(rec["end"]))
                profiles[cell_line].bins.append((interval, gain, loss))
            else:
                raise CnvError(f"{path}:{line_no}: unknown record kind {kind!r}")
    for profile in profiles.values():
        profile.bins.sort(key=lambda b: (_CHROM_ORDER[b[0].chromosome], b[0].start))
        for (a, _, _), (b, _, _) in zip(profile.bins, profile.bins[1:]):
            if a.chromosome == b.chromosome and b.start < a.end:
                raise CnvError(
                    f"overlapping bins on chr{a.chromosome} for {profile.cell_line_id}"
                )
    return profiles
