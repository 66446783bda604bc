"""Pair relationship scoring and corpus-level aggregation.

Co-occurrence strength between two entities in one abstract is the sum over
all mention pairs of the inverse base-2 logarithm of their token distance
plus one. Distance counts the tokens separating the two spans plus one, so
adjacent mentions are at distance 1 and single-token mentions at positions
p and q are exactly |p - q| apart; nested or overlapping spans are capped
at distance 1, the strongest possible association. Each supporting triple
adds a flat 1.0 on top, which is what lets semantically confirmed pairs
outrank plain co-occurrence of the same geometry.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations

from .matcher import mentions_by_entity


def span_distance(span_a, span_b):
    """Effective token distance between two half-open token spans."""
    gap_plus_one = max(span_a[0], span_b[0]) - min(span_a[1], span_b[1]) + 1
    return max(1, gap_plus_one)


def pair_score(doc, mentions_a, mentions_b):
    """Distance score between two entities' mention lists in one document.

    Summed with math.fsum, which rounds once over the exact sum, so the
    result does not depend on mention order and the score is exactly
    symmetric in its two arguments.
    """
    del doc  # positions are already absolute token indices
    if not mentions_a or not mentions_b:
        return 0.0
    return math.fsum(
        1.0 / math.log2(span_distance(m_a.token_span, m_b.token_span) + 1)
        for m_a in mentions_a
        for m_b in mentions_b
    )


@dataclass
class PairScore:
    doc_id: str
    entity_a: str
    entity_b: str
    distance_score: float
    triple_bonus: int = 0
    evidence_sentence: tuple = None    # token span of the primary evidence
    has_triple: bool = False

    def __post_init__(self):
        # canonical unordered pair: all fields symmetric under swapping
        if self.entity_a > self.entity_b:
            self.entity_a, self.entity_b = self.entity_b, self.entity_a

    @property
    def total(self):
        return self.distance_score + self.triple_bonus


def supporting_triples(triples, entity_a, entity_b):
    """Triples whose two linked ends cover the given pair, either way round."""
    hits = []
    for t in triples:
        subj = set(t.subject_entities)
        obj = set(t.object_entities)
        if (entity_a in subj and entity_b in obj) or \
                (entity_b in subj and entity_a in obj):
            hits.append(t)
    return hits


def apply_triple_bonus(score, triples):
    """Add one to the total per supporting triple occurrence."""
    support = supporting_triples(triples, score.entity_a, score.entity_b)
    score.triple_bonus = len(support)
    score.has_triple = bool(support)
    return score


def select_primary_evidence(doc, pair, triples, mentions):
    """Token span of the sentence shown as primary evidence for a pair.

    A supporting triple wins outright (earliest sentence if several);
    otherwise the mention pair at minimal token distance decides, ties going
    to the earliest sentence. A long-distance pair whose closest mentions sit
    in different sentences is represented by the earlier mention's sentence.
    """
    entity_a, entity_b = pair
    support = supporting_triples(triples, entity_a, entity_b)
    if support:
        best = min(support, key=lambda t: t.sentence_index)
        span = doc.sentences[best.sentence_index]
        return (span.start, span.end)
    grouped = mentions_by_entity(mentions)
    best_key = None
    best_span = None
    for m_a in grouped.get(entity_a, []):
        for m_b in grouped.get(entity_b, []):
            d = span_distance(m_a.token_span, m_b.token_span)
            first = m_a if m_a.start <= m_b.start else m_b
            sent = doc.sentence_of_token(first.start)
            key = (d, sent.start, first.start)
            if best_key is None or key < best_key:
                best_key = key
                best_span = sent
    if best_span is None:
        raise ValueError(f"pair {pair} has no mention evidence in {doc.doc_id}")
    return (best_span.start, best_span.end)


def compute_pair_scores(doc, mentions, triples):
    """PairScore records for every distinct co-mentioned entity pair."""
    grouped = mentions_by_entity(mentions)
    scores = []
    for entity_a, entity_b in combinations(sorted(grouped), 2):
        distance = pair_score(doc, grouped[entity_a], grouped[entity_b])
        score = PairScore(doc.doc_id, entity_a, entity_b, distance)
        apply_triple_bonus(score, triples)
        score.evidence_sentence = select_primary_evidence(
            doc, (entity_a, entity_b), triples, mentions
        )
        scores.append(score)
    return scores


@dataclass
class Evidence:
    doc_id: str
    total: float
    sentence_span: tuple
    has_triple: bool
    distance_score: float = 0.0
    triple_bonus: int = 0


@dataclass
class AggregatedRelation:
    entity_a: str
    entity_b: str
    corpus_score: float
    evidence: list = field(default_factory=list)


def aggregate(pair_scores):
    """Fold per-document pair scores into corpus-level ranked relations.

    Evidence lists are sorted by per-document total descending (doc_id
    breaking ties) and the corpus score is the sum over that order, so
    repeated runs serialize identically.
    """
    buckets = {}
    for score in pair_scores:
        buckets.setdefault((score.entity_a, score.entity_b), []).append(score)
    relations = []
    for (entity_a, entity_b), scores in buckets.items():
        scores.sort(key=lambda s: (-s.total, s.doc_id))
        evidence = [
            Evidence(s.doc_id, s.total, s.evidence_sentence, s.has_triple,
                     s.distance_score, s.triple_bonus)
            for s in scores
        ]
        corpus_score = math.fsum(e.total for e in evidence)
        relations.append(AggregatedRelation(entity_a, entity_b, corpus_score, evidence))
    relations.sort(key=lambda r: (-r.corpus_score, r.entity_a, r.entity_b))
    return relations


def score_to_record(score):
    """Line format of the score dump: exactly the six audit fields."""
    return {
        "entity_a": score.entity_a,
        "entity_b": score.entity_b,
        "doc_id": score.doc_id,
        "distance_score": score.distance_score,
        "triple_bonus": score.triple_bonus,
        "total": score.total,
    }


def aggregate_to_record(relation):
    return {
        "entity_a": relation.entity_a,
        "entity_b": relation.entity_b,
        "corpus_score": relation.corpus_score,
        "evidence_doc_ids": [e.doc_id for e in relation.evidence],
    }
