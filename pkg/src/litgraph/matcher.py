"""Dictionary-based entity mention detection.

A document is scanned in its three normalization layers. Precision rules:
raw-exact forms must reproduce the span text character for character, a
longer match displaces shorter overlapping matches of the same category,
and ambiguous surfaces yield one mention per candidate entity with the
ambiguity recorded rather than resolved.
"""

from dataclasses import dataclass, field

from .ontology import CASE_NORMALIZED, LEMMA_TOKENS, RAW_EXACT

# Dedup priority when one entity matches the same span through several layers.
_FORM_PRIORITY = {RAW_EXACT: 0, CASE_NORMALIZED: 1, LEMMA_TOKENS: 2}


@dataclass
class EntityMention:
    doc_id: str
    entity_id: str
    category: str
    token_span: tuple          # (start, end), half-open token indices
    form_kind: str
    ambiguous_with: list = field(default_factory=list)

    @property
    def start(self):
        return self.token_span[0]

    @property
    def end(self):
        return self.token_span[1]

    @property
    def length(self):
        return self.token_span[1] - self.token_span[0]


def _spans_overlap(a, b):
    return a[0] < b[1] and b[0] < a[1]


def _collect_candidates(doc, dictionary, lo, hi):
    """Raw candidate mentions in token window [lo, hi), before dedup."""
    window = doc.tokens[lo:hi]
    layers = (
        (RAW_EXACT, [t.text_raw for t in window]),
        (CASE_NORMALIZED, [t.text_cased for t in window]),
        (LEMMA_TOKENS, [t.text_lemma for t in window]),
    )
    candidates = []
    for form_kind, texts in layers:
        for start, end, form in dictionary.scan(form_kind, texts):
            span = (lo + start, lo + end)
            if form_kind == RAW_EXACT and doc.span_text(*span) != form.surface:
                continue
            candidates.append((form.entity_id, span, form_kind))
    return candidates


def _resolve(doc_id, dictionary, candidates):
    """Dedup, apply longest-match suppression and record ambiguity sets."""
    best = {}
    for entity_id, span, form_kind in candidates:
        key = (entity_id, span)
        prev = best.get(key)
        if prev is None or _FORM_PRIORITY[form_kind] < _FORM_PRIORITY[prev]:
            best[key] = form_kind

    by_category = {}
    for (entity_id, span), form_kind in best.items():
        category = dictionary.category(entity_id)
        by_category.setdefault(category, []).append((entity_id, span, form_kind))

    kept = []
    for category in sorted(by_category):
        group = sorted(
            by_category[category],
            key=lambda c: (-(c[1][1] - c[1][0]), c[1][0], c[0]),
        )
        survivors = []
        for entity_id, span, form_kind in group:
            length = span[1] - span[0]
            displaced = any(
                s[1][1] - s[1][0] > length and _spans_overlap(s[1], span)
                for s in survivors
            )
            if not displaced:
                survivors.append((entity_id, span, form_kind))
        kept.extend((e, s, f, category) for e, s, f in survivors)

    ambiguity = {}
    for entity_id, span, form_kind, _ in kept:
        ambiguity.setdefault((span, form_kind), []).append(entity_id)

    mentions = []
    for entity_id, span, form_kind, category in kept:
        others = sorted(e for e in ambiguity[(span, form_kind)] if e != entity_id)
        mentions.append(
            EntityMention(doc_id, entity_id, category, span, form_kind, others)
        )
    mentions.sort(key=lambda m: (m.start, m.end, m.entity_id))
    return mentions


def match_document(doc, dictionary):
    """All maximal entity mentions in a document, sorted by position."""
    candidates = _collect_candidates(doc, dictionary, 0, len(doc.tokens))
    return _resolve(doc.doc_id, dictionary, candidates)


def match_span(doc, token_span, dictionary):
    """Mentions restricted to one phrase, e.g. a triple's subject or object.

    Spans are reported in document token coordinates, so results are
    comparable with match_document output.
    """
    lo, hi = token_span
    candidates = _collect_candidates(doc, dictionary, lo, hi)
    return _resolve(doc.doc_id, dictionary, candidates)


def mentions_by_entity(mentions):
    grouped = {}
    for mention in mentions:
        grouped.setdefault(mention.entity_id, []).append(mention)
    return grouped


def mention_to_record(mention):
    return {
        "doc_id": mention.doc_id,
        "entity_id": mention.entity_id,
        "category": mention.category,
        "span": list(mention.token_span),
        "form_kind": mention.form_kind,
        "ambiguous_with": list(mention.ambiguous_with),
    }
