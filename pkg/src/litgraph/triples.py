"""Rule-based open information extraction.

The engine runs a fixed pipeline per sentence: coarse part-of-speech tags
from the bundled lexicon plus suffix heuristics, clause splitting at
conjunctions that join finite verbs and at subordinators, then one
subject / predicate / object triple per clause. The predicate context
absorbs adverbs, auxiliary chains and a light post-verbal noun phrase when
an "of" complement follows, which mirrors how formal abstract sentences
package their payload ("expresses an aberrant underphosphorylated form of
..."). No learned component is involved; results are deterministic per
sentence.
"""

from dataclasses import dataclass, field

from .corpus import looks_like_identifier
from .lexicon import (
    ADVERBS,
    AUXILIARY_FORMS,
    CONJUNCTIONS,
    DETERMINERS,
    FINITE_AUXILIARIES,
    MODALS,
    NUMBER_WORDS,
    PREPOSITIONS,
    PRONOUNS,
    SUBORDINATORS,
    VERB_FORMS,
)
from .matcher import match_span

# Sentences longer than this are degenerate input and skipped.
MAX_SENTENCE_TOKENS = 120

_ADJ_SUFFIXES = ("ous", "al", "ic", "ive", "ary", "able", "ible", "less",
                 "ant", "ent", "like", "ar", "ful")

_NOMINAL = {"NOUN", "PRON", "NUM"}
_NP_INNER = {"NOUN", "PRON", "NUM", "ADJ", "DET"}


@dataclass(frozen=True)
class Phrase:
    head: str
    context: str
    token_span: tuple
    head_lemma: str = ""


@dataclass
class Triple:
    doc_id: str
    sentence_index: int
    subject: Phrase
    predicate: Phrase
    object: Phrase
    subject_entities: list = field(default_factory=list)
    object_entities: list = field(default_factory=list)

    @property
    def is_linked(self):
        return bool(self.subject_entities or self.object_entities)

    def render(self):
        return (
            f"({self.subject.head} [{self.subject.context}] ; "
            f"{self.predicate.head} [{self.predicate.context}] ; "
            f"{self.object.head} [{self.object.context}])"
        )


@dataclass
class _Tag:
    pos: str
    feature: str = None     # verb feature: base/s3/past/participle/gerund

    @property
    def finite_verb(self):
        return self.pos == "VERB" and self.feature in ("base", "s3", "past")


def _initial_tag(raw):
    low = raw.lower()
    if all(not ch.isalnum() for ch in raw):
        return _Tag("PUNCT")
    if raw[0].isdigit() and all(ch.isdigit() or ch in ",." for ch in raw):
        return _Tag("NUM")
    if low in NUMBER_WORDS:
        return _Tag("NUM")
    if low in MODALS:
        return _Tag("AUX", "finite")
    if low in AUXILIARY_FORMS:
        return _Tag("AUX", "finite" if low in FINITE_AUXILIARIES else None)
    if low in DETERMINERS:
        return _Tag("DET")
    if low in SUBORDINATORS:
        return _Tag("SUBORD")
    if low in PREPOSITIONS:
        return _Tag("PREP")
    if low in CONJUNCTIONS:
        return _Tag("CONJ")
    if low in PRONOUNS:
        return _Tag("PRON")
    if low in ADVERBS:
        return _Tag("ADV")
    if low in VERB_FORMS:
        return _Tag("VERB", VERB_FORMS[low][1])
    if looks_like_identifier(raw):
        return _Tag("NOUN")
    if low.endswith("ly"):
        return _Tag("ADV")
    if low.endswith("ed") and len(low) >= 5:
        return _Tag("ADJ")
    if low.endswith("ing") and len(low) >= 6:
        return _Tag("ADJ")
    if low.endswith(_ADJ_SUFFIXES):
        return _Tag("ADJ")
    return _Tag("NOUN")


def _prev_solid(tags, i):
    """Nearest preceding tag, skipping adverbs."""
    j = i - 1
    while j >= 0 and tags[j].pos == "ADV":
        j -= 1
    return tags[j] if j >= 0 else None


def tag_sentence(tokens):
    """Coarse tags for one sentence's tokens, with contextual repairs."""
    tags = [_initial_tag(t.text_raw) for t in tokens]
    for i, tok in enumerate(tokens):
        low = tok.text_raw.lower()
        prev = _prev_solid(tags, i)
        if low == "that":
            # determiner at clause start or after a preposition, clause
            # opener after nominal or verbal material
            if prev and prev.pos in ("VERB", "AUX", "NOUN", "PRON"):
                tags[i] = _Tag("SUBORD")
            else:
                tags[i] = _Tag("DET")
        elif tags[i].pos == "VERB":
            # a determiner or adjective cannot close a noun phrase, so the
            # next ambiguous word is its noun: "the results", "an increased
            # level". Nouns and numbers may end an NP ("Detroit 562 harbors")
            # and do not demote.
            if prev and prev.pos in ("DET", "ADJ"):
                if tags[i].feature in ("past", "participle", "gerund"):
                    tags[i] = _Tag("ADJ")
                else:
                    tags[i] = _Tag("NOUN")
            elif tags[i].feature in ("past", "participle") and (
                prev is None or prev.pos in ("PREP", "CONJ", "PUNCT", "SUBORD")
            ):
                # participle opening a noun phrase: "mutated KRAS is common"
                nxt = tags[i + 1].pos if i + 1 < len(tags) else None
                if nxt in ("NOUN", "ADJ", "NUM"):
                    tags[i] = _Tag("ADJ")
    return tags


def _clause_boundaries(tokens, tags):
    """Indices that split the sentence into clauses (boundary token excluded)."""
    finite_positions = [i for i, t in enumerate(tags) if t.finite_verb or
                        (t.pos == "AUX" and t.feature == "finite")]
    boundaries = []
    for i, tag in enumerate(tags):
        if tag.pos == "SUBORD":
            boundaries.append(i)
        elif tag.pos == "CONJ":
            before = [p for p in finite_positions if p < i]
            after = [p for p in finite_positions if p > i]
            if before and after:
                boundaries.append(i)
    return boundaries


def _matching_open(tokens, close_idx, lo):
    depth = 0
    for j in range(close_idx, lo - 1, -1):
        raw = tokens[j].text_raw
        if raw == ")":
            depth += 1
        elif raw == "(":
            depth -= 1
            if depth == 0:
                return j
    return None


def _assemble_subject(tokens, tags, lo, end):
    """Maximal noun phrase ending right before token index `end`."""
    i = end - 1
    start = end
    while i >= lo:
        raw = tokens[i].text_raw
        pos = tags[i].pos
        if raw == ")":
            opener = _matching_open(tokens, i, lo)
            if opener is None:
                break
            i = opener - 1
            start = opener
            continue
        if pos in _NP_INNER:
            start = i
            i -= 1
            continue
        if (pos == "CONJ" or raw == ",") and start < end and i - 1 >= lo and \
                tags[i - 1].pos in _NP_INNER:
            i -= 1
            continue
        break
    if start >= end:
        return None
    if not any(tags[j].pos in _NOMINAL for j in range(start, end)):
        return None
    return (start, end)


def _assemble_object(tokens, tags, start, hi):
    """Nominal and prepositional material following the verb group."""
    i = start
    end = start
    while i < hi:
        raw = tokens[i].text_raw
        pos = tags[i].pos
        if raw == "(":
            depth = 0
            j = i
            while j < hi:
                if tokens[j].text_raw == "(":
                    depth += 1
                elif tokens[j].text_raw == ")":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if j >= hi:
                break
            i = j + 1
            end = i
            continue
        if pos in _NP_INNER or pos == "PREP" or pos == "ADV":
            i += 1
            end = i
            continue
        if raw == "," and i + 1 < hi and tags[i + 1].pos in _NP_INNER \
                and tags[i + 1].pos != "DET":
            # appositive: ", GAS5" but not ", and"
            i += 1
            continue
        break
    # trim trailing material that cannot end a noun phrase
    while end > start and tags[end - 1].pos in ("PREP", "DET", "ADJ", "ADV", "CONJ"):
        end -= 1
    while end > start and tokens[end - 1].text_raw == ",":
        end -= 1
    if end <= start:
        return None
    if not any(tags[j].pos in _NOMINAL for j in range(start, end)):
        return None
    return (start, end)


def _find_verb_group(tokens, tags, lo, hi, demoted):
    """First finite verb group in [lo, hi); returns (adv_start, core_start, end, main)."""
    for i in range(lo, hi):
        if i in demoted:
            continue
        tag = tags[i]
        is_candidate = tag.finite_verb or (tag.pos == "AUX" and tag.feature == "finite")
        if not is_candidate:
            continue
        if tag.pos == "VERB" and tag.feature == "base" and i > lo and \
                tokens[i - 1].text_raw.lower() == "to":
            continue
        core_start = i
        main = i if tag.pos == "VERB" else None
        end = i + 1
        while end < hi:
            nxt = tags[end]
            if nxt.pos == "ADV":
                end += 1
                continue
            if nxt.pos == "AUX" and main is None:
                end += 1
                continue
            if nxt.pos == "VERB" and main is None:
                main = end
                end += 1
                continue
            if tokens[end].text_raw.lower() == "to" and end + 1 < hi and \
                    tags[end + 1].pos == "VERB":
                main = end + 1
                end += 2
                continue
            break
        if main is None:
            main = core_start  # bare copula: "X is a member of Y"
        adv_start = core_start
        while adv_start > lo and tags[adv_start - 1].pos == "ADV":
            adv_start -= 1
        return adv_start, core_start, end, main
    return None


def _head_index(tokens, tags, span):
    for j in range(span[1] - 1, span[0] - 1, -1):
        if tags[j].pos in _NOMINAL:
            return j
    return span[1] - 1


def _parse_clause(doc, tokens, tags, lo, hi, inherited_subject):
    """One triple attempt for the clause [lo, hi); returns (triple_parts, subject)."""
    demoted = set()
    while True:
        group = _find_verb_group(tokens, tags, lo, hi, demoted)
        if group is None:
            return None, inherited_subject
        adv_start, core_start, group_end, main = group
        subject = _assemble_subject(tokens, tags, lo, adv_start)
        if subject is None:
            subject = inherited_subject
        if subject is None:
            # "Studies show ..." with nothing before the verb: treat the
            # candidate as a noun and rescan
            demoted.add(core_start)
            continue
        obj = _assemble_object(tokens, tags, group_end, hi)
        if obj is None:
            return None, subject
        pred_span = (adv_start, group_end)
        obj_span = obj
        # absorb a light pre-"of" noun phrase into the predicate context
        for j in range(obj_span[0], obj_span[1]):
            if tokens[j].text_raw.lower() == "of":
                if j == obj_span[0]:
                    pred_span = (pred_span[0], j + 1)
                else:
                    pred_span = (pred_span[0], j)
                if j + 1 >= obj_span[1]:
                    return None, subject
                obj_span = (j + 1, obj_span[1])
                break
        return (subject, pred_span, obj_span, main), subject


def _sentence_triples(doc, sentence_index):
    sentence = doc.sentences[sentence_index]
    tokens = doc.tokens[sentence.start:sentence.end]
    if not tokens:
        return []
    tags = tag_sentence(tokens)
    boundaries = _clause_boundaries(tokens, tags)
    edges = [0] + [b + 1 for b in boundaries] + [len(tokens)]
    clause_ranges = []
    prev = 0
    for b in boundaries:
        clause_ranges.append((prev, b))
        prev = b + 1
    clause_ranges.append((prev, len(tokens)))

    triples = []
    inherited = None
    for lo, hi in clause_ranges:
        if lo >= hi:
            continue
        parts, inherited = _parse_clause(doc, tokens, tags, lo, hi, inherited)
        if parts is None:
            continue
        subj_span, pred_span, obj_span, main = parts

        def absolute(span):
            return (sentence.start + span[0], sentence.start + span[1])

        subj_abs = absolute(subj_span)
        pred_abs = absolute(pred_span)
        obj_abs = absolute(obj_span)
        subj_tok = tokens[_head_index(tokens, tags, subj_span)]
        obj_tok = tokens[_head_index(tokens, tags, obj_span)]
        main_tok = tokens[main]
        triples.append(
            Triple(
                doc_id=doc.doc_id,
                sentence_index=sentence_index,
                subject=Phrase(subj_tok.text_raw, doc.span_text(*subj_abs),
                               subj_abs, subj_tok.text_lemma),
                predicate=Phrase(main_tok.text_raw.upper(), doc.span_text(*pred_abs),
                                 pred_abs, main_tok.text_lemma),
                object=Phrase(obj_tok.text_raw, doc.span_text(*obj_abs),
                              obj_abs, obj_tok.text_lemma),
            )
        )
    return triples


@dataclass
class ExtractionReport:
    triples: list
    skipped_sentences: int = 0


def link_triple_entities(triple, doc, dictionary):
    """Populate entity links from the full phrase contexts."""
    triple.subject_entities = sorted(
        {m.entity_id for m in match_span(doc, triple.subject.token_span, dictionary)}
    )
    triple.object_entities = sorted(
        {m.entity_id for m in match_span(doc, triple.object.token_span, dictionary)}
    )
    return triple


def extract_document(doc, dictionary):
    """All triples of a document, entity-linked, plus the skip count."""
    triples = []
    skipped = 0
    for index, sentence in enumerate(doc.sentences):
        if sentence.end - sentence.start > MAX_SENTENCE_TOKENS:
            skipped += 1
            continue
        triples.extend(_sentence_triples(doc, index))
    for triple in triples:
        link_triple_entities(triple, doc, dictionary)
    return ExtractionReport(triples, skipped)


def extract_triples(doc, dictionary):
    return extract_document(doc, dictionary).triples


def triple_to_record(triple):
    return {
        "doc_id": triple.doc_id,
        "sentence_index": triple.sentence_index,
        "rendering": triple.render(),
        "subject": {"head": triple.subject.head, "context": triple.subject.context,
                    "span": list(triple.subject.token_span)},
        "predicate": {"head": triple.predicate.head, "context": triple.predicate.context,
                      "span": list(triple.predicate.token_span),
                      "lemma": triple.predicate.head_lemma},
        "object": {"head": triple.object.head, "context": triple.object.context,
                   "span": list(triple.object.token_span)},
        "subject_entities": list(triple.subject_entities),
        "object_entities": list(triple.object_entities),
        "is_linked": triple.is_linked,
    }
