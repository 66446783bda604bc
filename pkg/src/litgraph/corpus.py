"""Abstract corpus ingestion.

Documents are tokenized once, with stable character offsets, and every token
carries three normalization layers: the raw surface, a case-normalized form
and a rule-based lemma. Downstream matching runs over whichever layer a
dictionary form requires, so all of them must be reproducible functions of
the input text.
"""

import json
import logging
import re
from dataclasses import dataclass, field

from .lexicon import ABBREVIATIONS, AUXILIARY_FORMS, NOUN_LEMMA_EXCEPTIONS, VERB_FORMS

logger = logging.getLogger(__name__)


class CorpusError(Exception):
    """Unrecoverable problem with a corpus file (duplicate ids, missing file)."""


@dataclass(frozen=True)
class Token:
    index: int
    text_raw: str
    text_cased: str
    text_lemma: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class SentenceSpan:
    """Half-open token-index range [start, end)."""
    start: int
    end: int


@dataclass
class Document:
    """A tokenized abstract.

    ``body`` is the full searchable text: the title (when present) followed
    by a newline and the abstract, so token offsets in the title and the
    abstract live in one coordinate system. The title is always sentence 0.
    ``body_token_start`` is the index of the first abstract token.
    """
    doc_id: str
    title: str
    body: str
    tokens: list = field(default_factory=list)
    sentences: list = field(default_factory=list)
    body_token_start: int = 0

    @property
    def body_tokens(self):
        return self.tokens[self.body_token_start:]

    @property
    def body_sentences(self):
        n_title = 1 if self.body_token_start else 0
        return self.sentences[n_title:]

    def span_text(self, start, end):
        """Original text covered by tokens [start, end)."""
        if start >= end:
            return ""
        return self.body[self.tokens[start].char_start:self.tokens[end - 1].char_end]

    def sentence_of_token(self, index):
        for span in self.sentences:
            if span.start <= index < span.end:
                return span
        raise IndexError(f"token index {index} outside all sentences")


# Characters peeled off chunk edges into their own tokens.
_OPENERS = "([{\"'"
_CLOSERS = ")]}\"',;:!?."

_WORD_RE = re.compile(r"\S+")


def _is_abbreviation(word):
    return word.lower() in ABBREVIATIONS


def looks_like_identifier(text):
    """Gene symbols, cell line codes and the like are never normalized."""
    if any(ch.isdigit() for ch in text):
        return True
    return any(ch.isupper() for ch in text[1:])


# Ordered suffix rules applied to lowercased words; (suffix, replacement,
# minimum length of the whole word for the rule to fire).
_SUFFIX_RULES = [
    ("ies", "y", 5),
    ("sses", "ss", 6),
    ("ches", "ch", 5),
    ("shes", "sh", 5),
    ("xes", "x", 4),
    ("zes", "z", 4),
    ("oes", "o", 4),
    ("ied", "y", 5),
    ("s", "", 4),
    ("ed", "", 6),
]


def lemmatize(token_text):
    """Rule-based lemma of a single token.

    Identifiers (anything with a digit or an uppercase letter past the first
    character) are returned unchanged; other tokens are lowercased and run
    through the exception lexicon, the verb-form table and finally the
    suffix rules. Idempotent by construction.
    """
    if not token_text or looks_like_identifier(token_text):
        return token_text
    word = token_text.lower()
    if word in NOUN_LEMMA_EXCEPTIONS:
        return NOUN_LEMMA_EXCEPTIONS[word]
    if word in AUXILIARY_FORMS:
        return AUXILIARY_FORMS[word]
    if word in VERB_FORMS:
        return VERB_FORMS[word][0]
    for suffix, repl, min_len in _SUFFIX_RULES:
        if word.endswith(suffix) and len(word) >= min_len:
            if suffix == "s" and word.endswith(("ss", "us", "is")):
                continue
            if suffix == "ed" and word.endswith("eed"):
                continue
            return word[: -len(suffix)] + repl
    return word


def _make_token(index, text, start, end):
    raw = text[start:end]
    return Token(
        index=index,
        text_raw=raw,
        text_cased=raw.lower(),
        text_lemma=lemmatize(raw),
        char_start=start,
        char_end=end,
    )


def _split_chunk(start, end, text):
    """Peel edge punctuation off one whitespace-delimited chunk.

    Yields (char_start, char_end) pieces in document order. Hyphenated
    identifiers stay whole; a trailing period stays attached when the word
    is a known abbreviation or the chunk is a number like "3.5".
    """
    pieces_left = []
    pieces_right = []
    lo, hi = start, end
    while lo < hi and text[lo] in _OPENERS:
        pieces_left.append((lo, lo + 1))
        lo += 1
    while lo < hi:
        ch = text[hi - 1]
        if ch not in _CLOSERS:
            break
        if ch == "." and _is_abbreviation(text[lo:hi]):
            break
        pieces_right.append((hi - 1, hi))
        hi -= 1
    yield from pieces_left
    if lo < hi:
        yield (lo, hi)
    yield from reversed(pieces_right)


def tokenize(text):
    """Split text into tokens and sentence spans.

    Deterministic and total: splits on whitespace, peels edge punctuation
    into separate tokens (so "(NCI-H209)" yields the inner identifier as a
    single token) and keeps internal hyphens, periods in abbreviations and
    digit groupings intact. Sentences close after ".", "!" or "?" tokens.
    """
    tokens = []
    for match in _WORD_RE.finditer(text):
        for piece_start, piece_end in _split_chunk(match.start(), match.end(), text):
            tokens.append(_make_token(len(tokens), text, piece_start, piece_end))
    sentences = []
    sent_start = 0
    for tok in tokens:
        if tok.text_raw in {".", "!", "?"}:
            sentences.append(SentenceSpan(sent_start, tok.index + 1))
            sent_start = tok.index + 1
    if sent_start < len(tokens):
        sentences.append(SentenceSpan(sent_start, len(tokens)))
    return tokens, sentences


def make_document(doc_id, title, abstract):
    """Build a Document with the title as sentence 0 and global offsets."""
    title = title or ""
    abstract = abstract or ""
    if title:
        body = title + "\n" + abstract
        title_tokens, _ = tokenize(title)
        offset = len(title) + 1
        abs_tokens, abs_sentences = tokenize(abstract)
        tokens = list(title_tokens)
        for tok in abs_tokens:
            tokens.append(
                Token(
                    index=len(tokens),
                    text_raw=tok.text_raw,
                    text_cased=tok.text_cased,
                    text_lemma=tok.text_lemma,
                    char_start=tok.char_start + offset,
                    char_end=tok.char_end + offset,
                )
            )
        shift = len(title_tokens)
        sentences = []
        if title_tokens:
            sentences.append(SentenceSpan(0, shift))
        sentences.extend(
            SentenceSpan(s.start + shift, s.end + shift) for s in abs_sentences
        )
        return Document(doc_id, title, body, tokens, sentences, body_token_start=shift)
    tokens, sentences = tokenize(abstract)
    return Document(doc_id, title, abstract, tokens, sentences, body_token_start=0)


@dataclass
class CorpusLoad:
    documents: list
    skipped: list          # (line_number, reason)
    empty_abstracts: int = 0

    @property
    def skip_count(self):
        return len(self.skipped)


_REQUIRED_FIELDS = ("doc_id", "title", "abstract")


def load_corpus(path):
    """Read a line-delimited corpus file into Documents.

    Each line is a JSON record with string fields doc_id, title and
    abstract. Malformed records are skipped and reported; duplicate doc_ids
    are a hard error naming both occurrences. Output is sorted by doc_id so
    parallel ingestion stays deterministic.
    """
    documents = []
    skipped = []
    empty_abstracts = 0
    seen = {}
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot open corpus file {path}: {exc}") from exc
    with handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                skipped.append((line_no, f"invalid JSON: {exc.msg}"))
                continue
            if not isinstance(record, dict):
                skipped.append((line_no, "record is not an object"))
                continue
            missing = [f for f in _REQUIRED_FIELDS if not isinstance(record.get(f), str)]
            if missing:
                skipped.append((line_no, f"missing or non-string fields: {', '.join(missing)}"))
                continue
            doc_id = record["doc_id"]
            if not doc_id:
                skipped.append((line_no, "empty doc_id"))
                continue
            if doc_id in seen:
                raise CorpusError(
                    f"duplicate doc_id {doc_id!r} at line {line_no} "
                    f"(first seen at line {seen[doc_id]})"
                )
            seen[doc_id] = line_no
            doc = make_document(doc_id, record["title"], record["abstract"])
            if not record["abstract"].strip():
                empty_abstracts += 1
                logger.warning("doc %s has an empty abstract", doc_id)
            documents.append(doc)
    for line_no, reason in skipped:
        logger.warning("skipped corpus line %d: %s", line_no, reason)
    documents.sort(key=lambda d: d.doc_id)
    return CorpusLoad(documents, skipped, empty_abstracts)


def ingest_corpus(path):
    """Load a corpus file, returning just the Documents."""
    return load_corpus(path).documents


def document_to_record(doc):
    """Serializable form of a Document (used by dumps and the golden tests)."""
    return {
        "doc_id": doc.doc_id,
        "title": doc.title,
        "body": doc.body,
        "body_token_start": doc.body_token_start,
        "tokens": [
            [t.text_raw, t.text_cased, t.text_lemma, t.char_start, t.char_end]
            for t in doc.tokens
        ],
        "sentences": [[s.start, s.end] for s in doc.sentences],
    }
