"""Ontology loading, synonym expansion and the entity dictionary.

Each ontology file is line-delimited JSON with fields entity_id, category,
canonical_name, synonyms[], parents[] and an optional location object. The
five upstream sources ship in five different formats; converters are out of
scope here and fixtures use this unified format directly.
"""

import json
import logging
from dataclasses import dataclass, field

from .automaton import TokenAutomaton
from .corpus import lemmatize, tokenize

logger = logging.getLogger(__name__)

CATEGORIES = ("Gene", "CellLine", "Disease", "Anatomy", "Cytoband")

NAMESPACE_CATEGORIES = {
    "hugo": "Gene",
    "cellosaurus": "CellLine",
    "ncit": "Disease",
    "uberon": "Anatomy",
    "progenetix": "Cytoband",
}

CHROMOSOMES = tuple(str(n) for n in range(1, 23)) + ("X", "Y")

RAW_EXACT = "RawExact"
CASE_NORMALIZED = "CaseNormalized"
LEMMA_TOKENS = "LemmaTokens"

# Longest dictionary form, in tokens; longer forms are dropped with a warning.
MAX_FORM_TOKENS = 8


class OntologyError(Exception):
    """Invalid ontology content: duplicates, dangling parents or cycles."""


@dataclass(frozen=True)
class GenomicInterval:
    chromosome: str
    start: int
    end: int

    def __post_init__(self):
        if self.chromosome not in CHROMOSOMES:
            raise OntologyError(f"unknown chromosome {self.chromosome!r}")
        if not (0 <= self.start < self.end):
            raise OntologyError(
                f"invalid interval [{self.start}, {self.end}) on chr{self.chromosome}"
            )


@dataclass
class OntologyEntity:
    entity_id: str
    category: str
    canonical_name: str
    synonyms: list = field(default_factory=list)
    parents: list = field(default_factory=list)
    genomic_location: GenomicInterval = None


@dataclass(frozen=True)
class DictionaryForm:
    surface: str
    form_kind: str
    entity_id: str
    tokens: tuple


def category_of(entity_id):
    prefix = entity_id.split(":", 1)[0]
    try:
        return NAMESPACE_CATEGORIES[prefix]
    except KeyError:
        raise OntologyError(f"unknown namespace prefix in {entity_id!r}") from None


def _parse_record(record, line_no, path):
    if not isinstance(record, dict):
        raise OntologyError(f"{path}:{line_no}: record is not an object")
    try:
        entity_id = record["entity_id"]
        canonical = record["canonical_name"]
    except KeyError as exc:
        raise OntologyError(f"{path}:{line_no}: missing field {exc}") from None
    if not entity_id or ":" not in entity_id:
        raise OntologyError(f"{path}:{line_no}: malformed entity_id {entity_id!r}")
    category = category_of(entity_id)
    declared = record.get("category")
    if declared is not None and declared != category:
        raise OntologyError(
            f"{path}:{line_no}: declared category {declared!r} does not match "
            f"namespace of {entity_id!r}"
        )
    synonyms = []
    for syn in record.get("synonyms", []):
        if not syn or syn == canonical or syn in synonyms:
            continue
        synonyms.append(syn)
    location = None
    loc = record.get("location")
    if loc is not None:
        location = GenomicInterval(str(loc["chromosome"]), int(loc["start"]), int(loc["end"]))
    return OntologyEntity(
        entity_id=entity_id,
        category=category,
        canonical_name=canonical,
        synonyms=synonyms,
        parents=list(record.get("parents", [])),
        genomic_location=location,
    )


def _check_parents(entities):
    """Reject dangling parent references and parent cycles."""
    by_id = {e.entity_id: e for e in entities}
    dangling = []
    for entity in entities:
        for parent in entity.parents:
            if parent not in by_id:
                dangling.append((entity.entity_id, parent))
    if dangling:
        listing = ", ".join(f"{child} -> {parent}" for child, parent in dangling)
        raise OntologyError(f"dangling parent references: {listing}")
    # Kahn's algorithm over child -> parent links; leftovers are cyclic.
    indegree = {e.entity_id: 0 for e in entities}
    for entity in entities:
        for parent in entity.parents:
            indegree[parent] += 1
    stack = [eid for eid, deg in indegree.items() if deg == 0]
    seen = 0
    while stack:
        eid = stack.pop()
        seen += 1
        for parent in by_id[eid].parents:
            indegree[parent] -= 1
            if indegree[parent] == 0:
                stack.append(parent)
    if seen != len(entities):
        cyclic = sorted(eid for eid, deg in indegree.items() if deg > 0)
        raise OntologyError(f"parent cycle involving: {', '.join(cyclic)}")


def load_ontology(path, category):
    """Load one ontology file, validating ids, parents and the category."""
    entities = []
    seen = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise OntologyError(f"{path}:{line_no}: invalid JSON: {exc.msg}") from None
            entity = _parse_record(record, line_no, path)
            if entity.category != category:
                raise OntologyError(
                    f"{path}:{line_no}: entity {entity.entity_id} has category "
                    f"{entity.category}, expected {category}"
                )
            if entity.entity_id in seen:
                raise OntologyError(
                    f"{path}:{line_no}: duplicate entity_id {entity.entity_id} "
                    f"(first seen at line {seen[entity.entity_id]})"
                )
            seen[entity.entity_id] = line_no
            entities.append(entity)
    _check_parents(entities)
    entities.sort(key=lambda e: e.entity_id)
    return entities


def load_ontologies(paths_by_category):
    """Load several ontology files and validate global id uniqueness."""
    merged = []
    seen = set()
    for category in sorted(paths_by_category):
        for entity in load_ontology(paths_by_category[category], category):
            if entity.entity_id in seen:
                raise OntologyError(f"duplicate entity_id across files: {entity.entity_id}")
            seen.add(entity.entity_id)
            merged.append(entity)
    merged.sort(key=lambda e: e.entity_id)
    return merged


def hierarchy_edges(entities):
    """Directed parent-of edges, one per parent link."""
    edges = []
    for entity in entities:
        for parent in entity.parents:
            edges.append((parent, entity.entity_id))
    edges.sort()
    return edges


def _surface_tokens(surface):
    tokens, _ = tokenize(surface)
    return tokens


def expand_entity_forms(entity):
    """Dictionary forms for one entity.

    Gene and CellLine canonical names stay raw and unprocessed; canonical
    names of the other categories contribute one case-normalized form; every
    synonym contributes exactly one case-normalized and one lemma-token form.
    """
    forms = []
    if entity.category in ("Gene", "CellLine"):
        raw_tokens = tuple(t.text_raw for t in _surface_tokens(entity.canonical_name))
        forms.append(DictionaryForm(entity.canonical_name, RAW_EXACT, entity.entity_id, raw_tokens))
    else:
        lowered = entity.canonical_name.lower()
        cased = tuple(t.text_raw for t in _surface_tokens(lowered))
        forms.append(DictionaryForm(lowered, CASE_NORMALIZED, entity.entity_id, cased))
    for synonym in entity.synonyms:
        lowered = synonym.lower()
        cased = tuple(t.text_raw for t in _surface_tokens(lowered))
        forms.append(DictionaryForm(lowered, CASE_NORMALIZED, entity.entity_id, cased))
        lemmas = tuple(t.text_lemma for t in _surface_tokens(synonym))
        forms.append(
            DictionaryForm(" ".join(lemmas), LEMMA_TOKENS, entity.entity_id, lemmas)
        )
    return forms


class EntityDictionary:
    """Multi-pattern lookup over all dictionary forms of all entities."""

    def __init__(self, entities):
        self.entities = {e.entity_id: e for e in entities}
        self.forms = []
        self.skipped_long_forms = 0
        self._automata = {
            RAW_EXACT: TokenAutomaton(),
            CASE_NORMALIZED: TokenAutomaton(),
            LEMMA_TOKENS: TokenAutomaton(),
        }
        for entity in sorted(entities, key=lambda e: e.entity_id):
            for form in expand_entity_forms(entity):
                if not form.tokens:
                    continue
                if len(form.tokens) > MAX_FORM_TOKENS:
                    self.skipped_long_forms += 1
                    logger.warning(
                        "form %r of %s exceeds %d tokens; skipped",
                        form.surface, form.entity_id, MAX_FORM_TOKENS,
                    )
                    continue
                self._automata[form.form_kind].add(form.tokens, len(self.forms))
                self.forms.append(form)
        for automaton in self._automata.values():
            automaton.finalize()

    def category(self, entity_id):
        return self.entities[entity_id].category

    def scan(self, form_kind, token_texts):
        """Yield (start, end, DictionaryForm) occurrences in a token layer."""
        for start, end, idx in self._automata[form_kind].scan(token_texts):
            yield start, end, self.forms[idx]

    def forms_of(self, entity_id):
        return [f for f in self.forms if f.entity_id == entity_id]

    def stats(self):
        """Entity and form counts per category."""
        per_category = {c: {"entities": 0, "forms": 0} for c in CATEGORIES}
        for entity in self.entities.values():
            per_category[entity.category]["entities"] += 1
        for form in self.forms:
            per_category[self.category(form.entity_id)]["forms"] += 1
        return {
            "total_entities": len(self.entities),
            "total_forms": len(self.forms),
            "skipped_long_forms": self.skipped_long_forms,
            "per_category": per_category,
        }


def build_dictionary(entities):
    return EntityDictionary(entities)
