"""Tests for dictionary-based mention detection."""

import random

from litgraph.corpus import make_document
from litgraph.matcher import match_document, match_span
from litgraph.ontology import LEMMA_TOKENS, RAW_EXACT, build_dictionary
from tests.conftest import make_entity
from tests.oracles import brute_force_match


def doc_of(text, doc_id="d1", title=""):
    return make_document(doc_id, title, text)


class TestMatchDocument:
    def test_cell_line_raw_exact(self, fixture_dictionary):
        doc = doc_of("A small-cell lung cancer cell line (NCI-H209) expresses RB1.")
        mentions = match_document(doc, fixture_dictionary)
        cell = [m for m in mentions if m.entity_id == "cellosaurus:CVCL_1525"]
        assert len(cell) == 1
        assert cell[0].form_kind == RAW_EXACT

    def test_no_dictionary_surface_yields_nothing(self, fixture_dictionary):
        doc = doc_of("Nothing relevant happens here at all.")
        assert match_document(doc, fixture_dictionary) == []

    def test_lemma_match_spans_two_tokens(self):
        # canonical name deliberately different so only the synonym's lemma
        # form can fire on the singular text
        entity = make_entity("ncit:C4872", "Mammary Neoplasm", synonyms=["Breast Carcinomas"])
        dictionary = build_dictionary([entity])
        doc = doc_of("The breast carcinoma grew.")
        mentions = match_document(doc, dictionary)
        assert len(mentions) == 1
        assert mentions[0].form_kind == LEMMA_TOKENS
        assert mentions[0].length == 2

    def test_case_sensitivity_of_raw_forms(self, fixture_dictionary):
        lower = doc_of("each step of the protocol was repeated")
        assert [m for m in match_document(lower, fixture_dictionary)
                if m.entity_id == "hugo:STEP"] == []
        upper = doc_of("STEP was overexpressed in these samples")
        hits = [m for m in match_document(upper, fixture_dictionary)
                if m.entity_id == "hugo:STEP"]
        assert len(hits) == 1

    def test_mentions_sorted_by_position(self, fixture_dictionary):
        doc = doc_of("TP53 and RB1 and EGFR occur in HeLa.")
        mentions = match_document(doc, fixture_dictionary)
        starts = [m.start for m in mentions]
        assert starts == sorted(starts)

    def test_longest_match_displaces_shorter_same_category(self):
        entities = [
            make_entity("cellosaurus:CVCL_0030", "HeLa"),
            make_entity("cellosaurus:CVCL_0058", "HeLa S3"),
        ]
        dictionary = build_dictionary(entities)
        doc = doc_of("Cultures of HeLa S3 were prepared.")
        mentions = match_document(doc, dictionary)
        assert [m.entity_id for m in mentions] == ["cellosaurus:CVCL_0058"]

    def test_cross_category_overlap_kept(self):
        entities = [
            make_entity("uberon:0000310", "breast"),
            make_entity("ncit:C4872", "Breast Carcinoma"),
        ]
        dictionary = build_dictionary(entities)
        doc = doc_of("Invasive breast carcinoma was confirmed.")
        by_cat = {m.category for m in match_document(doc, dictionary)}
        assert by_cat == {"Anatomy", "Disease"}

    def test_ambiguous_surface_emits_all_candidates(self):
        entities = [
            make_entity("ncit:C1", "fusion"),
            make_entity("uberon:0001", "Fusion"),
        ]
        dictionary = build_dictionary(entities)
        doc = doc_of("A fusion event was detected.")
        mentions = match_document(doc, dictionary)
        assert len(mentions) == 2
        for m in mentions:
            assert len(m.ambiguous_with) == 1


class TestMatchSpan:
    def test_subject_phrase_links_gene(self, fixture_dictionary):
        doc = doc_of("It involves the retinoblastoma protein RB1 directly.")
        target = next(i for i, t in enumerate(doc.tokens) if t.text_raw == "RB1")
        mentions = match_span(doc, (2, target + 1), fixture_dictionary)
        assert [m.entity_id for m in mentions] == ["hugo:RB1"]

    def test_predicate_phrase_has_no_entity(self, fixture_dictionary):
        doc = doc_of("expresses an aberrant underphosphorylated form")
        assert match_span(doc, (0, len(doc.tokens)), fixture_dictionary) == []

    def test_cell_line_inside_parenthetical(self, fixture_dictionary):
        doc = doc_of("small-cell lung cancer cell line (NCI-H209)")
        mentions = match_span(doc, (0, len(doc.tokens)), fixture_dictionary)
        assert [m.entity_id for m in mentions] == ["cellosaurus:CVCL_1525"]


def random_dictionary(rng):
    vocab = ["alpha", "beta", "gamma", "delta", "kappa", "sigma", "omega",
             "cells", "tumor", "gene", "line", "factor", "STEP", "step"]
    namespaces = ["hugo", "cellosaurus", "ncit", "uberon", "progenetix"]
    entities = []
    for i in range(rng.randint(3, 10)):
        ns = rng.choice(namespaces)
        n_tokens = rng.randint(1, 3)
        name = " ".join(rng.choice(vocab) for _ in range(n_tokens))
        synonyms = []
        if rng.random() < 0.5:
            synonyms.append(" ".join(rng.choice(vocab) for _ in range(rng.randint(1, 3))))
        entities.append(make_entity(f"{ns}:E{i}", name, synonyms=synonyms))
    return build_dictionary(entities)


class TestInvariants:
    def test_raw_exact_mentions_reproduce_surface_exactly(self, fixture_dictionary):
        doc = doc_of("Detroit 562 and NCI-H209 with STEP were compared to HeLa S3.")
        for m in match_document(doc, fixture_dictionary):
            if m.form_kind == RAW_EXACT:
                surfaces = {
                    f.surface for f in fixture_dictionary.forms_of(m.entity_id)
                    if f.form_kind == RAW_EXACT
                }
                assert doc.span_text(*m.token_span) in surfaces

    def test_adding_entity_only_displaces_shorter_overlaps(self):
        base_entities = [
            make_entity("hugo:RB1", "RB1"),
            make_entity("ncit:C1", "breast tumor", synonyms=["breast tumors"]),
        ]
        doc = doc_of("RB1 levels in the breast tumor were low.")
        before = match_document(doc, build_dictionary(base_entities))
        grown = base_entities + [make_entity("uberon:01", "levels")]
        after = match_document(doc, build_dictionary(grown))
        kept = {(m.entity_id, m.token_span) for m in after}
        for m in before:
            displaced = any(
                o.category == m.category and o.length > m.length
                and o.start < m.end and m.start < o.end
                for o in after
            )
            assert (m.entity_id, m.token_span) in kept or displaced


class TestOracleEquivalence:
    def test_random_documents_match_brute_force(self, subtests=None):
        rng = random.Random(20240917)
        vocab = ["alpha", "beta", "gamma", "delta", "kappa", "sigma", "omega",
                 "cells", "tumor", "gene", "line", "factor", "STEP", "step",
                 "of", "the", "in"]
        for trial in range(60):
            dictionary = random_dictionary(rng)
            n = rng.randint(0, 60)
            text = " ".join(rng.choice(vocab) for _ in range(n))
            doc = make_document(f"r{trial}", "", text)
            fast = match_document(doc, dictionary)
            slow = brute_force_match(doc, dictionary)
            key = lambda m: (m.token_span, m.entity_id, m.form_kind, tuple(m.ambiguous_with))
            assert [key(m) for m in fast] == [key(m) for m in slow], f"trial {trial}"
