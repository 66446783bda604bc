"""Walkthrough: tokenization layers and dictionary matching.

Run from the repository root:

    python demos/01_corpus_and_matching.py
"""

from litgraph import demo
from litgraph.corpus import load_corpus, make_document
from litgraph.matcher import match_document
from litgraph.ontology import build_dictionary, load_ontologies

# Every document carries three normalization layers. The raw layer is what
# the text said; the cased and lemma layers are what matching uses.
doc = make_document(
    "demo", "", "A small-cell lung cancer cell line (NCI-H209) expresses RB1."
)
print("token layers:")
for tok in doc.tokens[:10]:
    print(f"  {tok.text_raw!r:18} cased={tok.text_cased!r:18} lemma={tok.text_lemma!r}")

# The dictionary expands every ontology entry into matchable forms. Gene and
# cell line canonical names stay raw: "STEP" the gene never matches "step".
entities = load_ontologies(demo.demo_ontology_paths())
dictionary = build_dictionary(entities)
print("\ndictionary:", dictionary.stats()["total_forms"], "forms for",
      dictionary.stats()["total_entities"], "entities")

mentions = match_document(doc, dictionary)
print("\nmentions found:")
for m in mentions:
    print(f"  {m.entity_id:<24} {m.category:<9} span={m.token_span} via {m.form_kind}")

# The same machinery over the whole bundled demo corpus.
documents = load_corpus(demo.demo_corpus_path()).documents
total = sum(len(match_document(d, dictionary)) for d in documents)
print(f"\ndemo corpus: {len(documents)} abstracts, {total} mentions")
