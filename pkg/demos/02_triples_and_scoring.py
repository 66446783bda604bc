"""Walkthrough: relational triples, pair scores and the triple bonus.

Run from the repository root:

    python demos/02_triples_and_scoring.py
"""

from litgraph import demo
from litgraph.corpus import make_document
from litgraph.matcher import match_document
from litgraph.ontology import build_dictionary, load_ontologies
from litgraph.scoring import compute_pair_scores
from litgraph.triples import extract_triples

dictionary = build_dictionary(load_ontologies(demo.demo_ontology_paths()))

# The rule engine turns one sentence into subject / predicate / object with
# bracketed context, then links each end against the dictionary.
doc = make_document(
    "demo", "",
    "A small-cell lung cancer cell line (NCI-H209) expresses an aberrant "
    "underphosphorylated form of the retinoblastoma protein RB1.",
)
for t in extract_triples(doc, dictionary):
    print(t.render())
    print("  subject links:", t.subject_entities)
    print("  object links: ", t.object_entities)

# Pair scores: inverse-log token distance summed over all mention pairs.
# A supporting triple adds exactly 1.0, which is why the first document
# outranks the second despite identical mention geometry.
with_triple = make_document("a", "", "HOS stably expresses CDKN2A.")
pair_only = make_document("b", "", "HOS near wildtype SMAD4.")
print("\npair scores:")
for doc in (with_triple, pair_only):
    mentions = match_document(doc, dictionary)
    triples = extract_triples(doc, dictionary)
    for score in compute_pair_scores(doc, mentions, triples):
        print(f"  {doc.doc_id}: {score.entity_a} - {score.entity_b}  "
              f"distance={score.distance_score:.4f} bonus={score.triple_bonus} "
              f"total={score.total:.4f}")
