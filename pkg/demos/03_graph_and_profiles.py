"""Walkthrough: the full pipeline, graph queries and CNV annotation.

Run from the repository root:

    python demos/03_graph_and_profiles.py
"""

import tempfile

from litgraph import demo
from litgraph.graphstore import load_cnv_profiles, load_graph
from litgraph.pipeline import PipelineConfig, run_pipeline

out_dir = tempfile.mkdtemp(prefix="litgraph_demo_")
summary = run_pipeline(PipelineConfig(
    corpus=demo.demo_corpus_path(),
    ontologies=demo.demo_ontology_paths(),
    out_dir=out_dir,
    cnv_profiles=demo.demo_profiles_path(),
))
print("corpus statistics:")
for key, value in summary.stats.items():
    print(f"  {key}: {value}")

graph = load_graph(f"{out_dir}/graph")
detroit = "cellosaurus:CVCL_1171"

print("\nranked partners of Detroit 562:")
for node, edge in graph.ranked_partners(detroit, limit=8):
    heads = f" via {','.join(edge.predicate_heads)}" if edge.predicate_heads else ""
    print(f"  {edge.corpus_score:7.3f}  {node.category:<9} {node.canonical_name}{heads}")

print("\nprimary evidence for Detroit 562 - TP53:")
for record in graph.evidence_for(detroit, "hugo:TP53"):
    lo, hi = record.sentence_char_span
    print(f"  [{record.doc_id}] {record.body[lo:hi]}")
    print(f"  triple-backed: {record.has_triple}")

# CNV profile annotated with the top-ranked located genes, the join the
# exploration portal plots (gains above the axis, losses below, markers in
# red at their genomic coordinates).
profiles = load_cnv_profiles(demo.demo_profiles_path())
annotated = graph.annotate_profile(profiles[detroit], detroit, top_k=5)
print("\nprofile markers for Detroit 562:")
for entity_id, interval, score in annotated.markers:
    name = graph.nodes[entity_id].canonical_name
    print(f"  {name:<6} chr{interval.chromosome}:{interval.start}-{interval.end}"
          f"  score={score:.3f}")
print(f"\nsnapshot written to {out_dir}")
print(f"serve it with: litgraph serve --graph {out_dir}/graph --demo")
