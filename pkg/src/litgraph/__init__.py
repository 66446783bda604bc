"""litgraph: literature-derived entity graphs for cancer cell line genomics.

The package turns a corpus of publication abstracts into a queryable graph:
dictionary-based entity mentions, rule-based relational triples, distance
scored entity pairs aggregated into ranked relations, and genomic profile
annotation on top of the result.
"""

__version__ = "0.1.0"
