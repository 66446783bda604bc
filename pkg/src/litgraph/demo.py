"""Paths to the bundled demo corpus, fixture ontologies and CNV profiles."""

from importlib import resources


def data_path(*parts):
    return str(resources.files("litgraph").joinpath("data", *parts))


def demo_corpus_path():
    return data_path("corpus", "demo_abstracts.jsonl")


def demo_ontology_paths():
    return {
        "Gene": data_path("ontologies", "genes.jsonl"),
        "CellLine": data_path("ontologies", "celllines.jsonl"),
        "Disease": data_path("ontologies", "diseases.jsonl"),
        "Anatomy": data_path("ontologies", "anatomy.jsonl"),
        "Cytoband": data_path("ontologies", "cytobands.jsonl"),
    }


def demo_profiles_path():
    return data_path("cnv", "demo_profiles.jsonl")


def mini_gold_corpus_path():
    return data_path("gold", "mini_corpus.jsonl")


def mini_gold_path():
    return data_path("gold", "mini_gold.jsonl")
