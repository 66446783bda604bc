import pytest

from litgraph.ontology import GenomicInterval, OntologyEntity, build_dictionary


def make_entity(entity_id, canonical, synonyms=(), parents=(), location=None):
    from litgraph.ontology import category_of
    where = None
    if location:
        where = GenomicInterval(*location)
    return OntologyEntity(
        entity_id=entity_id,
        category=category_of(entity_id),
        canonical_name=canonical,
        synonyms=list(synonyms),
        parents=list(parents),
        genomic_location=where,
    )


@pytest.fixture(scope="session")
def fixture_entities():
    """Small hand-built ontology slice used across matcher and triple tests."""
    return [
        make_entity("cellosaurus:CVCL_0030", "HeLa", synonyms=["HeLa cells"]),
        make_entity("cellosaurus:CVCL_0058", "HeLa S3", parents=["cellosaurus:CVCL_0030"]),
        make_entity("cellosaurus:CVCL_1276", "HeLa 229", parents=["cellosaurus:CVCL_0030"]),
        make_entity("cellosaurus:CVCL_1922", "HeLa Kyoto", parents=["cellosaurus:CVCL_0030"]),
        make_entity("cellosaurus:CVCL_1525", "NCI-H209"),
        make_entity("cellosaurus:CVCL_1171", "Detroit 562"),
        make_entity("hugo:RB1", "RB1", location=("13", 48300000, 48500000)),
        make_entity("hugo:EGFR", "EGFR", location=("7", 55000000, 55200000)),
        make_entity("hugo:TP53", "TP53", location=("17", 7500000, 7700000)),
        make_entity("hugo:STEP", "STEP"),
        make_entity("hugo:GAS5", "GAS5", location=("1", 173700000, 173800000)),
        make_entity(
            "ncit:C4872", "Breast Carcinoma",
            synonyms=["Breast Carcinomas", "carcinoma of the breast"],
        ),
        make_entity("ncit:C102872", "Pharyngeal Squamous Cell Carcinoma"),
        make_entity("uberon:0000310", "breast"),
    ]


@pytest.fixture(scope="session")
def fixture_dictionary(fixture_entities):
    return build_dictionary(fixture_entities)
