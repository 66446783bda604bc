"""Tests for the read-only query service."""

import json
import threading
import urllib.error
import urllib.request

import pytest

from litgraph import demo
from litgraph.graphstore import load_cnv_profiles, load_graph
from litgraph.pipeline import PipelineConfig, run_pipeline
from litgraph.service import GraphService, make_server, render_body, resolve_bind


@pytest.fixture(scope="session")
def service(tmp_path_factory):
    out = tmp_path_factory.mktemp("service") / "out"
    run_pipeline(PipelineConfig(
        corpus=demo.demo_corpus_path(),
        ontologies=demo.demo_ontology_paths(),
        out_dir=str(out),
    ))
    graph = load_graph(out / "graph")
    profiles = load_cnv_profiles(demo.demo_profiles_path())
    return GraphService(graph, profiles)


class TestEndpoints:
    def test_stats(self, service):
        status, payload = service.handle("/api/stats", {})
        assert status == 200
        assert set(payload) == {
            "number_of_abstracts", "total_entity_matches", "unique_entity_matches",
            "unique_cell_lines", "abstracts_per_cell_line",
            "linked_entities_per_cell_line",
        }

    def test_list_and_prefix_search(self, service):
        status, payload = service.handle("/api/celllines", {"q": ["Det"]})
        assert status == 200
        assert [i["entity_id"] for i in payload["items"]] == ["cellosaurus:CVCL_1171"]

    def test_search_matches_synonyms(self, service):
        _, payload = service.handle("/api/celllines", {"q": ["hela c"]})
        # "HeLa cells" is a synonym of HeLa
        assert "cellosaurus:CVCL_0030" in [i["entity_id"] for i in payload["items"]]

    def test_pagination(self, service):
        _, full = service.handle("/api/celllines", {})
        _, page = service.handle("/api/celllines", {"offset": ["1"], "limit": ["2"]})
        assert len(page["items"]) == 2
        assert page["items"][0] == full["items"][1]
        assert page["total"] == full["total"]

    def test_summary_groups_by_category(self, service):
        status, payload = service.handle("/api/celllines/cellosaurus:CVCL_1171", {})
        assert status == 200
        categories = [g["category"] for g in payload["groups"]]
        assert categories == sorted(categories)
        gene_group = next(g for g in payload["groups"] if g["category"] == "Gene")
        scores = [p["corpus_score"] for p in gene_group["partners"]]
        assert scores == sorted(scores, reverse=True)

    def test_profile_markers(self, service):
        status, payload = service.handle(
            "/api/celllines/cellosaurus:CVCL_1171/profile", {"top_k": ["5"]}
        )
        assert status == 200
        assert payload["sample_count"] == 5
        assert [m["entity_id"] for m in payload["markers"]] == [
            "hugo:AURKA", "hugo:MYC", "hugo:NGF", "hugo:WEE1", "hugo:TP53",
        ]
        assert all(0.0 <= b["gain_frequency"] <= 1.0 for b in payload["bins"])

    def test_evidence_marks_are_offsets(self, service):
        status, payload = service.handle(
            "/api/celllines/cellosaurus:CVCL_1171/evidence/hugo:TP53", {}
        )
        assert status == 200
        record = payload["records"][0]
        text = record["abstract"]["text"]
        for lo, hi, entity_id in record["abstract"]["marks"]:
            assert text[lo:hi]  # valid, non-empty slice
        sentence = record["sentence"]
        assert sentence["text"] == text[sentence["char_start"]:sentence["char_end"]]
        for lo, hi, _ in sentence["marks"]:
            assert 0 <= lo < hi <= len(sentence["text"])

    def test_unknown_id_is_not_found_payload(self, service):
        status, payload = service.handle("/api/celllines/cellosaurus:CVCL_0000", {})
        assert status == 404
        assert payload["error"]["code"] == 404

    def test_unknown_endpoint(self, service):
        status, payload = service.handle("/api/nothing", {})
        assert status == 404

    def test_bad_query_parameter(self, service):
        status, payload = service.handle("/api/celllines", {"limit": ["soon"]})
        assert status == 400

    def test_responses_byte_identical(self, service):
        _, a = service.handle("/api/celllines/cellosaurus:CVCL_1171", {})
        _, b = service.handle("/api/celllines/cellosaurus:CVCL_1171", {})
        assert render_body(a) == render_body(b)


class TestHttpServer:
    def test_live_round_trip(self, tmp_path):
        out = tmp_path / "out"
        run_pipeline(PipelineConfig(
            corpus=demo.demo_corpus_path(),
            ontologies=demo.demo_ontology_paths(),
            out_dir=str(out),
        ))
        server = make_server(out / "graph", demo.demo_profiles_path(),
                             bind="127.0.0.1:0")
        port = server.server_address[1]
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        try:
            with urllib.request.urlopen(f"http://127.0.0.1:{port}/api/stats") as resp:
                assert resp.status == 200
                payload = json.loads(resp.read())
                assert payload["number_of_abstracts"] == 25
            with pytest.raises(urllib.error.HTTPError) as exc:
                urllib.request.urlopen(
                    f"http://127.0.0.1:{port}/api/celllines/cellosaurus:CVCL_0000"
                )
            assert exc.value.code == 404
            assert json.loads(exc.value.read())["error"]["code"] == 404
        finally:
            server.shutdown()
            server.server_close()


class TestBindResolution:
    def test_explicit_bind(self):
        assert resolve_bind("0.0.0.0:9000") == ("0.0.0.0", 9000)

    def test_env_var(self, monkeypatch):
        monkeypatch.setenv("LITGRAPH_BIND", "127.0.0.1:7777")
        assert resolve_bind(None) == ("127.0.0.1", 7777)

    def test_default(self, monkeypatch):
        monkeypatch.delenv("LITGRAPH_BIND", raising=False)
        assert resolve_bind(None) == ("127.0.0.1", 8765)

    def test_invalid(self):
        with pytest.raises(ValueError):
            resolve_bind("nonsense")
