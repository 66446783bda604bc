"""Read-only HTTP query service over a persisted graph snapshot.

Routing is a pure function of (path, query) against the immutable snapshot,
so identical requests produce byte-identical bodies. Span emphasis is
always shipped as offset lists; the server never renders inline markup.
"""

import json
import logging
import os
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, unquote, urlparse

from .graphstore import UnknownEntityError, load_cnv_profiles, load_graph

logger = logging.getLogger(__name__)

DEFAULT_BIND = "127.0.0.1:8765"
BIND_ENV_VAR = "LITGRAPH_BIND"
DEFAULT_LIST_LIMIT = 50


class ServiceError(Exception):
    def __init__(self, status, message):
        super().__init__(message)
        self.status = status
        self.message = message


def _int_param(query, name, default):
    values = query.get(name)
    if not values:
        return default
    try:
        value = int(values[0])
    except ValueError:
        raise ServiceError(400, f"query parameter {name} must be an integer") from None
    if value < 0:
        raise ServiceError(400, f"query parameter {name} must be >= 0")
    return value


def _node_summary(node):
    return {
        "entity_id": node.entity_id,
        "category": node.category,
        "canonical_name": node.canonical_name,
    }


def _interval_payload(interval):
    return {
        "chromosome": interval.chromosome,
        "start": interval.start,
        "end": interval.end,
    }


class GraphService:
    """Query layer shared by the HTTP server and in-process tests."""

    def __init__(self, graph, profiles=None):
        self.graph = graph
        self.profiles = profiles or {}

    def handle(self, path, query):
        """Dispatch one GET; returns (status, payload)."""
        try:
            parts = [unquote(p) for p in path.strip("/").split("/") if p]
            if parts == ["api", "stats"]:
                return 200, self.stats()
            if parts == ["api", "celllines"]:
                return 200, self.list_cell_lines(
                    prefix=query.get("q", [""])[0],
                    offset=_int_param(query, "offset", 0),
                    limit=_int_param(query, "limit", DEFAULT_LIST_LIMIT),
                )
            if len(parts) == 3 and parts[:2] == ["api", "celllines"]:
                return 200, self.cell_line_summary(parts[2])
            if len(parts) == 4 and parts[:2] == ["api", "celllines"] and parts[3] == "profile":
                return 200, self.profile(parts[2], _int_param(query, "top_k", 5))
            if len(parts) == 5 and parts[:2] == ["api", "celllines"] and parts[3] == "evidence":
                return 200, self.evidence(parts[2], parts[4])
            raise ServiceError(404, f"no such endpoint: {path}")
        except ServiceError as exc:
            return exc.status, {"error": {"code": exc.status, "message": exc.message}}
        except UnknownEntityError as exc:
            return 404, {"error": {"code": 404, "message": str(exc)}}

    def stats(self):
        return self.graph.stats.to_dict()

    def list_cell_lines(self, prefix="", offset=0, limit=DEFAULT_LIST_LIMIT):
        needle = prefix.lower()
        items = []
        for node in self.graph.cell_lines():
            if needle:
                names = [node.canonical_name] + list(node.synonyms)
                if not any(n.lower().startswith(needle) for n in names):
                    continue
            items.append(node)
        window = items[offset:offset + limit]
        return {
            "total": len(items),
            "offset": offset,
            "limit": limit,
            "items": [
                {
                    **_node_summary(node),
                    "synonyms": list(node.synonyms),
                    "n_partners": len(self.graph.ranked_partners(node.entity_id)),
                }
                for node in window
            ],
        }

    def cell_line_summary(self, entity_id):
        node = self.graph.require(entity_id)
        if node.category != "CellLine":
            raise ServiceError(404, f"{entity_id} is not a cell line")
        groups = {}
        for partner, edge in self.graph.ranked_partners(entity_id):
            groups.setdefault(partner.category, []).append(
                {
                    **_node_summary(partner),
                    "corpus_score": edge.corpus_score,
                    "n_evidence": edge.n_evidence,
                    "predicate_heads": list(edge.predicate_heads),
                    "has_location": partner.genomic_location is not None,
                }
            )
        return {
            **_node_summary(node),
            "synonyms": list(node.synonyms),
            "groups": [
                {"category": category, "partners": groups[category]}
                for category in sorted(groups)
            ],
        }

    def profile(self, entity_id, top_k):
        self.graph.require(entity_id)
        profile = self.profiles.get(entity_id)
        if profile is None:
            raise ServiceError(404, f"no CNV profile for {entity_id}")
        annotated = self.graph.annotate_profile(profile, entity_id, top_k)
        return {
            "cell_line_id": entity_id,
            "sample_count": profile.sample_count,
            "bins": [
                {
                    **_interval_payload(interval),
                    "gain_frequency": gain,
                    "loss_frequency": loss,
                }
                for interval, gain, loss in profile.bins
            ],
            "markers": [
                {
                    "entity_id": marker_id,
                    "label": self.graph.nodes[marker_id].canonical_name,
                    **_interval_payload(interval),
                    "corpus_score": score,
                }
                for marker_id, interval, score in annotated.markers
            ],
        }

    def evidence(self, entity_id, partner_id):
        records = self.graph.evidence_for(entity_id, partner_id)
        payload = []
        for record in records:
            lo, hi = record.sentence_char_span
            sentence_marks = [
                [s - lo, e - lo, eid]
                for s, e, eid in record.marks
                if s >= lo and e <= hi
            ]
            payload.append(
                {
                    "doc_id": record.doc_id,
                    "title": record.title,
                    "total": record.total,
                    "distance_score": record.distance_score,
                    "triple_bonus": record.triple_bonus,
                    "has_triple": record.has_triple,
                    "sentence": {
                        "text": record.body[lo:hi],
                        "char_start": lo,
                        "char_end": hi,
                        "marks": sentence_marks,
                    },
                    "abstract": {
                        "text": record.body,
                        "marks": [list(m) for m in record.marks],
                    },
                }
            )
        return {
            "cell_line": _node_summary(self.graph.require(entity_id)),
            "partner": _node_summary(self.graph.require(partner_id)),
            "records": payload,
        }


def render_body(payload):
    """Canonical response body; stable across runs for identical snapshots."""
    return (json.dumps(payload, sort_keys=True, separators=(",", ":"),
                       ensure_ascii=True) + "\n").encode("ascii")


def _make_handler(service, static_dir):
    class Handler(BaseHTTPRequestHandler):
        def do_GET(self):
            url = urlparse(self.path)
            if url.path.startswith("/api"):
                status, payload = service.handle(url.path, parse_qs(url.query))
                body = render_body(payload)
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
                return
            if static_dir:
                self._serve_static(url.path)
                return
            body = render_body({"error": {"code": 404, "message": "not found"}})
            self.send_response(404)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _serve_static(self, path):
            rel = path.lstrip("/") or "index.html"
            full = os.path.normpath(os.path.join(static_dir, rel))
            if not full.startswith(os.path.abspath(static_dir)) or not os.path.isfile(full):
                # SPA fallback: unknown client-side routes load the shell
                full = os.path.join(static_dir, "index.html")
                if not os.path.isfile(full):
                    self.send_response(404)
                    self.end_headers()
                    return
            content_types = {
                ".html": "text/html", ".js": "application/javascript",
                ".css": "text/css", ".json": "application/json",
                ".svg": "image/svg+xml", ".map": "application/json",
            }
            ctype = content_types.get(os.path.splitext(full)[1], "application/octet-stream")
            with open(full, "rb") as fh:
                body = fh.read()
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def log_message(self, fmt, *args):
            logger.debug("%s - %s", self.address_string(), fmt % args)

    return Handler


def resolve_bind(bind=None):
    value = bind or os.environ.get(BIND_ENV_VAR) or DEFAULT_BIND
    host, _, port = value.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bind address must be HOST:PORT, got {value!r}")
    return host, int(port)


def make_server(graph_path, profiles_path=None, bind=None, static_dir=None):
    graph = load_graph(graph_path)
    profiles = load_cnv_profiles(profiles_path) if profiles_path else {}
    service = GraphService(graph, profiles)
    host, port = resolve_bind(bind)
    abs_static = os.path.abspath(static_dir) if static_dir else None
    server = ThreadingHTTPServer((host, port), _make_handler(service, abs_static))
    return server


def serve(graph_path, profiles_path=None, bind=None, static_dir=None):
    """Run the query service until interrupted."""
    server = make_server(graph_path, profiles_path, bind, static_dir)
    host, port = server.server_address[:2]
    logger.info("serving on http://%s:%s", host, port)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
