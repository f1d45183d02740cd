"""HTTP/JSON service consumed by the curation UI.

Read endpoints expose components, noyau detail and the size distribution;
mutating endpoints (merge, status) are applied one at a time under a lock
and appended to a JSON-lines journal, so the journal order is the
application order. /export downloads the curated classification. When a
static directory is configured, the single-page UI is served from it.
"""

from __future__ import annotations

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlsplit

from . import aggregation, saliency
from .aggregation import CurationSession, build_noyau_graph
from .engine import Engine
from .errors import CurationError, UnknownNodeError


class ServiceError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


class CurationService:
    """Route logic, independent of the HTTP plumbing."""

    def __init__(self, engine: Engine, valence: int = 2, journal_path: str | None = None):
        self.engine = engine
        self.valence = valence
        self.session = CurationSession(build_noyau_graph(engine.lcc, valence))
        self.journal_path = journal_path
        self.lock = threading.Lock()

    # -- helpers -----------------------------------------------------------

    def _journal(self, entry: dict) -> None:
        if not self.journal_path:
            return
        record = dict(entry)
        record["ts"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
        with open(self.journal_path, "a", encoding="utf-8") as handle:
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")

    def _noyau_summary(self, head: int) -> dict:
        profile = saliency.term_contributions(self.engine, head)
        return {
            "id": head,
            "doc_id": self.engine.documents[head].doc_id,
            "size": len(self.session.graph.strict_members.get(head, [head])),
            "top_terms": [
                {"term": term, "per_mille": saliency.per_mille(weight)}
                for term, weight in profile.terms[:3]
            ],
        }

    def _component_payload(self, session: CurationSession, index: int) -> dict:
        component = session.components[index]
        return {
            "id": component.index,
            "status": session.statuses[component.index],
            "doc_count": component.doc_count,
            "noyaux": [self._noyau_summary(h) for h in component.heads],
        }

    def _session_for(self, valence: int | None) -> CurationSession:
        if valence is None or valence == self.valence:
            return self.session
        # Different valence: stateless read-only view, pending statuses.
        return CurationSession(build_noyau_graph(self.engine.lcc, valence))

    # -- read endpoints ------------------------------------------------------

    def list_components(self, valence: int | None = None) -> dict:
        with self.lock:
            session = self._session_for(valence)
            return {
                "valence": session.graph.valence,
                "components": [
                    self._component_payload(session, c.index) for c in session.components
                ],
            }

    def component_detail(self, index: int) -> dict:
        with self.lock:
            if not 0 <= index < len(self.session.components):
                raise ServiceError(404, f"unknown component {index}")
            payload = self._component_payload(self.session, index)
            component = self.session.components[index]
            head_set = set(component.heads)
            payload["groups"] = [
                {"label": g.label, "noyau_ids": sorted(g.heads)}
                for g in self.session.groups
                if g.heads & head_set
            ]
            supporting = sorted(
                {
                    doc
                    for (a, _b), docs in self.session.graph.edges.items()
                    if a in head_set
                    for doc in docs
                }
            )
            payload["supporting_docs"] = [
                {
                    "doc_id": self.engine.documents[v].doc_id,
                    "heads": [self.engine.documents[h].doc_id for h in self.engine.lcc[v]],
                }
                for v in supporting
            ]
            return payload

    def noyau_detail(self, head: int) -> dict:
        with self.lock:
            try:
                profile = saliency.term_contributions(self.engine, head)
            except (UnknownNodeError, IndexError):
                raise ServiceError(404, f"unknown noyau {head}") from None
            return {
                "id": head,
                "doc_id": profile.head_doc_id,
                "component": self.session.component_of(head),
                "members": [
                    {
                        "doc_id": m.doc_id,
                        "density": m.density,
                        "heads_count": m.heads_count,
                    }
                    for m in profile.members
                ],
                "terms": [
                    {
                        "term": term,
                        "contribution": weight,
                        "per_mille": saliency.per_mille(weight),
                    }
                    for term, weight in profile.terms
                ],
                "report": saliency.render_class_report(profile),
            }

    def sizes(self) -> dict:
        with self.lock:
            histogram = aggregation.size_distribution(self.engine.lcc)
            return {"sizes": [[size, count] for size, count in histogram.items()]}

    def export(self, validated_only: bool = False) -> list[dict]:
        with self.lock:
            return self.session.export(self.engine, validated_only=validated_only)

    # -- mutating endpoints ---------------------------------------------------

    def merge(self, noyau_ids: list[int], label: str) -> dict:
        with self.lock:
            try:
                group = self.session.merge(noyau_ids, label)
            except CurationError as err:
                raise ServiceError(409, str(err)) from None
            self._journal({"action": "merge", "noyau_ids": sorted(noyau_ids), "label": label})
            return {
                "ok": True,
                "label": group.label,
                "noyau_ids": sorted(group.heads),
                "component": self.session.component_of(min(group.heads)),
            }

    def set_status(self, component: int, status: str) -> dict:
        with self.lock:
            try:
                self.session.set_status(component, status)
            except CurationError as err:
                raise ServiceError(409, str(err)) from None
            self._journal({"action": "set_status", "component": component, "status": status})
            return {"ok": True, "component": component, "status": status}


def _json_bytes(payload) -> bytes:
    return (json.dumps(payload, ensure_ascii=False) + "\n").encode("utf-8")


class _Handler(BaseHTTPRequestHandler):
    service: CurationService
    static_dir: Path | None = None

    def log_message(self, *args):  # keep test output quiet
        pass

    def _send(self, status: int, payload, content_type: str = "application/json") -> None:
        body = _json_bytes(payload) if content_type == "application/json" else payload
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _static(self, path: str) -> bool:
        if self.static_dir is None:
            return False
        rel = "index.html" if path == "/" else path.lstrip("/")
        target = (self.static_dir / rel).resolve()
        if not str(target).startswith(str(self.static_dir.resolve())) or not target.is_file():
            return False
        types = {
            ".html": "text/html; charset=utf-8",
            ".js": "text/javascript; charset=utf-8",
            ".css": "text/css; charset=utf-8",
        }
        self._send(200, target.read_bytes(), types.get(target.suffix, "application/octet-stream"))
        return True

    def do_GET(self):
        url = urlsplit(self.path)
        query = parse_qs(url.query)
        parts = [p for p in url.path.split("/") if p]
        try:
            if url.path == "/components":
                valence = int(query["valence"][0]) if "valence" in query else None
                self._send(200, self.service.list_components(valence))
            elif len(parts) == 2 and parts[0] == "components":
                self._send(200, self.service.component_detail(int(parts[1])))
            elif len(parts) == 2 and parts[0] == "noyaux":
                self._send(200, self.service.noyau_detail(int(parts[1])))
            elif url.path == "/sizes":
                self._send(200, self.service.sizes())
            elif url.path == "/export":
                validated_only = query.get("validated_only", ["false"])[0] == "true"
                self._send(200, self.service.export(validated_only))
            elif self._static(url.path):
                pass
            else:
                self._send(404, {"error": f"no such resource: {url.path}"})
        except ServiceError as err:
            self._send(err.status, {"error": str(err)})
        except (ValueError, KeyError) as err:
            self._send(400, {"error": str(err)})

    def do_POST(self):
        length = int(self.headers.get("Content-Length", "0"))
        try:
            body = json.loads(self.rfile.read(length) or b"{}")
        except json.JSONDecodeError as err:
            self._send(400, {"error": f"invalid JSON body: {err}"})
            return
        try:
            if self.path == "/merge":
                noyau_ids = [int(v) for v in body["noyau_ids"]]
                self._send(200, self.service.merge(noyau_ids, str(body["label"])))
            elif self.path == "/status":
                self._send(
                    200,
                    self.service.set_status(int(body["component_id"]), str(body["status"])),
                )
            else:
                self._send(404, {"error": f"no such resource: {self.path}"})
        except ServiceError as err:
            self._send(err.status, {"error": str(err)})
        except (ValueError, KeyError, TypeError) as err:
            self._send(400, {"error": f"bad request: {err}"})


def make_server(
    engine: Engine,
    host: str = "127.0.0.1",
    port: int = 0,
    valence: int = 2,
    journal_path: str | None = None,
    static_dir: str | None = None,
) -> ThreadingHTTPServer:
    service = CurationService(engine, valence=valence, journal_path=journal_path)
    handler = type(
        "Handler",
        (_Handler,),
        {"service": service, "static_dir": Path(static_dir) if static_dir else None},
    )
    return ThreadingHTTPServer((host, port), handler)
