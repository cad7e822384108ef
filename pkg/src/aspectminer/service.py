"""HTTP service over a mined workspace: read-only mining endpoints plus the
triage/expansion writes the companion UI drives.

All payloads are JSON. Mining results are immutable snapshots computed at
startup; triage writes go through a single lock, so readers observe either
the pre- or post-verdict state, never a partial batch.
"""

from __future__ import annotations

import json
import mimetypes
import threading
from functools import partial
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import combine, dynmine, fca, metrics
from .errors import InputError, UnknownMember, UnknownSeed
from .fanin import Seed
from .workspace import Workspace, WorkspaceState

DEFAULT_PORT = 7430
PORT_ENV_VAR = "ASPECTMINER_PORT"


def _seed_view(state: WorkspaceState, seed: Seed) -> dict:
    verdicts = state.triage.verdict_map(seed.id, seed.methods)
    effective = state.triage.effective_methods(seed)
    view = {
        "id": seed.id,
        "technique": seed.technique,
        "label": seed.label,
        "interpretation": seed.interpretation,
        "methods": sorted(seed.methods),
        "verdicts": verdicts,
        "effectiveMethods": sorted(effective),
        "note": state.triage.notes.get(seed.id, ""),
    }
    expansion = state.expansions.get(seed.id)
    if expansion is not None:
        view["expansion"] = _expansion_view(expansion)
    if state.truth is not None and effective:
        scored = Seed(seed.id, seed.technique, seed.label, effective)
        concern = metrics.assign_concern(scored, state.truth)
        view["score"] = {
            "concern": concern,
            "recalled": metrics.recalled_methods(scored, state.truth.concerns[concern]),
            "quality": metrics.seed_quality(scored, state.truth.concerns[concern]),
            "seedSize": len(effective),
        }
    return view


def _expansion_view(expanded: combine.ExpandedSeed) -> dict:
    return {
        "originId": expanded.origin.id,
        "seedId": f"{expanded.origin.id}+ident",
        "originMethods": sorted(expanded.origin.methods),
        "addedMethods": sorted(expanded.added_methods),
        "nearestConcepts": list(expanded.nearest),
        "score": expanded.score,
        "methods": sorted(expanded.methods),
    }


def _lattice_view(lat: fca.ConceptLattice) -> dict:
    nodes = []
    for idx, c in enumerate(lat.concepts):
        nodes.append(
            {
                "index": idx,
                "extent": sorted(c.extent),
                "intent": sorted(c.intent),
                "alpha": sorted(lat.alpha(c)),
                "beta": sorted(lat.beta(c)),
            }
        )
    edges = sorted(lat.cover_edges)
    return {"nodes": nodes, "edges": [[a, b] for a, b in edges]}


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def __init__(self, *args, state: WorkspaceState, ui_dir: Path | None, **kwargs):
        self.state = state
        self.ui_dir = ui_dir
        super().__init__(*args, **kwargs)

    def log_message(self, format, *args):  # quiet; errors surface as responses
        pass

    # -- plumbing ---------------------------------------------------------

    def _send_json(self, payload, status: int = 200) -> None:
        body = json.dumps(payload, sort_keys=True, indent=1).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _error(self, status: int, message: str) -> None:
        self._send_json({"error": message}, status=status)

    def _read_json(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ValueError(f"malformed JSON payload: {exc}") from exc

    # -- routes -----------------------------------------------------------

    def do_GET(self):
        url = urlparse(self.path)
        query = {k: v[-1] for k, v in parse_qs(url.query).items()}
        state = self.state
        try:
            if url.path == "/api/summary":
                self._send_json(self._summary())
            elif url.path == "/api/seeds":
                technique = query.get("technique")
                with state.lock:
                    views = [
                        _seed_view(state, s) for s in state.all_seeds(technique)
                    ]
                self._send_json({"seeds": views})
            elif url.path == "/api/concepts":
                self._concepts(query.get("source", "ident"))
            elif url.path == "/api/lattice":
                self._lattice(query.get("source", "ident"))
            elif url.path == "/api/report":
                with state.lock:
                    rows = state.score_rows()
                self._send_json(
                    {
                        "rows": [
                            {
                                "concern": r.concern,
                                "technique": r.technique,
                                "recalled": r.recalled,
                                "quality": r.quality_percent,
                                "seedSize": r.seed_size,
                            }
                            for r in rows
                        ]
                    }
                )
            elif url.path.startswith("/api/"):
                self._error(404, f"no such endpoint {url.path}")
            else:
                self._static(url.path)
        except InputError as exc:
            self._error(404, str(exc))
        except Exception as exc:  # pragma: no cover - internal fault surface
            self._error(500, f"internal error: {exc}")

    def do_POST(self):
        url = urlparse(self.path)
        try:
            payload = self._read_json()
        except ValueError as exc:
            self._error(400, str(exc))
            return
        try:
            if url.path == "/api/triage":
                self._triage(payload)
            elif url.path == "/api/expand":
                self._expand(payload)
            else:
                self._error(404, f"no such endpoint {url.path}")
        except UnknownMember as exc:
            self._error(409, str(exc))
        except UnknownSeed as exc:
            self._error(404, str(exc))
        except InputError as exc:
            self._error(400, str(exc))
        except Exception as exc:  # pragma: no cover
            self._error(500, f"internal error: {exc}")

    # -- endpoint bodies ----------------------------------------------------

    def _summary(self) -> dict:
        state = self.state
        counts = {
            "types": len(state.facts.types),
            "methods": len(state.facts.methods),
            "calls": len(state.facts.calls),
            "overridePairs": len(state.facts.overrides),
            "useCases": len(state.traces.traces) if state.traces else 0,
            "concerns": len(state.truth.concerns) if state.truth else 0,
            "identifierConcepts": len(state.mined_concepts),
            "identifierCandidates": sum(
                1 for ic in state.mined_concepts if ic.candidate
            ),
        }
        with state.lock:
            seeds = state.all_seeds()
            by_technique: dict[str, int] = {}
            for s in seeds:
                by_technique[s.technique] = by_technique.get(s.technique, 0) + 1
        return {
            "counts": counts,
            "seeds": by_technique,
            "config": {
                "faninThreshold": state.workspace.config.fanin_threshold,
                "minExtent": state.workspace.config.min_extent,
                "matchThreshold": state.workspace.config.match_threshold,
                "interpretation": state.workspace.config.interpretation,
            },
        }

    def _concepts(self, source: str) -> None:
        state = self.state
        if source == "ident":
            items = [
                {
                    "index": idx,
                    "intent": sorted(ic.concept.intent),
                    "extent": sorted(ic.concept.extent),
                    "extentSize": len(ic.concept.extent),
                    "candidate": ic.candidate,
                }
                for idx, ic in enumerate(state.mined_concepts)
            ]
            self._send_json({"source": source, "concepts": items})
        elif source == "dyn":
            if state.dyn_report is None:
                self._error(404, "workspace has no traces")
                return
            report = state.dyn_report
            specific = {v.index for v in report.use_case_specific}
            items = [
                {
                    "index": v.index,
                    "classification": "specific" if v.index in specific else "generic",
                    "seed": v.seed,
                    "methodLabels": sorted(
                        dynmine.method_labels(report.lattice, v.concept)
                    ),
                    "traceLabels": sorted(
                        dynmine.trace_labels(report.lattice, v.concept)
                    ),
                }
                for v in report.generic
            ]
            self._send_json({"source": source, "concepts": items})
        else:
            self._error(404, f"unknown concept source {source!r}")

    def _lattice(self, source: str) -> None:
        state = self.state
        if source == "ident":
            self._send_json({"source": source, **_lattice_view(state.ident_lattice)})
        elif source == "dyn":
            if state.dyn_report is None:
                self._error(404, "workspace has no traces")
                return
            self._send_json(
                {"source": source, **_lattice_view(state.dyn_report.lattice)}
            )
        else:
            self._error(404, f"unknown lattice source {source!r}")

    def _triage(self, payload) -> None:
        state = self.state
        if not isinstance(payload, dict) or "seedId" not in payload:
            raise InputError("payload needs a seedId")
        verdicts = payload.get("verdicts")
        if not isinstance(verdicts, dict) or not verdicts:
            raise InputError("payload needs a non-empty verdicts object")
        note = payload.get("note", "")
        with state.lock:
            seed = state.seed(payload["seedId"])
            for mid, verdict in verdicts.items():
                if mid not in seed.methods:
                    raise UnknownMember(seed.id, mid)
                if verdict not in (
                    combine.VERDICT_ACCEPT,
                    combine.VERDICT_REJECT,
                    combine.VERDICT_UNREVIEWED,
                ):
                    raise InputError(f"unknown verdict {verdict!r}")
            state.triage.record(seed.id, dict(verdicts), note=note)
            view = _seed_view(state, seed)
        self._send_json({"ok": True, "seed": view})

    def _expand(self, payload) -> None:
        state = self.state
        if not isinstance(payload, dict) or "seedId" not in payload:
            raise InputError("payload needs a seedId")
        expanded = state.expand(payload["seedId"])
        self._send_json({"ok": True, "expansion": _expansion_view(expanded)})

    # -- static assets ------------------------------------------------------

    def _static(self, path: str) -> None:
        if self.ui_dir is None:
            if path == "/":
                body = b"aspectminer service; API under /api/\n"
                self.send_response(200)
                self.send_header("Content-Type", "text/plain; charset=utf-8")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
            else:
                self._error(404, f"no static assets configured ({path})")
            return
        rel = path.lstrip("/") or "index.html"
        target = (self.ui_dir / rel).resolve()
        if not str(target).startswith(str(self.ui_dir.resolve())) or not target.is_file():
            target = self.ui_dir / "index.html"  # SPA fallback
        if not target.is_file():
            self._error(404, f"asset {path} not found")
            return
        body = target.read_bytes()
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


class MiningService:
    """A running HTTP service bound to a workspace."""

    def __init__(self, state: WorkspaceState, port: int, ui_dir: Path | None = None):
        handler = partial(_Handler, state=state, ui_dir=ui_dir)
        self.state = state
        self.httpd = ThreadingHTTPServer(("127.0.0.1", port), handler)
        self.port = self.httpd.server_address[1]
        self._thread: threading.Thread | None = None

    def start_background(self) -> "MiningService":
        self._thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        self._thread.start()
        return self

    def serve_forever(self) -> None:
        self.httpd.serve_forever()

    def shutdown(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)


def serve(
    workspace: Workspace, port: int = DEFAULT_PORT, ui_dir: Path | None = None
) -> MiningService:
    """Load the workspace and return a service bound to the port (0 picks an
    ephemeral one); call start_background() or serve_forever() on it."""
    return MiningService(workspace.load(), port, ui_dir=ui_dir)
