"""Local streaming recognition service.

A small HTTP application that powers interactive clients: a WebSocket
endpoint streams pen strokes in and match updates out, and a handful of
JSON endpoints manage the template library. One recognition session per
connection; the library is shared across connections behind a lock with
snapshot semantics — an in-flight recognition always sees a single
consistent library state, never a half-applied mutation.

Wire protocol (documented with golden transcripts in docs/protocol.md):
every message is one JSON text frame with a ``kind`` discriminator.

Client -> server
    {"kind": "stroke_start", "seq": <any json>?}
        Reset the connection's stroke accumulator. No reply.
    {"kind": "stroke_points", "points": [[x, y, t_ms?], ...], "seq": ...?}
        Append points, re-run the full pipeline on the accumulated stroke,
        reply with one match_update.
    {"kind": "stroke_end", "points": [...]?, "seq": ...?}
        Optionally append trailing points, reply with the final
        match_update (or tap), then reset the accumulator.

Server -> client
    {"kind": "match_update", "seq": ..., "final": bool, "match": {...}|null}
        ``match`` is null when nothing survives the gates (or the stroke is
        still tap-sized mid-draw). Otherwise it carries template, metric,
        normalized_metric (metric divided by the squared input path length,
        a scale-free display-threshold aid), shadow (n [x,y] pairs in input
        coordinates), triangle ([a,b,c] milestone indices) and
        dimensionality ("line" or "planar").
    {"kind": "tap", "seq": ..., "final": true}
        Sent for stroke_end when the stroke regularizes to 4 points or
        fewer.
    {"kind": "error", "seq": ..., "message": str}
        Per-message failure reply. The connection always stays open; a bad
        message never tears down the session, and the accumulated stroke is
        kept so the client may continue.

The pipeline is recomputed from scratch on every update — a full run is
well under a millisecond, so incremental matrix maintenance would be
complexity without payoff.
"""

from __future__ import annotations

import dataclasses
import json
import threading
from pathlib import Path
from typing import Any, Optional, Sequence

from fastapi import FastAPI, Request, Response, WebSocket, WebSocketDisconnect

from .errors import DuplicateName, PathTooShort, SquiggleError
from .ntm import Dimensionality
from .recognizer import (
    AnalyzedPath,
    MatchResult,
    RecognizerConfig,
    Template,
    add_template,
    analyze,
    recognize_analyzed,
)
from .store import load_library, write_library_document

__all__ = ["LibraryManager", "create_app", "serve", "match_payload"]


class UnknownTemplate(SquiggleError, KeyError):
    """No template with the requested name."""


class LibraryManager:
    """Shared template library with snapshot isolation.

    Readers call :meth:`snapshot` and work with an immutable tuple; writers
    replace the tuple under a lock and persist to ``save_path`` (when set)
    before the mutation becomes visible. A failed save rolls the mutation
    back, so the in-memory library never diverges from the file.
    """

    def __init__(
        self,
        templates: Sequence[Template] = (),
        cfg: RecognizerConfig = RecognizerConfig(),
        save_path: Optional[Path] = None,
    ):
        self._lock = threading.Lock()
        self._snapshot: tuple[Template, ...] = tuple(templates)
        self.cfg = cfg
        self.save_path = Path(save_path) if save_path is not None else None

    @classmethod
    def from_file(cls, path, cfg: RecognizerConfig = RecognizerConfig(),
                  create: bool = False) -> "LibraryManager":
        """Load a manager from a library file; with ``create=True`` a missing
        file starts an empty persistent library instead of failing."""
        path = Path(path)
        if create and not path.exists():
            return cls((), cfg, save_path=path)
        return cls(load_library(path, cfg), cfg, save_path=path)

    def snapshot(self) -> tuple[Template, ...]:
        return self._snapshot

    def _commit(self, templates: tuple[Template, ...]) -> None:
        # caller holds the lock
        if self.save_path is not None:
            write_library_document(templates, self.save_path, n=self.cfg.n)
        self._snapshot = templates

    def add(self, name: str, points: Sequence, mirror_allowed: bool = True,
            orientation_gate: bool = True) -> Template:
        with self._lock:
            working = list(self._snapshot)
            template = add_template(
                working, name, points,
                mirror_allowed=mirror_allowed,
                cfg=self.cfg,
                orientation_gate=orientation_gate,
            )
            self._commit(tuple(working))
            return template

    def remove(self, name: str) -> None:
        with self._lock:
            working = tuple(t for t in self._snapshot if t.name != name)
            if len(working) == len(self._snapshot):
                raise UnknownTemplate(name)
            self._commit(working)

    def update(self, name: str, *, mirror_allowed: Optional[bool] = None,
               orientation_gate: Optional[bool] = None) -> Template:
        with self._lock:
            changed = None
            working = []
            for t in self._snapshot:
                if t.name == name:
                    changes: dict[str, Any] = {}
                    if mirror_allowed is not None:
                        changes["mirror_allowed"] = bool(mirror_allowed)
                    if orientation_gate is not None:
                        changes["orientation_gate"] = bool(orientation_gate)
                    t = changed = dataclasses.replace(t, **changes)
                working.append(t)
            if changed is None:
                raise UnknownTemplate(name)
            self._commit(tuple(working))
            return changed


def template_summary(t: Template, include_milestones: bool = True) -> dict:
    doc = {
        "name": t.name,
        "mirror_allowed": t.mirror_allowed,
        "orientation_gate": t.orientation_gate,
        "line": t.ntm.line,
    }
    if include_milestones:
        doc["milestones"] = [[p[0], p[1]] for p in t.milestones]
    return doc


def match_payload(result: Optional[MatchResult],
                  ana: AnalyzedPath) -> Optional[dict]:
    """The ``match`` object of a match_update message (None for no survivor)."""
    if result is None or result.template_name is None:
        return None
    lam = ana.ntm.path_length
    return {
        "template": result.template_name,
        "metric": result.metric,
        "normalized_metric": result.metric / (lam * lam),
        "shadow": [[p[0], p[1]] for p in result.shadow],
        "triangle": list(result.triangle),
        "dimensionality": str(result.dimensionality),
    }


# ---------------------------------------------------------------------------
# stroke session (one per WebSocket connection)


_POINTS_LIMIT = 100_000  # accumulated points per stroke; a generous ceiling


class _StrokeSession:
    def __init__(self, manager: LibraryManager):
        self.manager = manager
        self.points: list[tuple[float, float]] = []

    def _append(self, batch) -> Optional[str]:
        """Validate and append one points batch; returns an error string
        (nothing appended) or None."""
        if not isinstance(batch, list) or not batch:
            return "points must be a non-empty list of [x, y] or [x, y, t_ms]"
        cleaned = []
        for p in batch:
            if (not isinstance(p, (list, tuple)) or len(p) not in (2, 3)
                    or not all(isinstance(v, (int, float)) for v in p[:2])):
                return f"bad point {p!r}"
            cleaned.append((float(p[0]), float(p[1])))
        if len(self.points) + len(cleaned) > _POINTS_LIMIT:
            return f"stroke exceeds {_POINTS_LIMIT} points"
        self.points.extend(cleaned)
        return None

    def _run(self) -> tuple[AnalyzedPath, Optional[MatchResult]]:
        library = self.manager.snapshot()
        ana = analyze(self.points, self.manager.cfg)
        return ana, recognize_analyzed(ana, library, self.manager.cfg)

    def handle(self, text: str) -> Optional[dict]:
        """Process one inbound frame; returns the reply message (or None
        for fire-and-forget kinds)."""
        try:
            msg = json.loads(text)
        except json.JSONDecodeError as exc:
            return {"kind": "error", "seq": None,
                    "message": f"invalid JSON: {exc.msg}"}
        if not isinstance(msg, dict):
            return {"kind": "error", "seq": None,
                    "message": "message must be a JSON object"}
        seq = msg.get("seq")
        kind = msg.get("kind")

        if kind == "stroke_start":
            self.points.clear()
            return None

        if kind == "stroke_points":
            problem = self._append(msg.get("points"))
            if problem:
                return {"kind": "error", "seq": seq, "message": problem}
            ana, result = self._run()
            return {"kind": "match_update", "seq": seq, "final": False,
                    "match": match_payload(result, ana)}

        if kind == "stroke_end":
            if "points" in msg:
                problem = self._append(msg.get("points"))
                if problem:
                    return {"kind": "error", "seq": seq, "message": problem}
            if not self.points:
                return {"kind": "error", "seq": seq, "message": "empty stroke"}
            ana, result = self._run()
            self.points.clear()
            if ana.dimensionality is Dimensionality.TAP:
                return {"kind": "tap", "seq": seq, "final": True}
            return {"kind": "match_update", "seq": seq, "final": True,
                    "match": match_payload(result, ana)}

        return {"kind": "error", "seq": seq,
                "message": f"unknown message kind {kind!r}"}


# ---------------------------------------------------------------------------
# application


def create_app(manager: LibraryManager) -> FastAPI:
    app = FastAPI(title="squiggle", docs_url=None, redoc_url=None)

    def _json(payload, status: int = 200) -> Response:
        return Response(json.dumps(payload), status_code=status,
                        media_type="application/json")

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "templates": len(manager.snapshot())}

    @app.get("/config")
    def config():
        return manager.cfg.asdict()

    @app.get("/library")
    def library_list():
        snap = manager.snapshot()
        return {"n": manager.cfg.n,
                "templates": [template_summary(t) for t in snap]}

    @app.post("/library")
    async def library_add(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            return _json({"error": f"invalid JSON: {exc.msg}"}, 400)
        if not isinstance(body, dict) or not isinstance(body.get("name"), str):
            return _json({"error": "body must be {name, points, ...}"}, 422)
        try:
            template = manager.add(
                body["name"], body.get("points"),
                mirror_allowed=bool(body.get("mirror_allowed", True)),
                orientation_gate=bool(body.get("orientation_gate", True)),
            )
        except DuplicateName as exc:
            return _json({"error": str(exc)}, 409)
        except (PathTooShort, ValueError, TypeError) as exc:
            return _json({"error": str(exc)}, 422)
        return _json(template_summary(template), 201)

    @app.delete("/library/{name}")
    def library_remove(name: str):
        try:
            manager.remove(name)
        except UnknownTemplate:
            return _json({"error": f"no template named {name!r}"}, 404)
        return Response(status_code=204)

    @app.patch("/library/{name}")
    async def library_update(name: str, request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            return _json({"error": f"invalid JSON: {exc.msg}"}, 400)
        if not isinstance(body, dict):
            return _json({"error": "body must be a JSON object"}, 422)
        try:
            template = manager.update(
                name,
                mirror_allowed=body.get("mirror_allowed"),
                orientation_gate=body.get("orientation_gate"),
            )
        except UnknownTemplate:
            return _json({"error": f"no template named {name!r}"}, 404)
        return _json(template_summary(template))

    @app.websocket("/stream")
    async def stream(ws: WebSocket):
        await ws.accept()
        session = _StrokeSession(manager)
        while True:
            try:
                text = await ws.receive_text()
            except WebSocketDisconnect:
                return
            except KeyError:  # a binary frame has no "text" field
                await ws.send_text(json.dumps({
                    "kind": "error", "seq": None,
                    "message": "binary frames are not part of the protocol"}))
                continue
            reply = session.handle(text)
            if reply is not None:
                await ws.send_text(json.dumps(reply))

    return app


def serve(library_file, port: int = 8765,
          cfg: RecognizerConfig = RecognizerConfig(),
          host: str = "127.0.0.1", create: bool = True) -> None:
    """Run the service until interrupted, persisting library mutations back
    to *library_file*. Local-only by default."""
    import uvicorn

    manager = LibraryManager.from_file(library_file, cfg, create=create)
    app = create_app(manager)
    uvicorn.run(app, host=host, port=port, log_level="warning")
