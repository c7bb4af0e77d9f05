"""Regenerate the documentation examples under docs/examples/.

Produces:

* ``library-minimal.json``  -- smallest useful library file: one planar
  template with every field at its default.
* ``library-flags.json``    -- exercises the optional per-template flags:
  a planar template with mirror matching disabled, and a straight-line
  template with the orientation gate disabled.
* ``transcript-stroke.jsonl``   -- a golden /stream session: one gesture
  streamed in two batches, then finalized.
* ``transcript-recovery.jsonl`` -- a golden /stream session showing that
  per-message errors never close the connection, plus the tap reply and a
  one-shot stroke submitted entirely inside stroke_end.

Library files are written through the package's own writer so they stay
byte-identical with what ``save_library`` produces.  Transcripts are
recorded against the shipped demo15 library through the real websocket
endpoint; each JSONL line is either

    {"dir": "client", "text": "<exact frame text sent>"}
    {"dir": "server", "frame": {...parsed reply...}}

and tests replay them verbatim against a fresh server.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from squiggle import RecognizerConfig
from squiggle.recognizer import add_template
from squiggle.service import LibraryManager, create_app
from squiggle.store import fixture_library_path, load_library, save_library

ROOT = Path(__file__).resolve().parent.parent
EXAMPLES = ROOT / "docs" / "examples"


def _densify(control, step=2.0):
    """Resample a polyline at roughly *step* px so the raw path looks like
    a real pen trace rather than a handful of corners."""
    out = [tuple(map(float, control[0]))]
    for (x0, y0), (x1, y1) in zip(control, control[1:]):
        d = ((x1 - x0) ** 2 + (y1 - y0) ** 2) ** 0.5
        for k in range(1, max(1, int(d / step)) + 1):
            t = k / max(1, int(d / step))
            out.append((x0 + (x1 - x0) * t, y0 + (y1 - y0) * t))
    return out


def gen_library_fixtures() -> None:
    cfg = RecognizerConfig()

    # --- library-minimal.json: one template, all defaults -----------------
    square = _densify([(0, 0), (100, 0), (100, 100), (0, 100), (0, 0)])
    minimal: list = []
    add_template(minimal, "square", square, cfg=cfg)
    save_library(minimal, EXAMPLES / "library-minimal.json")

    # --- library-flags.json: non-default flags ---------------------------
    flags: list = []
    # An asymmetric hook: with mirror_allowed=False a reflected redraw of
    # it must not match.
    hook = _densify([(0, 0), (0, 100), (60, 100), (60, 60)])
    add_template(flags, "hook", hook, mirror_allowed=False, cfg=cfg)
    # A straight diagonal: line templates compare by angle, and disabling
    # the orientation gate is how a library accepts it drawn either way.
    slash = _densify([(0, 100), (100, 0)])
    add_template(flags, "slash", slash, orientation_gate=False, cfg=cfg)
    save_library(flags, EXAMPLES / "library-flags.json")

    for name in ("library-minimal.json", "library-flags.json"):
        loaded = load_library(EXAMPLES / name, cfg)
        print(f"{name}: {[t.name for t in loaded]}")


class _Recorder:
    """Drive one websocket session, recording every frame we send and the
    exact parsed reply frames the server answers with."""

    def __init__(self, ws):
        self.ws = ws
        self.lines: list[dict] = []

    def send(self, text: str, replies: int = 1) -> None:
        self.ws.send_text(text)
        self.lines.append({"dir": "client", "text": text})
        for _ in range(replies):
            frame = json.loads(self.ws.receive_text())
            self.lines.append({"dir": "server", "frame": frame})

    def write(self, path: Path) -> None:
        payload = "".join(json.dumps(line) + "\n" for line in self.lines)
        path.write_text(payload)
        served = sum(1 for l in self.lines if l["dir"] == "server")
        print(f"{path.name}: {len(self.lines)} lines ({served} server frames)")


def _frame(**kw) -> str:
    return json.dumps(kw)


def gen_transcripts() -> None:
    cfg = RecognizerConfig()
    demo15 = load_library(fixture_library_path("demo15"), cfg)
    raw = json.loads(Path(fixture_library_path("demo15_raw")).read_text())
    app = create_app(LibraryManager(tuple(demo15), cfg))
    client = TestClient(app)

    circle = [[float(x), float(y)] for x, y in raw["circle"]]
    check = [[float(x), float(y)] for x, y in raw["check"]]
    half = len(circle) // 2

    # --- transcript-stroke.jsonl ------------------------------------------
    with client.websocket_connect("/stream") as ws:
        rec = _Recorder(ws)
        rec.send(_frame(kind="stroke_start", seq=0), replies=0)
        rec.send(_frame(kind="stroke_points", seq=1, points=circle[:half]))
        rec.send(_frame(kind="stroke_points", seq=2, points=circle[half:]))
        rec.send(_frame(kind="stroke_end", seq=3))
        rec.write(EXAMPLES / "transcript-stroke.jsonl")

    # --- transcript-recovery.jsonl ----------------------------------------
    with client.websocket_connect("/stream") as ws:
        rec = _Recorder(ws)
        rec.send(_frame(kind="stroke_start", seq=0), replies=0)
        rec.send("this is not JSON")                       # parse error
        rec.send(_frame(kind="mystery", seq="a"))          # unknown kind
        rec.send(_frame(kind="stroke_points", seq=1,
                        points=[[1, 2], ["x", 4]]))        # bad point
        rec.send(_frame(kind="stroke_end", seq=2,
                        points=[[50.0, 50.0], [50.6, 50.2]]))  # tap
        rec.send(_frame(kind="stroke_end", seq=3))         # empty stroke
        # The session survives all of the above: a one-shot stroke sent
        # entirely inside stroke_end still recognizes normally.
        rec.send(_frame(kind="stroke_start", seq=4), replies=0)
        rec.send(_frame(kind="stroke_end", seq=5, points=check))
        rec.write(EXAMPLES / "transcript-recovery.jsonl")


def main() -> None:
    EXAMPLES.mkdir(parents=True, exist_ok=True)
    gen_library_fixtures()
    gen_transcripts()


if __name__ == "__main__":
    main()
