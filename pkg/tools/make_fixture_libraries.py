#!/usr/bin/env python3
"""Regenerate the fixture libraries shipped in squiggle/data.

Five of the demo15 shapes (rectangle, circle, check, delete, pigtail) use the
classic public demo coordinate sets verbatim; the rest are hand-authored
approximations of the same glyph vocabulary: control polylines / parametric
curves densified to drawing-like point spacing. Raw dense sources are written
alongside the milestone libraries so tests can redraw and transform shapes.

Deterministic: same output on every run. Run from the repo root:

    python3 tools/make_fixture_libraries.py
"""

import json
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from squiggle import RecognizerConfig, add_template, recognize, save_library  # noqa: E402

OUT = Path(__file__).resolve().parent.parent / "src" / "squiggle" / "data"

# ---------------------------------------------------------------------------
# the classic demo strokes, coordinates as published

EXACT = {
    "rectangle": [
        (78,149),(78,153),(78,157),(78,160),(79,162),(79,164),(79,167),(79,169),(79,173),(79,178),
        (79,183),(80,189),(80,193),(80,198),(80,202),(81,208),(81,210),(81,216),(82,222),(82,224),
        (82,227),(83,229),(83,231),(85,230),(88,232),(90,233),(92,232),(94,233),(99,232),(102,233),
        (106,233),(109,234),(117,235),(123,236),(126,236),(135,237),(142,238),(145,238),(152,238),
        (154,239),(165,238),(174,237),(179,236),(186,235),(191,235),(195,233),(197,233),(200,233),
        (201,235),(201,233),(199,231),(198,226),(198,220),(196,207),(195,195),(195,181),(195,173),
        (195,163),(194,155),(192,145),(192,143),(192,138),(191,135),(191,133),(191,130),(190,128),
        (188,129),(186,129),(181,132),(173,131),(162,131),(151,132),(149,132),(138,132),(136,132),
        (122,131),(120,131),(109,130),(107,130),(90,132),(81,133),(76,133),
    ],
    "circle": [
        (127,141),(124,140),(120,139),(118,139),(116,139),(111,140),(109,141),(104,144),(100,147),
        (96,152),(93,157),(90,163),(87,169),(85,175),(83,181),(82,190),(82,195),(83,200),(84,205),
        (88,213),(91,216),(96,219),(103,222),(108,224),(111,224),(120,224),(133,223),(142,222),
        (152,218),(160,214),(167,210),(173,204),(178,198),(179,196),(182,188),(182,177),(178,167),
        (170,150),(163,138),(152,130),(143,129),(140,131),(129,136),(126,139),
    ],
    "check": [
        (91,185),(93,185),(95,185),(97,185),(100,188),(102,189),(104,190),(106,193),(108,195),
        (110,198),(112,201),(114,204),(115,207),(117,210),(118,212),(120,214),(121,217),(122,219),
        (123,222),(124,224),(126,226),(127,229),(129,231),(130,233),(129,231),(129,228),(129,226),
        (129,224),(129,221),(129,218),(129,212),(129,208),(130,198),(132,189),(134,182),(137,173),
        (143,164),(147,157),(151,151),(155,144),(161,137),(165,131),(171,122),(174,118),(176,114),
        (177,112),(177,114),(175,116),(173,118),
    ],
    "delete": [
        (123,129),(123,131),(124,133),(125,136),(127,140),(129,142),(133,148),(137,154),(143,158),
        (145,161),(148,164),(153,170),(158,176),(160,178),(164,183),(168,188),(171,191),(175,196),
        (178,200),(180,202),(181,205),(184,208),(186,210),(187,213),(188,215),(186,212),(183,211),
        (177,208),(169,206),(162,205),(154,207),(145,209),(137,210),(129,214),(122,217),(118,218),
        (111,221),(109,222),(110,219),(112,217),(118,209),(120,207),(128,196),(135,187),(138,183),
        (148,167),(157,153),(163,145),(165,142),(172,133),(177,127),(179,127),(180,125),
    ],
    "pigtail": [
        (81,219),(84,218),(86,220),(88,220),(90,220),(92,219),(95,220),(97,219),(99,220),(102,218),
        (105,217),(107,216),(110,216),(113,214),(116,212),(118,210),(121,208),(124,205),(126,202),
        (129,199),(132,196),(136,191),(139,187),(142,182),(144,179),(146,174),(148,170),(149,168),
        (151,162),(152,160),(152,157),(152,155),(152,151),(152,149),(152,146),(149,142),(148,139),
        (145,137),(141,135),(139,135),(134,136),(130,140),(128,142),(126,145),(122,150),(119,158),
        (117,163),(115,170),(114,175),(117,184),(120,190),(125,199),(129,203),(133,208),(138,213),
        (145,215),(155,218),(164,219),(166,219),(177,219),(182,218),(192,216),(196,213),(199,212),
        (201,211),
    ],
}


def densify(control, step=2.0):
    """Walk a control polyline emitting points every *step* px (plus every
    control vertex), approximating a steadily drawn stroke."""
    out = [tuple(map(float, control[0]))]
    for i in range(1, len(control)):
        x0, y0 = out[-1]
        x1, y1 = map(float, control[i])
        d = math.hypot(x1 - x0, y1 - y0)
        k = max(1, int(d // step))
        for j in range(1, k + 1):
            t = j / k
            out.append((x0 + (x1 - x0) * t, y0 + (y1 - y0) * t))
    return out


def parametric(fx, fy, t0, t1, steps):
    return [(fx(t0 + (t1 - t0) * i / steps), fy(t0 + (t1 - t0) * i / steps))
            for i in range(steps + 1)]


def wobbly_line(p0, p1, amplitude=0.09, steps=70):
    """A near-perfect straight stroke. The tiny wobble keeps its triangles
    invertible (like any hand-drawn line) while staying far inside the
    line-glyph threshold."""
    (x0, y0), (x1, y1) = p0, p1
    d = math.hypot(x1 - x0, y1 - y0)
    nx, ny = -(y1 - y0) / d, (x1 - x0) / d
    out = []
    for i in range(steps + 1):
        t = i / steps
        w = amplitude * math.sin(t * 9.2)
        out.append((x0 + (x1 - x0) * t + nx * w, y0 + (y1 - y0) * t + ny * w))
    return out


HAND = {
    # drawn top apex -> bottom-left -> bottom-right -> apex
    "triangle": densify([(137, 139), (76, 241), (187, 243), (137, 139)]),
    # one-stroke x: down-right diagonal, up the right side, down-left crossing
    "x": densify([(88, 142), (180, 232), (182, 147), (90, 235)]),
    "caret": densify([(79, 245), (134, 137), (189, 247)]),
    "v": densify([(89, 164), (135, 229), (192, 162)]),
    # shaft, then an open head: past the tip, jog back, flare down
    "arrow": densify([(70, 225), (205, 145), (175, 140), (203, 147), (195, 175)]),
    "left_sq_bracket": densify([(140, 124), (88, 123), (88, 202), (140, 202)]),
    "right_sq_bracket": densify([(112, 138), (166, 136), (166, 216), (113, 217)]),
    "left_curly_brace": densify([
        (150, 116), (128, 120), (118, 136), (122, 155), (126, 168),
        (112, 178), (126, 188), (122, 201), (118, 220), (128, 236), (150, 240),
    ]),
    "right_curly_brace": densify([
        (117, 132), (139, 136), (149, 152), (145, 171), (141, 184),
        (155, 194), (141, 204), (145, 217), (149, 236), (139, 252), (117, 256),
    ]),
    # unicursal five-point star
    "star": densify([(75, 250), (135, 120), (190, 250), (65, 170), (210, 170), (75, 250)]),
}

_SP = 2.2  # spiral pitch helper


EXTRA = {
    "spiral": parametric(
        lambda t: 150 + (8 + _SP * t * 3.0) * math.cos(t),
        lambda t: 180 + (8 + _SP * t * 3.0) * math.sin(t),
        0.0, 4.6 * math.pi, 220),
    "heart": parametric(
        lambda t: 150 + 55 * (16 * math.sin(t) ** 3) / 16,
        lambda t: 175 - 55 * (13 * math.cos(t) - 5 * math.cos(2 * t)
                              - 2 * math.cos(3 * t) - math.cos(4 * t)) / 16,
        -math.pi, math.pi, 180),
    "zigzag": densify([(60, 150), (95, 210), (130, 150), (165, 210), (200, 150), (235, 210)]),
    "wave": parametric(lambda t: 60 + t * 36, lambda t: 180 + 34 * math.sin(t * 2.4),
                       0.0, 5.0, 160),
    "infinity": parametric(
        lambda t: 150 + 70 * math.cos(t) / (1 + math.sin(t) ** 2),
        lambda t: 180 + 55 * math.sin(t) * math.cos(t) / (1 + math.sin(t) ** 2),
        -math.pi / 2, 1.5 * math.pi, 200),
    "hourglass": densify([(75, 130), (200, 130), (75, 235), (200, 235), (75, 130)]),
    "staircase": densify([(70, 240), (105, 240), (105, 205), (140, 205),
                          (140, 170), (175, 170), (175, 135), (210, 135)]),
    "lightning": densify([(155, 105), (95, 190), (137, 192), (85, 265)]),
    "question": parametric(
        lambda t: 145 + 42 * math.cos(t),
        lambda t: 150 + 42 * math.sin(t),
        -math.pi, 0.62 * math.pi, 110) + densify([
            (145 + 42 * math.cos(0.62 * math.pi), 150 + 42 * math.sin(0.62 * math.pi)),
            (145, 232)])[1:],
    "gamma": densify([(110, 130), (148, 200), (178, 132), (142, 214), (138, 252)]),
    "omega": parametric(
        lambda t: 148 + 48 * math.cos(t),
        lambda t: 172 + 48 * math.sin(t),
        0.8 * math.pi, 2.7 * math.pi, 150
    ) + densify([(148 + 48 * math.cos(2.7 * math.pi % (2 * math.pi)),
                  172 + 48 * math.sin(2.7 * math.pi % (2 * math.pi))), (214, 230)])[1:],
    "mshape": densify([(75, 240), (75, 140), (125, 210), (175, 140), (175, 240)]),
    "wshape": densify([(75, 140), (105, 240), (140, 165), (175, 240), (205, 140)]),
    "sshape": parametric(
        lambda t: 150 - 42 * math.sin(t),
        lambda t: 130 + (t / math.pi) * 55 + 18 * math.cos(t),
        0.0, 2 * math.pi, 140),
    "two": parametric(
        lambda t: 145 + 40 * math.cos(t),
        lambda t: 155 + 40 * math.sin(t),
        -0.9 * math.pi, 0.25 * math.pi, 80
    ) + densify([(145 + 40 * math.cos(0.25 * math.pi), 155 + 40 * math.sin(0.25 * math.pi)),
                 (103, 235), (190, 235)])[1:],
    "three": (
        parametric(lambda t: 140 + 34 * math.cos(t), lambda t: 152 + 30 * math.sin(t),
                   -0.75 * math.pi, 0.5 * math.pi, 70)
        + parametric(lambda t: 140 + 38 * math.cos(t), lambda t: 216 + 34 * math.sin(t),
                     -0.5 * math.pi, 0.78 * math.pi, 80)
    ),
    "dash": wobbly_line((70, 180), (210, 180)),
    "slash": wobbly_line((80, 230), (200, 120)),
}


def build_library(sources, cfg):
    lib = []
    for name, raw in sources.items():
        add_template(lib, name, raw, mirror_allowed=True, cfg=cfg)
    return lib


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    cfg = RecognizerConfig()

    demo15 = {**EXACT, **HAND}
    assert len(demo15) == 15, len(demo15)
    proto33 = {**demo15, **EXTRA}
    assert len(proto33) == 33, len(proto33)

    (OUT / "demo15_raw.json").write_text(
        json.dumps({k: [[x, y] for x, y in v] for k, v in demo15.items()}) + "\n")

    lib15 = build_library(demo15, cfg)
    save_library(lib15, OUT / "demo15.json")
    lib33 = build_library(proto33, cfg)
    save_library(lib33, OUT / "prototype33.json")

    # sanity: every raw source self-recognizes in its own library
    bad = []
    for name, raw in demo15.items():
        r = recognize(raw, lib15, cfg)
        if r is None or r.template_name != name:
            bad.append((name, None if r is None else r.template_name))
    for name, raw in proto33.items():
        r = recognize(raw, lib33, cfg)
        if r is None or r.template_name != name:
            bad.append((name + "@33", None if r is None else r.template_name))
    lines = [t.name for t in lib33 if t.ntm.line]
    print(f"demo15: {len(lib15)} templates; prototype33: {len(lib33)} templates")
    print(f"line templates: {lines}")
    if bad:
        print(f"SELF-RECOGNITION FAILURES: {bad}")
        return 1
    print("self-recognition: all pass")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
