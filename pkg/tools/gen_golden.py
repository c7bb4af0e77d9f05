#!/usr/bin/env python3
"""Freeze reference-pipeline outputs for a corpus of synthetic paths.

The scalar reference implementation in tests/oracle.py is run over a
deterministic mix of path shapes (walks, curves, polylines, near-lines,
stationary-point quirk cases, taps); its outputs — regularized points,
milestones, triangle-matrix summaries and values, pivot selections,
projections and full match results — are written to
tests/data/golden_traces.json. The test suite replays the same inputs
through the package and demands agreement, so any behavioral drift in the
pipeline shows up as a golden failure even if unit tests still pass.

Deterministic: fixed seed, pure-Python float arithmetic only.
"""

import json
import math
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracle  # noqa: E402

SEED = 20260816
N_PATHS = 50
OUT = ROOT / "tests" / "data" / "golden_traces.json"


def gen_walk(rng):
    x, y = rng.uniform(50, 150), rng.uniform(50, 150)
    pts = [(x, y)]
    for _ in range(rng.randrange(40, 200)):
        x += rng.gauss(0, 6)
        y += rng.gauss(0, 6)
        pts.append((x, y))
    return pts


def gen_curve(rng):
    k = rng.randrange(2, 5)
    amps = [(rng.uniform(10, 60), rng.uniform(0.5, 3.0), rng.uniform(0, 6.28))
            for _ in range(k)]
    bmps = [(rng.uniform(10, 60), rng.uniform(0.5, 3.0), rng.uniform(0, 6.28))
            for _ in range(k)]
    steps = rng.randrange(60, 300)
    pts = []
    for i in range(steps):
        t = i / (steps - 1) * 2 * math.pi
        x = 150 + sum(a * math.cos(w * t + p) for a, w, p in amps)
        y = 150 + sum(a * math.sin(w * t + p) for a, w, p in bmps)
        pts.append((x, y))
    return pts


def gen_polyline(rng):
    corners = [(rng.uniform(0, 300), rng.uniform(0, 300))
               for _ in range(rng.randrange(3, 9))]
    step = rng.uniform(2, 5)
    pts = [corners[0]]
    for i in range(1, len(corners)):
        x0, y0 = pts[-1]
        x1, y1 = corners[i]
        d = math.sqrt((x1 - x0) ** 2 + (y1 - y0) ** 2)
        k = max(1, int(d // step))
        for j in range(1, k + 1):
            t = j / k
            pts.append((x0 + (x1 - x0) * t, y0 + (y1 - y0) * t))
    return pts


def gen_near_line(rng):
    x0, y0 = rng.uniform(0, 100), rng.uniform(0, 300)
    x1, y1 = x0 + rng.uniform(80, 200), y0 + rng.uniform(-20, 20)
    amp = rng.uniform(0.02, 0.12)
    steps = rng.randrange(50, 120)
    d = math.sqrt((x1 - x0) ** 2 + (y1 - y0) ** 2)
    nx, ny = -(y1 - y0) / d, (x1 - x0) / d
    pts = []
    for i in range(steps + 1):
        t = i / steps
        w = amp * math.sin(t * rng.uniform(5, 12))
        pts.append((x0 + (x1 - x0) * t + nx * w, y0 + (y1 - y0) * t + ny * w))
    return pts


def gen_quirky(rng):
    """Walk with exact duplicate points spliced in (stationary pen)."""
    pts = gen_walk(rng)
    for _ in range(rng.randrange(1, 6)):
        i = rng.randrange(len(pts))
        pts[i:i] = [pts[i]] * rng.randrange(1, 4)
    return pts


def gen_tap(rng):
    k = rng.randrange(1, 5)
    x, y = rng.uniform(0, 300), rng.uniform(0, 300)
    return [(x + rng.gauss(0, 0.8), y + rng.gauss(0, 0.8)) for _ in range(k)]


def gen_collinear(rng):
    x0, y0 = rng.uniform(0, 50), rng.uniform(0, 50)
    dx, dy = rng.uniform(1, 3), rng.uniform(1, 3)
    return [(x0 + i * dx, y0 + i * dy) for i in range(rng.randrange(30, 90))]


GENS = [gen_walk, gen_curve, gen_polyline, gen_near_line, gen_quirky,
        gen_tap, gen_collinear]


def trace_path(pts, dist, n):
    reg, err = oracle.path_regularize(pts, dist)
    doc = {
        "raw": [[x, y] for x, y in pts],
        "regular": {"points": [[x, y] for x, y in reg], "error": err},
    }
    if len(reg) <= 4:
        doc["milestones"] = None
        return doc, None
    mil = oracle.path_interpolate(reg, n)
    g = oracle.path_ntm(mil)
    pivot = oracle.ntm_pivot_for(g, 8, 2)
    pset = oracle.ntm_pivot_set(g, pivot)
    doc["milestones"] = [[x, y] for x, y in mil]
    doc["ntm"] = {
        "count": g["count"],
        "min": g["min"],
        "max": g["max"],
        "dist": g["dist"],
        "line": g["line"],
        "values": [v for _, _, _, v in oracle.ntm_iter(g)],
    }
    doc["pivot"] = pivot
    doc["pivot_set"] = [[a, b, c, v] for a, b, c, v in pset]
    return doc, (g, pset)


def main():
    rng = random.Random(SEED)
    paths = []
    analyzed = []
    for i in range(N_PATHS):
        pts = GENS[i % len(GENS)](rng)
        doc, ga = trace_path(pts, 3.0, 16)
        doc["id"] = i
        doc["kind"] = GENS[i % len(GENS)].__name__[4:]
        paths.append(doc)
        analyzed.append(ga)

    # pairwise projections: milestones of B projected onto A's coordinates
    # through the triangle with A's largest |entry|
    projections = []
    usable = [i for i, ga in enumerate(analyzed) if ga is not None]
    for idx in range(0, len(usable) - 1, 2):
        i, j = usable[idx], usable[idx + 1]
        g, _ = analyzed[i]
        best = None
        for a, b, c, v in oracle.ntm_iter(g):
            if best is None or abs(v) > abs(best[3]):
                best = (a, b, c, v)
        tri = best[:3]
        try:
            projected = oracle.path_project(
                g["path"], analyzed[j][0]["path"], tri)
        except ZeroDivisionError:
            continue
        projections.append({
            "input": i,
            "template": j,
            "triangle": list(tri),
            "projected": [[x, y] for x, y in projected],
            "metric": oracle.path_metric(g["path"], projected),
        })

    # full matches: every non-tap path against all non-tap paths as templates
    mirrors = [(i % 3 != 0) for i in usable]
    templates = [{"ntm": analyzed[i][0], "mirror": mirror}
                 for i, mirror in zip(usable, mirrors)]
    matches = []
    for i in usable:
        g, pset = analyzed[i]
        entry = {"input": i}
        for label, orientation in (("plain", False), ("oriented", True)):
            res = oracle.match_glyph(g, templates, pset, orientation=orientation)
            if res is None:
                entry[label] = None
            else:
                ti, metric, tri = res
                shadow = oracle.path_project(
                    g["path"], templates[ti]["ntm"]["path"], tri)
                entry[label] = {
                    "winner": usable[ti],
                    "mirror": templates[ti]["mirror"],
                    "metric": metric,
                    "triangle": list(tri),
                    "shadow": [[x, y] for x, y in shadow],
                }
        matches.append(entry)

    doc = {
        "seed": SEED,
        "dist": 3.0,
        "n": 16,
        "m": 8,
        "allow": 2,
        "match_setup": {"template_ids": usable, "mirrors": mirrors},
        "paths": paths,
        "projections": projections,
        "matches": matches,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(doc) + "\n")
    taps = sum(1 for ga in analyzed if ga is None)
    lines = sum(1 for ga in analyzed if ga is not None and ga[0]["line"])
    print(f"{len(paths)} paths ({taps} taps, {lines} line-mode), "
          f"{len(projections)} projections, {len(matches)} matches "
          f"-> {OUT} ({OUT.stat().st_size // 1024} KiB)")


if __name__ == "__main__":
    main()
