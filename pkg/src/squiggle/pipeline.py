"""Raw pen input -> fixed-length milestone representation.

Two stages. ``regularize`` rewalks the raw polyline emitting a point every
``segment_length`` pixels of arc, which strips pen jitter and device-rate
artifacts. ``interpolate`` then reduces the regular path to exactly ``n``
milestone points by linear interpolation over the point index. Both stages
are deliberately simple sequential walks; keep them that way — downstream
golden tests pin their arithmetic bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import Point

DEFAULT_SEGMENT_LENGTH = 3.0
DEFAULT_MILESTONES = 16


@dataclass(frozen=True)
class RegularPath:
    """Equal-segment resampling of a raw path.

    Interior points are exactly ``segment_length`` apart; the original final
    point is appended as-is, so the last gap is shorter (possibly zero —
    the duplicate is kept on purpose, interpolation tolerates it).
    ``residual_error`` is the leftover arc past the last emitted point;
    carried for completeness, unused by recognition. Points are plain
    (x, y) tuples: this type sits on the hot path and regular paths can run
    to thousands of points.
    """

    points: list
    residual_error: float = 0.0


def regularize(path: Sequence, segment_length: float = DEFAULT_SEGMENT_LENGTH) -> RegularPath:
    """Resample *path* into segments of ``segment_length`` pixels.

    Paths with two or fewer points pass through unchanged: there is no arc
    to rewalk. Points may be (x, y) or (x, y, t); timestamps are dropped.
    """
    count = len(path)
    if count <= 2:
        return RegularPath([(float(p[0]), float(p[1])) for p in path], 0.0)
    sqrt = math.sqrt
    error2 = 0.0
    dist2 = segment_length * segment_length
    px, py = float(path[0][0]), float(path[0][1])
    r = [(px, py)]
    append = r.append
    d = 0.0
    i = 0
    while i < count:
        nxt = path[i]
        nx = nxt[0]
        ny = nxt[1]
        while True:
            dpx = nx - px
            dpy = ny - py
            d2 = dpx * dpx + dpy * dpy
            error2 = d2 - dist2
            if error2 > 0:
                # the next raw point lies beyond the segment: cut the chord
                # at segment_length, emit, and re-test the same raw point
                # from the cut
                nd = sqrt(d2)
                inter = (segment_length - d) / (nd - d)
                one = 1.0 - inter
                px = px * one + nx * inter
                py = py * one + ny * inter
                append((px, py))
            else:
                i += 1
                break
    append((float(path[count - 1][0]), float(path[count - 1][1])))
    return RegularPath(r, segment_length - sqrt(error2 + dist2))


def interpolate(path: Sequence, n: int = DEFAULT_MILESTONES) -> list[Point]:
    """Resample *path* to exactly *n* points, linearly interpolating over the
    point index space. Endpoints are preserved exactly; index fractions below
    1e-9 copy the underlying point rather than interpolate."""
    r: list[Point] = []
    pcount = len(path)
    for i in range(n):
        npi = (pcount - 1) * i / (n - 1)
        idx = math.floor(npi)
        frac = npi - idx
        if frac < 1e-9:
            p = path[idx]
            r.append(Point(p[0], p[1]))
        else:
            p1 = path[idx]
            p2 = path[idx + 1]
            r.append(Point(
                p1[0] * (1.0 - frac) + p2[0] * frac,
                p1[1] * (1.0 - frac) + p2[1] * frac,
            ))
    return r


def path_length(path: Sequence) -> float:
    """Sum of straight segment lengths — a lower bound on the true arc length
    of whatever the points sampled."""
    total = 0.0
    for i in range(1, len(path)):
        dx = path[i][0] - path[i - 1][0]
        dy = path[i][1] - path[i - 1][1]
        total += math.sqrt(dx * dx + dy * dy)
    return total
