"""Input validation helpers used at the public API boundaries.

Hot inner loops never validate; anything crossing from user code, files or
the wire goes through these first.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .geometry import Point


def as_point(value) -> Point:
    """Coerce a (x, y) or (x, y, t) item to a finite Point, dropping any
    timestamp."""
    try:
        x = float(value[0])
        y = float(value[1])
    except (TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"not a point: {value!r}") from exc
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite point: {value!r}")
    return Point(x, y)


def as_raw_path(path) -> list:
    """Validate a raw pen path: non-empty sequence of finite 2-d points.
    Returns (x, y) tuples; timestamps (third elements) are accepted and
    discarded — recognition is purely geometric.
    """
    if path is None:
        raise ValueError("path is None")
    try:
        arr = np.asarray(path, dtype=np.float64)
    except (TypeError, ValueError):
        arr = None
    if arr is not None and arr.ndim == 2 and arr.shape[1] in (2, 3) and arr.shape[0] > 0:
        if not np.isfinite(arr).all():
            raise ValueError("path contains non-finite coordinates")
        return list(map(tuple, arr[:, :2].tolist()))
    # ragged or exotic input: per-point fallback
    points = [tuple(as_point(p)) for p in path]
    if not points:
        raise ValueError("path is empty")
    return points


def check_positive(name: str, value) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


def check_count(name: str, value, minimum: int = 1) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")


def check_timestamps(path: Sequence) -> list | None:
    """Extract per-point timestamps when every point carries one, else None."""
    ts = []
    for p in path:
        if len(p) < 3:
            return None
        ts.append(float(p[2]))
    return ts
