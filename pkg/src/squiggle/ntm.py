"""Normalized triangle determinant matrix.

For an n-point milestone path, every combination a < b < c of point indices
spans a triangle; its entry is twice the signed triangle area scaled by
4/lambda^2 (lambda = milestone path length). The scaling makes entries
dimensionless and bounds |entry| by 1: the largest triangle a path of length
lambda can enclose is the right-angle "L" with legs lambda/2, whose doubled
area is lambda^2/4.

Entries are stored flat in lexicographic (a, b, c) order — one contiguous
float64 array instead of the jagged nested layout, so building and scanning
vectorize. C(16, 3) = 560 entries.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

from .errors import IndexOutOfRange, ZeroLengthPath

DEFAULT_LINE_EPSILON = 0.004
DEGENERATE_EPSILON = 1e-8
DEFAULT_M = 8
DEFAULT_ALLOW = 2

#: bisection stops when the bracketing range gets this narrow (tie guard)
_PIVOT_RANGE_EPSILON = 1e-8


class TriangleIndex(NamedTuple):
    a: int
    b: int
    c: int


class Dimensionality(str, enum.Enum):
    TAP = "tap"
    LINE = "line"
    PLANAR = "planar"

    def __str__(self) -> str:  # clean CLI / wire rendering
        return self.value


@lru_cache(maxsize=64)
def _combo_indices(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays (ia, ib, ic), each of length C(n,3), in lexicographic
    triple order."""
    combos = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n), 3)),
        dtype=np.int64,
    ).reshape(-1, 3)
    return combos[:, 0].copy(), combos[:, 1].copy(), combos[:, 2].copy()


def flat_index(n: int, a: int, b: int, c: int) -> int:
    """Position of triangle (a, b, c) in the lexicographic flat layout."""
    if not (0 <= a < b < c < n):
        raise IndexOutOfRange(f"triangle ({a},{b},{c}) invalid for n={n}")
    return (
        comb(n, 3) - comb(n - a, 3)
        + comb(n - a - 1, 2) - comb(n - b, 2)
        + (c - b - 1)
    )


@dataclass(frozen=True)
class Ntm:
    """Immutable normalized triangle matrix plus the metadata the matcher
    needs: entry extremes, the line-glyph flag, and the normalizing length."""

    n: int
    values: np.ndarray = field(repr=False)  # flat, C(n,3) float64, lex order
    count: int
    min: float
    max: float
    line: bool
    path_length: float

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def abs_values(self) -> np.ndarray:
        return np.abs(self.values)


def build(path: Sequence, known_length: Optional[float] = None,
          line_epsilon: float = DEFAULT_LINE_EPSILON) -> Ntm:
    """Build the matrix for a milestone path of n >= 3 points.

    ``known_length`` overrides the normalizing length when the caller has a
    better figure (e.g. the regularized path's length); by default lambda is
    the milestone segment sum. Raises ZeroLengthPath when lambda == 0.
    """
    pts = np.asarray(path, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise ValueError(f"need at least 3 milestone points, got {pts.shape}")
    pts = pts[:, :2]
    n = pts.shape[0]
    if known_length is None:
        seg = np.diff(pts, axis=0)
        lam = float(np.sqrt(seg[:, 0] ** 2 + seg[:, 1] ** 2).sum())
    else:
        lam = float(known_length)
    if lam == 0.0:
        raise ZeroLengthPath("milestone path has zero length")
    scale = 4.0 / (lam * lam)
    ia, ib, ic = _combo_indices(n)
    pa = pts[ia]
    d1 = pts[ib] - pa
    d2 = pts[ic] - pa
    values = (d1[:, 0] * d2[:, 1] - d2[:, 0] * d1[:, 1]) * scale
    mn = float(values.min())
    mx = float(values.max())
    return Ntm(
        n=n,
        values=values,
        count=values.shape[0],
        min=mn,
        max=mx,
        line=max(abs(mn), abs(mx)) < line_epsilon,
        path_length=lam,
    )


def entry(ntm: Ntm, t) -> float:
    """Stored normalized determinant for triangle t = (a, b, c)."""
    a, b, c = t
    return float(ntm.values[flat_index(ntm.n, a, b, c)])


def triangles(ntm: Ntm) -> Iterator[tuple[TriangleIndex, float]]:
    ia, ib, ic = _combo_indices(ntm.n)
    for i in range(ntm.count):
        yield TriangleIndex(int(ia[i]), int(ib[i]), int(ic[i])), float(ntm.values[i])


def top_entry(ntm: Ntm) -> tuple[TriangleIndex, float]:
    """Triangle with the largest |entry|; lexicographically first on ties
    (argmax returns the earliest maximum, and flat order is lex order)."""
    i = int(np.argmax(ntm.abs_values))
    ia, ib, ic = _combo_indices(ntm.n)
    return TriangleIndex(int(ia[i]), int(ib[i]), int(ic[i])), float(ntm.values[i])


def classify(raw_regularized_point_count: int, ntm: Optional[Ntm] = None) -> Dimensionality:
    """Tap / Line / Planar. A path that regularizes to 4 points or fewer is a
    tap regardless of its matrix; otherwise the matrix's line flag decides."""
    if raw_regularized_point_count <= 4:
        return Dimensionality.TAP
    if ntm is not None and ntm.line:
        return Dimensionality.LINE
    return Dimensionality.PLANAR


def pivot_for(ntm: Ntm, m: int = DEFAULT_M, allow: int = DEFAULT_ALLOW) -> float:
    """Threshold v whose selection {|entry| >= v} has m +- allow members.

    Bisects over [0, 1] (entries are normalized, so the extents are known).
    Two guarded edges: a matrix with <= m entries yields 0.0 (select
    everything); when ties collapse the bracket below 1e-8 the lower bound is
    returned, keeping the selection a superset of the requested top set —
    never dropping a strictly larger triangle.
    """
    if ntm.count <= m:
        return 0.0
    abs_values = ntm.abs_values
    ti = 1.0
    bi = 0.0
    while True:
        mi = (ti + bi) / 2.0
        mc = int(np.count_nonzero(abs_values >= mi))
        if m - allow <= mc <= m + allow:
            return mi
        if mc > m:
            bi = mi
        else:
            ti = mi
        if (ti - bi) < _PIVOT_RANGE_EPSILON:
            return bi


def pivot_set(ntm: Ntm, v: float) -> list[tuple[TriangleIndex, float]]:
    """All entries with |value| >= v, in ascending (a, b, c) order."""
    mask = ntm.abs_values >= v
    idx = np.nonzero(mask)[0]
    ia, ib, ic = _combo_indices(ntm.n)
    return [
        (TriangleIndex(int(ia[i]), int(ib[i]), int(ic[i])), float(ntm.values[i]))
        for i in idx
    ]
