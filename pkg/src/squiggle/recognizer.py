"""The matching engine.

Given an input glyph's milestone path and triangle matrix, each template is
projected onto the input through affine maps pinned at candidate triangles
(the input's largest few), gated for degeneracy, mirror symmetry and
optionally orientation, and scored by the summed squared point-pair distance.
The lowest-scoring survivor wins; its projected path is the "shadow" the UI
draws under the ink.

The batch arithmetic in ``match`` is a vectorized rewrite of the scalar
per-pair loop (kept in the test suite as an independent cross-check); both
routes must agree on winner, metric and shadow.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict, replace
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import ntm as ntm_mod, pipeline, validation
from .errors import (
    DegenerateEdge,
    DuplicateName,
    LengthMismatch,
    PathTooShort,
)
from .geometry import (
    SINGULARITY_FLOOR,
    Point,
    apply,
    inverse,
    multiply,
    transform_from_triangle,
)
from .ntm import Dimensionality, Ntm, TriangleIndex, flat_index


@dataclass(frozen=True)
class RecognizerConfig:
    """Every tunable in one place. Defaults are the values the algorithm was
    published with; n and segment_length must be uniform across one library
    (triangle indices are only comparable at equal n)."""

    n: int = 16
    segment_length: float = 3.0
    m: int = 8
    allow: int = 2
    line_epsilon: float = 0.004
    degenerate_epsilon: float = 1e-8
    similarity_threshold: float = 2.12
    orientation_enabled: bool = False

    def __post_init__(self):
        validation.check_count("n", self.n, minimum=3)
        validation.check_positive("segment_length", self.segment_length)
        validation.check_count("m", self.m, minimum=1)
        validation.check_count("allow", self.allow, minimum=0)
        validation.check_positive("line_epsilon", self.line_epsilon)
        validation.check_positive("degenerate_epsilon", self.degenerate_epsilon)
        if not -3.0 < self.similarity_threshold < 3.0:
            raise ValueError(
                f"similarity_threshold must lie in (-3, 3), got {self.similarity_threshold!r}")

    def asdict(self) -> dict:
        return asdict(self)

    def with_overrides(self, **kw) -> "RecognizerConfig":
        return replace(self, **kw)


@dataclass(frozen=True)
class Template:
    """A named glyph the recognizer knows: milestone path, its triangle
    matrix, and per-template gate permissions."""

    name: str
    milestones: tuple
    ntm: Ntm
    mirror_allowed: bool = True
    orientation_gate: bool = True

    @cached_property
    def points_array(self) -> np.ndarray:
        arr = np.asarray(self.milestones, dtype=np.float64)
        arr.setflags(write=False)
        return arr


@dataclass(frozen=True)
class MatchResult:
    template_name: Optional[str]
    triangle: Optional[TriangleIndex]
    metric: Optional[float]
    shadow: Optional[list]  # list of Point, input coordinates
    dimensionality: Dimensionality


# ---------------------------------------------------------------------------
# scalar operations


def project(input_path: Sequence, template_path: Sequence, t) -> list[Point]:
    """Project *template_path* into the input's coordinates via the affine
    map that carries triangle *t* of the template onto the same triangle of
    the input. The three triangle vertices land exactly; everything else
    lands wherever the map sends it.

    Raises SingularTransform when the template-side triangle is flat.
    """
    a, b, c = t
    t1 = transform_from_triangle(input_path[a], input_path[b], input_path[c])
    t2 = transform_from_triangle(template_path[a], template_path[b], template_path[c])
    m = multiply(inverse(t2), t1)
    return [apply(m, p) for p in template_path]


def geometric_metric(g: Sequence, r: Sequence) -> float:
    """Sum of squared distances between paired points. Deliberately not
    square-rooted — only the ordering of scores matters."""
    if len(g) != len(r):
        raise LengthMismatch(f"paths of length {len(g)} vs {len(r)}")
    total = 0.0
    for p1, p2 in zip(g, r):
        dx = p1[0] - p2[0]
        dy = p1[1] - p2[1]
        total += dx * dx + dy * dy
    return total


def tri_similarity(g: Sequence, h: Sequence, t) -> float:
    """Sum of cosines between corresponding triangle edges of the two paths:
    3 when the triangles agree edge-for-edge in direction, 0 when 90 degrees
    apart, -3 when opposed. Scale-free by construction."""
    a, b, c = t
    total = 0.0
    for i, j in ((a, b), (b, c), (c, a)):
        e1x = g[j][0] - g[i][0]
        e1y = g[j][1] - g[i][1]
        e2x = h[j][0] - h[i][0]
        e2y = h[j][1] - h[i][1]
        n1 = e1x * e1x + e1y * e1y
        n2 = e2x * e2x + e2y * e2y
        if n1 == 0.0 or n2 == 0.0:
            raise DegenerateEdge(f"zero-length edge in triangle ({a},{b},{c})")
        total += (e1x * e2x + e1y * e2y) / (np.sqrt(n1) * np.sqrt(n2))
    return float(total)


# ---------------------------------------------------------------------------
# batch matching


def match(
    input_milestones: Sequence,
    input_ntm: Ntm,
    candidates: Sequence,
    library: Sequence[Template],
    cfg: RecognizerConfig,
) -> Optional[MatchResult]:
    """Best template for an already-analyzed input.

    ``candidates`` is the pivot set: (TriangleIndex, value) pairs from the
    input's matrix. Gate logic per (template, triangle) pair:

    * line-type equality: Line inputs only ever meet Line templates;
    * Planar pairs where either normalized determinant is below
      degenerate_epsilon are skipped (flat triangles make junk maps);
    * opposite determinant signs mean a reflection — skipped unless the
      template allows mirrors;
    * when the orientation gate is active (config and template), triangle
      similarity must exceed the threshold;
    * Line mode applies none of those three gates — only a guard against
      outright singular template triangles, which in the scalar formulation
      would divide by zero and never win.

    Survivors are scored; the minimum metric wins, ties going to the earlier
    template, then the earlier candidate. Returns None when nothing survives.
    """
    if not candidates or not library:
        return None
    keep, h_pts, h_all_vals, mirror_ok, gated = _prepared(library, input_ntm.line)
    if not keep:
        return None

    g_pts = np.asarray(input_milestones, dtype=np.float64)
    n = g_pts.shape[0]
    K = len(candidates)
    cand = np.empty((K, 3), dtype=np.int64)
    g_vals = np.empty(K, dtype=np.float64)
    for i, (tri, val) in enumerate(candidates):
        cand[i] = tri
        g_vals[i] = val
    cand_flat = np.array(
        [flat_index(n, int(a), int(b), int(c)) for a, b, c in cand], dtype=np.int64)

    h_vals = h_all_vals[:, cand_flat]                           # (T, K)

    # triangle vertex pulls; trailing axis is x/y
    g_tri = g_pts[cand]                                         # (K, 3, 2)
    g0x, g0y = g_tri[:, 0, 0], g_tri[:, 0, 1]
    h_tri = h_pts[:, cand, :]                                   # (T, K, 3, 2)
    h0x, h0y = h_tri[..., 0, 0], h_tri[..., 0, 1]

    # input-side triangle matrix columns (a1, b1) = g1-g0, (c1, d1) = g2-g0
    a1 = g_tri[:, 1, 0] - g0x
    b1 = g_tri[:, 1, 1] - g0y
    c1 = g_tri[:, 2, 0] - g0x
    d1 = g_tri[:, 2, 1] - g0y
    # template-side
    a2 = h_tri[..., 1, 0] - h0x
    b2 = h_tri[..., 1, 1] - h0y
    c2 = h_tri[..., 2, 0] - h0x
    d2 = h_tri[..., 2, 1] - h0y
    det = a2 * d2 - c2 * b2                                     # (T, K)

    with np.errstate(divide="ignore", invalid="ignore"):
        # inverse of the template triangle matrix (linear part and its
        # translation), then composed with the input matrix: the pair map
        # B sends template points to input coordinates
        ia = d2 / det
        ib = -b2 / det
        ic = -c2 / det
        id_ = a2 / det
        ie = (c2 * h0y - d2 * h0x) / det
        if_ = (b2 * h0x - a2 * h0y) / det
        # compose: inverse first, then the input matrix
        ba = ia * a1 + ib * c1
        bb = ia * b1 + ib * d1
        bc = ic * a1 + id_ * c1
        bd = ic * b1 + id_ * d1
        be = ie * a1 + if_ * c1 + g0x
        bf = ie * b1 + if_ * d1 + g0y

        hx = h_pts[:, None, :, 0]                               # (T, 1, n)
        hy = h_pts[:, None, :, 1]
        sx = ba[..., None] * hx + bc[..., None] * hy + be[..., None]
        sy = bb[..., None] * hx + bd[..., None] * hy + bf[..., None]
        dx = sx - g_pts[None, None, :, 0]
        dy = sy - g_pts[None, None, :, 1]
        metric = (dx * dx + dy * dy).sum(axis=2)                # (T, K)

        valid = np.abs(det) >= SINGULARITY_FLOOR
        if not input_ntm.line:
            eps = cfg.degenerate_epsilon
            valid &= (np.abs(g_vals)[None, :] >= eps) & (np.abs(h_vals) >= eps)
            valid &= (g_vals[None, :] * h_vals >= 0) | mirror_ok[:, None]
            if cfg.orientation_enabled and gated.any():
                sim = _batch_similarity(g_pts, h_pts, cand)
                valid &= np.where(
                    gated[:, None], sim > cfg.similarity_threshold, True)

    metric = np.where(valid, metric, np.inf)
    # masked pairs can carry NaN from the guarded divisions; argmin must
    # never see them
    np.nan_to_num(metric, copy=False, nan=np.inf, posinf=np.inf)
    flat = int(np.argmin(metric))
    ti, ki = divmod(flat, K)
    best = metric[ti, ki]
    if not np.isfinite(best):
        return None
    winner = keep[ti]
    shadow = [Point(float(x), float(y)) for x, y in zip(sx[ti, ki], sy[ti, ki])]
    tri = TriangleIndex(int(cand[ki, 0]), int(cand[ki, 1]), int(cand[ki, 2]))
    return MatchResult(
        template_name=winner.name,
        triangle=tri,
        metric=float(best),
        shadow=shadow,
        dimensionality=Dimensionality.LINE if input_ntm.line else Dimensionality.PLANAR,
    )


#: stacked-array views of recently used libraries, keyed by the identity of
#: the template objects (the cache holds references, so ids stay valid while
#: an entry lives)
_PREP_CACHE: dict = {}
_PREP_CACHE_LIMIT = 8


def _prepared(library: Sequence[Template], line: bool):
    key = (tuple(id(t) for t in library), line)
    hit = _PREP_CACHE.get(key)
    if hit is not None:
        return hit[:5]
    keep = [t for t in library if t.ntm.line == line]
    if keep:
        h_pts = np.stack([t.points_array for t in keep])
        h_vals = np.stack([t.ntm.values for t in keep])
        mirror_ok = np.array([t.mirror_allowed for t in keep])
        gated = np.array([t.orientation_gate for t in keep])
    else:
        h_pts = h_vals = mirror_ok = gated = None
    if len(_PREP_CACHE) >= _PREP_CACHE_LIMIT:
        _PREP_CACHE.pop(next(iter(_PREP_CACHE)))
    _PREP_CACHE[key] = (keep, h_pts, h_vals, mirror_ok, gated, tuple(library))
    return keep, h_pts, h_vals, mirror_ok, gated


def _batch_similarity(g_pts: np.ndarray, h_pts: np.ndarray, cand: np.ndarray) -> np.ndarray:
    """tri_similarity over all (template, candidate) pairs -> (T, K)."""
    ij = np.stack([cand[:, [0, 1]], cand[:, [1, 2]], cand[:, [2, 0]]], axis=1)  # (K,3,2)
    ge = g_pts[ij[..., 1]] - g_pts[ij[..., 0]]                 # (K, 3, 2)
    he = h_pts[:, ij[..., 1], :] - h_pts[:, ij[..., 0], :]     # (T, K, 3, 2)
    dot = np.einsum("kec,tkec->tke", ge, he)
    norms = (
        np.sqrt(np.einsum("kec,kec->ke", ge, ge))[None, :, :]
        * np.sqrt(np.einsum("tkec,tkec->tke", he, he))
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        cos = dot / norms
    return np.nan_to_num(cos, nan=-np.inf).sum(axis=-1)


# ---------------------------------------------------------------------------
# orchestration


@dataclass(frozen=True)
class AnalyzedPath:
    """Everything the pipeline learns about one raw path."""

    regular: pipeline.RegularPath
    milestones: Optional[list]
    ntm: Optional[Ntm]
    dimensionality: Dimensionality


def analyze(path: Sequence, cfg: RecognizerConfig = RecognizerConfig()) -> AnalyzedPath:
    """Run regularize -> tap check -> interpolate -> matrix build."""
    raw = validation.as_raw_path(path)
    regular = pipeline.regularize(raw, cfg.segment_length)
    if len(regular.points) <= 4:
        return AnalyzedPath(regular, None, None, Dimensionality.TAP)
    milestones = pipeline.interpolate(regular.points, cfg.n)
    built = ntm_mod.build(milestones, line_epsilon=cfg.line_epsilon)
    return AnalyzedPath(
        regular, milestones, built,
        ntm_mod.classify(len(regular.points), built),
    )


def recognize_analyzed(
    ana: AnalyzedPath,
    library: Sequence[Template],
    cfg: RecognizerConfig = RecognizerConfig(),
) -> Optional[MatchResult]:
    """Match an already-analyzed path (see analyze()) against a library.

    Taps short-circuit to a dimensionality-only result; otherwise the pivot
    set of the input's largest triangles drives matching. Returns None when
    no (template, triangle) pair survives the gates.
    """
    if ana.dimensionality is Dimensionality.TAP:
        return MatchResult(None, None, None, None, Dimensionality.TAP)
    pivot = ntm_mod.pivot_for(ana.ntm, cfg.m, cfg.allow)
    candidates = ntm_mod.pivot_set(ana.ntm, pivot)
    return match(ana.milestones, ana.ntm, candidates, library, cfg)


def recognize(
    path: Sequence,
    library: Sequence[Template],
    cfg: RecognizerConfig = RecognizerConfig(),
) -> Optional[MatchResult]:
    """Full pipeline for one raw path against a library."""
    return recognize_analyzed(analyze(path, cfg), library, cfg)


def add_template(
    library: list,
    name: str,
    path: Sequence,
    mirror_allowed: bool = True,
    cfg: RecognizerConfig = RecognizerConfig(),
    orientation_gate: bool = True,
) -> Template:
    """Build a Template from a raw path and append it to *library*.

    The path must survive regularization with at least 5 points (anything
    less is a tap, not a glyph). Names are unique per library.
    """
    if any(t.name == name for t in library):
        raise DuplicateName(f"template {name!r} already in library")
    if not name:
        raise ValueError("template name must be non-empty")
    raw = validation.as_raw_path(path)
    regular = pipeline.regularize(raw, cfg.segment_length)
    if len(regular.points) < 5:
        raise PathTooShort(
            f"{len(regular.points)} regularized points; a template needs at least 5")
    milestones = pipeline.interpolate(regular.points, cfg.n)
    built = ntm_mod.build(milestones, line_epsilon=cfg.line_epsilon)
    template = Template(
        name=name,
        milestones=tuple(milestones),
        ntm=built,
        mirror_allowed=mirror_allowed,
        orientation_gate=orientation_gate,
    )
    library.append(template)
    return template


def template_from_milestones(
    name: str,
    milestones: Sequence,
    mirror_allowed: bool = True,
    orientation_gate: bool = True,
    line_epsilon: float = ntm_mod.DEFAULT_LINE_EPSILON,
) -> Template:
    """Rebuild a Template from stored milestone points (library files keep
    only the points; matrices are recomputed on load)."""
    pts = tuple(Point(float(p[0]), float(p[1])) for p in milestones)
    return Template(
        name=name,
        milestones=pts,
        ntm=ntm_mod.build(pts, line_epsilon=line_epsilon),
        mirror_allowed=mirror_allowed,
        orientation_gate=orientation_gate,
    )
