"""Vector export of a recognition result.

Renders three layers, bottom to top: the winning template's shadow
(projected into the input's own coordinates), the input's largest internal
triangle, and the input path itself. Layer order puts the shadow beneath
the ink, the way interactive clients draw it. Line-mode inputs get no
triangle layer — their largest triangle is degenerate by definition.

Coordinates are serialized with full float round-trip precision, so a
parser reading the shadow polyline back recovers exactly the numbers in
the MatchResult.
"""

from __future__ import annotations

from typing import Optional, Sequence
from xml.etree import ElementTree

from .ntm import Dimensionality, top_entry
from .recognizer import AnalyzedPath, MatchResult

__all__ = ["render_match_svg"]

_STYLES = {
    "shadow": {"stroke": "#7fb5d8", "stroke-width": "3"},
    "triangle": {"stroke": "#e0a437", "stroke-width": "1.5",
                 "stroke-dasharray": "4 3"},
    "input": {"stroke": "#202325", "stroke-width": "2"},
}


def _points_attr(points: Sequence) -> str:
    return " ".join(f"{repr(float(p[0]))},{repr(float(p[1]))}" for p in points)


def _layer(svg: ElementTree.Element, name: str) -> ElementTree.Element:
    g = ElementTree.SubElement(svg, "g", {
        "id": name,
        "fill": "none",
        "stroke-linecap": "round",
        "stroke-linejoin": "round",
        **_STYLES[name],
    })
    return g


def render_match_svg(
    raw_points: Sequence,
    ana: AnalyzedPath,
    result: Optional[MatchResult],
    margin: float = 12.0,
) -> str:
    """SVG document for one recognized gesture.

    *raw_points* is the drawn path as given by the user; *ana* and *result*
    come from analyze()/recognize(). The shadow layer appears only with a
    surviving match, the triangle layer only for planar inputs.
    """
    everything = [(float(p[0]), float(p[1])) for p in raw_points]
    if result is not None and result.shadow is not None:
        everything += [(p[0], p[1]) for p in result.shadow]
    xs = [p[0] for p in everything]
    ys = [p[1] for p in everything]
    x0, y0 = min(xs) - margin, min(ys) - margin
    w, h = max(xs) - min(xs) + 2 * margin, max(ys) - min(ys) + 2 * margin

    svg = ElementTree.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": f"{x0:g} {y0:g} {w:g} {h:g}",
    })

    if result is not None and result.shadow is not None:
        ElementTree.SubElement(_layer(svg, "shadow"), "polyline", {
            "points": _points_attr(result.shadow),
        })

    if (ana.milestones is not None
            and ana.dimensionality is Dimensionality.PLANAR):
        tri, _ = top_entry(ana.ntm)
        corners = [ana.milestones[i] for i in tri]
        ElementTree.SubElement(_layer(svg, "triangle"), "polygon", {
            "points": _points_attr(corners),
            "data-triangle": f"{tri.a} {tri.b} {tri.c}",
        })

    ElementTree.SubElement(_layer(svg, "input"), "polyline", {
        "points": _points_attr(raw_points),
    })

    return ElementTree.tostring(svg, encoding="unicode") + "\n"
