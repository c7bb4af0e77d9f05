"""2-D points and 3x2 affine transforms.

A transform is the six numbers (a, b, c, d, e, f) in SVG element order:
columns (a, b), (c, d), (e, f), acting on a point as

    (x, y) -> (a*x + c*y + e, b*x + d*y + f)

No homogeneous bottom row is stored; these are always affine, never
projective.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import SingularTransform

#: |det| below this is treated as non-invertible. Callers normally filter
#: degenerate triangles long before this trips; it is a safety net.
SINGULARITY_FLOOR = 1e-12


class Point(NamedTuple):
    x: float
    y: float


class AffineTransform(NamedTuple):
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float


IDENTITY = AffineTransform(1.0, 0.0, 0.0, 1.0, 0.0, 0.0)


def transform_from_triangle(p0, p1, p2) -> AffineTransform:
    """Transform whose columns are (p1-p0, p2-p0, p0).

    Maps the unit triangle onto (p0, p1, p2): (0,0)->p0, (1,0)->p1,
    (0,1)->p2. Degenerate triangles are allowed here; inversion is where
    degeneracy bites.
    """
    return AffineTransform(
        p1[0] - p0[0], p1[1] - p0[1],
        p2[0] - p0[0], p2[1] - p0[1],
        p0[0], p0[1],
    )


def multiply(m1: AffineTransform, m2: AffineTransform) -> AffineTransform:
    """Compose two transforms: the result applies m1 first, then m2."""
    return AffineTransform(
        m1[0] * m2[0] + m1[1] * m2[2],
        m1[0] * m2[1] + m1[1] * m2[3],
        m1[2] * m2[0] + m1[3] * m2[2],
        m1[2] * m2[1] + m1[3] * m2[3],
        m1[4] * m2[0] + m1[5] * m2[2] + m2[4],
        m1[4] * m2[1] + m1[5] * m2[3] + m2[5],
    )


def inverse(m: AffineTransform) -> AffineTransform:
    """Invert by Laplace's formula.

    Raises SingularTransform when |a*d - c*b| < SINGULARITY_FLOOR, which
    signals a degenerate source triangle upstream.
    """
    det = m[0] * m[3] - m[1] * m[2]
    if abs(det) < SINGULARITY_FLOOR:
        raise SingularTransform(f"determinant {det!r} below singularity floor")
    return AffineTransform(
        m[3] / det,
        -m[1] / det,
        -m[2] / det,
        m[0] / det,
        (m[2] * m[5] - m[3] * m[4]) / det,
        (m[1] * m[4] - m[0] * m[5]) / det,
    )


def apply(m: AffineTransform, p) -> Point:
    return Point(
        m[0] * p[0] + m[2] * p[1] + m[4],
        m[1] * p[0] + m[3] * p[1] + m[5],
    )


def det2(col1, col2) -> float:
    """col1.x*col2.y - col2.x*col1.y: twice the signed area of the triangle
    spanned by the two vectors. Sign flips with orientation."""
    return col1[0] * col2[1] - col2[0] * col1[1]
