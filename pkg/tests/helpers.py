"""Shared path/transform builders for the test suite (no package imports)."""

import math
import random


def densify(control, step=2.0):
    """Emit points every *step* px along a control polyline."""
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


def circle_points(cx=150.0, cy=150.0, r=50.0, steps=120):
    return [(cx + r * math.cos(2 * math.pi * i / steps),
             cy + r * math.sin(2 * math.pi * i / steps))
            for i in range(steps + 1)]


def straight_stroke(x0=20.0, y0=150.0, length=100.0, angle=0.0, steps=60,
                    wobble=0.0):
    """A straight (optionally imperceptibly wobbly) stroke of given length."""
    dx, dy = math.cos(angle), math.sin(angle)
    nx, ny = -dy, dx
    pts = []
    for i in range(steps + 1):
        t = i / steps
        w = wobble * math.sin(t * 9.2)
        pts.append((x0 + dx * length * t + nx * w,
                    y0 + dy * length * t + ny * w))
    return pts


def l_milestones(size=64.0):
    """A 16-point right-angle L with both legs lambda/2: 8 points down the
    vertical leg ending at the corner (index 7), 8 along the horizontal leg.
    Triangle (0, 7, 15) spans corner-to-endpoints and is the extremal one."""
    pts = [(0.0, size - size * i / 7) for i in range(8)]        # (0,size) .. (0,0)
    pts += [(size * j / 8, 0.0) for j in range(1, 9)]           # .. (size,0)
    assert len(pts) == 16 and pts[7] == (0.0, 0.0)
    return pts


def random_walk(rng, n_min=40, n_max=200, start=(100.0, 100.0), step=6.0):
    x, y = start
    pts = [(x, y)]
    for _ in range(rng.randrange(n_min, n_max)):
        x += rng.gauss(0, step)
        y += rng.gauss(0, step)
        pts.append((x, y))
    return pts


def rotate(points, theta, about=None):
    """Rotate points by theta radians about a pivot (default: centroid)."""
    if about is None:
        about = (sum(p[0] for p in points) / len(points),
                 sum(p[1] for p in points) / len(points))
    cx, cy = about
    c, s = math.cos(theta), math.sin(theta)
    return [(cx + (x - cx) * c - (y - cy) * s,
             cy + (x - cx) * s + (y - cy) * c) for x, y in points]


def reflect_x(points):
    return [(-x, y) for x, y in points]


def scale(points, k):
    return [(x * k, y * k) for x, y in points]


def translate(points, vx, vy):
    return [(x + vx, y + vy) for x, y in points]


def random_affine(rng, cond_max=4.0, det_min=0.1, scale_range=(0.5, 1.6),
                  reflections=True, shift=350.0):
    """A random affine map as a 6-tuple (a,b,c,d,e,f): columns (a,b),(c,d),
    (e,f). Linear part R(theta)·diag(s·sqrt(cond), s/sqrt(cond))·R(phi), so
    its condition number is exactly *cond* and |det| = s² ≥ det_min."""
    cond = rng.uniform(1.0, cond_max)
    s = rng.uniform(*scale_range)
    assert s * s >= det_min
    theta, phi = rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
    sx, sy = s * math.sqrt(cond), s / math.sqrt(cond)
    if reflections and rng.random() < 0.5:
        sx = -sx
    ct, st = math.cos(theta), math.sin(theta)
    cp, sp = math.cos(phi), math.sin(phi)
    # R(theta) @ diag @ R(phi), then SVG column order
    m00 = ct * sx * cp - st * sy * sp
    m01 = -ct * sx * sp - st * sy * cp
    m10 = st * sx * cp + ct * sy * sp
    m11 = -st * sx * sp + ct * sy * cp
    e, f = rng.uniform(-shift / 7, shift), rng.uniform(-shift / 7, shift)
    return (m00, m10, m01, m11, e, f)


def apply_affine(t, points):
    a, b, c, d, e, f = t
    return [(a * x + c * y + e, b * x + d * y + f) for x, y in points]
