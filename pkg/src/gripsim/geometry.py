"""Planar geometric primitives: points, circle intersections, segment distances.

Everything is in millimetres in whatever frame the caller works in.  These
helpers are deliberately independent of the linkage solvers so they can act
as oracles for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateCirclesError

_ABS_TOL = 1e-12


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def circle_intersect(c1: Point, r1: float, c2: Point, r2: float,
                     tol: float = 1e-9) -> list[Point]:
    """All real intersection points of two circles.

    Returns an empty list when the circles are separate or nested, one point
    at (internal or external) tangency, two points otherwise.  Coincident
    circles of equal radius raise DegenerateCirclesError: the intersection is
    a whole circle, not a point list.
    """
    if r1 <= 0 or r2 <= 0:
        raise ValueError("circle radii must be positive")
    d = c1.distance_to(c2)
    if d < _ABS_TOL:
        if abs(r1 - r2) < tol:
            raise DegenerateCirclesError("coincident circles of equal radius")
        return []
    if d > r1 + r2 + tol or d < abs(r1 - r2) - tol:
        return []
    # foot of the radical axis along the centre line
    a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h_sq = r1 * r1 - a * a
    ux = (c2.x - c1.x) / d
    uy = (c2.y - c1.y) / d
    px = c1.x + a * ux
    py = c1.y + a * uy
    if h_sq <= tol * max(1.0, r1 * r1):
        return [Point(px, py)]
    h = math.sqrt(h_sq)
    return [Point(px + h * uy, py - h * ux), Point(px - h * uy, py + h * ux)]


def circle_horizontal_line_intersect(center: Point, radius: float, y: float) -> list[float]:
    """x coordinates where the horizontal line at height y meets the circle."""
    dy = y - center.y
    disc = radius * radius - dy * dy
    if disc < 0.0:
        return []
    if disc == 0.0:
        return [center.x]
    r = math.sqrt(disc)
    return [center.x - r, center.x + r]


def point_segment_distance(p: Point, a: Point, b: Point) -> tuple[float, float]:
    """Distance from p to segment ab and the parameter t of the closest point."""
    ab = b - a
    denom = ab.dot(ab)
    if denom < _ABS_TOL:
        return p.distance_to(a), 0.0
    t = (p - a).dot(ab) / denom
    t = min(1.0, max(0.0, t))
    closest = a + ab.scaled(t)
    return p.distance_to(closest), t


def segment_segment_distance(a1: Point, a2: Point, b1: Point, b2: Point) -> float:
    """Minimum distance between two segments (0 if they intersect)."""
    if _segments_intersect(a1, a2, b1, b2):
        return 0.0
    return min(
        point_segment_distance(a1, b1, b2)[0],
        point_segment_distance(a2, b1, b2)[0],
        point_segment_distance(b1, a1, a2)[0],
        point_segment_distance(b2, a1, a2)[0],
    )


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b - a).cross(c - a)


def _segments_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool:
    d1 = _orient(b1, b2, a1)
    d2 = _orient(b1, b2, a2)
    d3 = _orient(a1, a2, b1)
    d4 = _orient(a1, a2, b2)
    if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
        return True
    return False


def rotate(p: Point, angle: float) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    return Point(c * p.x - s * p.y, s * p.x + c * p.y)
