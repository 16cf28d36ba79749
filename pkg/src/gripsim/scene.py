"""Rigid 2-D scene objects and their clearance geometry."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ConfigError
from .geometry import Point, point_segment_distance, rotate, segment_segment_distance


class ShapeKind(Enum):
    CIRCLE = "circle"
    RECTANGLE = "rectangle"
    SLAB = "slab"


@dataclass(frozen=True)
class SceneObject:
    """A rigid object fixed in the world; the grasp target.

    Slabs are thin rectangles resting on a support surface at ``surface_y``;
    their thickness may be zero (degenerate probe), every other dimension must
    be positive.
    """

    kind: ShapeKind
    x: float = 0.0
    y: float = 0.0
    rotation: float = 0.0
    diameter: float = 0.0
    width: float = 0.0
    height: float = 0.0
    thickness: float = 0.0
    on_surface: bool = False
    surface_y: float = 0.0

    @staticmethod
    def circle(diameter: float, x: float = 0.0, y: float = 0.0) -> "SceneObject":
        if diameter <= 0.0:
            raise ConfigError("diameter", "must be positive")
        return SceneObject(kind=ShapeKind.CIRCLE, diameter=diameter, x=x, y=y)

    @staticmethod
    def rectangle(width: float, height: float, x: float = 0.0, y: float = 0.0,
                  rotation: float = 0.0) -> "SceneObject":
        if width <= 0.0 or height <= 0.0:
            raise ConfigError("width", "rectangle dimensions must be positive")
        return SceneObject(kind=ShapeKind.RECTANGLE, width=width, height=height,
                           x=x, y=y, rotation=rotation)

    @staticmethod
    def slab(thickness: float, width: float, surface_y: float,
             x: float = 0.0) -> "SceneObject":
        if width <= 0.0:
            raise ConfigError("width", "slab width must be positive")
        if thickness < 0.0:
            raise ConfigError("thickness", "slab thickness cannot be negative")
        return SceneObject(kind=ShapeKind.SLAB, thickness=thickness, width=width,
                           x=x, y=surface_y + thickness / 2.0,
                           on_surface=True, surface_y=surface_y)

    @property
    def center(self) -> Point:
        return Point(self.x, self.y)

    @property
    def max_extent(self) -> float:
        if self.kind is ShapeKind.CIRCLE:
            return self.diameter
        if self.kind is ShapeKind.RECTANGLE:
            return math.hypot(self.width, self.height)
        return self.width

    def corners(self) -> list[Point]:
        """Rectangle/slab corner points in the world (counter-clockwise)."""
        if self.kind is ShapeKind.CIRCLE:
            raise ValueError("circles have no corners")
        w = self.width / 2.0
        h = (self.height if self.kind is ShapeKind.RECTANGLE else self.thickness) / 2.0
        pts = [Point(-w, -h), Point(w, -h), Point(w, h), Point(-w, h)]
        return [self.center + rotate(p, self.rotation) for p in pts]

    def clearance_to_segment(self, a: Point, b: Point) -> float:
        """Distance from the object's boundary to a segment (negative inside)."""
        if self.kind is ShapeKind.CIRCLE:
            dist, _ = point_segment_distance(self.center, a, b)
            return dist - self.diameter / 2.0
        corners = self.corners()
        edges = list(zip(corners, corners[1:] + corners[:1]))
        d = min(segment_segment_distance(a, b, e1, e2) for e1, e2 in edges)
        if d == 0.0:
            return 0.0
        # segment fully inside the polygon counts as penetration
        if _point_in_polygon(a, corners) and _point_in_polygon(b, corners):
            return -d
        return d


def _point_in_polygon(p: Point, corners: list[Point]) -> bool:
    inside = False
    n = len(corners)
    for i in range(n):
        a, b = corners[i], corners[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if p.x < xc:
                inside = not inside
    return inside
