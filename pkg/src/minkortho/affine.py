"""Norm-free affine primitives: points, segments, lines, triangles and maps.

Everything here is exact up to floating point and independent of the norm of
the plane. Point symmetries and homotheties are the only maps the rest of the
package needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import DegenerateTriangleError, InvalidInputError

EPS_COL = 1e-9


@dataclass(frozen=True, slots=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidInputError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> Point2:
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> Point2:
        return Point2(self.x / k, self.y / k)

    def __neg__(self) -> Point2:
        return Point2(-self.x, -self.y)

    def dot(self, other: Point2) -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point2) -> float:
        return self.x * other.y - self.y * other.x

    def length(self) -> float:
        """Euclidean length; only used for tolerances and scales."""
        return math.hypot(self.x, self.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


ORIGIN = Point2(0.0, 0.0)


def as_point(v) -> Point2:
    if isinstance(v, Point2):
        return v
    x, y = v
    return Point2(float(x), float(y))


def dist2(a: Point2, b: Point2) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point2
    b: Point2

    def __post_init__(self):
        if self.a == self.b:
            raise InvalidInputError("degenerate segment")

    def point_at(self, t: float) -> Point2:
        return self.a + (self.b - self.a) * t


@dataclass(frozen=True, slots=True)
class Line:
    base: Point2
    dir: Point2

    def __post_init__(self):
        if self.dir.x == 0.0 and self.dir.y == 0.0:
            raise InvalidInputError("line direction must be nonzero")

    @classmethod
    def through(cls, a: Point2, b: Point2) -> Line:
        if a == b:
            raise InvalidInputError("a line needs two distinct points")
        return cls(a, b - a)

    def point_at(self, t: float) -> Point2:
        return self.base + self.dir * t


@dataclass(frozen=True, slots=True)
class Triangle:
    v1: Point2
    v2: Point2
    v3: Point2

    def __post_init__(self):
        a, b, c = self.v1, self.v2, self.v3
        if a == b or b == c or a == c:
            raise DegenerateTriangleError("triangle has repeated vertices")
        d = self.diameter
        if abs((b - a).cross(c - a)) <= EPS_COL * d * d:
            raise DegenerateTriangleError("triangle vertices are collinear")

    @classmethod
    def of(cls, pts) -> Triangle:
        p = [as_point(v) for v in pts]
        if len(p) != 3:
            raise InvalidInputError("a triangle needs exactly three vertices")
        return cls(*p)

    @property
    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.v1, self.v2, self.v3)

    @property
    def diameter(self) -> float:
        a, b, c = self.v1, self.v2, self.v3
        return max(dist2(a, b), dist2(b, c), dist2(a, c))

    @property
    def centroid(self) -> Point2:
        return (self.v1 + self.v2 + self.v3) / 3.0

    def midpoints(self) -> tuple[Point2, Point2, Point2]:
        """Midpoint of the side opposite each vertex, in vertex order."""
        a, b, c = self.v1, self.v2, self.v3
        return (midpoint(b, c), midpoint(a, c), midpoint(a, b))

    def min_angle_deg(self) -> float:
        """Smallest interior angle, measured in the Euclidean structure."""
        vs = self.vertices
        out = 180.0
        for i in range(3):
            p, q, r = vs[i], vs[(i + 1) % 3], vs[(i + 2) % 3]
            u, w = q - p, r - p
            ang = math.degrees(math.atan2(abs(u.cross(w)), u.dot(w)))
            out = min(out, ang)
        return out


def point_symmetry(p: Point2, w: Point2) -> Point2:
    """Reflection of ``w`` through ``p``: 2p - w."""
    return Point2(2.0 * p.x - w.x, 2.0 * p.y - w.y)


def homothety(center: Point2, ratio: float, w: Point2) -> Point2:
    """(1 - k) center + k w."""
    if not math.isfinite(ratio):
        raise InvalidInputError("homothety ratio must be finite")
    s = 1.0 - ratio
    return Point2(s * center.x + ratio * w.x, s * center.y + ratio * w.y)


def midpoint(a: Point2, b: Point2) -> Point2:
    return Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))


def collinearity_residual(a: Point2, b: Point2, c: Point2) -> float:
    """|cross(b - a, c - a)| / (|b - a| |c - a|), the sine of the angle at a."""
    u, w = b - a, c - a
    scale = u.length() * w.length()
    return abs(u.cross(w)) / scale if scale > 0 else 0.0


def collinear(a: Point2, b: Point2, c: Point2, tol: float = EPS_COL) -> bool:
    # purely relative, so the answer does not change under uniform scaling
    if tol < 0:
        raise InvalidInputError("tol must be non-negative")
    return collinearity_residual(a, b, c) <= tol


def harmonic_conjugates_check(
    e: Point2, w: Point2, x: Point2, z: Point2, k: int, tol: float = 1e-12
) -> bool:
    """True iff ``e`` and ``w`` are harmonic conjugates of ``x`` and ``z`` with ratio k.

    With z0 the reflection of z through w, both H(e, -k, z) and H(w, -k, z0)
    must land on x.
    """
    if x == z:
        raise InvalidInputError("harmonic conjugates need x != z")
    if k < 1 or int(k) != k:
        raise InvalidInputError("k must be a positive integer")
    z0 = point_symmetry(w, z)
    first = dist2(homothety(e, -k, z), x) <= tol
    second = dist2(homothety(w, -k, z0), x) <= tol
    return first and second
