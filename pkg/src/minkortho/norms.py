"""Norms of the plane and the geometry of their unit circles.

Three families are supported: the Euclidean norm, L_p norms (1 <= p <= inf)
and gauges of centrally symmetric convex polygons. L_1 and L_inf are treated
as polygons wherever the boundary geometry matters (line intersections,
support lines), so flat pieces of the unit circle are handled exactly.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .affine import Line, Point2, Segment, as_point
from .errors import InvalidInputError

EPS_ON = 1e-9

# kernel codes shared with minkortho.kernels
EUCLID, L1, LINF, LP, POLYGON = 0, 1, 2, 3, 4


class KernelParams(NamedTuple):
    kind: int
    p: float
    facets: np.ndarray  # (m, 2) facet functionals, gauge = facets[j] . v
    angles: np.ndarray  # (m,) sorted polar angles of the vertices


@dataclass(frozen=True)
class NormSpec:
    kind: str
    p: float | None = None
    vertices: tuple[Point2, ...] | None = field(default=None)

    def __post_init__(self):
        if self.kind == "euclidean":
            if self.p is not None or self.vertices is not None:
                raise InvalidInputError("euclidean norm takes no parameters")
        elif self.kind == "lp":
            if self.p is None or math.isnan(self.p) or self.p < 1:
                raise InvalidInputError(f"L_p needs p >= 1, got {self.p}")
        elif self.kind == "polygon":
            _validate_polygon(self.vertices)
        else:
            raise InvalidInputError(f"unknown norm kind {self.kind!r}")

    @classmethod
    def euclidean(cls) -> NormSpec:
        return cls("euclidean")

    @classmethod
    def lp(cls, p: float) -> NormSpec:
        return cls("lp", p=float(p))

    @classmethod
    def polygon(cls, vertices) -> NormSpec:
        return cls("polygon", vertices=tuple(as_point(v) for v in vertices))

    @classmethod
    def regular_polygon(cls, n_sides: int, phase: float = 0.0) -> NormSpec:
        """Regular 2m-gon inscribed in the Euclidean unit circle."""
        if n_sides < 4 or n_sides % 2:
            raise InvalidInputError("need an even number of sides >= 4")
        half = [
            Point2(math.cos(phase + 2 * math.pi * i / n_sides),
                   math.sin(phase + 2 * math.pi * i / n_sides))
            for i in range(n_sides // 2)
        ]
        return cls.polygon(half + [-v for v in half])

    def __str__(self):
        if self.kind == "euclidean":
            return "euclidean"
        if self.kind == "lp":
            return "lp(inf)" if math.isinf(self.p) else f"lp({self.p:g})"
        return f"polygon({len(self.vertices)})"

    @property
    def strictly_convex(self) -> bool:
        if self.kind == "euclidean":
            return True
        if self.kind == "lp":
            return 1.0 < self.p < math.inf
        return False

    @cached_property
    def ball_vertices(self) -> tuple[Point2, ...] | None:
        """Vertices of the unit ball when it is a polygon (CCW), else None."""
        if self.kind == "polygon":
            return self.vertices
        if self.kind == "lp" and self.p == 1.0:
            return (Point2(1, 0), Point2(0, 1), Point2(-1, 0), Point2(0, -1))
        if self.kind == "lp" and math.isinf(self.p):
            return (Point2(1, 1), Point2(-1, 1), Point2(-1, -1), Point2(1, -1))
        return None

    @cached_property
    def kernel_params(self) -> KernelParams:
        empty = np.zeros((1, 2)), np.zeros(1)
        if self.kind == "euclidean":
            return KernelParams(EUCLID, 2.0, *empty)
        if self.kind == "lp":
            if self.p == 1.0:
                return KernelParams(L1, 1.0, *empty)
            if math.isinf(self.p):
                return KernelParams(LINF, math.inf, *empty)
            return KernelParams(LP, self.p, *empty)
        facets, angles = _fan(self.vertices)
        return KernelParams(POLYGON, 0.0, facets, angles)

    def __call__(self, v: Point2) -> float:
        return norm_eval(self, v)


def _validate_polygon(vertices):
    if vertices is None:
        raise InvalidInputError("polygon norm needs vertices")
    n = len(vertices)
    if n < 4 or n % 2:
        raise InvalidInputError("polygon needs an even vertex count >= 4")
    half = n // 2
    scale = max(v.length() for v in vertices)
    for i in range(half):
        s = vertices[i] + vertices[i + half]
        if s.length() > 1e-12 * max(1.0, scale):
            raise InvalidInputError("polygon is not centrally symmetric")
    for i in range(n):
        a, b, c = vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]
        turn = (b - a).cross(c - b)
        if turn <= 1e-14 * scale * scale:
            raise InvalidInputError(
                "polygon must be strictly convex and counterclockwise")
    # strict convexity + central symmetry put the origin strictly inside
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        if a.cross(b) <= 0:
            raise InvalidInputError("origin must lie strictly inside the polygon")


def _fan(vertices):
    """Sorted vertex angles and, per angular sector, the facet functional."""
    n = len(vertices)
    ang = [math.atan2(v.y, v.x) for v in vertices]
    start = min(range(n), key=ang.__getitem__)
    order = [(start + i) % n for i in range(n)]
    angles = np.array([ang[i] for i in order])
    facets = np.empty((n, 2))
    for j in range(n):
        a = vertices[order[j]]
        b = vertices[order[(j + 1) % n]]
        # facet functional f with f.a = f.b = 1
        det = a.cross(b)
        facets[j, 0] = (b.y - a.y) / det
        facets[j, 1] = (a.x - b.x) / det
    return facets, angles


def norm_eval(norm: NormSpec, v: Point2) -> float:
    """Norm of ``v``; for polygons the gauge, via a binary search over the vertex fan."""
    x, y = v.x, v.y
    kind, p, facets, angles = norm.kernel_params
    if kind == EUCLID:
        return math.hypot(x, y)
    if kind == L1:
        return abs(x) + abs(y)
    if kind == LINF:
        return max(abs(x), abs(y))
    if kind == LP:
        ax, ay = abs(x), abs(y)
        m = max(ax, ay)
        if m == 0.0:
            return 0.0
        return m * ((ax / m) ** p + (ay / m) ** p) ** (1.0 / p)
    if x == 0.0 and y == 0.0:
        return 0.0
    j = bisect.bisect_right(angles, math.atan2(y, x)) - 1
    f = facets[j]  # j == -1 wraps to the last sector
    return float(f[0] * x + f[1] * y)


def dual_norm(norm: NormSpec, n: Point2) -> float:
    """max of n.v over the unit ball."""
    verts = norm.ball_vertices
    if verts is not None:
        return max(abs(n.dot(v)) for v in verts)
    if norm.kind == "euclidean":
        return n.length()
    q = norm.p / (norm.p - 1.0)
    return norm_eval(NormSpec.lp(q), n)


def unit_vector(norm: NormSpec, theta: float) -> Point2:
    """Point of the unit circle in polar direction ``theta``."""
    u = Point2(math.cos(theta), math.sin(theta))
    return u / norm_eval(norm, u)


def on_unit_circle(norm: NormSpec, v: Point2, eps: float = EPS_ON) -> bool:
    return abs(norm_eval(norm, v) - 1.0) <= eps


@dataclass(frozen=True)
class MinkCircle:
    center: Point2
    radius: float
    norm: NormSpec

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InvalidInputError(f"circle radius must be positive, got {self.radius}")

    def point_at(self, theta: float) -> Point2:
        return self.center + unit_vector(self.norm, theta) * self.radius

    def residual(self, w: Point2) -> float:
        """| ||w - center|| - radius | / max(1, radius)."""
        return abs(norm_eval(self.norm, w - self.center) - self.radius) / max(1.0, self.radius)


def circle_contains(circle: MinkCircle, w: Point2, tol: float = EPS_ON) -> bool:
    return circle.residual(w) <= tol


@dataclass(frozen=True)
class Chord:
    p: Point2
    q: Point2
    norm: NormSpec

    def __post_init__(self):
        if self.p == self.q:
            raise InvalidInputError("chord endpoints coincide")
        for v in (self.p, self.q):
            if not on_unit_circle(self.norm, v):
                raise InvalidInputError(f"chord endpoint {v} is not on the unit circle")


def unit_circle_line_intersections(norm: NormSpec, line: Line):
    """Points where ``line`` meets the unit circle, ordered along the line.

    Returns a tuple of 0, 1 or 2 points, or a ``Segment`` when the line
    contains a whole edge of a polygonal unit circle.
    """
    verts = norm.ball_vertices
    if verts is not None:
        return _polygon_line_hits(verts, line)
    if norm.kind == "euclidean":
        return _euclid_line_hits(line)
    return _convex_line_hits(norm, line)


def _euclid_line_hits(line: Line):
    b, d = line.base, line.dir
    aa = d.dot(d)
    bb = b.dot(d)
    cc = b.dot(b) - 1.0
    disc = bb * bb - aa * cc
    if disc < 0:
        return ()
    if disc == 0:
        return (line.point_at(-bb / aa),)
    r = math.sqrt(disc)
    # stable quadratic roots
    q = -(bb + math.copysign(r, bb))
    t1, t2 = q / aa, (cc / q if q != 0 else -q / aa)
    t1, t2 = sorted((t1, t2))
    return (line.point_at(t1), line.point_at(t2))


def _convex_line_hits(norm: NormSpec, line: Line):
    b, d = line.base, line.dir
    nd = norm_eval(norm, d)

    def f(t):
        return norm_eval(norm, Point2(b.x + t * d.x, b.y + t * d.y)) - 1.0

    bound = (1.0 + norm_eval(norm, b)) / nd + 1.0
    lo, hi = -bound, bound
    for _ in range(200):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if f(m1) < f(m2):
            hi = m2
        else:
            lo = m1
        if hi - lo <= 1e-15 * bound:
            break
    tmin = 0.5 * (lo + hi)
    fmin = f(tmin)
    if fmin > EPS_ON:
        return ()
    if fmin >= -EPS_ON * 1e-3:
        return (line.point_at(tmin),)
    roots = (_bisect_root(f, -bound, tmin), _bisect_root(f, bound, tmin))
    return tuple(line.point_at(t) for t in sorted(roots))


def _bisect_root(f, outside: float, inside: float) -> float:
    # f(outside) > 0 >= f(inside); iterate until the bracket stops shrinking
    a, b = outside, inside
    for _ in range(2000):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        if f(m) > 0:
            a = m
        else:
            b = m
    return a if abs(f(a)) < abs(f(b)) else b


def _polygon_line_hits(verts, line: Line):
    b, d = line.base, line.dir
    n = len(verts)
    dl = d.length()
    ts = []
    for i in range(n):
        a, c = verts[i], verts[(i + 1) % n]
        e = c - a
        denom = d.cross(e)
        scale = dl * e.length()
        w = a - b
        if abs(denom) <= 1e-14 * scale:
            if abs(w.cross(d)) <= 1e-12 * dl * max(1.0, w.length()):
                return Segment(a, c)
            continue
        t = w.cross(e) / denom
        s = w.cross(d) / denom
        if -1e-12 <= s <= 1 + 1e-12:
            ts.append(t)
    ts.sort()
    out = []
    for t in ts:
        if not out or abs(t - out[-1]) > 1e-12 * max(1.0, abs(t)):
            out.append(t)
    return tuple(line.point_at(t) for t in out)


def support_line_exists(norm: NormSpec, boundary_point: Point2, direction: Point2,
                        tol: float = EPS_ON) -> bool:
    """Whether the line through ``boundary_point`` along ``direction`` supports the unit ball."""
    if not on_unit_circle(norm, boundary_point):
        raise InvalidInputError(f"{boundary_point} is not on the unit circle")
    if direction.x == 0.0 and direction.y == 0.0:
        raise InvalidInputError("direction must be nonzero")
    normal = Point2(-direction.y, direction.x)
    return abs(normal.dot(boundary_point)) >= dual_norm(norm, normal) * (1.0 - tol)
