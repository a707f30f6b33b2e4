"""Triangle constructions in a normed plane.

Only the circumcenter needs numerical work. Every other point of a
C-orthocentric system (symmetry point, C-orthocenter, antitriangle, medial and
Euler triangles, Feuerbach circle) is an affine function of the vertices and
the chosen circumcenter and is computed in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .affine import Point2, Triangle, dist2, midpoint, point_symmetry
from .errors import (
    DegenerateTriangleError,
    NoWitnessError,
    NotACircumcenterError,
    NotOnCircumcircleError,
)
from .norms import MinkCircle, NormSpec, circle_contains, norm_eval

DEFAULT_TOL = 1e-9
DEFAULT_BUDGET = 64
DEFAULT_ITERATIONS = 200
DEFAULT_MAX_WITNESSES = 8
# radius penalty used by the second descent pass; small enough that the
# penalized minimizer stays on the zero set of the residual
RADIUS_PENALTY = 1e-3
POLISH_ITERATIONS = 30
# beyond this many ulps of the radius a residual of tol * diam is not resolvable
RESOLUTION = 1e-13


def equidistance_residual(norm: NormSpec, pts, c: Point2) -> float:
    """max_i ||c - x_i|| - min_i ||c - x_i||."""
    d = [norm_eval(norm, c - v) for v in pts]
    return max(d) - min(d)


def euclidean_circumcenter(tri: Triangle) -> Point2:
    a, b, c = tri.vertices
    bx, by = b.x - a.x, b.y - a.y
    cx, cy = c.x - a.x, c.y - a.y
    d = 2.0 * (bx * cy - by * cx)
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    return Point2(a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d)


def _starts(tri: Triangle, budget: int) -> np.ndarray:
    seeds = [euclidean_circumcenter(tri).as_tuple(), tri.centroid.as_tuple()]
    n_grid = max(budget - len(seeds), 0)
    xs = [v.x for v in tri.vertices]
    ys = [v.y for v in tri.vertices]
    cx, cy = 0.5 * (min(xs) + max(xs)), 0.5 * (min(ys) + max(ys))
    # 3x-scaled bounding box; a flat box still gets some height
    half = 1.5 * max(max(xs) - min(xs), max(ys) - min(ys))
    k = math.ceil(math.sqrt(n_grid)) if n_grid else 0
    grid = []
    for i in range(k):
        for j in range(k):
            u = -half + 2 * half * (i + 0.5) / k
            w = -half + 2 * half * (j + 0.5) / k
            grid.append((cx + u, cy + w))
    return np.array(seeds + grid[:n_grid], dtype=float).reshape(-1, 2)


def circumcenters(
    norm: NormSpec,
    tri: Triangle,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
    iterations: int = DEFAULT_ITERATIONS,
) -> list[tuple[Point2, float]]:
    """Circumcenters of ``tri`` under ``norm`` as ``(center, radius)`` pairs.

    Multistart Nelder-Mead on the equidistance residual, seeded from the
    Euclidean circumcenter, the centroid and a grid over the tripled bounding
    box. Each start is descended twice, once on the bare residual and once
    with a small radius penalty (which pulls continuum solution sets towards
    their smallest circles); the results are Newton-polished, filtered at
    ``tol * diam``, clustered and returned by ascending radius.

    For norms whose unit circle has flat pieces the circumcenter set may be a
    segment or a ray; the result is then a sample of it, not all of it.

    Raises
    ------
    NoWitnessError
        No start reached an accepted minimum.
    """
    if not (tol > 0):
        raise ValueError("tol must be positive")
    diam = tri.diameter
    params = norm.kernel_params
    tri_arr = np.array([v.as_tuple() for v in tri.vertices], dtype=float)
    starts = _starts(tri, budget)
    step = 0.1 * diam
    xtol = 1e-10 * diam
    cands = []
    for penalty in (0.0, RADIUS_PENALTY):
        pts, _ = kernels.descend(*params, tri_arr, starts, iterations, step, penalty, xtol)
        pts, fv = kernels.polish(*params, tri_arr, pts, POLISH_ITERATIONS)
        for (x, y), f in zip(pts, fv):
            if not f <= tol * diam:
                continue
            c = Point2(float(x), float(y))
            r = sum(norm_eval(norm, c - v) for v in tri.vertices) / 3.0
            if r * RESOLUTION <= tol * diam:
                cands.append((r, c.x, c.y, float(f), c, len(cands)))
    if not cands:
        raise NoWitnessError(f"no circumcenter found for {tri} under {norm}")

    cands.sort(key=lambda t: t[:3])
    clusters: list[list] = []
    merge = tol * diam
    for cand in cands:
        for cl in clusters:
            if dist2(cl[0][4], cand[4]) <= merge:
                cl.append(cand)
                break
        else:
            clusters.append([cand])
    out = []
    for cl in clusters[:max_witnesses]:
        # most accurate member; ties go to the earliest start (seeds come first)
        best = min(cl, key=lambda t: (t[3], t[5]))
        out.append((best[4], best[0]))
    return out


def antitriangle(tri: Triangle, p4: Point2) -> Triangle:
    """Reflections of ``p4`` through the side midpoints."""
    return Triangle(*(point_symmetry(m, p4) for m in tri.midpoints()))


def symmetry_point_q(tri: Triangle, p4: Point2) -> Point2:
    a, b, c = tri.vertices
    return (a + b + c - p4) * 0.5


def c_orthocenter(tri: Triangle, p4: Point2) -> Point2:
    a, b, c = tri.vertices
    return a + b + c - p4 * 2.0


@dataclass(frozen=True)
class OrthoSystem:
    x1: Point2
    x2: Point2
    x3: Point2
    p4: Point2
    lam: float
    q: Point2
    x4: Point2
    norm: NormSpec

    @property
    def triangle(self) -> Triangle:
        return Triangle(self.x1, self.x2, self.x3)

    @property
    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.x1, self.x2, self.x3)

    @property
    def points(self) -> tuple[Point2, Point2, Point2, Point2]:
        """The quadruple {x1, x2, x3, x4}."""
        return (self.x1, self.x2, self.x3, self.x4)

    @property
    def circumcircle(self) -> MinkCircle:
        return MinkCircle(self.p4, self.lam, self.norm)

    @property
    def diameter(self) -> float:
        return self.triangle.diameter


def build_system(norm: NormSpec, tri: Triangle, p4: Point2, tol: float = DEFAULT_TOL) -> OrthoSystem:
    """Assemble the C-orthocentric system of ``tri`` around circumcenter ``p4``."""
    res = equidistance_residual(norm, tri.vertices, p4)
    if res > tol * tri.diameter:
        raise NotACircumcenterError(
            f"{p4} has equidistance residual {res:.3g} > {tol:g} * diam")
    lam = sum(norm_eval(norm, p4 - v) for v in tri.vertices) / 3.0
    q = symmetry_point_q(tri, p4)
    x4 = c_orthocenter(tri, p4)
    return OrthoSystem(tri.v1, tri.v2, tri.v3, p4, lam, q, x4, norm)


def is_c_orthocentric(norm: NormSpec, pts, tol: float = DEFAULT_TOL):
    """First decomposition of ``pts`` into triangle + C-orthocenter, or None.

    For orthocenter candidate h, the only circumcenter consistent with it is
    (sum of the other three - h) / 2. Returns ``(index_of_h, circumcenter)``.
    """
    pts = list(pts)
    for i in range(4):
        others = [pts[j] for j in range(4) if j != i]
        try:
            tri = Triangle(*others)
        except DegenerateTriangleError:
            continue
        c = (others[0] + others[1] + others[2] - pts[i]) * 0.5
        if equidistance_residual(norm, others, c) <= tol * tri.diameter:
            return i, c
    return None


@dataclass(frozen=True)
class ConstructionBundle:
    medial: tuple[Point2, Point2, Point2]
    anti: tuple[Point2, Point2, Point2]
    euler_points: tuple[Point2, Point2, Point2]
    feuerbach: MinkCircle
    barycenter: Point2

    @property
    def euler_triangle(self) -> tuple[Point2, Point2, Point2]:
        return self.euler_points

    @property
    def six_points(self) -> tuple[Point2, ...]:
        return self.medial + self.euler_points


def construction_bundle(sys: OrthoSystem) -> ConstructionBundle:
    medial = sys.triangle.midpoints()
    anti = tuple(point_symmetry(m, sys.p4) for m in medial)
    euler = tuple(midpoint(x, sys.x4) for x in sys.vertices)
    g = (sys.x1 + sys.x2 + sys.x3) / 3.0
    return ConstructionBundle(
        medial=medial,
        anti=anti,
        euler_points=euler,
        feuerbach=MinkCircle(sys.q, sys.lam / 2.0, sys.norm),
        barycenter=g,
    )


def poncelet_point(sys: OrthoSystem, w: Point2, tol: float = 1e-8) -> Point2:
    """Midpoint of [x4, w] for ``w`` on the circumcircle."""
    if not circle_contains(sys.circumcircle, w, tol):
        raise NotOnCircumcircleError(f"{w} is not on the circumcircle")
    return midpoint(sys.x4, w)


def circumcircle_antipode(sys: OrthoSystem, i: int) -> Point2:
    """2 p4 - x_i, the reflection of x4 through the midpoint of the side opposite x_i.

    ``i`` is 1-based.
    """
    x = sys.vertices[i - 1]
    out = point_symmetry(sys.p4, x)
    m = sys.triangle.midpoints()[i - 1]
    alt = point_symmetry(m, sys.x4)
    assert dist2(out, alt) <= 1e-12 * max(1.0, sys.diameter), "antipode identity broken"
    return out
