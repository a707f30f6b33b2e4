"""Randomized scenes and one verifier per theorem id.

Every verifier rebuilds the C-orthocentric system of a scene and records a
list of named checks. A check is a normalized residual and the limit it must
stay under: vector identities are measured in units of the triangle diameter
against ``EXACT``, memberships of circles of radius ~lambda in units of lambda
against the caller's ``tol``. A trial passes when every check is within its
limit; ``max_residual`` of a report is the largest normalized residual seen.
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .affine import (
    EPS_COL,
    Line,
    Point2,
    Segment,
    Triangle,
    collinearity_residual,
    harmonic_conjugates_check,
    homothety,
    midpoint,
    point_symmetry,
)
from .construct import (
    OrthoSystem,
    antitriangle,
    build_system,
    circumcenters,
    construction_bundle,
    equidistance_residual,
    is_c_orthocentric,
    poncelet_point,
)
from .errors import (
    DegenerateTriangleError,
    GenerationFailedError,
    InvalidInputError,
    NoWitnessError,
    UnknownTheoremError,
)
from .norms import (
    EPS_ON,
    Chord,
    NormSpec,
    norm_eval,
    unit_circle_line_intersections,
    unit_vector,
)
from .orthogonality import chordal_condition, chordal_orthogonal

THEOREM_IDS = (
    "L2.1", "T2.1", "C2.1", "T3.1", "C3.1", "C3.2", "L3.1", "L3.2",
    "T3.2a", "L3.3", "T3.2b", "L3.4", "T3.4", "T3.5", "C3.3",
)
# ids whose verifier never looks at x4
X4_FREE = frozenset({"L2.1"})

DEFAULT_TOL = 1e-8
EXACT = 1e-12
MIN_ANGLE_DEG = 5.0
MAX_REJECTIONS = 1000
DIAM_RANGE = (1.0, 4.0)
# below this separation a line is treated as tangent to C (the chord it
# would cut is too short for a relative parallelism test)
TANGENT_GAP = 1e-6
MUTATION_SHIFT = 0.1


def builtin_norm_pool() -> list[NormSpec]:
    return [
        NormSpec.euclidean(),
        NormSpec.lp(1.0),
        NormSpec.lp(math.inf),
        NormSpec.lp(1.5),
        NormSpec.lp(3.0),
        NormSpec.regular_polygon(6),
    ]


@dataclass(frozen=True)
class Scene:
    norm: NormSpec
    tri: Triangle
    p4: Point2 | None
    seed: int
    rejections: int = 0


@dataclass(frozen=True)
class Outcome:
    status: str  # "pass" | "fail" | "inconclusive"
    residual: float = 0.0
    reason: str | None = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    theorem_id: str
    norm: NormSpec
    trials: int = 0
    passes: int = 0
    inconclusive: int = 0
    failures: list = field(default_factory=list)  # (Scene, residual) pairs
    max_residual: float = 0.0
    seed: int = 0
    rejections: int = 0
    inconclusive_reasons: dict = field(default_factory=dict)

    def record(self, scene: Scene | None, outcome: Outcome) -> None:
        self.trials += 1
        if scene is not None:
            self.rejections += scene.rejections
        if outcome.status == "inconclusive":
            self.inconclusive += 1
            key = outcome.reason or "unspecified"
            self.inconclusive_reasons[key] = self.inconclusive_reasons.get(key, 0) + 1
            return
        if outcome.residual > self.max_residual or math.isnan(outcome.residual):
            self.max_residual = outcome.residual
        if outcome.passed:
            self.passes += 1
        else:
            self.failures.append((scene, outcome.residual))

    @property
    def consistent(self) -> bool:
        return self.trials == self.passes + self.inconclusive + len(self.failures)


class _Inconclusive(Exception):
    pass


class Checks:
    """Collects normalized residuals for one trial."""

    def __init__(self, diam: float, lam: float, tol: float):
        self.diam = diam
        self.lam = lam
        self.tol = tol
        self.items: list[tuple[str, float, float]] = []

    def value(self, name: str, v: float, limit: float) -> None:
        self.items.append((name, float(v), limit))

    def exact(self, name: str, a: Point2, b: Point2) -> None:
        self.value(name, (a - b).length() / self.diam, EXACT)

    def on_circle(self, name: str, center: Point2, radius: float, w: Point2, norm: NormSpec) -> None:
        self.value(name, abs(norm_eval(norm, w - center) - radius) / self.lam, self.tol)

    def truth(self, name: str, ok: bool) -> None:
        self.value(name, 0.0 if ok else 1.0, 0.5)

    def outcome(self) -> Outcome:
        worst = max((v for _, v, _ in self.items), default=0.0)
        bad = [n for n, v, lim in self.items if not v <= lim]
        details = {n: v for n, v, _ in self.items}
        if bad:
            return Outcome("fail", worst, ",".join(bad), details)
        return Outcome("pass", worst, None, details)


# -- scene generation --------------------------------------------------------

def random_triangle(rng: np.random.Generator, min_angle_deg: float = MIN_ANGLE_DEG,
                    max_rejections: int = MAX_REJECTIONS) -> tuple[Triangle, int]:
    lo, hi = DIAM_RANGE
    for rejected in range(max_rejections + 1):
        pts = rng.uniform(-2.0, 2.0, size=(3, 2))
        try:
            tri = Triangle.of(pts)
        except DegenerateTriangleError:
            continue
        if tri.min_angle_deg() < min_angle_deg or not lo <= tri.diameter <= hi:
            continue
        return tri, rejected
    raise GenerationFailedError(f"no acceptable triangle after {max_rejections} rejections")


def random_scene(norm: NormSpec, seed: int, min_angle_deg: float = MIN_ANGLE_DEG,
                 max_rejections: int = MAX_REJECTIONS, solve: bool = True) -> Scene:
    """Random triangle in [-2, 2]^2 and its first circumcenter witness.

    Raises NoWitnessError when the triangle has no (found) circumcenter and
    GenerationFailedError when the rejection budget runs out.
    """
    rng = np.random.default_rng(seed)
    tri, rejected = random_triangle(rng, min_angle_deg, max_rejections)
    p4 = circumcenters(norm, tri)[0][0] if solve else None
    return Scene(norm, tri, p4, seed, rejected)


def system_of(scene: Scene, x4_shift: Point2 | None = None) -> OrthoSystem:
    sys = build_system(scene.norm, scene.tri, scene.p4)
    return _mutate(sys, x4_shift)


def _mutate(sys: OrthoSystem, x4_shift: Point2 | None) -> OrthoSystem:
    if x4_shift is None:
        return sys
    return dataclasses.replace(sys, x4=sys.x4 + x4_shift)


def _rng(scene: Scene, salt: int) -> np.random.Generator:
    return np.random.default_rng([scene.seed & (2**63 - 1), salt])


def _others(seq, i):
    return [seq[j] for j in range(len(seq)) if j != i]


def _anti4(sys: OrthoSystem):
    """p1, p2, p3 of the antitriangle followed by p4 itself."""
    return tuple(antitriangle(sys.triangle, sys.p4).vertices) + (sys.p4,)


def _check_scene(chk: Checks, sys: OrthoSystem) -> None:
    chk.value("scene.p4", equidistance_residual(sys.norm, sys.vertices, sys.p4) / chk.diam, chk.tol)


def _orthocentric_residual(norm: NormSpec, quad, center: Point2) -> float:
    """How far ``quad[3]`` is from being the C-orthocenter of quad[:3] around ``center``."""
    a, b, c, h = quad
    return (a + b + c - center * 2.0 - h).length(), equidistance_residual(norm, (a, b, c), center)


def _check_system(chk: Checks, name: str, norm: NormSpec, quad, center: Point2, radius: float) -> None:
    """quad[:3] has circumcenter ``center`` and quad[3] is the matching C-orthocenter."""
    h_err, eq_err = _orthocentric_residual(norm, quad, center)
    chk.value(f"{name}.orthocenter", h_err / chk.diam, EXACT)
    chk.value(f"{name}.circumcenter", eq_err / chk.lam, chk.tol)
    for i, v in enumerate(quad[:3]):
        chk.on_circle(f"{name}.radius{i + 1}", center, radius, v, norm)
    try:
        chk.truth(f"{name}.detected", is_c_orthocentric(norm, quad) is not None)
    except DegenerateTriangleError:
        chk.truth(f"{name}.detected", False)


# -- verifiers ---------------------------------------------------------------

def _v_T21(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    x = sys.points
    p = _anti4(sys)
    for i in range(3):
        chk.exact(f"item1.mid{i + 1}", midpoint(x[i], p[i]), sys.q)
    chk.exact("item1.mid4", midpoint(x[3], p[3]), sys.q)
    chk.exact("item2.x4", point_symmetry(sys.q, sys.p4), x[3])
    for i in range(4):
        for j in range(i + 1, 4):
            chk.exact(f"item2.{i + 1}{j + 1}", x[i] - x[j], p[j] - p[i])
    for i, j, k, l in permutations(range(4)):
        chk.exact(f"item3.{i + 1}{j + 1}{k + 1}{l + 1}", x[i] - p[j], p[k] - x[l])
    g = sys.triangle.centroid
    chk.exact("item4", homothety(g, -2.0, sys.p4), x[3])


def _v_C21(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    chk.exact("item1", sys.x1 + sys.x2 + sys.x3 - sys.p4 * 2.0, sys.x4)
    p = _anti4(sys)
    g = sys.triangle.centroid
    g1 = (p[0] + p[1] + p[2]) / 3.0
    chk.exact("item2.g1", point_symmetry(sys.q, g), g1)
    chk.exact("item2.Sg", point_symmetry(g, sys.p4), g1)


def _v_T31(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    norm, lam = sys.norm, sys.lam
    x = sys.points
    p = _anti4(sys)
    # p_i is a circumcenter of the x's other than x_i, and x_i of the p's other than p_i
    for i in range(4):
        for j in range(4):
            if i != j:
                chk.on_circle(f"item1.p{i + 1}x{j + 1}", p[i], lam, x[j], norm)
                chk.on_circle(f"item1.x{i + 1}p{j + 1}", x[i], lam, p[j], norm)
    for i in range(4):
        sub = _others(x, i)
        mids = [midpoint(sub[a], sub[b]) for a, b in ((1, 2), (0, 2), (0, 1))]
        anti = [point_symmetry(m, p[i]) for m in mids]
        anti_mids = [midpoint(anti[a], anti[b]) for a, b in ((1, 2), (0, 2), (0, 1))]
        for k, m in enumerate(mids + anti_mids):
            chk.on_circle(f"item2.{i + 1}.{k}", sys.q, lam / 2.0, m, norm)
    chk.exact("item3.q", homothety(sys.x4, 0.5, sys.p4), sys.q)
    for k in range(32):
        w = sys.p4 + unit_vector(norm, 2.0 * math.pi * (k + 0.5) / 32.0) * lam
        chk.on_circle(f"item3.w{k}", sys.q, lam / 2.0, homothety(sys.x4, 0.5, w), norm)


def _v_C31(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    x = sys.points
    p = _anti4(sys)
    # the antitriangle has circumcenter x4; its symmetry point is q again
    q_anti = (p[0] + p[1] + p[2] - x[3]) * 0.5
    chk.exact("item1.center", q_anti, sys.q)
    for i in range(3):
        chk.on_circle(f"item1.anti{i + 1}", x[3], sys.lam, p[i], sys.norm)
    for l in range(4):
        i, j, k = _others(range(4), l)
        chk.exact(f"item2.{l + 1}", (x[i] + x[j] + x[k] - p[l]) * 0.5, sys.q)
        chk.exact(f"item3.{l + 1}", x[i] + x[j] + x[k] - p[l] * 2.0, x[l])


def _v_C32(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    norm, lam = sys.norm, sys.lam
    bundle = construction_bundle(sys)
    p = _anti4(sys)
    for i, (v, d) in enumerate(zip(sys.vertices, bundle.euler_points)):
        chk.on_circle(f"item1.vertex{i + 1}", sys.p4, lam, v, norm)
        chk.exact(f"item1.euler{i + 1}", midpoint(sys.x4, v), d)
    # the antitriangle's circumcircle is C(x4, lambda) and its C-orthocenter is p4
    for i in range(3):
        chk.on_circle(f"item2.vertex{i + 1}", sys.x4, lam, p[i], norm)
        chk.exact(f"item2.ortho{i + 1}", p[0] + p[1] + p[2] - sys.x4 * 2.0, sys.p4)
    for i in range(3):
        chk.on_circle(f"item3.euler{i + 1}", sys.q, lam / 2.0, bundle.euler_points[i], norm)
        chk.on_circle(f"item3.anti_euler{i + 1}", sys.q, lam / 2.0, midpoint(p[i], sys.p4), norm)


def _v_L31(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    norm, lam = sys.norm, sys.lam
    b = construction_bundle(sys)
    d, m = b.euler_points, b.medial
    for i in range(3):
        for j in range(i + 1, 3):
            chk.exact(f"item1.{i + 1}{j + 1}", d[i] - d[j], m[j] - m[i])
    for i in range(3):
        chk.on_circle(f"item2.m{i + 1}", sys.q, lam / 2.0, m[i], norm)
        chk.on_circle(f"item2.d{i + 1}", sys.q, lam / 2.0, d[i], norm)
    _check_system(chk, "item3.medial", norm, m + (sys.p4,), sys.q, lam / 2.0)
    _check_system(chk, "item3.euler", norm, d + (sys.x4,), sys.q, lam / 2.0)
    for i in range(3):
        s = point_symmetry(m[i], sys.x4)
        chk.on_circle(f"item4.on{i + 1}", sys.p4, lam, s, norm)
        chk.exact(f"item4.eq{i + 1}", s, point_symmetry(sys.p4, sys.vertices[i]))


def _v_L32(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    b = construction_bundle(sys)
    m, d = b.medial, b.euler_points
    for i in range(3):
        chk.exact(f"item1.{i + 1}", point_symmetry(sys.q, m[i]), d[i])
        chk.exact(f"item2.{i + 1}", point_symmetry(sys.q, sys.vertices[i]),
                  point_symmetry(m[i], sys.p4))
    g = b.barycenter
    chk.exact("item3.Hg", homothety(g, -2.0, sys.q), sys.p4)
    chk.exact("item3.Sq", point_symmetry(sys.q, sys.x4), sys.p4)
    if (sys.x4 - g).length() > 1e-6 * chk.diam:
        # literal definition: e=q, w=p4, x=x4, z=g; the ratio that works is 3
        ok = harmonic_conjugates_check(sys.q, sys.p4, sys.x4, g, 3, tol=EXACT * chk.diam * 10)
        chk.truth("item3.harmonic", ok)
    for i in range(3):
        r = collinearity_residual(point_symmetry(sys.p4, sys.vertices[i]), m[i], sys.x4)
        chk.value(f"item4.{i + 1}", r, EPS_COL)


def _v_T32a(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    norm, lam = sys.norm, sys.lam
    m = sys.triangle.midpoints()
    for i in range(3):
        chk.on_circle(f"item2.m{i + 1}", m[i], lam / 2.0, sys.q, norm)
    rng = _rng(scene, 32)
    for k, theta in enumerate(rng.uniform(0.0, 2.0 * math.pi, 16)):
        u = unit_vector(norm, float(theta)) * lam
        w = sys.p4 + u
        chk.on_circle(f"item1.w{k}", sys.q, lam / 2.0, poncelet_point(sys, w), norm)
        # antitriangle: circumcircle C(x4, lambda), C-orthocenter p4
        z = sys.x4 + u
        chk.on_circle(f"item1.z{k}", sys.q, lam / 2.0, midpoint(sys.p4, z), norm)


def _v_L33(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    norm, lam = sys.norm, sys.lam
    x = sys.vertices
    b = construction_bundle(sys)
    m, d = b.medial, b.euler_points
    p = _anti4(sys)
    qs = tuple(homothety(sys.p4, 0.5, v) for v in x)
    _check_system(chk, "item1", norm, qs + (sys.q,), sys.p4, lam / 2.0)
    _check_system(chk, "item2", norm, d + (sys.x4,), sys.q, lam / 2.0)
    _check_system(chk, "item3", norm, m + (sys.p4,), sys.q, lam / 2.0)
    for i in range(3):
        j, k = _others(range(3), i)
        chk.on_circle(f"item1.q{i + 1}m{j + 1}", m[j], lam / 2.0, qs[i], norm)
        chk.on_circle(f"item1.q{i + 1}m{k + 1}", m[k], lam / 2.0, qs[i], norm)
        chk.exact(f"item1.qq{i + 1}", qs[i] - sys.q, (x[i] - sys.x4) * 0.5)
        chk.exact(f"item2.dx{i + 1}", d[i] - sys.x4, (x[i] - sys.x4) * 0.5)
        chk.exact(f"item3.mp{i + 1}", m[i] - sys.p4, (p[i] - sys.p4) * 0.5)
        for j in range(3):
            if j != i:
                chk.exact(f"item1.qij{i + 1}{j + 1}", qs[i] - qs[j], (x[i] - x[j]) * 0.5)
                chk.exact(f"item2.dij{i + 1}{j + 1}", d[i] - d[j], (x[i] - x[j]) * 0.5)
                chk.exact(f"item3.mij{i + 1}{j + 1}", m[i] - m[j], (p[i] - p[j]) * 0.5)


PARTITIONS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def isosceles_gaps(sys: OrthoSystem):
    """(gap, ||u|| + ||v||) for the three pair partitions of the system."""
    x = sys.points
    out = []
    for (i, j), (k, l) in PARTITIONS:
        u, v = x[i] - x[j], x[k] - x[l]
        gap = abs(norm_eval(sys.norm, u + v) - norm_eval(sys.norm, u - v))
        out.append((gap, norm_eval(sys.norm, u) + norm_eval(sys.norm, v)))
    return out


def _v_T32b(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    for n, (gap, size) in enumerate(isosceles_gaps(sys)):
        # the limit is tol * (||u|| + ||v||); report it relative to that size
        chk.value(f"partition{n + 1}", gap / size, chk.tol)


def inscribed_antitriangle_scene(norm: NormSpec, rng: np.random.Generator):
    """A triangle with q = p4, so that its antitriangle shares the circumcircle.

    With p4 = 0 and lambda = 1 this means x1 + x2 + x3 = 0 with all three on
    C: pick x1, then bisect along C for x2 with ||x1 + x2|| = 1.
    Returns (triangle, p4).
    """
    for _ in range(100):
        t1 = float(rng.uniform(0.0, 2.0 * math.pi))
        x1 = unit_vector(norm, t1)
        lo, hi = t1, t1 + math.pi  # ||x1 + x2|| goes from 2 down to 0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if norm_eval(norm, x1 + unit_vector(norm, mid)) > 1.0:
                lo = mid
            else:
                hi = mid
        x2 = unit_vector(norm, 0.5 * (lo + hi))
        x3 = -(x1 + x2)
        scale = float(rng.uniform(0.5, 2.0))
        shift = Point2(*(float(v) for v in rng.uniform(-1.0, 1.0, 2)))
        try:
            tri = Triangle(x1 * scale + shift, x2 * scale + shift, x3 * scale + shift)
        except DegenerateTriangleError:
            continue
        if tri.min_angle_deg() >= 1.0:
            return tri, shift
    raise InvalidInputError("could not build a triangle with q = p4")


def _anti_inscribed_residual(sys: OrthoSystem) -> float:
    anti = _anti4(sys)[:3]
    return max(abs(norm_eval(sys.norm, v - sys.p4) - sys.lam) for v in anti) / sys.lam


def _v_L34(sys: OrthoSystem, chk: Checks, scene: Scene, x4_shift=None) -> None:
    norm = sys.norm
    tri, p4 = inscribed_antitriangle_scene(norm, _rng(scene, 34))
    fwd = _mutate(build_system(norm, tri, p4), x4_shift)
    sub = Checks(fwd.diameter, fwd.lam, chk.tol)
    sub.exact("forward.q", fwd.q, fwd.p4)
    # q = p4 is the same as x4 = p4
    sub.exact("forward.x4", fwd.x4, fwd.p4)
    sub.value("forward.inscribed", _anti_inscribed_residual(fwd), chk.tol)
    chk.items.extend(sub.items)
    if (sys.q - sys.p4).length() > 1e-3 * sys.diameter:
        gap = _anti_inscribed_residual(sys)
        chk.truth("reverse.not_inscribed", gap > chk.tol)
        chk.truth("reverse.x4_ne_p4", (sys.x4 - sys.p4).length() > 1e-3 * sys.diameter)


def _normalized(sys: OrthoSystem):
    """Vertices, C-orthocenter and side midpoints in the frame where the
    Feuerbach circle is the unit circle."""
    s = 2.0 / sys.lam

    def f(v):
        return (v - sys.q) * s

    a = tuple(f(v) for v in sys.vertices)
    h = f(sys.x4)
    m = tuple(f(v) for v in sys.triangle.midpoints())
    return a, h, m


def _segment_hits(norm: NormSpec, a: Point2, b: Point2):
    hits = unit_circle_line_intersections(norm, Line.through(a, b))
    if isinstance(hits, Segment):
        return hits
    d = b - a
    dd = d.dot(d)
    return tuple(w for w in hits if -1e-12 <= (w - a).dot(d) / dd <= 1 + 1e-12)


def _v_T34(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    norm, tol = sys.norm, chk.tol
    a, h, m = _normalized(sys)
    for k in range(3):
        chk.value(f"frame.m{k + 1}", abs(norm_eval(norm, m[k]) - 1.0), tol)
    # item 1
    for k in range(3):
        i, j = _others(range(3), k)
        side = unit_circle_line_intersections(norm, Line.through(a[i], a[j]))
        if isinstance(side, Segment) or not side:
            raise _Inconclusive("degenerate intersection")
        if len(side) < 2:
            continue  # side line tangent to C: hypothesis not met
        near = min(side, key=lambda w: (w - m[k]).length())
        v = side[1] if near is side[0] else side[0]
        chk.value(f"item1.m{k + 1}", (near - m[k]).length(), 1e-7)
        if (v - near).length() <= TANGENT_GAP:
            continue
        hits = _segment_hits(norm, a[k], h)
        if isinstance(hits, Segment):
            raise _Inconclusive("degenerate intersection")
        if len(hits) != 1:
            continue
        u = hits[0]
        try:
            ok = chordal_orthogonal(norm, Chord(m[k], v, norm), Chord(v, u, norm), tol)
        except InvalidInputError:
            ok = False
        chk.truth(f"item1.k{k + 1}", ok)
        opp = -v
        if (opp - u).length() > EPS_ON:
            d1, d2 = v - m[k], u - opp
            chk.value(f"item1.par{k + 1}", abs(d1.cross(d2)) / (d1.length() * d2.length()), tol)
    # item 2
    u = tuple(midpoint(a[k], h) for k in range(3))
    for i, j, k in permutations(range(3)):
        d1, d2 = -m[j] - m[i], u[k] + h
        if d1.length() <= EPS_ON:
            continue  # m_i = -m_j: no chord [m_i, -m_j]
        name = f"item2.a{i + 1}{j + 1}{k + 1}"
        if d2.length() > EPS_ON:
            chk.value(name, abs(d1.cross(d2)) / (d1.length() * d2.length()), tol)
        else:
            try:
                chk.truth(name, chordal_condition(norm, m[i], -m[j], h, u[k], tol))
            except InvalidInputError:
                chk.truth(name, False)
        # the segment [h, u_k] itself is parallel to [m_i, -m_j]; recorded
        # alongside the chordal relation, which needs the line through -h
        d3 = u[k] - h
        if d3.length() > EPS_ON:
            chk.value(f"item2.seg{i + 1}{j + 1}{k + 1}",
                      abs(d1.cross(d3)) / (d1.length() * d3.length()), tol)
    for i, j in permutations(range(3), 2):
        if (u[i] + u[j]).length() <= EPS_ON:
            continue  # u_i = -u_j: no chord [u_i, -u_j]
        name = f"item2.b{i + 1}{j + 1}"
        try:
            ok = chordal_orthogonal(norm, Chord(m[i], m[j], norm), Chord(u[i], -u[j], norm), tol)
        except InvalidInputError:
            ok = False
        chk.truth(name, ok)


def _v_T35(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    rng = _rng(scene, 35)
    w = Point2(*(float(v) for v in rng.uniform(-2.0, 2.0, 2)))
    k = float(rng.uniform(0.1, 3.0)) * (1.0 if rng.random() < 0.5 else -1.0)
    img = tuple(homothety(w, k, v) for v in sys.points)
    c = homothety(w, k, sys.p4)
    sub = Checks(chk.diam * abs(k), sys.lam * abs(k), chk.tol)
    _check_system(sub, "image", sys.norm, img, c, sys.lam * abs(k))
    chk.items.extend(sub.items)


def _v_C33(sys: OrthoSystem, chk: Checks, scene: Scene) -> None:
    norm, lam = sys.norm, sys.lam
    x = sys.points
    p = _anti4(sys)
    g = tuple(sum(_others(x, i), Point2(0.0, 0.0)) / 3.0 for i in range(4))
    # {g} is the image of {x} under the homothety of ratio -1/3 about the
    # mean of the four points, so its circumcenter is the image of p4
    s4 = (x[0] + x[1] + x[2] + x[3]) / 4.0
    c = homothety(s4, -1.0 / 3.0, sys.p4)
    sub = Checks(chk.diam / 3.0, lam / 3.0, chk.tol)
    _check_system(sub, "system", norm, g, c, lam / 3.0)
    chk.items.extend(sub.items)
    for i in range(4):
        for j in range(4):
            if i != j:
                chk.exact(f"rel.x{i + 1}{j + 1}", g[i] - g[j], (x[j] - x[i]) / 3.0)
                chk.exact(f"rel.p{i + 1}{j + 1}", g[i] - g[j], (p[i] - p[j]) / 3.0)
    if norm.strictly_convex:
        # circumcenters are unique here, so solving for them is meaningful
        for i in range(4):
            try:
                tri = Triangle(*_others(x, i))
            except DegenerateTriangleError:
                continue
            c_i = circumcenters(norm, tri)[0][0]
            chk.value(f"solved.c{i + 1}", (c_i - p[i]).length() / chk.diam, chk.tol)


def lemma21_triple(norm: NormSpec, rng: np.random.Generator):
    """Three points of C in one of three configurations.

    Generic (x, y, z), an antipodal pair y = -x, or (for polygonal circles)
    x, -y and z on one edge, where exactly one of the two relations holds.
    """
    mode = int(rng.integers(0, 4))
    verts = norm.ball_vertices
    for _ in range(1000):
        if mode == 3 and verts is not None:
            e = int(rng.integers(0, len(verts)))
            a, b = verts[e], verts[(e + 1) % len(verts)]
            s, t, r = (float(v) for v in rng.uniform(0.05, 0.95, 3))
            x, y, z = a + (b - a) * s, -(a + (b - a) * t), a + (b - a) * r
        else:
            tx, ty, tz = (float(v) for v in rng.uniform(0.0, 2.0 * math.pi, 3))
            x, z = unit_vector(norm, tx), unit_vector(norm, tz)
            y = -x if mode == 1 else unit_vector(norm, ty)
        sep = min((x - y).length(), (x - z).length(), (y - z).length(),
                  (z + x).length(), (z + y).length())
        if sep > 1e-3:
            return x, y, z
    raise InvalidInputError("could not draw a separated triple")


def lemma21_holds(norm: NormSpec, x: Point2, y: Point2, z: Point2, tol: float = 1e-9):
    """(left side, right side) of the biconditional."""
    cx, cy = Chord(x, z, norm), Chord(y, z, norm)
    lhs = chordal_orthogonal(norm, cx, cy, tol) and chordal_orthogonal(norm, cy, cx, tol)
    rhs = norm_eval(norm, x + y) <= EPS_ON
    return lhs, rhs


def _v_L21(scene: Scene, tol: float) -> Outcome:
    x, y, z = lemma21_triple(scene.norm, _rng(scene, 21))
    lhs, rhs = lemma21_holds(scene.norm, x, y, z)
    if lhs == rhs:
        return Outcome("pass", 0.0)
    return Outcome("fail", 1.0, f"lhs={lhs} rhs={rhs}")


_VERIFIERS = {
    "T2.1": _v_T21,
    "C2.1": _v_C21,
    "T3.1": _v_T31,
    "C3.1": _v_C31,
    "C3.2": _v_C32,
    "L3.1": _v_L31,
    "L3.2": _v_L32,
    "T3.2a": _v_T32a,
    "L3.3": _v_L33,
    "T3.2b": _v_T32b,
    "L3.4": _v_L34,
    "T3.4": _v_T34,
    "T3.5": _v_T35,
    "C3.3": _v_C33,
}


def _check_id(theorem_id: str) -> None:
    if theorem_id not in THEOREM_IDS:
        raise UnknownTheoremError(f"unknown theorem id {theorem_id!r}")


def verify_theorem(theorem_id: str, scene: Scene, tol: float = DEFAULT_TOL,
                   x4_shift: Point2 | None = None) -> Outcome:
    """Check one theorem on one scene.

    ``x4_shift`` corrupts the C-orthocenter before the checks run; it exists
    for the mutation self-test.
    """
    _check_id(theorem_id)
    if theorem_id == "L2.1":
        return _v_L21(scene, tol)
    if scene.p4 is None:
        return Outcome("inconclusive", reason="no_witness")
    sys = system_of(scene, x4_shift)
    chk = Checks(sys.diameter, sys.lam, tol)
    _check_scene(chk, sys)
    fn = _VERIFIERS[theorem_id]
    try:
        if theorem_id == "L3.4":
            fn(sys, chk, scene, x4_shift)
        else:
            fn(sys, chk, scene)
    except _Inconclusive as exc:
        return Outcome("inconclusive", reason=str(exc))
    except NoWitnessError:
        return Outcome("inconclusive", reason="no_witness")
    return chk.outcome()


def identity_residuals(sys: OrthoSystem) -> dict[str, float]:
    """Every closed-form identity (T2.1, C2.1, C3.1, L3.2, L3.3), normalized by diam."""
    out = {}
    scene = Scene(sys.norm, sys.triangle, sys.p4, 0)
    for tid in ("T2.1", "C2.1", "C3.1", "L3.2", "L3.3"):
        chk = Checks(sys.diameter, sys.lam, DEFAULT_TOL)
        _VERIFIERS[tid](sys, chk, scene)
        for name, v, limit in chk.items:
            if limit == EXACT:
                out[f"{tid}:{name}"] = v
    return out


# -- suites ------------------------------------------------------------------

def norm_key(norm: NormSpec) -> str:
    if norm.kind == "euclidean":
        return "euclidean"
    if norm.kind == "lp":
        return f"lp:{norm.p!r}"
    return "polygon:" + ";".join(f"{v.x!r},{v.y!r}" for v in norm.vertices)


def sub_seed(seed: int, theorem_id: str, norm: NormSpec, index: int) -> int:
    digest = hashlib.blake2b(f"{theorem_id}|{norm_key(norm)}|{index}".encode(),
                             digest_size=8).digest()
    return (seed ^ int.from_bytes(digest, "little")) & (2**63 - 1)


def run_trial(theorem_id: str, norm: NormSpec, seed: int, tol: float = DEFAULT_TOL,
              x4_shift_frac: float | None = None) -> tuple[Scene | None, Outcome]:
    solve = theorem_id != "L2.1"
    try:
        scene = random_scene(norm, seed, solve=solve)
    except NoWitnessError:
        return None, Outcome("inconclusive", reason="no_witness")
    except GenerationFailedError:
        return None, Outcome("inconclusive", reason="generation_failed")
    shift = None
    if x4_shift_frac is not None:
        shift = Point2(math.cos(0.7), math.sin(0.7)) * (x4_shift_frac * scene.tri.diameter)
    return scene, verify_theorem(theorem_id, scene, tol, shift)


def _run_cell(args):
    theorem_id, norm, trials, seed, tol, shift = args
    report = VerificationReport(theorem_id, norm, seed=seed)
    for index in range(trials):
        scene, outcome = run_trial(theorem_id, norm, sub_seed(seed, theorem_id, norm, index),
                                   tol, shift)
        report.record(scene, outcome)
    return report


def run_suite(ids, trials_per_norm: int, norm_pool, seed: int, tol: float = DEFAULT_TOL,
              workers: int = 1, x4_shift_frac: float | None = None) -> list[VerificationReport]:
    """One report per (theorem id, norm), in id-major order."""
    if trials_per_norm < 1:
        raise InvalidInputError("trials_per_norm must be >= 1")
    ids = list(ids)
    for tid in ids:
        _check_id(tid)
    cells = [(tid, norm, trials_per_norm, seed, tol, x4_shift_frac)
             for tid in ids for norm in norm_pool]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_cell, cells))
    return [_run_cell(c) for c in cells]


def mutation_self_test(trials_per_norm: int = 3, norm_pool=None, seed: int = 0,
                       tol: float = DEFAULT_TOL) -> dict[str, int]:
    """Failures per theorem id once x4 is shifted by 0.1 * diam.

    Every id except those in ``X4_FREE`` must come back with at least one
    failure; otherwise its verifier cannot see x4 at all.
    """
    pool = norm_pool if norm_pool is not None else builtin_norm_pool()
    ids = [t for t in THEOREM_IDS if t not in X4_FREE]
    reports = run_suite(ids, trials_per_norm, pool, seed, tol, x4_shift_frac=MUTATION_SHIFT)
    counts = {t: 0 for t in ids}
    for r in reports:
        counts[r.theorem_id] += len(r.failures)
    return counts
