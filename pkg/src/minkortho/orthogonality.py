"""Isosceles, Birkhoff and chordal orthogonality in a normed plane."""

from __future__ import annotations

import math

from .affine import Line, Point2, Segment
from .errors import InvalidInputError, SearchExhaustedError
from .norms import (
    EPS_ON,
    Chord,
    NormSpec,
    norm_eval,
    support_line_exists,
    unit_circle_line_intersections,
    unit_vector,
)

DEFAULT_TOL = 1e-9
PARTNER_SWEEP = 64


def isosceles_residual(norm: NormSpec, x: Point2, y: Point2) -> float:
    """| ||x+y|| - ||x-y|| | relative to max(1, ||x+y|| + ||x-y||)."""
    a = norm_eval(norm, x + y)
    b = norm_eval(norm, x - y)
    return abs(a - b) / max(1.0, a + b)


def isosceles_orthogonal(norm: NormSpec, x: Point2, y: Point2, tol: float = DEFAULT_TOL) -> bool:
    return isosceles_residual(norm, x, y) <= tol


def birkhoff_orthogonal(norm: NormSpec, x: Point2, y: Point2, tol: float = DEFAULT_TOL) -> bool:
    """Whether ||x + t y|| >= ||x|| for every real t (up to ``tol``).

    t -> ||x + t y|| is convex and exceeds ||x|| once |t| > 2||x||/||y||, so a
    ternary search on a slightly wider bracket finds its minimum.
    """
    if y.x == 0.0 and y.y == 0.0:
        raise InvalidInputError("Birkhoff orthogonality needs y != 0")
    nx = norm_eval(norm, x)
    if nx == 0.0:
        return True
    bound = 4.0 * nx / norm_eval(norm, y) + 1.0

    def f(t):
        return norm_eval(norm, Point2(x.x + t * y.x, x.y + t * y.y))

    lo, hi = -bound, bound
    while hi - lo > 1e-12 * bound:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) <= f(m2):
            hi = m2
        else:
            lo = m1
    best = min(f(lo), f(hi), f(0.5 * (lo + hi)))
    return best >= nx - tol * max(1.0, nx)


def parallel(d1: Point2, d2: Point2, tol: float = DEFAULT_TOL) -> bool:
    return abs(d1.cross(d2)) <= tol * d1.length() * d2.length()


def chordal_condition(norm: NormSpec, p1: Point2, q1: Point2, p2: Point2, q2: Point2,
                      tol: float = DEFAULT_TOL) -> bool:
    """The chordal relation on raw points, without checking they lie on C."""
    d1 = q1 - p1
    opp = -p2
    if (opp - q2).length() > EPS_ON:
        return parallel(q2 - opp, d1, tol)
    return support_line_exists(norm, q2, d1, tol)


def chordal_orthogonal(norm: NormSpec, c1: Chord, c2: Chord, tol: float = DEFAULT_TOL) -> bool:
    """[c1.p, c1.q] perp_C [c2.p, c2.q] with respect to the unit circle."""
    for c in (c1, c2):
        if not isinstance(c, Chord) or c.norm != norm:
            raise InvalidInputError("chords must belong to the unit circle of this norm")
    return chordal_condition(norm, c1.p, c1.q, c2.p, c2.q, tol)


def _far_hit(hits, avoid: Point2):
    if isinstance(hits, Segment):
        hits = (hits.a, hits.b)
    if not hits:
        return None
    return max(hits, key=lambda h: (h - avoid).length())


def chordal_partner(norm: NormSpec, c1: Chord, tol: float = DEFAULT_TOL) -> Chord:
    """Some chord [z, w] with c1 perp_C [z, w].

    Sweeps z around C. The line through -z parallel to c1 meets C again at w;
    when it only touches C at -z, the chord [z, -z] works through the
    support-line clause.
    """
    d = c1.q - c1.p
    for k in range(PARTNER_SWEEP):
        theta = 2.0 * math.pi * (k + 0.25) / PARTNER_SWEEP
        z = unit_vector(norm, theta)
        w = _far_hit(unit_circle_line_intersections(norm, Line(-z, d)), -z)
        if w is None or (w + z).length() <= EPS_ON:
            w = -z
        if (w - z).length() <= EPS_ON:
            continue
        try:
            cand = Chord(z, w, norm)
        except InvalidInputError:
            continue
        if chordal_orthogonal(norm, c1, cand, tol):
            return cand
    raise SearchExhaustedError(f"no chordal partner found for {c1} under {norm}")
