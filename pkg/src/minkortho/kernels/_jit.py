"""numba backend: scalar loops compiled with @njit.

The per-point helpers are inlined; as separate calls they cost more than
the arithmetic they do.
"""

import math

import numpy as np
from numba import njit

EUCLID, L1, LINF, LP, POLYGON = 0, 1, 2, 3, 4

NM_ALPHA, NM_GAMMA, NM_RHO, NM_SIGMA = 1.0, 2.0, 0.5, 0.5


@njit(cache=True, inline="always")
def _sector(angles, x, y):
    phi = math.atan2(y, x)
    lo, hi = 0, angles.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if angles[mid] <= phi:
            lo = mid + 1
        else:
            hi = mid
    j = lo - 1
    if j < 0:
        j = angles.shape[0] - 1
    return j


@njit(cache=True, inline="always")
def norm1(kind, p, facets, angles, x, y):
    if kind == EUCLID:
        return math.hypot(x, y)
    if kind == L1:
        return abs(x) + abs(y)
    if kind == LINF:
        return max(abs(x), abs(y))
    if kind == LP:
        ax = abs(x)
        ay = abs(y)
        m = max(ax, ay)
        if m == 0.0:
            return 0.0
        return m * ((ax / m) ** p + (ay / m) ** p) ** (1.0 / p)
    if x == 0.0 and y == 0.0:
        return 0.0
    j = _sector(angles, x, y)
    return facets[j, 0] * x + facets[j, 1] * y


@njit(cache=True, inline="always")
def grad1(kind, p, facets, angles, x, y):
    """A (sub)gradient of the norm at (x, y) != 0."""
    if kind == EUCLID:
        r = math.hypot(x, y)
        if r == 0.0:
            return 0.0, 0.0
        return x / r, y / r
    if kind == L1:
        return np.sign(x), np.sign(y)
    if kind == LINF:
        if abs(x) >= abs(y):
            return np.sign(x), 0.0
        return 0.0, np.sign(y)
    if kind == LP:
        ax = abs(x)
        ay = abs(y)
        m = max(ax, ay)
        if m == 0.0:
            return 0.0, 0.0
        s = ((ax / m) ** p + (ay / m) ** p) ** (1.0 / p)
        gx = np.sign(x) * (ax / m / s) ** (p - 1.0)
        gy = np.sign(y) * (ay / m / s) ** (p - 1.0)
        return gx, gy
    if x == 0.0 and y == 0.0:
        return 0.0, 0.0
    j = _sector(angles, x, y)
    return facets[j, 0], facets[j, 1]


@njit(cache=True)
def norm_many(kind, p, facets, angles, xs, ys):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = norm1(kind, p, facets, angles, xs[i], ys[i])
    return out


@njit(cache=True, inline="always")
def _dists(kind, p, facets, angles, tri, cx, cy):
    d0 = norm1(kind, p, facets, angles, cx - tri[0, 0], cy - tri[0, 1])
    d1 = norm1(kind, p, facets, angles, cx - tri[1, 0], cy - tri[1, 1])
    d2 = norm1(kind, p, facets, angles, cx - tri[2, 0], cy - tri[2, 1])
    return d0, d1, d2


@njit(cache=True, inline="always")
def residual1(kind, p, facets, angles, tri, cx, cy):
    d0, d1, d2 = _dists(kind, p, facets, angles, tri, cx, cy)
    return max(d0, d1, d2) - min(d0, d1, d2)


@njit(cache=True)
def residual_many(kind, p, facets, angles, tri, xs, ys):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = residual1(kind, p, facets, angles, tri, xs[i], ys[i])
    return out


@njit(cache=True, inline="always")
def _objective(kind, p, facets, angles, tri, cx, cy, penalty):
    d0, d1, d2 = _dists(kind, p, facets, angles, tri, cx, cy)
    f = max(d0, d1, d2) - min(d0, d1, d2)
    if penalty > 0.0:
        f += penalty * (d0 + d1 + d2) / 3.0
    return f


@njit(cache=True)
def _nelder_mead(kind, p, facets, angles, tri, x0, y0, step, iterations, penalty, xtol):
    sx = np.empty(3)
    sy = np.empty(3)
    fs = np.empty(3)
    sx[0], sy[0] = x0, y0
    sx[1], sy[1] = x0 + step, y0
    sx[2], sy[2] = x0, y0 + step
    for k in range(3):
        fs[k] = _objective(kind, p, facets, angles, tri, sx[k], sy[k], penalty)
    for _ in range(iterations):
        # order vertices best..worst
        for a in range(3):
            for b in range(2 - a):
                if fs[b + 1] < fs[b]:
                    fs[b], fs[b + 1] = fs[b + 1], fs[b]
                    sx[b], sx[b + 1] = sx[b + 1], sx[b]
                    sy[b], sy[b + 1] = sy[b + 1], sy[b]
        size = max(abs(sx[1] - sx[0]) + abs(sy[1] - sy[0]),
                   abs(sx[2] - sx[0]) + abs(sy[2] - sy[0]))
        if size <= xtol:
            break
        cx = 0.5 * (sx[0] + sx[1])
        cy = 0.5 * (sy[0] + sy[1])
        rx = cx + NM_ALPHA * (cx - sx[2])
        ry = cy + NM_ALPHA * (cy - sy[2])
        fr = _objective(kind, p, facets, angles, tri, rx, ry, penalty)
        if fr < fs[0]:
            ex = cx + NM_GAMMA * (rx - cx)
            ey = cy + NM_GAMMA * (ry - cy)
            fe = _objective(kind, p, facets, angles, tri, ex, ey, penalty)
            if fe < fr:
                sx[2], sy[2], fs[2] = ex, ey, fe
            else:
                sx[2], sy[2], fs[2] = rx, ry, fr
            continue
        if fr < fs[1]:
            sx[2], sy[2], fs[2] = rx, ry, fr
            continue
        shrink = False
        if fr < fs[2]:
            kx = cx + NM_RHO * (rx - cx)
            ky = cy + NM_RHO * (ry - cy)
            fk = _objective(kind, p, facets, angles, tri, kx, ky, penalty)
            if fk <= fr:
                sx[2], sy[2], fs[2] = kx, ky, fk
            else:
                shrink = True
        else:
            kx = cx + NM_RHO * (sx[2] - cx)
            ky = cy + NM_RHO * (sy[2] - cy)
            fk = _objective(kind, p, facets, angles, tri, kx, ky, penalty)
            if fk < fs[2]:
                sx[2], sy[2], fs[2] = kx, ky, fk
            else:
                shrink = True
        if shrink:
            for k in range(1, 3):
                sx[k] = sx[0] + NM_SIGMA * (sx[k] - sx[0])
                sy[k] = sy[0] + NM_SIGMA * (sy[k] - sy[0])
                fs[k] = _objective(kind, p, facets, angles, tri, sx[k], sy[k], penalty)
    best = 0
    for k in range(1, 3):
        if fs[k] < fs[best]:
            best = k
    return sx[best], sy[best]


@njit(cache=True)
def descend(kind, p, facets, angles, tri, starts, iterations, step, penalty, xtol):
    n = starts.shape[0]
    pts = np.empty((n, 2))
    fv = np.empty(n)
    for i in range(n):
        x, y = _nelder_mead(kind, p, facets, angles, tri, starts[i, 0], starts[i, 1],
                            step, iterations, penalty, xtol)
        pts[i, 0] = x
        pts[i, 1] = y
        fv[i] = residual1(kind, p, facets, angles, tri, x, y)
    return pts, fv


@njit(cache=True)
def _newton(kind, p, facets, angles, tri, x, y, iterations):
    f = residual1(kind, p, facets, angles, tri, x, y)
    for _ in range(iterations):
        if f == 0.0:
            break
        d0, d1, d2 = _dists(kind, p, facets, angles, tri, x, y)
        g0x, g0y = grad1(kind, p, facets, angles, x - tri[0, 0], y - tri[0, 1])
        g1x, g1y = grad1(kind, p, facets, angles, x - tri[1, 0], y - tri[1, 1])
        g2x, g2y = grad1(kind, p, facets, angles, x - tri[2, 0], y - tri[2, 1])
        r0 = d0 - d1
        r1 = d0 - d2
        a = g0x - g1x
        b = g0y - g1y
        c = g0x - g2x
        e = g0y - g2y
        det = a * e - b * c
        jn = a * a + b * b + c * c + e * e
        if jn == 0.0:
            break
        if abs(det) > 1e-10 * jn:
            dx = -(e * r0 - b * r1) / det
            dy = -(-c * r0 + a * r1) / det
        else:
            # rank-deficient: Gauss-Newton step along -J^T r
            gx = a * r0 + c * r1
            gy = b * r0 + e * r1
            gg = gx * gx + gy * gy
            jg0 = a * gx + b * gy
            jg1 = c * gx + e * gy
            den = jg0 * jg0 + jg1 * jg1
            if gg == 0.0 or den == 0.0:
                break
            t = gg / den
            dx = -t * gx
            dy = -t * gy
        lam = 1.0
        moved = False
        for _ in range(40):
            nx = x + lam * dx
            ny = y + lam * dy
            fn = residual1(kind, p, facets, angles, tri, nx, ny)
            if fn < f:
                x, y, f = nx, ny, fn
                moved = True
                break
            lam *= 0.5
        if not moved:
            break
    return x, y, f


@njit(cache=True)
def polish(kind, p, facets, angles, tri, pts, iterations):
    n = pts.shape[0]
    out = np.empty((n, 2))
    fv = np.empty(n)
    for i in range(n):
        x, y, f = _newton(kind, p, facets, angles, tri, pts[i, 0], pts[i, 1], iterations)
        out[i, 0] = x
        out[i, 1] = y
        fv[i] = f
    return out, fv
