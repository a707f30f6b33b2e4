"""Pure-numpy backend.

Same contracts as the numba backend, but vectorized across starts instead of
looping: every Nelder-Mead simplex advances in lockstep and branch choices
are resolved with masks.
"""

import numpy as np

EUCLID, L1, LINF, LP, POLYGON = 0, 1, 2, 3, 4

NM_ALPHA, NM_GAMMA, NM_RHO, NM_SIGMA = 1.0, 2.0, 0.5, 0.5


def _sector(angles, x, y):
    j = np.searchsorted(angles, np.arctan2(y, x), side="right") - 1
    return np.where(j < 0, angles.shape[0] - 1, j)


def norm_many(kind, p, facets, angles, xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if kind == EUCLID:
        return np.hypot(xs, ys)
    if kind == L1:
        return np.abs(xs) + np.abs(ys)
    if kind == LINF:
        return np.maximum(np.abs(xs), np.abs(ys))
    if kind == LP:
        ax, ay = np.abs(xs), np.abs(ys)
        m = np.maximum(ax, ay)
        safe = np.where(m == 0.0, 1.0, m)
        val = safe * ((ax / safe) ** p + (ay / safe) ** p) ** (1.0 / p)
        return np.where(m == 0.0, 0.0, val)
    j = _sector(angles, xs, ys)
    val = facets[j, 0] * xs + facets[j, 1] * ys
    return np.where((xs == 0.0) & (ys == 0.0), 0.0, val)


def grad_many(kind, p, facets, angles, xs, ys):
    with np.errstate(divide="ignore", invalid="ignore"):
        return _grad_many(kind, p, facets, angles, xs, ys)


def _grad_many(kind, p, facets, angles, xs, ys):
    if kind == EUCLID:
        r = np.hypot(xs, ys)
        r = np.where(r == 0.0, np.inf, r)
        return xs / r, ys / r
    if kind == L1:
        return np.sign(xs), np.sign(ys)
    if kind == LINF:
        xdom = np.abs(xs) >= np.abs(ys)
        return np.where(xdom, np.sign(xs), 0.0), np.where(xdom, 0.0, np.sign(ys))
    if kind == LP:
        ax, ay = np.abs(xs), np.abs(ys)
        m = np.maximum(ax, ay)
        safe = np.where(m == 0.0, 1.0, m)
        s = ((ax / safe) ** p + (ay / safe) ** p) ** (1.0 / p)
        gx = np.sign(xs) * (ax / safe / s) ** (p - 1.0)
        gy = np.sign(ys) * (ay / safe / s) ** (p - 1.0)
        return np.where(m == 0.0, 0.0, gx), np.where(m == 0.0, 0.0, gy)
    j = _sector(angles, xs, ys)
    zero = (xs == 0.0) & (ys == 0.0)
    return np.where(zero, 0.0, facets[j, 0]), np.where(zero, 0.0, facets[j, 1])


def _dists(params, tri, xs, ys):
    return [norm_many(*params, xs - tri[i, 0], ys - tri[i, 1]) for i in range(3)]


def residual_many(kind, p, facets, angles, tri, xs, ys):
    d = _dists((kind, p, facets, angles), tri, np.asarray(xs, float), np.asarray(ys, float))
    return np.maximum(np.maximum(d[0], d[1]), d[2]) - np.minimum(np.minimum(d[0], d[1]), d[2])


def _objective(params, tri, xs, ys, penalty):
    d0, d1, d2 = _dists(params, tri, xs, ys)
    f = np.maximum(np.maximum(d0, d1), d2) - np.minimum(np.minimum(d0, d1), d2)
    if penalty > 0.0:
        f = f + penalty * (d0 + d1 + d2) / 3.0
    return f


def descend(kind, p, facets, angles, tri, starts, iterations, step, penalty, xtol):
    params = (kind, p, facets, angles)
    n = starts.shape[0]
    sx = np.stack([starts[:, 0], starts[:, 0] + step, starts[:, 0]], axis=1)
    sy = np.stack([starts[:, 1], starts[:, 1], starts[:, 1] + step], axis=1)
    fs = _objective(params, tri, sx.ravel(), sy.ravel(), penalty).reshape(n, 3)
    rows = np.arange(n)
    for _ in range(iterations):
        order = np.argsort(fs, axis=1, kind="stable")
        sx = np.take_along_axis(sx, order, 1)
        sy = np.take_along_axis(sy, order, 1)
        fs = np.take_along_axis(fs, order, 1)
        size = np.maximum(np.abs(sx[:, 1] - sx[:, 0]) + np.abs(sy[:, 1] - sy[:, 0]),
                          np.abs(sx[:, 2] - sx[:, 0]) + np.abs(sy[:, 2] - sy[:, 0]))
        live = size > xtol
        if not live.any():
            break
        cx = 0.5 * (sx[:, 0] + sx[:, 1])
        cy = 0.5 * (sy[:, 0] + sy[:, 1])
        rx = cx + NM_ALPHA * (cx - sx[:, 2])
        ry = cy + NM_ALPHA * (cy - sy[:, 2])
        ex = cx + NM_GAMMA * (rx - cx)
        ey = cy + NM_GAMMA * (ry - cy)
        ox = cx + NM_RHO * (rx - cx)
        oy = cy + NM_RHO * (ry - cy)
        ix = cx + NM_RHO * (sx[:, 2] - cx)
        iy = cy + NM_RHO * (sy[:, 2] - cy)
        cand = _objective(params, tri, np.concatenate([rx, ex, ox, ix]),
                          np.concatenate([ry, ey, oy, iy]), penalty).reshape(4, n)
        fr, fe, fo, fi = cand
        f0, f1, f2 = fs[:, 0], fs[:, 1], fs[:, 2]

        expand = fr < f0
        take_e = expand & (fe < fr)
        take_r = (expand & ~take_e) | (~expand & (fr < f1))
        outside = ~expand & ~(fr < f1) & (fr < f2)
        inside = ~expand & ~(fr < f1) & ~(fr < f2)
        take_o = outside & (fo <= fr)
        take_i = inside & (fi < f2)
        shrink = (outside & ~take_o) | (inside & ~take_i)

        nx = np.select([take_e, take_r, take_o, take_i], [ex, rx, ox, ix], sx[:, 2])
        ny = np.select([take_e, take_r, take_o, take_i], [ey, ry, oy, iy], sy[:, 2])
        nf = np.select([take_e, take_r, take_o, take_i], [fe, fr, fo, fi], f2)
        upd = live & ~shrink
        sx[upd, 2] = nx[upd]
        sy[upd, 2] = ny[upd]
        fs[upd, 2] = nf[upd]

        shr = live & shrink
        if shr.any():
            idx = rows[shr]
            kx = sx[idx, 0:1] + NM_SIGMA * (sx[idx, 1:] - sx[idx, 0:1])
            ky = sy[idx, 0:1] + NM_SIGMA * (sy[idx, 1:] - sy[idx, 0:1])
            kf = _objective(params, tri, kx.ravel(), ky.ravel(), penalty).reshape(-1, 2)
            sx[idx, 1:] = kx
            sy[idx, 1:] = ky
            fs[idx, 1:] = kf
    best = np.argmin(fs, axis=1)
    px = sx[rows, best]
    py = sy[rows, best]
    pts = np.stack([px, py], axis=1)
    return pts, residual_many(kind, p, facets, angles, tri, px, py)


def polish(kind, p, facets, angles, tri, pts, iterations):
    params = (kind, p, facets, angles)
    x = pts[:, 0].copy()
    y = pts[:, 1].copy()
    f = residual_many(*params, tri, x, y)
    active = f > 0.0
    for _ in range(iterations):
        if not active.any():
            break
        d0, d1, d2 = _dists(params, tri, x, y)
        g = [grad_many(*params, x - tri[i, 0], y - tri[i, 1]) for i in range(3)]
        r0, r1 = d0 - d1, d0 - d2
        a, b = g[0][0] - g[1][0], g[0][1] - g[1][1]
        c, e = g[0][0] - g[2][0], g[0][1] - g[2][1]
        det = a * e - b * c
        jn = a * a + b * b + c * c + e * e
        regular = np.abs(det) > 1e-10 * jn
        sdet = np.where(regular, det, 1.0)
        ndx = -(e * r0 - b * r1) / sdet
        ndy = -(-c * r0 + a * r1) / sdet
        gx, gy = a * r0 + c * r1, b * r0 + e * r1
        gg = gx * gx + gy * gy
        jg0, jg1 = a * gx + b * gy, c * gx + e * gy
        den = jg0 * jg0 + jg1 * jg1
        stuck = (jn == 0.0) | (~regular & ((gg == 0.0) | (den == 0.0)))
        t = np.where(den == 0.0, 0.0, gg / np.where(den == 0.0, 1.0, den))
        dx = np.where(regular, ndx, -t * gx)
        dy = np.where(regular, ndy, -t * gy)
        active &= ~stuck
        lam = np.ones_like(x)
        moved = np.zeros(x.shape, dtype=bool)
        for _ in range(40):
            trying = active & ~moved
            if not trying.any():
                break
            tx = x + lam * dx
            ty = y + lam * dy
            ft = residual_many(*params, tri, tx, ty)
            ok = trying & (ft < f)
            x = np.where(ok, tx, x)
            y = np.where(ok, ty, y)
            f = np.where(ok, ft, f)
            moved |= ok
            lam = np.where(trying & ~ok, 0.5 * lam, lam)
        active &= moved & (f > 0.0)
    return np.stack([x, y], axis=1), f
