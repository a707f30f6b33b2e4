#!/usr/bin/env python3
"""Time the numba kernels against the numpy fallback.

Kernel-level timings use both backends in one process; the end-to-end
circumcenter timing runs a subprocess per backend because MINKORTHO_BACKEND
is read at import time.

    python3 benchmarks/bench_kernels.py [--points N] [--triangles N] [--json]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from minkortho import builtin_norm_pool
from minkortho.kernels import get_backend

REPEATS = 5

E2E = """
import time
import numpy as np
from minkortho import builtin_norm_pool, NoWitnessError
from minkortho.construct import circumcenters
from minkortho.harness import random_triangle
rng = np.random.default_rng(0)
tris = [random_triangle(rng)[0] for _ in range({n})]
pool = builtin_norm_pool()
circumcenters(pool[0], tris[0])  # warm-up (jit compile)
t = time.perf_counter()
for norm in pool:
    for tri in tris:
        try:
            circumcenters(norm, tri)
        except NoWitnessError:
            pass
print(time.perf_counter() - t)
"""


def best_of(fn, repeats=REPEATS):
    fn()  # warm-up, includes compilation for the jit backend
    times = []
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_rows(n_points):
    rng = np.random.default_rng(1)
    tri = rng.uniform(-2, 2, size=(3, 2))
    xs, ys = rng.uniform(-6, 6, size=(2, n_points))
    starts = rng.uniform(-3, 3, size=(64, 2))
    rows = []
    for norm in builtin_norm_pool():
        params = norm.kernel_params
        for name in ("numba", "numpy"):
            be = get_backend(name)
            rows.append({
                "norm": str(norm),
                "backend": name,
                "residual_many_s": best_of(lambda: be.residual_many(*params, tri, xs, ys)),
                "descend_64x200_s": best_of(
                    lambda: be.descend(*params, tri, starts, 200, 0.3, 0.0, 1e-10), repeats=2),
            })
    return rows


def end_to_end(n_triangles):
    out = {}
    for name in ("numba", "numpy"):
        env = dict(os.environ, MINKORTHO_BACKEND=name)
        proc = subprocess.run([sys.executable, "-c", E2E.format(n=n_triangles)], env=env,
                              capture_output=True, text=True, check=True)
        out[name] = float(proc.stdout.strip())
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=200_000, help="points per residual_many call")
    ap.add_argument("--triangles", type=int, default=10, help="triangles per norm, end to end")
    ap.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = ap.parse_args()

    rows = kernel_rows(args.points)
    e2e = end_to_end(args.triangles)
    if args.json:
        print(json.dumps({"kernels": rows, "circumcenters_s": e2e}, indent=2))
        return
    print(f"{'norm':<12}{'backend':<9}{'residual_many':>15}{'descend 64x200':>16}")
    for r in rows:
        print(f"{r['norm']:<12}{r['backend']:<9}{r['residual_many_s'] * 1e3:>12.2f} ms"
              f"{r['descend_64x200_s'] * 1e3:>13.1f} ms")
    n = args.triangles * len(builtin_norm_pool())
    print(f"\ncircumcenters() on {n} triangles:")
    for name, t in e2e.items():
        print(f"  {name:<6} {t:8.2f} s  ({t / n * 1e3:.1f} ms per triangle)")
    print(f"  speedup {e2e['numpy'] / e2e['numba']:.1f}x")


if __name__ == "__main__":
    main()
