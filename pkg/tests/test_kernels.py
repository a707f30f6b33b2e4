import os
import subprocess
import sys

import numpy as np
import pytest

from minkortho import NormSpec
from minkortho.kernels import get_backend

from conftest import POOL, SQUARE, random_hexagon
from oracles import OracleNorm, residual

NORMS = POOL + [SQUARE, NormSpec.lp(1.2), random_hexagon(np.random.default_rng(1))]

jit = get_backend("numba")
ref = get_backend("numpy")


def tri_and_points(seed):
    rng = np.random.default_rng(seed)
    tri = rng.uniform(-2, 2, size=(3, 2))
    xy = rng.uniform(-6, 6, size=(500, 2))
    return tri, xy


@pytest.mark.parametrize("norm", NORMS, ids=str)
def test_norms_agree(norm):
    _, xy = tri_and_points(0)
    params = norm.kernel_params
    a = jit.norm_many(*params, xy[:, 0], xy[:, 1])
    b = ref.norm_many(*params, xy[:, 0], xy[:, 1])
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=0)
    np.testing.assert_allclose(a, OracleNorm.of(norm)(xy[:, 0], xy[:, 1]), rtol=1e-12)


@pytest.mark.parametrize("norm", NORMS, ids=str)
def test_residuals_agree(norm):
    tri, xy = tri_and_points(1)
    params = norm.kernel_params
    a = jit.residual_many(*params, tri, xy[:, 0], xy[:, 1])
    b = ref.residual_many(*params, tri, xy[:, 0], xy[:, 1])
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-13)
    np.testing.assert_allclose(a, residual(OracleNorm.of(norm), tri, xy[:, 0], xy[:, 1]),
                               rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("norm", NORMS, ids=str)
def test_descent_reaches_same_quality(norm):
    tri, _ = tri_and_points(2)
    params = norm.kernel_params
    starts = np.array([tri.mean(axis=0), tri.mean(axis=0) + 0.3, tri[0] * 0.5])
    out = []
    for be in (jit, ref):
        pts, _ = be.descend(*params, tri, starts, 200, 0.3, 0.0, 1e-12)
        pts, fv = be.polish(*params, tri, pts, 30)
        out.append((pts, fv))
    (pa, fa), (pb, fb) = out
    assert pa.shape == pb.shape == starts.shape
    # both backends land on (near-)zeros at the same spots, or both fail there
    for i in range(len(starts)):
        assert (fa[i] <= 1e-9) == (fb[i] <= 1e-9)
        if fa[i] <= 1e-9 and norm.strictly_convex:
            assert np.linalg.norm(pa[i] - pb[i]) <= 1e-7


def _backend_in_subprocess(value):
    env = dict(os.environ, MINKORTHO_BACKEND=value)
    proc = subprocess.run([sys.executable, "-c", "import minkortho.kernels as k; print(k.BACKEND)"],
                          env=env, capture_output=True, text=True, check=False)
    return proc


def test_env_flag_selects_backend():
    assert _backend_in_subprocess("numpy").stdout.strip() == "numpy"
    assert _backend_in_subprocess("numba").stdout.strip() == "numba"
    bad = _backend_in_subprocess("fortran")
    assert bad.returncode != 0 and "unknown kernel backend" in bad.stderr


def test_full_solver_agrees_across_backends():
    code = (
        "from minkortho import *\n"
        "from minkortho.harness import random_scene\n"
        "for n in builtin_norm_pool():\n"
        "    for s in range(5):\n"
        "        try: sc = random_scene(n, s)\n"
        "        except NoWitnessError: print(n, s, None); continue\n"
        "        print(n, s, '%.9f %.9f' % (sc.p4.x, sc.p4.y))\n"
    )
    outs = []
    for value in ("numba", "numpy"):
        env = dict(os.environ, MINKORTHO_BACKEND=value)
        proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                              text=True, check=True)
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
