import math
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from minkortho import NormSpec, Point2, builtin_norm_pool

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

POOL = builtin_norm_pool()
POOL_IDS = [str(n) for n in POOL]

SQUARE = NormSpec.polygon([(1, 1), (-1, 1), (-1, -1), (1, -1)])
L1 = NormSpec.lp(1)
LINF = NormSpec.lp(math.inf)
EUCLID = NormSpec.euclidean()


def random_hexagon(rng):
    """Centrally symmetric hexagon with jittered vertex angles and radii."""
    base = np.sort(rng.uniform(0, math.pi, 3))
    while np.min(np.diff(np.r_[base, base[0] + math.pi])) < 0.4:
        base = np.sort(rng.uniform(0, math.pi, 3))
    r = rng.uniform(0.7, 1.4, 3)
    half = [Point2(ri * math.cos(t), ri * math.sin(t)) for ri, t in zip(r, base)]
    verts = half + [-v for v in half]
    try:
        return NormSpec.polygon(verts)
    except ValueError:
        # jitter made it non-convex; fall back to the regular one rotated
        return NormSpec.regular_polygon(6, phase=float(base[0]))


@pytest.fixture(params=POOL, ids=POOL_IDS)
def pool_norm(request):
    return request.param


# -- acceptance bookkeeping --------------------------------------------------

_CRITERIA: dict[int, list[tuple[bool, str]]] = {}


@pytest.fixture
def criterion():
    def record(number: int, ok: bool, detail: str = "") -> None:
        _CRITERIA.setdefault(number, []).append((ok, detail))
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        cases = _CRITERIA[n]
        bad = [d for ok, d in cases if not ok]
        verdict = "FAIL" if bad else "PASS"
        detail = bad[0] if bad else (cases[0][1] if len(cases) == 1 else "")
        terminalreporter.write_line(
            f"criterion {n}: {verdict}  ({len(cases) - len(bad)}/{len(cases)} cases pass) {detail}")
