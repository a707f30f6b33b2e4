import math

import numpy as np
import pytest

from minkortho import (
    THEOREM_IDS,
    GenerationFailedError,
    NoWitnessError,
    Point2,
    Scene,
    Triangle,
    UnknownTheoremError,
    VerificationReport,
    random_scene,
    run_suite,
    verify_theorem,
)
from minkortho.harness import Outcome, isosceles_gaps, sub_seed, system_of
from minkortho.serialize import reports_dumps

from conftest import EUCLID, L1, LINF, POOL
from oracles import OracleNorm, confirm_witness

S3 = math.sqrt(3) / 2
RIGHT = Scene(EUCLID, Triangle.of([(1, 0), (-1, 0), (0, 1)]), Point2(0, 0), 0)
EQUI = Scene(EUCLID, Triangle.of([(1, 0), (-0.5, S3), (-0.5, -S3)]), Point2(0, 0), 0)
CORNER = Scene(LINF, Triangle.of([(0, 0), (2, 0), (0, 2)]), Point2(1, 1), 0)


def test_scene_deterministic():
    assert random_scene(EUCLID, 42) == random_scene(EUCLID, 42)
    assert random_scene(EUCLID, 42) != random_scene(EUCLID, 43)


def test_scene_constraints():
    for seed in range(30):
        s = random_scene(EUCLID, seed)
        assert 1.0 <= s.tri.diameter <= 4.0
        assert s.tri.min_angle_deg() >= 5.0
        assert all(abs(c) <= 2 for v in s.tri.vertices for c in v)


def test_linf_seed7_residual_confirmed():
    s = random_scene(LINF, 7)
    pts = np.array([v.as_tuple() for v in s.tri.vertices])
    r_w, inside, _ = confirm_witness(OracleNorm.of(LINF), pts, s.p4.as_tuple(), s.tri.diameter)
    assert r_w <= 1e-7 * s.tri.diameter and inside


def test_generation_failed():
    # no triangle has all angles above 60 degrees
    with pytest.raises(GenerationFailedError):
        random_scene(EUCLID, 1, min_angle_deg=61, max_rejections=5)


def test_t21_right_triangle():
    out = verify_theorem("T2.1", RIGHT)
    assert out.status == "pass" and out.residual < 1e-14


def test_t32b_equilateral():
    gaps = isosceles_gaps(system_of(EQUI))
    for gap, size in gaps:
        assert gap <= 1e-15 * size
    assert verify_theorem("T3.2b", EQUI).status == "pass"


def test_t34_axis_aligned_linf_is_inconclusive():
    # normalized, the side x1x2 lies on y = -1, which holds an edge of the square
    out = verify_theorem("T3.4", CORNER)
    assert out.status == "inconclusive" and out.reason == "degenerate intersection"


@pytest.mark.parametrize("scene", [RIGHT, EQUI] + [random_scene(EUCLID, s) for s in range(3)],
                         ids=["right", "equilateral", "r0", "r1", "r2"])
def test_t34_only_first_clause_of_item2_fails(scene):
    # the chordal relation between [m_i,-m_j] and [h,u_k] does not hold; the
    # segment [h,u_k] is parallel to [m_i,-m_j] and everything else holds
    out = verify_theorem("T3.4", scene)
    bad = set(out.reason.split(",")) if out.reason else set()
    assert all(n.startswith("item2.a") for n in bad)
    for name, v in out.details.items():
        if name.startswith(("item1.", "item2.seg", "item2.b", "frame.", "scene.")):
            assert v <= 1e-8, name


def test_unknown_theorem():
    with pytest.raises(UnknownTheoremError) as err:
        verify_theorem("T9.9", RIGHT)
    assert err.value.code == "UNKNOWN_THEOREM_ID"
    with pytest.raises(UnknownTheoremError):
        run_suite(["T9.9"], 1, [EUCLID], 1)


def test_run_suite_bookkeeping():
    reports = run_suite(["T2.1"], 1, [EUCLID], 5)
    assert len(reports) == 1
    r = reports[0]
    assert (r.theorem_id, r.trials, r.passes, r.seed) == ("T2.1", 1, 1, 5)
    assert r.consistent


def test_run_suite_shape_and_consistency():
    reports = run_suite(["T2.1", "T3.2b"], 3, POOL, 9)
    assert [(r.theorem_id, str(r.norm)) for r in reports] == [
        (t, str(n)) for t in ("T2.1", "T3.2b") for n in POOL]
    for r in reports:
        assert r.consistent and r.trials == 3 and not r.failures


def test_run_suite_deterministic_across_workers():
    a = reports_dumps(run_suite(["C2.1", "L3.4"], 3, POOL[:3], 4))
    b = reports_dumps(run_suite(["C2.1", "L3.4"], 3, POOL[:3], 4))
    c = reports_dumps(run_suite(["C2.1", "L3.4"], 3, POOL[:3], 4, workers=2))
    assert a == b == c


def test_sub_seeds_distinct():
    seeds = {sub_seed(1, t, n, i) for t in THEOREM_IDS for n in POOL for i in range(10)}
    assert len(seeds) == len(THEOREM_IDS) * len(POOL) * 10
    assert all(0 <= s < 2**63 for s in seeds)


def test_report_record():
    r = VerificationReport("T2.1", EUCLID)
    r.record(RIGHT, Outcome("pass", 1e-16))
    r.record(RIGHT, Outcome("fail", 0.3))
    r.record(None, Outcome("inconclusive", reason="no_witness"))
    assert (r.trials, r.passes, r.inconclusive, len(r.failures)) == (3, 1, 1, 1)
    assert r.max_residual == 0.3 and r.inconclusive_reasons == {"no_witness": 1}
    assert r.consistent


def test_strictly_convex_never_inconclusive():
    norms = [n for n in POOL if n.strictly_convex]
    reports = run_suite(["T3.4", "L3.3", "C3.3"], 5, norms, 3)
    for r in reports:
        assert set(r.inconclusive_reasons) <= {"no_witness"}
        assert r.inconclusive == 0


@pytest.mark.parametrize("tid", [t for t in THEOREM_IDS if t != "T3.4"])
def test_each_theorem_holds_on_a_few_scenes(tid):
    for norm in POOL:
        for seed in range(4):
            try:
                scene = random_scene(norm, 1000 + seed, solve=tid != "L2.1")
            except NoWitnessError:
                continue
            out = verify_theorem(tid, scene)
            assert out.status in ("pass", "inconclusive"), (tid, str(norm), seed, out.reason)


@pytest.mark.parametrize("tid", [t for t in THEOREM_IDS if t != "L2.1"])
def test_each_verifier_sees_x4(tid):
    shift = Point2(math.cos(0.7), math.sin(0.7)) * 0.2
    hits = 0
    for norm in (EUCLID, L1):
        for seed in range(3):
            try:
                scene = random_scene(norm, 2000 + seed)
            except NoWitnessError:
                continue
            hits += verify_theorem(tid, scene, x4_shift=shift).status == "fail"
    assert hits >= 1
