"""JSON encoding of norms, scenes, constructions and reports.

Floats are written with 17 significant digits so every double round-trips
exactly; output is compact and key order is fixed, which keeps reports
byte-identical between runs.
"""

from __future__ import annotations

import json
import math

from .affine import Point2, Triangle, as_point
from .construct import OrthoSystem, construction_bundle
from .errors import InvalidInputError
from .norms import NormSpec


def _num(x: float) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    out = "%.17g" % x
    return "0" if out == "-0" else out


def dumps(obj) -> str:
    """Compact JSON with 17-digit floats."""
    if obj is None or isinstance(obj, (bool, int, float)):
        return "null" if obj is None else _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Point2):
        return "[" + _num(obj.x) + "," + _num(obj.y) + "]"
    if isinstance(obj, dict):
        return "{" + ",".join(json.dumps(str(k)) + ":" + dumps(v) for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


# -- norms -------------------------------------------------------------------

def norm_to_json(norm: NormSpec) -> dict:
    if norm.kind == "euclidean":
        return {"kind": "euclidean"}
    if norm.kind == "lp":
        return {"kind": "lp", "p": "inf" if math.isinf(norm.p) else norm.p}
    return {"kind": "polygon", "vertices": [list(v) for v in norm.vertices]}


def norm_from_json(obj) -> NormSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidInputError("norm must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "euclidean":
        return NormSpec.euclidean()
    if kind == "lp":
        p = obj.get("p")
        if isinstance(p, str) and p.lower() in ("inf", "infinity"):
            return NormSpec.lp(math.inf)
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise InvalidInputError(f"bad L_p exponent {p!r}")
        return NormSpec.lp(p)
    if kind == "polygon":
        return NormSpec.polygon(_points(obj.get("vertices"), None))
    raise InvalidInputError(f"unknown norm kind {kind!r}")


def _point(v) -> Point2:
    if (not isinstance(v, (list, tuple)) or len(v) != 2
            or any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in v)):
        raise InvalidInputError(f"expected a point [x, y], got {v!r}")
    try:
        return as_point(v)
    except ValueError as exc:
        raise InvalidInputError(str(exc)) from None


def _points(vs, count: int | None) -> list[Point2]:
    if not isinstance(vs, list) or (count is not None and len(vs) != count):
        want = f"{count} points" if count else "a list of points"
        raise InvalidInputError(f"expected {want}")
    return [_point(v) for v in vs]


# -- scenes ------------------------------------------------------------------

def scene_from_json(obj):
    """(norm, triangle, p4 or None) from a scene object.

    Raises InvalidInputError or DegenerateTriangleError.
    """
    if not isinstance(obj, dict):
        raise InvalidInputError("scene must be a JSON object")
    for key in ("norm", "triangle"):
        if key not in obj:
            raise InvalidInputError(f"scene is missing {key!r}")
    norm = norm_from_json(obj["norm"])
    tri = Triangle(*_points(obj["triangle"], 3))
    p4 = obj.get("p4")
    return norm, tri, (None if p4 is None else _point(p4))


def scene_to_json(scene) -> dict:
    return {
        "norm": norm_to_json(scene.norm),
        "triangle": [list(v) for v in scene.tri.vertices],
        "p4": None if scene.p4 is None else list(scene.p4),
        "seed": scene.seed,
    }


def construction_to_json(sys: OrthoSystem) -> dict:
    b = construction_bundle(sys)
    return {
        "p4": sys.p4,
        "q": sys.q,
        "x4": sys.x4,
        "lambda": sys.lam,
        "medial": list(b.medial),
        "antitriangle": list(b.anti),
        "euler_points": list(b.euler_points),
        "feuerbach": {"center": b.feuerbach.center, "radius": b.feuerbach.radius},
        "barycenter": b.barycenter,
    }


def report_to_json(report) -> dict:
    return {
        "theorem_id": report.theorem_id,
        "norm": norm_to_json(report.norm),
        "trials": report.trials,
        "passes": report.passes,
        "inconclusive": report.inconclusive,
        "failures": [
            {"scene": None if scene is None else scene_to_json(scene), "residual": res}
            for scene, res in report.failures
        ],
        "max_residual": report.max_residual,
        "seed": report.seed,
        "rejections": report.rejections,
        "inconclusive_reasons": dict(sorted(report.inconclusive_reasons.items())),
    }


def reports_dumps(reports) -> str:
    return dumps([report_to_json(r) for r in reports])
