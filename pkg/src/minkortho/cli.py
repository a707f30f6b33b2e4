"""Command-line entry point: ``minkortho construct|verify|figure``.

Exit codes: 0 success, 1 a theorem failed, 2 bad input or flags,
3 circumcenter solver or scene generation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .construct import build_system, circumcenters
from .errors import GeometryError, NoWitnessError, UnknownTheoremError
from .harness import THEOREM_IDS, builtin_norm_pool, run_suite
from .serialize import construction_to_json, dumps, norm_from_json, reports_dumps, scene_from_json
from .svg import LAYERS, render_svg

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise _InputError(f"cannot read {path}: {exc}") from None


def _system_from_file(path: str):
    norm, tri, p4 = scene_from_json(_load_json(path))
    if p4 is None:
        p4 = circumcenters(norm, tri)[0][0]
    return build_system(norm, tri, p4)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_construct(args) -> int:
    system = _system_from_file(args.scene)
    _write(args.out, dumps(construction_to_json(system)) + "\n")
    return EXIT_OK


def _parse_ids(spec: str):
    if spec.strip().lower() == "all":
        return list(THEOREM_IDS)
    ids = [s.strip() for s in spec.split(",") if s.strip()]
    if not ids:
        raise _InputError("empty --theorems list")
    for tid in ids:
        if tid not in THEOREM_IDS:
            raise UnknownTheoremError(f"unknown theorem id {tid!r}")
    return ids


def _parse_norms(spec: str):
    if spec == "builtin":
        return builtin_norm_pool()
    data = _load_json(spec)
    if not isinstance(data, list) or not data:
        raise _InputError("--norms file must hold a non-empty JSON array of norms")
    return [norm_from_json(n) for n in data]


def cmd_verify(args) -> int:
    ids = _parse_ids(args.theorems)
    pool = _parse_norms(args.norms)
    if args.trials < 1:
        raise _InputError("--trials must be >= 1")
    reports = run_suite(ids, args.trials, pool, args.seed, tol=args.tol, workers=args.workers)
    _write(args.out, reports_dumps(reports) + "\n")
    if any(r.failures for r in reports):
        return EXIT_FAIL
    if any("generation_failed" in r.inconclusive_reasons for r in reports):
        return EXIT_SOLVER
    return EXIT_OK


def cmd_figure(args) -> int:
    layers = [s.strip() for s in args.show.split(",") if s.strip()]
    if layers == ["all"]:
        layers = list(LAYERS)
    bad = [l for l in layers if l not in LAYERS]
    if bad or not layers:
        raise _InputError(f"unknown layers {bad}; choose from {', '.join(LAYERS)}")
    system = _system_from_file(args.scene)
    _write(args.out, render_svg(system, layers))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minkortho", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="construction bundle of a scene, as JSON")
    p.add_argument("scene", help="scene JSON file, or - for stdin")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run the randomized theorem suite")
    p.add_argument("--theorems", default="all", help="comma-separated ids or 'all'")
    p.add_argument("--trials", type=int, default=100, help="trials per (theorem, norm)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--norms", default="builtin", help="'builtin' or a JSON file with a list of norms")
    p.add_argument("--out", default=None, help="report path (default stdout)")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="SVG figure of a scene")
    p.add_argument("scene", help="scene JSON file, or - for stdin")
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--show", default="all", help=f"comma-separated layers from {', '.join(LAYERS)}")
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoWitnessError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except GeometryError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _InputError as exc:
        print(f"error [INVALID_INPUT]: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
