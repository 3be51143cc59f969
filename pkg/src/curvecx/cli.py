"""Command line front end: ``curvecx <command> ...``.

Exit codes: 0 success, 2 unreadable input, 3 invalid data, 4 violated
precondition, 5 censored or unreachable result.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import __version__
from .builder import (build_surface,
                      corollary_survey, load_path, minimal_genus_search)
from .errors import (CurveComplexError, EssentialnessError, InvalidNormalCoordinatesError,
                     InvalidTriangulationError, NonSimpleStepError, PreconditionError,
                     UnreachableError)
from .hc import ComplexSlice, hc_distance
from .homology import HomologyClass, homology_class
from .normal import (NormalMulticurve, algebraic_intersection, canonicalize,
                     geometric_intersection)
from .triangulation import Triangulation, standard_triangulation

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_PRECONDITION, EXIT_CENSORED = 0, 2, 3, 4, 5


class ParseError(Exception):
    pass


@dataclass
class RunConfig:
    genus: int
    alpha: Optional[HomologyClass]
    weight_bound: int
    max_len: int
    seed: int
    fmt: str
    out: Optional[str]
    marked: bool = False


def parse_alpha(text: str, genus: int) -> HomologyClass:
    """``1,0,0,0`` or a signed sum of basis names such as ``a1`` or ``a1-b2``."""
    text = text.replace(" ", "")
    if re.fullmatch(r"-?\d+(,-?\d+)*", text):
        coords = [int(x) for x in text.split(",")]
        if len(coords) != 2 * genus:
            raise ParseError(f"alpha needs {2 * genus} coordinates, got {len(coords)}")
        return HomologyClass(tuple(coords))
    terms = re.findall(r"([+-]?)(\d*)([ab])(\d+)", text)
    if not terms or "".join("".join(t) for t in terms) != text:
        raise ParseError(f"cannot read alpha {text!r}")
    c = HomologyClass.zero(genus)
    for sign, mult, letter, k in terms:
        k = int(k)
        if not 1 <= k <= genus:
            raise ParseError(f"basis index {k} out of range for genus {genus}")
        coef = (int(mult) if mult else 1) * (-1 if sign == "-" else 1)
        c = c + coef * HomologyClass.basis(genus, letter, k)
    return c


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _tri_for(data: dict, genus: Optional[int]) -> Triangulation:
    g = data.get("genus", genus)
    if g is None:
        raise ParseError("genus missing (use --genus)")
    try:
        return standard_triangulation(int(g))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad genus {g!r}") from exc


def read_multicurve(path: str, genus: Optional[int]) -> NormalMulticurve:
    data = _read_json(path)
    if not isinstance(data, dict) or "weights" not in data:
        raise ParseError(f"{path}: expected a multicurve object with 'weights'")
    tri = _tri_for(data, genus)
    orient = data.get("orientations")
    if orient is None:
        raise ParseError(f"{path}: 'orientations' missing")
    return canonicalize(tri, data["weights"], orient)


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    body = json.dumps(payload, indent=2, sort_keys=True) + "\n" if cfg.fmt == "json" else text.rstrip("\n") + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


# -- commands ----------------------------------------------------------------


def cmd_validate(args, cfg: RunConfig) -> int:
    data = _read_json(args.input)
    errors: list[dict] = []
    kind = "unknown"
    if isinstance(data, dict) and "faces" in data:
        kind = "triangulation"
        try:
            Triangulation.from_json(data)
        except InvalidTriangulationError as exc:
            errors.append({"kind": "triangulation", "message": str(exc)})
    elif isinstance(data, dict) and "weights" in data:
        kind = "multicurve"
        try:
            tri = _tri_for(data, cfg.genus)
            canonicalize(tri, data["weights"], data.get("orientations", []))
        except InvalidNormalCoordinatesError as exc:
            errors.append({"kind": "normal-coordinates", "message": str(exc)})
        except EssentialnessError as exc:
            errors.append({"kind": "essentialness", "message": str(exc)})
        except InvalidTriangulationError as exc:
            errors.append({"kind": "triangulation", "message": str(exc)})
    elif isinstance(data, dict) and "path" in data:
        kind = "path"
        try:
            path, choices = load_path(data)
            if len(choices.pieces) != len(path):
                errors.append({"kind": "path", "message": "one choice per step required"})
        except (CurveComplexError, ValueError) as exc:
            errors.append({"kind": "path", "message": str(exc)})
    else:
        raise ParseError(f"{args.input}: not a triangulation, multicurve or path")
    ok = not errors
    text = f"{kind}: valid" if ok else f"{kind}: invalid\n" + "\n".join(
        f"  {e['kind']}: {e['message']}" for e in errors)
    _emit(cfg, {"schema": "curvecx/validate@1", "kind": kind, "valid": ok, "errors": errors}, text)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_homology(args, cfg: RunConfig) -> int:
    m = read_multicurve(args.input, cfg.genus)
    c = homology_class(m)
    _emit(cfg, {"schema": "curvecx/homology@1", "class": c.to_json()}, str(c))
    return EXIT_OK


def cmd_intersect(args, cfg: RunConfig) -> int:
    m1 = read_multicurve(args.first, cfg.genus)
    m2 = read_multicurve(args.second, cfg.genus)
    gi = geometric_intersection(m1, m2, marked=cfg.marked)
    ai = algebraic_intersection(m1, m2)
    _emit(cfg, {"schema": "curvecx/intersect@1", "geometric": gi, "algebraic": ai,
                "marked": cfg.marked},
          f"geometric {gi}\nalgebraic {ai}")
    return EXIT_OK


def _slice_for(cfg: RunConfig, alpha: HomologyClass) -> ComplexSlice:
    return ComplexSlice.build(standard_triangulation(cfg.genus), alpha, cfg.weight_bound, cfg.marked)


def cmd_distance(args, cfg: RunConfig) -> int:
    m1 = read_multicurve(args.first, cfg.genus)
    m2 = read_multicurve(args.second, cfg.genus)
    c1, c2 = homology_class(m1), homology_class(m2)
    if c1 != c2:
        raise PreconditionError(f"classes differ: {c1} and {c2}")
    if cfg.alpha is not None and cfg.alpha != c1:
        raise PreconditionError(f"multicurves have class {c1}, not --alpha {cfg.alpha}")
    bound = max(cfg.weight_bound, m1.total_weight, m2.total_weight)
    cfg = RunConfig(m1.tri.genus, c1, bound, cfg.max_len, cfg.seed, cfg.fmt, cfg.out, cfg.marked)
    sl = _slice_for(cfg, c1)
    try:
        res = hc_distance(sl, m1, m2)
    except UnreachableError as exc:
        _emit(cfg, {"schema": "curvecx/distance@1", "distance": None, "reachable": False,
                    "lower_bound_note": f"> diameter searched ({exc.searched} vertices)",
                    "weight_bound": bound, "vertices": len(sl)},
              f"unreachable within weight bound {bound} ({exc.searched} vertices searched)")
        return EXIT_CENSORED
    _emit(cfg, {"schema": "curvecx/distance@1", "distance": res.distance, "reachable": True,
                "witness": [m.to_json() for m in res.path], "weight_bound": bound,
                "vertices": len(sl)},
          f"distance {res.distance} (weight bound {bound}, {len(sl)} vertices)\n"
          + "\n".join(f"  {list(m.weights)} {list(m.orientations)}" for m in res.path))
    return EXIT_OK


def cmd_build(args, cfg: RunConfig) -> int:
    data = _read_json(args.input)
    if not isinstance(data, dict) or "path" not in data:
        raise ParseError(f"{args.input}: expected a path object with 'path'")
    try:
        path, choices = load_path(data)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    try:
        report = build_surface(path, choices, cfg.marked)
    except NonSimpleStepError as exc:
        _emit(cfg, {"schema": "curvecx/surface@1", "error": "non-simple step", "step": exc.step,
                    "weight_range": list(exc.weight_range)}, str(exc))
        return EXIT_PRECONDITION
    _emit(cfg, report.to_json(), report.render())
    return EXIT_OK


def cmd_survey(args, cfg: RunConfig) -> int:
    alpha = cfg.alpha or HomologyClass.basis(cfg.genus, "a", 1)
    sl = _slice_for(cfg, alpha)
    if len(sl) == 0:
        print(f"warning: no vertex of class {alpha} within weight bound {cfg.weight_bound}",
              file=sys.stderr)
    rep = corollary_survey(sl, cfg.max_len, args.pairs, cfg.seed, connected=not args.disconnected)
    csv_text = rep.csv()
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(csv_text)
    summary = rep.summary()
    summary["alpha"] = alpha.to_json()
    if cfg.fmt == "text" and not args.csv:
        # CSV on stdout (or --out), summary on stderr
        _emit(cfg, summary, csv_text)
        print("\n".join(f"# {k} {v}" for k, v in sorted(summary.items())), file=sys.stderr)
    else:
        _emit(cfg, summary, "\n".join(f"{k} {v}" for k, v in sorted(summary.items())))
    return EXIT_OK


def cmd_search(args, cfg: RunConfig) -> int:
    m1 = read_multicurve(args.first, cfg.genus)
    m2 = read_multicurve(args.second, cfg.genus)
    c = homology_class(m1)
    bound = max(cfg.weight_bound, m1.total_weight, m2.total_weight)
    cfg = RunConfig(m1.tri.genus, c, bound, cfg.max_len, cfg.seed, cfg.fmt, cfg.out, cfg.marked)
    sl = _slice_for(cfg, c)
    res = minimal_genus_search(m1, m2, sl, cfg.max_len, connected=not args.disconnected)
    text = (f"genus {res.genus} via a path of length {len(res.path)}" if res.found
            else f"no simple path of length <= {cfg.max_len} found")
    _emit(cfg, dict(res.to_json(), weight_bound=bound), text)
    return EXIT_OK if res.found else EXIT_CENSORED


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int, default=None, help="surface genus (default: from input, else 2)")
    common.add_argument("--alpha", default=None, help="homology class, e.g. a1 or 1,0,0,0")
    common.add_argument("--weight-bound", type=int, default=6, help="max total normal weight of slice vertices")
    common.add_argument("--max-len", type=int, default=3, help="max path length in the genus search")
    common.add_argument("--seed", type=int, default=0, help="seed for pair sampling")
    common.add_argument("--format", choices=("json", "text"), default="text", dest="fmt")
    common.add_argument("--out", default=None, help="write the result here instead of stdout")
    common.add_argument("--marked", action="store_true",
                        help="treat the triangulation vertex as a puncture")

    p = argparse.ArgumentParser(prog="curvecx", description="Homology curve complex toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a triangulation, multicurve or path file")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("homology", parents=[common], help="homology class of a multicurve")
    s.add_argument("input")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("intersect", parents=[common], help="geometric and algebraic intersection")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("distance", parents=[common], help="distance in the truncated complex")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("build", parents=[common], help="surface bookkeeping for a path")
    s.add_argument("input")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("survey", parents=[common], help="distance versus genus over vertex pairs")
    s.add_argument("--pairs", type=int, default=None, help="sample this many pairs (default: all)")
    s.add_argument("--csv", default=None, help="write the scatter CSV here")
    s.add_argument("--disconnected", action="store_true", help="allow disconnected surfaces")
    s.set_defaults(func=cmd_survey)

    s = sub.add_parser("search", parents=[common], help="minimal genus surface between two multicurves")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--disconnected", action="store_true", help="allow disconnected surfaces")
    s.set_defaults(func=cmd_search)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        genus = args.genus
        alpha = None
        if args.alpha is not None:
            alpha = parse_alpha(args.alpha, genus if genus is not None else 2)
        cfg = RunConfig(genus if genus is not None else 2, alpha, args.weight_bound,
                        args.max_len, args.seed, args.fmt, args.out, args.marked)
        if cfg.genus < 2:
            raise PreconditionError(f"genus must be at least 2, got {cfg.genus}")
        if cfg.weight_bound < 1 or cfg.max_len < 1:
            raise PreconditionError("--weight-bound and --max-len must be positive")
        if alpha is not None and alpha.is_zero():
            raise PreconditionError("alpha must be nonzero")
        if args.command in ("validate", "homology", "intersect", "distance", "build", "search"):
            cfg.genus = genus  # take the genus from the input when not given
        return args.func(args, cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidNormalCoordinatesError, EssentialnessError, InvalidTriangulationError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnreachableError as exc:
        print(f"censored: {exc}", file=sys.stderr)
        return EXIT_CENSORED
    except CurveComplexError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
