"""Point files, random generation, JSON reports, SVG figures and the command line."""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import random
import sys
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .disjoint_pentagons import (
    DisjointPair,
    Method,
    SeparablePartition,
    Separator,
    StripPlan,
    WitnessReport,
    check_pair,
    check_partition,
    find_two_disjoint_5holes,
    separable_partition,
    verify_witness,
    witness_5n_47,
    witness_doubling,
)
from .errors import (
    BudgetExceeded,
    CollinearTriple,
    ContractViolation,
    CoordinateOverflow,
    DuplicatePoint,
    InvalidInput,
    IoError,
    ParseError,
    PreconditionViolated,
    Unsatisfiable,
)
from .geom_core import (
    C_MAX,
    L333,
    L351,
    ConvexPolygon,
    Point,
    PointSet,
    _direction_key,
    convex_layers,
    hull_vertices,
    validate_general_position,
)
from .holes import (
    Hole,
    NinePointClassification,
    _first_hole,
    classify_9points,
    enumerate_k_holes,
    find_5hole,
    is_empty_convex,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_NONE, EXIT_INVALID, EXIT_CONTRACT = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# points files


def parse_points(text: str) -> PointSet:
    """Parse ``x y`` lines ('#' comments and blank lines skipped) into a validated set.

    Errors carry 1-based source line numbers.
    """
    pts: list[Point] = []
    lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two integers, got {len(parts)} fields")
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"not an integer pair: {s!r}") from None
        pts.append(Point(x, y))
        lines.append(lineno)
    try:
        return validate_general_position(pts)
    except CollinearTriple as e:
        raise CollinearTriple(e.i, e.j, e.k, (lines[e.i], lines[e.j], lines[e.k])) from None
    except DuplicatePoint as e:
        raise DuplicatePoint(e.i, e.j, (lines[e.i], lines[e.j])) from None
    except CoordinateOverflow as e:
        raise CoordinateOverflow(e.index, lines[e.index]) from None


def emit_points(S: Iterable[Sequence[int]], header: str | None = None) -> str:
    out = []
    if header:
        out += [f"# {line}" for line in header.splitlines()]
    out += [f"{p[0]} {p[1]}" for p in S]
    return "\n".join(out) + "\n"


def read_points(path: str | None) -> PointSet:
    if path in (None, "-"):
        return parse_points(sys.stdin.read())
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return parse_points(text)


def random_general_position(n: int, seed: int, coord_max: int = C_MAX) -> PointSet:
    """n points drawn uniformly from [-coord_max, coord_max]^2 with no three collinear.

    Candidates that repeat a point or complete a collinear triple are redrawn.
    """
    if n < 1:
        raise PreconditionViolated("n must be positive")
    if coord_max > C_MAX:
        raise CoordinateOverflow(0)
    side = 2 * coord_max + 1
    # a line of the grid holds at most two points, so 2*side bounds n
    if coord_max < 3 or n > 2 * side:
        raise Unsatisfiable(f"cannot place {n} points in general position on a grid of half-width {coord_max}")
    rng = random.Random(seed)
    attempts, cap = 0, 1000 * n + 100000
    while True:
        # greedy placement can paint itself into a corner on small grids,
        # so a long run of rejected draws restarts from scratch
        pts: list[Point] = []
        taken: set[Point] = set()
        dirs: list[set] = []
        misses = 0
        while len(pts) < n and misses < 200 + 20 * n:
            attempts += 1
            if attempts > cap:
                raise Unsatisfiable(f"gave up after {cap} draws")
            p = Point(rng.randint(-coord_max, coord_max), rng.randint(-coord_max, coord_max))
            keys = [_direction_key(a, p) for a in pts] if p not in taken else None
            if keys is None or any(k in d for k, d in zip(keys, dirs)):
                misses += 1
                continue
            misses = 0
            for k, d in zip(keys, dirs):
                d.add(k)
            dirs.append(set(keys))
            pts.append(p)
            taken.add(p)
        if len(pts) == n:
            break
    return validate_general_position(pts)


# ---------------------------------------------------------------------------
# stored 9-point sets without a 5-hole

NOHOLE_FILES = {str(L333): "nohole_L333.txt", str(L351): "nohole_L351.txt"}

_FRAMES = (
    ((-100000, -60000), (100000, -60000), (3, 110000)),
    ((-100000, -100000), (100000, -99990), (99000, 100000), (-100100, 99000)),
)


def search_holefree_nine(signature: str, seed: int, max_trials: int = 10**6) -> PointSet:
    """Seeded search for a 9-point set with the given layer signature and no 5-hole.

    Points are scattered in a small window inside a large triangle or
    quadrilateral; such sets avoid 5-holes far more often than uniform ones.
    """
    rng = random.Random(seed)
    for _ in range(max_trials):
        frame = _FRAMES[rng.randrange(2)]
        c = rng.choice((5, 50, 1000))
        pts = list(frame) + [(rng.randint(-c, c), rng.randint(-c, c)) for _ in range(9 - len(frame))]
        try:
            S = validate_general_position(pts)
        except InvalidInput:
            continue
        if str(convex_layers(S.points)[1]) == signature and _first_hole(S.points) is None:
            return S
    raise Unsatisfiable(f"no {signature} set without a 5-hole in {max_trials} trials")


def certification_log(S: PointSet) -> str:
    """Exhaustive record that S has no 5-hole: every 5-subset is listed as non-convex or non-empty."""
    convex = nonempty = 0
    total = 0
    for sub in itertools.combinations(S.points, 5):
        total += 1
        if len(hull_vertices(sub)) == 5:
            convex += 1
            if not is_empty_convex(sub, S):
                nonempty += 1
    lines = [
        f"digest {S.digest}",
        f"layers {convex_layers(S.points)[1]}",
        f"five_subsets {total}",
        f"convex_position {convex}",
        f"convex_but_not_empty {nonempty}",
        f"five_holes {convex - nonempty}",
    ]
    return "\n".join(lines) + "\n"


def load_stored_nohole(signature: str) -> PointSet:
    name = NOHOLE_FILES[str(signature)]
    text = resources.files("pentahole").joinpath("data", name).read_text(encoding="utf-8")
    return parse_points(text)


# ---------------------------------------------------------------------------
# report documents


def _pt(S: PointSet, p: Sequence[int]) -> dict:
    p = Point(*p)
    return {"index": S.index(p), "x": p.x, "y": p.y}


def _hole_json(S: PointSet, h: Hole) -> dict:
    return {"k": h.k, "vertices": [_pt(S, v) for v in h.vertices]}


def payload_of(S: PointSet, obj) -> dict:
    if isinstance(obj, Hole):
        return {"type": "hole", **_hole_json(S, obj)}
    if isinstance(obj, DisjointPair):
        sep = obj.separator
        return {
            "type": "pair",
            "a": _hole_json(S, obj.a),
            "b": _hole_json(S, obj.b),
            "separator": {"p": _pt(S, sep.p), "q": _pt(S, sep.q), "p_side": sep.p_side, "q_side": sep.q_side},
        }
    if isinstance(obj, SeparablePartition):
        return {
            "type": "partition",
            "m": obj.m,
            "s1": [_pt(S, p) for p in obj.s1],
            "s2": [_pt(S, p) for p in obj.s2],
            "s3": [_pt(S, p) for p in obj.s3],
            "hole": _hole_json(S, obj.hole),
        }
    if isinstance(obj, WitnessReport):
        return {
            "type": "witness",
            "n": obj.n,
            "method": obj.method.value,
            "bound_claimed": obj.bound_claimed,
            "holes": [_hole_json(S, h) for h in obj.holes],
            "strip_plan": [{"start": s.start, "stop": s.stop, "method": s.method} for s in obj.strip_plan],
            "sweep": list(obj.sweep) if obj.sweep else None,
            "verified": obj.verified,
        }
    if isinstance(obj, NinePointClassification):
        return {
            "type": "classify9",
            "verdict": "FiveHole" if obj.has_five_hole else "NoFiveHole",
            "signature": str(obj.signature),
            "hole": _hole_json(S, obj.hole) if obj.hole else None,
        }
    raise TypeError(f"no report encoding for {type(obj).__name__}")


def report_document(command: str, S: PointSet, payload: dict, verified: bool, seed: int | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "seed": seed,
        "input_digest": S.digest,
        "payload": payload,
        "verified": bool(verified),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _walk_points(node):
    if isinstance(node, dict):
        if set(node) >= {"index", "x", "y"}:
            yield node
        else:
            for v in node.values():
                yield from _walk_points(v)
    elif isinstance(node, list):
        for v in node:
            yield from _walk_points(v)


def dual_representation_errors(doc: dict, S: PointSet) -> list[str]:
    """Every payload point must carry an index and coordinates that agree in S."""
    errs = []
    for node in _walk_points(doc.get("payload")):
        i = node["index"]
        if not (isinstance(i, int) and 0 <= i < len(S)) or tuple(S[i]) != (node["x"], node["y"]):
            errs.append(f"index_coordinate_mismatch: index {i} vs ({node['x']}, {node['y']})")
    return errs


def _pts(nodes) -> tuple[Point, ...]:
    return tuple(Point(n["x"], n["y"]) for n in nodes)


def _hole_from(S: PointSet, node: dict) -> Hole:
    return Hole(ConvexPolygon(_pts(node["vertices"])), S.digest)


def verify_document(doc: dict, S: PointSet) -> list[str]:
    """Re-check a report against S; returns the list of failure reasons (empty if valid)."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        return [f"schema_version: {doc.get('schema_version')!r}"]
    if doc.get("input_digest") != S.digest:
        return ["input_digest_mismatch"]
    reasons = dual_representation_errors(doc, S)
    if reasons:
        return reasons
    pl = doc["payload"]
    kind = pl.get("type")
    try:
        if kind == "hole":
            vs = _pts(pl["vertices"])
            if len(vs) != 5 or not is_empty_convex(vs, S):
                reasons.append("not_a_5hole")
        elif kind == "pair":
            sep = pl["separator"]
            pair = DisjointPair(
                _hole_from(S, pl["a"]),
                _hole_from(S, pl["b"]),
                Separator(_pts([sep["p"]])[0], _pts([sep["q"]])[0], sep["p_side"], sep["q_side"]),
            )
            reasons += check_pair(pair, S)
        elif kind == "partition":
            s2 = S.subset(_pts(pl["s2"]))
            part = SeparablePartition(
                S.subset(_pts(pl["s1"])), s2, S.subset(_pts(pl["s3"])), _hole_from(s2, pl["hole"]), pl["m"]
            )
            reasons += check_partition(part, S)
        elif kind == "witness":
            rep = WitnessReport(
                pl["n"],
                tuple(_hole_from(S, h) for h in pl["holes"]),
                pl["bound_claimed"],
                Method(pl["method"]),
                pl["verified"],
                tuple(StripPlan(**s) for s in pl["strip_plan"]),
                tuple(pl["sweep"]) if pl["sweep"] else None,
            )
            reasons += verify_witness(rep, S).reasons
        elif kind == "classify9":
            if len(S) != 9:
                reasons.append("classify9_needs_9_points")
            elif pl["hole"] is not None:
                vs = _pts(pl["hole"]["vertices"])
                if len(vs) != 5 or not is_empty_convex(vs, S):
                    reasons.append("not_a_5hole")
            elif _first_hole(S.points) is not None:
                reasons.append("five_hole_exists")
            if str(convex_layers(S.points)[1]) != pl["signature"]:
                reasons.append("signature_mismatch")
        else:
            reasons.append(f"unknown_payload_type: {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        reasons.append(f"malformed_payload: {exc}")
    if not reasons and doc.get("verified") is not True:
        reasons.append("document_not_marked_verified")
    return reasons


# ---------------------------------------------------------------------------
# SVG

_FILLS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


def render_svg(S: Iterable[Sequence[int]], overlays: Sequence = (), path: str | Path | None = None) -> str:
    """Points as dots, polygons and holes as translucent fills, separators as dashed lines.

    The y axis points up. Returns the SVG text and writes it to ``path`` if given.
    """
    pts = [Point(*p) for p in S]
    xs = [p.x for p in pts] or [0]
    ys = [-p.y for p in pts] or [0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    pad = span * 0.05
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
    r = span * 0.006

    def f(v: float) -> str:
        return f"{v:.3f}".rstrip("0").rstrip(".")

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{f(x0)} {f(y0)} {f(w)} {f(h)}" '
        'width="800" height="800" preserveAspectRatio="xMidYMid meet">',
        f'<rect x="{f(x0)}" y="{f(y0)}" width="{f(w)}" height="{f(h)}" fill="white"/>',
    ]
    items = []
    for ov in overlays:
        if isinstance(ov, DisjointPair):
            items += [ov.a, ov.b, ov.separator]
        else:
            items.append(ov)
    shade = 0
    for item in items:
        if isinstance(item, Hole):
            item = item.polygon
        if isinstance(item, ConvexPolygon):
            color = _FILLS[shade % len(_FILLS)]
            shade += 1
            coords = " ".join(f"{f(v.x)},{f(-v.y)}" for v in item.vertices)
            out.append(
                f'<polygon points="{coords}" fill="{color}" fill-opacity="0.35" '
                f'stroke="{color}" stroke-width="{f(r / 2)}"/>'
            )
        elif isinstance(item, Separator) or (len(item) == 2 and not isinstance(item[0], int)):
            p, q = (item.p, item.q) if isinstance(item, Separator) else item
            dx, dy = q[0] - p[0], q[1] - p[1]
            norm = max(abs(dx), abs(dy), 1)
            t = 4 * span / norm
            out.append(
                f'<line x1="{f(p[0] - t * dx)}" y1="{f(-(p[1] - t * dy))}" '
                f'x2="{f(p[0] + t * dx)}" y2="{f(-(p[1] + t * dy))}" '
                f'stroke="black" stroke-width="{f(r / 2)}" stroke-dasharray="{f(3 * r)},{f(2 * r)}"/>'
            )
        else:
            raise TypeError(f"cannot draw {type(item).__name__}")
    for p in pts:
        out.append(f'<circle cx="{p.x}" cy="{-p.y}" r="{f(r)}" fill="black"/>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc}") from exc
    return text


# ---------------------------------------------------------------------------
# command line


def _fmt_pts(pts) -> str:
    return " ".join(f"({p[0]},{p[1]})" for p in pts)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inp", default=None, help="points file (default: stdin)")
    common.add_argument("--out", default=None, help="write the result here instead of stdout")
    common.add_argument("--svg", default=None, help="also render an SVG figure to this path")
    common.add_argument("--json", action="store_true", help="emit a JSON report document")

    ap = argparse.ArgumentParser(prog="pentahole", description="Empty convex pentagons in planar point sets.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="random point set in general position")
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--coord-max", type=int, default=C_MAX)

    sub.add_parser("hull", parents=[common], help="convex hull vertices")
    sub.add_parser("layers", parents=[common], help="convex layers and their signature")
    sub.add_parser("hole", parents=[common], help="find one 5-hole")
    hk = sub.add_parser("holes", parents=[common], help="enumerate all k-holes")
    hk.add_argument("-k", type=int, default=5)
    sub.add_parser("pair", parents=[common], help="two disjoint 5-holes")
    sub.add_parser("classify9", parents=[common], help="5-hole or layer class of a 9-point set")
    pm = sub.add_parser("partition", parents=[common], help="m | 9 | m separable partition")
    pm.add_argument("-m", type=int, required=True)
    w = sub.add_parser("witness", parents=[common], help="certified family of disjoint 5-holes")
    w.add_argument("--method", choices=("strip", "doubling"), default="strip")
    v = sub.add_parser("verify", parents=[common], help="re-check a JSON report against a points file")
    v.add_argument("--report", required=True)
    return ap


class _Result:
    def __init__(self, text: str, payload: dict | None, verified: bool, code: int = EXIT_OK, overlays=()):
        self.text, self.payload, self.verified, self.code, self.overlays = text, payload, verified, code, overlays


def _run(args, S: PointSet) -> _Result:
    cmd = args.command
    if cmd == "hull":
        hv = hull_vertices(S.points)
        pl = {"type": "hull", "vertices": [_pt(S, p) for p in hv]}
        ov = (ConvexPolygon(tuple(hv)),) if len(hv) >= 3 else ()
        return _Result(f"hull {len(hv)}: {_fmt_pts(hv)}", pl, True, overlays=ov)
    if cmd == "layers":
        layers, sig = convex_layers(S.points)
        pl = {"type": "layers", "signature": str(sig), "layers": [[_pt(S, p) for p in L] for L in layers]}
        text = "\n".join([str(sig)] + [_fmt_pts(L) for L in layers])
        ov = tuple(ConvexPolygon(tuple(L)) for L in layers if len(L) >= 3)
        return _Result(text, pl, True, overlays=ov)
    if cmd == "hole":
        h = find_5hole(S)
        if h is None:
            return _Result("none", {"type": "hole", "k": 5, "vertices": None}, True, EXIT_NONE)
        return _Result(f"5-hole: {_fmt_pts(h.vertices)}", payload_of(S, h), True, overlays=(h,))
    if cmd == "holes":
        hs = enumerate_k_holes(S, args.k)
        pl = {"type": "holes", "k": args.k, "count": len(hs), "holes": [_hole_json(S, h) for h in hs]}
        text = "\n".join([f"{len(hs)} {args.k}-holes"] + [_fmt_pts(h.vertices) for h in hs])
        return _Result(text, pl, True, EXIT_OK if hs else EXIT_NONE, overlays=tuple(hs))
    if cmd == "pair":
        pair = find_two_disjoint_5holes(S)
        if pair is None:
            return _Result("none", {"type": "pair", "a": None, "b": None, "separator": None}, True, EXIT_NONE)
        text = f"a: {_fmt_pts(pair.a.vertices)}\nb: {_fmt_pts(pair.b.vertices)}"
        return _Result(text, payload_of(S, pair), not check_pair(pair, S), overlays=(pair,))
    if cmd == "classify9":
        c = classify_9points(S)
        text = f"FiveHole: {_fmt_pts(c.hole.vertices)}" if c.hole else f"NoFiveHole({c.signature})"
        return _Result(text, payload_of(S, c), True, overlays=(c.hole,) if c.hole else ())
    if cmd == "partition":
        part = separable_partition(S, args.m)
        text = "\n".join(
            [f"s1: {_fmt_pts(part.s1)}", f"s2: {_fmt_pts(part.s2)}", f"s3: {_fmt_pts(part.s3)}",
             f"hole: {_fmt_pts(part.hole.vertices)}"]
        )
        ov = tuple(ConvexPolygon(tuple(hull_vertices(s))) for s in (part.s1, part.s2, part.s3) if len(s) >= 3)
        return _Result(text, payload_of(S, part), not check_partition(part, S), overlays=ov + (part.hole,))
    if cmd == "witness":
        rep = witness_doubling(S) if args.method == "doubling" else witness_5n_47(S)
        lines = [f"{len(rep.holes)} disjoint 5-holes (bound {rep.bound_claimed}, {rep.method.value})"]
        lines += [_fmt_pts(h.vertices) for h in rep.holes]
        return _Result("\n".join(lines), payload_of(S, rep), rep.verified, overlays=rep.holes)
    if cmd == "verify":
        try:
            doc = json.loads(Path(args.report).read_text(encoding="utf-8"))
        except OSError as exc:
            raise IoError(f"cannot read {args.report}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, f"report is not valid JSON: {exc.msg}") from None
        reasons = verify_document(doc, S)
        pl = {"type": "verification", "ok": not reasons, "reasons": reasons}
        text = "ok" if not reasons else "FAILED\n" + "\n".join(reasons)
        return _Result(text, pl, not reasons, EXIT_OK if not reasons else EXIT_NONE)
    raise AssertionError(cmd)


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def cli_main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "gen":
            S = random_general_position(args.n, args.seed, args.coord_max)
            if args.json:
                pl = {"type": "points", "points": [_pt(S, p) for p in S]}
                _write(args.out, dumps(report_document("gen", S, pl, True, args.seed)))
            else:
                _write(args.out, emit_points(S))
            if args.svg:
                render_svg(S, (), args.svg)
            return EXIT_OK
        S = read_points(args.inp)
        res = _run(args, S)
        if args.svg:
            render_svg(S, res.overlays, args.svg)
        if args.json:
            _write(args.out, dumps(report_document(args.command, S, res.payload, res.verified)))
        else:
            _write(args.out, res.text + "\n")
        return res.code
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (InvalidInput, IoError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(cli_main())
