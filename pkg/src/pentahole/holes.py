"""Empty convex polygons (k-holes): exhaustive oracle and constructive finders.

The constructive finders follow small-set arguments: a convex hexagon
always yields a 5-hole, as does a pentagonal hull with at least two interior
points or a quadrilateral hull with at least five. Every hole they return is
re-checked against its host set before it leaves this module.
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BudgetExceeded,
    ContractViolation,
    NoConvexHexagonFound,
    PointNotInSet,
    PreconditionViolated,
    StructuredSearchFailed,
    SubsetNotInHost,
)
from .geom_core import (
    L333,
    L351,
    ConvexPolygon,
    LayerSignature,
    Point,
    PointSet,
    convex_layers,
    cross,
    hull_vertices,
    strictly_inside,
    validate_general_position,
)

log = logging.getLogger(__name__)

DEFAULT_ORACLE_BUDGET = 10**8
BUDGET_ENV = "PENTAHOLE_ORACLE_BUDGET"


@dataclass(frozen=True)
class Hole:
    polygon: ConvexPolygon
    host_hash: str

    @property
    def vertices(self) -> tuple[Point, ...]:
        return self.polygon.vertices

    @property
    def k(self) -> int:
        return len(self.polygon.vertices)


@dataclass(frozen=True)
class NinePointClassification:
    """Either ``hole`` is set (the set has a 5-hole) or ``signature`` explains why not."""

    hole: Hole | None
    signature: LayerSignature

    @property
    def has_five_hole(self) -> bool:
        return self.hole is not None


def as_point_set(S) -> PointSet:
    if isinstance(S, PointSet):
        return S
    return validate_general_position(S)


def oracle_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_ORACLE_BUDGET


# ---------------------------------------------------------------------------
# emptiness and the exhaustive oracle


def _is_empty_convex(sub: Sequence[Point], host: Iterable[Point]) -> bool:
    hv = hull_vertices(sub)
    if len(hv) != len(sub) or len(hv) < 3:
        return False
    members = set(sub)
    for p in host:
        if p not in members and strictly_inside(p, hv):
            return False
    return True


def is_empty_convex(subset: Iterable[Sequence[int]], S: PointSet) -> bool:
    sub = list(dict.fromkeys(Point(*p) for p in subset))
    if len(sub) < 3:
        raise ValueError("need at least 3 points")
    for p in sub:
        if p not in S:
            raise SubsetNotInHost(f"{p} is not a point of the host set")
    return _is_empty_convex(sub, S.points)


def _angular_sorted(p: Point, rest: Sequence[Point]) -> list[Point]:
    # every point of `rest` is lexicographically greater than p, so they all
    # lie in a half-plane around p and orientation alone orders them
    return sorted(rest, key=functools.cmp_to_key(lambda u, v: -1 if cross(p, u, v) > 0 else 1))


def _empty_fan_successors(p: Point, order: Sequence[Point]) -> list[list[int]]:
    """succ[i] = all j > i such that triangle (p, order[i], order[j]) is empty."""
    m = len(order)
    succ: list[list[int]] = []
    for i in range(m):
        ri = order[i]
        out = []
        best = None
        for j in range(i + 1, m):
            rj = order[j]
            if best is None or cross(ri, best, rj) > 0:
                out.append(j)
                best = rj
        succ.append(out)
    return succ


def _iter_k_holes(pts: Sequence[Point], k: int):
    """Yield every k-hole once, as a CCW vertex tuple starting at its lexicographic minimum."""
    pts = sorted(pts)
    n = len(pts)
    for a in range(n - k + 1):
        p = pts[a]
        order = _angular_sorted(p, pts[a + 1 :])
        succ = _empty_fan_successors(p, order)
        chain: list[int] = []

        def extend(depth: int):
            last = chain[-1]
            for j in succ[last]:
                if depth >= 2 and cross(order[chain[-2]], order[last], order[j]) <= 0:
                    continue
                chain.append(j)
                if depth + 1 == k - 1:
                    yield (p,) + tuple(order[c] for c in chain)
                else:
                    yield from extend(depth + 1)
                chain.pop()

        for i in range(len(order)):
            chain.append(i)
            if k == 2:
                yield (p, order[i])
            else:
                yield from extend(1)
            chain.pop()


def _check_budget(n: int, k: int, budget: int | None) -> None:
    cap = oracle_budget() if budget is None else budget
    if math.comb(n, k) > cap:
        raise BudgetExceeded(f"C({n},{k}) = {math.comb(n, k)} exceeds the oracle budget {cap}")


def enumerate_k_holes(S: PointSet, k: int, budget: int | None = None) -> list[Hole]:
    S = as_point_set(S)
    if k < 3 or k > len(S):
        raise PreconditionViolated(f"need 3 <= k <= |S|, got k={k}, |S|={len(S)}")
    _check_budget(len(S), k, budget)
    holes = [Hole(ConvexPolygon(vs), S.digest) for vs in _iter_k_holes(S.points, k)]
    holes.sort(key=lambda h: h.vertices)
    return holes


def _first_hole(pts: Sequence[Point], k: int = 5) -> tuple[Point, ...] | None:
    return next(_iter_k_holes(pts, k), None)


# ---------------------------------------------------------------------------
# constructive helpers; all operate on plain lists of points


def _pentagon(pts: Iterable[Point]) -> tuple[Point, ...] | None:
    hv = hull_vertices(pts)
    return tuple(hv) if len(hv) == 5 else None


def _hole_if_empty(pts: Sequence[Point], Z: Sequence[Point]) -> tuple[Point, ...] | None:
    if len(set(pts)) != 5:
        return None
    vs = _pentagon(pts)
    if vs is not None and _is_empty_convex(vs, Z):
        return vs
    return None


def _interior(Z: Sequence[Point], hull: Sequence[Point]) -> list[Point]:
    on = set(hull)
    return [p for p in Z if p not in on]


def _ccw_edges(cycle: Sequence[Point]) -> list[tuple[Point, Point]]:
    if len(cycle) == 2:
        return [(cycle[0], cycle[1]), (cycle[1], cycle[0])]
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def _hole_from_hexagon(hexagon: Sequence[Point], Z: Sequence[Point]) -> tuple[Point, ...]:
    """5-hole inside a convex hexagon whose vertices belong to Z.

    Each round either finds the hole or replaces the hexagon by one with
    strictly fewer points of Z inside it.
    """
    hexv = hull_vertices(hexagon)
    if len(hexv) != 6:
        raise PreconditionViolated("hexagon vertices are not in convex position")
    while True:
        inside = [p for p in Z if strictly_inside(p, hexv)]
        if not inside:
            return tuple(hexv[:5])
        if len(inside) == 1:
            x = inside[0]
            v = hexv[0]
            left = [h for h in hexv[1:] if cross(v, x, h) > 0]
            right = [h for h in hexv[1:] if cross(v, x, h) < 0]
            side = left if len(left) >= 3 else right
            return tuple(hull_vertices([v, x] + side[:3]))
        chords = _ccw_edges(hull_vertices(inside))
        best = None
        for a, b in chords:
            outer = [h for h in hexv if cross(a, b, h) < 0]
            if len(outer) >= 3:
                return tuple(hull_vertices([a, b] + outer[:3]))
            if best is None:
                best = (a, b)
        a, b = best
        inner = [h for h in hexv if cross(a, b, h) > 0]
        hexv = hull_vertices([a, b] + inner[:4])


def _three_interior_hole(H: Sequence[Point], ys: Sequence[Point], Z: Sequence[Point]) -> tuple[Point, ...]:
    """Pentagonal hull with exactly three interior points.

    The exterior of the interior triangle splits into three edge regions and
    three vertex regions; a 5-hole arises from two hull vertices in one edge
    region, or from three hull vertices beyond one edge line.
    """
    y1, y2, y3 = hull_vertices(ys)
    tri = ((y1, y2, y3), (y2, y3, y1), (y3, y1, y2))
    beyond = {h: tuple(cross(a, b, h) < 0 for a, b, _ in tri) for h in H}
    # edge regions R1, R3, R5: beyond exactly one edge
    for e, (a, b, c) in enumerate(tri):
        region = [h for h in H if beyond[h][e] and sum(beyond[h]) == 1]
        if len(region) >= 2:
            vs = _hole_if_empty([a, b, c] + region[:2], Z)
            if vs is not None:
                return vs
    # R6+R1+R2 and its rotations: the open side of an edge line
    for e, (a, b, _) in enumerate(tri):
        side = [h for h in H if beyond[h][e]]
        if len(side) >= 3:
            vs = _hole_if_empty([a, b] + side[:3], Z)
            if vs is not None:
                return vs
    raise StructuredSearchFailed("three-interior region count found no hole")


def _hole_pentagon_hull(Z: Sequence[Point]) -> tuple[Point, ...]:
    Z = list(Z)
    while True:
        H = hull_vertices(Z)
        if len(H) != 5:
            raise PreconditionViolated(f"hull has {len(H)} vertices, expected 5")
        inner = _interior(Z, H)
        if len(inner) < 2:
            raise PreconditionViolated("need at least two interior points")
        if len(inner) == 2:
            y1, y2 = inner
            left = [h for h in H if cross(y1, y2, h) > 0]
            right = [h for h in H if cross(y1, y2, h) < 0]
            side = left if len(left) >= 3 else right
            return tuple(hull_vertices([y1, y2] + side[:3]))
        if len(inner) == 3:
            return _three_interior_hole(H, inner, Z)
        x, y = _ccw_edges(hull_vertices(inner))[0]
        outer = [h for h in H if cross(x, y, h) < 0]
        if len(outer) >= 3:
            return tuple(hull_vertices([x, y] + outer[:3]))
        if len(outer) == 1:
            hexagon = hull_vertices([x, y] + [h for h in H if h not in outer])
            return _hole_from_hexagon(hexagon, Z)
        # two hull vertices beyond xy: u, v, w are the others, CCW from the y end
        start = next(i for i in range(5) if H[i - 1] in outer and H[i] not in outer)
        u, v, w = H[start], H[(start + 1) % 5], H[(start + 2) % 5]
        rest = [t for t in inner if t != x and t != y]
        near_y = [t for t in rest if cross(y, u, t) < 0]
        near_x = [t for t in rest if cross(w, x, t) < 0]
        if near_y:
            q = min(near_y, key=lambda t: abs(cross(u, y, t)))
            return _hole_from_hexagon([u, v, w, x, y, q], Z)
        if near_x:
            q = min(near_x, key=lambda t: abs(cross(w, x, t)))
            return _hole_from_hexagon([x, y, u, v, w, q], Z)
        # both side triangles empty: shrink to the pentagon uvwxy
        Z = [u, v, w, x, y] + rest


def _scan(Z: Sequence[Point], must: Sequence[Point], pool: Sequence[Point]) -> tuple[Point, ...] | None:
    for extra in itertools.combinations(pool, 5 - len(must)):
        vs = _hole_if_empty(list(must) + list(extra), Z)
        if vs is not None:
            return vs
    return None


def _scan_with_inner(Z: Sequence[Point], inner: Sequence[Point]) -> tuple[Point, ...] | None:
    """Candidates through the innermost layer, all of it first, then single points."""
    others = [p for p in Z if p not in inner]
    vs = _scan(Z, inner, others)
    if vs is not None:
        return vs
    for p in inner:
        vs = _scan(Z, [p], [q for q in others])
        if vs is not None:
            return vs
    return None


def _quad_five_interior(Z: Sequence[Point], H: Sequence[Point], inner: Sequence[Point]) -> tuple[Point, ...]:
    hI = hull_vertices(inner)
    # an outer halfplane of the second layer holding three hull vertices
    for a, b in _ccw_edges(hI):
        outer = [h for h in H if cross(a, b, h) < 0]
        if len(outer) >= 3:
            return tuple(hull_vertices([a, b] + outer[:3]))
    if len(hI) == 5:
        return tuple(hI)
    if len(hI) == 4:
        (x,) = [p for p in inner if p not in hI]
        for r in range(4):
            z = hI[r:] + hI[:r]
            if cross(z[0], z[2], x) * cross(z[0], z[2], z[1]) < 0:
                break
        z1, z2, z3, z4 = z
        for p in H:
            vs = _hole_if_empty([p, z1, z2, z3, x], Z)
            if vs is not None:
                return vs
        pairs = list(itertools.combinations(H, 2))
        for fixed in ((z1, z4, x), (z3, z4, x)):
            for p, q in pairs:
                vs = _hole_if_empty([p, q, *fixed], Z)
                if vs is not None:
                    return vs
        for p, q in pairs:
            pent = _pentagon([p, q, z1, z3, z4])
            if pent is None:
                continue
            inside = [t for t in Z if strictly_inside(t, pent)]
            if len(inside) == 2:
                return _hole_pentagon_hull(list(pent) + inside)
        # every hole of this case passes through the third-layer point
        vs = _scan_with_inner(Z, [x])
        if vs is None:
            raise StructuredSearchFailed("quadrilateral second layer: no hole through the third layer")
        return vs
    # triangular second layer, two points on the third layer
    third = [p for p in inner if p not in hI]
    vs = _scan_with_inner(Z, third)
    if vs is None:
        raise StructuredSearchFailed("triangular second layer: no hole through the third layer")
    return vs


def _hole_quad_hull(Z: Sequence[Point]) -> tuple[Point, ...]:
    Z = list(Z)
    while True:
        H = hull_vertices(Z)
        if len(H) != 4:
            raise PreconditionViolated(f"hull has {len(H)} vertices, expected 4")
        inner = _interior(Z, H)
        if len(inner) < 5:
            raise PreconditionViolated("need at least five interior points")
        if len(inner) == 5:
            return _quad_five_interior(Z, H, inner)
        # drop a hull vertex whose ear triangle holds a point
        for i in range(4):
            ear = [H[i - 1], H[i], H[(i + 1) % 4]]
            if any(strictly_inside(t, ear) for t in inner):
                break
        Z2 = [p for p in Z if p != H[i]]
        H2 = hull_vertices(Z2)
        if len(H2) >= 6:
            return _hole_from_hexagon(H2[:6], Z2)
        if len(H2) == 5:
            return _hole_pentagon_hull(Z2)
        Z = Z2


def _hole_nine_hull3(Z: Sequence[Point]) -> tuple[tuple[Point, ...] | None, LayerSignature]:
    """Nine points with a triangular hull: construct a hole or report the layer class."""
    layers, sig = convex_layers(Z)
    counts = sig.counts
    if counts == (3, 6):
        return _hole_from_hexagon(layers[1].vertices, Z), sig
    if counts == (3, 4, 2):
        quad = list(layers[1].vertices)
        x, y = layers[2]
        left = [z for z in quad if cross(x, y, z) > 0]
        right = [z for z in quad if cross(x, y, z) < 0]
        for side in (left, right):
            if len(side) >= 3:
                return tuple(hull_vertices([x, y] + side[:3])), sig
        vs = _scan_with_inner(Z, [x, y])
        if vs is None:
            raise StructuredSearchFailed("L{3,4,2}: no hole through the third layer")
        return vs, sig
    return _first_hole(Z), sig


# ---------------------------------------------------------------------------
# public finders


def _finish(vs: Sequence[Point] | None, S: PointSet, what: str) -> Hole:
    if vs is None or len(vs) != 5 or not _is_empty_convex(list(vs), S.points):
        raise StructuredSearchFailed(f"{what} produced an invalid hole: {vs}")
    return Hole(ConvexPolygon(tuple(vs)), S.digest)


def _find_convex_kgon(pts: Sequence[Point], k: int) -> tuple[Point, ...] | None:
    pts = sorted(pts)
    for a in range(len(pts) - k + 1):
        p = pts[a]
        order = _angular_sorted(p, pts[a + 1 :])

        def extend(chain):
            if len(chain) == k - 1:
                return chain
            for j in range(chain[-1] + 1, len(order)):
                if len(chain) >= 2 and cross(order[chain[-2]], order[chain[-1]], order[j]) <= 0:
                    continue
                found = extend(chain + [j])
                if found:
                    return found
            return None

        for i in range(len(order)):
            found = extend([i])
            if found:
                return (p,) + tuple(order[c] for c in found)
    return None


def find_5hole_hexagon(S: PointSet, hexagon: Sequence[Sequence[int]] | None = None) -> Hole:
    S = as_point_set(S)
    if hexagon is not None:
        hexv = [Point(*h) for h in hexagon]
        if any(h not in S for h in hexv):
            raise SubsetNotInHost("hexagon vertices must belong to the host set")
    else:
        H = hull_vertices(S.points)
        if len(H) >= 6:
            hexv = H[:6]
        else:
            found = _find_convex_kgon(S.points, 6) if len(S) >= 6 else None
            if found is None:
                raise NoConvexHexagonFound("no six points in convex position")
            hexv = list(found)
    return _finish(_hole_from_hexagon(hexv, S.points), S, "hexagon shrink")


def find_5hole_pentagon_hull(Z: PointSet) -> Hole:
    Z = as_point_set(Z)
    return _finish(_hole_pentagon_hull(Z.points), Z, "pentagon-hull finder")


def find_5hole_quad_hull(Z: PointSet) -> Hole:
    Z = as_point_set(Z)
    return _finish(_hole_quad_hull(Z.points), Z, "quadrilateral-hull finder")


def _structured_by_hull(pts: Sequence[Point]) -> tuple[Point, ...] | None:
    H = hull_vertices(pts)
    h, inner = len(H), len(pts) - len(H)
    if h >= 6:
        return _hole_from_hexagon(H[:6], pts)
    if h == 5 and inner >= 2:
        return _hole_pentagon_hull(pts)
    if h == 4 and inner >= 5:
        return _hole_quad_hull(pts)
    return None


def find_5hole_9pts_hull4plus(Z: PointSet) -> Hole:
    Z = as_point_set(Z)
    if len(Z) != 9:
        raise PreconditionViolated(f"need exactly 9 points, got {len(Z)}")
    if len(hull_vertices(Z.points)) < 4:
        raise PreconditionViolated("hull must have at least 4 vertices")
    return _finish(_structured_by_hull(Z.points), Z, "nine-point finder")


def _find_structured(pts: list[Point]) -> tuple[Point, ...] | None:
    """Constructive search; None means no structured path applies or found nothing."""
    vs = _structured_by_hull(pts)
    if vs is not None or len(pts) < 9:
        return vs
    if len(hull_vertices(pts)) > 3:
        return None
    if len(pts) == 9:
        return _hole_nine_hull3(pts)[0]
    # triangular hull: hull vertices are never inside a hole, so peel them off
    T = pts
    while len(T) > 10:
        H = hull_vertices(T)
        if len(H) > 3:
            return _structured_by_hull(T)
        T = [p for p in T if p != H[0]]
    H = hull_vertices(T)
    if len(H) > 3:
        return _structured_by_hull(T)
    for drop in H:
        T2 = [p for p in T if p != drop]
        vs = _structured_by_hull(T2)
        if vs is None and len(hull_vertices(T2)) == 3:
            vs = _hole_nine_hull3(T2)[0]
        if vs is not None:
            return vs
    return None


def find_5hole_vertices(pts: Sequence[Point]) -> tuple[Point, ...] | None:
    """Vertex cycle of a 5-hole of ``pts`` (itself the host), or None if there is none."""
    pts = list(pts)
    try:
        vs = _find_structured(pts)
        if vs is not None:
            if len(vs) == 5 and _is_empty_convex(list(vs), pts):
                return tuple(vs)
            raise StructuredSearchFailed(f"structured search returned a non-hole {vs}")
    except StructuredSearchFailed as exc:
        log.warning("structured 5-hole search failed, using the oracle: %s", exc)
    _check_budget(len(pts), 5, None)
    vs = _first_hole(pts)
    if vs is None and len(pts) >= 10:
        raise ContractViolation("no 5-hole in a set of 10 or more points")
    return vs


def find_5hole(S: PointSet) -> Hole | None:
    """A verified 5-hole of S, or None when S has none.

    Structured constructive paths are tried first; the exhaustive oracle is the
    fallback and the final word on absence.
    """
    S = as_point_set(S)
    if len(S) < 5:
        raise PreconditionViolated(f"need at least 5 points, got {len(S)}")
    vs = find_5hole_vertices(S.points)
    if vs is None:
        return None
    return _finish(vs, S, "5-hole search")


def is_k_redundant(p: Sequence[int], T: PointSet, k: int = 5) -> bool:
    T = as_point_set(T)
    p = Point(*p)
    if p not in T:
        raise PointNotInSet(f"{p} is not in the set")
    rest = T.without(p)
    if len(rest) < k:
        return False
    if k == 5:
        return find_5hole(rest) is not None
    _check_budget(len(rest), k, None)
    return _first_hole(rest.points, k) is not None


def classify_9points(Z: PointSet) -> NinePointClassification:
    Z = as_point_set(Z)
    if len(Z) != 9:
        raise PreconditionViolated(f"need exactly 9 points, got {len(Z)}")
    pts = list(Z.points)
    sig = convex_layers(pts)[1]
    if sig.counts[0] >= 4:
        return NinePointClassification(find_5hole_9pts_hull4plus(Z), sig)
    vs, sig = _hole_nine_hull3(pts)
    if vs is not None:
        return NinePointClassification(_finish(vs, Z, "nine-point classification"), sig)
    if sig not in (L333, L351):
        raise ContractViolation(f"9-point set without a 5-hole has layer class {sig}")
    return NinePointClassification(None, sig)
