"""Exact integer planar primitives.

Every predicate reduces to the sign of a 2x2 determinant of integer
coordinates, so no result ever depends on rounding. Coordinates are capped at
``C_MAX`` in magnitude; with that cap every intermediate stays below
``8 * (2 * C_MAX) ** 2 < 2 ** 63`` even though Python integers would not
overflow anyway.
"""

from __future__ import annotations

import functools
import hashlib
import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import (
    CollinearTriple,
    CoordinateOverflow,
    DuplicatePoint,
    NotEnoughPointsInRegion,
    TooFewPoints,
    WitnessOnLine,
)

C_MAX = 10**6


class Point(NamedTuple):
    x: int
    y: int

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Containment(Enum):
    STRICT_INSIDE = "strict_inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


def cross(p: Sequence[int], q: Sequence[int], r: Sequence[int]) -> int:
    """Twice the signed area of triangle pqr (positive for a left turn)."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orientation(p: Sequence[int], q: Sequence[int], r: Sequence[int]) -> Orientation:
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if d > 0:
        return Orientation.CCW
    if d < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def _direction_key(p: Sequence[int], q: Sequence[int]) -> tuple[int, int]:
    # primitive direction of the line pq, sign-normalised so that both
    # orientations of the same line collide
    dx, dy = q[0] - p[0], q[1] - p[1]
    g = math.gcd(dx, dy)
    dx //= g
    dy //= g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


# ---------------------------------------------------------------------------
# point sets


@dataclass(frozen=True)
class PointSet:
    """Canonically ordered (ascending x, then y) general-position point set.

    Build one with :func:`validate_general_position`; :meth:`subset` derives
    sub-collections without re-validating, since general position is
    inherited by subsets.
    """

    points: tuple[Point, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __contains__(self, p) -> bool:
        return p in self._index

    def index(self, p: Point) -> int:
        return self._index[p]

    @property
    def n(self) -> int:
        return len(self.points)

    def subset(self, pts: Iterable[Sequence[int]]) -> "PointSet":
        return PointSet(tuple(sorted(Point(*p) for p in pts)))

    def without(self, *pts: Point) -> "PointSet":
        drop = set(pts)
        return PointSet(tuple(p for p in self.points if p not in drop))

    @functools.cached_property
    def digest(self) -> str:
        text = "".join(f"{p.x} {p.y}\n" for p in self.points)
        return hashlib.sha256(text.encode()).hexdigest()

    def __hash__(self) -> int:
        return hash(self.points)


def validate_general_position(points: Iterable[Sequence[int]]) -> PointSet:
    """Check coordinates, distinctness and general position; return the canonical set.

    Indices in raised errors refer to positions in the given list.
    Runs in O(n^2) using reduced direction vectors.
    """
    pts = [Point(int(p[0]), int(p[1])) for p in points]
    if not pts:
        raise TooFewPoints("point list is empty")
    for i, p in enumerate(pts):
        if abs(p.x) > C_MAX or abs(p.y) > C_MAX:
            raise CoordinateOverflow(i)
    first_seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in first_seen:
            raise DuplicatePoint(first_seen[p], i)
        first_seen[p] = i
    best = None
    n = len(pts)
    for i in range(n):
        seen: dict[tuple[int, int], int] = {}
        for j in range(i + 1, n):
            key = _direction_key(pts[i], pts[j])
            if key in seen:
                cand = (i, seen[key], j)
                if best is None or cand < best:
                    best = cand
                break
            seen[key] = j
        if best is not None and best[0] == i:
            break
    if best is not None:
        raise CollinearTriple(*best)
    return PointSet(tuple(sorted(pts)))


# ---------------------------------------------------------------------------
# polygons


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex CCW vertex cycle, rotated to start at its lexicographic minimum."""

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        vs = tuple(Point(*v) for v in self.vertices)
        k = len(vs)
        if k < 3:
            raise ValueError("a convex polygon needs at least 3 vertices")
        for i in range(k):
            if cross(vs[i - 2], vs[i - 1], vs[i]) <= 0:
                raise ValueError(f"vertices are not a strictly convex CCW cycle: {vs}")
        start = vs.index(min(vs))
        object.__setattr__(self, "vertices", vs[start:] + vs[:start])

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def k(self) -> int:
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


@dataclass(frozen=True)
class LayerSignature:
    counts: tuple[int, ...]

    def __str__(self) -> str:
        return "L{" + ",".join(map(str, self.counts)) + "}"

    @classmethod
    def of(cls, *counts: int) -> "LayerSignature":
        return cls(tuple(counts))


L333 = LayerSignature((3, 3, 3))
L351 = LayerSignature((3, 5, 1))


def hull_vertices(points: Iterable[Sequence[int]]) -> list[Point]:
    """CCW hull cycle starting at the lexicographic minimum (monotone chain).

    Collinear boundary points are dropped. Works for any number of points;
    one or two distinct points come back unchanged (sorted).
    """
    pts = sorted(set(Point(*p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # all points collinear: report the two extremes
        return [pts[0], pts[-1]]
    return hull


def convex_hull(S: Iterable[Sequence[int]]) -> ConvexPolygon:
    pts = list(S)
    if len(pts) < 3:
        raise TooFewPoints(f"convex hull needs at least 3 points, got {len(pts)}")
    hv = hull_vertices(pts)
    if len(hv) < 3:
        raise TooFewPoints("points are collinear")
    return ConvexPolygon(tuple(hv))


def convex_layers(S: Iterable[Sequence[int]]) -> tuple[list, LayerSignature]:
    """Onion peeling. A final layer of one or two points is a bare tuple."""
    remaining = sorted(Point(*p) for p in S)
    layers: list = []
    counts: list[int] = []
    while remaining:
        if len(remaining) <= 2:
            layers.append(tuple(remaining))
            counts.append(len(remaining))
            break
        hv = hull_vertices(remaining)
        layers.append(ConvexPolygon(tuple(hv)))
        counts.append(len(hv))
        on_hull = set(hv)
        remaining = [p for p in remaining if p not in on_hull]
    return layers, LayerSignature(tuple(counts))


def layer_signature(S: Iterable[Sequence[int]]) -> LayerSignature:
    return convex_layers(S)[1]


def point_in_convex_polygon(p: Sequence[int], P: ConvexPolygon | Sequence[Sequence[int]]) -> Containment:
    vs = P.vertices if isinstance(P, ConvexPolygon) else tuple(P)
    on_line = False
    k = len(vs)
    for i in range(k):
        c = cross(vs[i], vs[(i + 1) % k], p)
        if c < 0:
            return Containment.OUTSIDE
        if c == 0:
            on_line = True
    return Containment.ON_BOUNDARY if on_line else Containment.STRICT_INSIDE


def strictly_inside(p: Sequence[int], vs: Sequence[Sequence[int]]) -> bool:
    """Fast path of :func:`point_in_convex_polygon` for a CCW vertex cycle."""
    k = len(vs)
    px, py = p[0], p[1]
    for i in range(k):
        a = vs[i - 1]
        b = vs[i]
        if (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]) <= 0:
            return False
    return True


def _segments_intersect(a, b, c, d) -> bool:
    """Closed-segment intersection, exact, degenerate segments allowed."""

    def on_seg(p, q, r):
        return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and on_seg(c, d, a):
        return True
    if d2 == 0 and on_seg(c, d, b):
        return True
    if d3 == 0 and on_seg(a, b, c):
        return True
    if d4 == 0 and on_seg(a, b, d):
        return True
    return False


def _separating_edge_exists(va: Sequence[Point], vb: Sequence[Point]) -> bool:
    # edges of va whose outer open side holds all of vb; a two-point cycle
    # contributes its segment in both directions
    k = len(va)
    if k < 2:
        return False
    edges = [(va[i], va[(i + 1) % k]) for i in range(k)] if k >= 3 else [(va[0], va[1]), (va[1], va[0])]
    for a, b in edges:
        if all(cross(a, b, q) < 0 for q in vb):
            return True
    return False


def _cycle(P) -> tuple[Point, ...]:
    if isinstance(P, ConvexPolygon):
        return P.vertices
    return tuple(hull_vertices(P))


def convex_polygons_disjoint(A, B) -> bool:
    """True iff the closed convex regions share no point.

    Accepts :class:`ConvexPolygon` objects or raw point collections (whose
    hull is used, so hulls of one or two points act as a point or segment).
    Two convex regions are disjoint iff some edge line of one has the whole
    other region strictly on its outer side.
    """
    va, vb = _cycle(A), _cycle(B)
    if len(va) >= 3 or len(vb) >= 3:
        return _separating_edge_exists(va, vb) or _separating_edge_exists(vb, va)
    # point/segment versus point/segment
    a0, a1 = va[0], va[-1]
    b0, b1 = vb[0], vb[-1]
    return not _segments_intersect(a0, a1, b0, b1)


hulls_disjoint = convex_polygons_disjoint


# ---------------------------------------------------------------------------
# halfplanes, cones, angular neighbours


@dataclass(frozen=True)
class Halfplane:
    """Side of line pq containing ``witness``; open unless ``closed``."""

    p: Point
    q: Point
    witness: Point
    closed: bool = False

    def __post_init__(self) -> None:
        if tuple(self.p) == tuple(self.q):
            raise ValueError("halfplane needs two distinct points")
        if cross(self.p, self.q, self.witness) == 0:
            raise WitnessOnLine(f"witness {self.witness} lies on line {self.p}{self.q}")

    def contains(self, r: Sequence[int]) -> bool:
        s = cross(self.p, self.q, self.witness)
        c = cross(self.p, self.q, r)
        if c == 0:
            return self.closed
        return (c > 0) == (s > 0)


@dataclass(frozen=True)
class Cone:
    """Open angular domain at ``apex`` between rays apex->a and apex->b (angle < pi)."""

    apex: Point
    a: Point
    b: Point

    def __post_init__(self) -> None:
        if cross(self.apex, self.a, self.b) == 0:
            raise ValueError("cone rays must not be collinear")

    def contains(self, r: Sequence[int]) -> bool:
        s = cross(self.apex, self.a, self.b)
        c1 = cross(self.apex, self.a, r)
        c2 = cross(self.apex, r, self.b)
        if s > 0:
            return c1 > 0 and c2 > 0
        return c1 < 0 and c2 < 0


ConeOrHalfplane = Union[Cone, Halfplane]


def angular_order(apex: Sequence[int], ray_target: Sequence[int], pts: Iterable[Sequence[int]]) -> list[Point]:
    """Sort points by angle from ray apex->ray_target.

    All points must lie strictly on one side of the ray's line; the sort is
    driven by orientation signs only.
    """
    pts = [Point(*p) for p in pts]
    if not pts:
        return []
    sides = {cross(apex, ray_target, p) > 0 for p in pts}
    if len(sides) > 1 or any(cross(apex, ray_target, p) == 0 for p in pts):
        raise ValueError("points straddle the reference ray")
    sign = 1 if sides.pop() else -1

    def cmp(a, b):
        return -1 if cross(apex, a, b) * sign > 0 else 1

    return sorted(pts, key=functools.cmp_to_key(cmp))


def kth_angular_neighbor(
    apex: Sequence[int],
    ray_target: Sequence[int],
    region: ConeOrHalfplane,
    k: int,
    S: Iterable[Sequence[int]],
) -> Point:
    """Point s of S in ``region`` with exactly k-1 region points strictly between rays apex->ray_target and apex->s."""
    if k < 1:
        raise ValueError("k must be positive")
    apex, ray_target = Point(*apex), Point(*ray_target)
    cands = [Point(*p) for p in S if region.contains(p) and p != apex and p != ray_target]
    if len(cands) < k:
        raise NotEnoughPointsInRegion(f"region holds {len(cands)} points, need {k}")
    return angular_order(apex, ray_target, cands)[k - 1]


def halfplane_points(
    p: Sequence[int], q: Sequence[int], side_witness: Sequence[int], closed: bool, S: PointSet
) -> PointSet:
    hp = Halfplane(Point(*p), Point(*q), Point(*side_witness), closed)
    return S.subset(r for r in S if hp.contains(r))


def split_by_line(S: Iterable[Point], p: Point, q: Point, p_left: bool, q_left: bool) -> tuple[list[Point], list[Point]]:
    """Split S by the directed line p->q; p and q go to the side given by the flags."""
    left: list[Point] = []
    right: list[Point] = []
    for r in S:
        if r == p:
            (left if p_left else right).append(r)
        elif r == q:
            (left if q_left else right).append(r)
        elif cross(p, q, r) > 0:
            left.append(r)
        else:
            right.append(r)
    return left, right
