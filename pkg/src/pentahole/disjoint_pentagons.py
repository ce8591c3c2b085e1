"""Pairwise disjoint 5-holes: pairs in 19 points, 2m+9 partitions and witnesses.

Every search here is a finite scan over lines through two host points.  Two
disjoint convex hulls of finite sets can always be separated by such a line
(with the two defining points assigned to sides), so the scans are complete.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import (
    ContractViolation,
    HullTooSmall,
    NotADoublingSize,
    PreconditionViolated,
    SizeMismatch,
)
from .geom_core import (
    ConvexPolygon,
    Point,
    PointSet,
    angular_order,
    convex_polygons_disjoint,
    cross,
    hull_vertices,
    strictly_inside,
)
from .holes import (
    Hole,
    _is_empty_convex,
    as_point_set,
    enumerate_k_holes,
    find_5hole_vertices,
    is_empty_convex,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Separator:
    """Directed line p->q; side "a" is the left (CCW) side, "b" the right."""

    p: Point
    q: Point
    p_side: str
    q_side: str

    def side_of(self, r: Sequence[int]) -> str:
        r = Point(*r)
        if r == self.p:
            return self.p_side
        if r == self.q:
            return self.q_side
        c = cross(self.p, self.q, r)
        if c == 0:
            return "on"
        return "a" if c > 0 else "b"


@dataclass(frozen=True)
class DisjointPair:
    a: Hole
    b: Hole
    separator: Separator


@dataclass(frozen=True)
class DividingDiagonal:
    i: int
    j: int
    s_i: Point
    s_j: Point
    splitter: tuple[int, int]


@dataclass(frozen=True)
class UVWLabeling:
    u: tuple[Point, ...]
    v: tuple[Point, ...]
    w: tuple[Point, ...]
    anchor: tuple[Point, Point, Point]


@dataclass(frozen=True)
class SeparablePartition:
    s1: PointSet
    s2: PointSet
    s3: PointSet
    hole: Hole
    m: int


class Method(str, Enum):
    STRIP_5N_47 = "STRIP_5N_47"
    DOUBLING_3N_28 = "DOUBLING_3N_28"
    DIRECT = "DIRECT"


@dataclass(frozen=True)
class StripPlan:
    start: int
    stop: int
    method: str


@dataclass(frozen=True)
class WitnessReport:
    n: int
    holes: tuple[Hole, ...]
    bound_claimed: int
    method: Method
    verified: bool
    strip_plan: tuple[StripPlan, ...] = ()
    sweep: tuple[int, int] | None = None


@dataclass
class Verification:
    ok: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _rehost(vs: Sequence[Point], S: PointSet) -> Hole:
    return Hole(ConvexPolygon(tuple(vs)), S.digest)


class _HoleCache:
    """Memoised 5-hole lookup keyed by the point subset."""

    def __init__(self) -> None:
        self._memo: dict[frozenset, tuple[Point, ...] | None] = {}

    def __call__(self, pts: Sequence[Point]) -> tuple[Point, ...] | None:
        if len(pts) < 5:
            return None
        key = frozenset(pts)
        if key not in self._memo:
            self._memo[key] = find_5hole_vertices(sorted(pts))
        return self._memo[key]


# ---------------------------------------------------------------------------
# dividing diagonals and the pair finder


def dividing_diagonals(S: PointSet) -> list[DividingDiagonal]:
    """Hull diagonals splitting the hull vertices as evenly as parity allows.

    Each is annotated with the interior point counts (a, b), a <= b, of its
    two open sides.
    """
    S = as_point_set(S)
    H = hull_vertices(S.points)
    k = len(H)
    if k < 4:
        raise HullTooSmall(f"hull has {k} vertices, need at least 4")
    hs = set(H)
    inner = [p for p in S.points if p not in hs]
    out = []
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if abs((j - i - 1) - (k - j + i - 1)) != k % 2:
                continue
            left = sum(1 for r in inner if cross(H[i], H[j], r) > 0)
            a, b = sorted((left, len(inner) - left))
            out.append(DividingDiagonal(i, j, H[i], H[j], (a, b)))
    return out


def _assignments():
    return ((True, False), (False, True), (True, True), (False, False))


def _guided_lines(pts: Sequence[Point]) -> Iterator[tuple[Point, Point]]:
    H = hull_vertices(pts)
    if len(H) < 4:
        return
    for d in dividing_diagonals(PointSet(tuple(pts))):
        for apex, other in ((d.s_i, d.s_j), (d.s_j, d.s_i)):
            yield apex, other
            for sign in (1, -1):
                side = [r for r in pts if r not in (apex, other) and sign * cross(apex, other, r) > 0]
                for r in angular_order(apex, other, side)[:4]:
                    yield apex, r


def _all_lines(pts: Sequence[Point]) -> list[tuple[Point, Point]]:
    n = len(pts)
    scored = []
    for a, b in itertools.combinations(pts, 2):
        left = sum(1 for r in pts if cross(a, b, r) > 0)
        scored.append((abs(2 * left - (n - 2)), a, b))
    scored.sort()
    return [(a, b) for _, a, b in scored]


def _pair_search(pts: Sequence[Point], lookup: _HoleCache):
    seen = set()
    for p, q in itertools.chain(_guided_lines(pts), _all_lines(pts)):
        for p_left, q_left in _assignments():
            key = (p, q, p_left, q_left)
            if key in seen:
                continue
            seen.add(key)
            left, right = [], []
            for r in pts:
                if r == p:
                    on_left = p_left
                elif r == q:
                    on_left = q_left
                else:
                    on_left = cross(p, q, r) > 0
                (left if on_left else right).append(r)
            if len(left) < 5 or len(right) < 5:
                continue
            ha = lookup(left)
            if ha is None:
                continue
            hb = lookup(right)
            if hb is None:
                continue
            sep = Separator(p, q, "a" if p_left else "b", "a" if q_left else "b")
            return ha, hb, sep
    return None


def find_two_disjoint_5holes(S: PointSet) -> DisjointPair | None:
    """Two 5-holes with disjoint hulls plus a separating line, or None."""
    S = as_point_set(S)
    if len(S) < 10:
        # two disjoint 5-holes need ten distinct points
        return None
    found = _pair_search(list(S.points), _HoleCache())
    if found is None:
        if len(S) >= 19:
            raise ContractViolation("19 or more points without two disjoint 5-holes")
        return None
    ha, hb, sep = found
    pair = DisjointPair(_rehost(ha, S), _rehost(hb, S), sep)
    reasons = check_pair(pair, S)
    if reasons:
        raise ContractViolation(f"pair search produced an invalid certificate: {reasons}")
    return pair


def disjoint_pair_oracle(S: PointSet) -> tuple[Hole, Hole] | None:
    """Brute force: the first pair of enumerated 5-holes with disjoint hulls."""
    holes = enumerate_k_holes(as_point_set(S), 5)
    for a, b in itertools.combinations(holes, 2):
        if convex_polygons_disjoint(a.polygon, b.polygon):
            return a, b
    return None


def check_pair(pair: DisjointPair, S: PointSet) -> list[str]:
    reasons = []
    for name, h in (("a", pair.a), ("b", pair.b)):
        if h.k != 5:
            reasons.append(f"hole_{name}_size")
        elif any(v not in S for v in h.vertices):
            reasons.append(f"hole_{name}_not_in_host")
        elif not is_empty_convex(h.vertices, S):
            reasons.append(f"hole_{name}_not_empty")
        elif any(pair.separator.side_of(v) != name for v in h.vertices):
            reasons.append(f"hole_{name}_wrong_side")
    if set(pair.a.vertices) & set(pair.b.vertices):
        reasons.append("shared_vertex")
    if not convex_polygons_disjoint(pair.a.polygon, pair.b.polygon):
        reasons.append("hulls_intersect")
    return reasons


# ---------------------------------------------------------------------------
# U, V, W labeling and the separable partition


def label_uvw(S: PointSet, m: int, anchor_choice: int = 0, mirror: bool = False) -> UVWLabeling:
    """Angular labeling around hull vertex ``anchor_choice``.

    u1 is the anchor and u2 its hull successor (its predecessor if
    ``mirror``).  The remaining points sorted by angle from ray u1->u2 give
    u3..um, then v1..v9, then w1..wm, where wm is the other hull neighbour.
    """
    S = as_point_set(S)
    if m < 1 or len(S) != 2 * m + 9:
        raise SizeMismatch(f"need 2m+9 = {2 * m + 9} points for m={m}, got {len(S)}")
    H = hull_vertices(S.points)
    k = len(H)
    a = anchor_choice % k
    u1 = H[a]
    u2, wm = H[(a + 1) % k], H[(a - 1) % k]
    if mirror:
        u2, wm = wm, u2
    rest = [p for p in S.points if p != u1 and p != u2]
    order = [u2] + angular_order(u1, u2, rest)
    assert order[-1] == wm
    u = (u1,) + tuple(order[: m - 1])
    v = tuple(order[m - 1 : m + 8])
    w = tuple(order[m + 8 :])
    return UVWLabeling(u, v, w, (u1, u2, wm))


def _split_rest(rest: Sequence[Point], s2_hull: Sequence[Point], m: int):
    """Split ``rest`` (2m points) by a line into m|m, both parts hull-disjoint from s2."""
    if len(rest) == 2:
        cands = [([rest[0]], [rest[1]])]
    else:
        cands = _line_splits(rest, m)
    for left, right in cands:
        if convex_polygons_disjoint(left, s2_hull) and convex_polygons_disjoint(right, s2_hull):
            return left, right
    return None


def _line_splits(pts: Sequence[Point], m: int):
    seen = set()
    for p, q in itertools.combinations(pts, 2):
        left_n = [r for r in pts if r != p and r != q and cross(p, q, r) > 0]
        need = m - len(left_n)
        if need < 0 or need > 2:
            continue
        for p_left, q_left in _assignments():
            if p_left + q_left != need:
                continue
            left = list(left_n)
            if p_left:
                left.append(p)
            if q_left:
                left.append(q)
            key = frozenset(left)
            if key in seen:
                continue
            seen.add(key)
            ls = set(left)
            yield left, [r for r in pts if r not in ls]


def _preference(lab: UVWLabeling):
    v = list(lab.v)
    outs = [v[0], v[-1]] + v[1:-1]
    us, ws = list(lab.u), list(lab.w)
    # u1 first, then points angularly adjacent to V working outward
    ins = [us[0]]
    tail_u = us[1:][::-1]
    for i in range(max(len(tail_u), len(ws))):
        if i < len(tail_u):
            ins.append(tail_u[i])
        if i < len(ws):
            ins.append(ws[i])
    return outs, ins


def _try_middle(S_pts: Sequence[Point], s2: Sequence[Point], m: int, lookup: _HoleCache):
    vs = lookup(list(s2))
    if vs is None:
        return None
    s2set = set(s2)
    s2_hull = hull_vertices(s2)
    rest = [p for p in S_pts if p not in s2set]
    if any(strictly_inside(r, s2_hull) for r in rest):
        return None
    split = _split_rest(rest, s2_hull, m)
    if split is None:
        return None
    return split[0], list(s2), split[1], vs


def _labelings(S: PointSet, m: int) -> list[UVWLabeling]:
    k = len(hull_vertices(S.points))
    return [label_uvw(S, m, a, mirror) for a in range(k) for mirror in (False, True)]


def separable_partition(S: PointSet, m: int) -> SeparablePartition:
    """Split S into m | 9 | m points with pairwise disjoint hulls, the 9 holding a 5-hole."""
    S = as_point_set(S)
    if m < 1 or len(S) != 2 * m + 9:
        raise SizeMismatch(f"need 2m+9 = {2 * m + 9} points for m={m}, got {len(S)}")
    pts = list(S.points)
    lookup = _HoleCache()
    labs = _labelings(S, m)
    tried = set()

    def attempt(s2):
        key = frozenset(s2)
        if key in tried:
            return None
        tried.add(key)
        return _try_middle(pts, s2, m, lookup)

    found = None
    for lab in labs:
        found = attempt(lab.v)
        if found:
            break
    if not found:
        for r in (1, 2):
            for lab in labs:
                outs, ins = _preference(lab)
                for out in itertools.combinations(outs, r):
                    base = [p for p in lab.v if p not in out]
                    for add in itertools.combinations(ins, r):
                        found = attempt(base + list(add))
                        if found:
                            break
                    if found:
                        break
                if found:
                    break
            if found:
                break
    if not found:
        raise ContractViolation(f"no separable partition found for m={m}")
    s1, s2, s3, vs = found
    part = SeparablePartition(S.subset(s1), S.subset(s2), S.subset(s3), _rehost(vs, S.subset(s2)), m)
    reasons = check_partition(part, S)
    if reasons:
        raise ContractViolation(f"partition failed its own check: {reasons}")
    return part


def check_partition(part: SeparablePartition, S: PointSet) -> list[str]:
    reasons = []
    m = part.m
    if (len(part.s1), len(part.s2), len(part.s3)) != (m, 9, m):
        reasons.append("sizes")
    a, b, c = set(part.s1.points), set(part.s2.points), set(part.s3.points)
    if a & b or b & c or a & c or (a | b | c) != set(S.points):
        reasons.append("not_a_partition")
    for x, y, tag in ((a, b, "s1_s2"), (b, c, "s2_s3"), (a, c, "s1_s3")):
        if x and y and not convex_polygons_disjoint(list(x), list(y)):
            reasons.append(f"hulls_intersect_{tag}")
    h = part.hole
    if h.k != 5 or any(v not in b for v in h.vertices) or not _is_empty_convex(list(h.vertices), part.s2.points):
        reasons.append("bad_hole")
    return reasons


# ---------------------------------------------------------------------------
# witnesses


def sweep_direction(pts: Sequence[Point]) -> tuple[int, int]:
    """First (1, d), d = 0, 1, 2, ..., giving pairwise distinct projections."""
    d = 0
    while True:
        keys = {p.x + d * p.y for p in pts}
        if len(keys) == len(pts):
            return (1, d)
        d += 1


def remainder_blocks(r: int) -> list[int]:
    """Greedy block sizes along the sweep: 19s first, then 10s, then a leftover."""
    blocks = []
    while r >= 19:
        blocks.append(19)
        r -= 19
    while r >= 10:
        blocks.append(10)
        r -= 10
    if r:
        blocks.append(r)
    return blocks


def remainder_holes(r: int) -> int:
    return sum(2 if b == 19 else 1 if b >= 10 else 0 for b in remainder_blocks(r))


def _pair_vertices(pts: Sequence[Point]):
    found = _pair_search(list(pts), _HoleCache())
    if found is None:
        raise ContractViolation(f"{len(pts)} points without two disjoint 5-holes")
    return [found[0], found[1]]


def _one_hole(pts: Sequence[Point]):
    vs = find_5hole_vertices(sorted(pts))
    if vs is None:
        raise ContractViolation(f"{len(pts)} points without a 5-hole")
    return [vs]


def _strip_holes(chunk: Sequence[Point]):
    part = separable_partition(PointSet(tuple(sorted(chunk))), 19)
    return _pair_vertices(part.s1.points) + _pair_vertices(part.s3.points) + [part.hole.vertices]


def _finish_report(S, holes, bound, method, plan=(), sweep=None) -> WitnessReport:
    holes = tuple(sorted((_rehost(vs, S) for vs in holes), key=lambda h: h.vertices))
    report = WitnessReport(len(S), holes, bound, method, False, tuple(plan), sweep)
    check = verify_witness(report, S)
    if not check.ok:
        raise ContractViolation(f"witness failed verification: {check.reasons}")
    return WitnessReport(len(S), holes, bound, method, True, tuple(plan), sweep)


def witness_5n_47(S: PointSet) -> WitnessReport:
    """At least floor(5n/47) disjoint 5-holes from slabs of 47 points along a sweep."""
    S = as_point_set(S)
    n = len(S)
    if n < 1:
        raise PreconditionViolated("need at least one point")
    d = sweep_direction(S.points)
    order = sorted(S.points, key=lambda p: d[0] * p.x + d[1] * p.y)
    q, r = divmod(n, 47)
    holes, plan = [], []
    for s in range(q):
        holes += _strip_holes(order[47 * s : 47 * s + 47])
        plan.append(StripPlan(47 * s, 47 * s + 47, "partition_19_9_19"))
    start = 47 * q
    for size in remainder_blocks(r):
        block = order[start : start + size]
        if size == 19:
            holes += _pair_vertices(block)
            plan.append(StripPlan(start, start + size, "pair_19"))
        elif size >= 10:
            holes += _one_hole(block)
            plan.append(StripPlan(start, start + size, "hole_10"))
        else:
            plan.append(StripPlan(start, start + size, "none"))
        start += size
    return _finish_report(S, holes, 5 * n // 47, Method.STRIP_5N_47, plan, d)


def doubling_level(n: int) -> int | None:
    """k with n = 28*2^(k-1) - 9, or None."""
    t, rem = divmod(n + 9, 28)
    if rem or t < 1 or t & (t - 1):
        return None
    return t.bit_length()


def g(k: int) -> int:
    return 28 * 2 ** (k - 1) - 9


def h(k: int) -> int:
    return 3 * 2 ** (k - 1) - 1


def _doubling_holes(pts: Sequence[Point], k: int):
    if k == 1:
        return _pair_vertices(pts)
    part = separable_partition(PointSet(tuple(sorted(pts))), g(k - 1))
    return (
        _doubling_holes(part.s1.points, k - 1)
        + _doubling_holes(part.s3.points, k - 1)
        + [part.hole.vertices]
    )


def witness_doubling(S: PointSet) -> WitnessReport:
    """At least 3*2^(k-1) - 1 disjoint 5-holes for n = 28*2^(k-1) - 9, by recursive partition."""
    S = as_point_set(S)
    k = doubling_level(len(S))
    if k is None:
        raise NotADoublingSize(f"{len(S)} is not of the form 28*2^(k-1) - 9")
    return _finish_report(S, _doubling_holes(list(S.points), k), h(k), Method.DOUBLING_3N_28)


def claimed_bound(method: Method, n: int) -> int | None:
    if method == Method.STRIP_5N_47:
        return 5 * n // 47
    if method == Method.DOUBLING_3N_28:
        k = doubling_level(n)
        return None if k is None else h(k)
    return None


def verify_witness(report: WitnessReport, S: PointSet) -> Verification:
    """Independent re-check of a report using only emptiness and disjointness tests."""
    S = as_point_set(S)
    reasons = []
    if report.n != len(S):
        reasons.append(f"size_mismatch: report n={report.n}, set has {len(S)}")
    valid = []
    for i, hole in enumerate(report.holes):
        vs = hole.vertices
        if len(vs) != 5:
            reasons.append(f"not_a_pentagon: hole {i}")
            continue
        missing = [v for v in vs if v not in S]
        if missing:
            reasons.append(f"SubsetNotInHost: hole {i} vertex {missing[0]}")
            continue
        if not is_empty_convex(vs, S):
            reasons.append(f"not_empty_convex: hole {i}")
            continue
        valid.append(i)
    for i, j in itertools.combinations(valid, 2):
        if not convex_polygons_disjoint(report.holes[i].vertices, report.holes[j].vertices):
            reasons.append(f"not_disjoint: holes {i} and {j}")
    if len(report.holes) < report.bound_claimed:
        reasons.append(f"too_few_holes: {len(report.holes)} < {report.bound_claimed}")
    expected = claimed_bound(Method(report.method), len(S))
    if report.method != Method.DIRECT and expected != report.bound_claimed:
        reasons.append(f"bound_mismatch: claimed {report.bound_claimed}, expected {expected}")
    return Verification(not reasons, reasons)


def holes_within_strips(report: WitnessReport, S: PointSet) -> bool:
    """Every hole lies in the closed slab spanned by one plan entry."""
    if report.sweep is None:
        return True
    a, b = report.sweep
    order = sorted(S.points, key=lambda p: a * p.x + b * p.y)
    slabs = []
    for st in report.strip_plan:
        seg = order[st.start : st.stop]
        if seg:
            keys = [a * p.x + b * p.y for p in seg]
            slabs.append((min(keys), max(keys)))
    for hole in report.holes:
        keys = [a * p.x + b * p.y for p in hole.vertices]
        if not any(lo <= min(keys) and max(keys) <= hi for lo, hi in slabs):
            return False
    return True


def build_direct_report(S: PointSet, holes: Iterable[Hole]) -> WitnessReport:
    S = as_point_set(S)
    holes = tuple(holes)
    report = WitnessReport(len(S), holes, len(holes), Method.DIRECT, False)
    return WitnessReport(len(S), holes, len(holes), Method.DIRECT, verify_witness(report, S).ok)
