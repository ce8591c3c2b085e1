"""Independent brute-force oracles shared by the test modules.

Nothing here imports the package's geometry; every predicate is rewritten
from the definitions so the tests never check the library against itself.
"""

import itertools
import random

import pytest


def orient(p, q, r):
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def in_triangle(p, a, b, c):
    s1, s2, s3 = orient(a, b, p), orient(b, c, p), orient(c, a, p)
    return (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0)


def convex_position(pts):
    # no point strictly inside a triangle of three others
    for p in pts:
        others = [q for q in pts if q != p]
        if any(in_triangle(p, *t) for t in itertools.combinations(others, 3)):
            return False
    return True


def strictly_inside_hull(p, pts):
    # general position: an interior point lies strictly inside some triangle
    return any(in_triangle(p, *t) for t in itertools.combinations(pts, 3))


def brute_is_hole(sub, S):
    sub = [tuple(p) for p in sub]
    if not convex_position(sub):
        return False
    members = set(sub)
    return not any(strictly_inside_hull(tuple(p), sub) for p in S if tuple(p) not in members)


def brute_holes(S, k=5):
    pts = [tuple(p) for p in S]
    return [frozenset(c) for c in itertools.combinations(pts, k) if brute_is_hole(c, pts)]


def _seg_meet(a, b, c, d):
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and ((o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)):
        return True

    def on(p, q, r):
        return orient(p, q, r) == 0 and min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    return on(a, b, c) or on(a, b, d) or on(c, d, a) or on(c, d, b)


def _hull(pts):
    pts = sorted(set(tuple(p) for p in pts))
    return [p for p in pts if not strictly_inside_hull(p, pts) and not any(
        orient(a, b, p) == 0 and min(a, b) < p < max(a, b) for a, b in itertools.combinations(pts, 2)
    )]


def _ccw(vs):
    import math
    cx = sum(v[0] for v in vs) / len(vs)
    cy = sum(v[1] for v in vs) / len(vs)
    return sorted(vs, key=lambda v: math.atan2(v[1] - cy, v[0] - cx))


def _inside_or_on(p, poly):
    # poly is a CCW cycle of >= 3 vertices
    k = len(poly)
    return all(orient(poly[i], poly[(i + 1) % k], p) >= 0 for i in range(k))


def brute_disjoint(A, B):
    """Closed convex hulls of A and B share no point (edges meet or one holds a vertex of the other)."""
    ha, hb = _ccw(_hull(A)), _ccw(_hull(B))
    ea = [(ha[i], ha[(i + 1) % len(ha)]) for i in range(len(ha))] if len(ha) > 1 else [(ha[0], ha[0])]
    eb = [(hb[i], hb[(i + 1) % len(hb)]) for i in range(len(hb))] if len(hb) > 1 else [(hb[0], hb[0])]
    for (a, b), (c, d) in itertools.product(ea, eb):
        if _seg_meet(a, b, c, d):
            return False
    if len(hb) >= 3 and any(_inside_or_on(p, hb) for p in ha):
        return False
    if len(ha) >= 3 and any(_inside_or_on(p, ha) for p in hb):
        return False
    return True


def brute_disjoint_pair_exists(S):
    holes = brute_holes(S)
    return any(brute_disjoint(list(a), list(b)) for a, b in itertools.combinations(holes, 2))


def random_points(n, rng, c=1000):
    pts = []
    while len(pts) < n:
        p = (rng.randint(-c, c), rng.randint(-c, c))
        if p in pts or any(orient(a, b, p) == 0 for a, b in itertools.combinations(pts, 2)):
            continue
        pts.append(p)
    return pts


@pytest.fixture
def rng():
    return random.Random(20261017)
