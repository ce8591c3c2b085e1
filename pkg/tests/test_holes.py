import logging
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_holes, brute_is_hole, random_points
from pentahole.cli_io import load_stored_nohole
from pentahole.errors import (
    BudgetExceeded,
    NoConvexHexagonFound,
    PointNotInSet,
    PreconditionViolated,
    SubsetNotInHost,
)
from pentahole.geom_core import L333, L351, Point, convex_layers, hull_vertices, validate_general_position
from pentahole.holes import (
    classify_9points,
    enumerate_k_holes,
    find_5hole,
    find_5hole_9pts_hull4plus,
    find_5hole_hexagon,
    find_5hole_pentagon_hull,
    find_5hole_quad_hull,
    is_empty_convex,
    is_k_redundant,
)

PENTAGON = [(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]
PENT_FRAME = [(0, -10000), (9511, -3090), (5878, 8090), (-5878, 8090), (-9511, -3090)]
QUAD_FRAME = [(-10000, -10000), (10000, -9990), (9900, 10000), (-10010, 9900)]


def regular(k, r=1000, phase=0.1):
    return [(round(r * math.cos(phase + 2 * math.pi * i / k)), round(r * math.sin(phase + 2 * math.pi * i / k))) for i in range(k)]


def framed(frame, k, rng, c=3000):
    # hull = frame, k points strictly inside a central box
    while True:
        pts = random_points(k, rng, c)
        try:
            S = validate_general_position(list(frame) + pts)
        except Exception:
            continue
        if len(hull_vertices(S.points)) == len(frame):
            return S


def assert_hole(h, S):
    assert h is not None and h.k == 5
    assert h.host_hash == S.digest
    assert brute_is_hole(h.vertices, S.points)


def test_is_empty_convex_examples():
    S = validate_general_position(PENTAGON)
    assert is_empty_convex(PENTAGON, S)
    sq = validate_general_position([(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)])
    assert not is_empty_convex([(0, 0), (4, 0), (4, 4), (0, 4)], sq)
    four = [(0, 0), (6, 0), (0, 6), (1, 2)]
    assert not is_empty_convex(four, validate_general_position(four))
    with pytest.raises(SubsetNotInHost):
        is_empty_convex([(0, 0), (4, 0), (9, 9)], S)


def test_enumerate_examples(rng):
    assert len(enumerate_k_holes(validate_general_position(PENTAGON), 5)) == 1
    for sig in (L333, L351):
        assert enumerate_k_holes(load_stored_nohole(sig), 5) == []
    S = validate_general_position(random_points(10, rng))
    assert enumerate_k_holes(S, 5)


def test_enumerate_budget(monkeypatch, rng):
    S = validate_general_position(random_points(12, rng))
    with pytest.raises(BudgetExceeded):
        enumerate_k_holes(S, 5, budget=100)
    monkeypatch.setenv("PENTAHOLE_ORACLE_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        enumerate_k_holes(S, 5)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_enumerate_matches_brute_force(rng, k):
    for _ in range(15):
        S = validate_general_position(random_points(rng.randint(k, 10), rng, rng.choice([8, 1000])))
        got = [frozenset(h.vertices) for h in enumerate_k_holes(S, k)]
        assert len(got) == len(set(got))
        assert set(got) == set(brute_holes(S.points, k))


def test_stored_configurations_have_no_hole():
    for sig in (L333, L351):
        S = load_stored_nohole(sig)
        assert len(S) == 9
        assert convex_layers(S)[1] == sig
        assert brute_holes(S.points) == []


def test_hexagon_examples(rng):
    hexa = validate_general_position(regular(6))
    h = find_5hole_hexagon(hexa)
    assert_hole(h, hexa)
    one_in = validate_general_position(regular(6) + [(37, -21)])
    h = find_5hole_hexagon(one_in)
    assert_hole(h, one_in)
    assert Point(37, -21) in h.vertices
    tri = validate_general_position([(-1000, -1000), (1000, -990), (5, 1000), (1, 2), (30, -7), (-11, 40)])
    with pytest.raises(NoConvexHexagonFound):
        find_5hole_hexagon(tri)


def test_hexagon_with_interior_points(rng):
    for _ in range(200):
        S = validate_general_position(regular(6, 10000) + random_points(rng.randint(1, 8), rng, 4000))
        assert_hole(find_5hole_hexagon(S, regular(6, 10000)), S)


def test_pentagon_two_interior_example():
    y1, y2 = (-1000, 300), (1500, -200)
    S = validate_general_position(PENT_FRAME + [y1, y2])
    h = find_5hole_pentagon_hull(S)
    assert_hole(h, S)
    assert {y1, y2} <= set(h.vertices)


@pytest.mark.parametrize("k", [2, 3, 4, 6])
def test_pentagon_hull_members_of_oracle(rng, k):
    for _ in range(60):
        S = framed(PENT_FRAME, k, rng)
        h = find_5hole_pentagon_hull(S)
        assert_hole(h, S)
        assert frozenset(h.vertices) in brute_holes(S.points)


def test_pentagon_hull_preconditions():
    with pytest.raises(PreconditionViolated):
        find_5hole_pentagon_hull(validate_general_position(PENT_FRAME + [(0, 1)]))
    with pytest.raises(PreconditionViolated):
        find_5hole_pentagon_hull(validate_general_position(QUAD_FRAME + [(0, 1), (5, 2)]))


def test_quad_hull_inner_pentagon():
    inner = [(round(3000 * math.cos(0.3 + 2 * math.pi * i / 5)), round(3000 * math.sin(0.3 + 2 * math.pi * i / 5))) for i in range(5)]
    S = validate_general_position(QUAD_FRAME + inner)
    h = find_5hole_quad_hull(S)
    assert set(h.vertices) == {Point(*p) for p in inner}


@pytest.mark.parametrize("k", [5, 6, 8])
def test_quad_hull_members_of_oracle(rng, k):
    for _ in range(60):
        S = framed(QUAD_FRAME, k, rng)
        h = find_5hole_quad_hull(S)
        assert frozenset(h.vertices) in brute_holes(S.points)


def test_quad_hull_precondition():
    with pytest.raises(PreconditionViolated):
        find_5hole_quad_hull(validate_general_position(QUAD_FRAME + [(0, 1), (5, 2)]))


def test_nine_hull4plus():
    nine = validate_general_position(regular(9))
    h = find_5hole_9pts_hull4plus(nine)
    H = list(hull_vertices(nine.points))
    idx = sorted(H.index(v) for v in h.vertices)
    # consecutive run around the cycle
    assert any(sorted((i + s) % 9 for i in range(5)) == idx for s in range(9))
    tri = validate_general_position([(-1000, -1000), (1000, -990), (5, 1000)] + [(i * 7 - 20, i * i - 9) for i in range(6)])
    with pytest.raises(PreconditionViolated):
        find_5hole_9pts_hull4plus(tri)


def test_k_redundant_examples(rng):
    T = validate_general_position(PENTAGON + [(40, 1)])
    assert is_k_redundant((40, 1), T)
    for sig in (L333, L351):
        S = load_stored_nohole(sig)
        flags = [is_k_redundant(p, S) for p in S]
        assert flags == [bool(brute_holes([q for q in S if q != p])) for p in S]
        # every convex pentagon here has exactly one interior point, and
        # deleting that point opens a hole, so some point is always redundant
        assert any(flags)
    six = validate_general_position([(0, 0), (10, 0), (5, 9), (5, 3), (-3, 20), (13, 21)])
    p = Point(-3, 20)
    assert not is_k_redundant(p, six)
    with pytest.raises(PointNotInSet):
        is_k_redundant((99, 99), six)


def test_find_5hole_examples(rng):
    S = validate_general_position(random_points(10, rng))
    assert_hole(find_5hole(S), S)
    P = validate_general_position(PENTAGON)
    assert set(find_5hole(P).vertices) == {Point(*p) for p in PENTAGON}
    for sig in (L333, L351):
        assert find_5hole(load_stored_nohole(sig)) is None
    with pytest.raises(PreconditionViolated):
        find_5hole(validate_general_position(PENTAGON[:4]))


def test_find_5hole_oracle_equivalence(rng, caplog):
    caplog.set_level(logging.WARNING)
    for _ in range(300):
        S = validate_general_position(random_points(rng.randint(5, 11), rng, rng.choice([5, 8, 1000])))
        h = find_5hole(S)
        assert (h is not None) == bool(brute_holes(S.points))
        if h is not None:
            assert_hole(h, S)
    assert not [r for r in caplog.records if "structured" in r.getMessage()]


def test_classify_examples(rng):
    c = classify_9points(validate_general_position(regular(9)))
    assert c.has_five_hole
    for sig in (L333, L351):
        c = classify_9points(load_stored_nohole(sig))
        assert not c.has_five_hole and c.signature == sig
    for _ in range(50):
        S = framed(QUAD_FRAME, 5, rng)
        assert classify_9points(S).has_five_hole
    with pytest.raises(PreconditionViolated):
        classify_9points(validate_general_position(PENTAGON))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(-12, 12), st.integers(-12, 12)), min_size=9, max_size=9, unique=True))
def test_classify_agrees_with_brute_force(pts):
    try:
        S = validate_general_position(pts)
    except Exception:
        return
    c = classify_9points(S)
    assert c.has_five_hole == bool(brute_holes(S.points))
    if not c.has_five_hole:
        assert c.signature in (L333, L351)
