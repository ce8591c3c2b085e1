"""Acceptance run: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (``pytest tests/test_acceptance.py -v -s``) or directly
(``python tests/test_acceptance.py``).
"""

import itertools
import os
import random
import subprocess
import sys
import time

import pytest

from pentahole.cli_io import load_stored_nohole, random_general_position
from pentahole.disjoint_pentagons import (
    check_pair,
    check_partition,
    disjoint_pair_oracle,
    find_two_disjoint_5holes,
    separable_partition,
    verify_witness,
    witness_5n_47,
    witness_doubling,
)
from pentahole.geom_core import C_MAX, L333, L351, orientation
from pentahole.holes import _first_hole, classify_9points, enumerate_k_holes, find_5hole, is_empty_convex

# coordinate ranges mixed into the random sets: generic, coarse and cramped grids
GRIDS = (C_MAX, 1000, 40)


def rand_set(n, seed):
    c = GRIDS[seed % len(GRIDS)]
    if c == 40 and n > 50:
        c = 1000
    return random_general_position(n, seed, c)


def crit1():
    t = time.perf_counter()
    bad = 0
    for seed in range(10_000):
        S = rand_set(10, seed)
        h = find_5hole(S)
        if h is None or h.k != 5 or not is_empty_convex(h.vertices, S):
            bad += 1
    dt = time.perf_counter() - t
    return bad == 0 and dt < 60, f"10^4 ten-point sets, {bad} failures, {dt:.1f}s (limit 60s)"


def crit2():
    t = time.perf_counter()
    bad = 0
    for seed in range(1000):
        S = rand_set(19, 10**6 + seed)
        pair = find_two_disjoint_5holes(S)
        if pair is None or check_pair(pair, S):
            bad += 1
    dt = time.perf_counter() - t
    return bad == 0 and dt < 300, f"10^3 nineteen-point sets, {bad} failures, {dt:.1f}s (limit 300s)"


def crit3():
    bad = 0
    ms = list(range(1, 11)) + [19]
    for m in ms:
        for i in range(100):
            S = rand_set(2 * m + 9, 2 * 10**6 + 1000 * m + i)
            try:
                part = separable_partition(S, m)
            except Exception:
                bad += 1
                continue
            if check_partition(part, S):
                bad += 1
    return bad == 0, f"100 sets for each m in {{1..10, 19}}, {bad} failures"


def crit4():
    bad = 0
    for seed in range(100):
        S = rand_set(47, 3 * 10**6 + seed)
        rep = witness_5n_47(S)
        if len(rep.holes) < 5 or not verify_witness(rep, S).ok:
            bad += 1
    return bad == 0, f"100 sets of 47 points, {bad} with fewer than 5 verified disjoint holes"


def crit5():
    t = time.perf_counter()
    rng = random.Random(5)
    bad = 0
    for i in range(200):
        n = rng.randint(9, 300)
        S = rand_set(n, 4 * 10**6 + i)
        rep = witness_5n_47(S)
        if len(rep.holes) < 5 * n // 47 or not verify_witness(rep, S).ok:
            bad += 1
    dt = time.perf_counter() - t
    return bad == 0 and dt < 900, f"200 sets, n uniform in [9,300], {bad} failures, {dt:.1f}s (limit 900s)"


def crit6():
    bad = []
    for n, need in ((19, 2), (47, 5)):
        for i in range(50):
            S = rand_set(n, 5 * 10**6 + 100 * n + i)
            rep = witness_doubling(S)
            if len(rep.holes) < need or not verify_witness(rep, S).ok:
                bad.append(n)
    S = rand_set(103, 5 * 10**6 + 103)
    rep = witness_doubling(S)
    big = len(rep.holes)
    if big < 11 or not verify_witness(rep, S).ok:
        bad.append(103)
    return not bad, f"50 sets at n=19 (>=2) and n=47 (>=5), n=103 gave {big} (>=11); failures {bad}"


def crit7():
    rng = random.Random(7)
    hole_mismatch = pair_mismatch = 0
    for i in range(1000):
        n = rng.randint(5, 12)
        S = random_general_position(n, 6 * 10**6 + i, rng.choice((6, 10, 40, 1000)))
        if (find_5hole(S) is not None) != bool(enumerate_k_holes(S, 5)):
            hole_mismatch += 1
        if n >= 10 and (find_two_disjoint_5holes(S) is not None) != (disjoint_pair_oracle(S) is not None):
            pair_mismatch += 1
    ok = hole_mismatch == pair_mismatch == 0
    return ok, f"10^3 sets with n<=12: {hole_mismatch} hole mismatches, {pair_mismatch} pair mismatches"


def crit8():
    bad_sig = mismatch = nohole = 0
    sets = [load_stored_nohole(L333), load_stored_nohole(L351)]
    sets_iter = itertools.chain(sets, (rand_set(9, 7 * 10**6 + i) for i in range(100_000)))
    for S in sets_iter:
        c = classify_9points(S)
        if c.has_five_hole != (_first_hole(S.points) is not None):
            mismatch += 1
        if not c.has_five_hole:
            nohole += 1
            if c.signature not in (L333, L351):
                bad_sig += 1
    ok = bad_sig == mismatch == 0 and nohole >= 2
    return ok, f"10^5 nine-point sets + 2 stored: {mismatch} oracle mismatches, {bad_sig} bad signatures, {nohole} without a hole"


def crit9():
    rng = random.Random(9)
    ext = (-C_MAX, C_MAX, -C_MAX + 1, C_MAX - 1)
    bad = 0
    for _ in range(10**6):
        p, q, r = [(rng.choice(ext) if rng.random() < 0.7 else rng.randint(-C_MAX, C_MAX),
                    rng.choice(ext) if rng.random() < 0.7 else rng.randint(-C_MAX, C_MAX)) for _ in range(3)]
        o = orientation(p, q, r)
        if not (o == orientation(q, r, p) == orientation(r, p, q) == -orientation(p, r, q)):
            bad += 1
    return bad == 0, f"10^6 extreme-coordinate triples, {bad} identity failures"


def crit10():
    import tempfile

    outs = []
    with tempfile.TemporaryDirectory() as d:
        for run in range(2):
            pts = os.path.join(d, f"p{run}.txt")
            rep = os.path.join(d, f"r{run}.json")
            cmds = [
                ["gen", "-n", "94", "--seed", "10", "--out", pts],
                ["witness", "--method", "strip", "--in", pts, "--json", "--out", rep],
            ]
            for c in cmds:
                subprocess.run([sys.executable, "-m", "pentahole", *c], check=True)
            with open(rep, "rb") as fh:
                outs.append(fh.read())
    same = outs[0] == outs[1]
    return same, f"two runs of gen+witness with seed 10: {'identical' if same else 'different'} JSON ({len(outs[0])} bytes)"


CRITERIA = [
    (1, "5-hole in every 10 points", crit1),
    (2, "two disjoint 5-holes in 19 points", crit2),
    (3, "2m+9 separable partition", crit3),
    (4, "F5(47) >= 5", crit4),
    (5, "floor(5n/47) witness bound", crit5),
    (6, "doubling witness bound", crit6),
    (7, "oracle equivalence for n <= 12", crit7),
    (8, "9-point classification", crit8),
    (9, "predicate exactness at extreme coordinates", crit9),
    (10, "byte-identical reports", crit10),
]


def _line(num, name, ok, detail):
    return f"criterion {num:2d} [{'PASS' if ok else 'FAIL'}] {name}: {detail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, name, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(num, name, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
