"""Acceptance criteria 1-8.  Each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines appear in
the terminal summary (and directly on stdout with ``-s``).
"""

import random
import time
from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ACCEPTANCE_LINES
from limcone.conrep import ConicalRepModel, restrict_to_level
from limcone.errors import NotConsistent
from limcone.limits import (
    DirectSystemSpec,
    ProfiniteWeight,
    TailRule,
    is_smooth_weight,
    restrict_weight,
    strictly_increasing,
)
from limcone.matrixlie import verify_row
from limcone.matrixlie.analysis import check_theta, eigensplit
from limcone.matrixlie.realizations import realize
from limcone.measure import (
    CylinderMeasure,
    atom_mass,
    build_point_measure,
    build_rec_measure,
    extract_norms,
    measure_from_norms,
    validate_measure,
)
from limcone.rootsys import build_system, is_dominant_integral, to_fundamental_coords
from limcone.table import ROWS
from limcone.treeset import Smooth, TreePath, decompose_smooth, is_isolated, tree_from_shape
from oracles import (
    GROWING_C,
    all_small_trees,
    combination,
    divisibility_dominant,
    enumerate_paths,
    listed_fundamental,
)

MIN = {"A": 1, "B": 1, "C": 1, "D": 2}
HALF = Fraction(1, 2)


def report(number, title, ok, elapsed, limit=None, detail=""):
    timing = f"{elapsed:.2f}s" + (f" (limit {limit}s)" if limit else "")
    ok = ok and (limit is None or elapsed < limit)
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{timing}]"
    if detail:
        line += f"  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_criterion_1_fundamental_weight_tables():
    start = time.perf_counter()
    bad = []
    for kind in "ABCD":
        for r in range(MIN[kind], 9):
            sys_ = build_system(kind, r, warn=False)
            for i in range(1, r + 1):
                got = sys_.fundamental_weights[i - 1].coords
                if got != listed_fundamental(kind, r, i):
                    bad.append(f"{kind}{r} xi_{i}")
    ok = report(1, "fundamental weights equal the listed truncations", not bad, time.perf_counter() - start, 1,
                ", ".join(bad[:5]))
    assert ok, bad


def test_criterion_2_semilattice():
    start = time.perf_counter()
    bad, count = [], 0
    for kind in "ABCD":
        for r in range(MIN[kind], 5):
            sys_ = build_system(kind, r, warn=False)
            for coeffs in product(range(4), repeat=r):
                # the exact box plus one off-lattice shift of the first coefficient
                for shift in (0, HALF):
                    c = (coeffs[0] + shift,) + coeffs[1:]
                    lam = sys_.weight(combination(kind, r, c))
                    count += 1
                    if is_dominant_integral(sys_, lam) != divisibility_dominant(kind, r, lam.coords):
                        bad.append((kind, r, c))
                    if is_dominant_integral(sys_, lam) != (shift == 0):
                        bad.append((kind, r, c))
    ok = report(2, f"dominance agrees with the divisibility oracle on {count} weights", not bad,
                time.perf_counter() - start, 5)
    assert ok, bad[:5]


_c3 = {"examples": 0, "failures": 0}


@settings(max_examples=1000, deadline=None, derandomize=True)
@given(st.sampled_from("ABCD"), st.integers(0, 7), st.data())
def _restriction_property(kind, extra, data):
    r = min(MIN[kind] + extra, 8)
    sys_ = build_system(kind, r, warn=False)
    coeffs = data.draw(st.lists(st.integers(0, 9), min_size=r, max_size=r))
    lam = sys_.weight(combination(kind, r, coeffs))
    k = data.draw(st.integers(MIN[kind], r))
    low = restrict_weight(lam, k)
    low_sys = build_system(kind, k, warn=False)
    _c3["examples"] += 1
    good = is_dominant_integral(low_sys, low) and to_fundamental_coords(low_sys, low) == tuple(
        Fraction(c) for c in coeffs[:k]
    )
    if not good:
        _c3["failures"] += 1
    assert good


def test_criterion_3_restriction_consistency():
    start = time.perf_counter()
    ok = True
    try:
        _restriction_property()
    except AssertionError:
        ok = False
    ok = report(3, f"restriction commutes with truncation ({_c3['examples']} examples)", ok and _c3["examples"] >= 1000,
                time.perf_counter() - start, 5)
    assert ok


def _oracle_bound(kind, spec, head, levels=10):
    best = Fraction(0)
    for n in range(1, levels + 1):
        r = spec.rank(n)
        coeffs = [head[j] if j < len(head) else 0 for j in range(r)]
        v = combination(kind, r, coeffs)
        if kind == "A":
            v = tuple(x - v[0] for x in v)
        best = max(best, max(abs(x) for x in v))
    return best


def test_criterion_4_smoothness():
    start = time.perf_counter()
    bad = []
    for kind in "ABCD":
        for step in (1, 2):
            spec = DirectSystemSpec(kind, (MIN[kind],), f"step{step}")
            for head in product(range(3), repeat=3):
                v = is_smooth_weight(ProfiniteWeight(spec, head))
                if not v.smooth or v.bound != _oracle_bound(kind, spec, head):
                    bad.append(("zero", kind, step, head))
                w = is_smooth_weight(ProfiniteWeight(spec, head, TailRule("constant", 1)))
                if w.smooth or not strictly_increasing(n for _, n in w.witness):
                    bad.append(("constant", kind, step, head))
    ok = report(4, "zero tails accepted with the oracle bound, constant tails rejected", not bad,
                time.perf_counter() - start)
    assert ok, bad[:5]


def test_criterion_5_measure_suite():
    start = time.perf_counter()
    trees = all_small_trees()
    bad = []
    pairs = 0
    for shape, name, tree in trees:
        rec = build_rec_measure(tree)
        if rec.total != 1 or not validate_measure(rec).ok:
            bad.append((shape, name, "rec"))
        paths = tree.represented_paths()
        iso = {x: is_isolated(tree, x) for x in paths}
        for x in paths:
            if (atom_mass(rec, x) > 0) != iso[x]:
                bad.append((shape, name, "rec atom", x))
        if name == "chain":
            continue
        # every open represented path plus one detour below the first k-ary leaf
        open_paths = [x for x in paths if not iso[x]]
        if open_paths:
            open_paths.append(TreePath(open_paths[0].indices, (1,)))
        point = {}
        for x in open_paths:
            mx = build_point_measure(tree, x)
            point[x] = mx
            if mx.total != 1 or not validate_measure(mx).ok or atom_mass(mx, x) != HALF:
                bad.append((shape, name, "point", x))
        # the null-set table: rec misses every open point, mu_x sees x only
        for x in open_paths:
            if atom_mass(rec, x) != 0:
                bad.append((shape, name, "rec sees", x))
            for y in open_paths:
                if y != x:
                    pairs += 1
                    if atom_mass(point[x], y) != 0:
                        bad.append((shape, name, "mu_x sees y", x, y))
    ok = report(5, f"measure suite on {len(trees)} trees, {pairs} point pairs", not bad,
                time.perf_counter() - start, 30)
    assert ok, bad[:5]


def _random_measure(rng):
    shape = [rng.randint(1, 3)]
    width = shape[0]
    for _ in range(rng.randint(1, 3)):
        parents = [p for p in range(width) for _ in range(rng.randint(1, 3))]
        shape.append(parents)
        width = len(parents)
    tree = tree_from_shape(GROWING_C, shape)
    leaves = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in tree.levels[-1]]
    total = sum(leaves)
    rows = [tuple(v / total for v in leaves)]
    for lv in range(tree.depth - 1, 0, -1):
        below = rows[0]
        rows.insert(0, tuple(sum(below[c] for c in tree.children(lv, i)) for i in range(len(tree.levels[lv - 1]))))
    return CylinderMeasure(tree, tuple(rows))


def test_criterion_6_disintegration_round_trip():
    start = time.perf_counter()
    rng = random.Random(20261016)
    bad = []
    for _ in range(100):
        mu = _random_measure(rng)
        if not validate_measure(mu).ok or measure_from_norms(mu.tree, extract_norms(mu)) != mu:
            bad.append(mu)
        if mu.tree.depth > 1:
            norms = extract_norms(mu)
            lv, i = next((lv, i) for (lv, i) in sorted(norms) if lv == mu.tree.depth)
            parent = mu.tree.levels[lv - 1][i].parent
            norms[(lv, i)] += 1
            try:
                measure_from_norms(mu.tree, norms)
                bad.append(("accepted", mu))
            except NotConsistent as exc:
                if exc.node != (lv - 1, parent):
                    bad.append(("wrong witness", exc.node))
    norms = {(1, 0): HALF, (1, 1): Fraction(1, 3), (2, 0): HALF, (2, 1): Fraction(1, 3)}
    try:
        measure_from_norms(tree_from_shape(GROWING_C, [2, [0, 1]]), norms)
        bad.append("level-1 sum 5/6 accepted")
    except NotConsistent as exc:
        if exc.node != (1, None):
            bad.append(("wrong witness", exc.node))
    ok = report(6, "norms round trip on 100 random measures, inconsistent maps rejected", not bad,
                time.perf_counter() - start)
    assert ok, bad[:3]


def test_criterion_7_matrix_realizations():
    start = time.perf_counter()
    failures = []
    for row in ROWS:
        rep = verify_row(row)
        for lv in rep["levels"]:
            real = realize(row, lv["level"])
            th = check_theta(real)
            if not (th.involutive and th.automorphism and th.closed):
                failures.append(f"{row}@{lv['level']} theta")
            if not eigensplit(real).brackets_ok:
                failures.append(f"{row}@{lv['level']} brackets")
            if not lv["maximal_abelian"]:
                failures.append(f"{row}@{lv['level']} a not maximal")
            if not lv["g0_ok"]:
                failures.append(f"{row}@{lv['level']} g0")
            if not lv["type_ok"]:
                failures.append(f"{row}@{lv['level']} type {lv['found_type']} (listed {lv['expected_type']})")
        for e in rep["embedding"]:
            if e["form"] != e["claimed"]:
                failures.append(f"{row}@{e['level']} form {e['form']} (claimed {e['claimed']})")
        for a in rep["admissibility"]:
            if a["verdict"] != "admissible" or not a["certificate"]["m_k in m_m"]:
                failures.append(f"{row} {a['k']}->{a['m']} {a['verdict']}")
        for pic in rep.get("pictures", ()):
            if not pic["ok"]:
                failures.append(f"{row}@{pic['level']} pictures")
    ok = report(7, "matrix realizations of all 15 rows", not failures, time.perf_counter() - start, 120,
                "; ".join(failures))
    assert ok, failures


def test_criterion_8_tree_decomposition():
    start = time.perf_counter()
    bad = []
    count = 0
    for shape, name, tree in all_small_trees():
        if name != "chain":
            continue
        count += 1
        dec = decompose_smooth(tree)
        if not isinstance(dec, Smooth) or {x.indices for x in dec.paths} != enumerate_paths(tree):
            bad.append((shape, "paths"))
            continue
        models = [ConicalRepModel(tree, build_rec_measure(tree))]
        models += [ConicalRepModel(tree, build_point_measure(tree, x)) for x in tree.represented_paths()[:2]]
        for rep in models:
            for n in range(1, tree.depth + 1):
                if sum(s.mass for s in restrict_to_level(rep, n)) != 1:
                    bad.append((shape, "mass", n))
    ok = report(8, f"decompose_smooth path sets and level mass totals on {count} bounded trees", not bad,
                time.perf_counter() - start)
    assert ok, bad[:5]
