"""Acceptance gate: one test per criterion, each printing a verdict line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines.  All dimension checks are exact; the two runtime budgets are wall
clocks around full claim groups.
"""

import random
import time

import pytest

import oracles
from bbwtilt.affine import AffineWeight, bbw_resolve_affine
from bbwtilt.registry import ClaimRunner, load_registry
from bbwtilt.tensor import decompose_affine, parse_expr
from bbwtilt.tilting import GradedHom, verify_collection
from bbwtilt.weights import (
    bbw_resolve,
    dotted_reflect,
    is_singular,
    serre_dual_weight,
    weight,
)
from test_weights import random_levi_dominant, random_weight


@pytest.fixture(scope="module")
def runner():
    return ClaimRunner(load_registry())


def _announce(num, ok, text):
    print("\n[%s] criterion %d: %s" % ("PASS" if ok else "FAIL", num, text))
    assert ok, text


def test_criterion_1_bbw_suite(runner):
    t0 = time.perf_counter()
    reports = {cid: runner.run(cid) for cid in
               ["bbw.%d" % i for i in range(1, 8)]}
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in reports.values())
    # bbw.2 flags exactly the exception (i, j, k) = (1, -2, 1) with dim 1
    detail2 = [s.detail for s in reports["bbw.2"].steps if "certificate" in s.name][0]
    ok = ok and "(j=-2, k=1): H^1" in detail2 and "dim 1, mult 1" in detail2
    ok = ok and detail2.count("H^") == 1
    # bbw.3 is the matching concrete group
    detail3 = [s.detail for s in reports["bbw.3"].steps][0]
    ok = ok and "{1: 1}" in detail3
    ok = ok and elapsed < 10.0
    _announce(1, ok, "bbw.1-bbw.7 PASS with all-grade certificates, "
                     "single exception (i,j,k)=(1,-2,1) of dim 1, %.2fs" % elapsed)


def test_criterion_2_second_vanishing_lemma(runner):
    r1, r2 = runner.run("bbw2.1"), runner.run("bbw2.2")
    detail = [s.detail for s in r1.steps if "certificate" in s.name][0]
    ok = r1.passed and r2.passed
    ok = ok and "(k=1): H^1 contains (1/2, 1/2, 1/2, 1/2), dim 8" in detail
    detail22 = [s.detail for s in r2.steps if "certificate" in s.name][0]
    ok = ok and "exceptions: none" in detail22
    _announce(2, ok, "bbw2.1 PASS at cutoff 1 with the k=1 exception of dim 8; "
                     "bbw2.2 PASS with no exceptions")


def test_criterion_3_pullback_cohomology_suite(runner):
    reports = {cid: runner.run(cid) for cid in
               ["pretilting.%d" % i for i in range(1, 8)]}
    ok = all(r.passed for r in reports.values())
    detail = " | ".join(s.detail for s in reports["pretilting.3"].steps)
    ok = ok and "dim 1, concentrated in grade 1: True" in detail
    _announce(3, ok, "pretilting.1-7 PASS; the S(-2) group has total dim 1 "
                     "in grade 1")


def test_criterion_4_exceptional_collections(runner):
    r1 = runner.run("collection.first")
    r2 = runner.run("collection.second")
    first = [parse_expr(s) for s in
             ["O(-2)", "O(-1)", "O", "Sv", "S*O(1)", "O(1)", "O(2)", "O(3)"]]
    neg = verify_collection("reversed.first", list(reversed(first)))
    ok = r1.passed and r2.passed and neg.verdict == "FAIL"
    ok = ok and all("64 ordered pairs" in r.steps[0].name for r in (r1, r2))
    _announce(4, ok, "both collections PASS 64 ordered-pair checks; "
                     "the reversed control FAILs")


def test_criterion_5_tilting_theorems(runner):
    t0 = time.perf_counter()
    ids = ["tilting.Tplus.sharp", "tilting.Tminus.flat",
           "tilting.Tplus.flat", "tilting.Tminus.sharp"]
    reports = {cid: runner.run(cid) for cid in ids}
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in reports.values())
    for r in reports.values():
        ok = ok and any("64/64" in s.detail for s in r.steps)
    sharp = reports["tilting.Tminus.sharp"]
    details = {s.name: s.detail for s in sharp.steps}
    tri = details["pair (O(2), Pv-(-1))"]
    ok = ok and "R4 declared triangle" in tri
    ok = ok and "Sym^k(S)*S*O(2k+3) (all grades): PASS" in tri
    ok = ok and "Sym^k(S)*O(2k+5) (all grades): PASS" in tri
    ok = ok and "O(-1) on the quadric: zero in all degrees" in tri
    ok = ok and "R5 flop transfer" in details["pair (P-, Pv-(-1))"]
    ok = ok and elapsed < 120.0
    _announce(5, ok, "all four tilting bundles PASS 64/64 pairs; the hard "
                     "script used the declared triangle and the degree<=2 "
                     "transfer, %.2fs" % elapsed)


def test_criterion_6_graded_end_comparison(runner):
    rep = runner.run("endcompare")
    ok = rep.passed
    details = {s.name: s.detail for s in rep.steps}
    ok = ok and "grade 0 dim 1, grade 1 dim 56" in details.get("spot dimensions", "")
    gh = GradedHom(runner.rules)
    O_, O1 = parse_expr("O"), parse_expr("O(1)")
    ok = ok and [gh.hom(O_, O_, 0), gh.hom(O_, O_, 1)] == [1, 56]
    ok = ok and [gh.hom(O_, O1, 0), gh.hom(O_, O1, 1)] == [8, 224]
    _announce(6, ok, "end-compare at degree 6 PASSes with a consistent offset "
                     "vector; spot dims 1/56 and 8/224 match the dimension "
                     "formula exactly")


def test_criterion_7_property_suites(runner):
    ok = True
    # 200-case Serre duality
    rng = random.Random(987654)
    for _ in range(200):
        w = random_levi_dominant(rng, span=16)
        r, rd = bbw_resolve(w), bbw_resolve(serre_dual_weight(w))
        got = {r.degree: r.dim} if not r.singular else {}
        dual = {6 - rd.degree: rd.dim} if not rd.singular else {}
        ok = ok and got == dual
    # 200-case LR dimension multiplicativity
    from bbwtilt.tensor import gl_dim, lr_decompose

    rng = random.Random(20240)
    for _ in range(200):
        a = tuple(sorted((rng.randint(-3, 3) for _ in range(4)), reverse=True))
        b = tuple(sorted((rng.randint(-3, 3) for _ in range(4)), reverse=True))
        total = sum(m * gl_dim(c) for c, m in lr_decompose(a, b))
        ok = ok and total == gl_dim(a) * gl_dim(b)
    # exhaustive dotted involution over all walls, 100 random weights
    rng = random.Random(271828)
    for _ in range(100):
        w = random_weight(rng)
        for i in (1, 2, 3, 4):
            ok = ok and dotted_reflect(i, dotted_reflect(i, w)) == w
    # affine/concrete agreement for every registry family at k <= 10
    reg = load_registry()
    for claim in reg.claims.values():
        if claim.kind != "vanishing":
            continue
        fam = parse_expr(claim.fields["family"])
        dec = decompose_affine(fam)
        jmin = int(claim.fields["jmin"]) if "jmin" in claim.fields else None
        for coords, _ in dec.families:
            aw = AffineWeight(coords, kmin=4, jmin=jmin)
            res = bbw_resolve_affine(aw)
            for k in range(4, 11):
                for j in ([None] if jmin is None else range(jmin, jmin + 6)):
                    params = {"k": k} if j is None else {"k": k, "j": j}
                    ok = ok and res.outcome_at(**params) == bbw_resolve(aw.at(k=k, j=j))
    # singularity against the 192-element group, 100 random weights
    rng = random.Random(314159)
    for _ in range(100):
        w = random_weight(rng)
        ok = ok and is_singular(w) == oracles.brute_singular(w.coords)
    _announce(7, ok, "Serre duality x200, LR multiplicativity x200, dotted "
                     "involution x400, affine/concrete agreement for all "
                     "registry families at k<=10, singularity oracle x100 "
                     "-- all exact")
