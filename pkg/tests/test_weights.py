"""Weight lattice arithmetic against brute-force oracles."""

import random
from fractions import Fraction

import pytest

import oracles
from bbwtilt.weights import (
    LatticeError,
    POSITIVE_ROOTS,
    RHO,
    Weight,
    bbw_resolve,
    dotted_reflect,
    is_dominant,
    is_levi_dominant,
    is_singular,
    levi_rank,
    parse_weight,
    serre_dual_weight,
    weight,
    weyl_dim_d4,
)


def random_weight(rng, span=16):
    parity = rng.choice((0, 1))
    return Weight(tuple(2 * rng.randint(-span // 2, span // 2) + parity for _ in range(4)))


def random_levi_dominant(rng, span=16):
    while True:
        w = random_weight(rng, span)
        a, b, c, d = w.twice
        b, c, d = sorted((abs(b), abs(c), abs(d)), reverse=True)
        if rng.random() < 0.5:
            d = -d
        cand = Weight((a, b, c, d))
        if is_levi_dominant(cand):
            return cand


def test_lattice_parity_enforced():
    with pytest.raises(LatticeError):
        Weight((1, 0, 0, 0))  # doubled (1,0,0,0) mixes parities
    with pytest.raises(LatticeError):
        weight("1/4", 0, 0, 0)
    assert weight("1/2", "1/2", "1/2", "1/2").twice == (1, 1, 1, 1)


def test_parse_and_serialize_roundtrip():
    w = parse_weight("-7/2,1/2,1/2,1/2")
    assert w.serialize() == ["-7/2", "1/2", "1/2", "1/2"]
    assert parse_weight(",".join(w.serialize())) == w


def test_rho_is_half_sum_of_positive_roots():
    total = [0, 0, 0, 0]
    for r in POSITIVE_ROOTS:
        total = [t + x for t, x in zip(total, r)]
    assert len(POSITIVE_ROOTS) == 12
    assert Weight(tuple(total)) == RHO  # doubled rho = plain sum


def test_dominance():
    assert is_dominant(weight("1/2", "1/2", "1/2", "1/2"))
    assert is_dominant(weight(0, 0, 0, 0))
    assert not is_dominant(weight(-1, 1, 0, 0))
    assert is_dominant(weight(2, 1, 1, -1))


def test_levi_dominance():
    assert is_levi_dominant(weight("-7/2", "1/2", "1/2", "1/2"))
    assert is_levi_dominant(weight(0, 0, 0, 0))
    assert not is_levi_dominant(weight(0, 0, -1, 0))


def test_dotted_reflection_formulas():
    assert dotted_reflect(1, weight(-1, 1, 0, 0)) == weight(0, 0, 0, 0)
    half = weight("-1/2", "-1/2", "-1/2", "-1/2")
    assert dotted_reflect(4, half) == half
    w = weight("-7/2", "1/2", "1/2", "1/2")
    chain = dotted_reflect(3, dotted_reflect(2, dotted_reflect(1, w)))
    assert chain == half
    with pytest.raises(IndexError):
        dotted_reflect(5, w)


def test_dotted_involution_exhaustive():
    rng = random.Random(271828)
    for _ in range(100):
        w = random_weight(rng)
        for i in (1, 2, 3, 4):
            assert dotted_reflect(i, dotted_reflect(i, w)) == w


def test_singularity_examples():
    assert is_singular(weight("-1/2", "-1/2", "-1/2", "-1/2"))
    assert not is_singular(weight(0, 0, 0, 0))
    assert is_singular(weight(-1, 1, 1, 1))


def test_singularity_against_reflections_and_full_group():
    rng = random.Random(314159)
    refls = oracles.reflections()
    for _ in range(100):
        w = random_weight(rng)
        mu = tuple(c + r for c, r in zip(w.coords, oracles.RHO))
        by_reflection = any(r(mu) == mu for r in refls)
        by_group = oracles.brute_singular(w.coords)
        assert is_singular(w) == by_reflection == by_group


def test_bbw_resolve_examples():
    r = bbw_resolve(weight(-1, 1, 0, 0))
    assert (r.singular, r.degree, r.dominant, r.dim) == (False, 1, weight(0, 0, 0, 0), 1)
    r = bbw_resolve(weight("1/2", "1/2", "1/2", "1/2"))
    assert (r.degree, r.dim) == (0, 8)
    assert bbw_resolve(weight("-7/2", "1/2", "1/2", "1/2")).singular
    r = bbw_resolve(weight(-6, 0, 0, 0))
    assert (r.degree, r.dominant, r.dim) == (6, weight(0, 0, 0, 0), 1)


def test_bbw_resolve_requires_levi_dominant():
    with pytest.raises(ValueError):
        bbw_resolve(weight(0, 0, -1, 0))


def test_bbw_resolve_against_brute_force():
    rng = random.Random(161803)
    for _ in range(100):
        w = random_levi_dominant(rng, span=10)
        got = bbw_resolve(w)
        singular, degree, dom = oracles.brute_resolve(w.coords)
        assert got.singular == singular
        if not singular:
            assert got.degree == degree
            assert got.dominant.coords == dom
            assert 0 <= got.degree <= 6


def test_bbw_degree_reached_by_counted_reflections():
    # the dominant representative is exactly `degree` dotted steps away
    rng = random.Random(577215)
    for _ in range(60):
        w = random_levi_dominant(rng, span=10)
        r = bbw_resolve(w)
        if r.singular:
            continue
        frontier = {w}
        for _ in range(r.degree):
            frontier = {dotted_reflect(i, v) for v in frontier for i in (1, 2, 3, 4)}
        assert r.dominant in frontier


def test_weyl_dim_examples():
    assert weyl_dim_d4(weight(0, 0, 0, 0)) == 1
    assert weyl_dim_d4(weight("3/2", "1/2", "1/2", "1/2")) == 56
    assert weyl_dim_d4(weight(2, 1, 1, 1)) == 224
    assert weyl_dim_d4(weight(1, 0, 0, 0)) == 8
    assert weyl_dim_d4(weight(1, 1, 0, 0)) == 28
    with pytest.raises(ValueError):
        weyl_dim_d4(weight(-1, 0, 0, 0))


def test_weyl_dim_against_freudenthal():
    rng = random.Random(424242)
    for _ in range(20):
        parts = sorted((rng.randint(0, 3) for _ in range(4)), reverse=True)
        if rng.random() < 0.5:
            lam = weight(*parts)
        else:
            lam = weight(*(Fraction(2 * p + 1, 2) for p in sorted(
                (rng.randint(0, 2) for _ in range(4)), reverse=True)))
        assert weyl_dim_d4(lam) == oracles.freudenthal_dim(lam.coords)


def test_levi_rank():
    assert levi_rank(weight(3, 0, 0, 0)) == 1
    assert levi_rank(weight(-9, 0, 0, 0)) == 1
    assert levi_rank(weight("-1/2", "1/2", "1/2", "1/2")) == 4
    assert levi_rank(weight("1/2", "1/2", "1/2", "-1/2")) == 4
    with pytest.raises(ValueError):
        levi_rank(weight(0, 0, -1, 0))


def test_serre_dual_weight():
    assert serre_dual_weight(weight(0, 0, 0, 0)) == weight(-6, 0, 0, 0)
    assert serre_dual_weight(weight("1/2", "1/2", "1/2", "1/2")) == weight(
        "-13/2", "1/2", "1/2", "-1/2"
    )
    assert serre_dual_weight(weight(2, 0, 0, 0)) == weight(-8, 0, 0, 0)


def test_serre_duality_suite():
    # dim H^i(F_w) == dim H^{6-i}(F_dual) for all i, 200 random weights
    rng = random.Random(987654)
    for _ in range(200):
        w = random_levi_dominant(rng, span=16)
        r = bbw_resolve(w)
        rd = bbw_resolve(serre_dual_weight(w))
        table = {i: 0 for i in range(7)}
        dual_table = {i: 0 for i in range(7)}
        if not r.singular:
            table[r.degree] = r.dim
        if not rd.singular:
            dual_table[rd.degree] = rd.dim
        for i in range(7):
            assert table[i] == dual_table[6 - i], (w, table, dual_table)
