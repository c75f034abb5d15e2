from fractions import Fraction

import pytest

from circdd.bounds import mac_upper_bound
from circdd.errors import DiameterBelowThreshold, ResidueClassUnavailable
from circdd.families import (
    ExtremalStatus,
    THRESHOLDS,
    construct_family,
    family_order,
    isomorphism_factor,
    set_one,
    verify_family,
)
from circdd.graph import diameter
from circdd.spectra import apply_multiplier, multiplier_isomorphic


def _ev(coeffs, den, k):
    v = Fraction(sum(c * k**i for i, c in enumerate(reversed(coeffs))), den)
    assert v.denominator == 1
    return int(v)


# Orders typed from the printed tables, highest power first.
ORDER_ORACLE = {
    2: lambda k: 2 * k + 1,
    3: lambda k: 4 * k,
    4: lambda k: 2 * k * k + 2 * k + 1,
    5: lambda k: 4 * k * k,
    6: lambda k: _ev({0: [32, 48, 54, 27], 1: [32, 48, 78, 31], 2: [32, 48, 54, 11]}[k % 3], 27, k),
    7: lambda k: _ev({0: [64, 0, 108, 0], 1: [64, 0, 60, -16], 2: [64, 0, 60, 16]}[k % 3], 27, k),
    8: lambda k: _ev([1, 2, 6, 4, 0] if k % 2 == 0 else [1, 2, 6, 6, 1], 2, k),
    9: lambda k: k**4 + 3 * k * k + (2 * k if k % 2 == 0 else 0),
}

TABLE_5A = [35, 104, 248, 528, 984, 1712, 2768, 4280, 6320, 9048, 12552, 17024, 22568, 29408, 37664]
TABLE_5E = [700, 1416, 2548, 4304, 6804, 10320, 15004, 21192, 29068, 39032, 51300, 66336]


@pytest.mark.parametrize("d", range(2, 10))
def test_order_matches_printed_polynomial(d):
    for k in range(max(THRESHOLDS[d], 3), 41):
        assert family_order(d, k) == ORDER_ORACLE[d](k), (d, k)


@pytest.mark.parametrize("d,k,n", [(8, 6, 984), (9, 5, 700), (6, 4, 117)])
def test_order_examples(d, k, n):
    assert family_order(d, k) == n


@pytest.mark.parametrize("d,k", [(7, 2), (9, 4), (6, 1), (5, 1)])
def test_below_threshold(d, k):
    with pytest.raises(DiameterBelowThreshold) as info:
        family_order(d, k)
    assert info.value.threshold == THRESHOLDS[d]


def test_low_degree_orders_relative_to_upper_bound():
    for k in range(1, 30):
        for d in (2, 3, 4):
            assert family_order(d, k) == mac_upper_bound(d, k)
        if k >= 2:
            assert family_order(5, k) == mac_upper_bound(5, k) - 2


@pytest.mark.parametrize("d,k,gens", [
    (8, 4, (1, 61, 72, 76)),
    (8, 3, (1, 16, 20, 27)),
    (7, 4, (1, 5, 31)),
])
def test_construct_examples(d, k, gens):
    recs = construct_family(d, k)
    assert any(r.gens == gens and r.verified for r in recs)


def test_construct_degree9_k6():
    recs = construct_family(9, 6)
    assert {r.iso_class for r in recs} == {1}
    assert any(r.order == 1416 and r.gens == (1, 7, 575, 611) for r in recs)
    g = recs[0].graph
    assert g.degree == 9 and g.generator_set.has_half


def test_degree8_k2_records():
    recs = construct_family(8, 2)
    best = [r for r in recs if r.extremal_status == ExtremalStatus.PROVEN_EXTREMAL]
    assert [r.order for r in best] == [35, 35]
    assert {r.gens for r in best} == {(1, 6, 7, 10), (1, 7, 11, 16)}
    (formula,) = [r for r in recs if r.extremal_status == ExtremalStatus.NOT_OPTIMAL]
    assert formula.order == 32 and formula.iso_class is None
    assert diameter(formula.graph) == 2


@pytest.mark.parametrize("k", range(3, 41))
def test_degree8_diameter_exact(k):
    (rec,) = construct_family(8, k, verify=False)
    assert rec.order == ORDER_ORACLE[8](k)
    assert diameter(rec.graph) == k


@pytest.mark.parametrize("k", range(5, 31))
def test_degree9_all_variants(k):
    recs = construct_family(9, k, verify=False)
    assert {r.iso_class for r in recs} == ({1, 2} if k % 2 else {1})
    for r in recs:
        assert r.order == ORDER_ORACLE[9](k)
        assert len(set(r.gens)) == 4 and all(0 < g < r.order / 2 for g in r.gens)
        if r.order < 200_000:
            assert diameter(r.graph) == k
    # every variant is a multiplier image of set 1 of its class
    for c in {r.iso_class for r in recs}:
        same = [r for r in recs if r.iso_class == c]
        first = same[0]
        for r in same[1:]:
            assert multiplier_isomorphic(r.order, first.gens, r.gens) is not None


def test_residue_availability():
    # set 4 of class 1 only for k = 0, 2 (mod 6)
    assert [r.variant for r in construct_family(9, 6, 1)] == [1, 2, 3, 4]
    assert [r.variant for r in construct_family(9, 10, 1)] == [1, 2, 3]
    with pytest.raises(ResidueClassUnavailable):
        construct_family(9, 9, iso_class=2, variant=1)
    with pytest.raises(ResidueClassUnavailable):
        construct_family(9, 5, iso_class=2, variant=2)
    with pytest.raises(ResidueClassUnavailable):
        construct_family(9, 6, iso_class=2)


@pytest.mark.parametrize("k", [5, 6, 7, 8, 12, 15, 17, 21, 25, 27])
def test_tabulated_factors(k):
    n = family_order(9, k)
    for (c, v) in [(1, 2), (1, 3), (1, 4), (2, 2)]:
        try:
            u = isomorphism_factor(9, k, c, v)
        except ResidueClassUnavailable:
            continue
        target = next(r for r in construct_family(9, k, c, v, verify=False))
        assert apply_multiplier(n, set_one(9, k, c), u).gens == target.gens


@pytest.mark.parametrize("d", [6, 7])
def test_three_dimensional_families(d):
    for k in range(THRESHOLDS[d], 31):
        recs = construct_family(d, k, verify=False)
        assert recs
        for r in recs:
            assert r.order == ORDER_ORACLE[d](k)
            assert diameter(r.graph) == k


def test_three_dimensional_class_counts():
    # one class for degree 6 at k = 1 (mod 3) and degree 7 at k = 0 (mod 3)
    for k in range(3, 15):
        n6 = len(construct_family(6, k, verify=False))
        n7 = len(construct_family(7, k, verify=False))
        assert n6 == (1 if k % 3 == 1 else 2)
        assert n7 == (1 if k % 3 == 0 else 2)


def test_verify_family_reports():
    rep = verify_family(8, 2, 16, threads=2)
    assert rep.passed
    assert sorted({e.order for e in rep.entries}) == sorted(set(TABLE_5A) | {32})
    rep2 = verify_family(2, 1, 50)
    assert rep2.passed and len(rep2.entries) == 50
    rep9 = verify_family(9, 5, 16)
    assert rep9.passed
    assert sorted({e.order for e in rep9.entries}) == TABLE_5E


def test_json_record_schema():
    rec = construct_family(9, 6)[0].as_json()
    assert rec == {"n": 1416, "degree": 9, "generators": [1, 7, 575, 611], "diameter": 6,
                   "iso_class": 1, "provenance": rec["provenance"]}


# Table 3F generator sets as printed: (degree, class) -> {k mod 3: [(coeffs, den), ...]}
TABLE_3F = {
    (6, 1): {0: [([4, 3], 3), ([16, 12, 9], 9)], 2: [([4, 1], 3), ([16, 20, 13], 9)]},
    (6, 2): {0: [([8, 6, 0], 9), ([8, 18, 18], 9)], 1: [([8, 2, 8], 9), ([8, 14, 14], 9)],
             2: [([8, -2, 8], 9), ([8, 10, 2], 9)]},
    (7, 1): {1: [([4, -1], 3), ([16, 4, 7], 9)], 2: [([4, 1], 3), ([16, -4, 7], 9)]},
    (7, 2): {0: [([32, -24, 36, -27], 27), ([32, -24, 72, -27], 27)],
             1: [([32, -24, 24, -5], 27), ([32, -24, 60, -41], 27)],
             2: [([32, -24, 0, -25], 27), ([32, -24, 36, 11], 27)]},
}


@pytest.mark.parametrize("key", sorted(TABLE_3F))
def test_table_3f_generators(key):
    d, c = key
    for k in range(3, 25):
        rows = TABLE_3F[key].get(k % 3)
        n = ORDER_ORACLE[d](k)
        if rows is None:
            with pytest.raises(ResidueClassUnavailable):
                construct_family(d, k, c, 1, verify=False)
            continue
        want = sorted({min(x % n, n - x % n) for x in [1] + [_ev(p, q, k) for p, q in rows]})
        (rec,) = construct_family(d, k, c, 1, verify=False)
        assert list(rec.gens) == want, (d, c, k)
