import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circdd.bounds import (
    bounds_record,
    cj_lower_bound,
    lee_sphere_closed_form,
    lee_sphere_recurrence,
    lee_sphere_size,
    mac_upper_bound,
    predicted_leading_terms,
)
from circdd.errors import DiameterTooSmall, InvalidDimension, UnsupportedDegree
from circdd.graph import diameter, make_graph


def brute_lee(f, k):
    return sum(1 for p in itertools.product(range(-k, k + 1), repeat=f) if sum(map(abs, p)) <= k)


def poly_at(coeffs, den, k):
    v = Fraction(sum(c * k**i for i, c in enumerate(reversed(coeffs))), den)
    assert v.denominator == 1
    return int(v)


TABLE_1 = {
    2: ([2, 1], 1),
    3: ([4, 0], 1),
    4: ([2, 2, 1], 1),
    5: ([4, 0, 2], 1),
    6: ([4, 6, 8, 3], 3),
    7: ([8, 0, 16, 0], 3),
    8: ([2, 4, 10, 8, 3], 3),
    9: ([4, 0, 20, 0, 6], 3),
}

CJ6 = {0: [32, 24, 18, 0], 1: [32, -72, 66, -26], 2: [32, -168, 306, -196]}
CJ8 = {0: [1, -15, 85, -215, 204], 1: [1, -3, 4, -2, 0], 2: [1, -7, 19, -23, 10], 3: [1, -11, 46, -86, 60]}


@pytest.mark.parametrize("f,k", [(f, k) for f in range(1, 5) for k in range(0, 7)])
def test_lee_sphere_brute_force(f, k):
    assert lee_sphere_size(f, k) == brute_lee(f, k)


def test_lee_sphere_examples():
    assert lee_sphere_size(1, 5) == 11
    assert lee_sphere_size(4, 2) == 41
    assert lee_sphere_size(4, 3) == 129
    assert lee_sphere_size(3, 0) == 1


def test_recurrence_equals_closed_form():
    for f in range(1, 9):
        for k in range(0, 201):
            assert lee_sphere_recurrence(f, k) == lee_sphere_closed_form(f, k)


def test_invalid_dimension():
    with pytest.raises(InvalidDimension):
        lee_sphere_size(0, 3)


@pytest.mark.parametrize("f", [1, 2, 3, 4])
def test_asymptotic_volume(f):
    k = 500
    ratio = lee_sphere_size(f, k) * math.factorial(f) / (2**f * k**f)
    assert abs(ratio - 1) < 0.05


@pytest.mark.parametrize("d", sorted(TABLE_1))
def test_mac_table_1(d):
    coeffs, den = TABLE_1[d]
    for k in range(1, 61):
        assert mac_upper_bound(d, k) == poly_at(coeffs, den, k)


def test_mac_examples():
    assert mac_upper_bound(8, 2) == 41
    assert mac_upper_bound(9, 2) == 50
    assert mac_upper_bound(2, 7) == 15
    for f in range(1, 6):
        assert mac_upper_bound(2 * f, 7) == lee_sphere_size(f, 7)


def test_cj_residue_expansions():
    for k in range(3, 41):
        assert cj_lower_bound(6, k).order == poly_at(CJ6[k % 3], 27, k), k
    for k in range(4, 41):
        assert cj_lower_bound(8, k).order == poly_at(CJ8[k % 4], 2, k), k


@pytest.mark.parametrize("d,k,order,gens", [
    (6, 6, 292, (1, 8, 64)),
    (8, 8, 170, (1, 4, 16, 64)),
    (6, 3, 42, (1, 4, 16)),
])
def test_cj_examples(d, k, order, gens):
    cj = cj_lower_bound(d, k)
    assert cj.order == order
    assert cj.witness.gens == gens


def test_cj_degenerate_parameter():
    # a = 0 for degree 8, k = 4: the bound is trivial
    cj = cj_lower_bound(8, 4)
    assert cj.order == 0 and cj.witness is None and cj.cj_a == 0


@pytest.mark.parametrize("d", [6, 8])
def test_cj_witness_diameter(d):
    f = d // 2
    for k in range(f, 21):
        cj = cj_lower_bound(d, k)
        assert cj.order <= mac_upper_bound(d, k)
        if cj.witness is not None:
            assert diameter(make_graph(cj.order, cj.witness.gens)) <= k


@pytest.mark.parametrize("d,k,err", [(7, 5, UnsupportedDegree), (4, 5, UnsupportedDegree),
                                     (8, 3, DiameterTooSmall), (6, 2, DiameterTooSmall)])
def test_cj_errors(d, k, err):
    with pytest.raises(err):
        cj_lower_bound(d, k)


def test_predicted_leading_terms():
    assert predicted_leading_terms(8) == (Fraction(1, 2), Fraction(1))
    assert predicted_leading_terms(10) == (Fraction(512, 3125), Fraction(1280, 3125))
    assert predicted_leading_terms(3) == (Fraction(4), Fraction(0))
    assert predicted_leading_terms(6) == (Fraction(32, 27), Fraction(16, 9))


def test_bounds_record():
    b = bounds_record(8, 5)
    assert (b.upper, b.lower, b.lee_sphere, b.dimension) == (681, 170, 681, 4)
    assert b.cj_witness.gens == (1, 4, 16, 64)
    odd = bounds_record(9, 3)
    assert odd.lower is None and odd.upper == lee_sphere_size(4, 3) + lee_sphere_size(4, 2)


@given(st.integers(1, 8), st.integers(1, 60))
def test_square_recurrence(f, k):
    if f > 1:
        assert lee_sphere_size(f, k) == (lee_sphere_size(f, k - 1) + lee_sphere_size(f - 1, k)
                                         + lee_sphere_size(f - 1, k - 1))
