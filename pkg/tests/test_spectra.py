import math
import random

import numpy as np
import pytest

from circdd.errors import NotAUnit, TooLarge, UnstableClassification
from circdd.families import construct_family
from circdd.graph import make_graph, units
from circdd.spectra import (
    Inertia,
    Spectrum,
    apply_multiplier,
    inertia,
    multiplier_isomorphic,
    same_spectrum,
    spectrum,
)


def dense_eigenvalues(graph):
    n = graph.n
    a = np.zeros((n, n))
    for c in graph.connection_set():
        idx = np.arange(n)
        a[idx, (idx + c) % n] = 1
    return np.sort(np.linalg.eigvalsh(a))


def class_reps(k):
    recs = construct_family(9, k, verify=False)
    c1 = next(r for r in recs if r.iso_class == 1)
    c2 = next(r for r in recs if r.iso_class == 2)
    return c1, c2


@pytest.mark.parametrize("n,expected", [(4, [3, -1, -1, -1]), (5, [4, -1, -1, -1, -1])])
def test_complete_graphs(n, expected):
    s = spectrum(make_graph(n, range(1, n // 2 + 1)))
    assert np.allclose(s.sorted(), sorted(expected), atol=1e-12)


def test_k4_inertia():
    assert inertia(spectrum(make_graph(4, [1, 2]))) == Inertia(1, 0, 3)


def test_dense_oracle_n700():
    g = make_graph(700, [1, 5, 197, 223], self_inverse=True)
    s = spectrum(g)
    assert np.allclose(s.sorted(), dense_eigenvalues(g), atol=1e-9)
    assert abs(s.sorted()[-1] - 9) < 1e-9
    assert abs(s.eigenvalues.sum()) < 700 * 1e-12


def test_dense_oracle_odd_order():
    g = make_graph(203, construct_family(6, 5)[0].gens)
    assert np.allclose(spectrum(g).sorted(), dense_eigenvalues(g), atol=1e-9)


@pytest.mark.parametrize("k,first,second", [
    (5, (315, 0, 385), (319, 0, 381)),
    (7, (1215, 0, 1333), (1211, 0, 1337)),
])
def test_table_5h(k, first, second):
    c1, c2 = class_reps(k)
    assert inertia(spectrum(c1.graph)).as_tuple() == first
    assert inertia(spectrum(c2.graph)).as_tuple() == second


def test_unstable_classification_flagged():
    s = Spectrum(np.array([1.0, 5e-8, -1.0]))
    with pytest.raises(UnstableClassification):
        inertia(s)


def test_size_guard():
    g = make_graph(60_000, [1, 7])
    with pytest.raises(TooLarge):
        spectrum(g)
    assert spectrum(g, allow_large=True).n == 60_000


class TestMultipliers:
    def test_table_5g_even_factor(self):
        assert apply_multiplier(1416, (1, 7, 575, 611), 635).gens == (1, 197, 203, 635)

    @pytest.mark.parametrize("u", [1, 1415])
    def test_identity_and_negation(self, u):
        assert apply_multiplier(1416, (1, 7, 575, 611), u).gens == (1, 7, 575, 611)

    def test_not_a_unit(self):
        with pytest.raises(NotAUnit):
            apply_multiplier(1416, (1, 7, 575, 611), 6)

    def test_degree9_k5_set_two(self):
        # set 2 polynomials at k=5: k^3+2k, k^3+3k+1, k^3+k^2+3k+2
        k = 5
        target = (1, k**3 + 2 * k, k**3 + 3 * k + 1, k**3 + k * k + 3 * k + 2)
        assert target == (1, 135, 141, 167)
        u = multiplier_isomorphic(700, (1, 5, 197, 223), target)
        assert u is not None
        assert apply_multiplier(700, (1, 5, 197, 223), u).gens == target
        assert u == min(x for x in range(1, 700) if math.gcd(x, 700) == 1
                        and apply_multiplier(700, (1, 5, 197, 223), x).gens == target)

    @pytest.mark.parametrize("k", [5, 7])
    def test_classes_not_multiplier_equivalent(self, k):
        c1, c2 = class_reps(k)
        assert multiplier_isomorphic(c1.order, c1.gens, c2.gens) is None

    def test_degree8_k2_classes(self):
        assert multiplier_isomorphic(35, (1, 6, 7, 10), (1, 7, 11, 16)) is None

    def test_symmetry(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(20, 600)
            gens = rng.sample(range(1, n // 2), 3)
            if math.gcd(n, *gens) != 1:
                continue
            us = units(n)
            u = int(us[rng.randrange(len(us))])
            img = apply_multiplier(n, gens, u).gens
            assert multiplier_isomorphic(n, gens, img) is not None
            assert multiplier_isomorphic(n, img, gens) is not None


def test_spectrum_invariant_under_multipliers():
    rng = random.Random(17)
    done = 0
    while done < 20:
        n = rng.randint(10, 2000)
        f = rng.randint(1, 4)
        gens = rng.sample(range(1, (n - 1) // 2 + 1), f)
        if math.gcd(n, *gens) != 1:
            continue
        us = units(n)
        u = int(us[rng.randrange(len(us))])
        a = spectrum(make_graph(n, gens))
        b = spectrum(make_graph(n, apply_multiplier(n, gens, u).gens))
        assert same_spectrum(a, b)
        done += 1
