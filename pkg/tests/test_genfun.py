from fractions import Fraction

import pytest

from gcdim.flavors import EVEN, EVEN_STAR, Flavor, ODD, ODD_STAR, STANDARD_FLAVORS
from gcdim.genfun import (
    Evaluator,
    dims_unrestricted,
    evaluate,
    evaluate_by_terms,
    partition_term,
    total_character_unrestricted,
)
from gcdim.graphs import dim_oracle
from gcdim.partitions import Partition, iter_partitions
from gcdim.rings import RationalRing, ResidueRing
from gcdim.series import BiSeries, Truncation

ALL_VALENCE = {
    "even": Flavor("even", tadpoles=True, multiedges=True, min_valence=0),
    "odd": Flavor("odd", tadpoles=False, multiedges=True, min_valence=0),
}


def test_evaluate_spec_examples(modular_ring):
    t = Truncation(4, 6)
    even_star = evaluate(EVEN_STAR, t, modular_ring).integer_table()
    assert even_star[4][6] == 1  # the complete graph on four vertices
    odd = evaluate(ODD, Truncation(2, 3), modular_ring).integer_table()
    assert odd[2][3] == 1  # the triple edge
    for flavor in STANDARD_FLAVORS.values():
        table = evaluate(flavor, Truncation(3, 4), modular_ring).integer_table()
        assert table[0][0] == 1
        for v in range(4):
            for e in range(5):
                if 2 * e < 3 * v:
                    assert table[v][e] == 0, (flavor.name, v, e)


@pytest.mark.parametrize("name", list(STANDARD_FLAVORS))
def test_dfs_equals_term_sum(name, rational_ring):
    flavor = STANDARD_FLAVORS[name]
    t = Truncation(4, 6)
    a = evaluate(flavor, t, rational_ring).series
    b = evaluate_by_terms(flavor, t, rational_ring).series
    assert a == b


@pytest.mark.parametrize("name", list(STANDARD_FLAVORS))
def test_small_window_against_brute_force(name, modular_ring):
    flavor = STANDARD_FLAVORS[name]
    t = Truncation(5, 7)
    table = evaluate(flavor, t, modular_ring).integer_table()
    for v in range(6):
        for e in range(8):
            assert table[v][e] == dim_oracle(v, e, flavor), (name, v, e)


def test_backend_agreement(rational_ring, modular_ring):
    t = Truncation(6, 9)
    for flavor in (EVEN, ODD_STAR):
        exact = evaluate(flavor, t, rational_ring).integer_table()
        modular = evaluate(flavor, t, modular_ring).integer_table()
        assert exact == modular


def test_integrality_rational(rational_ring):
    t = Truncation(6, 8)
    for name, flavor in STANDARD_FLAVORS.items():
        series = evaluate(flavor, t, rational_ring).series
        for v, e in series.support():
            c = series.coefficient(v, e)
            assert c.denominator == 1 and c >= 0, (name, v, e, c)


def test_partition_term_examples(rational_ring):
    t = Truncation(3, 4)
    ev = Evaluator(EVEN, t, rational_ring)
    assert ev.partition_term(Partition(())) == BiSeries.one(rational_ring, t)
    heavy = Partition.from_multiplicities({4: 1})
    assert ev.partition_term(heavy).is_zero()
    single = partition_term(Partition((1,)), ODD, t, rational_ring)
    support = single.support()
    assert support and min(v for v, _ in support) == 1


def test_enlarging_partition_range_is_sound(rational_ring):
    t = Truncation(3, 5)
    for flavor in (EVEN, ODD):
        ev = Evaluator(flavor, t, rational_ring)
        total = BiSeries.zero(rational_ring, t)
        for j in iter_partitions(t.v_max + 3):  # beyond the window weight
            total = total + ev.partition_term(j)
        assert total * ev.prefactor() == evaluate(flavor, t, rational_ring).series


def test_total_character_examples():
    one_vertex = Partition((1,))
    xi = total_character_unrestricted(one_vertex, "even", 4)
    assert xi == [Fraction(1), Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    assert total_character_unrestricted(Partition(()), "even", 3) == [
        Fraction(1), Fraction(0), Fraction(0), Fraction(0),
    ]
    # two fixed vertices: (1+t)^2 (1+t) = (1+t)^3
    xi2 = total_character_unrestricted(Partition((2,)), "even", 3)
    assert xi2 == [Fraction(1), Fraction(3), Fraction(3), Fraction(1)]


def test_dims_unrestricted_examples():
    even = dims_unrestricted("even", 2, 2)
    assert even[1][1] == 1  # a single tadpole
    assert even[2][2] == 1  # edge plus tadpole is the only surviving class
    odd = dims_unrestricted("odd", 2, 2)
    assert odd[1][1] == 0  # tadpole reversal is odd
    assert odd[2][1] == 1  # the single edge survives (swap is even overall)


@pytest.mark.parametrize("conv", ["even", "odd"])
def test_dims_unrestricted_against_brute_force(conv):
    table = dims_unrestricted(conv, 4, 6)
    flavor = ALL_VALENCE[conv]
    for v in range(5):
        for e in range(7):
            assert table[v][e] == dim_oracle(v, e, flavor), (conv, v, e)


def test_threads_deterministic(modular_ring):
    t = Truncation(8, 12)
    serial = evaluate(ODD, t, modular_ring, threads=1).series
    parallel = evaluate(ODD, t, modular_ring, threads=4).series
    assert serial == parallel


def test_cache_round_trip(tmp_path, modular_ring, rational_ring):
    from gcdim import cache

    t = Truncation(4, 6)
    for ring in (modular_ring, rational_ring):
        result = cache.evaluate_cached(ODD, t, ring, cache_dir=tmp_path)
        hit = cache.load(ODD, t, ring, cache_dir=tmp_path)
        assert hit is not None and hit.series == result.series
    # a stale version header is ignored
    path = cache.store(cache.evaluate_cached(EVEN, t, modular_ring, cache_dir=tmp_path),
                       modular_ring, cache_dir=tmp_path)
    path.write_text("gcdim 0.0.0 stale header\n" + path.read_text().split("\n", 1)[1])
    assert cache.load(EVEN, t, modular_ring, cache_dir=tmp_path) is None
