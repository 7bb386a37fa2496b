import random
from fractions import Fraction

import networkx as nx
import pytest

from lced.arboricity import (
    ForestCover,
    arboricity_exact,
    check_pg_arboricity_bound,
    degeneracy_order,
    forest_cover,
    has_dense_subset,
    power_ratio,
    within_power_bound,
)
from lced.errors import ArgumentError
from lced.greedy import generate_parallel_greedy

from oracles import brute_arboricity

K4 = [(u, v) for u in range(4) for v in range(u + 1, 4)]


def test_edgeless():
    assert arboricity_exact(5, []) == 0


def test_tree():
    t = nx.random_labeled_tree(12, seed=1)
    edges = list(t.edges())
    assert arboricity_exact(12, edges) == 1
    assert forest_cover(12, edges).size == 1


def test_k4():
    assert arboricity_exact(4, K4) == 2
    cover = forest_cover(4, K4)
    assert cover.size <= 4
    cover.check(4, K4)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_complete_graphs(n):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    assert arboricity_exact(n, edges) == -(-n // 2)


def test_dense_subset_threshold():
    assert has_dense_subset(4, K4, 1)
    assert not has_dense_subset(4, K4, 2)


def test_dense_part_hidden_in_sparse_graph():
    # K5 plus a long pendant path: density comes only from the K5
    edges = [(u, v) for u in range(5) for v in range(u + 1, 5)] + [(i, i + 1) for i in range(4, 12)]
    assert arboricity_exact(13, edges) == 3


def test_matches_brute_force():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 9)
        p = rng.random()
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        assert arboricity_exact(n, edges) == brute_arboricity(n, edges)


def test_cover_bounded_by_degeneracy():
    rng = random.Random(8)
    for _ in range(30):
        n = rng.randint(3, 20)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
        if not edges:
            continue
        cover = forest_cover(n, edges)
        cover.check(n, edges)
        alpha = arboricity_exact(n, edges)
        assert alpha <= cover.size <= max(1, 2 * alpha - 1)
        assert cover.size == degeneracy_order(n, edges)[1]


def test_check_catches_bad_covers():
    with pytest.raises(AssertionError):
        ForestCover(((0, 1, 2),)).check(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(AssertionError):
        ForestCover(((0,),)).check(3, [(0, 1), (1, 2)])
    with pytest.raises(AssertionError):
        ForestCover(((0,), (0, 1))).check(3, [(0, 1), (1, 2)])


def test_cover_requires_simple_graph():
    with pytest.raises(ArgumentError):
        forest_cover(2, [(0, 1), (1, 0)])


def test_power_bound_exact():
    # 4 <= 1 * 2 * 4**(2/2) = 8
    assert within_power_bound(4, 2, 4, 1)
    assert not within_power_bound(9, 2, 4, 1)
    # boundary: 8 <= 8
    assert within_power_bound(8, 2, 4, 1)
    assert within_power_bound(Fraction(1, 2), 3, 1, Fraction(1, 6))
    with pytest.raises(ArgumentError):
        within_power_bound(1, Fraction(5, 2), 4, 1)
    assert power_ratio(8, 2, 4) == pytest.approx(1.0)


def test_pg_bound_report():
    seq = generate_parallel_greedy(40, 4, 15, 2)
    rep = check_pg_arboricity_bound(seq, 4, 1)
    assert rep.ok
    assert rep.value == arboricity_exact(seq.n, seq.edge_set()) >= 1
