import random
from fractions import Fraction

import networkx as nx
import pytest

from lced.corpus import dumbbell, random_cut_sequence, random_graph, random_weighting
from lced.cuts import MovingCut, evaluate_cut_sequence
from lced.demand import Demand
from lced.dispersal import (
    build_demand_matching_graph,
    matching_dispersed_demand,
    tree_matching_demand,
    union_sparsity_check,
    verify_dispersed_properties,
)
from lced.errors import ArgumentError, ConstructionError
from lced.graph import LengthCapGraph, NodeWeighting, degree_weighting
from lced.greedy import verify_parallel_greedy


def test_smallest_matching_graph():
    dmg = build_demand_matching_graph(NodeWeighting((1, 1)), [Demand({(0, 1): 1})])
    assert dmg.n_copies == 2
    assert dmg.edges() == [(0, 1)]


def test_parallel_class_edges():
    dmg = build_demand_matching_graph(NodeWeighting((2, 2)), [Demand({(0, 1): 2})])
    assert dmg.edges() == [(0, 2), (1, 3)]
    dmg.greedy_sequence().check_structure()


def test_incidence_overflow_names_vertex_and_index():
    # both orientations on one edge: combined incidence 2 at each vertex, one copy each
    with pytest.raises(ConstructionError) as err:
        build_demand_matching_graph(NodeWeighting((1, 1)), [Demand(), Demand({(0, 1): 1, (1, 0): 1})])
    assert err.value.index == 2
    assert err.value.vertex == 0


def test_double_copies_absorb_both_orientations():
    dmg = build_demand_matching_graph(NodeWeighting((1, 1)), [Demand({(0, 1): 1, (1, 0): 1})], multiplicity=2)
    assert dmg.n_copies == 4 and len(dmg.edges()) == 2


def test_tree_single_vertex():
    assert tree_matching_demand([3], []).size == 0


def test_tree_star_three_leaves():
    tmd = tree_matching_demand([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)])
    assert tmd.size == 2
    assert tmd.pairings[0] == ((0, 1), (2, 3))


def test_tree_rejects_non_tree():
    with pytest.raises(ArgumentError):
        tree_matching_demand([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(ArgumentError):
        tree_matching_demand([0, 1, 2], [(0, 1)])


@pytest.mark.parametrize("seed", range(10))
def test_random_trees(seed):
    n = random.Random(seed).randint(1, 50)
    t = nx.random_labeled_tree(n, seed=seed)
    tmd = tree_matching_demand(range(n), list(t.edges()))
    assert 2 * tmd.size >= n - 1
    assert max(tmd.demand.incidence(n), default=0) <= 2


def test_dispersed_single_pair():
    disp = matching_dispersed_demand(NodeWeighting((1, 1)), [Demand({(0, 1): 1})])
    assert disp.cover_size == 1
    assert disp.unscaled.entries == {(0, 1): 1, (1, 0): 1}
    assert disp.scale == Fraction(1, 4)
    assert disp.scaled_size == Fraction(1, 2)


def test_empty_sequence_is_vacuous():
    g = dumbbell()
    results = verify_dispersed_properties(g, degree_weighting(g), [], [], 3, 2)
    assert all(r.passed for r in results)


def test_single_edge_cut():
    g = LengthCapGraph.from_edges(2, [(0, 1)])
    results = verify_dispersed_properties(g, NodeWeighting((1, 1)), [MovingCut({0: 1})], None, 1, 2)
    assert all(r.passed for r in results), [r.to_json() for r in results]
    as_json = results[0].to_json()
    assert set(as_json) == {"property", "pass", "witness", "lhs", "rhs"}


def test_precondition_violation_raises():
    g = LengthCapGraph.from_edges(3, [(0, 1), (1, 2)])
    a = NodeWeighting((1, 1, 1))
    bogus = [Demand({(0, 2): 1})]  # distance 2 > h = 1
    with pytest.raises(ArgumentError):
        verify_dispersed_properties(g, a, [MovingCut({0: 1})], bogus, 1, 2)


def test_dumbbell_union():
    g = dumbbell()
    rep = union_sparsity_check(g, degree_weighting(g), [MovingCut.unit([6])], 3, 2)
    assert rep.ok
    assert rep.phi_prime == Fraction(4, 7)
    assert rep.union_sparsity == Fraction(1, 7)


@pytest.mark.parametrize("seed", range(25))
def test_random_sequences(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 3, 7)
    a = random_weighting(rng, g)
    h, s = rng.choice([1, Fraction(3, 2), 2]), rng.choice([2, 3, 5])
    cuts, _ = random_cut_sequence(rng, g, a, h, s)
    witnesses = [st.witness for st in evaluate_cut_sequence(g, a, cuts, h, s)]
    dmg = build_demand_matching_graph(a, witnesses, multiplicity=2)
    assert verify_parallel_greedy(dmg.greedy_sequence(), s).ok
    results = verify_dispersed_properties(g, a, cuts, witnesses, h, s)
    assert all(r.passed for r in results), [r.to_json() for r in results if not r.passed]
    if cuts:
        assert union_sparsity_check(g, a, cuts, h, s).ok
