"""Randomized invariants over small graphs, cuts and matching sequences."""

from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st

from lced.arboricity import arboricity_exact, forest_cover
from lced.cuts import MovingCut, apply_cut, demand_size
from lced.demand import Demand, is_a_respecting, is_h_length, separated_amount
from lced.graph import LengthCapGraph, NodeWeighting
from lced.greedy import generate_parallel_greedy, verify_parallel_greedy

from oracles import brute_arboricity, brute_demand_size, graph_distances

lengths = st.fractions(min_value=0, max_value=3, max_denominator=4)
positive = st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4)


@st.composite
def graphs(draw, max_n=6):
    n = draw(st.integers(2, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=len(pairs) + 2))
    edges = [(u, v, draw(lengths), draw(st.integers(1, 2))) for u, v in chosen]
    return LengthCapGraph.from_edges(n, edges)


@st.composite
def graph_cut_weights(draw, max_n=6, max_weight=2):
    g = draw(graphs(max_n))
    ids = draw(st.lists(st.integers(0, g.m - 1), min_size=1, max_size=3, unique=True))
    cut = MovingCut({e: draw(positive) for e in ids})
    a = NodeWeighting(tuple(draw(st.integers(0, max_weight)) for _ in range(g.n)))
    return g, cut, a


@given(graphs())
def test_distances_match_floyd_warshall(g):
    assert g.all_distances() == graph_distances(g)


@given(graphs())
def test_metric_axioms(g):
    d = g.all_distances()
    for u in range(g.n):
        assert d[u][u] == 0
        for v in range(g.n):
            assert d[u][v] == d[v][u]
            for w in range(g.n):
                assert d[u][w] <= d[u][v] + d[v][w]


@given(graph_cut_weights(), positive)
def test_cut_never_shortens(data, h):
    g, cut, _ = data
    before, after = g.all_distances(), apply_cut(g, cut, h).all_distances()
    assert all(after[u][v] >= before[u][v] for u in range(g.n) for v in range(g.n))


@given(graph_cut_weights(), positive, positive)
def test_separated_amount_monotone_in_cut(data, h, extra):
    g, cut, a = data
    d = Demand({(u, v): 1 for u in range(g.n) for v in range(g.n) if u != v})
    bigger = cut + MovingCut({next(iter(cut.values)): extra})
    assert separated_amount(d, g, bigger, h) >= separated_amount(d, g, cut, h)


@given(graph_cut_weights(), positive, st.sampled_from([2, Fraction(5, 2), 3]))
def test_witness_valid(data, h, s):
    g, cut, a = data
    size, w = demand_size(g, cut, a, h, s)
    assert w.size == size <= a.total
    assert is_a_respecting(w, a) and is_h_length(w, g, h)
    assert separated_amount(w, g, cut, h * s) == size


@given(graph_cut_weights(max_n=5), positive, st.sampled_from([2, 3]))
def test_demand_size_matches_exhaustive(data, h, s):
    g, cut, a = data
    assert demand_size(g, cut, a, h, s)[0] == brute_demand_size(g, dict(cut.values), a.weights, h, s)


@given(graph_cut_weights(), positive)
def test_demand_size_monotone_in_weights(data, h):
    g, cut, a = data
    more = NodeWeighting(tuple(w + 1 for w in a.weights))
    assert demand_size(g, cut, more, h, 2)[0] >= demand_size(g, cut, a, h, 2)[0]


@given(st.integers(2, 40), st.integers(2, 6), st.integers(1, 8), st.integers(0, 2**32 - 1), st.data())
def test_subgraph_closure(n, s, rounds, seed, data):
    seq = generate_parallel_greedy(n, s, rounds, seed)
    assert verify_parallel_greedy(seq, s).ok
    edges = seq.edge_set()
    keep = data.draw(st.lists(st.sampled_from(edges), unique=True)) if edges else []
    assert verify_parallel_greedy(seq.restrict(keep), s).ok


@given(st.integers(2, 9), st.data())
def test_arboricity_and_cover(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True))
    alpha = arboricity_exact(n, edges)
    assert alpha == brute_arboricity(n, edges)
    assume(edges)
    cover = forest_cover(n, edges)
    cover.check(n, edges)
    assert alpha <= cover.size <= 2 * alpha
