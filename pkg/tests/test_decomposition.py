from fractions import Fraction

import pytest

from lced.corpus import complete_graph, dumbbell, path_graph
from lced.cuts import apply_cut, sparsity, verify_cut_sequence
from lced.decomposition import CutFamily, build_decomposition, certify_no_sparse_cut, find_sparse_cut
from lced.dispersal import union_sparsity_check
from lced.errors import ArgumentError, BudgetExceeded
from lced.graph import degree_weighting

EXH = CutFamily("exhaustive", max_edges=3)


@pytest.mark.parametrize("kind", ["exhaustive", "balls", "singletons"])
def test_dumbbell_bridge_found(kind):
    g = dumbbell()
    a = degree_weighting(g)
    found = find_sparse_cut(g, a, 3, 2, Fraction(1, 10), CutFamily(kind))
    assert found.cut.values == {6: 1}
    assert sparsity(g, found.cut, a, 3, 2) == found.sparsity == Fraction(1, 14)


def test_dumbbell_decomposition():
    g = dumbbell()
    a = degree_weighting(g)
    res = build_decomposition(g, a, 3, 2, Fraction(1, 10), EXH)
    assert len(res.cuts) == 1
    assert res.size == 2 and res.slack == Fraction(10, 7)
    assert verify_cut_sequence(g, a, res.cuts, 3, 2, Fraction(1, 10)).ok
    assert union_sparsity_check(g, a, res.cuts, 3, 2).ok
    after = apply_cut(g, res.cuts[0], 6)
    assert certify_no_sparse_cut(after, a, 3, 2, Fraction(1, 10), EXH)


def _k4_min_sparsity():
    g = complete_graph(4)
    a = degree_weighting(g)
    from itertools import combinations

    from lced.cuts import MovingCut

    return min(sparsity(g, MovingCut.unit(sub), a, 1, 2) for j in range(1, 7) for sub in combinations(range(6), j))


def test_k4_expander():
    g = complete_graph(4)
    a = degree_weighting(g)
    best = _k4_min_sparsity()
    fam = CutFamily("exhaustive", max_edges=6)
    assert certify_no_sparse_cut(g, a, 1, 2, best - Fraction(1, 1000), fam)
    assert not certify_no_sparse_cut(g, a, 1, 2, best, fam)
    res = build_decomposition(g, a, 1, 2, Fraction(1, 10), fam)
    assert res.cuts == [] and res.slack == 0


def test_long_path_interior_edge_is_sparse():
    g = path_graph(8)
    a = degree_weighting(g)
    found = find_sparse_cut(g, a, 8, 2, Fraction(1, 4), CutFamily("singletons"))
    assert found is not None
    assert sparsity(g, found.cut, a, 8, 2) <= Fraction(1, 4)
    assert not certify_no_sparse_cut(g, a, 8, 2, Fraction(1, 4), CutFamily("singletons"))


def test_exhaustive_budget():
    g = complete_graph(7)
    with pytest.raises(BudgetExceeded):
        find_sparse_cut(g, degree_weighting(g), 1, 2, 1, CutFamily("exhaustive", 3, budget=10))


def test_iteration_cap_reports_progress():
    g = path_graph(8)
    with pytest.raises(BudgetExceeded) as err:
        build_decomposition(g, degree_weighting(g), 8, 2, 1, CutFamily("singletons"), iteration_cap=1)
    assert len(err.value.progress) == 1


def test_bad_arguments():
    with pytest.raises(ArgumentError):
        CutFamily("spectral")
    g = dumbbell()
    with pytest.raises(ArgumentError):
        build_decomposition(g, degree_weighting(g), 1, 2, 0)


def test_result_json_uses_rational_strings():
    g = dumbbell()
    text = build_decomposition(g, degree_weighting(g), 3, 2, Fraction(1, 10), EXH).dumps()
    assert '"slack": "10/7"' in text
    assert "0." not in text
