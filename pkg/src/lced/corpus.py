"""Random instances and fixed fixtures for the check campaigns."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from lced.cuts import MovingCut, apply_cut, demand_size
from lced.graph import Edge, LengthCapGraph, NodeWeighting, degree_weighting
from lced.greedy import MatchingSequence

LENGTHS = (Fraction(1, 2), Fraction(1), Fraction(1), Fraction(3, 2), Fraction(2))
CUT_VALUES = (Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(1), Fraction(2))


def instance_seed(master: int, index: int, salt: int = 0) -> int:
    """Per-instance seed derived only from (master seed, index, salt)."""
    return int(np.random.SeedSequence([master, index, salt]).generate_state(1)[0])


def random_graph(rng: random.Random, n_min: int, n_max: int, p: float | None = None) -> LengthCapGraph:
    n = rng.randint(n_min, n_max)
    p = rng.uniform(0.3, 0.8) if p is None else p
    edges = [
        Edge(u, v, rng.choice(LENGTHS), rng.choice((1, 1, 2)))
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    if not edges:
        edges.append(Edge(0, 1, Fraction(1), 1))
    return LengthCapGraph(n, tuple(edges))


def random_weighting(rng: random.Random, g: LengthCapGraph, cap: int | None = None) -> NodeWeighting:
    deg = degree_weighting(g).weights
    hi = [d if cap is None else min(d, cap) for d in deg]
    # mostly positive: zero weights make many cuts vacuous
    return NodeWeighting(tuple(rng.randint(0 if rng.random() < 0.2 else min(1, x), x) for x in hi))


def random_cut(rng: random.Random, g: LengthCapGraph) -> MovingCut:
    k = rng.randint(1, max(1, min(3, g.m)))
    edges = rng.sample(range(g.m), k)
    return MovingCut({e: rng.choice(CUT_VALUES) for e in edges})


def random_cut_sequence(rng: random.Random, g, a, h, s, max_cuts: int = 4, attempts: int = 40):
    """Random cuts, each kept only if it separates some demand after its predecessors.

    Returns ``(cuts, phi)`` where ``phi`` is the largest sparsity in the
    sequence, so the sequence is phi-sparse by construction.
    """
    cuts = []
    phi = Fraction(0)
    current = g
    for _ in range(attempts):
        if len(cuts) >= max_cuts:
            break
        c = random_cut(rng, g)
        size, _ = demand_size(current, c, a, h, s)
        if size == 0:
            continue
        cuts.append(c)
        phi = max(phi, c.size(g) / size)
        current = apply_cut(current, c, h * s)
    return cuts, phi


# -- fixtures ------------------------------------------------------------------


def dumbbell() -> LengthCapGraph:
    """Two unit triangles joined by a single unit bridge (edge id 6)."""
    return LengthCapGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def complete_graph(n: int) -> LengthCapGraph:
    return LengthCapGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> LengthCapGraph:
    return LengthCapGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def ladder_sequence(half: int = 14) -> MatchingSequence:
    """Three matchings, 12-parallel-greedy for ``half = 14``, girth 4.

    M_1 and M_2 alternate along a path on ``2*half`` vertices; M_3 joins ``i``
    to ``i + half``, whose path distance ``half`` exceeds 12. Every rung pair
    closes 4-cycles holding two M_3 edges.
    """
    n = 2 * half
    m1 = tuple((i, i + 1) for i in range(0, n - 1, 2))
    m2 = tuple((i, i + 1) for i in range(1, n - 1, 2))
    m3 = tuple((i, i + half) for i in range(half))
    return MatchingSequence(n, (m1, m2, m3))
