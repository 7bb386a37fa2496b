"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import networkx as nx

INF = math.inf


def floyd_warshall(n, edges):
    """All-pairs distances from (u, v, length) triples, exact rationals."""
    d = [[INF] * n for _ in range(n)]
    for v in range(n):
        d[v][v] = Fraction(0)
    for u, v, length in edges:
        length = Fraction(length)
        if length < d[u][v]:
            d[u][v] = d[v][u] = length
    for k in range(n):
        for i in range(n):
            if d[i][k] == INF:
                continue
            for j in range(n):
                alt = d[i][k] + d[k][j]
                if alt < d[i][j]:
                    d[i][j] = alt
    return d


def graph_distances(g, extra=None, scale=0):
    """Distances in ``g`` with each edge lengthened by ``scale * extra[eid]``."""
    extra = extra or {}
    triples = [(e.u, e.v, e.length + scale * extra.get(i, 0)) for i, e in enumerate(g.edges)]
    return floyd_warshall(g.n, triples)


def brute_demand_size(g, cut_values, weights, h, s):
    """Largest A-respecting h-length demand hs-separated by the cut, by memoized search.

    Pairs are decided one at a time; the state is the remaining row and column
    capacities, so the search is exhaustive over all integral demands.
    """
    h, s = Fraction(h), Fraction(s)
    base = graph_distances(g)
    after = graph_distances(g, cut_values, h * s)
    pairs = [
        (u, v)
        for u in range(g.n)
        for v in range(g.n)
        if u != v and base[u][v] <= h and after[u][v] > h * s
    ]

    @lru_cache(maxsize=None)
    def best(i, rows, cols):
        if i == len(pairs):
            return 0
        u, v = pairs[i]
        top = min(rows[u], cols[v])
        out = 0
        for x in range(top + 1):
            r = list(rows)
            c = list(cols)
            r[u] -= x
            c[v] -= x
            out = max(out, x + best(i + 1, tuple(r), tuple(c)))
        return out

    w = tuple(weights)
    return best(0, w, w)


def brute_arboricity(n, edges):
    """max over vertex subsets U with |U| >= 2 of ceil(|E(U)| / (|U| - 1))."""
    edges = {(min(u, v), max(u, v)) for u, v in edges}
    if not edges:
        return 0
    nbr = [0] * n
    for u, v in edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    best = 0
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if size < 2:
            continue
        twice = sum((nbr[v] & mask).bit_count() for v in range(n) if mask >> v & 1)
        best = max(best, -(-(twice // 2) // (size - 1)))
    return best


def nx_monotonic_counts(seq, length):
    """Ordered-pair counts of simple monotonic paths, via networkx path enumeration."""
    g = nx.Graph()
    g.add_nodes_from(range(seq.n))
    index = {}
    for u, v, i in seq.indexed_edges():
        g.add_edge(u, v)
        index[frozenset((u, v))] = i
    counts = {}
    for u in range(seq.n):
        for v in range(seq.n):
            if u == v:
                continue
            for path in nx.all_simple_paths(g, u, v, cutoff=length):
                if len(path) != length + 1:
                    continue
                ids = [index[frozenset(p)] for p in zip(path, path[1:])]
                if all(a < b for a, b in zip(ids, ids[1:])):
                    counts[(u, v)] = counts.get((u, v), 0) + 1
    return counts


def nx_is_parallel_greedy(seq, s):
    """Recheck by BFS in networkx, matching by matching."""
    g = nx.Graph()
    g.add_nodes_from(range(seq.n))
    for M in seq.matchings:
        for u, v in M:
            try:
                if nx.shortest_path_length(g, u, v) <= s:
                    return False
            except nx.NetworkXNoPath:
                pass
        g.add_edges_from(M)
    return True


def brute_cycles_ok(seq, s):
    """Cycle property by networkx simple-cycle enumeration (small graphs only)."""
    g = nx.Graph()
    index = {}
    for u, v, i in seq.indexed_edges():
        g.add_edge(u, v)
        index[frozenset((u, v))] = i
    for cyc in nx.simple_cycles(g, length_bound=s + 1):
        if len(cyc) < 3:
            continue
        ids = [index[frozenset((cyc[j], cyc[(j + 1) % len(cyc)]))] for j in range(len(cyc))]
        if ids.count(max(ids)) < 2:
            return False
    return True


def all_edge_subsets(m, max_edges):
    for j in range(1, max_edges + 1):
        yield from combinations(range(m), j)
