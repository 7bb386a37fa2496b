"""Arboricity: exact value via Nash-Williams density and a constructive forest cover."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx

from lced.errors import ArgumentError
from lced.rational import as_fraction, ceil_div

Edges = Sequence[tuple[int, int]]


def _simple(n: int, edges: Edges) -> list[tuple[int, int]]:
    out = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ArgumentError(f"bad edge {(u, v)} for n={n}")
        out.add((min(u, v), max(u, v)))
    return sorted(out)


def _adjacency(n: int, edges: Edges) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _peel(adj: list[set[int]], alive: set[int], threshold: int) -> set[int]:
    """Drop vertices of degree ``<= threshold`` until none remain (the (threshold+1)-core)."""
    deg = {v: len(adj[v] & alive) for v in alive}
    alive = set(alive)
    queue = [v for v in alive if deg[v] <= threshold]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == threshold:
                    queue.append(w)
    return alive


def has_dense_subset(n: int, edges: Edges, alpha: int) -> bool:
    """True iff some vertex set ``U`` (``|U| >= 2``) has ``|E(U)| > alpha * (|U| - 1)``.

    A violating set survives deleting any vertex of degree ``<= alpha`` inside it,
    so the search is restricted to the ``(alpha+1)``-core. Each remaining vertex
    ``v`` in turn is forced into the source side of the min-cut network
    (source->x: M, x->sink: M + 2*alpha - deg(x), unit arcs both ways per edge),
    whose cut value is ``M*|V| + 2*min_{U∋v}(alpha*|U| - |E(U)|)``. After ``v`` is
    tested it is removed, since every set containing it has been examined.
    """
    edges = _simple(n, edges)
    adj = _adjacency(n, edges)
    alive = _peel(adj, set(range(n)), alpha)
    for v in sorted(alive):
        alive = _peel(adj, alive, alpha)
        if v not in alive:
            continue
        deg = {x: len(adj[x] & alive) for x in alive}
        big = max(deg.values())
        src, sink = -1, -2
        net = nx.DiGraph()
        for x in alive:
            if x != v:
                net.add_edge(src, x, capacity=big)
            net.add_edge(x, sink, capacity=big + 2 * alpha - deg[x])
            for y in adj[x]:
                if y in alive:
                    net.add_edge(x, y, capacity=1)
        net.add_edge(src, v)  # unbounded: forces v onto the source side
        cut = nx.minimum_cut_value(net, src, sink)
        if cut < big * len(alive) + 2 * alpha:
            return True
        alive.discard(v)
    return False


def degeneracy_order(n: int, edges: Edges) -> tuple[list[int], int]:
    """Min-degree removal order and the degeneracy (largest degree at removal)."""
    adj = _adjacency(n, _simple(n, edges))
    deg = [len(a) for a in adj]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    order = []
    worst = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        worst = max(worst, d)
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, worst


def arboricity_exact(n: int, edges: Edges) -> int:
    """Minimum number of forests covering ``edges`` (0 for an edgeless graph)."""
    edges = _simple(n, edges)
    if not edges:
        return 0
    lo = max(1, _component_lower_bound(n, edges))
    _, hi = degeneracy_order(n, edges)
    hi = max(hi, lo)
    while lo < hi:
        mid = (lo + hi) // 2
        if has_dense_subset(n, edges, mid):
            lo = mid + 1
        else:
            hi = mid
    return lo


def _component_lower_bound(n: int, edges: Edges) -> int:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    best = 0
    for comp in nx.connected_components(g):
        if len(comp) >= 2:
            best = max(best, ceil_div(g.subgraph(comp).number_of_edges(), len(comp) - 1))
    return best


@dataclass(frozen=True)
class ForestCover:
    """Edge-disjoint forests, each a tuple of edge ids into the host edge list."""

    forests: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.forests)

    def check(self, n: int, edges: Edges) -> None:
        """Raise AssertionError unless the forests partition ``edges`` and are acyclic."""
        seen: set[int] = set()
        for f, forest in enumerate(self.forests):
            parent = list(range(n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for eid in forest:
                if eid in seen:
                    raise AssertionError(f"edge {eid} appears in two forests")
                seen.add(eid)
                u, v = edges[eid]
                ru, rv = find(u), find(v)
                if ru == rv:
                    raise AssertionError(f"forest {f} contains a cycle through edge {eid}")
                parent[ru] = rv
        if seen != set(range(len(edges))):
            raise AssertionError("forests do not cover every edge")

    def dumps(self) -> str:
        return "".join(" ".join(map(str, f)) + "\n" for f in self.forests)


def forest_cover(n: int, edges: Edges) -> ForestCover:
    """Cover with ``degeneracy`` forests (at most ``2*arboricity - 1``).

    Vertices are taken in min-degree removal order; the ``j``-th edge from a
    vertex to a later-removed neighbour goes to forest ``j``. Every vertex then
    has at most one "forward" edge per forest, so no forest can close a cycle.
    ``edges`` may contain parallel copies only if the caller wants them rejected:
    the host must be simple.
    """
    if len(set((min(u, v), max(u, v)) for u, v in edges)) != len(edges):
        raise ArgumentError("forest_cover expects a simple graph")
    order, _ = degeneracy_order(n, edges)
    pos = {v: i for i, v in enumerate(order)}
    forward: list[list[int]] = [[] for _ in range(n)]
    for eid, (u, v) in enumerate(edges):
        first = u if pos[u] < pos[v] else v
        forward[first].append(eid)
    forests: list[list[int]] = []
    for v in order:
        for j, eid in enumerate(sorted(forward[v])):
            while len(forests) <= j:
                forests.append([])
            forests[j].append(eid)
    cover = ForestCover(tuple(tuple(sorted(f)) for f in forests))
    cover.check(n, edges)
    return cover


@dataclass
class BoundReport:
    ok: bool
    value: int | Fraction
    ratio: float


def within_power_bound(value, s, n: int, c) -> bool:
    """Exact test of ``value <= c * s * n**(2/s)`` as ``value**s <= (c*s)**s * n**2``."""
    s = as_fraction(s)
    if s.denominator != 1:
        raise ArgumentError("power bound needs integer s")
    k = int(s)
    value = as_fraction(value)
    c = as_fraction(c)
    return value**k <= (c * k) ** k * n**2


def power_ratio(value, s, n: int) -> float:
    """``value / (s * n**(2/s))`` as a float, for campaign tables only."""
    s = float(s)
    return float(value) / (s * n ** (2.0 / s))


def check_pg_arboricity_bound(seq, s: int, c) -> BoundReport:
    alpha = arboricity_exact(seq.n, seq.edge_set())
    return BoundReport(within_power_bound(alpha, s, seq.n, c), alpha, power_ratio(alpha, s, seq.n))
