"""Undirected multigraphs with exact-rational lengths and integer capacities."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from lced.errors import ArgumentError, FormatError
from lced.rational import as_fraction, fmt, parse_fraction

INF = math.inf


class Edge(NamedTuple):
    u: int
    v: int
    length: Fraction
    capacity: int


@dataclass(frozen=True)
class LengthCapGraph:
    """Multigraph on vertices ``0..n-1``; edge ids are positions in ``edges``.

    Instances are never mutated. Derived graphs (e.g. after applying a cut)
    are built with :meth:`with_lengths`.
    """

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.n < 0:
            raise ArgumentError("vertex count must be non-negative")
        clean = []
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, e in enumerate(self.edges):
            u, v, length, cap = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ArgumentError(f"edge {eid} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise ArgumentError(f"edge {eid} is a self-loop on {u}")
            length = as_fraction(length)
            if length < 0:
                raise ArgumentError(f"edge {eid} has negative length")
            if isinstance(cap, bool) or int(cap) != cap or cap < 1:
                raise ArgumentError(f"edge {eid} capacity must be a positive integer")
            clean.append(Edge(u, v, length, int(cap)))
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        object.__setattr__(self, "edges", tuple(clean))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence]) -> "LengthCapGraph":
        """Build from ``(u, v)``, ``(u, v, length)`` or ``(u, v, length, capacity)`` tuples."""
        out = []
        for e in edges:
            if len(e) == 2:
                out.append(Edge(e[0], e[1], Fraction(1), 1))
            elif len(e) == 3:
                out.append(Edge(e[0], e[1], as_fraction(e[2]), 1))
            else:
                out.append(Edge(e[0], e[1], as_fraction(e[2]), e[3]))
        return cls(n, tuple(out))

    @property
    def m(self) -> int:
        return len(self.edges)

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise ArgumentError(f"invalid vertex id {v!r}")

    def with_lengths(self, lengths: Sequence[Fraction]) -> "LengthCapGraph":
        if len(lengths) != self.m:
            raise ArgumentError("length vector does not match edge count")
        return LengthCapGraph(
            self.n,
            tuple(Edge(e.u, e.v, as_fraction(l), e.capacity) for e, l in zip(self.edges, lengths)),
        )

    def distances_from(self, source: int) -> list:
        """Single-source Dijkstra; unreachable vertices get ``INF``."""
        self.check_vertex(source)
        dist: list = [INF] * self.n
        dist[source] = Fraction(0)
        heap = [(Fraction(0), source)]
        done = [False] * self.n
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for w, eid in self.adjacency[u]:
                nd = d + self.edges[eid].length
                if nd < dist[w]:
                    dist[w] = nd
                    heapq.heappush(heap, (nd, w))
        return dist

    def all_distances(self) -> list[list]:
        return [self.distances_from(v) for v in range(self.n)]


@dataclass(frozen=True)
class NodeWeighting:
    """Per-vertex non-negative integers, each at most the capacity-weighted degree."""

    weights: tuple[int, ...]

    def __post_init__(self):
        ws = tuple(int(w) for w in self.weights)
        if any(w < 0 for w in ws):
            raise ArgumentError("node weights must be non-negative")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def for_graph(cls, g: LengthCapGraph, weights: Sequence[int]) -> "NodeWeighting":
        a = cls(tuple(weights))
        a.check_against(g)
        return a

    def check_against(self, g: LengthCapGraph) -> None:
        if len(self.weights) != g.n:
            raise ArgumentError("node-weighting length does not match vertex count")
        deg = degree_weighting(g).weights
        for v, (w, d) in enumerate(zip(self.weights, deg)):
            if w > d:
                raise ArgumentError(f"A({v}) = {w} exceeds deg({v}) = {d}")

    def __getitem__(self, v: int) -> int:
        return self.weights[v]

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)


def distance(g: LengthCapGraph, u: int, v: int):
    """Exact shortest-path length between ``u`` and ``v``, or ``INF``."""
    g.check_vertex(v)
    return g.distances_from(u)[v]


def degree_weighting(g: LengthCapGraph) -> NodeWeighting:
    deg = [0] * g.n
    for e in g.edges:
        deg[e.u] += e.capacity
        deg[e.v] += e.capacity
    return NodeWeighting(tuple(deg))


def ball(g: LengthCapGraph, center: int, radius) -> frozenset[int]:
    radius = as_fraction(radius)
    if radius < 0:
        raise ArgumentError("radius must be non-negative")
    dist = g.distances_from(center)
    return frozenset(v for v in range(g.n) if dist[v] <= radius)


# -- file format: header "n m", then "u v num/den capacity" per edge --------


def dumps_graph(g: LengthCapGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{e.u} {e.v} {fmt(e.length)} {e.capacity}" for e in g.edges]
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> LengthCapGraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise FormatError("graph header must be 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
    except ValueError as exc:
        raise FormatError("graph header must be two integers") from exc
    if len(rows) - 1 != m:
        raise FormatError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != 4:
            raise FormatError(f"edge line {i}: expected 'u v num/den capacity'")
        try:
            u, v, cap = int(row[0]), int(row[1]), int(row[3])
            length = parse_fraction(row[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"edge line {i}: bad field ({exc})") from exc
        edges.append(Edge(u, v, length, cap))
    try:
        return LengthCapGraph(n, tuple(edges))
    except ArgumentError as exc:
        raise FormatError(str(exc)) from exc


def read_graph(path: str | Path) -> LengthCapGraph:
    return loads_graph(Path(path).read_text())


def write_graph(g: LengthCapGraph, path: str | Path) -> None:
    Path(path).write_text(dumps_graph(g))


def dumps_weighting(a: NodeWeighting) -> str:
    return "".join(f"{v} {w}\n" for v, w in enumerate(a.weights))


def loads_weighting(text: str, n: int) -> NodeWeighting:
    weights = [0] * n
    for i, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"weighting line {i}: expected 'v weight'")
        try:
            v, w = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"weighting line {i}: non-integer field") from exc
        if not 0 <= v < n:
            raise FormatError(f"weighting line {i}: vertex {v} out of range")
        weights[v] = w
    return NodeWeighting(tuple(weights))
