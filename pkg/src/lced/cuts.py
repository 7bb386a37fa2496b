"""Moving cuts: application, demand-size, sparsity and cut sequences."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import networkx as nx

from lced.demand import Demand
from lced.errors import ArgumentError, FormatError
from lced.graph import INF, LengthCapGraph, NodeWeighting
from lced.rational import as_fraction, fmt, parse_fraction


@dataclass(frozen=True)
class MovingCut:
    """Sparse map ``edge id -> non-negative rational``.

    The all-zero function is representable so helpers can evaluate it, but it is
    never a valid cut: its demand-size is 0 so it is never certified sparse.
    """

    values: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for eid, val in self.values.items():
            val = as_fraction(val)
            if val < 0:
                raise ArgumentError(f"cut value on edge {eid} is negative")
            if val:
                clean[int(eid)] = val
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    @classmethod
    def unit(cls, edge_ids) -> "MovingCut":
        return cls({e: Fraction(1) for e in edge_ids})

    def __getitem__(self, eid: int) -> Fraction:
        return self.values.get(eid, Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, MovingCut) and self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values.items()))

    @property
    def is_zero(self) -> bool:
        return not self.values

    def size(self, g: LengthCapGraph) -> Fraction:
        self.check_edges(g)
        return sum((g.edges[e].capacity * val for e, val in self.values.items()), Fraction(0))

    def check_edges(self, g: LengthCapGraph) -> None:
        for eid in self.values:
            if not 0 <= eid < g.m:
                raise ArgumentError(f"cut references unknown edge id {eid}")

    def scaled(self, factor) -> "MovingCut":
        factor = as_fraction(factor)
        return MovingCut({e: factor * val for e, val in self.values.items()})

    def __add__(self, other: "MovingCut") -> "MovingCut":
        out = dict(self.values)
        for e, val in other.values.items():
            out[e] = out.get(e, Fraction(0)) + val
        return MovingCut(out)


def sum_cuts(cuts: Sequence[MovingCut]) -> MovingCut:
    total = MovingCut()
    for c in cuts:
        total = total + c
    return total


def apply_cut(g: LengthCapGraph, c: MovingCut, h) -> LengthCapGraph:
    """``g`` with every edge length raised to ``length + h * C(e)``."""
    h = as_fraction(h)
    if h <= 0:
        raise ArgumentError("h must be positive")
    c.check_edges(g)
    if c.is_zero:
        return g
    return g.with_lengths([e.length + h * c[eid] for eid, e in enumerate(g.edges)])


def eligible_pairs(base_dist, cut_dist, length_bound, threshold) -> list[tuple[int, int]]:
    """Ordered pairs within ``length_bound`` before the cut and beyond ``threshold`` after it."""
    n = len(base_dist)
    return [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and base_dist[u][v] <= length_bound and cut_dist[u][v] > threshold
    ]


def max_respecting_demand(pairs, a: NodeWeighting) -> Demand:
    """Largest A-respecting demand supported on ``pairs``.

    Row and column sums are independent constraints, so this is a bipartite
    transportation problem; max-flow with integer capacities gives an integral
    optimum directly.
    """
    senders = {u for u, _ in pairs if a[u] > 0}
    receivers = {v for _, v in pairs if a[v] > 0}
    usable = [(u, v) for u, v in pairs if u in senders and v in receivers]
    if not usable:
        return Demand()
    # integer node ids keep the chosen optimum independent of string hashing
    n = len(a)
    src, sink = 2 * n, 2 * n + 1
    net = nx.DiGraph()
    for u in sorted(senders):
        net.add_edge(src, u, capacity=a[u])
    for v in sorted(receivers):
        net.add_edge(n + v, sink, capacity=a[v])
    for u, v in usable:
        net.add_edge(u, n + v)  # no capacity attribute: unbounded
    _, flow = nx.maximum_flow(net, src, sink)
    return Demand({(u, v): flow[u][n + v] for u, v in usable})


def max_matching_safe_demand(pairs, a: NodeWeighting) -> Demand:
    """Largest demand on ``pairs`` whose *combined* per-vertex incidence is at most A(v).

    Solved exactly as maximum-cardinality matching on A(v) copies of each vertex.
    The result lives on canonical ``u < v`` pairs.
    """
    undirected = sorted({(min(u, v), max(u, v)) for u, v in pairs})
    copies = nx.Graph()
    for u, v in undirected:
        for i in range(a[u]):
            for j in range(a[v]):
                copies.add_edge((u, i), (v, j))
    matching = nx.max_weight_matching(copies, maxcardinality=True)
    out: dict[tuple[int, int], int] = {}
    for x, y in matching:
        key = (min(x[0], y[0]), max(x[0], y[0]))
        out[key] = out.get(key, 0) + 1
    return Demand(out)


def max_separated_demand(
    g: LengthCapGraph,
    c: MovingCut,
    a: NodeWeighting,
    length_bound,
    threshold,
    *,
    base_dist=None,
    matching_safe: bool = False,
) -> Demand:
    """Witness for the largest A-respecting ``length_bound``-length demand ``threshold``-separated by ``c``.

    No restriction on the ratio ``threshold / length_bound``; :func:`demand_size`
    is the guarded public entry point.
    """
    if base_dist is None:
        base_dist = g.all_distances()
    if c.is_zero:
        return Demand()
    cut_dist = apply_cut(g, c, threshold).all_distances()
    pairs = eligible_pairs(base_dist, cut_dist, length_bound, threshold)
    if matching_safe:
        return max_matching_safe_demand(pairs, a)
    return max_respecting_demand(pairs, a)


def _check_params(h, s):
    h, s = as_fraction(h), as_fraction(s)
    if h <= 0:
        raise ArgumentError("h must be positive")
    if s < 2:
        raise ArgumentError("length slack s must be at least 2")
    return h, s


def demand_size(
    g: LengthCapGraph,
    c: MovingCut,
    a: NodeWeighting,
    h,
    s,
    *,
    matching_safe: bool = False,
) -> tuple[int, Demand]:
    """Return ``(A_(h,s)(C), witness)`` evaluated in ``g``.

    With ``matching_safe=True`` the witness also obeys the combined incidence
    bound needed to realise it as a single matching on A(v) copies per vertex;
    its size can then be smaller than the demand-size proper.
    """
    h, s = _check_params(h, s)
    if len(a) != g.n:
        raise ArgumentError("node-weighting length does not match graph")
    c.check_edges(g)
    witness = max_separated_demand(g, c, a, h, h * s, matching_safe=matching_safe)
    return witness.size, witness


def sparsity(g: LengthCapGraph, c: MovingCut, a: NodeWeighting, h, s):
    """``|C| / A_(h,s)(C)`` as a Fraction, or ``INF`` when nothing is separated."""
    size, _ = demand_size(g, c, a, h, s)
    if size == 0:
        return INF
    return c.size(g) / size


@dataclass
class CutStep:
    index: int
    size: Fraction
    demand_size: int
    sparsity: object  # Fraction or INF
    sparse: bool
    witness: Demand


def evaluate_cut_sequence(g, a, cuts: Sequence[MovingCut], h, s) -> list[CutStep]:
    """Evaluate each cut in the graph obtained by applying all earlier cuts at ``h*s``."""
    h, s = _check_params(h, s)
    steps = []
    current = g
    for i, c in enumerate(cuts):
        c.check_edges(g)
        size, witness = demand_size(current, c, a, h, s)
        cut_size = c.size(g)
        spars = INF if size == 0 else cut_size / size
        steps.append(CutStep(i, cut_size, size, spars, False, witness))
        current = apply_cut(current, c, h * s)
    return steps


@dataclass
class SequenceReport:
    ok: bool
    steps: list[CutStep]
    first_violation: int | None = None


def verify_cut_sequence(g, a, cuts: Sequence[MovingCut], h, s, phi) -> SequenceReport:
    """Check that every cut is ``phi``-sparse (inclusive) after its predecessors are applied."""
    phi = as_fraction(phi)
    steps = evaluate_cut_sequence(g, a, cuts, h, s)
    first = None
    for st in steps:
        st.sparse = st.sparsity != INF and st.sparsity <= phi
        if st.sparse and st.size > phi * a.total:
            raise AssertionError(f"cut {st.index} is phi-sparse but larger than phi*|A|")
        if not st.sparse and first is None:
            first = st.index
    return SequenceReport(first is None, steps, first)


# -- file format: "edge_id num/den" per line ----------------------------------


def dumps_cut(c: MovingCut) -> str:
    return "".join(f"{e} {fmt(v)}\n" for e, v in c.values.items())


def loads_cut(text: str) -> MovingCut:
    values: dict[int, Fraction] = {}
    for i, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"cut line {i}: expected 'edge_id num/den'")
        try:
            eid = int(parts[0])
        except ValueError as exc:
            raise FormatError(f"cut line {i}: bad edge id") from exc
        values[eid] = values.get(eid, Fraction(0)) + parse_fraction(parts[1])
    try:
        return MovingCut(values)
    except ArgumentError as exc:
        raise FormatError(str(exc)) from exc


def read_cut(path: str | Path) -> MovingCut:
    return loads_cut(Path(path).read_text())
