"""Demand-matching graphs, tree-matching demands and the matching-dispersed demand.

Witness demands of a cut sequence are realised as one matching per demand on
copies of the vertices; that graph is parallel-greedy (with the matchings taken
in *reverse* order), so a small forest cover exists. Pairing siblings inside
every tree of the cover and projecting back gives a demand that the scaled sum
of the cuts still separates.

Witnesses are A-respecting (row and column sums bounded separately), so a
vertex can touch up to ``2*A(v)`` demand units. Realising them as matchings
therefore uses ``multiplicity * A(v)`` copies per vertex; ``multiplicity=2``
always works, ``multiplicity=1`` only for demands whose combined incidence is
within ``A(v)``. The dispersed demand is symmetrised (every projected pair in
both directions) and scaled by ``1 / (2 * multiplicity * k)`` for a cover with
``k`` forests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx

from lced.arboricity import ForestCover, forest_cover
from lced.cuts import MovingCut, apply_cut, evaluate_cut_sequence, max_separated_demand, sum_cuts
from lced.demand import Demand, is_a_respecting, is_h_length, separated_amount
from lced.errors import ArgumentError, ConstructionError
from lced.graph import INF, LengthCapGraph, NodeWeighting
from lced.greedy import MatchingSequence, verify_parallel_greedy
from lced.rational import as_fraction, fmt


@dataclass(frozen=True)
class DemandMatchingGraph:
    copies: tuple[tuple[int, ...], ...]
    owner: tuple[int, ...]
    matchings: tuple[tuple[tuple[int, int], ...], ...]  # E_1..E_k, one per input demand
    multiplicity: int = 1

    @property
    def n_copies(self) -> int:
        return len(self.owner)

    def edges(self) -> list[tuple[int, int]]:
        return [e for E in self.matchings for e in E]

    def greedy_sequence(self) -> MatchingSequence:
        """The matchings as a parallel-greedy witness: last demand first."""
        return MatchingSequence(self.n_copies, tuple(reversed(self.matchings)))


def _weights(a) -> list[int]:
    return list(a.weights) if isinstance(a, NodeWeighting) else [int(w) for w in a]


def build_demand_matching_graph(a, demands: Sequence[Demand], multiplicity: int = 1) -> DemandMatchingGraph:
    """Copies allocated by vertex id; each canonical demand unit takes the lowest free copy per endpoint.

    Raises :class:`ConstructionError` (naming the vertex and 1-based demand
    index) when some vertex's combined incidence in a demand exceeds its copies.
    """
    weights = _weights(a)
    if multiplicity < 1:
        raise ArgumentError("multiplicity must be positive")
    copies, owner = [], []
    for v, w in enumerate(weights):
        ids = tuple(range(len(owner), len(owner) + multiplicity * w))
        copies.append(ids)
        owner.extend([v] * len(ids))
    matchings = []
    for i, d in enumerate(demands, start=1):
        d.check_vertices(len(weights))
        canon = d.canonical()
        for (u, v) in canon.entries:
            if u == v:
                raise ConstructionError(f"demand {i} has a diagonal entry on {u}", u, i)
        for v, inc in enumerate(canon.incidence(len(weights))):
            if inc > len(copies[v]):
                raise ConstructionError(
                    f"demand {i}: vertex {v} has incidence {inc} but only {len(copies[v])} copies",
                    v,
                    i,
                )
        nxt = [0] * len(weights)
        E = []
        for (u, v), val in canon.entries.items():
            for _ in range(val):
                E.append((copies[u][nxt[u]], copies[v][nxt[v]]))
                nxt[u] += 1
                nxt[v] += 1
        matchings.append(tuple(E))
    return DemandMatchingGraph(tuple(copies), tuple(owner), tuple(matchings), multiplicity)


@dataclass(frozen=True)
class TreeMatchingDemand:
    root: int
    demand: Demand
    pairings: dict[int, tuple[tuple[int, int], ...]] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.demand.size


def tree_matching_demand(vertices, edges) -> TreeMatchingDemand:
    """Root at the lowest id; pair each vertex's children (plus itself if oddly many) in id order."""
    vertices = sorted(set(vertices))
    if not vertices:
        raise ArgumentError("tree needs at least one vertex")
    t = nx.Graph()
    t.add_nodes_from(vertices)
    t.add_edges_from(edges)
    if t.number_of_nodes() != len(vertices) or not nx.is_tree(t):
        raise ArgumentError("input is not a tree on the given vertices")
    root = vertices[0]
    children: dict[int, list[int]] = {v: [] for v in vertices}
    for parent, child in nx.bfs_edges(t, root):
        children[parent].append(child)
    entries: dict[tuple[int, int], int] = {}
    pairings = {}
    for v in vertices:
        kids = sorted(children[v])
        if not kids:
            continue
        group = sorted(kids + [v]) if len(kids) % 2 else kids
        pairs = tuple((group[j], group[j + 1]) for j in range(0, len(group), 2))
        pairings[v] = pairs
        for p in pairs:
            entries[p] = entries.get(p, 0) + 1
    return TreeMatchingDemand(root, Demand(entries), pairings)


def forest_trees(n: int, edges: Sequence[tuple[int, int]], forest: Sequence[int]):
    """Split one forest (edge ids) into ``(vertices, edges)`` trees; isolated vertices are skipped."""
    g = nx.Graph()
    g.add_edges_from(edges[e] for e in forest)
    for comp in sorted(nx.connected_components(g), key=min):
        yield sorted(comp), list(g.subgraph(comp).edges())


@dataclass
class DispersedDemand:
    unscaled: Demand  # symmetric, integer
    scale: Fraction
    cover_size: int
    pairs: list[tuple[int, int]]  # copy-level tree pairings
    graph: DemandMatchingGraph
    cover: ForestCover

    @property
    def scaled_size(self) -> Fraction:
        return self.unscaled.size * self.scale

    @property
    def incidence_limit_factor(self) -> int:
        """Unscaled row sums are at most ``factor * A(v)``; the scale is its reciprocal."""
        return 2 * self.graph.multiplicity * self.cover_size


def matching_dispersed_demand(a, demands: Sequence[Demand], multiplicity: int = 2) -> DispersedDemand:
    dmg = build_demand_matching_graph(a, demands, multiplicity)
    edges = dmg.edges()
    cover = forest_cover(dmg.n_copies, edges) if edges else ForestCover(())
    pairs: list[tuple[int, int]] = []
    for forest in cover.forests:
        for verts, tedges in forest_trees(dmg.n_copies, edges, forest):
            pairs.extend(p for p, val in tree_matching_demand(verts, tedges).demand for _ in range(val))
    entries: dict[tuple[int, int], int] = {}
    for x, y in pairs:
        u, v = dmg.owner[x], dmg.owner[y]
        entries[(u, v)] = entries.get((u, v), 0) + 1
        entries[(v, u)] = entries.get((v, u), 0) + 1
    k = cover.size
    scale = Fraction(1, 2 * multiplicity * max(k, 1))
    return DispersedDemand(Demand(entries), scale, k, pairs, dmg, cover)


@dataclass
class PropertyResult:
    property: str
    passed: bool
    lhs: object
    rhs: object
    witness: object = None

    def to_json(self) -> dict:
        def conv(x):
            if isinstance(x, (int, Fraction)):
                return fmt(x)
            if x == INF:
                return "inf"
            return x

        return {
            "property": self.property,
            "pass": self.passed,
            "witness": self.witness,
            "lhs": conv(self.lhs),
            "rhs": conv(self.rhs),
        }


def _sequence_witnesses(g, a, cuts, demands, h, s):
    """Witnesses per cut (computed when ``demands`` is None) with the precondition checked."""
    h, s = as_fraction(h), as_fraction(s)
    if demands is None:
        return [st.witness for st in evaluate_cut_sequence(g, a, cuts, h, s)]
    if len(demands) != len(cuts):
        raise ArgumentError("need one demand per cut")
    current = g
    for i, (c, d) in enumerate(zip(cuts, demands), start=1):
        if not is_a_respecting(d, a):
            raise ArgumentError(f"demand {i} is not A-respecting")
        if not is_h_length(d, current, h):
            raise ArgumentError(f"demand {i} is not h-length after the earlier cuts")
        if separated_amount(d, current, c, h * s) != d.size:
            raise ArgumentError(f"demand {i} is not hs-separated by cut {i}")
        current = apply_cut(current, c, h * s)
    return list(demands)


def verify_dispersed_properties(
    g: LengthCapGraph,
    a: NodeWeighting,
    cuts: Sequence[MovingCut],
    demands: Sequence[Demand] | None,
    h,
    s,
    multiplicity: int = 2,
) -> list[PropertyResult]:
    """Check the dispersed demand of a cut sequence: 2h-length, A-respecting, separated, large.

    All checks are exact; the A-respecting and size statements are evaluated on
    the integer unscaled demand with the scale cleared.
    """
    h, s = as_fraction(h), as_fraction(s)
    demands = _sequence_witnesses(g, a, cuts, demands, h, s)
    disp = matching_dispersed_demand(a, demands, multiplicity)
    results = []

    results.append(
        PropertyResult(
            "matching-graph-greedy",
            bool(verify_parallel_greedy(disp.graph.greedy_sequence(), s)),
            disp.graph.n_copies,
            multiplicity * a.total,
        )
    )

    worst_tree = None
    for forest in disp.cover.forests:
        for verts, tedges in forest_trees(disp.graph.n_copies, disp.graph.edges(), forest):
            tmd = tree_matching_demand(verts, tedges)
            slack = Fraction(2 * tmd.size) - (len(verts) - 1)
            if worst_tree is None or slack < worst_tree[0]:
                worst_tree = (slack, tmd.size, len(verts))
    if worst_tree is None:
        results.append(PropertyResult("tree-demand-half", True, 0, 0))
    else:
        _, size, nv = worst_tree
        results.append(
            PropertyResult("tree-demand-half", size >= Fraction(nv - 1, 2), size, Fraction(nv - 1, 2))
        )

    base = g.all_distances()
    far_pair = None
    worst_len = Fraction(0)
    for u, v in disp.unscaled.entries:
        if base[u][v] > worst_len:
            worst_len = base[u][v]
            far_pair = (u, v)
    results.append(PropertyResult("length-2h", worst_len <= 2 * h, worst_len, 2 * h, far_pair))

    rows = disp.unscaled.row_sums(len(a))
    factor = disp.incidence_limit_factor
    bad = [v for v in range(len(a)) if rows[v] > factor * a[v]]
    worst_v = max(range(len(a)), key=lambda v: (rows[v] - factor * a[v], -v)) if len(a) else None
    results.append(
        PropertyResult(
            "weight-respecting",
            not bad,
            rows[worst_v] if worst_v is not None else 0,
            factor * a[worst_v] if worst_v is not None else 0,
            worst_v,
        )
    )

    threshold = h * (s - 1)
    union = sum_cuts(cuts).scaled(1 + 1 / (s - 1))
    cut_dist = apply_cut(g, union, threshold).all_distances() if not union.is_zero else base
    closest = None
    min_d = INF
    for u, v in disp.unscaled.entries:
        if cut_dist[u][v] < min_d:
            min_d = cut_dist[u][v]
            closest = (u, v)
    results.append(
        PropertyResult("separated-by-union", min_d > threshold, min_d, threshold, closest)
    )

    total = sum(d.size for d in demands)
    results.append(
        PropertyResult("pairs-half-demand", 2 * len(disp.pairs) >= total, len(disp.pairs), Fraction(total, 2))
    )
    rhs = Fraction(total, 2 * multiplicity * max(disp.cover_size, 1))
    results.append(PropertyResult("scaled-size", disp.scaled_size >= rhs, disp.scaled_size, rhs))
    return results


@dataclass
class UnionReport:
    ok: bool
    cover_size: int
    total_cut_size: Fraction
    total_demand_size: int
    phi_prime: Fraction | None
    union_cut: MovingCut
    union_size: Fraction
    union_demand_size: int
    union_sparsity: object
    dispersed_size: Fraction
    certifies: bool
    dispersed_within_demand_size: bool

    def to_json(self) -> dict:
        return {
            "pass": self.ok,
            "cover_size": self.cover_size,
            "total_cut_size": fmt(self.total_cut_size),
            "total_demand_size": self.total_demand_size,
            "phi_prime": None if self.phi_prime is None else fmt(self.phi_prime),
            "union_size": fmt(self.union_size),
            "union_demand_size": self.union_demand_size,
            "union_sparsity": fmt(self.union_sparsity),
            "dispersed_size": fmt(self.dispersed_size),
            "certifies": self.certifies,
        }


def union_sparsity_check(
    g: LengthCapGraph,
    a: NodeWeighting,
    cuts: Sequence[MovingCut],
    h,
    s,
    demands: Sequence[Demand] | None = None,
) -> UnionReport:
    """Sparsity of ``(1 + 1/(s-1)) * sum C_i`` at length ``2h`` and slack ``(s-1)/2``.

    Passes iff it is at most ``8k * sum|C_i| / sum A_(h,s)(C_i)`` with ``k`` the
    forest-cover size used, and the dispersed demand alone certifies a
    demand-size of at least ``2 * sum|C_i| / phi'``.
    """
    h, s = as_fraction(h), as_fraction(s)
    demands = _sequence_witnesses(g, a, cuts, demands, h, s)
    disp = matching_dispersed_demand(a, demands, 2)
    total_cut = sum((c.size(g) for c in cuts), Fraction(0))
    total_demand = sum(d.size for d in demands)
    union = sum_cuts(cuts).scaled(1 + 1 / (s - 1))
    union_size = union.size(g)
    witness = max_separated_demand(g, union, a, 2 * h, h * (s - 1))
    union_demand = witness.size
    union_spars = INF if union_demand == 0 else union_size / union_demand
    within = disp.scaled_size <= union_demand
    if total_demand == 0:
        return UnionReport(True, disp.cover_size, total_cut, 0, None, union, union_size,
                           union_demand, union_spars, disp.scaled_size, True, within)
    k = disp.cover_size
    phi_prime = 8 * k * total_cut / total_demand
    certifies = disp.scaled_size >= 2 * total_cut / phi_prime
    ok = union_spars != INF and union_spars <= phi_prime and certifies and within
    return UnionReport(ok, k, total_cut, total_demand, phi_prime, union, union_size,
                       union_demand, union_spars, disp.scaled_size, certifies, within)
