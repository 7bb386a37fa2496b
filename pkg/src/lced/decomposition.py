"""Sparse-cut search over finite cut families and iterated expander decomposition."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator

from lced.cuts import MovingCut, apply_cut, eligible_pairs, max_respecting_demand, sum_cuts
from lced.errors import ArgumentError, BudgetExceeded
from lced.graph import INF, LengthCapGraph, NodeWeighting
from lced.rational import as_fraction, fmt

FAMILIES = ("exhaustive", "balls", "singletons")


@dataclass(frozen=True)
class CutFamily:
    """Which {0,1}-valued cuts the search may return.

    ``exhaustive`` walks every edge subset of size ``1..max_edges``;
    ``balls`` takes, for each center and each distinct finite radius, the unit
    cut on edges leaving the ball; ``singletons`` cuts one edge at a time.
    """

    kind: str = "balls"
    max_edges: int = 3
    budget: int = 200_000

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ArgumentError(f"unknown cut family {self.kind!r}; choose from {FAMILIES}")

    def candidate_count(self, g: LengthCapGraph) -> int:
        if self.kind == "exhaustive":
            return sum(comb(g.m, j) for j in range(1, min(self.max_edges, g.m) + 1))
        if self.kind == "singletons":
            return g.m
        return g.n * g.n

    def candidates(self, g: LengthCapGraph, base_dist) -> Iterator[MovingCut]:
        if self.kind == "exhaustive":
            count = self.candidate_count(g)
            if count > self.budget:
                raise BudgetExceeded(
                    f"exhaustive family has {count} candidates, budget {self.budget}", bound=self.budget
                )
            for j in range(1, min(self.max_edges, g.m) + 1):
                for subset in combinations(range(g.m), j):
                    yield MovingCut.unit(subset)
        elif self.kind == "singletons":
            for e in range(g.m):
                yield MovingCut.unit([e])
        else:
            seen = set()
            for center in range(g.n):
                radii = sorted({d for d in base_dist[center] if d != INF})
                for r in radii:
                    inside = {v for v in range(g.n) if base_dist[center][v] <= r}
                    boundary = tuple(
                        eid for eid, e in enumerate(g.edges) if (e.u in inside) != (e.v in inside)
                    )
                    if boundary and boundary not in seen:
                        seen.add(boundary)
                        yield MovingCut.unit(boundary)

    def describe(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "exhaustive":
            out["max_edges"] = self.max_edges
            out["budget"] = self.budget
        return out


@dataclass
class FoundCut:
    cut: MovingCut
    size: Fraction
    demand_size: int
    sparsity: Fraction
    candidate: int


def find_sparse_cut(
    g: LengthCapGraph, a: NodeWeighting, h, s, phi, family: CutFamily = CutFamily()
) -> FoundCut | None:
    """First candidate (in family order) whose (h,s)-length sparsity is at most ``phi``."""
    h, s, phi = as_fraction(h), as_fraction(s), as_fraction(phi)
    if h <= 0 or s < 2 or phi < 0:
        raise ArgumentError("need h > 0, s >= 2, phi >= 0")
    base = g.all_distances()
    threshold = h * s
    cap = phi * a.total
    for idx, cut in enumerate(family.candidates(g, base)):
        size = cut.size(g)
        if size > cap:  # a phi-sparse cut is never larger than phi*|A|
            continue
        cut_dist = apply_cut(g, cut, threshold).all_distances()
        pairs = eligible_pairs(base, cut_dist, h, threshold)
        if not pairs:
            continue
        dsize = max_respecting_demand(pairs, a).size
        if dsize and size <= phi * dsize:
            return FoundCut(cut, size, dsize, size / dsize, idx)
    return None


def certify_no_sparse_cut(g, a, h, s, phi, family: CutFamily = CutFamily()) -> bool:
    """True iff the family holds no (h,s)-length phi-sparse cut. Says nothing about cuts outside it."""
    return find_sparse_cut(g, a, h, s, phi, family) is None


@dataclass
class DecompositionResult:
    cuts: list[MovingCut]
    union: MovingCut
    size: Fraction
    slack: Fraction
    log: list[dict] = field(default_factory=list)
    family: dict = field(default_factory=dict)
    h: Fraction = Fraction(1)
    s: Fraction = Fraction(2)
    phi: Fraction = Fraction(0)
    weight_total: int = 0

    def to_json(self) -> dict:
        return {
            "h": fmt(self.h),
            "s": fmt(self.s),
            "phi": fmt(self.phi),
            "weight_total": self.weight_total,
            "family": self.family,
            "cuts": [{str(e): fmt(v) for e, v in c.values.items()} for c in self.cuts],
            "union": {str(e): fmt(v) for e, v in self.union.values.items()},
            "size": fmt(self.size),
            "slack": fmt(self.slack),
            "log": self.log,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def build_decomposition(
    g: LengthCapGraph,
    a: NodeWeighting,
    h,
    s,
    phi,
    family: CutFamily = CutFamily(),
    iteration_cap: int = 1000,
) -> DecompositionResult:
    """Apply sparse cuts (each at threshold ``h*s``) until the family has none left.

    The union is ``(1 + 1/(s-1)) * sum C_i``; slack is ``|union| / (phi*|A|)``.
    Expansion of the final graph is certified only relative to ``family``.
    """
    h, s, phi = as_fraction(h), as_fraction(s), as_fraction(phi)
    if phi <= 0:
        raise ArgumentError("phi must be positive")
    cuts: list[MovingCut] = []
    log: list[dict] = []
    current = g
    while True:
        if len(cuts) >= iteration_cap:
            raise BudgetExceeded(f"iteration cap {iteration_cap} reached", bound=iteration_cap, progress=log)
        try:
            found = find_sparse_cut(current, a, h, s, phi, family)
        except BudgetExceeded as exc:
            exc.progress = log
            raise
        if found is None:
            break
        cuts.append(found.cut)
        log.append(
            {
                "iteration": len(cuts),
                "candidate": found.candidate,
                "size": fmt(found.size),
                "demand_size": found.demand_size,
                "sparsity": fmt(found.sparsity),
            }
        )
        current = apply_cut(current, found.cut, h * s)
    union = sum_cuts(cuts).scaled(1 + 1 / (s - 1))
    size = union.size(g)
    slack = size / (phi * a.total) if a.total else Fraction(0)
    return DecompositionResult(cuts, union, size, slack, log, family.describe(), h, s, phi, a.total)
