"""Integer demands on ordered vertex pairs."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

from lced.errors import ArgumentError, FormatError
from lced.graph import LengthCapGraph, NodeWeighting
from lced.rational import as_fraction

Pair = tuple[int, int]


@dataclass(frozen=True)
class Demand:
    """Sparse map ``(u, v) -> positive int``; absent pairs are zero."""

    entries: Mapping[Pair, int] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[Pair, int] = {}
        for (u, v), val in self.entries.items():
            if isinstance(val, bool) or int(val) != val:
                raise ArgumentError(f"demand value for {(u, v)} must be an integer")
            val = int(val)
            if val < 0:
                raise ArgumentError(f"negative demand on {(u, v)}")
            if val:
                clean[(int(u), int(v))] = val
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, pair: Pair) -> int:
        return self.entries.get(pair, 0)

    def __iter__(self):
        return iter(self.entries.items())

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Demand) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(self.entries.items()))

    @property
    def size(self) -> int:
        return sum(self.entries.values())

    @property
    def support(self) -> list[Pair]:
        return list(self.entries)

    def row_sums(self, n: int) -> list[int]:
        out = [0] * n
        for (u, _), val in self.entries.items():
            out[u] += val
        return out

    def col_sums(self, n: int) -> list[int]:
        out = [0] * n
        for (_, v), val in self.entries.items():
            out[v] += val
        return out

    def incidence(self, n: int) -> list[int]:
        """Combined per-vertex incidence ``sum_w D(v,w) + D(w,v)``."""
        return [r + c for r, c in zip(self.row_sums(n), self.col_sums(n))]

    def check_vertices(self, n: int) -> None:
        for u, v in self.entries:
            if not (0 <= u < n and 0 <= v < n):
                raise ArgumentError(f"demand pair {(u, v)} references a vertex outside 0..{n - 1}")

    def canonical(self) -> "Demand":
        """Fold onto upper-triangular support: ``D'(u,v) = D(u,v) + D(v,u)`` for ``u < v``."""
        out: dict[Pair, int] = {}
        for (u, v), val in self.entries.items():
            key = (u, v) if u <= v else (v, u)
            out[key] = out.get(key, 0) + val
        return Demand(out)

    def __add__(self, other: "Demand") -> "Demand":
        out = dict(self.entries)
        for pair, val in other.entries.items():
            out[pair] = out.get(pair, 0) + val
        return Demand(out)


def is_h_length(d: Demand, g: LengthCapGraph, h) -> bool:
    h = as_fraction(h)
    if h < 0:
        raise ArgumentError("h must be non-negative")
    d.check_vertices(g.n)
    cache: dict[int, list] = {}
    for u, v in d.entries:
        if u not in cache:
            cache[u] = g.distances_from(u)
        if cache[u][v] > h:
            return False
    return True


def is_a_respecting(d: Demand, a: NodeWeighting) -> bool:
    n = len(a)
    d.check_vertices(n)
    rows, cols = d.row_sums(n), d.col_sums(n)
    return all(max(rows[v], cols[v]) <= a[v] for v in range(n))


def separated_amount(d: Demand, g: LengthCapGraph, c, h) -> int:
    """Total demand on pairs at distance ``> h`` once ``c`` is applied at threshold ``h``."""
    from lced.cuts import apply_cut

    h = as_fraction(h)
    if h <= 0:
        raise ArgumentError("h must be positive")
    d.check_vertices(g.n)
    cut_graph = apply_cut(g, c, h)
    cache: dict[int, list] = {}
    total = 0
    for (u, v), val in d.entries.items():
        if u not in cache:
            cache[u] = cut_graph.distances_from(u)
        if cache[u][v] > h:
            total += val
    return total


def dumps_demand(d: Demand) -> str:
    return "".join(f"{u} {v} {val}\n" for (u, v), val in d.entries.items())


def loads_demand(text: str) -> Demand:
    out: dict[Pair, int] = {}
    for i, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"demand line {i}: expected 'u v value'")
        try:
            u, v, val = (int(p) for p in parts)
        except ValueError as exc:
            raise FormatError(f"demand line {i}: non-integer field") from exc
        out[(u, v)] = out.get((u, v), 0) + val
    try:
        return Demand(out)
    except ArgumentError as exc:
        raise FormatError(str(exc)) from exc


def read_demand(path: str | Path) -> Demand:
    return loads_demand(Path(path).read_text())
