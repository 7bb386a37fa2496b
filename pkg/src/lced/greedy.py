"""s-parallel-greedy graphs: verification, generation, monotonic paths, hikers."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from lced.errors import ArgumentError, BudgetExceeded, FormatError, MatchingStructureError
from lced.rational import as_fraction

DEFAULT_CYCLE_BUDGET = 2_000_000


@dataclass(frozen=True)
class MatchingSequence:
    """Ordered matchings ``M_1..M_k`` on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` with ``u < v``. Matching indices are 1-based
    everywhere they are reported. Construction only checks vertex ids; use
    :meth:`check_structure` (or :func:`verify_parallel_greedy`) for the
    matching/disjointness invariants.
    """

    n: int
    matchings: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        ms = []
        for M in self.matchings:
            edges = []
            for u, v in M:
                u, v = int(u), int(v)
                if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                    raise ArgumentError(f"bad matching edge {(u, v)} for n={self.n}")
                edges.append((min(u, v), max(u, v)))
            ms.append(tuple(edges))
        object.__setattr__(self, "matchings", tuple(ms))

    @property
    def k(self) -> int:
        return len(self.matchings)

    @property
    def m(self) -> int:
        return sum(len(M) for M in self.matchings)

    def indexed_edges(self) -> list[tuple[int, int, int]]:
        """``(u, v, i)`` for every edge, ``i`` the 1-based matching index."""
        return [(u, v, i) for i, M in enumerate(self.matchings, start=1) for u, v in M]

    def edge_set(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, _ in self.indexed_edges()]

    def check_structure(self) -> None:
        seen: dict[tuple[int, int], int] = {}
        for i, M in enumerate(self.matchings, start=1):
            used: set[int] = set()
            for e in M:
                if e[0] in used or e[1] in used:
                    raise MatchingStructureError(f"M_{i} is not a matching: {e} shares a vertex")
                used.update(e)
                if e in seen:
                    raise MatchingStructureError(f"edge {e} appears in M_{seen[e]} and M_{i}")
                seen[e] = i

    def restrict(self, keep: Iterable[tuple[int, int]]) -> "MatchingSequence":
        """Sub-sequence keeping only the listed edges (matching order preserved)."""
        keep = {(min(u, v), max(u, v)) for u, v in keep}
        return MatchingSequence(self.n, tuple(tuple(e for e in M if e in keep) for M in self.matchings))

    def incidence(self) -> list[list[tuple[int, int]]]:
        """Per vertex, ``(matching index, neighbour)`` sorted by index."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, i in self.indexed_edges():
            inc[u].append((i, v))
            inc[v].append((i, u))
        for lst in inc:
            lst.sort()
        return inc


def _csr(n: int, edges: Sequence[tuple[int, int]]) -> csr_matrix:
    if not edges:
        return csr_matrix((n, n), dtype=np.int8)
    arr = np.asarray(edges, dtype=np.int64)
    rows = np.concatenate([arr[:, 0], arr[:, 1]])
    cols = np.concatenate([arr[:, 1], arr[:, 0]])
    return csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))


def hop_distances(n: int, edges, sources=None, limit=None) -> np.ndarray:
    """Unit-length distances; entries beyond ``limit`` are ``inf``."""
    kwargs = {} if limit is None else {"limit": float(limit)}
    return dijkstra(_csr(n, edges), directed=False, unweighted=True, indices=sources, **kwargs)


@dataclass
class GreedyReport:
    ok: bool
    index: int | None = None
    edge: tuple[int, int] | None = None
    distance: float | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_parallel_greedy(seq: MatchingSequence, s) -> GreedyReport:
    """Every ``{u,v}`` in ``M_i`` must be at unit distance ``> s`` in ``M_1 ∪ .. ∪ M_{i-1}``.

    Raises :class:`MatchingStructureError` for a malformed sequence; a distance
    violation is reported, not raised.
    """
    s = as_fraction(s)
    if s < 2:
        raise ArgumentError("s must be at least 2")
    seq.check_structure()
    limit = math.floor(s)
    prior: list[tuple[int, int]] = []
    for i, M in enumerate(seq.matchings, start=1):
        if M and prior:
            sources = [u for u, _ in M]
            dist = hop_distances(seq.n, prior, sources, limit)
            for row, (u, v) in enumerate(M):
                # entries beyond the limit come back as inf
                if np.isfinite(dist[row, v]):
                    return GreedyReport(False, i, (u, v), float(dist[row, v]))
        prior.extend(M)
    return GreedyReport(True)


def generate_parallel_greedy(n: int, s: int, rounds: int, rng_seed: int) -> MatchingSequence:
    """Random s-parallel-greedy graph built round by round.

    Each round takes a random maximal matching of the far-pairs graph (pairs at
    current distance ``> s``): vertices are visited in random order and each
    unmatched vertex is paired with a uniformly random unmatched far vertex.
    Stops early once no far pair remains.
    """
    if n < 2 or s < 2 or rounds < 1:
        raise ArgumentError("need n >= 2, s >= 2, rounds >= 1")
    rng = np.random.default_rng(rng_seed)
    edges: list[tuple[int, int]] = []
    matchings = []
    for _ in range(rounds):
        dist = hop_distances(n, edges, None, s)
        far = dist > s
        free = np.ones(n, dtype=bool)
        M = []
        for u in rng.permutation(n):
            if not free[u]:
                continue
            cand = np.flatnonzero(far[u] & free)
            if cand.size == 0:
                continue
            v = int(cand[rng.integers(cand.size)])
            free[u] = free[v] = False
            M.append((min(int(u), v), max(int(u), v)))
        if not M:
            break
        M.sort()
        matchings.append(tuple(M))
        edges.extend(M)
    return MatchingSequence(n, tuple(matchings))


def greedy_spanner_sequence(n: int, s: int, rng_seed: int, density: float = 0.5) -> MatchingSequence:
    """Classic greedy s-spanner of a random graph, one edge per matching."""
    rng = np.random.default_rng(rng_seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    order = rng.permutation(len(pairs))
    adj: list[list[int]] = [[] for _ in range(n)]
    matchings = []
    for idx in order:
        u, v = pairs[idx]
        if _bfs_within(adj, u, v, s):
            continue
        adj[u].append(v)
        adj[v].append(u)
        matchings.append(((u, v),))
    return MatchingSequence(n, tuple(matchings))


def _bfs_within(adj, u: int, v: int, limit: int) -> bool:
    seen = {u}
    frontier = [u]
    for _ in range(limit):
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y == v:
                    return True
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return False


def monotonic_length(s) -> int:
    """Path length used by the dispersion/counting checks: ``ceil(s/2)``."""
    return math.ceil(as_fraction(s) / 2)


def iter_monotonic_paths(seq: MatchingSequence, length: int):
    """Yield every simple monotonic path with exactly ``length`` edges, as a vertex tuple.

    The path is reported in the direction of increasing matching index.
    """
    if length < 1:
        raise ArgumentError("length must be at least 1")
    inc = seq.incidence()
    keys = [[i for i, _ in lst] for lst in inc]

    def extend(path, last_index):
        u = path[-1]
        start = bisect_right(keys[u], last_index)
        lst = inc[u]
        for j in range(start, len(lst)):
            i, w = lst[j]
            if w in path:
                continue
            if len(path) == length:
                yield (*path, w)
            else:
                yield from extend((*path, w), i)

    for u in range(seq.n):
        yield from extend((u,), 0)


def enumerate_monotonic_paths(seq: MatchingSequence, length: int) -> dict[tuple[int, int], int]:
    """Count monotonic ``length``-edge paths per ordered (first, last) endpoint pair."""
    counts: dict[tuple[int, int], int] = {}
    for path in iter_monotonic_paths(seq, length):
        key = (path[0], path[-1])
        counts[key] = counts.get(key, 0) + 1
    return counts


def count_monotonic_paths(seq: MatchingSequence, length: int) -> int:
    return sum(1 for _ in iter_monotonic_paths(seq, length))


@dataclass
class DispersionReport:
    ok: bool
    length: int
    paths: int
    pair: tuple[int, int] | None = None
    count: int = 0


def check_dispersion(seq: MatchingSequence, s) -> DispersionReport:
    """No ordered pair may be joined by two monotonic ``ceil(s/2)``-paths."""
    L = monotonic_length(s)
    counts = enumerate_monotonic_paths(seq, L)
    total = sum(counts.values())
    for pair, cnt in counts.items():
        if cnt >= 2:
            return DispersionReport(False, L, total, pair, cnt)
    return DispersionReport(True, L, total)


@dataclass
class CycleReport:
    ok: bool
    cycles: int
    cycle: tuple[int, ...] | None = None
    indices: tuple[int, ...] | None = None


def check_cycle_property(seq: MatchingSequence, s: int, budget: int = DEFAULT_CYCLE_BUDGET) -> CycleReport:
    """Every cycle with at most ``s+1`` edges holds two edges of its top matching.

    Cycles are enumerated exhaustively (each once: smallest vertex first, then
    the lower of its two cycle neighbours). ``budget`` caps DFS expansions; when
    hit, :class:`BudgetExceeded` is raised instead of returning a partial answer.
    """
    max_len = int(s) + 1
    index_of = {(u, v): i for u, v, i in seq.indexed_edges()}
    adj: list[list[int]] = [[] for _ in range(seq.n)]
    for u, v in index_of:
        adj[u].append(v)
        adj[v].append(u)
    for lst in adj:
        lst.sort()
    work = 0
    cycles = 0

    def idx(a, b):
        return index_of[(a, b) if a < b else (b, a)]

    for start in range(seq.n):
        stack = [(start, iter(adj[start]))]
        on_path = [start]
        in_path = {start}
        while stack:
            node, it = stack[-1]
            advanced = False
            for w in it:
                if w == start:
                    if len(on_path) >= 3 and on_path[1] < on_path[-1]:
                        cycles += 1
                        cyc = tuple(on_path)
                        ids = tuple(idx(cyc[j], cyc[(j + 1) % len(cyc)]) for j in range(len(cyc)))
                        top = max(ids)
                        if ids.count(top) < 2:
                            return CycleReport(False, cycles, cyc, ids)
                    continue
                if w < start or w in in_path or len(on_path) >= max_len:
                    continue
                work += 1
                if work > budget:
                    raise BudgetExceeded(
                        f"cycle enumeration exceeded budget {budget} (s+1={max_len})",
                        bound=budget,
                        progress=cycles,
                    )
                on_path.append(w)
                in_path.add(w)
                stack.append((w, iter(adj[w])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                in_path.discard(on_path.pop())
    return CycleReport(True, cycles)


@dataclass
class HikerResult:
    walks: list[list[tuple[int, int, int]]]  # per hiker: (from, to, matching index)
    total: int
    longest: int

    def vertex_walk(self, hiker: int) -> list[int]:
        w = self.walks[hiker]
        return [hiker] + [step[1] for step in w]


def hiker_walk(seq: MatchingSequence) -> HikerResult:
    """One hiker per vertex; for each matching in order, hikers at its endpoints swap."""
    at = list(range(seq.n))
    walks: list[list[tuple[int, int, int]]] = [[] for _ in range(seq.n)]
    for i, M in enumerate(seq.matchings, start=1):
        for x, y in M:
            hx, hy = at[x], at[y]
            walks[hx].append((x, y, i))
            walks[hy].append((y, x, i))
            at[x], at[y] = hy, hx
    lengths = [len(w) for w in walks]
    return HikerResult(walks, sum(lengths), max(lengths, default=0))


@dataclass
class CountingReport:
    applicable: bool
    ok: bool
    paths: int
    bound: Fraction
    average_degree: Fraction
    length: int


def check_full_counting(seq: MatchingSequence, s, c, paths: int | None = None) -> CountingReport:
    """Monotonic ``L``-path count against ``n * (d / (c*2L))**L`` where ``L = ceil(s/2)``.

    Only applies when the average degree ``d`` is at least ``2L`` (``= s`` for even s).
    """
    c = as_fraction(c)
    L = monotonic_length(s)
    n = seq.n
    d = Fraction(2 * seq.m, n)
    if paths is None:
        paths = count_monotonic_paths(seq, L)
    bound = n * (d / (c * 2 * L)) ** L
    applicable = d >= 2 * L
    return CountingReport(applicable, (not applicable) or paths >= bound, paths, bound, d, L)


def counting_constant_needed(n: int, d: Fraction, paths: int, L: int) -> float:
    """Smallest ``c`` with ``paths >= n * (d/(c*2L))**L``; float, for calibration only."""
    return float(d) / (2 * L) / (paths / n) ** (1.0 / L)


# -- file format: "n k", then per matching "i cnt" and cnt lines "u v" ---------


def dumps_sequence(seq: MatchingSequence) -> str:
    lines = [f"{seq.n} {seq.k}"]
    for i, M in enumerate(seq.matchings, start=1):
        lines.append(f"{i} {len(M)}")
        lines += [f"{u} {v}" for u, v in M]
    return "\n".join(lines) + "\n"


def loads_sequence(text: str) -> MatchingSequence:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        n, k = int(rows[0][0]), int(rows[0][1])
        pos = 1
        matchings = []
        for expected in range(1, k + 1):
            i, cnt = int(rows[pos][0]), int(rows[pos][1])
            if i != expected:
                raise FormatError(f"matching header {i} out of order (expected {expected})")
            pos += 1
            M = []
            for _ in range(cnt):
                u, v = rows[pos]
                M.append((int(u), int(v)))
                pos += 1
            matchings.append(tuple(M))
        if pos != len(rows):
            raise FormatError("trailing lines after last matching")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed matching sequence: {exc}") from exc
    try:
        return MatchingSequence(n, tuple(matchings))
    except ArgumentError as exc:
        raise FormatError(str(exc)) from exc


def read_sequence(path: str | Path) -> MatchingSequence:
    return loads_sequence(Path(path).read_text())


def write_sequence(seq: MatchingSequence, path: str | Path) -> None:
    Path(path).write_text(dumps_sequence(seq))
