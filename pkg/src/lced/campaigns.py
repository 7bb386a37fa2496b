"""Per-property campaigns: generate instances, run exact checks, emit CSV rows.

Every instance draws its randomness from a seed derived from
``(master seed, instance index, lemma salt)``, so rows are identical whatever
the worker count. Rows keep rationals as ``num/den`` strings; the only floats
are the ``*_ratio`` columns, which feed calibration and plots.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from functools import partial
from pathlib import Path

from lced.arboricity import arboricity_exact, forest_cover, power_ratio, within_power_bound
from lced.corpus import (
    complete_graph,
    dumbbell,
    instance_seed,
    ladder_sequence,
    path_graph,
    random_cut_sequence,
    random_graph,
    random_weighting,
)
from lced.cuts import sparsity, verify_cut_sequence
from lced.decomposition import CutFamily, build_decomposition, certify_no_sparse_cut, find_sparse_cut
from lced.dispersal import union_sparsity_check, verify_dispersed_properties
from lced.errors import ArgumentError, BudgetExceeded
from lced.graph import degree_weighting
from lced.greedy import (
    DEFAULT_CYCLE_BUDGET,
    check_cycle_property,
    check_dispersion,
    count_monotonic_paths,
    counting_constant_needed,
    generate_parallel_greedy,
    hiker_walk,
    monotonic_length,
    verify_parallel_greedy,
)
from lced.rational import fmt

LEMMAS = ("dispersion", "cycles", "hiker", "counting", "arboricity", "dispersal", "union", "decomposition")
SELECTORS = LEMMAS + ("fixtures", "all")
PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


@dataclass(frozen=True)
class CampaignConfig:
    lemma: str = "dispersion"
    instances: int = 20
    n_min: int = 10
    n_max: int = 60
    s_values: tuple[int, ...] = (4, 6, 8, 10)
    rounds_min: int = 1
    rounds_max: int = 20
    h_values: tuple[Fraction, ...] = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
    phi_values: tuple[Fraction, ...] = (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(1))
    seed: int = 0
    threads: int = 1
    cycle_budget: int = DEFAULT_CYCLE_BUDGET
    exhaustive_budget: int = 200_000
    iteration_cap: int = 1000
    max_edges: int = 3
    report_ratio: bool = False

    def __post_init__(self):
        if self.lemma not in SELECTORS:
            raise ArgumentError(f"unknown lemma {self.lemma!r}; choose from {SELECTORS}")
        if self.instances < 0 or not 2 <= self.n_min <= self.n_max:
            raise ArgumentError("need instances >= 0 and 2 <= n_min <= n_max")
        if not 1 <= self.rounds_min <= self.rounds_max:
            raise ArgumentError("need 1 <= rounds_min <= rounds_max")
        if not self.s_values or min(self.s_values) < 2:
            raise ArgumentError("s values must be non-empty and at least 2")
        if not self.h_values or min(self.h_values) <= 0:
            raise ArgumentError("h values must be non-empty and positive")
        if not self.phi_values or min(self.phi_values) <= 0:
            raise ArgumentError("phi values must be non-empty and positive")
        if self.threads < 1:
            raise ArgumentError("threads must be at least 1")

    def describe(self) -> dict:
        out = asdict(self)
        out["s_values"] = list(self.s_values)
        out["h_values"] = [fmt(h) for h in self.h_values]
        out["phi_values"] = [fmt(p) for p in self.phi_values]
        del out["threads"]  # must not influence report bytes
        return out


# Per-lemma default sizes; ``check all`` uses them with ``ALL_INSTANCES`` each.
DEFAULTS: dict[str, dict] = {
    "dispersion": dict(n_min=10, n_max=100, s_values=(4, 6, 8, 10), rounds_min=1, rounds_max=30),
    "cycles": dict(n_min=6, n_max=40, s_values=tuple(range(2, 13)), rounds_min=1, rounds_max=8),
    "hiker": dict(n_min=10, n_max=100, s_values=(2, 3, 4, 6, 8, 10), rounds_min=1, rounds_max=30),
    "counting": dict(n_min=20, n_max=100, s_values=(2, 3, 4), rounds_min=10, rounds_max=60),
    "arboricity": dict(n_min=10, n_max=60, s_values=(2, 3, 4, 6, 8), rounds_min=5, rounds_max=40),
    "dispersal": dict(n_min=3, n_max=7, s_values=(2, 3, 5)),
    "union": dict(n_min=3, n_max=7, s_values=(2, 3, 5)),
    "decomposition": dict(n_min=3, n_max=6, s_values=(2, 3), h_values=(Fraction(1), Fraction(2))),
    "fixtures": {},
}
ALL_INSTANCES = 8
SALT = {name: i + 1 for i, name in enumerate(LEMMAS + ("fixtures",))}
SALT["union"] = SALT["dispersal"]  # union runs on the same cut-sequence corpus


def default_config(lemma: str, **overrides) -> CampaignConfig:
    return CampaignConfig(lemma=lemma, **{**DEFAULTS.get(lemma, {}), **overrides})


def _rng(cfg: CampaignConfig, index: int) -> tuple[random.Random, int]:
    seed = instance_seed(cfg.seed, index, SALT[cfg.lemma])
    return random.Random(seed), seed


def _pg_instance(cfg, index):
    rng, seed = _rng(cfg, index)
    n = rng.randint(cfg.n_min, cfg.n_max)
    s = rng.choice(cfg.s_values)
    rounds = rng.randint(cfg.rounds_min, cfg.rounds_max)
    seq = generate_parallel_greedy(n, s, rounds, seed)
    return seq, {"instance": index, "seed": seed, "n": n, "s": s, "rounds": rounds, "k": seq.k, "m": seq.m}


CUT_RETRIES = 20


def _cut_instance(cfg, index):
    """Random small graph with a random phi-sparse cut sequence on it (non-empty when possible)."""
    rng, seed = _rng(cfg, index)
    for _ in range(CUT_RETRIES):
        g = random_graph(rng, cfg.n_min, cfg.n_max)
        a = random_weighting(rng, g)
        h = rng.choice(cfg.h_values)
        s = rng.choice(cfg.s_values)
        cuts, phi = random_cut_sequence(rng, g, a, h, s)
        if cuts:
            break
    row = {"instance": index, "seed": seed, "n": g.n, "m": g.m, "A": a.total, "h": fmt(h), "s": s,
           "cuts": len(cuts), "phi": fmt(phi)}
    return g, a, h, s, cuts, phi, row


# -- instance runners (module level so worker processes can pickle them) --------


def run_dispersion(cfg, index):
    seq, row = _pg_instance(cfg, index)
    greedy = verify_parallel_greedy(seq, row["s"])
    rep = check_dispersion(seq, row["s"])
    row.update(path_length=rep.length, paths=rep.paths, pg_ok=greedy.ok,
               pass_=PASS if rep.ok and greedy.ok else FAIL)
    return row, None


def run_cycles(cfg, index):
    seq, row = _pg_instance(cfg, index)
    try:
        rep = check_cycle_property(seq, row["s"], cfg.cycle_budget)
    except BudgetExceeded as exc:
        row.update(cycles=exc.progress, pass_=SKIPPED)
        return row, None
    row.update(cycles=rep.cycles, pass_=PASS if rep.ok else FAIL)
    return row, None


def _window_simple(walk: list[int], s: int) -> bool:
    w = s + 1
    return all(len(set(walk[i : i + w + 1])) == len(walk[i : i + w + 1]) for i in range(max(1, len(walk) - w)))


def run_hiker(cfg, index):
    seq, row = _pg_instance(cfg, index)
    s = row["s"]
    res = hiker_walk(seq)
    monotone = all(all(w[j][2] < w[j + 1][2] for j in range(len(w) - 1)) for w in res.walks)
    windows = all(_window_simple(res.vertex_walk(v), s) for v in range(seq.n))
    applies = 4 * seq.m >= s * seq.n
    long_ok = (not applies) or 2 * res.longest >= s
    ok = res.total == 2 * seq.m and monotone and windows and long_ok
    row.update(total_walk=res.total, longest=res.longest, long_applies=applies, monotone=monotone,
               windows_simple=windows, pass_=PASS if ok else FAIL)
    return row, None


def run_counting(cfg, index):
    seq, row = _pg_instance(cfg, index)
    L = monotonic_length(row["s"])
    paths = count_monotonic_paths(seq, L)
    d = Fraction(2 * seq.m, seq.n)
    applicable = d >= 2 * L
    row.update(path_length=L, paths=paths, avg_degree=fmt(d), applicable=applicable)
    if applicable and paths == 0:
        row.update(c_ratio="inf", pass_=FAIL)
        return row, None
    ratio = counting_constant_needed(seq.n, d, paths, L) if applicable else 0.0
    row["c_ratio"] = f"{ratio:.6f}"
    calib = (ratio, (seq.n, seq.m, row["s"], paths)) if applicable else None
    row["pass_"] = PASS
    return row, calib


def run_arboricity(cfg, index):
    seq, row = _pg_instance(cfg, index)
    edges = seq.edge_set()
    alpha = arboricity_exact(seq.n, edges)
    cover = forest_cover(seq.n, edges) if edges else None
    ratio = power_ratio(alpha, row["s"], seq.n)
    row.update(alpha=alpha, cover=cover.size if cover else 0,
               cover_ok=cover is None or cover.size <= max(1, 2 * alpha - 1))
    if cfg.report_ratio:
        row["alpha_ratio"] = f"{ratio:.6f}"
    row["pass_"] = PASS if row["cover_ok"] else FAIL
    return row, (ratio, (alpha, row["s"], seq.n))


def run_dispersal(cfg, index):
    g, a, h, s, cuts, phi, row = _cut_instance(cfg, index)
    if not cuts:
        row.update(failed="", pass_=PASS)
        return row, None
    results = verify_dispersed_properties(g, a, cuts, None, h, s)
    failed = [r.property for r in results if not r.passed]
    row.update(failed=";".join(failed), pass_=FAIL if failed else PASS)
    return row, None


def run_union(cfg, index):
    g, a, h, s, cuts, phi, row = _cut_instance(cfg, index)
    if not cuts:
        row.update(pass_=PASS)
        return row, None
    rep = union_sparsity_check(g, a, cuts, h, s)
    row.update(cover_size=rep.cover_size, total_cut=fmt(rep.total_cut_size),
               total_demand=rep.total_demand_size, phi_prime=fmt(rep.phi_prime),
               union_size=fmt(rep.union_size), union_demand=rep.union_demand_size,
               union_sparsity=fmt(rep.union_sparsity), dispersed=fmt(rep.dispersed_size),
               pass_=PASS if rep.ok else FAIL)
    if rep.union_sparsity == math.inf or a.total == 0:
        return row, None
    value = rep.union_sparsity / phi
    ratio = power_ratio(value, s, a.total)
    row["union_ratio"] = f"{ratio:.6f}"
    return row, (ratio, (value, s, a.total))


def run_decomposition(cfg, index):
    rng, seed = _rng(cfg, index)
    g = random_graph(rng, cfg.n_min, cfg.n_max)
    a = degree_weighting(g) if rng.random() < 0.5 else random_weighting(rng, g)
    h = rng.choice(cfg.h_values)
    s = rng.choice(cfg.s_values)
    phi = rng.choice(cfg.phi_values)
    row = {"instance": index, "seed": seed, "n": g.n, "m": g.m, "A": a.total, "h": fmt(h), "s": s, "phi": fmt(phi)}
    family = CutFamily("exhaustive", cfg.max_edges, cfg.exhaustive_budget)
    if a.total == 0:
        row.update(cuts=0, size="0", slack="0", pass_=PASS)
        return row, None
    try:
        res = build_decomposition(g, a, h, s, phi, family, cfg.iteration_cap)
    except BudgetExceeded:
        row.update(pass_=SKIPPED)
        return row, None
    seq_ok = verify_cut_sequence(g, a, res.cuts, h, s, phi).ok
    maximal = certify_no_sparse_cut(_after(g, res, h, s), a, h, s, phi, family)
    union_ok, size_ok, phi_prime = True, True, None
    if res.cuts:
        rep = union_sparsity_check(g, a, res.cuts, h, s)
        union_ok = rep.ok
        phi_prime = rep.phi_prime
        size_ok = phi_prime is None or res.size <= phi_prime * a.total
    ok = seq_ok and maximal and union_ok and size_ok
    ratio = power_ratio(res.slack, s, a.total)
    row.update(cuts=len(res.cuts), size=fmt(res.size), slack=fmt(res.slack),
               phi_prime="" if phi_prime is None else fmt(phi_prime), seq_ok=seq_ok, maximal=maximal,
               union_ok=union_ok, size_ok=size_ok, slack_ratio=f"{ratio:.6f}", pass_=PASS if ok else FAIL)
    return row, (ratio, (res.slack, s, a.total))


def _after(g, res, h, s):
    from lced.cuts import apply_cut

    cur = g
    for c in res.cuts:
        cur = apply_cut(cur, c, h * s)
    return cur


def run_fixture(cfg, index):
    """Fixed named instances; ``index`` selects one."""
    name, fn = FIXTURE_CHECKS[index]
    ok, detail = fn()
    return {"instance": index, "fixture": name, "detail": detail, "pass_": PASS if ok else FAIL}, None


def _fx_ladder():
    seq = ladder_sequence()
    ok = verify_parallel_greedy(seq, 12).ok and check_cycle_property(seq, 12).ok
    return ok, f"n={seq.n} m={seq.m}"


def _fx_dumbbell():
    g = dumbbell()
    a = degree_weighting(g)
    res = build_decomposition(g, a, 3, 2, Fraction(1, 10), CutFamily("exhaustive"))
    ok = len(res.cuts) == 1 and res.cuts[0].values == {6: Fraction(1)}
    return ok, f"cuts={len(res.cuts)} slack={fmt(res.slack)}"


def _fx_expander():
    g = complete_graph(4)
    ok = certify_no_sparse_cut(g, degree_weighting(g), 1, 2, Fraction(1, 10), CutFamily("exhaustive", 6))
    return ok, "K4 h=1 s=2 phi=1/10"


def _fx_path():
    g = path_graph(8)
    a = degree_weighting(g)
    found = find_sparse_cut(g, a, 8, 2, Fraction(1, 4), CutFamily("singletons"))
    ok = found is not None and sparsity(g, found.cut, a, 8, 2) <= Fraction(1, 4)
    return ok, "none" if found is None else f"sparsity={fmt(found.sparsity)}"


FIXTURE_CHECKS = (
    ("ladder-12pg", _fx_ladder),
    ("dumbbell", _fx_dumbbell),
    ("k4-expander", _fx_expander),
    ("long-path", _fx_path),
)

RUNNERS = {
    "dispersion": run_dispersion,
    "cycles": run_cycles,
    "hiker": run_hiker,
    "counting": run_counting,
    "arboricity": run_arboricity,
    "dispersal": run_dispersal,
    "union": run_union,
    "decomposition": run_decomposition,
    "fixtures": run_fixture,
}


# -- calibration ---------------------------------------------------------------


def calibrate(payloads, exact_ok) -> Fraction:
    """Smallest constant on the 1/100 grid passing ``exact_ok`` for every payload.

    Starts from the float estimate and steps up until the exact checks agree,
    so float rounding can never let a violating instance through.
    """
    worst = max((r for r, _ in payloads), default=0.0)
    c = Fraction(max(1, math.ceil(worst * 100 - 1e-9)), 100)
    while not all(exact_ok(data, c) for _, data in payloads):
        c += Fraction(1, 100)
    return c


def _counting_ok(data, c):
    n, m, s, paths = data
    L = monotonic_length(s)
    d = Fraction(2 * m, n)
    return paths >= n * (d / (c * 2 * L)) ** L


def _power_ok(data, c):
    value, s, base = data
    return within_power_bound(value, s, base, c)


CALIBRATORS = {
    "counting": ("c", _counting_ok),
    "arboricity": ("c_prime", _power_ok),
    "union": ("c_union", _power_ok),
    "decomposition": ("c_double_prime", _power_ok),
}


# -- campaign driver -----------------------------------------------------------


@dataclass
class CampaignResult:
    lemma: str
    rows: list[dict]
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> int:
        return sum(r["pass"] == PASS for r in self.rows)

    @property
    def failed(self) -> int:
        return sum(r["pass"] == FAIL for r in self.rows)

    @property
    def skipped(self) -> int:
        return sum(r["pass"] == SKIPPED for r in self.rows)

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 4
        return 3 if self.skipped else 0

    def csv_text(self) -> str:
        columns: list[str] = []
        for r in self.rows:
            columns.extend(k for k in r if k not in columns)
        if "pass" in columns:
            columns.remove("pass")
            columns.insert(1, "pass")
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", restval="")
        w.writeheader()
        w.writerows(self.rows)
        return buf.getvalue()

    def json_text(self) -> str:
        return json.dumps(self.summary, indent=2, sort_keys=True) + "\n"

    def write(self, out_dir: str | Path) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / f"{self.lemma}.csv", out / f"{self.lemma}.json"]
        paths[0].write_text(self.csv_text())
        paths[1].write_text(self.json_text())
        return paths


def run_campaign(cfg: CampaignConfig) -> CampaignResult:
    if cfg.lemma == "all":
        raise ArgumentError("use run_all for the combined campaign")
    runner = RUNNERS[cfg.lemma]
    count = len(FIXTURE_CHECKS) if cfg.lemma == "fixtures" else cfg.instances
    job = partial(runner, cfg)
    if cfg.threads > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            outputs = list(pool.map(job, range(count), chunksize=max(1, count // (4 * cfg.threads))))
    else:
        outputs = [job(i) for i in range(count)]

    rows = []
    for row, _ in outputs:
        row["pass"] = row.pop("pass_")
        rows.append({k: _cell(v) for k, v in row.items()})
    summary = {"lemma": cfg.lemma, "config": cfg.describe()}
    if cfg.lemma in CALIBRATORS:
        name, check = CALIBRATORS[cfg.lemma]
        payloads = [(i, p) for i, (_, p) in enumerate(outputs) if p is not None]
        c = calibrate([p for _, p in payloads], check)
        summary["calibrated"] = {name: fmt(c), "instances_used": len(payloads)}
        for i, (_, data) in payloads:
            if rows[i]["pass"] == PASS and not check(data, c):  # cannot happen after calibrate
                rows[i]["pass"] = FAIL
    result = CampaignResult(cfg.lemma, rows, summary)
    summary.update(instances=len(rows), passed=result.passed, failed=result.failed, skipped=result.skipped)
    return result


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return fmt(v)
    return v


def run_all(base: CampaignConfig, instances: int = ALL_INSTANCES) -> list[CampaignResult]:
    """Every lemma at its default sizes plus the fixture checks."""
    results = []
    for lemma in LEMMAS + ("fixtures",):
        cfg = replace(base, lemma=lemma, instances=instances, **DEFAULTS[lemma])
        results.append(run_campaign(cfg))
    return results


def combined_exit_code(results: list[CampaignResult]) -> int:
    codes = {r.exit_code for r in results}
    return 4 if 4 in codes else 3 if 3 in codes else 0
