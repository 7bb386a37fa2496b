"""Command-line front end.

Exit codes: 0 all checks passed, 1 usage error, 2 I/O or parse error,
3 budget exhausted (partial result), 4 a checked property failed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from lced.campaigns import (
    ALL_INSTANCES,
    DEFAULTS,
    SELECTORS,
    CampaignConfig,
    combined_exit_code,
    run_all,
    run_campaign,
)
from lced.corpus import complete_graph, dumbbell, instance_seed, ladder_sequence, path_graph, random_graph
from lced.decomposition import FAMILIES, CutFamily, build_decomposition
from lced.errors import ArgumentError, BudgetExceeded, FormatError
from lced.graph import degree_weighting, dumps_graph, loads_weighting, read_graph
from lced.greedy import DEFAULT_CYCLE_BUDGET, dumps_sequence, generate_parallel_greedy
from lced.rational import parse_fraction

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_BUDGET, EXIT_FAIL = 0, 1, 2, 3, 4

BUDGET_ENV = {
    "budget_cycles": ("LCED_BUDGET_CYCLES", DEFAULT_CYCLE_BUDGET),
    "budget_exhaustive": ("LCED_BUDGET_EXHAUSTIVE", 200_000),
    "budget_iterations": ("LCED_BUDGET_ITERATIONS", 1000),
}
GENERATE_SALT = 101


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_range(text: str) -> tuple[int, int]:
    """``N`` or ``LO:HI``."""
    try:
        lo, _, hi = text.partition(":")
        pair = (int(lo), int(hi or lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}") from None
    if pair[0] > pair[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return pair


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 3 or 1/10, got {text!r}") from None


def _fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_fraction(x) for x in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed")
    common.add_argument("--threads", type=int, default=1, help="worker processes for campaigns")
    common.add_argument("--out", default=None, help="output directory")
    for name, (env, default) in BUDGET_ENV.items():
        common.add_argument(
            "--" + name.replace("_", "-"), type=int, default=None, help=f"default {default}, env {env}"
        )

    parser = _Parser(prog="lced", description="Length-constrained cuts, parallel-greedy graphs, dispersal checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", parents=[common], help="write random instances and a seed manifest")
    gen.add_argument("--kind", choices=("pg", "graph"), default="pg")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--s", type=int, default=2, help="parallel-greedy slack (pg only)")
    gen.add_argument("--rounds", type=int, default=10)
    gen.add_argument("--instances", type=int, default=1)

    chk = sub.add_parser("check", parents=[common], help="run a check campaign and write CSV/JSON reports")
    chk.add_argument("lemma", choices=SELECTORS)
    chk.add_argument("--instances", type=int, default=None)
    chk.add_argument("--n", type=_int_range, default=None, help="N or LO:HI")
    chk.add_argument("--s", type=_int_list, default=None, help="comma-separated s values")
    chk.add_argument("--rounds", type=_int_range, default=None, help="N or LO:HI")
    chk.add_argument("--h", type=_fraction_list, default=None, help="comma-separated h values")
    chk.add_argument("--phi", type=_fraction_list, default=None, help="comma-separated phi values")
    chk.add_argument("--max-edges", type=int, default=3)
    chk.add_argument("--report-ratio", action="store_true", help="add alpha/(s n^(2/s)) column")

    dec = sub.add_parser("decompose", parents=[common], help="build a decomposition and print it as JSON")
    dec.add_argument("graph")
    dec.add_argument("--weighting", default="deg", help='"deg" or a file of "v weight" lines')
    dec.add_argument("--h", type=_fraction, default=Fraction(1))
    dec.add_argument("--s", type=_fraction, default=Fraction(2))
    dec.add_argument("--phi", type=_fraction, required=True)
    dec.add_argument("--family", choices=FAMILIES, default="balls")
    dec.add_argument("--max-edges", type=int, default=3)

    sub.add_parser("fixtures", parents=[common], help="write the bundled fixture instances")
    return parser


def resolve_budget(args, name: str) -> int:
    """Flag, then environment variable, then built-in default."""
    flag = getattr(args, name)
    if flag is not None:
        return flag
    env, default = BUDGET_ENV[name]
    raw = os.environ.get(env)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ArgumentError(f"{env} must be an integer, got {raw!r}") from None


def cmd_generate(args) -> int:
    if args.n < 2 or args.instances < 1 or args.rounds < 1 or (args.kind == "pg" and args.s < 2):
        raise ArgumentError("need --n >= 2, --instances >= 1, --rounds >= 1 and --s >= 2")
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"kind": args.kind, "master_seed": args.seed, "instances": []}
    for i in range(args.instances):
        seed = instance_seed(args.seed, i, GENERATE_SALT)
        if args.kind == "pg":
            seq = generate_parallel_greedy(args.n, args.s, args.rounds, seed)
            name, text = f"pg_{i:04d}.txt", dumps_sequence(seq)
            entry = {"file": name, "seed": seed, "n": args.n, "s": args.s, "rounds": args.rounds, "k": seq.k}
        else:
            g = random_graph(random.Random(seed), args.n, args.n)
            name, text = f"graph_{i:04d}.txt", dumps_graph(g)
            entry = {"file": name, "seed": seed, "n": g.n, "m": g.m}
        (out / name).write_text(text)
        manifest["instances"].append(entry)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {args.instances} {args.kind} instance(s) to {out}")
    return EXIT_OK


def _campaign_config(args) -> CampaignConfig:
    budgets = dict(
        cycle_budget=resolve_budget(args, "budget_cycles"),
        exhaustive_budget=resolve_budget(args, "budget_exhaustive"),
        iteration_cap=resolve_budget(args, "budget_iterations"),
    )
    lemma = args.lemma if args.lemma != "all" else "dispersion"
    fields = dict(DEFAULTS.get(lemma, {}))
    if args.n:
        fields["n_min"], fields["n_max"] = args.n
    if args.rounds:
        fields["rounds_min"], fields["rounds_max"] = args.rounds
    if args.s:
        fields["s_values"] = args.s
    if args.h:
        fields["h_values"] = args.h
    if args.phi:
        fields["phi_values"] = args.phi
    return CampaignConfig(
        lemma=args.lemma,
        instances=args.instances if args.instances is not None else 20,
        seed=args.seed,
        threads=args.threads,
        max_edges=args.max_edges,
        report_ratio=args.report_ratio,
        **budgets,
        **fields,
    )


def cmd_check(args) -> int:
    cfg = _campaign_config(args)
    out = Path(args.out or "reports")
    if args.lemma == "all":
        results = run_all(cfg, args.instances if args.instances is not None else ALL_INSTANCES)
    else:
        results = [run_campaign(cfg)]
    for res in results:
        res.write(out)
        cal = res.summary.get("calibrated", {})
        extra = "".join(f" {k}={v}" for k, v in sorted(cal.items()) if k != "instances_used")
        print(f"{res.lemma}: {res.passed} pass, {res.failed} fail, {res.skipped} skipped{extra}")
    return combined_exit_code(results)


def cmd_decompose(args) -> int:
    g = read_graph(args.graph)
    if args.weighting == "deg":
        a = degree_weighting(g)
    else:
        a = loads_weighting(Path(args.weighting).read_text(), g.n)
    family = CutFamily(args.family, args.max_edges, resolve_budget(args, "budget_exhaustive"))
    try:
        res = build_decomposition(g, a, args.h, args.s, args.phi, family, resolve_budget(args, "budget_iterations"))
    except BudgetExceeded as exc:
        print(json.dumps({"error": str(exc), "partial_log": exc.progress or []}, indent=2, sort_keys=True))
        return EXIT_BUDGET
    text = res.dumps()
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "decomposition.json").write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    out = Path(args.out or "fixtures")
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "dumbbell.graph": dumps_graph(dumbbell()),
        "k4.graph": dumps_graph(complete_graph(4)),
        "path8.graph": dumps_graph(path_graph(8)),
        "ladder12.pg": dumps_sequence(ladder_sequence()),
    }
    for name, text in files.items():
        (out / name).write_text(text)
    print(f"wrote {len(files)} fixtures to {out}")
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "check": cmd_check, "decompose": cmd_decompose, "fixtures": cmd_fixtures}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return COMMANDS[args.command](args)
    except ArgumentError as exc:
        print(f"lced: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, OSError, UnicodeDecodeError) as exc:
        print(f"lced: input/output error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
