"""Command-line front end: generate corpora, run the bisection pipelines,
compare against the exact oracle, and emit machine-readable records.

Subcommands: gen, bisect, oracle, bench, verify-free.
Exit codes: 0 ok, 2 freeness violation, 3 oracle size guard, 4 empty corpus,
1 any other error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .generators import GeneratorSpec
from .graph_core import Graph, find_cycle_of_length, load_graph_with_meta, save_graph
from .oracle import SizeGuardError, exact_max_bisection, exact_max_cut
from .pipeline import PipelineConfig, bisect_c2k_free, bisect_c4_free
from .rounding import Bisection, _sig12

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_FREE = 2
EXIT_SIZE_GUARD = 3
EXIT_EMPTY_CORPUS = 4

ORACLE_AUTO_MAX_N = 20  # records auto-populate the exact optimum up to here

CSV_COLUMNS = (
    "schema_version",
    "graph_id",
    "family",
    "n",
    "m",
    "k",
    "branch",
    "achieved",
    "m_half",
    "surplus",
    "beta",
    "sdp_bound",
    "shearer_floor",
    "oracle_optimum",
    "seed",
    "config_hash",
)
SCHEMA_VERSION = 1


@dataclass
class RunRecord:
    graph_id: str
    family: str
    n: int
    m: int
    k: int
    branch: str
    achieved: int
    m_half: float
    surplus: float
    beta: float
    sdp_bound: float
    shearer_floor: float
    oracle_optimum: int | None
    wall_time_ms: float
    seed: int
    config_hash: str

    def to_csv_row(self) -> list:
        # wall_time_ms stays out of the CSV so identical reruns are
        # byte-identical; it is still present in the JSON record.
        return [
            SCHEMA_VERSION,
            self.graph_id,
            self.family,
            self.n,
            self.m,
            self.k,
            self.branch,
            self.achieved,
            f"{self.m_half:.12g}",
            f"{self.surplus:.12g}",
            f"{self.beta:.12g}",
            f"{self.sdp_bound:.12g}",
            f"{self.shearer_floor:.12g}",
            "" if self.oracle_optimum is None else self.oracle_optimum,
            self.seed,
            self.config_hash,
        ]

    def to_json(self) -> str:
        payload = {key: _sig12(val) for key, val in self.__dict__.items()}
        payload["schema_version"] = SCHEMA_VERSION
        return json.dumps(payload, sort_keys=True)


def config_hash(cfg: PipelineConfig) -> str:
    payload = json.dumps(
        {
            "k": cfg.k,
            "trials": cfg.trials,
            "seed": cfg.seed,
            "eta": cfg.eta,
            "c": cfg.c,
            "c_gate": cfg.c_gate,
            "Lambda": cfg.Lambda,
            "lambda_small": cfg.lambda_small,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


def run_pipeline(g: Graph, cfg: PipelineConfig) -> tuple[Bisection, dict]:
    if cfg.k == 2:
        bis, report = bisect_c4_free(g, cfg)
        branch = report.constants.get("regime", "")
    else:
        bis, report, _ = bisect_c2k_free(g, cfg.k, cfg)
        branch = report.constants.get("branch", "")
    return bis, {
        "branch": branch,
        "sdp_bound": report.sdp_bound,
        "shearer_floor": report.shearer_floor,
        "beta": report.constants.get("beta", 0.0),
    }


def make_record(graph_id: str, family: str, g: Graph, cfg: PipelineConfig,
                with_oracle: bool = True) -> RunRecord:
    start = time.perf_counter()
    bis, extras = run_pipeline(g, cfg)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    # Revalidate from the serialized form before anything gets written:
    # parsing recounts the cut against the labels and checks balance.
    bis = Bisection.from_json(g, bis.to_json())
    oracle_opt = None
    if with_oracle and g.n <= ORACLE_AUTO_MAX_N:
        oracle_opt = exact_max_bisection(g).optimum
    return RunRecord(
        graph_id=graph_id,
        family=family,
        n=g.n,
        m=g.m,
        k=cfg.k,
        branch=extras["branch"],
        achieved=bis.cut,
        m_half=g.m / 2.0,
        surplus=bis.cut - g.m / 2.0,
        beta=extras["beta"],
        sdp_bound=extras["sdp_bound"],
        shearer_floor=extras["shearer_floor"],
        oracle_optimum=oracle_opt,
        wall_time_ms=elapsed_ms,
        seed=cfg.seed,
        config_hash=config_hash(cfg),
    )


def _generator_spec_from_args(args) -> GeneratorSpec:
    family = args.family.replace("-", "_")
    if family == "incidence_plane":
        return GeneratorSpec(family="incidence_plane", q=args.q)
    if family == "polarity":
        return GeneratorSpec(family="polarity", q=args.q)
    if family == "complete_bipartite":
        return GeneratorSpec(family="complete_bipartite", a=args.a, b=args.b)
    if family == "random_free":
        return GeneratorSpec(family="random_c2k_free", n=args.n, target_m=args.m,
                             k=args.k, seed=args.seed)
    if family == "classic":
        return GeneratorSpec(family="classic", name=args.name, size=args.size)
    raise ValueError(f"unknown generator family {args.family!r}")


def cmd_gen(args) -> int:
    spec = _generator_spec_from_args(args)
    g = spec.build()
    out = Path(args.out) if args.out else Path(f"{spec.default_stem()}.txt")
    save_graph(g, out, comments=[spec.describe()])
    print(f"wrote {out} (n={g.n}, m={g.m})")
    return EXIT_OK


def _check_freeness(g: Graph, k: int) -> tuple[int, ...] | None:
    return find_cycle_of_length(g, 2 * k)


def cmd_bisect(args) -> int:
    g, meta = load_graph_with_meta(args.path)
    if args.verify_free:
        cycle = _check_freeness(g, args.k)
        if cycle is not None:
            print(f"input contains a cycle on {2 * args.k} vertices: {list(cycle)}",
                  file=sys.stderr)
            return EXIT_NOT_FREE
    cfg = PipelineConfig.from_k(args.k, trials=args.trials, seed=args.seed, eta=args.eta)
    record = make_record(Path(args.path).stem, meta.get("family", "unknown"), g, cfg)
    print(record.to_json())
    if args.out:
        new_file = not Path(args.out).exists()
        with open(args.out, "a", newline="") as fh:
            writer = csv.writer(fh)
            if new_file:
                writer.writerow(CSV_COLUMNS)
            writer.writerow(record.to_csv_row())
    return EXIT_OK


def cmd_oracle(args) -> int:
    g, _ = load_graph_with_meta(args.path)
    try:
        result = exact_max_cut(g) if args.cut else exact_max_bisection(g)
    except SizeGuardError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SIZE_GUARD
    print(result.to_json())
    return EXIT_OK


def cmd_bench(args) -> int:
    corpus = sorted(Path(args.corpus).glob("*.txt"))
    if not corpus:
        print(f"no *.txt graphs under {args.corpus}", file=sys.stderr)
        return EXIT_EMPTY_CORPUS
    cfg = PipelineConfig.from_k(args.k, trials=args.trials, seed=args.seed, eta=args.eta)
    records = []
    violations = {"balance": 0, "recount": 0, "oracle": 0}
    for path in corpus:
        g, meta = load_graph_with_meta(path)
        record = make_record(path.stem, meta.get("family", "unknown"), g, cfg)
        if record.oracle_optimum is not None and record.achieved > record.oracle_optimum:
            violations["oracle"] += 1
        records.append(record)
    out_csv = Path(args.out) if args.out else Path("bench_results.csv")
    with open(out_csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(record.to_csv_row())
    families: dict[str, list[float]] = {}
    for record in records:
        families.setdefault(record.family, []).append(record.beta)
    summary = {
        "schema_version": SCHEMA_VERSION,
        "config_hash": config_hash(cfg),
        "graphs": len(records),
        "families": {
            fam: {
                "count": len(betas),
                "min_beta": _sig12(min(betas)),
                "median_beta": _sig12(sorted(betas)[len(betas) // 2]),
            }
            for fam, betas in sorted(families.items())
        },
        "violations": violations,
        "csv": str(out_csv),
    }
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


def cmd_verify_free(args) -> int:
    g, _ = load_graph_with_meta(args.path)
    cycle = _check_freeness(g, args.k)
    if cycle is not None:
        print(f"input contains a cycle on {2 * args.k} vertices: {list(cycle)}",
              file=sys.stderr)
        return EXIT_NOT_FREE
    print(f"no cycle on {2 * args.k} vertices")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evenbisect",
                                     description="max-bisection toolkit for even-cycle-free graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph file")
    gen.add_argument("family",
                     choices=["polarity", "incidence-plane", "complete-bipartite",
                              "random-free", "classic"])
    gen.add_argument("--q", type=int, help="plane order (prime)")
    gen.add_argument("--a", type=int, help="first side of a complete bipartite graph")
    gen.add_argument("--b", type=int, help="second side of a complete bipartite graph")
    gen.add_argument("--n", type=int, help="vertex count for random-free")
    gen.add_argument("--m", type=int, help="target edge count for random-free")
    gen.add_argument("--k", type=int, help="forbidden even cycle parameter for random-free")
    gen.add_argument("--seed", type=int, default=42)
    gen.add_argument("--name", help="classic graph name")
    gen.add_argument("--size", type=int, help="size for cycle/path/complete")
    gen.add_argument("--out", help="output path (defaults to a name derived from the family)")
    gen.set_defaults(func=cmd_gen)

    bis = sub.add_parser("bisect", help="run the pipeline on one graph file")
    bis.add_argument("path")
    bis.add_argument("--k", type=int, default=2)
    bis.add_argument("--trials", type=int, default=200)
    bis.add_argument("--seed", type=int, default=42)
    bis.add_argument("--eta", type=float, default=0.01)
    bis.add_argument("--out", help="CSV file to append the record to")
    bis.add_argument("--verify-free", action="store_true",
                     help="run the exact cycle detector first; exit 2 on a hit")
    bis.set_defaults(func=cmd_bisect)

    orc = sub.add_parser("oracle", help="exact optimum by enumeration (n <= 24)")
    orc.add_argument("path")
    orc.add_argument("--cut", action="store_true", help="max cut instead of max bisection")
    orc.set_defaults(func=cmd_oracle)

    bench = sub.add_parser("bench", help="run the pipeline over a corpus directory")
    bench.add_argument("corpus")
    bench.add_argument("--k", type=int, default=2)
    bench.add_argument("--trials", type=int, default=200)
    bench.add_argument("--seed", type=int, default=42)
    bench.add_argument("--eta", type=float, default=0.01)
    bench.add_argument("--out", help="CSV path (default bench_results.csv)")
    bench.set_defaults(func=cmd_bench)

    ver = sub.add_parser("verify-free", help="exact even-cycle detector")
    ver.add_argument("path")
    ver.add_argument("--k", type=int, default=2)
    ver.set_defaults(func=cmd_verify_free)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2; keep that for freeness only
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SIZE_GUARD
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
