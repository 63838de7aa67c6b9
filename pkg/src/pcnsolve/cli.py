"""Command-line entry point: ``pcnsolve <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 budget exhausted without proof
(bounds are still printed), 3 verification failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import graph as gc
from . import io as pio
from .errors import NoClosedFormError, PcnError
from .graph import DistanceMatrix, Graph, all_pairs_distances
from .hamming import (
    BUDGET_ENV,
    HammingParams,
    alpha_upper_bound_propagation,
    best_known_lower,
    closed_form_lower_bound,
    default_vertex_budget,
    diagonal_stable_set,
    exact_closed_form,
    generate,
    hamming_distance_matrix,
    two_layer_stable_set,
)
from .mss import SolveBudget
from .pcn import (
    LayeredStableSet,
    PcnResult,
    check_layered_stable_set,
    hamming_bounds_pipeline,
    hamming_heuristic,
    pcn_exact_iterative,
    pcn_exact_starred,
    pcn_exact_starred_capped,
    verify_packing_coloring,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3
FAMILIES = ("hamming", "path", "cycle", "complete", "star", "petersen", "random")


class UsageError(Exception):
    """Bad combination of command-line options."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for exhausted budgets
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    budget: SolveBudget
    workers: int
    vertex_budget: int
    seed: int
    out: Path | None


@dataclass(frozen=True)
class Source:
    graph: Graph
    dm: DistanceMatrix
    hamming: HammingParams | None = None


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=_positive_int, help="branch-and-bound node limit per solve")
    p.add_argument("--budget-seconds", type=_positive_float,
                   help="wall-clock limit per solve (results may vary between runs)")
    p.add_argument("--workers", type=_positive_int, default=1, help="processes for the root split")


def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("graph source")
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--dimacs", type=Path, help="read the graph from a DIMACS file")
    g.add_argument("--q", type=int, help="alphabet size (hamming)")
    g.add_argument("--m", type=int, help="word length (hamming)")
    g.add_argument("--n", type=int, help="vertex count (path, cycle, complete, random) or leaves (star)")
    g.add_argument("--p", type=float, default=0.3, help="extra edge probability (random)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", "-o", type=Path, help="write the main artifact here instead of stdout")
    p.add_argument("--vertex-budget", type=_positive_int,
                   help=f"maximum Hamming graph size (default ${BUDGET_ENV} or 10000)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random family")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pcnsolve", description="Packing chromatic number solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a graph (DIMACS) or a known stable set")
    p.add_argument("what", choices=FAMILIES + ("diagonal", "two-layer"))
    _add_common(p)
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float, default=0.3)

    p = sub.add_parser("exact", help="exact packing chromatic number with a witness")
    _add_source(p)
    _add_common(p)
    _add_budget(p)
    p.add_argument("--strategy", choices=("iterative", "starred", "starred-capped"), default="iterative")
    p.add_argument("--upper-bound-file", type=Path, help="coloring file for --strategy starred-capped")

    p = sub.add_parser("heuristic", help="layered stable-set heuristic on H(q,m)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--set-out", type=Path, help="write the layered stable set here")
    _add_common(p)
    _add_budget(p)

    p = sub.add_parser("bounds", help="closed-form bounds for H(q,m)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prev-lower", type=int, help="lower bound for H(q,m-1) used for propagation")

    p = sub.add_parser("verify", help="check a coloring or a layered stable set")
    _add_source(p)
    _add_common(p)
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--coloring", type=Path)
    what.add_argument("--stable-set", type=Path)

    p = sub.add_parser("export-lp", help="write the binary program for G^F")
    _add_source(p)
    _add_common(p)
    p.add_argument("--layers", help="comma-separated layer set F (default 1..diameter-1)")

    p = sub.add_parser("table", help="bounds table for Hamming graphs")
    p.add_argument("--m", type=int, nargs="+", required=True)
    p.add_argument("--q-min", type=int, default=3)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--csv", type=Path, help="also write the table as CSV")
    p.add_argument("--certificates", type=Path, help="directory for witness colorings")
    _add_common(p)
    _add_budget(p)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    budget = SolveBudget(getattr(args, "budget_seconds", None), getattr(args, "budget_nodes", None))
    vb = getattr(args, "vertex_budget", None) or default_vertex_budget()
    return RunConfig(args.command, budget, getattr(args, "workers", 1), vb,
                     getattr(args, "seed", 0), getattr(args, "out", None))


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command}: missing {', '.join(missing)}")


def _family_graph(kind: str, args: argparse.Namespace, cfg: RunConfig) -> Source:
    if kind == "hamming":
        _need(args, "q", "m")
        hp = HammingParams(args.q, args.m, cfg.vertex_budget)
        return Source(generate(hp), hamming_distance_matrix(hp), hp)
    if kind == "petersen":
        g = gc.petersen_graph()
    else:
        _need(args, "n")
        if args.n < 1:
            raise UsageError(f"--n must be positive, got {args.n}")
        if kind == "path":
            g = gc.path_graph(args.n)
        elif kind == "cycle":
            if args.n < 3:
                raise UsageError(f"--n must be >= 3 for a cycle, got {args.n}")
            g = gc.cycle_graph(args.n)
        elif kind == "complete":
            g = gc.complete_graph(args.n)
        elif kind == "star":
            g = gc.star_graph(args.n)
        else:
            g = gc.random_connected_graph(args.n, args.p, random.Random(cfg.seed))
    return Source(g, all_pairs_distances(g))


def _source(args: argparse.Namespace, cfg: RunConfig) -> Source:
    if (args.family is None) == (args.dimacs is None):
        raise UsageError("give exactly one graph source: --family or --dimacs")
    if args.dimacs is not None:
        g = pio.read_dimacs(args.dimacs)
        return Source(g, all_pairs_distances(g))
    return _family_graph(args.family, args, cfg)


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _report(result: PcnResult) -> None:
    if result.exact:
        print(f"chi_rho = {result.lower}")
    else:
        print(f"chi_rho in [{result.lower}, {result.upper}]")
    print(f"status {result.status.value}; lower from {result.lower_source}; upper from witness")
    if result.solves:
        nodes = sum(s.nodes for s in result.solves)
        print(f"solver nodes {nodes}")


def _warn_time(cfg: RunConfig) -> None:
    if cfg.budget.time_limit is not None:
        print("warning: --budget-seconds is nondeterministic, results depend on machine load; "
              "use --budget-nodes for reproducible runs", file=sys.stderr)


# -- commands ---------------------------------------------------------------


def cmd_gen(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.what == "diagonal":
        _need(args, "q", "m")
        hp = HammingParams(args.q, args.m, cfg.vertex_budget)
        s = diagonal_stable_set(hp)
        ls = LayeredStableSet(hp.n, (1,), False, frozenset((v, 1) for v in s.members))
        _emit(pio.layered_set_text(ls), cfg.out)
        return EXIT_OK
    if args.what == "two-layer":
        _need(args, "q")
        _emit(pio.layered_set_text(two_layer_stable_set(args.q)), cfg.out)
        return EXIT_OK
    src = _family_graph(args.what, args, cfg)
    _emit(pio.dimacs_text(src.graph, src.graph.name or None), cfg.out)
    return EXIT_OK


def cmd_exact(args: argparse.Namespace, cfg: RunConfig) -> int:
    _warn_time(cfg)
    src = _source(args, cfg)
    g, dm = src.graph, src.dm
    if args.strategy == "starred-capped":
        if args.upper_bound_file is None:
            raise UsageError("--strategy starred-capped needs --upper-bound-file")
        witness = pio.read_coloring(args.upper_bound_file, g.n)
        result = pcn_exact_starred_capped(g, witness, cfg.budget, dm=dm, workers=cfg.workers)
    elif args.upper_bound_file is not None:
        raise UsageError("--upper-bound-file only applies to --strategy starred-capped")
    elif args.strategy == "starred":
        result = pcn_exact_starred(g, cfg.budget, dm=dm, workers=cfg.workers)
    elif src.hamming is not None and src.hamming.m >= 2:
        result = hamming_bounds_pipeline(src.hamming, cfg.budget, workers=cfg.workers)
    else:
        result = pcn_exact_iterative(g, cfg.budget, dm=dm, workers=cfg.workers)
    if not verify_packing_coloring(g, dm, result.witness):
        print("internal error: witness failed verification", file=sys.stderr)
        return EXIT_VERIFY
    print(f"graph {g.name or '-'} n={g.n} diameter={dm.diameter}")
    print(f"strategy {args.strategy}")
    _report(result)
    if cfg.out is None:
        print()
    _emit(pio.coloring_text(result.witness, g.name), cfg.out)
    return EXIT_OK if result.exact else EXIT_BUDGET


def cmd_heuristic(args: argparse.Namespace, cfg: RunConfig) -> int:
    _warn_time(cfg)
    hp = HammingParams(args.q, args.m, cfg.vertex_budget)
    result = hamming_heuristic(hp, cfg.budget)
    print(f"graph {hp.name} n={hp.n}")
    if result.layered_set is not None:
        sizes = [len(result.layered_set.layer(k)) for k in result.layered_set.layers]
        print(f"layered set size {len(result.layered_set)} (layers {' '.join(map(str, sizes))})")
        if args.set_out is not None:
            pio.write_layered_set(result.layered_set, args.set_out)
    _report(result)
    if cfg.out is not None:
        pio.write_coloring(result.witness, cfg.out, hp.name)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace, cfg: RunConfig) -> int:
    hp = HammingParams(args.q, args.m, vertex_budget=args.q**args.m)
    print(f"graph {hp.name} n={hp.n}")
    print(f"closed-form lower bound {closed_form_lower_bound(hp)}")
    try:
        print(f"exact value {exact_closed_form(hp)}")
    except NoClosedFormError:
        print("exact value unknown")
    if args.m >= 2:
        prev = best_known_lower(args.q, args.m - 1) if args.prev_lower is None else args.prev_lower
        cap = alpha_upper_bound_propagation(hp, prev)
        print(f"stable set of layers 1..{args.m - 1} has at most {cap} vertices (from lower bound {prev})")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    src = _source(args, cfg)
    if args.coloring is not None:
        c = pio.read_coloring(args.coloring, src.graph.n)
        ok = verify_packing_coloring(src.graph, src.dm, c)
        print(f"{'valid' if ok else 'invalid'} packing {c.k}-coloring of {src.graph.name or '-'}")
    else:
        ls = pio.read_layered_set(args.stable_set, src.graph.n)
        ok = check_layered_stable_set(src.dm, ls)
        print(f"{'valid' if ok else 'invalid'} layered stable set of size {len(ls)}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_export_lp(args: argparse.Namespace, cfg: RunConfig) -> int:
    src = _source(args, cfg)
    if args.layers is None:
        layers = list(range(1, max(src.dm.diameter, 2)))
    else:
        try:
            layers = [int(x) for x in args.layers.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"--layers must be comma-separated integers, got {args.layers!r}") from None
    if any(not 1 <= k <= src.graph.n for k in layers):
        raise UsageError(f"--layers values must lie in 1..{src.graph.n}")
    model = pio.export_ilp(src.graph, src.dm, layers)
    _emit(pio.lp_text(model, f"graph {src.graph.name or '-'} layers {','.join(map(str, sorted(set(layers))))}"),
          cfg.out)
    return EXIT_OK


def cmd_table(args: argparse.Namespace, cfg: RunConfig) -> int:
    _warn_time(cfg)
    if args.q_min < 2 or args.q_max < args.q_min:
        raise UsageError(f"need 2 <= --q-min <= --q-max, got {args.q_min}..{args.q_max}")
    if args.certificates is not None:
        args.certificates.mkdir(parents=True, exist_ok=True)
    rows = []
    proven = True
    found: dict[tuple[int, int], int] = {}
    for m in sorted(set(args.m)):
        for q in range(args.q_min, args.q_max + 1):
            if q**m > cfg.vertex_budget:
                rows.append((q, m, None, None, "skipped"))
                continue
            hp = HammingParams(q, m, cfg.vertex_budget)
            result = hamming_bounds_pipeline(hp, cfg.budget, prev_lower=found.get((q, m - 1)),
                                             workers=cfg.workers)
            if not verify_packing_coloring(generate(hp), hamming_distance_matrix(hp), result.witness):
                print(f"internal error: witness for {hp.name} failed verification", file=sys.stderr)
                return EXIT_VERIFY
            found[(q, m)] = result.lower
            proven &= result.exact
            rows.append((q, m, result.lower, result.upper, result.status.value))
            if args.certificates is not None:
                pio.write_coloring(result.witness, args.certificates / f"H_{q}_{m}.col", hp.name)
    _emit(pio.render_bounds_table(rows), cfg.out)
    if args.csv is not None:
        args.csv.write_text(pio.bounds_csv(rows), encoding="utf-8", newline="\n")
    return EXIT_OK if proven else EXIT_BUDGET


COMMANDS = {
    "gen": cmd_gen,
    "exact": cmd_exact,
    "heuristic": cmd_heuristic,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "export-lp": cmd_export_lp,
    "table": cmd_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (UsageError, PcnError, ValueError, OSError) as exc:
        print(f"pcnsolve {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
