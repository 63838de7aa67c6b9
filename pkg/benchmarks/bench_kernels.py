"""Compare the compiled and pure-Python stable-set kernels.

Both backends visit the same search tree, so each instance runs with the same
node limit and the timings compare directly. Usage::

    python3 benchmarks/bench_kernels.py [--nodes N] [--repeat R]
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from pcnsolve import _backend
from pcnsolve.graph import layered_graph, power_graph, random_graph
from pcnsolve.hamming import HammingParams, generate, hamming_distance_matrix


def instances():
    rng = random.Random(7)
    yield "G(80, 0.1)", random_graph(80, 0.1, rng)
    yield "G(200, 0.05)", random_graph(200, 0.05, rng)
    p = HammingParams(3, 3)
    yield "H(3,3)^[1,2]*", layered_graph(generate(p), hamming_distance_matrix(p), [1, 2], starred=True).graph
    p = HammingParams(3, 4)
    yield "H(3,4)^[1,2,3]", layered_graph(generate(p), hamming_distance_matrix(p), [1, 2, 3]).graph
    p = HammingParams(5, 4)
    g = generate(p)
    yield "H(5,4)^2", power_graph(g, hamming_distance_matrix(p), 2)
    yield "G(40, 0.5)", random_graph(40, 0.5, rng)


def run(kernel, g, nodes):
    packed = kernel.pack(g.rows, g.n)
    full = (1 << g.n) - 1
    greedy = kernel.greedy_mis(packed, g.n, full)
    start = time.perf_counter()
    best, upper, visited, exhausted = kernel.branch_and_bound(packed, g.n, full, 0, greedy, g.n, nodes, 0.0)
    return time.perf_counter() - start, best.bit_count(), upper, visited


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=20_000, help="node limit per solve")
    ap.add_argument("--repeat", type=int, default=3, help="take the best of this many runs")
    args = ap.parse_args(argv)

    kernels = _backend.available()
    if "cython" not in kernels:
        print("compiled kernel not built; only the Python backend is available", file=sys.stderr)
    names = sorted(kernels)
    header = f"{'instance':<16}{'n':>6}{'nodes':>9}{'alpha>=':>9}" + "".join(f"{k + ' s':>12}" for k in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, g in instances():
        times, summary = {}, None
        for name in names:
            runs = [run(kernels[name], g, args.nodes) for _ in range(args.repeat)]
            times[name] = min(r[0] for r in runs)
            outcome = runs[0][1:]
            if summary is not None and outcome != summary:
                print(f"backends disagree on {label}: {summary} vs {outcome}", file=sys.stderr)
                return 1
            summary = outcome
        best, _, visited = summary
        line = f"{label:<16}{g.n:>6}{visited:>9}{best:>9}" + "".join(f"{times[k]:>12.4f}" for k in names)
        if len(names) == 2:
            line += f"{times['python'] / max(times['cython'], 1e-9):>9.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
