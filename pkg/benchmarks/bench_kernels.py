"""Benchmark the pure-Python kernels against their compiled twins.

Runs each hot kernel on a representative workload with both backends in
one process, checks that the outputs agree, and prints the timings with
the speedup factor.  Usage:

    python3 benchmarks/bench_kernels.py [--quick]
"""

import argparse
import random
import time

from diskpath import kernels
from diskpath.geometry import DiskSet, build_clique_grid, build_udg
from diskpath.marking import MarkingBudgets, run_marking


def _adjmasks(n, edges):
    masks = [0] * n
    for u, v in edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def time_call(fn, *args, repeats=3):
    best = None
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def bench(name, pure_fn, fast_fn, args, same, repeats):
    t_pure, r_pure = time_call(pure_fn, *args, repeats=repeats)
    if fast_fn is None:
        print("%-22s pure %8.1f ms   (no compiled build)"
              % (name, t_pure * 1e3))
        return
    t_fast, r_fast = time_call(fast_fn, *args, repeats=repeats)
    agree = same(r_pure, r_fast)
    print("%-22s pure %8.1f ms   compiled %8.1f ms   speedup %5.1fx   %s"
          % (name, t_pure * 1e3, t_fast * 1e3,
             t_pure / t_fast if t_fast > 0 else float("inf"),
             "outputs agree" if agree else "OUTPUTS DIFFER"))
    if not agree:
        raise SystemExit("backend disagreement in %s" % name)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true",
                    help="smaller workloads, single repeat")
    opts = ap.parse_args()
    repeats = 1 if opts.quick else 3
    spd = getattr(kernels, "_speedups", None)
    print("compiled backend: %s" % ("available" if spd else "NOT BUILT"))

    rng = random.Random(20260814)

    n_pts = 6000 if opts.quick else 20000
    box = (n_pts / 0.6) ** 0.5
    pts = tuple((rng.uniform(0, box), rng.uniform(0, box))
                for _ in range(n_pts))
    bench("udg_edges n=%d" % n_pts,
          kernels.udg_edges_py,
          spd.udg_edges if spd else None,
          (pts,),
          lambda a, b: sorted(a) == sorted(b),
          repeats)

    n = 12 if opts.quick else 14
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < 0.35]
    masks = _adjmasks(n, edges)
    weights = [rng.randint(1, 5) for _ in range(n)]
    bench("hk_longest n=%d" % n,
          kernels.hk_longest_py,
          spd.hk_longest if spd else None,
          (masks, weights),
          lambda a, b: (a[0], a[2]) == (b[0], b[2]),
          repeats)
    bench("dfs_longest_path n=%d" % n,
          kernels.dfs_longest_path_py,
          spd.dfs_longest_path if spd else None,
          (masks,),
          lambda a, b: a[0] == b[0],
          repeats)
    bench("dfs_longest_cycle n=%d" % n,
          kernels.dfs_longest_cycle_py,
          spd.dfs_longest_cycle if spd else None,
          (masks,),
          lambda a, b: a[0] == b[0],
          repeats)

    m = 11 if opts.quick else 13
    disks = DiskSet([(rng.uniform(0, 3.5), rng.uniform(0, 3.5))
                     for _ in range(m)])
    graph = build_udg(disks)
    rep = build_clique_grid(disks, graph)
    marks = run_marking(graph, rep, MarkingBudgets(1, 1))
    gmasks = _adjmasks(graph.n, list(graph.edges()))
    cells = sorted(rep.cells)
    cell_index = {cell: i for i, cell in enumerate(cells)}
    cell_ids = [cell_index[rep.cell_of[v]] for v in range(graph.n)]
    marked = [1 if marks.is_marked(v) else 0 for v in range(graph.n)]
    ucount = [len(rep.members(cell)) - len(marks.marked_in(cell))
              for cell in cells]
    bench("good_search n=%d" % m,
          kernels.good_solution_search_py,
          spd.good_solution_search if spd else None,
          (gmasks, cell_ids, marked, ucount, m - 2, False, 10 ** 7),
          lambda a, b: a[0] == b[0],
          repeats)


if __name__ == "__main__":
    main()
