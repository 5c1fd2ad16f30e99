"""Brute-force ground truth and structural checkers, desk scale only.

Two independent path/cycle oracles are kept on purpose: a top-down DFS with
(visited-mask, endpoint) memoization and a bottom-up subset DP.  Tests
require them to agree on every instance both accept; the acceptance harness
then measures the solver against the DFS one.
"""

from dataclasses import dataclass

from . import kernels
from .errors import ContractViolation, InputError, SizeCapExceeded
from .marking import GOOD, classify_cell


@dataclass(frozen=True)
class EnumerationLimits:
    max_n: int = 14
    max_paths: int = 20_000_000

    def __post_init__(self):
        if not 1 <= self.max_n <= 16:
            raise InputError("max_n must be in 1..16 (factorial blowup guard)")
        if self.max_paths < 1:
            raise InputError("max_paths must be positive")


DEFAULT_LIMITS = EnumerationLimits()


def _require_small(n, limits):
    if n > limits.max_n:
        raise SizeCapExceeded(
            "instance has %d vertices, exhaustive cap is %d" % (n, limits.max_n))


def _adjmasks(graph):
    masks = []
    for v in range(graph.n):
        m = 0
        for w in graph.adj[v]:
            m |= 1 << w
        masks.append(m)
    return masks


def canonical_path(seq):
    """Orient a path so the smaller endpoint comes first."""
    seq = list(seq)
    if seq and seq[0] > seq[-1]:
        seq.reverse()
    return seq


def canonical_cycle(seq):
    """Rotate/reflect a cycle to its lexicographically smallest sequence."""
    seq = list(seq)
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    rev = list(reversed(seq))
    j = rev.index(min(seq))
    bwd = rev[j:] + rev[:j]
    return fwd if fwd <= bwd else bwd


def longest_path_bruteforce(graph, limits=DEFAULT_LIMITS):
    """Exact maximum vertex count over simple paths, with a witness."""
    _require_small(graph.n, limits)
    length, witness = kernels.dfs_longest_path(_adjmasks(graph))
    return length, canonical_path(witness)


def longest_cycle_bruteforce(graph, limits=DEFAULT_LIMITS):
    """Exact maximum cycle length (>= 3), or (None, None) when acyclic."""
    _require_small(graph.n, limits)
    length, witness = kernels.dfs_longest_cycle(_adjmasks(graph))
    if length == 0:
        return None, None
    return length, canonical_cycle(witness)


def _dense(weighted):
    verts = list(weighted.vertices)
    index = {v: i for i, v in enumerate(verts)}
    masks = [0] * len(verts)
    for v in verts:
        for w in weighted.adj[v]:
            masks[index[v]] |= 1 << index[w]
    weights = [weighted.weights[v] for v in verts]
    return verts, masks, weights


def max_weight_path_bruteforce(weighted, limits=DEFAULT_LIMITS):
    """Subset-DP maximum over simple paths of summed vertex weights."""
    _require_small(weighted.n, limits)
    verts, masks, weights = _dense(weighted)
    best, witness, _, _ = kernels.hk_longest(masks, weights)
    return best, canonical_path([verts[i] for i in witness])


def max_weight_cycle_bruteforce(weighted, limits=DEFAULT_LIMITS):
    """Subset-DP maximum over simple cycles, or (None, None) when acyclic."""
    _require_small(weighted.n, limits)
    verts, masks, weights = _dense(weighted)
    _, _, best, witness = kernels.hk_longest(masks, weights)
    if best == 0:
        return None, None
    return best, canonical_cycle([verts[i] for i in witness])


@dataclass
class GoodCellCheck:
    holds: bool
    witness: list | None
    counterexample: dict | None


def check_good_cell_existence(graph, rep, marks, k, variant="path",
                              limits=DEFAULT_LIMITS):
    """Does some solution of size >= k classify every cell as good?

    Vacuously holds when no path/cycle of size >= k exists at all.  Otherwise
    searches for one witness: first the single-cell candidates (a cell's whole
    unmarked set is a clique, so it forms a path/cycle on its own), then the
    pruned DFS over solutions that touch marked vertices.  Any witness found
    is re-validated against the literal cell definitions before we report it.
    """
    _require_small(graph.n, limits)
    if variant not in ("path", "cycle"):
        raise ContractViolation("unknown variant %r" % variant)
    is_cycle = variant == "cycle"
    k_eff = max(k, 3) if is_cycle else max(k, 1)
    masks = _adjmasks(graph)
    if is_cycle:
        best, _ = kernels.dfs_longest_cycle(masks)
    else:
        best, _ = kernels.dfs_longest_path(masks)
    if best < k_eff:
        return GoodCellCheck(True, None, None)

    # A cell whose unmarked set is large enough yields an immediate witness
    # (case (i) of the definition); this also covers every solution that
    # contains no marked vertex at all, which the DFS below skips for cycles.
    for cell in rep.cells:
        unmarked = sorted(marks.unmarked_in(cell))
        if len(unmarked) >= k_eff:
            return GoodCellCheck(True, _verified(unmarked, rep, marks, variant), None)

    cells = sorted(rep.cells)
    cell_index = {cell: i for i, cell in enumerate(cells)}
    cell_ids = [cell_index[rep.cell_of[v]] for v in range(graph.n)]
    marked = [1 if marks.is_marked(v) else 0 for v in range(graph.n)]
    ucount = [len(rep.members(cell)) - len(marks.marked_in(cell)) for cell in cells]
    status, witness = kernels.good_solution_search(
        masks, cell_ids, marked, ucount, k_eff, is_cycle, limits.max_paths)
    if status < 0:
        raise SizeCapExceeded("good-cell search exceeded %d nodes" % limits.max_paths)
    if status == 1:
        return GoodCellCheck(True, _verified(witness, rep, marks, variant), None)
    return GoodCellCheck(False, None, {
        "n": graph.n,
        "k": k,
        "variant": variant,
        "budgets": (marks.budgets.q1, marks.budgets.q2),
        "best_solution": best,
    })


def _verified(seq, rep, marks, variant):
    """Authoritative re-check of a search witness against the definitions."""
    for cell in rep.cells:
        if classify_cell(seq, cell, rep, marks, variant) != GOOD:
            raise ContractViolation(
                "good-cell search produced a witness with non-good cell %r" % (cell,))
    return list(seq)


def two_oracle_agreement(graph, limits=DEFAULT_LIMITS):
    """Cross-check helper: both oracle pairs on one graph (used by tests)."""
    _require_small(graph.n, limits)

    class _Unit:
        vertices = tuple(range(graph.n))
        adj = {v: graph.adj[v] for v in range(graph.n)}
        weights = {v: 1 for v in range(graph.n)}
        n = graph.n

    p1, _ = longest_path_bruteforce(graph, limits)
    p2, _ = max_weight_path_bruteforce(_Unit(), limits)
    c1, _ = longest_cycle_bruteforce(graph, limits)
    c2, _ = max_weight_cycle_bruteforce(_Unit(), limits)
    return (p1, p2, c1, c2)
