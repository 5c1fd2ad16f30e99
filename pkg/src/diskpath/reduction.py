"""Reduction of a marked disk graph to the weighted graph it is solved on.

The reduced graph keeps every marked vertex at weight 1 and replaces each
cell's unmarked vertices by a single aggregate of weight equal to their
count; aggregate edges leaving the aggregate's own cell are dropped.  A
path or cycle of weight >= k here corresponds to one on >= k vertices in
the original graph, with one documented exception: a cycle that lives
entirely inside one cell (its unmarked set plus at most one marked vertex)
can project to fewer than three reduced vertices, which is not a cycle in
the reduced graph.  Callers deciding the cycle variant must therefore also
check single-cell solutions directly; cells are cliques, so a cell with at
least max(k, 3) members settles that case by itself.
"""

from .errors import ContractViolation
from .marking import GOOD, classify_cell, validate_sequence


class WeightedGraph:
    """Vertex-weighted undirected graph over (sparse) integer vertex ids.

    An aggregate vertex is an unmarked original vertex standing in for its
    cell's whole unmarked set; back_map records that set in ascending order.
    """

    __slots__ = ("vertices", "weights", "adj", "aggregates", "back_map",
                 "n", "delta", "_adjsets")

    def __init__(self, vertices, weights, edges, aggregates=None, back_map=None):
        self.vertices = tuple(sorted(set(vertices)))
        self.n = len(self.vertices)
        vset = frozenset(self.vertices)
        self.weights = {}
        for v in self.vertices:
            w = weights.get(v, 1)
            if not isinstance(w, int) or w < 1:
                raise ContractViolation("weight of %r must be a positive int" % v)
            self.weights[v] = w
        neigh = {v: set() for v in self.vertices}
        for u, v in edges:
            if u == v:
                raise ContractViolation("self-loop at %r" % u)
            if u not in vset or v not in vset:
                raise ContractViolation("edge {%r, %r} leaves the vertex set" % (u, v))
            neigh[u].add(v)
            neigh[v].add(u)
        self.adj = {v: tuple(sorted(neigh[v])) for v in self.vertices}
        self._adjsets = {v: frozenset(neigh[v]) for v in self.vertices}
        self.delta = max((len(a) for a in neigh.values()), default=0)
        self.aggregates = dict(aggregates or {})
        self.back_map = {v: tuple(sorted(members))
                         for v, members in (back_map or {}).items()}
        for v, cell in self.aggregates.items():
            if v not in vset:
                raise ContractViolation("aggregate %r is not a vertex" % v)
            if len(self.back_map.get(v, ())) != self.weights[v]:
                raise ContractViolation(
                    "aggregate %r: weight %d but %d replaced vertices"
                    % (v, self.weights[v], len(self.back_map.get(v, ()))))

    def has_edge(self, u, v):
        return v in self._adjsets.get(u, ())

    def weight_of(self, seq):
        return sum(self.weights[v] for v in seq)

    def edges(self):
        for u in self.vertices:
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def m(self):
        return sum(len(a) for a in self.adj.values()) // 2


def build_reduced(graph, rep, marks):
    """Steps 3 to 5 applied to a marking: the weighted reduced graph.

    Vertices: all marked vertices plus, per cell with a nonempty unmarked
    set, the smallest unmarked vertex id as the cell's aggregate.  Edges:
    induced from the original graph, minus every aggregate edge whose other
    endpoint lies outside the aggregate's cell.
    """
    verts = []
    weights = {}
    aggregates = {}
    back_map = {}
    for cell in rep.cells:
        for v in sorted(marks.marked_in(cell)):
            verts.append(v)
            weights[v] = 1
        unmarked = sorted(marks.unmarked_in(cell))
        if unmarked:
            agg = unmarked[0]
            verts.append(agg)
            weights[agg] = len(unmarked)
            aggregates[agg] = cell
            back_map[agg] = tuple(unmarked)
    vset = set(verts)
    edges = []
    for u in verts:
        for v in graph.adj[u]:
            if v <= u or v not in vset:
                continue
            if u in aggregates and rep.cell_of[v] != aggregates[u]:
                continue
            if v in aggregates and rep.cell_of[u] != aggregates[v]:
                continue
            edges.append((u, v))
    return WeightedGraph(verts, weights, edges, aggregates, back_map)


def lift_solution(seq, reduced, variant="path"):
    """Expand aggregates of a reduced path/cycle back to original vertices.

    Each aggregate is replaced in place by its cell's unmarked vertices in
    ascending id order (the cell is a clique and the aggregate's reduced
    neighbours are marked vertices of the same cell, so the expansion stays
    a path/cycle).  The result's vertex count equals the input's weight.
    """
    for v in seq:
        if v not in reduced.weights:
            raise ContractViolation("vertex %r is not in the reduced graph" % v)
    validate_sequence(seq, reduced.has_edge, variant)
    out = []
    for v in seq:
        if v in reduced.aggregates:
            out.extend(reduced.back_map[v])
        else:
            out.append(v)
    return out


def project_solution(seq, rep, marks, variant="path"):
    """Collapse each maximal unmarked run of an all-good solution to its
    cell's aggregate id; the inverse direction of lifting.

    Requires every occupied cell to classify good (the offending cell is
    named otherwise).  Goodness makes each run exactly one cell's whole
    unmarked set, so the projected weight equals the input's vertex count.
    A cycle's projection may come out with fewer than three vertices (see
    the module notes); the caller owns that case.
    """
    for cell in rep.cells:
        got = classify_cell(seq, cell, rep, marks, variant)
        if got != GOOD:
            raise ContractViolation(
                "cell %r classifies as %s; projection needs every cell good"
                % (cell, got))
    if variant == "cycle":
        # Rotate so runs do not wrap around the sequence end.
        starts = [i for i, v in enumerate(seq) if marks.is_marked(v)]
        if not starts:
            return [min(marks.unmarked_in(rep.cell_of[seq[0]]))]
        seq = list(seq[starts[0]:]) + list(seq[:starts[0]])
    out = []
    in_run = False
    for v in seq:
        if marks.is_marked(v):
            out.append(v)
            in_run = False
        elif not in_run:
            out.append(min(marks.unmarked_in(rep.cell_of[v])))
            in_run = True
    return out
