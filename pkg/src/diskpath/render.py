"""Static SVG rendering of an instance and its structural overlays.

One drawing shows the occupied grid cells with their indices, every edge
colored by its class (gray inside a cell, green between two marked
endpoints, red otherwise), the disk centers (marked vertices filled,
unmarked hollow), and optionally a witness walk on top.  The output is a
pure function of the inputs: iteration follows vertex and cell order and
floats are printed with fixed precision, so identical inputs give
identical bytes.
"""

from .geometry import DiskSet, build_clique_grid, build_udg
from .marking import (
    BAD,
    GOOD,
    INTRA_CELL,
    MarkingBudgets,
    classify_edge,
    run_marking,
)

_SCALE = 40.0
_MARGIN = 1.2
_EDGE_COLOR = {INTRA_CELL: "#9a9a9a", GOOD: "#2e8b57", BAD: "#d9534f"}
_LABEL_CAP = 100


def _fmt(x):
    return "%.2f" % x


def render_svg(disks, witness=None, variant="path",
               budgets=MarkingBudgets()):
    """Render the instance (and an optional witness) to an SVG string."""
    if not isinstance(disks, DiskSet):
        disks = DiskSet(disks)
    graph = build_udg(disks)
    rep = build_clique_grid(disks, graph)
    marks = run_marking(graph, rep, budgets)

    x_min = min(p[0] for p in disks.points)
    y_min = min(p[1] for p in disks.points)
    x_max = max(p[0] for p in disks.points)
    y_max = max(p[1] for p in disks.points)

    def sx(x):
        return (x - x_min + _MARGIN) * _SCALE

    def sy(y):
        # svg y grows downward; flip so the plane reads the usual way up
        return (y_max - y + _MARGIN) * _SCALE

    width = (x_max - x_min + 2 * _MARGIN) * _SCALE
    height = (y_max - y_min + 2 * _MARGIN) * _SCALE
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="%s" height="%s" '
        'viewBox="0 0 %s %s">' % (_fmt(width), _fmt(height),
                                  _fmt(width), _fmt(height)),
        '<rect width="100%" height="100%" fill="#ffffff"/>',
    ]

    out.append('<g stroke="#c8c8c8" stroke-width="1" fill="none">')
    for (ci, cj) in sorted(rep.occupied()):
        # cell (i, j) covers [min + i - 1, min + i) on each axis
        x0 = sx(x_min + ci - 1)
        y0 = sy(y_min + cj)
        out.append('<rect x="%s" y="%s" width="%s" height="%s"/>'
                   % (_fmt(x0), _fmt(y0), _fmt(_SCALE), _fmt(_SCALE)))
    out.append('</g>')
    out.append('<g font-family="monospace" font-size="9" fill="#8c8c8c">')
    for (ci, cj) in sorted(rep.occupied()):
        x0 = sx(x_min + ci - 1)
        y0 = sy(y_min + cj)
        out.append('<text x="%s" y="%s">(%d,%d)</text>'
                   % (_fmt(x0 + 2), _fmt(y0 + 10), ci, cj))
    out.append('</g>')

    out.append('<g stroke-width="1.3">')
    for u, v in graph.edges():
        color = _EDGE_COLOR[classify_edge((u, v), rep, marks)]
        (x1, y1), (x2, y2) = disks.points[u], disks.points[v]
        out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s"/>'
                   % (_fmt(sx(x1)), _fmt(sy(y1)),
                      _fmt(sx(x2)), _fmt(sy(y2)), color))
    out.append('</g>')

    if witness:
        hops = list(zip(witness, witness[1:]))
        if variant == "cycle" and len(witness) > 2:
            hops.append((witness[-1], witness[0]))
        out.append('<g stroke="#1f77b4" stroke-width="5" '
                   'stroke-opacity="0.45" stroke-linecap="round">')
        for u, v in hops:
            (x1, y1), (x2, y2) = disks.points[u], disks.points[v]
            out.append('<line x1="%s" y1="%s" x2="%s" y2="%s"/>'
                       % (_fmt(sx(x1)), _fmt(sy(y1)),
                          _fmt(sx(x2)), _fmt(sy(y2))))
        out.append('</g>')

    out.append('<g stroke="#303030" stroke-width="1">')
    for v, (x, y) in enumerate(disks.points):
        fill = "#303030" if marks.is_marked(v) else "#ffffff"
        out.append('<circle cx="%s" cy="%s" r="3.5" fill="%s"/>'
                   % (_fmt(sx(x)), _fmt(sy(y)), fill))
    out.append('</g>')
    if graph.n <= _LABEL_CAP:
        out.append('<g font-family="monospace" font-size="8" fill="#1a1a1a">')
        for v, (x, y) in enumerate(disks.points):
            out.append('<text x="%s" y="%s">%d</text>'
                       % (_fmt(sx(x) + 4.5), _fmt(sy(y) - 4.5), v))
        out.append('</g>')

    out.append('</svg>')
    return "\n".join(out) + "\n"
