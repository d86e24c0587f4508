"""SVG drawings of torus grids on their fundamental parallelogram.

Every edge is drawn as the straight segment from its tail to the lift of its
head given by the decoration, cut into pieces by the sides of the square, so
the number of side crossings matches the decoration.  Smoothings appear as
short arcs near the vertices.
"""

from __future__ import annotations

import io
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch, PathPatch, Rectangle  # noqa: E402
from matplotlib.path import Path  # noqa: E402

from .surface import EmbeddedGraph, Layout  # noqa: E402
from .transitions import TransitionSystem, trace  # noqa: E402

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2",
           "#17becf", "#bcbd22", "#7f7f7f")
GRID_COLOR = "#c8c8c8"

matplotlib.rcParams.update({"svg.hashsalt": "atrails", "svg.fonttype": "none"})


def default_layout(g: EmbeddedGraph) -> Layout:
    """Vertices on a diagonal of the unit square; enough for a legible sketch."""
    n = g.num_vertices
    pos = tuple(((k + 0.5) / n, (k + 0.5) / n) for k in range(n))
    return Layout(1.0, 1.0, pos, (0.0, 1.0), (1.0, 0.0))


def _lift(lay: Layout, g: EmbeddedGraph, h):
    x0, y0 = lay.positions[g.vertex_of[h]]
    x1, y1 = lay.positions[g.vertex_of[g.twin[h]]]
    d = g.dart_decor(h)
    p, q = d[0], d[1]
    return (x0, y0), (x1 + p * lay.p_shift[0] + q * lay.q_shift[0],
                      y1 + p * lay.p_shift[1] + q * lay.q_shift[1])


def _translates(lay: Layout, a, b):
    """Lattice vectors whose translate of segment ``ab`` can meet the square."""
    span = max(abs(b[0] - a[0]) / max(lay.width, 1e-9), abs(b[1] - a[1]) / max(lay.height, 1e-9))
    k = int(math.ceil(span)) + 2
    out = []
    for i in range(-k, k + 1):
        for j in range(-k, k + 1):
            out.append((i * lay.p_shift[0] + j * lay.q_shift[0], i * lay.p_shift[1] + j * lay.q_shift[1]))
    return out


def _clip_segment(a, b, w, h):
    """Liang-Barsky clip of segment ab to [0, w] x [0, h]."""
    t0, t1 = 0.0, 1.0
    dx, dy = b[0] - a[0], b[1] - a[1]
    for p, q in ((-dx, a[0]), (dx, w - a[0]), (-dy, a[1]), (dy, h - a[1])):
        if p == 0:
            if q < 0:
                return None
            continue
        t = q / p
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 > t1:
            return None
    if t1 - t0 < 1e-9:
        return None
    return (a[0] + t0 * dx, a[1] + t0 * dy), (a[0] + t1 * dx, a[1] + t1 * dy)


def _point_along(a, b, r):
    dx, dy = b[0] - a[0], b[1] - a[1]
    n = math.hypot(dx, dy) or 1.0
    return a[0] + dx * r / n, a[1] + dy * r / n


def _draw_polygon(ax, g, lay, origin, T=None, circuit_of_edge=None, highlight_faces=(), title=""):
    ox, oy = origin
    w, h = lay.width, lay.height
    ax.add_patch(Rectangle((ox, oy), w, h, fill=False, lw=1.2, ec="black"))
    for f, label in highlight_faces:
        cx, cy = _face_center(g, lay, f)
        ax.text(ox + cx, oy + cy, label, ha="center", va="center", fontsize=7, color="black")
    # side identifications
    arrow = dict(arrowstyle="-|>", mutation_scale=8, lw=0.8, color="black")
    for y in (oy, oy + h):
        ax.add_patch(FancyArrowPatch((ox + 0.35 * w, y), (ox + 0.65 * w, y), **arrow))
    for x in (ox, ox + w):
        ax.add_patch(FancyArrowPatch((x, oy + 0.35 * h), (x, oy + 0.65 * h), **arrow))
    shift = -lay.p_shift[0]
    ax.text(ox + w / 2, oy + h + 0.04 * h, f"top = bottom shifted by {shift:g}" if shift else "top = bottom",
            ha="center", va="bottom", fontsize=6)
    if title:
        ax.text(ox + w / 2, oy - 0.06 * h, title, ha="center", va="top", fontsize=8)
    r = 0.18 * min(w / max(1, math.sqrt(g.num_vertices)), h / max(1, math.sqrt(g.num_vertices)))
    for e, (h0, _) in enumerate(g.edges):
        a, b = _lift(lay, g, h0)
        color = GRID_COLOR
        lw = 0.8
        if circuit_of_edge is not None:
            color = PALETTE[circuit_of_edge[e] % len(PALETTE)]
            lw = 1.6
            a, b = _point_along(a, b, r), _point_along(b, a, r)
        _draw_segment_offset(ax, lay, a, b, (ox, oy), color=color, lw=lw)
    if T is not None:
        for v in range(g.num_vertices):
            c = lay.positions[v]
            for x, y in T.pairs_at(g, v):
                pa = _toward(g, lay, x, r)
                pb = _toward(g, lay, y, r)
                color = PALETTE[circuit_of_edge[g.edge_of[x]] % len(PALETTE)]
                verts = [(ox + pa[0], oy + pa[1]), (ox + c[0], oy + c[1]), (ox + pb[0], oy + pb[1])]
                path = Path(verts, [Path.MOVETO, Path.CURVE3, Path.CURVE3])
                ax.add_patch(PathPatch(path, fill=False, ec=color, lw=1.6))
    for v, (x, y) in enumerate(lay.positions):
        ax.plot([ox + x], [oy + y], "o", ms=2.5 if T is not None else 3.5,
                color="#555555" if T is not None else "black")


def _face_center(g, lay, f):
    """Centroid of the lifted boundary walk, moved back into the square."""
    orb = g.face_orbits[f]
    x, y = lay.positions[g.vertex_of[orb[0]]]
    pts = []
    for h in orb:
        pts.append((x, y))
        a, b = _lift(lay, g, h)
        x, y = x + b[0] - a[0], y + b[1] - a[1]
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    for tx, ty in _translates(lay, (cx, cy), (cx, cy)):
        if 0 <= cx + tx < lay.width and 0 <= cy + ty < lay.height:
            return cx + tx, cy + ty
    return cx, cy


def _toward(g, lay, h, r):
    a, b = _lift(lay, g, h)
    return _point_along(a, b, r)


def _draw_segment_offset(ax, lay, a, b, origin, **kw):
    ox, oy = origin
    for tx, ty in _translates(lay, a, b):
        seg = _clip_segment((a[0] + tx, a[1] + ty), (b[0] + tx, b[1] + ty), lay.width, lay.height)
        if seg:
            (x0, y0), (x1, y1) = seg
            ax.plot([ox + x0, ox + x1], [oy + y0, oy + y1], solid_capstyle="butt", **kw)


def _circuit_colors(g, T):
    if T is None:
        return None
    dec = trace(g, T)
    out = [0] * g.num_edges
    for k, c in enumerate(dec.circuits):
        for d in c:
            out[g.edge_of[d]] = k
    return out


def _finish(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)
    return buf.getvalue()


def render_graph(g: EmbeddedGraph, T: TransitionSystem | None = None, title="") -> str:
    if g.genus != 1:
        raise ValueError("render_graph draws a single torus; use render_composite")
    lay = g.layout or default_layout(g)
    fig, ax = plt.subplots(figsize=(max(3.0, 0.5 * lay.width + 1.5), max(3.0, 0.5 * lay.height + 1.5)))
    _draw_polygon(ax, g, lay, (0, 0), T, _circuit_colors(g, T), title=title)
    ax.set_aspect("equal")
    ax.axis("off")
    return _finish(fig)


def render_composite(cg, T: TransitionSystem | None = None, title="") -> str:
    """One polygon per component, glued faces labelled by their glue cycle."""
    from .composite import decompose

    comps = decompose(cg, T) if T is not None else [None] * len(cg.components)
    composite_colors = _circuit_colors(cg.graph, T)
    fig_w = sum((c.layout or default_layout(c)).width + 1.0 for c in cg.components)
    fig_h = max((c.layout or default_layout(c)).height for c in cg.components) + 1.5
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * fig_w + 1), max(3.0, 0.6 * fig_h)))
    x = 0.0
    for j, g in enumerate(cg.components):
        lay = g.layout or default_layout(g)
        marks = []
        if j > 0:
            marks.append((cg.gluings[j - 1].face2, f"glue {j - 1}"))
        if j < len(cg.components) - 1:
            marks.append((cg.gluings[j].face1, f"glue {j}"))
        colors = None
        if composite_colors is not None:
            hm = cg.half_map[j]
            colors = [composite_colors[cg.graph.edge_of[hm[h0]]] for h0, _ in g.edges]
        _draw_polygon(ax, g, lay, (x, 0), comps[j], colors, marks, f"component {j}")
        x += lay.width + 1.0
    if title:
        ax.set_title(title, fontsize=9)
    ax.set_aspect("equal")
    ax.axis("off")
    return _finish(fig)


def save_svg(path, svg: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
