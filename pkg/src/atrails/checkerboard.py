"""Checkerboard colorings, red/blue graphs and covering trees.

Smoothing conventions (shared with :mod:`atrails.transitions`): the corner
between rotation-consecutive half-edges ``r[k], r[k+1]`` lies in the face of
the dart ``r[k+1]``.  The *red smoothing* at a vertex pairs the two
half-edges of every red corner, so the smoothed curve hugs the red corners
and the blue faces meet through the vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import (GenusUnsupported, HasLoops, NotAnATrail, NotCoveringTree, NotEulerian,
                     PreconditionNotMet)
from .surface import EmbeddedGraph, ribbon_boundary_components
from .transitions import TransitionSystem, bits_of, is_atrail, matching_options, system_from_bits

RED, BLUE = "red", "blue"
MAYBE_HAS_ATRAIL, NO_ATRAIL = "MaybeHasATrail", "NoATrail"


def other(x):
    return BLUE if x == RED else RED


@dataclass(frozen=True)
class CheckerboardColoring:
    colors: tuple[str, ...]

    def count(self, x):
        return sum(c == x for c in self.colors)


@dataclass(frozen=True)
class NotColorable:
    """Certificate: a closed walk of faces of odd length, consecutive ones sharing an edge."""

    odd_cycle: tuple[int, ...]

    def __bool__(self):
        return False


def _check_pre(g):
    if g.has_loops():
        raise HasLoops("checkerboard coloring needs a loop-free graph")
    if not g.is_eulerian():
        raise NotEulerian("checkerboard-colorable graphs are Eulerian")
    if g.genus != 1:
        raise GenusUnsupported("checkerboard coloring is implemented on the torus only")


def checkerboard_color(g: EmbeddedGraph):
    """Properly 2-color the faces, or return a :class:`NotColorable` certificate.

    The face containing half-edge 0 is red.
    """
    _check_pre(g)
    nf = g.num_faces
    color = [None] * nf
    parent = [None] * nf
    root = g.face_of[0]
    color[root] = 0
    queue = deque([root])
    while queue:
        f = queue.popleft()
        for h in g.face_orbits[f]:
            k = g.face_of[g.twin[h]]
            if color[k] is None:
                color[k] = 1 - color[f]
                parent[k] = f
                queue.append(k)
            elif color[k] == color[f]:
                return NotColorable(_odd_walk(parent, f, k))
    return CheckerboardColoring(tuple(RED if c == 0 else BLUE for c in color))


def _odd_walk(parent, f, k):
    def path(x):
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    pf, pk = path(f), path(k)
    common = set(pf) & set(pk)
    a = [x for x in pf if x not in common]
    b = [x for x in pk if x not in common]
    meet = next(x for x in pf if x in common)
    return tuple(a + [meet] + list(reversed(b)))


def color_option(g: EmbeddedGraph, coloring, v, x):
    """Option index (see :func:`matching_options`) of the x-smoothing at ``v``."""
    rot = g.rotation[v]
    if len(rot) == 2:
        return 0
    return 0 if coloring.colors[g.face_of[rot[1]]] == x else 1


def smoothing_system(g, coloring, x, U) -> TransitionSystem:
    """``S_x[U]``: x-smoothings on ``U`` and the other color elsewhere."""
    U = set(U)
    bits = [color_option(g, coloring, v, x if v in U else other(x)) for v in range(g.num_vertices)]
    return system_from_bits(g, bits)


def smoothed_sets(g, coloring, T):
    """``(T_r, T_b)``: vertices where ``T`` is the red / blue smoothing."""
    bits = bits_of(g, T)
    tr = frozenset(v for v in range(g.num_vertices) if bits[v] == color_option(g, coloring, v, RED))
    tb = frozenset(v for v in range(g.num_vertices) if bits[v] == color_option(g, coloring, v, BLUE))
    return tr, tb


@dataclass(frozen=True, eq=False)
class ColorGraph:
    """``G_x``: G-vertices ``0..v-1`` followed by one face-vertex per x-face.

    Edge ``e`` of ``graph`` joins ``vertex_of[corner[e]]`` to the face-vertex
    of the face containing dart ``corner[e]``; half-edge ``2e`` sits at the
    G-vertex.
    """

    source: EmbeddedGraph
    coloring: CheckerboardColoring
    x: str
    graph: EmbeddedGraph
    faces: tuple[int, ...]
    corner: tuple[int, ...]
    edges_at: tuple[tuple[int, ...], ...]

    @property
    def num_face_vertices(self):
        return len(self.faces)


def color_graph(g: EmbeddedGraph, coloring: CheckerboardColoring, x) -> ColorGraph:
    nv = g.num_vertices
    faces = tuple(f for f, c in enumerate(coloring.colors) if c == x)
    pos = {}
    corner, decor = [], []
    edge_of_corner = {}
    for f in faces:
        acc = [0] * (2 * g.genus)
        for d in g.face_orbits[f]:
            pos[d] = tuple(acc)
            for k, val in enumerate(g.dart_decor(d)):
                acc[k] += val
        for d in g.face_orbits[f]:
            edge_of_corner[d] = len(corner)
            corner.append(d)
            # G-vertex -> face-vertex, homotoped back along the face boundary
            decor.append(tuple(-val for val in pos[d]))
    rotation = []
    edges_at = []
    for w in range(nv):
        es = [edge_of_corner[h] for h in g.rotation[w] if h in edge_of_corner]
        edges_at.append(tuple(es))
        rotation.append(tuple(2 * e for e in es))
    for f in faces:
        rotation.append(tuple(2 * edge_of_corner[d] + 1 for d in reversed(g.face_orbits[f])))
    edges = tuple((2 * e, 2 * e + 1) for e in range(len(corner)))
    graph = EmbeddedGraph(tuple(rotation), edges, tuple(decor), g.genus)
    return ColorGraph(g, coloring, x, graph, faces, tuple(corner), tuple(edges_at))


@dataclass(frozen=True, eq=False)
class CoveredSubgraph:
    source: ColorGraph
    cover: frozenset
    edges: frozenset
    face_vertices: frozenset
    is_covering: bool
    is_tree: bool

    @property
    def num_face_vertices(self):
        return len(self.face_vertices)

    @cached_property
    def boundary_components(self):
        if not self.cover:
            return 0
        return ribbon_boundary_components(self.source.graph, self.edges, self.cover)

    @property
    def is_quasitree(self):
        return self.boundary_components == 1


def _tree_flags(cg: ColorGraph, U):
    """``(is_covering, is_tree)`` by union-find over G-vertex / face-vertex incidences."""
    gr = cg.graph
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    fverts = set()
    for w in U:
        find(w)
        for e in cg.edges_at[w]:
            f = gr.vertex_of[2 * e + 1]
            fverts.add(f)
            a, b = find(w), find(f)
            if a == b:
                acyclic = False
            else:
                parent[a] = b
    covering = len(fverts) == cg.num_face_vertices
    connected = len({find(x) for x in parent}) == 1
    return covering, bool(U) and acyclic and connected


def is_covering_tree(cg: ColorGraph, U) -> bool:
    covering, tree = _tree_flags(cg, U)
    return covering and tree


def covered_subgraph(cg: ColorGraph, U) -> CoveredSubgraph:
    U = frozenset(U)
    edges = frozenset(e for w in U for e in cg.edges_at[w])
    fverts = frozenset(cg.graph.vertex_of[2 * e + 1] for e in edges)
    covering, tree = _tree_flags(cg, U)
    return CoveredSubgraph(cg, U, edges, fverts, covering, tree)


def atrail_from_covering_tree(cg: ColorGraph, U) -> TransitionSystem:
    """``S_{x'}[U]`` for a covering tree ``G_x[U]``; always a single circuit."""
    sub = covered_subgraph(cg, U)
    if not (sub.is_covering and sub.is_tree):
        raise NotCoveringTree(f"G_{cg.x[0]}[U] is not a covering tree")
    return smoothing_system(cg.source, cg.coloring, other(cg.x), U)


def covering_structure_from_atrail(g, coloring, T, graphs=None):
    """Return ``(x, U)`` with ``G_x[U]`` a covering tree; red is tried first."""
    if not is_atrail(g, T):
        raise NotAnATrail("transition system has more than one circuit")
    tr, tb = smoothed_sets(g, coloring, T)
    graphs = graphs or {RED: color_graph(g, coloring, RED), BLUE: color_graph(g, coloring, BLUE)}
    for x, U in ((RED, tb), (BLUE, tr)):
        sub = covered_subgraph(graphs[x], U)
        if sub.is_covering and sub.is_tree:
            return x, U
    raise AssertionError("A-trail without a covering tree in either color graph")


def corner_counts(g, coloring, v):
    reds = sum(coloring.colors[g.face_of[h]] == RED for h in g.rotation[v])
    return reds, len(g.rotation[v]) - reds


def parity_precheck(g, coloring):
    for v in range(g.num_vertices):
        reds, blues = corner_counts(g, coloring, v)
        if reds % 2 == 0 or blues % 2 == 0:
            raise PreconditionNotMet(
                f"vertex {v} meets {reds} red and {blues} blue faces; both must be odd")
    if coloring.count(RED) % 2 == 0 and coloring.count(BLUE) % 2 == 0:
        return NO_ATRAIL
    return MAYBE_HAS_ATRAIL


def covering_tree_atrails(g, coloring, max_vertices=16):
    """Bits of every ``S_b[U]`` with ``G_r[U]`` a covering tree and every
    ``S_r[W]`` with ``G_b[W]`` a covering tree, plus the trees found."""
    if g.num_vertices > max_vertices:
        raise PreconditionNotMet(f"subset enumeration capped at {max_vertices} vertices")
    graphs = {RED: color_graph(g, coloring, RED), BLUE: color_graph(g, coloring, BLUE)}
    systems = set()
    trees = []
    verts = range(g.num_vertices)
    for k in range(1, g.num_vertices + 1):
        for U in combinations(verts, k):
            for x in (RED, BLUE):
                if is_covering_tree(graphs[x], U):
                    trees.append(covered_subgraph(graphs[x], U))
                    systems.add(bits_of(g, smoothing_system(g, coloring, other(x), U)))
    return systems, trees


__all__ = [
    "RED", "BLUE", "CheckerboardColoring", "NotColorable", "ColorGraph", "CoveredSubgraph",
    "checkerboard_color", "color_graph", "covered_subgraph", "atrail_from_covering_tree",
    "covering_structure_from_atrail", "is_covering_tree", "parity_precheck", "smoothing_system",
    "smoothed_sets", "color_option", "covering_tree_atrails", "corner_counts", "matching_options",
]
