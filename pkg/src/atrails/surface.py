"""Graphs cellularly embedded on closed orientable surfaces.

An :class:`EmbeddedGraph` is a combinatorial map.  Half-edges (darts) are
dense integers; ``rotation[v]`` lists the half-edges at ``v`` in
counter-clockwise order and ``edges[e] = (h0, h1)`` pairs the two halves of
edge ``e``.  Traversing ``e`` from ``h0`` to ``h1`` adds ``decor[e]`` to the
homology class of a walk; for genus ``n`` the vector has ``2n`` entries, one
``(p, q)`` pair per handle with ``p`` the longitudinal (bottom-to-top) and
``q`` the meridional (left-to-right) winding.

The dart ``h`` is read as "leave ``vertex_of[h]`` along the edge of ``h``".
Faces are orbits of ``h -> succ(twin(h))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain

from .errors import EmptySubgraph, GenusMismatch, OpenWalk, StructureError


@dataclass(frozen=True)
class Layout:
    """Drawing data for a fundamental parallelogram (rendering only).

    ``positions[v]`` is a point inside ``[0, width) x [0, height)``; moving by
    one longitude step adds ``p_shift`` and one meridian step adds
    ``q_shift``.
    """

    width: float
    height: float
    positions: tuple[tuple[float, float], ...]
    p_shift: tuple[float, float]
    q_shift: tuple[float, float]


@dataclass(frozen=True)
class Face:
    boundary: tuple[int, ...]
    is_cyclic: bool

    def __len__(self):
        return len(self.boundary)


@dataclass(frozen=True, eq=False)
class EmbeddedGraph:
    rotation: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    decor: tuple[tuple[int, ...], ...]
    genus: int
    layout: Layout | None = field(default=None, repr=False)
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rotation", tuple(tuple(int(h) for h in r) for r in self.rotation))
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))
        object.__setattr__(self, "decor", tuple(tuple(int(x) for x in d) for d in self.decor))
        if self.check:
            self.validate()

    # -- structure -----------------------------------------------------

    def validate(self):
        nh = 2 * len(self.edges)
        if self.genus < 1:
            raise StructureError(f"genus must be >= 1, got {self.genus}")
        seen = sorted(chain.from_iterable(self.edges))
        if seen != list(range(nh)):
            raise StructureError("edge half-edges must be exactly 0..2E-1, each once")
        for e, (a, b) in enumerate(self.edges):
            if a == b:
                raise StructureError(f"edge {e} pairs half-edge {a} with itself")
        in_rot = sorted(chain.from_iterable(self.rotation))
        if in_rot != list(range(nh)):
            raise StructureError("every half-edge must appear exactly once across all rotations")
        if any(len(r) == 0 for r in self.rotation):
            raise StructureError("isolated vertices cannot be cellularly embedded")
        if len(self.decor) != len(self.edges):
            raise StructureError("one homology decoration per edge is required")
        for e, d in enumerate(self.decor):
            if len(d) != 2 * self.genus:
                raise GenusMismatch(
                    f"edge {e} decoration has length {len(d)}, expected {2 * self.genus}"
                )
        if not self.is_connected():
            raise StructureError("graph is not connected")
        computed = self.euler_genus()
        if computed != self.genus:
            raise GenusMismatch(f"rotation system has genus {computed}, declared {self.genus}")
        zero = (0,) * (2 * self.genus)
        for i, f in enumerate(self.face_orbits):
            if self.walk_class(f) != zero:
                raise StructureError(f"face {i} boundary has nonzero homology {self.walk_class(f)}")

    @property
    def num_vertices(self):
        return len(self.rotation)

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def num_half_edges(self):
        return 2 * len(self.edges)

    @cached_property
    def twin(self) -> tuple[int, ...]:
        t = [0] * self.num_half_edges
        for a, b in self.edges:
            t[a], t[b] = b, a
        return tuple(t)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.num_half_edges
        for e, (a, b) in enumerate(self.edges):
            out[a] = out[b] = e
        return tuple(out)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * self.num_half_edges
        for v, rot in enumerate(self.rotation):
            for h in rot:
                out[h] = v
        return tuple(out)

    @cached_property
    def rot_index(self) -> tuple[int, ...]:
        out = [0] * self.num_half_edges
        for rot in self.rotation:
            for i, h in enumerate(rot):
                out[h] = i
        return tuple(out)

    @cached_property
    def succ(self) -> tuple[int, ...]:
        out = [0] * self.num_half_edges
        for rot in self.rotation:
            for i, h in enumerate(rot):
                out[h] = rot[(i + 1) % len(rot)]
        return tuple(out)

    @cached_property
    def pred(self) -> tuple[int, ...]:
        out = [0] * self.num_half_edges
        for h, s in enumerate(self.succ):
            out[s] = h
        return tuple(out)

    def degree(self, v):
        return len(self.rotation[v])

    def tail(self, h):
        return self.vertex_of[h]

    def head(self, h):
        return self.vertex_of[self.twin[h]]

    def dart_decor(self, h) -> tuple[int, ...]:
        e = self.edge_of[h]
        d = self.decor[e]
        return d if self.edges[e][0] == h else tuple(-x for x in d)

    def face_next(self, h):
        return self.succ[self.twin[h]]

    @cached_property
    def face_orbits(self) -> tuple[tuple[int, ...], ...]:
        nxt = [self.succ[t] for t in self.twin]
        seen = [False] * self.num_half_edges
        orbits = []
        for start in range(self.num_half_edges):
            if seen[start]:
                continue
            orb = []
            h = start
            while not seen[h]:
                seen[h] = True
                orb.append(h)
                h = nxt[h]
            orbits.append(tuple(orb))
        return tuple(orbits)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        out = [0] * self.num_half_edges
        for i, orb in enumerate(self.face_orbits):
            for h in orb:
                out[h] = i
        return tuple(out)

    @property
    def num_faces(self):
        return len(self.face_orbits)

    def euler_genus(self):
        chi = self.num_vertices - self.num_edges + self.num_faces
        if chi % 2:
            raise StructureError(f"odd Euler characteristic {chi}")
        return (2 - chi) // 2

    def is_connected(self):
        if not self.rotation:
            return False
        adj = [set() for _ in self.rotation]
        for a, b in self.edges:
            u, w = self.vertex_of[a], self.vertex_of[b]
            adj[u].add(w)
            adj[w].add(u)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.num_vertices

    def walk_class(self, darts) -> tuple[int, ...]:
        total = [0] * (2 * self.genus)
        for h in darts:
            for k, x in enumerate(self.dart_decor(h)):
                total[k] += x
        return tuple(total)

    def has_loops(self):
        return any(self.vertex_of[a] == self.vertex_of[b] for a, b in self.edges)

    def is_eulerian(self):
        return all(len(r) % 2 == 0 for r in self.rotation)

    def with_decor(self, decor, check=True):
        return EmbeddedGraph(self.rotation, self.edges, decor, self.genus, self.layout, check)

    def __eq__(self, other):
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return (self.rotation, self.edges, self.decor, self.genus) == (
            other.rotation, other.edges, other.decor, other.genus)

    def __hash__(self):
        return hash((self.rotation, self.edges, self.decor, self.genus))


def trace_faces(g: EmbeddedGraph) -> list[Face]:
    faces = []
    for orb in g.face_orbits:
        verts = [g.vertex_of[h] for h in orb]
        faces.append(Face(orb, len(set(verts)) == len(verts)))
    return faces


def genus(g: EmbeddedGraph) -> int:
    computed = g.euler_genus()
    if computed != g.genus:
        raise GenusMismatch(f"computed genus {computed} != declared {g.genus}")
    return computed


def walk_homology(g: EmbeddedGraph, walk) -> tuple[int, ...]:
    """Homology class of a closed walk given as a sequence of darts."""
    walk = list(walk)
    if not walk:
        return (0,) * (2 * g.genus)
    for a, b in zip(walk, walk[1:] + walk[:1]):
        if g.head(a) != g.tail(b):
            raise OpenWalk(f"dart {a} ends at {g.head(a)} but dart {b} starts at {g.tail(b)}")
    return g.walk_class(walk)


def _face_prefix_sums(g):
    # displacement from the first corner of each face to the tail of each dart
    pos = {}
    for orb in g.face_orbits:
        acc = [0] * (2 * g.genus)
        for h in orb:
            pos[h] = tuple(acc)
            for k, x in enumerate(g.dart_decor(h)):
                acc[k] += x
    return pos


def geometric_dual(g: EmbeddedGraph) -> EmbeddedGraph:
    """Dual map: one vertex per face, dart ``h`` of the dual crosses dart ``h``.

    Each dual dart is homotoped into a path through the corner it shares with
    the primal graph, which fixes its homology decoration.
    """
    rotation = [tuple(reversed(orb)) for orb in g.face_orbits]
    pos = _face_prefix_sums(g)
    decor = []
    for a, b in g.edges:
        # dual edge runs from face(a) to face(b) through the vertex tail(a) = head(b)
        after_b = g.face_next(b)
        d = tuple(x - y for x, y in zip(pos[a], pos[after_b]))
        decor.append(d)
    return EmbeddedGraph(tuple(rotation), g.edges, tuple(decor), g.genus)


def ribbon_boundary_components(g: EmbeddedGraph, edges=None, vertices=()) -> int:
    """Boundary components of the ribbon subgraph spanned by ``edges``.

    The ribbon structure is the rotation restricted to the chosen edges;
    ``vertices`` may add isolated vertices (each a disk with one boundary).
    ``edges=None`` means every edge.
    """
    if edges is None:
        edges = range(g.num_edges)
    edges = set(edges)
    extra = set(vertices)
    if not edges and not extra:
        raise EmptySubgraph("ribbon subgraph has no edges and no vertices")
    keep = set()
    for e in edges:
        keep.update(g.edges[e])
    used_vertices = {g.vertex_of[h] for h in keep}
    isolated = len(extra - used_vertices)
    succ = {}
    for rot in g.rotation:
        sub = [h for h in rot if h in keep]
        for i, h in enumerate(sub):
            succ[h] = sub[(i + 1) % len(sub)]
    seen = set()
    count = 0
    for start in keep:
        if start in seen:
            continue
        count += 1
        h = start
        while h not in seen:
            seen.add(h)
            h = succ[g.twin[h]]
    return count + isolated


def relabel(g: EmbeddedGraph, perm) -> EmbeddedGraph:
    """Rename half-edge ``h`` to ``perm[h]``; vertices and edges keep their order."""
    rotation = tuple(tuple(perm[h] for h in r) for r in g.rotation)
    edges = tuple((perm[a], perm[b]) for a, b in g.edges)
    return EmbeddedGraph(rotation, edges, g.decor, g.genus, g.layout)


def isomorphism(g1: EmbeddedGraph, g2: EmbeddedGraph, decorated=False):
    """Return a dart bijection g1 -> g2 commuting with twin and succ, or None.

    With ``decorated=True`` the dart decorations must also agree.
    """
    if (g1.num_half_edges, g1.num_vertices, g1.num_faces) != (
            g2.num_half_edges, g2.num_vertices, g2.num_faces):
        return None
    if g1.num_half_edges == 0:
        return {}
    for root in range(g2.num_half_edges):
        m = {0: root}
        stack = [0]
        ok = True
        while stack and ok:
            h = stack.pop()
            k = m[h]
            if decorated and g1.dart_decor(h) != g2.dart_decor(k):
                ok = False
                break
            for a, b in ((g1.twin[h], g2.twin[k]), (g1.succ[h], g2.succ[k])):
                if a in m:
                    if m[a] != b:
                        ok = False
                        break
                else:
                    m[a] = b
                    stack.append(a)
        if ok and len(m) == g1.num_half_edges and len(set(m.values())) == len(m):
            return m
    return None
