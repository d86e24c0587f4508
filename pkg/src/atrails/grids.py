"""Generators for the torus grid families and straight-ahead structure.

Coordinates: vertices sit at ``(column + 1/2, row + 1/2)`` inside the
fundamental square, so no vertex lies on an identified side and edge
decorations alone carry the homology.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParams, NotTriangular, StructureError
from .surface import EmbeddedGraph, Layout


@dataclass(frozen=True)
class AltshulerParams:
    v: int
    r: int
    m: int

    @property
    def n(self):
        return self.v // self.r

    def validate(self):
        v, r, m = self.v, self.r, self.m
        if v < 1 or r < 1 or r > v or v % r:
            raise BadParams(f"need 1 <= r <= v with r | v, got v={v}, r={r}")
        if not 1 <= m <= self.n:
            raise BadParams(f"twist index m={m} must lie in 1..{self.n}")


@dataclass(frozen=True)
class RectParams:
    i: int
    j: int

    def validate(self):
        if self.i <= 1 or self.j <= 1:
            raise BadParams(f"rectangular grid needs i, j > 1, got ({self.i}, {self.j})")


@dataclass(frozen=True)
class OneVertexParams:
    a: tuple[int, int]
    b: tuple[int, int]

    def validate(self):
        a, b = self.a, self.b
        if abs(a[0] * b[1] - a[1] * b[0]) != 1:
            raise BadParams(f"loop classes {a}, {b} do not form a basis of Z^2")


def check_regular_type(k, d):
    """Reject face length ``k`` / degree ``d`` off the torus hyperbola ``2k = (k - 2) d`` (d even)."""
    if d % 2 or k < 1 or d < 1 or 2 * k != (k - 2) * d:
        raise BadParams(f"no ({k},{d})-regular grid exists on the torus")
    return k, d


def regular_type(g: EmbeddedGraph):
    """``(k, l)`` when every face has length k and every vertex degree l, else None."""
    degs = {len(r) for r in g.rotation}
    lens = {len(f) for f in g.face_orbits}
    if len(degs) == 1 and len(lens) == 1:
        return lens.pop(), degs.pop()
    return None


def _lattice_graph(nx, ny, shift, steps):
    """Quotient of a plane lattice graph by ``(nx, 0)`` and ``(-shift, ny)``.

    ``steps`` lists the forward edge directions; the rotation at every vertex
    is the forward steps followed by the reversed ones, which is
    counter-clockwise for the step lists used below.
    """
    nv = nx * ny
    k = len(steps)

    def reduce(x, y):
        p, y = divmod(y, ny)
        x += p * shift
        q, x = divmod(x, nx)
        return y * nx + x, p, q

    edges, decor, head = [], [], []
    for vid in range(nv):
        y, x = divmod(vid, nx)
        for dx, dy in steps:
            w, p, q = reduce(x + dx, y + dy)
            e = len(edges)
            edges.append((2 * e, 2 * e + 1))
            decor.append((p, q))
            head.append(w)
    incoming = [[0] * k for _ in range(nv)]
    for e, w in enumerate(head):
        incoming[w][e % k] = 2 * e + 1
    rotation = []
    for vid in range(nv):
        out = [2 * (k * vid + s) for s in range(k)]
        rotation.append(tuple(out + incoming[vid]))
    layout = Layout(
        width=nx, height=ny,
        positions=tuple(((vid % nx) + 0.5, (vid // nx) + 0.5) for vid in range(nv)),
        p_shift=(-shift, ny), q_shift=(nx, 0))
    return EmbeddedGraph(tuple(rotation), tuple(edges), tuple(decor), 1, layout)


def altshuler(params: AltshulerParams) -> EmbeddedGraph:
    """The triangular torus grid ``T_m^{v,r}``.

    Row ``j`` (0 = bottom) holds ``a_1^{j+1} .. a_n^{j+1}`` as vertex ids
    ``j*n .. j*n+n-1``.  Vertical sides are glued straight; the top is glued
    to the bottom shifted by ``m - 1`` columns.
    """
    params.validate()
    n, r, s = params.n, params.r, params.m - 1
    g = _lattice_graph(n, r, s, [(1, 0), (1, 1), (0, 1)])
    if r > 0:
        # the straight path a_1^1 a_1^2 ... a_1^r must return to row 1 at column m
        h = g.rotation[0][2]
        for _ in range(r):
            t = g.twin[h]
            h = g.rotation[g.vertex_of[t]][(g.rot_index[t] + 3) % 6]
        if g.vertex_of[h] != s:
            raise StructureError("twisted identification does not match the requested m")
    return g


def rect_grid(params: RectParams) -> EmbeddedGraph:
    """``R_{i,j}``: width ``i``, height ``j``; rotation E, N, W, S."""
    params.validate()
    return _lattice_graph(params.i, params.j, 0, [(1, 0), (0, 1)])


def one_vertex_grid(params: OneVertexParams) -> EmbeddedGraph:
    params.validate()
    layout = Layout(1, 1, ((0.5, 0.5),), (0, 1), (1, 0))
    # rotation a+ b+ a- b-
    return EmbeddedGraph(((0, 2, 1, 3),), ((0, 1), (2, 3)),
                         (tuple(params.a), tuple(params.b)), 1, layout)


@dataclass(frozen=True)
class StraightCycle:
    darts: tuple[int, ...]
    family: int

    def vertices(self, g):
        return [g.vertex_of[d] for d in self.darts]


def _require_triangular(g):
    if any(len(r) != 6 for r in g.rotation):
        raise NotTriangular("straight-ahead walks need a 6-regular graph")


def straight_ahead_cycles(g: EmbeddedGraph) -> list[StraightCycle]:
    """Partition the edges into straight-ahead cycles.

    At every vertex a walk leaves along the half-edge three rotation steps
    from the one it arrived on.  ``family`` is the rotation index (mod 3) of
    the first dart, which is constant along a cycle of an Altshuler grid.
    """
    _require_triangular(g)
    used = [False] * g.num_edges
    cycles = []
    for start in range(g.num_half_edges):
        if used[g.edge_of[start]]:
            continue
        darts = []
        d = start
        while True:
            used[g.edge_of[d]] = True
            darts.append(d)
            t = g.twin[d]
            d = g.rotation[g.vertex_of[t]][(g.rot_index[t] + 3) % 6]
            if d == start:
                break
        cycles.append(StraightCycle(tuple(darts), g.rot_index[start] % 3))
    return cycles


def is_sah(g: EmbeddedGraph) -> bool:
    """Every straight-ahead cycle that is not a single loop visits all vertices once."""
    nv = g.num_vertices
    for c in straight_ahead_cycles(g):
        if len(c.darts) == 1 and g.vertex_of[c.darts[0]] == g.vertex_of[g.twin[c.darts[0]]]:
            continue
        if len(c.darts) != nv or len(set(c.vertices(g))) != nv:
            return False
    return True


def non_sah_params(max_v, v_min=1):
    """All ``(v, r, m)`` with ``1 < r < v``, ``r | v``, ``1 <= m <= v/r``."""
    out = []
    for v in range(max(v_min, 1), max_v + 1):
        for r in range(2, v):
            if v % r == 0:
                for m in range(1, v // r + 1):
                    out.append(AltshulerParams(v, r, m))
    return out
