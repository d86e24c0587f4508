"""Explicit A-trails and circuit decompositions on the grid families.

On ``R_{i,j}`` (rotation E, N, W, S) option 0 is the ``\\`` smoothing: the
curve hugs the north-east and south-west corners and runs down-right.
Option 1 is ``/`` and runs up-right, so the all-``/`` system on ``R_{i,j}``
has total class ``(i, j)``.

On ``T_m^{v,r}`` (rotation E, NE, N, W, SW, S) option 1 hugs the three
down-pointing corners, so it joins the three up-pointing triangles around
the vertex.
"""

from __future__ import annotations

from collections import deque
from itertools import product
from math import gcd

from .checkerboard import RED, atrail_from_covering_tree, checkerboard_color, color_graph
from .errors import BadParams, EvenV, SahGrid, StructureError
from .grids import AltshulerParams, OneVertexParams, RectParams, altshuler, one_vertex_grid, rect_grid
from .surface import EmbeddedGraph
from .transitions import (CircuitDecomposition, TransitionSystem, enumerate_atrails, is_atrail,
                          system_from_bits, trace)


def triangular_cover(params: AltshulerParams) -> set[int]:
    """Vertices whose three up-triangles are joined in the row-pattern A-trail.

    Read as hyperedges of the up-triangle graph these vertices form a
    covering tree, which makes the complementary smoothing a single circuit.
    """
    n, r, s = params.n, params.r, params.m - 1
    start = (s + 2) % n
    cover = {s}  # bottom row: the single break sits under the twist
    for j in range(1, r - 1, 2):
        cover.update(j * n + (start + k) % n for k in range(n - 1))
    for j in range(2, r - 2, 2):
        cover.add(j * n + s)
    cover.update((r - 1) * n + c for c in range(1, n - 1, 2))
    return cover


def triangular_atrail(params: AltshulerParams) -> TransitionSystem:
    params.validate()
    if not 1 < params.r < params.v:
        raise SahGrid(f"T^{{{params.v},{params.r}}} is straight-ahead Hamiltonian")
    if params.v % 2 == 0:
        raise EvenV(f"v={params.v} is even; such grids have no A-trail")
    g = altshuler(params)
    cover = triangular_cover(params)
    T = system_from_bits(g, [1 if x in cover else 0 for x in range(g.num_vertices)])
    if not is_atrail(g, T):
        raise StructureError(f"row pattern failed on {params}")
    return T


def _rect_bits_odd_width(i, j):
    # every row alike: '/' in odd columns and column 0; vertex (0, 0) is
    # flipped so the faces around it meet the trail in one-odd-out patterns
    bits = [1 if x % 2 or x == 0 else 0 for y in range(j) for x in range(i)]
    bits[0] = 0
    return bits


def _rect_bits_odd_height(i, j):
    bits = [1 if y % 2 or y == 0 else 0 for y in range(j) for x in range(i)]
    bits[0] = 0
    return bits


def _rect_even_cover(g: EmbeddedGraph, coloring):
    """Vertices of a BFS spanning tree of the red faces, joined through vertices."""
    red = [f for f, c in enumerate(coloring.colors) if c == RED]
    joins = {}
    for v, rot in enumerate(g.rotation):
        a, b = g.face_of[rot[0]], g.face_of[rot[2]]
        if coloring.colors[a] != RED:
            a, b = g.face_of[rot[1]], g.face_of[rot[3]]
        joins.setdefault(a, []).append((v, b))
        joins.setdefault(b, []).append((v, a))
    root = g.face_of[0] if coloring.colors[g.face_of[0]] == RED else red[0]
    seen = {root}
    cover = set()
    queue = deque([root])
    while queue:
        f = queue.popleft()
        for v, k in joins.get(f, ()):
            if k not in seen:
                seen.add(k)
                cover.add(v)
                queue.append(k)
    return cover


def rect_unknotted_atrail(params: RectParams) -> TransitionSystem:
    """An A-trail of ``R_{i,j}`` that is an unknot on the standard torus.

    Odd width: column bands with one flipped vertex, class ``(+-1, *)``.
    Odd height: the transposed pattern.  Both even: a spanning tree of the red faces, whose
    boundary is a null-homotopic circuit.
    """
    params.validate()
    i, j = params.i, params.j
    g = rect_grid(params)
    if i % 2:
        T = system_from_bits(g, _rect_bits_odd_width(i, j))
    elif j % 2:
        T = system_from_bits(g, _rect_bits_odd_height(i, j))
    else:
        coloring = checkerboard_color(g)
        cover = _rect_even_cover(g, coloring)
        T = atrail_from_covering_tree(color_graph(g, coloring, RED), cover)
    if not is_atrail(g, T):
        raise StructureError(f"unknot pattern failed on R_{{{i},{j}}}")
    return T


def _check_diag(p, q):
    if abs(p) < 2 or abs(q) < 2:
        raise BadParams(f"diagonal systems need |p|, |q| > 1, got ({p}, {q})")


def orient_essential(g: EmbeddedGraph, dec: CircuitDecomposition, target) -> CircuitDecomposition:
    """Reverse essential circuits whose class points away from ``target``."""
    out = []
    for c in dec.circuits:
        cls = g.walk_class(c)
        if sum(a * b for a, b in zip(cls, target)) < 0:
            c = tuple(g.twin[d] for d in reversed(c))
        out.append(c)
    return CircuitDecomposition(tuple(out))


def diagonal_system(p, q) -> TransitionSystem:
    """All-diagonal system on ``R_{|p|,|q|}``; ``/`` when ``pq > 0``, else ``\\``."""
    _check_diag(p, q)
    g = rect_grid(RectParams(abs(p), abs(q)))
    return system_from_bits(g, [1 if p * q > 0 else 0] * g.num_vertices)


def diagonal_decomposition(p, q) -> tuple[EmbeddedGraph, CircuitDecomposition]:
    """The diagonal system traced and oriented so the total class is ``(p, q)``."""
    T = diagonal_system(p, q)
    g = rect_grid(RectParams(abs(p), abs(q)))
    return g, orient_essential(g, trace(g, T), (p, q))


def shifted_bits(i, j, m, n):
    left, bottom = i - m, j - n
    bits = []
    for y in range(j):
        for x in range(i):
            in_left, in_bottom = x < left, y < bottom
            if in_left and in_bottom:
                bits.append((x + y) % 2)
            elif in_left:
                bits.append(x % 2)
            elif in_bottom:
                bits.append(1 - y % 2)
            else:
                bits.append(1)
    return bits


def shifted_system(i, j, m, n) -> TransitionSystem:
    """``(m, n)`` diagonal pattern in the upper-right ``m x n`` block of ``R_{i,j}``.

    The remaining columns and rows alternate between the two smoothings;
    each alternating pair cancels one wrap and leaves small null loops.
    """
    if not (1 <= m <= i and 1 <= n <= j) or (i - m) % 2 or (j - n) % 2:
        raise BadParams(f"need m <= i, n <= j with even differences, got {(i, j, m, n)}")
    g = rect_grid(RectParams(i, j))
    return system_from_bits(g, shifted_bits(i, j, m, n))


def shifted_decomposition(i, j, m, n):
    T = shifted_system(i, j, m, n)
    g = rect_grid(RectParams(i, j))
    return g, orient_essential(g, trace(g, T), (m, n))


def one_vertex_atrail_classes(params: OneVertexParams):
    """Classes of the two A-trails of a one-vertex grid, as traced."""
    g = one_vertex_grid(params)
    return [g.walk_class(trace(g, T).circuits[0]) for T in enumerate_atrails(g)]


def _canon(c):
    p, q = c
    return (-p, -q) if p < 0 or (p == 0 and q < 0) else (p, q)


def find_one_vertex_decoration(targets, bound=6):
    """Smallest loop classes ``(a, b)`` whose two A-trails realize ``targets``.

    Classes are compared up to orientation; candidates are scanned by
    max-norm, then lexicographically.
    """
    want = sorted(_canon(t) for t in targets)
    rng = range(-bound, bound + 1)
    cands = []
    for a0, a1, b0, b1 in product(rng, repeat=4):
        if abs(a0 * b1 - a1 * b0) == 1:
            cands.append((max(map(abs, (a0, a1, b0, b1))), (a0, a1), (b0, b1)))
    cands.sort()
    for _, a, b in cands:
        params = OneVertexParams(a, b)
        if sorted(_canon(c) for c in one_vertex_atrail_classes(params)) == want:
            return params
    return None


def essential_gcd(p, q):
    return gcd(abs(p), abs(q))
