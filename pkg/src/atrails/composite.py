"""Chains of torus grids glued along faces, and transition systems on them.

Gluing ``G_i`` to ``G_{i+1}`` removes a cyclic face ``f1`` of ``G_i`` and a
cyclic face ``f2`` of ``G_{i+1}`` and identifies their boundaries by a vertex
map ``pi``.  ``pi`` must reverse the boundary direction, otherwise the
result would not be orientable.

At a glued vertex ``w`` (``u = pi(w)``) the rotation of ``G_i`` read from the
outgoing ``f1`` half-edge ``b`` round to the incoming one ``a`` is followed by
the rotation of ``G_{i+1}`` strictly between its outgoing ``f2`` half-edge
``d`` and incoming one ``c``.  ``d`` is identified with ``a`` and ``c`` with
``b``; the edges of ``G_i`` survive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (FaceLengthMismatch, Incompatible, NonCyclicFace, NonSmooth, NotAnATrail,
                     NotTriangular, OverlapViolation, StructureError, VertexNotOnFace)
from .surface import EmbeddedGraph
from .transitions import (TransitionSystem, is_atrail, is_smooth, iter_atrail_bits, system_from_bits,
                          trace)


@dataclass(frozen=True)
class Gluing:
    """Glue face ``face1`` of component ``i`` to ``face2`` of component ``i+1``.

    ``pi`` lists ``(vertex of G_i, vertex of G_{i+1})`` pairs.
    """

    face1: int
    face2: int
    pi: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SeamVertex:
    vertex: int  # composite id
    left: tuple[int, int, int]  # (vertex w, a, b) in G_i
    right: tuple[int, int, int]  # (vertex u, c, d) in G_{i+1}


@dataclass(frozen=True, eq=False)
class CompositeGraph:
    graph: EmbeddedGraph
    components: tuple[EmbeddedGraph, ...]
    gluings: tuple[Gluing, ...]
    half_map: tuple[tuple[int, ...], ...]
    vertex_map: tuple[tuple[int, ...], ...]
    seams: tuple[tuple[SeamVertex, ...], ...]
    _inv: tuple = field(default=(), repr=False)

    @property
    def genus(self):
        return self.graph.genus

    def inverse(self, j):
        """Composite half-edge -> half-edge of component ``j`` (where defined)."""
        return self._inv[j]


def face_corners(g: EmbeddedGraph, f):
    """``(vertex, a, b)`` per boundary vertex of face ``f`` in face order.

    ``b`` leaves the vertex along the face and ``a`` is the half-edge of the
    incoming boundary edge, so ``(a, b)`` is the face's corner.
    """
    out = []
    for b in g.face_orbits[f]:
        out.append((g.vertex_of[b], g.pred[b], b))
    return out


def is_cyclic_face(g, f):
    verts = [g.vertex_of[h] for h in g.face_orbits[f]]
    return len(set(verts)) == len(verts) and len(verts) >= 3


def _normalize_decor(g: EmbeddedGraph, faces):
    """Add a coboundary so every boundary edge of ``faces`` has zero decoration.

    Closed walks keep their classes; the faces must be cyclic and
    vertex-disjoint.
    """
    phi = {}
    for f in faces:
        acc = [0] * (2 * g.genus)
        for h in g.face_orbits[f]:
            phi[g.vertex_of[h]] = tuple(-x for x in acc)
            for k, x in enumerate(g.dart_decor(h)):
                acc[k] += x
    zero = (0,) * (2 * g.genus)
    out = []
    for e, (h0, h1) in enumerate(g.edges):
        t, hd = phi.get(g.vertex_of[h0], zero), phi.get(g.vertex_of[h1], zero)
        out.append(tuple(x + y - z for x, y, z in zip(g.decor[e], hd, t)))
    return out


def _check_gluing(grids, gluings):
    if len(gluings) != len(grids) - 1:
        raise StructureError(f"{len(grids)} components need {len(grids) - 1} gluings")
    for i, gl in enumerate(gluings):
        g1, g2 = grids[i], grids[i + 1]
        for g, f in ((g1, gl.face1), (g2, gl.face2)):
            if not 0 <= f < g.num_faces:
                raise StructureError(f"face {f} does not exist")
            if not is_cyclic_face(g, f):
                raise NonCyclicFace(f"face {f} boundary repeats a vertex")
        c1, c2 = face_corners(g1, gl.face1), face_corners(g2, gl.face2)
        if len(c1) != len(c2):
            raise FaceLengthMismatch(f"gluing {i}: faces of lengths {len(c1)} and {len(c2)}")
        pi = dict(gl.pi)
        v1 = [w for w, _, _ in c1]
        v2 = [u for u, _, _ in c2]
        if sorted(pi) != sorted(v1):
            raise VertexNotOnFace(f"gluing {i}: pi domain is not the boundary of face {gl.face1}")
        if sorted(pi.values()) != sorted(v2):
            raise VertexNotOnFace(f"gluing {i}: pi image is not the boundary of face {gl.face2}")
        k = len(v1)
        pos2 = {u: t for t, u in enumerate(v2)}
        for t in range(k):
            step = (pos2[pi[v1[(t + 1) % k]]] - pos2[pi[v1[t]]]) % k
            if step != k - 1:
                raise StructureError(
                    f"gluing {i}: pi must map the boundary cycle onto the other one reversing direction")
    for i in range(1, len(grids) - 1):
        g = grids[i]
        fa, fb = gluings[i - 1].face2, gluings[i].face1
        va = {g.vertex_of[h] for h in g.face_orbits[fa]}
        vb = {g.vertex_of[h] for h in g.face_orbits[fb]}
        if fa == fb or va & vb:
            raise OverlapViolation(f"component {i}: glued faces {fa} and {fb} share vertices")


def glue(grids, gluings) -> CompositeGraph:
    grids = list(grids)
    gluings = [g if isinstance(g, Gluing) else Gluing(*g) for g in gluings]
    _check_gluing(grids, gluings)
    n = len(grids)
    genus = sum(g.genus for g in grids)
    offsets = [sum(g.genus for g in grids[:i]) for i in range(n)]
    vertex_map, half_map = [], []
    rotation = []
    edges, decor = [], []
    seams = []
    for i, g in enumerate(grids):
        faces = []
        if i > 0:
            faces.append(gluings[i - 1].face2)
        if i < n - 1:
            faces.append(gluings[i].face1)
        local = _normalize_decor(g, faces)
        before, after = (0,) * (2 * offsets[i]), (0,) * (2 * (genus - offsets[i] - g.genus))
        vmap = [-1] * g.num_vertices
        hmap = [-1] * g.num_half_edges
        seam = []
        if i > 0:
            gl = gluings[i - 1]
            prev = grids[i - 1]
            pi_inv = {u: w for w, u in gl.pi}
            left = {w: (w, a, b) for w, a, b in face_corners(prev, gl.face1)}
            for u, c, d in face_corners(g, gl.face2):
                w, a, b = left[pi_inv[u]]
                vmap[u] = vertex_map[i - 1][w]
                hmap[d] = half_map[i - 1][a]
                hmap[g.twin[d]] = half_map[i - 1][prev.twin[a]]
                seam.append(SeamVertex(vmap[u], (w, a, b), (u, c, d)))
            # order the seam along f1
            order = {w: t for t, (w, _, _) in enumerate(face_corners(prev, gl.face1))}
            seam.sort(key=lambda s: order[s.left[0]])
            seams.append(tuple(seam))
        for v in range(g.num_vertices):
            if vmap[v] == -1:
                vmap[v] = len(rotation)
                rotation.append(None)
        for e, (h0, h1) in enumerate(g.edges):
            if hmap[h0] != -1:
                continue
            ne = len(edges)
            hmap[h0], hmap[h1] = 2 * ne, 2 * ne + 1
            edges.append((2 * ne, 2 * ne + 1))
            decor.append(before + tuple(local[e]) + after)
        glued = {s.right[0]: s for s in seam}
        for v in range(g.num_vertices):
            cv = vmap[v]
            rot = g.rotation[v]
            if v in glued:
                s = glued[v]
                _, c, d = s.right
                cur = rotation[cv]
                b_new = half_map[i - 1][s.left[2]]
                k = cur.index(b_new)
                cur = cur[k:] + cur[:k]
                j = g.rot_index[d]
                middle = [rot[(j + t) % len(rot)] for t in range(1, len(rot) - 1)]
                assert rot[(j - 1) % len(rot)] == c
                rotation[cv] = cur + [hmap[h] for h in middle]
            else:
                rotation[cv] = [hmap[h] for h in rot]
        vertex_map.append(tuple(vmap))
        half_map.append(tuple(hmap))
    graph = EmbeddedGraph(tuple(tuple(r) for r in rotation), tuple(edges), tuple(decor), genus)
    inv = tuple({h: k for k, h in enumerate(hm)} for hm in half_map)
    return CompositeGraph(graph, tuple(grids), tuple(gluings), tuple(half_map), tuple(vertex_map),
                          tuple(seams), inv)


# -- transitions on composites ---------------------------------------------


def is_f_transition(g: EmbeddedGraph, T: TransitionSystem, v, f) -> bool:
    corners = [(a, b) for w, a, b in face_corners(g, f) if w == v]
    if not corners:
        raise VertexNotOnFace(f"vertex {v} is not on face {f}")
    return any(T.partner[a] == b for a, b in corners)


def face_pattern(g, T, f):
    """f-transition flags of ``T`` along the boundary of ``f``, in face order."""
    return tuple(T.partner[a] == b for _, a, b in face_corners(g, f))


@dataclass(frozen=True)
class CompatibilityWitness:
    gluing: int
    flags: tuple[tuple[int, bool, bool], ...]  # (composite vertex, left f1-flag, right f2-flag)

    @property
    def ok(self):
        return all(x != y for _, x, y in self.flags)

    @property
    def violations(self):
        return tuple(v for v, x, y in self.flags if x == y)


def compatibility(cg: CompositeGraph, systems) -> list[CompatibilityWitness]:
    out = []
    for i, seam in enumerate(cg.seams):
        T1, T2 = systems[i], systems[i + 1]
        flags = tuple((s.vertex, T1.partner[s.left[1]] == s.left[2], T2.partner[s.right[1]] == s.right[2])
                      for s in seam)
        out.append(CompatibilityWitness(i, flags))
    return out


def connected_sum(cg: CompositeGraph, systems) -> TransitionSystem:
    systems = list(systems)
    if len(systems) != len(cg.components):
        raise StructureError(f"need {len(cg.components)} component systems")
    bad = [v for w in compatibility(cg, systems) for v in w.violations]
    if bad:
        raise Incompatible(f"transitions incompatible at composite vertices {bad}", bad)
    skip = set()
    for i, seam in enumerate(cg.seams):
        for s in seam:
            skip.add((i, frozenset(s.left[1:])))
            skip.add((i + 1, frozenset(s.right[1:])))
    partner = [-1] * cg.graph.num_half_edges
    for j, (g, T) in enumerate(zip(cg.components, systems)):
        hm = cg.half_map[j]
        for h in range(g.num_half_edges):
            k = T.partner[h]
            if h < k and (j, frozenset((h, k))) not in skip:
                x, y = hm[h], hm[k]
                partner[x], partner[y] = y, x
    assert -1 not in partner
    return TransitionSystem(tuple(partner))


def decompose(cg: CompositeGraph, T: TransitionSystem) -> list[TransitionSystem]:
    """Component systems whose connected sum is ``T``."""
    if not is_smooth(cg.graph, T):
        raise NonSmooth("composite transition system is not smooth")
    out = []
    for j, g in enumerate(cg.components):
        hm, inv = cg.half_map[j], cg.inverse(j)
        partner = [-1] * g.num_half_edges
        for v in range(g.num_vertices):
            loose = []
            for h in g.rotation[v]:
                k = inv.get(T.partner[hm[h]])
                if k is not None and g.vertex_of[k] == v:
                    partner[h] = k
                else:
                    loose.append(h)
            if loose:
                if len(loose) != 2:
                    raise StructureError(f"component {j} vertex {v}: cannot split transition")
                partner[loose[0]], partner[loose[1]] = loose[1], loose[0]
        out.append(TransitionSystem(tuple(partner)))
    return out


def seam_cases(cg: CompositeGraph, T: TransitionSystem, i):
    """Per seam vertex: True when ``T`` sends both boundary strands into ``G_{i+1}``."""
    comps = decompose(cg, T)
    T1 = comps[i]
    return [T1.partner[s.left[1]] == s.left[2] for s in cg.seams[i]]


def glue_crossings(cg: CompositeGraph, T: TransitionSystem, i) -> int:
    """How often the curves of ``T`` cross the ``i``-th glue cycle.

    A strand along a seam edge crosses once when its two ends turn into
    different components.
    """
    cases = seam_cases(cg, T, i)
    k = len(cases)
    return sum(cases[t] != cases[(t + 1) % k] for t in range(k))


def pattern_type(flags):
    """Type of a 4-cycle f-transition pattern: ``A`` (one vertex odd out),
    ``B`` (two adjacent), ``C`` (alternating) or ``constant``."""
    k = sum(flags)
    if len(flags) != 4:
        return "constant" if k in (0, len(flags)) else "mixed"
    if k in (1, 3):
        return "A"
    if k == 2:
        return "B" if flags[0] == flags[1] or flags[1] == flags[2] else "C"
    return "constant"


@dataclass(frozen=True)
class CertifiedUnknot:
    def __str__(self):
        return "CertifiedUnknot"


@dataclass(frozen=True)
class NotCertified:
    reason: str

    def __str__(self):
        return f"NotCertified({self.reason})"


def certify_unknot(cg: CompositeGraph, T: TransitionSystem):
    from .links import is_unknot_class

    if not is_atrail(cg.graph, T):
        raise NotAnATrail("composite transition system is not an A-trail")
    comps = decompose(cg, T)
    for i in range(len(cg.seams)):
        k = glue_crossings(cg, T, i)
        if k != 2:
            return NotCertified(f"glue cycle {i} crossed {k} times")
    for j, (g, S) in enumerate(zip(cg.components, comps)):
        dec = trace(g, S)
        if len(dec) != 1:
            return NotCertified(f"component {j} splits into {len(dec)} circuits")
        if g.genus != 1 or not is_unknot_class(g.walk_class(dec.circuits[0])):
            return NotCertified(f"component {j} is knotted on its torus")
    return CertifiedUnknot()


# -- chain searches ----------------------------------------------------------


def f_transition_bit(g: EmbeddedGraph, a):
    """Option bit that pairs ``a`` with its rotation successor."""
    return g.rot_index[a] % 2


def _forced_for(cg, i, left_system):
    """Bits on ``G_{i+1}`` forced by compatibility with ``left_system`` on ``G_i``."""
    g = cg.components[i + 1]
    forced = {}
    for s in cg.seams[i]:
        is_f1 = left_system.partner[s.left[1]] == s.left[2]
        u, c, _ = s.right
        want = f_transition_bit(g, c)
        forced[u] = (1 - want) if is_f1 else want
    return forced


def chain_atrails(cg: CompositeGraph, candidates=None, limit=None):
    """Depth-first over compatible component A-trails along the chain.

    ``candidates(j, forced)`` yields option-bit tuples for component ``j``;
    the default is complete backtracking under the forced bits.  Yields
    lists of component systems.
    """
    comps = cg.components
    if candidates is None:
        def candidates(j, forced):
            return iter_atrail_bits(comps[j], forced)

    def rec(j, forced, acc):
        for bits in candidates(j, forced):
            if any(bits[v] != b for v, b in forced.items()):
                continue
            S = system_from_bits(comps[j], bits)
            if j == len(comps) - 1:
                yield acc + [S]
            else:
                yield from rec(j + 1, _forced_for(cg, j, S), acc + [S])

    count = 0
    for out in rec(0, {}, []):
        yield out
        count += 1
        if limit is not None and count >= limit:
            return


@dataclass(frozen=True)
class HasATrail:
    witness: TransitionSystem
    components: tuple[TransitionSystem, ...]


@dataclass(frozen=True)
class NoATrail:
    component: int | None
    reason: str


def _is_triangular(g):
    return all(len(r) == 6 for r in g.rotation) and all(len(f) == 3 for f in g.face_orbits)


def triangular_composite_dichotomy(cg: CompositeGraph):
    """A composite A-trail from compatible component A-trails, or the component without one."""
    for j, g in enumerate(cg.components):
        if not _is_triangular(g):
            raise NotTriangular(f"component {j} is not a triangular grid")
    for j, g in enumerate(cg.components):
        if next(iter_atrail_bits(g), None) is None:
            return NoATrail(j, f"component {j} has no A-trail")
    for systems in chain_atrails(cg, limit=1):
        T = connected_sum(cg, systems)
        if not is_atrail(cg.graph, T):
            raise StructureError("compatible component A-trails did not sum to an A-trail")
        return HasATrail(T, tuple(systems))
    return NoATrail(None, "no compatible choice of component A-trails")


def aligned_pi(g1, f1, g2, f2, shift):
    c1 = [w for w, _, _ in face_corners(g1, f1)]
    c2 = [u for u, _, _ in face_corners(g2, f2)]
    k = len(c1)
    return tuple((c1[t], c2[(shift - t) % k]) for t in range(k))


def chain_gluings(grids, shift=0):
    """Glue each grid to the next on the first cyclic faces that keep the chain vertex-disjoint."""
    gluings, used = [], set()
    for i in range(len(grids) - 1):
        g1, g2 = grids[i], grids[i + 1]
        f1 = next((f for f in range(g1.num_faces) if is_cyclic_face(g1, f)
                   and not {w for w, _, _ in face_corners(g1, f)} & used), None)
        if f1 is None:
            raise OverlapViolation(f"grid {i} has no free cyclic face left")
        k = len(g1.face_orbits[f1])
        f2 = next((f for f in range(g2.num_faces)
                   if is_cyclic_face(g2, f) and len(g2.face_orbits[f]) == k), None)
        if f2 is None:
            raise FaceLengthMismatch(f"grid {i + 1} has no cyclic face of length {k}")
        used = {u for u, _, _ in face_corners(g2, f2)}
        gluings.append(Gluing(f1, f2, aligned_pi(g1, f1, g2, f2, shift)))
    return gluings


def find_compatible_gluing(g1, T1, g2, T2, avoid1=(), avoid2=(), want="A"):
    """First ``(f1, f2, pi)`` with compatible patterns of type ``want``.

    ``avoid1``/``avoid2`` are vertices the chosen faces must not touch.
    """
    for f1 in range(g1.num_faces):
        if not is_cyclic_face(g1, f1) or {w for w, _, _ in face_corners(g1, f1)} & set(avoid1):
            continue
        p1 = face_pattern(g1, T1, f1)
        if want and pattern_type(p1) != want:
            continue
        for f2 in range(g2.num_faces):
            if not is_cyclic_face(g2, f2) or len(g2.face_orbits[f2]) != len(p1):
                continue
            if {u for u, _, _ in face_corners(g2, f2)} & set(avoid2):
                continue
            p2 = face_pattern(g2, T2, f2)
            k = len(p1)
            for shift in range(k):
                if all(p1[t] != p2[(shift - t) % k] for t in range(k)):
                    return Gluing(f1, f2, aligned_pi(g1, f1, g2, f2, shift))
    return None


def chain_with_systems(grids, systems, want="A"):
    """Glue ``grids`` into a chain on faces where ``systems`` are compatible.

    Returns ``(composite, composite system)`` or ``None`` when some pair of
    neighbours has no compatible face pair of the wanted type.
    """
    gluings = []
    used = [set() for _ in grids]
    for i in range(len(grids) - 1):
        gl = find_compatible_gluing(grids[i], systems[i], grids[i + 1], systems[i + 1],
                                    used[i], used[i + 1], want)
        if gl is None:
            return None
        gluings.append(gl)
        used[i + 1] |= {u for u, _, _ in face_corners(grids[i + 1], gl.face2)}
    cg = glue(grids, gluings)
    return cg, connected_sum(cg, systems)
