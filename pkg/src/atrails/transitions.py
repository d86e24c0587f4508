"""Transition systems, circuit decompositions and A-trail search.

A :class:`TransitionSystem` stores a fixed-point-free involution ``partner``
on half-edges that only pairs half-edges at the same vertex.  A smooth
system pairs rotation-neighbours only, so at a vertex of degree ``2d >= 4``
it is one of two matchings of the rotation cycle:

* option 0 pairs ``(r[0], r[1]), (r[2], r[3]), ...``
* option 1 pairs ``(r[1], r[2]), ..., (r[2d-1], r[0])``

Search code works on these option bits; vertices of degree 2 only have
option 0.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import prod

from .errors import BudgetExceeded, InvalidInput, NonSmooth, NotEulerian, OddDegree
from .surface import EmbeddedGraph

DEFAULT_BUDGET = 1 << 22


@dataclass(frozen=True)
class Transition:
    vertex: int
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TransitionSystem:
    partner: tuple[int, ...]

    def pairs_at(self, g: EmbeddedGraph, v):
        out = []
        for h in g.rotation[v]:
            k = self.partner[h]
            if h < k:
                out.append((h, k))
        return tuple(out)

    def transition(self, g, v) -> Transition:
        return Transition(v, self.pairs_at(g, v))


@dataclass(frozen=True)
class CircuitDecomposition:
    """Closed circuits, each a tuple of darts traversed in order."""

    circuits: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.circuits)

    def system(self, g: EmbeddedGraph) -> TransitionSystem:
        partner = [-1] * g.num_half_edges
        for c in self.circuits:
            for a, b in zip(c, c[1:] + c[:1]):
                t = g.twin[a]
                partner[t] = b
                partner[b] = t
        if -1 in partner:
            raise InvalidInput("circuits do not cover every edge")
        return TransitionSystem(tuple(partner))

    def reoriented(self, g, forward_darts):
        """Reverse every circuit that traverses one of ``forward_darts`` backwards."""
        want = set(forward_darts)
        out = []
        for c in self.circuits:
            if any(g.twin[d] in want for d in c):
                c = tuple(g.twin[d] for d in reversed(c))
            out.append(c)
        return CircuitDecomposition(tuple(out))


def matching_options(g: EmbeddedGraph, v):
    rot = g.rotation[v]
    d = len(rot)
    if d % 2:
        raise OddDegree(f"vertex {v} has odd degree {d}")
    first = tuple((rot[i], rot[i + 1]) for i in range(0, d, 2))
    if d == 2:
        return [first]
    second = tuple((rot[i], rot[(i + 1) % d]) for i in range(1, d, 2))
    return [first, second]


def smooth_transitions_at(g: EmbeddedGraph, v) -> list[Transition]:
    return [Transition(v, m) for m in matching_options(g, v)]


def _check_eulerian(g):
    for v, rot in enumerate(g.rotation):
        if len(rot) % 2:
            raise NotEulerian(f"vertex {v} has odd degree {len(rot)}")


def system_from_bits(g: EmbeddedGraph, bits) -> TransitionSystem:
    bits = list(bits)
    if len(bits) != g.num_vertices:
        raise InvalidInput(f"need {g.num_vertices} option bits, got {len(bits)}")
    partner = [0] * g.num_half_edges
    for v, b in enumerate(bits):
        opts = matching_options(g, v)
        if not 0 <= b < len(opts):
            raise InvalidInput(f"vertex {v} has no smooth option {b}")
        for a, c in opts[b]:
            partner[a], partner[c] = c, a
    return TransitionSystem(tuple(partner))


def system_from_pairs(g: EmbeddedGraph, pairs) -> TransitionSystem:
    partner = [-1] * g.num_half_edges
    for a, b in pairs:
        if g.vertex_of[a] != g.vertex_of[b] or a == b:
            raise InvalidInput(f"half-edges {a} and {b} cannot be paired")
        if partner[a] != -1 or partner[b] != -1:
            raise InvalidInput(f"half-edge paired twice in ({a}, {b})")
        partner[a], partner[b] = b, a
    if -1 in partner:
        raise InvalidInput("transition system does not pair every half-edge")
    return TransitionSystem(tuple(partner))


def is_smooth(g: EmbeddedGraph, T: TransitionSystem) -> bool:
    return all(T.partner[h] in (g.succ[h], g.pred[h]) for h in range(g.num_half_edges))


def bits_of(g: EmbeddedGraph, T: TransitionSystem) -> tuple[int, ...]:
    out = []
    for v, rot in enumerate(g.rotation):
        for b, m in enumerate(matching_options(g, v)):
            if all(T.partner[a] == c for a, c in m):
                out.append(b)
                break
        else:
            raise NonSmooth(f"transition at vertex {v} is not smooth")
    return tuple(out)


def trace(g: EmbeddedGraph, T: TransitionSystem) -> CircuitDecomposition:
    """Circuits of any (not necessarily smooth) transition system.

    Each circuit starts at the lowest dart whose edge it contains and leaves
    along that dart.
    """
    twin, partner = g.twin, T.partner
    used = [False] * g.num_edges
    edge_of = g.edge_of
    circuits = []
    for start in range(g.num_half_edges):
        if used[edge_of[start]]:
            continue
        c = []
        d = start
        while True:
            used[edge_of[d]] = True
            c.append(d)
            d = partner[twin[d]]
            if d == start:
                break
        circuits.append(tuple(c))
    return CircuitDecomposition(tuple(circuits))


def apply(g: EmbeddedGraph, T: TransitionSystem) -> CircuitDecomposition:
    if not is_smooth(g, T):
        raise NonSmooth("transition system is not smooth")
    return trace(g, T)


def is_atrail(g: EmbeddedGraph, T: TransitionSystem) -> bool:
    if not is_smooth(g, T):
        raise NonSmooth("transition system is not smooth")
    if g.num_edges == 0:
        raise InvalidInput("graph has no edges")
    return _first_circuit_length(g.twin, T.partner) == g.num_edges


def _first_circuit_length(twin, partner):
    n = 1
    d = partner[twin[0]]
    while d != 0:
        d = partner[twin[d]]
        n += 1
    return n


# -- search ---------------------------------------------------------------


class _Space:
    """Precomputed smooth options of a graph, shared by the search modes."""

    def __init__(self, g: EmbeddedGraph):
        _check_eulerian(g)
        self.g = g
        self.options = [matching_options(g, v) for v in range(g.num_vertices)]
        self.size = prod(len(o) for o in self.options)

    def partner(self, bits):
        p = [0] * self.g.num_half_edges
        for v, b in enumerate(bits):
            for a, c in self.options[v][b]:
                p[a], p[c] = c, a
        return p


def _exhaustive_chunk(g, prefix, want_all):
    space = _Space(g)
    twin, E = g.twin, g.num_edges
    ranges = [range(len(o)) for o in space.options[len(prefix):]]
    found = []
    for rest in itertools.product(*ranges):
        bits = prefix + rest
        if _first_circuit_length(twin, space.partner(bits)) == E:
            found.append(bits)
            if not want_all:
                break
    return found


def _exhaustive(space, want_all, workers=1):
    g = space.g
    if workers <= 1 or g.num_vertices < 2:
        return _exhaustive_chunk(g, (), want_all)
    depth = 0
    n = 1
    while n < 4 * workers and depth < g.num_vertices:
        n *= len(space.options[depth])
        depth += 1
    prefixes = list(itertools.product(*[range(len(o)) for o in space.options[:depth]]))
    found = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_exhaustive_chunk, [g] * len(prefixes), prefixes,
                             [want_all] * len(prefixes)):
            found.extend(part)
            if found and not want_all:
                break
    return found if want_all else found[:1]


def iter_atrail_bits(g: EmbeddedGraph, forced=None, order=None, budget=None):
    """Yield option bits of every A-trail, depth-first, lazily.

    ``budget`` caps the number of search-tree nodes (BudgetExceeded past it).

    ``forced`` maps vertices to a fixed option.  Every edge starts as a path
    whose two ends are its half-edges.  Pairing two ends at a vertex either
    joins two paths or closes a circuit; a circuit closing before it
    contains all ``E`` edges rules out an A-trail, so that branch is cut.
    """
    space = _Space(g)
    forced = dict(forced or {})
    E = g.num_edges
    nv = g.num_vertices
    order = list(range(nv)) if order is None else list(order)
    other = list(g.twin)
    length = [1] * g.num_half_edges
    bits = [0] * nv
    options = space.options
    choices = [[forced[v]] if v in forced else range(len(options[v])) for v in range(nv)]
    visited = [0]

    def join(a, b, undo):
        if other[a] == b:
            return length[a]
        x, y = other[a], other[b]
        undo.append((x, other[x], length[x]))
        undo.append((y, other[y], length[y]))
        n = length[a] + length[b]
        other[x], other[y] = y, x
        length[x] = length[y] = n
        return 0

    def rec(k):
        visited[0] += 1
        if budget is not None and visited[0] > budget:
            raise BudgetExceeded(visited[0], budget, "search nodes")
        if k == nv:
            yield tuple(bits)
            return
        v = order[k]
        for b in choices[v]:
            undo = []
            ok = True
            for a, c in options[v][b]:
                closed = join(a, c, undo)
                if closed and not (closed == E and k == nv - 1):
                    ok = False
                    break
            if ok:
                bits[v] = b
                yield from rec(k + 1)
            for h, o, n in reversed(undo):
                other[h] = o
                length[h] = n
        bits[v] = 0

    yield from rec(0)


def _backtrack(space, want_all, order=None, budget=None):
    found = []
    for bits in iter_atrail_bits(space.g, order=order, budget=budget):
        found.append(bits)
        if not want_all:
            break
    return found


def find_atrail(g: EmbeddedGraph, mode="backtracking", workers=1, budget=None) -> TransitionSystem | None:
    """Return an A-trail or ``None`` when the (complete) search proves there is none.

    ``budget`` bounds the systems tried (exhaustive) or tree nodes visited (backtracking).
    """
    space = _Space(g)
    if mode == "exhaustive":
        if budget is not None and space.size > budget:
            raise BudgetExceeded(space.size, budget)
        hits = _exhaustive(space, False, workers)
    elif mode == "backtracking":
        hits = _backtrack(space, False, budget=budget)
    else:
        raise InvalidInput(f"unknown search mode {mode!r}")
    return system_from_bits(g, hits[0]) if hits else None


def search_space_size(g: EmbeddedGraph) -> int:
    """Number of smooth transition systems of ``g``."""
    return _Space(g).size


def enumerate_atrail_bits(g: EmbeddedGraph, budget=DEFAULT_BUDGET, mode="backtracking",
                          workers=1) -> list[tuple[int, ...]]:
    space = _Space(g)
    if space.size > budget:
        raise BudgetExceeded(space.size, budget)
    if mode == "exhaustive":
        return sorted(_exhaustive(space, True, workers))
    return _backtrack(space, True)


def enumerate_atrails(g: EmbeddedGraph, budget=DEFAULT_BUDGET, mode="backtracking",
                      workers=1) -> list[TransitionSystem]:
    return [system_from_bits(g, b) for b in enumerate_atrail_bits(g, budget, mode, workers)]


def all_smooth_bits(g: EmbeddedGraph, budget=DEFAULT_BUDGET):
    space = _Space(g)
    if space.size > budget:
        raise BudgetExceeded(space.size, budget)
    return itertools.product(*[range(len(o)) for o in space.options])
