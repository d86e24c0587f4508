"""Property suites behind ``atrails verify-theorems``.

Each suite returns a :class:`SuiteResult`; a failing suite names the first
invariant that broke.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from importlib import resources
from math import gcd

from .checkerboard import (NO_ATRAIL, NotColorable, checkerboard_color, corner_counts,
                           covering_tree_atrails, parity_precheck)
from .composite import (Gluing, aligned_pi, certify_unknot, chain_gluings, chain_with_systems, connected_sum,
                        decompose, face_corners, glue, glue_crossings, is_cyclic_face,
                        triangular_composite_dichotomy)
from .constructions import (diagonal_decomposition, find_one_vertex_decoration,
                            one_vertex_atrail_classes, rect_unknotted_atrail, shifted_decomposition,
                            triangular_atrail)
from .errors import BudgetExceeded, InvalidInput
from .grids import (AltshulerParams, OneVertexParams, RectParams, altshuler, non_sah_params,
                    one_vertex_grid, rect_grid)
from .io import Document, load, save
from .links import TorusKnot, Unknot, canonicalize, classify
from .surface import EmbeddedGraph, ribbon_boundary_components
from .transitions import (all_smooth_bits, enumerate_atrail_bits, find_atrail, is_atrail,
                          system_from_bits, trace)

MAX_V_LIMIT = 16
DEFAULT_SEED = 20240613
FAULTS = ("decoration",)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


class InvariantFailure(AssertionError):
    def __init__(self, invariant, detail=""):
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
        self.invariant = invariant


def _require(cond, invariant, detail=""):
    if not cond:
        raise InvariantFailure(invariant, detail)


# -- generated inputs --------------------------------------------------------


def triangular_params(max_v, v_min=1):
    """Every ``(v, r, m)`` with ``r | v`` and ``1 <= m <= v/r``."""
    out = []
    for v in range(v_min, max_v + 1):
        for r in range(1, v + 1):
            if v % r == 0:
                out.extend(AltshulerParams(v, r, m) for m in range(1, v // r + 1))
    return out


def colorable_grids(max_v):
    """Loop-free generated torus grids with at most ``max_v`` vertices that
    admit a checkerboard coloring."""
    out = []
    for p in triangular_params(max_v):
        g = altshuler(p)
        if not g.has_loops():
            out.append((f"T_{p.m}^{{{p.v},{p.r}}}", g))
    for i in range(2, max_v + 1, 2):
        for j in range(2, max_v // i + 1, 2):
            out.append((f"R_{{{i},{j}}}", rect_grid(RectParams(i, j))))
    result = []
    for name, g in out:
        c = checkerboard_color(g)
        if not isinstance(c, NotColorable):
            result.append((name, g, c))
    return result


def odd_incidences(g, coloring):
    """Every vertex meets an odd number of red and of blue corners."""
    return all(r % 2 and b % 2 for r, b in (corner_counts(g, coloring, v) for v in range(g.num_vertices)))


def _random_relabel(g: EmbeddedGraph, rng):
    perm = list(range(g.num_half_edges))
    rng.shuffle(perm)
    vorder = list(range(g.num_vertices))
    rng.shuffle(vorder)
    eorder = list(range(g.num_edges))
    rng.shuffle(eorder)
    rotation = []
    for v in vorder:
        rot = [perm[h] for h in g.rotation[v]]
        k = rng.randrange(len(rot))
        rotation.append(tuple(rot[k:] + rot[:k]))
    edges, decor = [], []
    for e in eorder:
        a, b = g.edges[e]
        d = g.decor[e]
        if rng.random() < 0.5:
            a, b, d = b, a, tuple(-x for x in d)
        edges.append((perm[a], perm[b]))
        decor.append(d)
    h = EmbeddedGraph(tuple(rotation), tuple(edges), tuple(decor), g.genus, check=False)
    # shift vertex potentials: classes of closed walks are unchanged
    phi = [tuple(rng.randint(-2, 2) for _ in range(2 * g.genus)) for _ in range(h.num_vertices)]
    decor = [tuple(x + phi[h.vertex_of[b]][k] - phi[h.vertex_of[a]][k] for k, x in enumerate(d))
             for (a, b), d in zip(h.edges, h.decor)]
    return EmbeddedGraph(h.rotation, h.edges, tuple(decor), h.genus)


def random_graph(rng) -> EmbeddedGraph:
    kind = rng.randrange(4)
    if kind == 0:
        v = rng.randint(3, 24)
        divs = [r for r in range(1, v + 1) if v % r == 0]
        r = rng.choice(divs)
        g = altshuler(AltshulerParams(v, r, rng.randint(1, v // r)))
    elif kind == 1:
        g = rect_grid(RectParams(rng.randint(2, 6), rng.randint(2, 6)))
    elif kind == 2:
        while True:
            a = (rng.randint(-4, 4), rng.randint(-4, 4))
            b = (rng.randint(-4, 4), rng.randint(-4, 4))
            if abs(a[0] * b[1] - a[1] * b[0]) == 1:
                break
        g = one_vertex_grid(OneVertexParams(a, b))
    else:
        grids = [rect_grid(RectParams(rng.randint(4, 5), rng.randint(3, 5)))
                 for _ in range(rng.randint(2, 3))]
        gluings = []
        used = set()
        for i in range(len(grids) - 1):
            g1, g2 = grids[i], grids[i + 1]
            f1 = next(f for f in range(g1.num_faces) if is_cyclic_face(g1, f)
                      and not {w for w, _, _ in face_corners(g1, f)} & used)
            f2 = rng.choice([f for f in range(g2.num_faces) if is_cyclic_face(g2, f)])
            used = {u for u, _, _ in face_corners(g2, f2)}
            gluings.append(Gluing(f1, f2, aligned_pi(g1, f1, g2, f2, rng.randrange(4))))
        g = glue(grids, gluings).graph
    return _random_relabel(g, rng)


def random_document(rng) -> Document:
    g = random_graph(rng)
    systems = {}
    if g.is_eulerian():
        bits = [rng.randrange(2 if len(r) > 2 else 1) for r in g.rotation]
        systems["random"] = system_from_bits(g, bits)
    return Document(g, systems=systems)


def check_structure(g: EmbeddedGraph):
    """Euler/genus, involution, face partition and ribbon-boundary invariants."""
    V, E, F = g.num_vertices, g.num_edges, g.num_faces
    _require(V - E + F == 2 - 2 * g.genus, "euler-genus", f"V-E+F={V - E + F}, genus {g.genus}")
    twin = g.twin
    _require(all(twin[twin[h]] == h and twin[h] != h for h in range(2 * E)), "edge-involution")
    seen = sorted(h for f in g.face_orbits for h in f)
    _require(seen == list(range(2 * E)), "face-partition")
    zero = (0,) * (2 * g.genus)
    _require(all(g.walk_class(f) == zero for f in g.face_orbits), "face-homology",
             "a face boundary has nonzero homology")
    _require(ribbon_boundary_components(g) == F, "ribbon-boundary")


def _check_document(doc: Document):
    g = doc.graph
    check_structure(g)
    text = save(doc)
    again = load(text)
    _require(save(again) == text and again.graph == g, "document-round-trip")
    for name, T in doc.systems.items():
        dec = trace(g, T)
        _require(dec.system(g) == T, "apply-round-trip", name)


# -- suites ------------------------------------------------------------------


def suite_structural(max_v, seed=DEFAULT_SEED, count=1000, fault=None):
    rng = random.Random(seed)
    for k in range(count):
        doc = random_document(rng)
        if fault == "decoration":
            g = doc.graph
            decor = list(g.decor)
            decor[0] = tuple(x + 1 for x in decor[0])
            bad = EmbeddedGraph(g.rotation, g.edges, tuple(decor), g.genus, check=False)
            check_structure(bad)
        _check_document(doc)
    return f"{count} random documents (seed {seed})"


def suite_triangular(max_v, workers=1):
    n = 0
    for p in non_sah_params(max_v):
        g = altshuler(p)
        found = find_atrail(g, mode="exhaustive", workers=workers) is not None
        _require(found == (p.v % 2 == 1), "odd-v-dichotomy", str(p))
        if p.v % 2:
            T = triangular_atrail(p)
            _require(is_atrail(g, T) and classify(g, T) == Unknot(), "row-pattern-unknot", str(p))
        n += 1
    return f"{n} non-SAH grids with v <= {max_v}"


def suite_sah(max_v):
    _require(find_atrail(altshuler(AltshulerParams(5, 1, 2))) is not None, "sah-T2-5-1")
    _require(find_atrail(altshuler(AltshulerParams(5, 1, 1))) is None, "sah-T1-5-1")
    return "T_2^{5,1} has an A-trail, T_1^{5,1} has none"


def suite_rect_unknot(max_v):
    for i in range(2, 9):
        for j in range(2, 9):
            g = rect_grid(RectParams(i, j))
            T = rect_unknotted_atrail(RectParams(i, j))
            _require(is_atrail(g, T), "rect-atrail", f"R_{i},{j}")
            c = g.walk_class(trace(g, T).circuits[0])
            _require(min(map(abs, c)) <= 1, "rect-unknot", f"R_{i},{j} class {c}")
            if i % 2 == 0 and j % 2 == 0:
                _require(c == (0, 0), "rect-even-null", f"R_{i},{j} class {c}")
    return "2 <= i, j <= 8"


def suite_torus_links(max_v):
    for p in range(2, 9):
        for q in range(2, 9):
            g, dec = diagonal_decomposition(p, q)
            _require(len(dec) == gcd(p, q), "diagonal-components", f"({p},{q})")
            total = tuple(map(sum, zip(*(g.walk_class(c) for c in dec.circuits))))
            _require(total == (p, q), "diagonal-class", f"({p},{q}) gave {total}")
            if gcd(p, q) == 1:
                _require(classify(g, dec) == TorusKnot(p, q), "diagonal-knot", f"({p},{q})")
    return "2 <= p, q <= 8"


def suite_shifted(max_v):
    g, dec = shifted_decomposition(9, 8, 5, 4)
    v = classify(g, dec)
    _require(v == TorusKnot(5, 4), "shifted-5-4", str(v))
    return str(v)


def suite_covering_trees(max_v):
    n = 0
    for name, g, c in colorable_grids(max_v):
        systems, trees = covering_tree_atrails(g, c)
        atrails = set(enumerate_atrail_bits(g, mode="exhaustive"))
        _require(systems == atrails, "covering-tree-bijection", name)
        if odd_incidences(g, c):
            _require(all(t.num_face_vertices % 2 == 1 for t in trees), "odd-face-vertices", name)
        n += 1
    return f"{n} colorable grids with v <= {max_v}"


def suite_checkerboard_unknot(max_v):
    n = 0
    for name, g, _ in colorable_grids(max_v):
        for bits in enumerate_atrail_bits(g):
            T = system_from_bits(g, bits)
            c = g.walk_class(trace(g, T).circuits[0])
            _require(c == (0, 0), "atrail-null-homologous", f"{name} class {c}")
            _require(classify(g, T) == Unknot(), "atrail-unknot", name)
            n += 1
    return f"{n} A-trails"


def suite_parity(max_v):
    for p in triangular_params(max_v, 3):
        g = altshuler(p)
        if g.has_loops():
            continue
        res = parity_precheck(g, checkerboard_color(g))
        _require((res == NO_ATRAIL) == (p.v % 2 == 0), "parity-precheck", str(p))
    return "NoATrail exactly on even v"


def suite_one_vertex(max_v):
    g = one_vertex_grid(OneVertexParams((1, 0), (0, 1)))
    ts = enumerate_atrail_bits(g)
    _require(len(ts) == 2, "one-vertex-count")
    _require(all(classify(g, system_from_bits(g, b)) == Unknot() for b in ts), "one-vertex-unknot")
    params = find_one_vertex_decoration([(4, 3), (6, 5)])
    _require(params is not None, "one-vertex-decoration-search")
    classes = sorted(canonicalize(c) for c in one_vertex_atrail_classes(params))
    _require(classes == [(4, 3), (6, 5)], "one-vertex-knots", str(classes))
    return f"twisted loops a={params.a}, b={params.b}"


def figure_eight_document() -> Document:
    text = resources.files("atrails").joinpath("data/fig8_composite.json").read_text(encoding="utf-8")
    return load(text)


def suite_composite(max_v):
    # round trip on every smooth system of a small genus-2 composite
    t = altshuler(AltshulerParams(9, 3, 1))
    cg = glue([t, t], [Gluing(0, 5, aligned_pi(t, 0, t, 5, 0))])
    for bits in all_smooth_bits(cg.graph):
        T = system_from_bits(cg.graph, bits)
        _require(connected_sum(cg, decompose(cg, T)) == T, "sum-decompose-round-trip")
    # dichotomy against complete search
    t8 = altshuler(AltshulerParams(8, 2, 1))
    for grids in ([t, t], [t, t8], [t, t, t]):
        c = glue(grids, chain_gluings(grids))
        verdict = triangular_composite_dichotomy(c)
        has = find_atrail(c.graph) is not None
        _require(has == hasattr(verdict, "witness"), "triangular-dichotomy", f"genus {len(grids)}")
        if has:
            _require(str(certify_unknot(c, verdict.witness)) == "CertifiedUnknot", "triangular-certified")
    # S_A chains
    ps = [RectParams(3, 5), RectParams(4, 4), RectParams(4, 6), RectParams(5, 4)]
    for n in range(2, 5):
        grids = [rect_grid(p) for p in ps[:n]]
        built = chain_with_systems(grids, [rect_unknotted_atrail(p) for p in ps[:n]], "A")
        _require(built is not None, "sa-chain", f"genus {n}")
        c, T = built
        _require(is_atrail(c.graph, T) and str(certify_unknot(c, T)) == "CertifiedUnknot",
                 "sa-chain-certified", f"genus {n}")
    doc = figure_eight_document()
    c, T = doc.composite, doc.systems["atrail"]
    comps = decompose(c, T)
    _require(is_atrail(c.graph, T), "fig8-atrail")
    _require([len(trace(g, S)) for g, S in zip(c.components, comps)] == [2, 2], "fig8-components")
    _require(glue_crossings(c, T, 0) > 2 and str(certify_unknot(c, T)).startswith("NotCertified"),
             "fig8-not-certified")
    return "round trip, dichotomy, S_A chains to genus 4, figure-8 composite"


SUITES = (
    ("structural", suite_structural),
    ("triangular-dichotomy", suite_triangular),
    ("sah-exception", suite_sah),
    ("rect-unknot", suite_rect_unknot),
    ("torus-links", suite_torus_links),
    ("shifted", suite_shifted),
    ("covering-trees", suite_covering_trees),
    ("checkerboard-unknot", suite_checkerboard_unknot),
    ("parity", suite_parity),
    ("one-vertex", suite_one_vertex),
    ("composite", suite_composite),
)


def run_suites(max_v=12, seed=DEFAULT_SEED, fault=None, only=None, workers=1):
    if max_v > MAX_V_LIMIT:
        raise BudgetExceeded(max_v, MAX_V_LIMIT, "as the largest vertex count")
    if fault is not None and fault not in FAULTS:
        raise InvalidInput(f"unknown fault {fault!r}; choose from {FAULTS}")
    results = []
    for name, fn in SUITES:
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        try:
            if name == "structural":
                detail = fn(max_v, seed=seed, fault=fault)
            elif name == "triangular-dichotomy":
                detail = fn(max_v, workers=workers)
            else:
                detail = fn(max_v)
            ok = True
        except InvariantFailure as exc:
            ok, detail = False, f"invariant {exc}"
        results.append(SuiteResult(name, ok, detail, time.perf_counter() - t0))
    return results
