import pytest
from hypothesis import given
from hypothesis import strategies as st

from atrails.composite import (CertifiedUnknot, Gluing, HasATrail, NoATrail, NotCertified, aligned_pi,
                               certify_unknot, chain_atrails, chain_gluings, chain_with_systems,
                               compatibility, connected_sum, decompose, face_corners, face_pattern, glue,
                               glue_crossings, is_cyclic_face, is_f_transition, pattern_type,
                               triangular_composite_dichotomy)
from atrails.constructions import rect_unknotted_atrail, triangular_atrail
from atrails.errors import (FaceLengthMismatch, Incompatible, NonCyclicFace, NonSmooth, NotAnATrail,
                            NotTriangular, OverlapViolation, StructureError, VertexNotOnFace)
from atrails.grids import AltshulerParams, OneVertexParams, RectParams, altshuler, one_vertex_grid, rect_grid
from atrails.harness import figure_eight_document
from atrails.transitions import find_atrail, is_atrail, system_from_bits, system_from_pairs, trace
from oracles import brute_atrails, euler_genus

T9 = altshuler(AltshulerParams(9, 3, 1))
T8 = altshuler(AltshulerParams(8, 2, 1))
R44 = rect_grid(RectParams(4, 4))


def pair(g1=T9, g2=T9, f1=0, f2=5, shift=0):
    return glue([g1, g2], [Gluing(f1, f2, aligned_pi(g1, f1, g2, f2, shift))])


def test_counts_and_genus():
    cg = pair()
    g = cg.graph
    assert (g.num_vertices, g.num_edges, g.num_faces) == (15, 51, 34)
    assert g.genus == euler_genus(g) == 2
    assert all(len(d) == 4 for d in g.decor)


def test_genus_grows_along_chain():
    for n in (2, 3, 4):
        grids = [R44] * n
        cg = glue(grids, chain_gluings(grids))
        assert cg.genus == euler_genus(cg.graph) == n


def test_component_homology_lands_in_its_own_slot():
    cg = pair()
    for j, g in enumerate(cg.components):
        # a straight row of the component, pushed into the composite
        T = triangular_atrail(AltshulerParams(9, 3, 1))
        circuit = trace(g, T).circuits[0]
        assert g.walk_class(circuit) == (0, 0)
        for h in range(g.num_half_edges):
            mapped = cg.half_map[j][h]
            if mapped >= 0:
                d = cg.graph.dart_decor(mapped)
                other = d[2:] if j == 0 else d[:2]
                assert other == (0, 0)


def test_gluing_errors():
    ov = one_vertex_grid(OneVertexParams((1, 0), (0, 1)))
    with pytest.raises(NonCyclicFace):
        glue([ov, T9], [Gluing(0, 0, ())])
    sq = next(f for f in range(R44.num_faces) if is_cyclic_face(R44, f))
    with pytest.raises(FaceLengthMismatch):
        glue([T9, R44], [Gluing(0, sq, ())])
    pi = aligned_pi(T9, 0, T9, 5, 0)
    with pytest.raises(VertexNotOnFace):
        glue([T9, T9], [Gluing(0, 5, ((99, pi[0][1]),) + pi[1:])])
    # direction-preserving identification would give a non-orientable surface
    same = tuple(zip([w for w, _, _ in face_corners(T9, 0)], [u for u, _, _ in face_corners(T9, 5)]))
    with pytest.raises(StructureError):
        glue([T9, T9], [Gluing(0, 5, same)])
    with pytest.raises(StructureError):
        glue([T9, T9], [])
    gl = Gluing(0, 0, aligned_pi(T9, 0, T9, 0, 0))
    with pytest.raises(OverlapViolation):
        glue([T9, T9, T9], [gl, gl])


def test_incompatible_sum():
    cg = pair()
    T = triangular_atrail(AltshulerParams(9, 3, 1))
    w = compatibility(cg, [T, T])[0]
    assert not w.ok
    with pytest.raises(Incompatible) as exc:
        connected_sum(cg, [T, T])
    assert set(exc.value.vertices) == set(w.violations)


def test_every_system_round_trips():
    cg = pair()
    for bits in [(0,) * 15, (1,) * 15, (0, 1) * 7 + (0,)]:
        T = system_from_bits(cg.graph, bits)
        parts = decompose(cg, T)
        assert all(w.ok for w in compatibility(cg, parts))
        assert connected_sum(cg, parts) == T


@given(st.lists(st.integers(0, 1), min_size=15, max_size=15), st.integers(0, 2))
def test_round_trip_and_component_count(bits, shift):
    cg = pair(shift=shift)
    T = system_from_bits(cg.graph, bits)
    a, b = decompose(cg, T)
    assert connected_sum(cg, [a, b]) == T
    # summing along a triangle merges exactly one circuit of each side
    assert glue_crossings(cg, T, 0) in (0, 2)
    assert len(trace(cg.graph, T)) == len(trace(T9, a)) + len(trace(T9, b)) - 1


def test_decompose_needs_smooth():
    cg = pair()
    g = cg.graph
    rot = g.rotation
    r0 = rot[0]
    pairs = [(r0[0], r0[2]), (r0[1], r0[3])] + [(r0[k], r0[k + 1]) for k in range(4, len(r0), 2)]
    for r in rot[1:]:
        pairs += [(r[k], r[k + 1]) for k in range(0, len(r), 2)]
    with pytest.raises(NonSmooth):
        decompose(cg, system_from_pairs(g, pairs))


def test_f_transitions_and_patterns():
    T = rect_unknotted_atrail(RectParams(4, 4))
    f = next(f for f in range(R44.num_faces) if is_cyclic_face(R44, f))
    flags = face_pattern(R44, T, f)
    for (v, _, _), flag in zip(face_corners(R44, f), flags):
        assert is_f_transition(R44, T, v, f) == flag
    with pytest.raises(VertexNotOnFace):
        is_f_transition(R44, T, next(v for v in range(16) if v not in [w for w, _, _ in face_corners(R44, f)]),
                        f)
    assert [pattern_type(p) for p in [(1, 0, 0, 0), (1, 1, 1, 0), (1, 1, 0, 0), (0, 1, 1, 0),
                                      (1, 0, 1, 0), (0, 0, 0, 0), (1, 1, 1, 1)]] == [
        "A", "A", "B", "B", "C", "constant", "constant"]


def test_triangular_dichotomy_matches_search():
    for grids, has in (([T9, T9], True), ([T9, T8], False), ([T9, T9, T9], True)):
        cg = glue(grids, chain_gluings(grids))
        verdict = triangular_composite_dichotomy(cg)
        assert isinstance(verdict, HasATrail) == has == (find_atrail(cg.graph) is not None)
        if has:
            assert is_atrail(cg.graph, verdict.witness)
            assert isinstance(certify_unknot(cg, verdict.witness), CertifiedUnknot)
        else:
            assert isinstance(verdict, NoATrail) and verdict.component == 1


def test_dichotomy_against_brute_force():
    # genus 2 from two 5-vertex grids: small enough for the brute-force oracle
    t = altshuler(AltshulerParams(5, 1, 2))
    f2 = next(f for f in range(t.num_faces) if is_cyclic_face(t, f) and f != 0)
    cg = glue([t, t], [Gluing(0, f2, aligned_pi(t, 0, t, f2, 0))])
    atrails = brute_atrails(cg.graph)
    assert bool(atrails) == isinstance(triangular_composite_dichotomy(cg), HasATrail)
    # every composite A-trail splits into component A-trails and back
    found = {tuple(map(tuple, (s.partner for s in parts))) for parts in chain_atrails(cg)}
    assert len(found) == len(atrails)


def test_dichotomy_needs_triangles():
    with pytest.raises(NotTriangular):
        triangular_composite_dichotomy(glue([R44, R44], chain_gluings([R44, R44])))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sa_chain_certified(n):
    ps = [RectParams(3, 5), RectParams(4, 4), RectParams(4, 6), RectParams(5, 4)][:n]
    built = chain_with_systems([rect_grid(p) for p in ps], [rect_unknotted_atrail(p) for p in ps], "A")
    cg, T = built
    assert cg.genus == n
    assert is_atrail(cg.graph, T)
    assert all(glue_crossings(cg, T, i) == 2 for i in range(n - 1))
    assert isinstance(certify_unknot(cg, T), CertifiedUnknot)


def test_figure_eight_composite():
    doc = figure_eight_document()
    cg, T = doc.composite, doc.systems["atrail"]
    assert cg.genus == 2 and is_atrail(cg.graph, T)
    parts = decompose(cg, T)
    assert [len(trace(g, S)) for g, S in zip(cg.components, parts)] == [2, 2]
    assert glue_crossings(cg, T, 0) == 4
    cert = certify_unknot(cg, T)
    assert isinstance(cert, NotCertified) and "crossed 4 times" in cert.reason


def test_certify_needs_atrail():
    cg = pair()
    with pytest.raises(NotAnATrail):
        certify_unknot(cg, system_from_bits(cg.graph, [0] * 15))


def test_crossings_by_pattern_type():
    from collections import Counter

    from atrails.composite import find_compatible_gluing, pattern_type
    from atrails.transitions import enumerate_atrail_bits

    g = R44
    systems = [system_from_bits(g, b) for b in enumerate_atrail_bits(g)[:25]]
    seen = Counter()
    for T1 in systems:
        for T2 in systems:
            gl = find_compatible_gluing(g, T1, g, T2, want=None)
            if gl is None:
                continue
            cg = glue([g, g], [gl])
            T = connected_sum(cg, [T1, T2])
            seen[pattern_type(face_pattern(g, T1, gl.face1)), glue_crossings(cg, T, 0)] += 1
    assert {k for k, _ in seen} == {"A", "B", "C"}
    assert all(n == (4 if k == "C" else 2) for k, n in seen)
