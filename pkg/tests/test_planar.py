"""Planar exact solver: reduction, embedding, triangulation, disjoint paths,
curve regions, the stretch-1 decision, the optimizer, and cycle scores."""

import pytest

from retract import planar
from retract.core import (Instance, Retraction, ValidationError, cycle_dist,
                          gen_column_deleted_grid, gen_grid, stretch,
                          subdivide)
from retract.oracle import brute_force_optimal, enumerate_min_surrounding_cycle
from retract.planar import (NotPlanarError, PlaneEmbedding, cycle_score,
                            enclosed_faces, max_disjoint_paths,
                            optimal_retract_planar, plane_embed,
                            reduce_two_connected, retraction_from_curves,
                            stretch1_retract, triangulate_for_face)

from conftest import make_ck, make_w4
from frozen import (COLGRID_OPTIMAL, GRID3_OPTIMAL, GRID4_OPTIMAL,
                    GRID4_CENTER_FACE_MIN_CYCLE, W4_OPTIMAL)


def cycle_with_pendant():
    # C6 plus a 2-vertex path hanging off anchor 0
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (6, 7)]
    return Instance(8, edges, tuple(range(6)))


def test_reduce_collapses_pendant():
    inst = cycle_with_pendant()
    red, rmap = reduce_two_connected(inst)
    assert red.n == 6 and len(red.edges) == 6
    lifted = rmap.lift(Retraction(tuple(range(6))))
    assert lifted.assignment[6] == 0 and lifted.assignment[7] == 0
    assert stretch(inst, lifted).max_stretch == 1


def test_reduce_identity_on_grid():
    inst = gen_grid(3)
    red, rmap = reduce_two_connected(inst)
    assert red.n == inst.n and red.edges == inst.edges
    ret, rep = brute_force_optimal(red)
    assert stretch(inst, rmap.lift(ret)).max_stretch == rep.max_stretch


def test_reduce_two_grids_sharing_cut_vertex():
    # gen_grid(3) with a second 2x2 grid glued at vertex 8 (a corner anchor)
    base = gen_grid(3)
    edges = list(base.edges) + [(8, 9), (8, 10), (9, 11), (10, 11)]
    inst = Instance(12, edges, base.anchors)
    red, rmap = reduce_two_connected(inst)
    assert red.n == 9
    ret, rep = brute_force_optimal(red)
    lifted = rmap.lift(ret)
    assert stretch(inst, lifted).max_stretch == rep.max_stretch
    assert lifted.assignment[9] == lifted.assignment[8]


def test_plane_embed_counts():
    emb = plane_embed(gen_grid(3))
    assert isinstance(emb, PlaneEmbedding)
    assert len(emb.faces) == 5            # 9 - 12 + F = 2
    assert emb.face_edge_sets[emb.outer_face] == gen_grid(3).host_edges()
    emb = plane_embed(make_ck(8))
    assert len(emb.faces) == 2


def test_plane_embed_rejects_nonplanar():
    # K5 with a hamiltonian anchor triangle is nonplanar
    edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    inst = Instance(5, edges, (0, 1, 2))
    red, _ = reduce_two_connected(inst)
    with pytest.raises(NotPlanarError):
        plane_embed(red)


def test_plane_embed_decomposes():
    # C8 plus an inner hub on anchors 0,4 and a second hub on anchors 2,6:
    # they cannot sit on the same side, so H bounds no face
    edges = [(i, (i + 1) % 8) for i in range(8)]
    edges += [(0, 8), (4, 8), (2, 9), (6, 9)]
    inst = Instance(10, edges, tuple(range(8)))
    parts = plane_embed(inst)
    assert isinstance(parts, list) and len(parts) == 2
    for sub, old_of_new in parts:
        assert sub.k == 8 and sub.n == 9
    # no stretch-1 map exists (a hub sees anchors 4 apart); the optimizer
    # still solves the decomposed instance and matches the oracle
    assert stretch1_retract(inst) is None
    _, rep = optimal_retract_planar(inst)
    _, want = brute_force_optimal(inst)
    assert rep.max_stretch == want.max_stretch == 2


def test_triangulate_preserves_distances():
    inst = gen_grid(3)
    emb = plane_embed(inst)
    face = next(f for f in range(5) if f != emb.outer_face)
    sg = triangulate_for_face(emb, face)
    assert sg.n_original == 9
    before = {v: inst.distances_from(v) for v in range(9)}
    tri = Instance(sg.embedding.n, sg.embedding.graph_edges,
                   inst.anchors)
    for u in range(9):
        after = tri.distances_from(u)
        for v in range(9):
            assert after[v] == before[u][v]
    # all faces but F and outer are triangles
    for fid, walk in enumerate(sg.embedding.faces):
        if fid not in (sg.face, sg.embedding.outer_face):
            assert len(walk) == 3


def test_triangulate_hexagon_recursion():
    inst = make_ck(6)
    emb = plane_embed(inst)
    # triangulating with F = the bounded face leaves nothing to do (only two
    # faces exist), so use a hexagon hanging inside a larger cycle instead:
    # C6 outer anchors + inner hexagon joined by a matching (a prism)
    edges = [(i, (i + 1) % 6) for i in range(6)]
    edges += [(6 + i, 6 + (i + 1) % 6) for i in range(6)]
    edges += [(i, 6 + i) for i in range(6)]
    prism = Instance(12, edges, tuple(range(6)))
    emb = plane_embed(prism)
    face = next(f for f in range(len(emb.faces))
                if f != emb.outer_face and len(emb.faces[f]) == 6)
    sg = triangulate_for_face(emb, face)
    before = {v: prism.distances_from(v) for v in range(12)}
    tri = Instance(sg.embedding.n, sg.embedding.graph_edges, prism.anchors)
    for u in range(12):
        after = tri.distances_from(u)
        for v in range(12):
            assert after[v] == before[u][v]


def test_max_disjoint_paths_degenerate_cycle():
    inst = make_ck(6)
    emb = plane_embed(inst)
    face = 1 - emb.outer_face
    sg = triangulate_for_face(emb, face)
    curves = max_disjoint_paths(sg, sg.s, sg.t)
    assert len(curves.paths) == 6
    assert all(len(p) == 1 for p in curves.paths)


def test_max_disjoint_paths_grid4_center():
    inst = gen_grid(4)
    emb = plane_embed(inst)
    # the center unit face is the one avoiding all anchors
    aset = set(inst.anchors)
    face = next(f for f in range(len(emb.faces))
                if f != emb.outer_face and not (set(emb.faces[f]) & aset))
    sg = triangulate_for_face(emb, face)
    curves = max_disjoint_paths(sg, sg.s, sg.t)
    assert len(curves.paths) == GRID4_CENTER_FACE_MIN_CYCLE == 4
    assert enumerate_min_surrounding_cycle(emb, face) == 4


def test_disjoint_paths_match_min_surrounding_cycle():
    # Menger cross-check on each bounded face of small instances
    for inst in (gen_grid(3), make_w4(), subdivide(make_ck(4), 2)[0]):
        emb = plane_embed(inst)
        for f in range(len(emb.faces)):
            if f == emb.outer_face:
                continue
            sg = triangulate_for_face(emb, f)
            got = len(max_disjoint_paths(sg, sg.s, sg.t).paths)
            assert got == enumerate_min_surrounding_cycle(emb, f)


def test_retraction_from_curves_interior_path():
    # C8 plus a chord-free interior path between anchors 0 and 1
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(0, 8), (8, 9), (9, 1)]
    inst = Instance(10, edges, tuple(range(8)))
    ret = stretch1_retract(inst)
    assert ret is not None
    assert stretch(inst, ret).max_stretch <= 1
    assert ret.assignment[8] in (0, 1) and ret.assignment[9] in (0, 1)


def test_stretch1_identity_on_cycle():
    inst = make_ck(5)
    ret = stretch1_retract(inst)
    assert ret.assignment == tuple(range(5))


@pytest.mark.parametrize("inst", [make_w4(), gen_grid(3)])
def test_stretch1_none_and_short_surrounding_cycles(inst):
    assert stretch1_retract(inst) is None
    # contrapositive of the score bound: every bounded face is surrounded by
    # a cycle shorter than k
    red, _ = reduce_two_connected(inst)
    emb = plane_embed(red)
    for f in range(len(emb.faces)):
        if f != emb.outer_face:
            assert enumerate_min_surrounding_cycle(emb, f) < inst.k


def test_stretch1_monotone_in_subdivision():
    inst = gen_grid(3)
    results = {}
    for l in (2, 3, 4):
        sub, _ = subdivide(inst, l)
        results[l] = stretch1_retract(sub)
    assert results[2] is None          # optimum is 3
    assert results[3] is not None
    assert results[4] is not None


def test_optimal_chord():
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(0, 4)]
    inst = Instance(8, edges, tuple(range(8)))
    _, rep = optimal_retract_planar(inst)
    assert rep.max_stretch == 4


@pytest.mark.parametrize("inst,want", [
    (gen_grid(3), GRID3_OPTIMAL),
    (gen_grid(4), GRID4_OPTIMAL),
    (make_w4(), W4_OPTIMAL),
    (gen_column_deleted_grid(5), COLGRID_OPTIMAL),
])
def test_optimal_known_values(inst, want):
    ret, rep = optimal_retract_planar(inst)
    assert rep.max_stretch == want
    assert stretch(inst, ret).max_stretch == want


def test_optimal_agrees_with_oracle_on_pendant_graph():
    inst = cycle_with_pendant()
    _, rep = optimal_retract_planar(inst)
    _, want = brute_force_optimal(inst)
    assert rep.max_stretch == want.max_stretch


def test_fast_route_agrees(monkeypatch):
    monkeypatch.setattr(planar, "_CURVE_LIMIT", 0)
    for inst, want in ((gen_grid(3), GRID3_OPTIMAL), (make_w4(), W4_OPTIMAL),
                       (gen_column_deleted_grid(5), COLGRID_OPTIMAL)):
        ret, rep = optimal_retract_planar(inst)
        assert rep.max_stretch == want
        assert stretch(inst, ret).max_stretch == want


def test_cycle_score_host_is_k():
    inst, _ = subdivide(gen_grid(3), GRID3_OPTIMAL)
    ret = stretch1_retract(inst)
    red, _ = reduce_two_connected(inst)
    emb = plane_embed(red)
    assert cycle_score(emb, inst.anchors, ret) == inst.k


def test_cycle_score_requires_stretch_one():
    inst = make_ck(6)
    emb = plane_embed(inst)
    bad = Retraction((0, 1, 2, 3, 4, 5))
    jump = Retraction((0, 2, 2, 3, 4, 5))
    assert cycle_score(emb, inst.anchors, bad) == 6
    with pytest.raises(ValidationError):
        cycle_score(emb, (0, 1), jump)


def test_face_sum_identity():
    inst, _ = subdivide(gen_grid(3), GRID3_OPTIMAL)
    ret = stretch1_retract(inst)
    emb = plane_embed(inst)
    scores = [cycle_score(emb, emb.faces[f], ret)
              for f in range(len(emb.faces))]
    # consistently oriented faces: everything cancels over the sphere
    assert sum(scores) == 0
    assert abs(scores[emb.outer_face]) == inst.k
    # every face's own region is just itself
    for f in range(len(emb.faces)):
        if f == emb.outer_face:
            continue
        walk = emb.faces[f]
        es = [(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))]
        inside = enclosed_faces(emb, es)
        assert f in inside
        got = sum(cycle_score(emb, emb.faces[g], ret) for g in inside)
        assert abs(got) == abs(cycle_score(emb, walk, ret))
