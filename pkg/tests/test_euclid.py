import math
from fractions import Fraction

import networkx as nx
import pytest

from retract import euclid
from retract.core import ValidationError, gen_random_planar
from retract.euclid import (PointSet, WeightedPlanarGraph, anchors_on_circle,
                            build_host_cycle, contract_small_edges,
                            delaunay_spanner, euclid_retract,
                            gen_random_points, to_unweighted)
from retract.oracle import brute_force_min_ratio

F = Fraction


def test_anchor_circle_spacing():
    for k in (10, 11, 12, 13, 14, 20):
        pts = anchors_on_circle(k)
        ps = PointSet(pts, tuple(range(k)))  # constructor validates spacing
        assert ps.k == k


def test_pointset_rejects_bad_spacing():
    with pytest.raises(ValidationError):
        PointSet(((F(0), F(0)), (F(3), F(0)), (F(0), F(3))), (0, 1, 2))


def test_delaunay_triangle():
    g = delaunay_spanner([(F(0), F(0)), (F(2), F(0)), (F(1), F(2))])
    assert g.edges == [(0, 1), (0, 2), (1, 2)]


def test_delaunay_unit_square():
    g = delaunay_spanner([(F(0), F(0)), (F(1), F(0)),
                          (F(1), F(1)), (F(0), F(1))])
    assert len(g.sq_weights) == 5  # 4 sides + one diagonal (tie perturbed)
    sides = [e for e, w in g.sq_weights.items() if w == 1]
    diags = [e for e, w in g.sq_weights.items() if w == 2]
    assert len(sides) == 4 and len(diags) == 1
    gx = nx.Graph(g.edges)
    assert nx.check_planarity(gx)[0]


def test_delaunay_collinear_rejected():
    with pytest.raises(ValidationError):
        delaunay_spanner([(F(0), F(0)), (F(1), F(0)), (F(2), F(0))])


def _spanner_ratio(g):
    gx = nx.Graph()
    for (u, v), sq in g.sq_weights.items():
        gx.add_edge(u, v, w=math.sqrt(sq))
    dist = dict(nx.all_pairs_dijkstra_path_length(gx, weight="w"))
    worst = 0.0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            d = math.sqrt(euclid._sqdist(g.points[u], g.points[v]))
            worst = max(worst, dist[u][v] / d)
    return worst


def test_spanner_ratio_circle():
    g = delaunay_spanner(anchors_on_circle(8))
    assert _spanner_ratio(g) <= 2.5 + 1e-9


def test_spanner_ratio_random():
    for seed in (1, 2, 3):
        ps = gen_random_points(6, 12, seed)
        g = delaunay_spanner(ps)
        assert _spanner_ratio(g) <= 2.5 + 1e-9


def test_contract_identity_when_no_small_edges():
    ps = gen_random_points(0, 12, 0)
    g = delaunay_spanner(ps)
    g2, group = contract_small_edges(g, 12, 12)
    assert g2.n == g.n
    assert group == tuple(range(g.n))
    assert g2.sq_weights == g.sq_weights


def test_contract_merges_tight_pair():
    k, n = 10, 12
    pts = list(anchors_on_circle(k))
    pts.append((F(1, 100), F(1, 100)))
    pts.append((F(1, 100) + F(1, k * n + 1), F(1, 100)))  # below 2/(kn)
    g = delaunay_spanner(pts)
    g2, group = contract_small_edges(g, k, n)
    assert group[k] == group[k + 1]
    assert g2.n == n - 1
    anchor_groups = [group[i] for i in range(k)]
    assert len(set(anchor_groups)) == k


def test_to_unweighted_counts():
    pts = ((F(0), F(0)), (F(1), F(0)), (F(4), F(0)))
    k, n = 4, 8
    g = WeightedPlanarGraph(3, {(0, 1): F(1),      # w=1 -> kn*w/2 = 16
                                (1, 2): F(9),      # w=3 < k? 3<4: floor 48
                                (0, 2): F(16)},    # w=4 >= k: ceil(k^2 n/2)
                           pts)
    total, edges, pos = to_unweighted(g, k, n)
    counts = {}
    # recover path lengths from the chain structure
    assert len(edges) == 16 + 48 + (k * k * n + 1) // 2
    assert total == 3 + 15 + 47 + (k * k * n + 1) // 2 - 1
    # threshold weight subdivides to exactly one edge
    gt = WeightedPlanarGraph(3, {(0, 1): F(4, (k * n) ** 2),
                                 (1, 2): F(9), (0, 2): F(16)}, pts)
    _, e2, _ = to_unweighted(gt, k, n)
    assert len(e2) == 1 + 48 + (k * k * n + 1) // 2


def test_to_unweighted_rejects_small():
    pts = ((F(0), F(0)), (F(1), F(0)), (F(0), F(1)))
    g = WeightedPlanarGraph(3, {(0, 1): F(1, 10 ** 9), (1, 2): F(1),
                                (0, 2): F(1)}, pts)
    with pytest.raises(ValidationError):
        to_unweighted(g, 4, 8)


def _pipeline_graph(ps):
    g = delaunay_spanner(ps)
    g2, group = contract_small_edges(g, ps.k, ps.n)
    total, edges, pos = to_unweighted(g2, ps.k, ps.n)
    aidx = [group[i] for i in ps.anchor_indices]
    return total, edges, pos, aidx


def test_host_cycle_anchors_only():
    ps = gen_random_points(0, 12, 0)
    total, edges, pos, aidx = _pipeline_graph(ps)
    cyc = build_host_cycle(total, edges, aidx)
    assert len(set(cyc)) == len(cyc) >= 3
    scale = ps.k * ps.n // 2
    _check_proximity(total, edges, cyc, aidx, scale)


def test_host_cycle_with_interior():
    for n_int, k, seed in ((1, 12, 5), (3, 10, 9)):
        ps = gen_random_points(n_int, k, seed)
        total, edges, pos, aidx = _pipeline_graph(ps)
        cyc = build_host_cycle(total, edges, aidx)
        assert len(set(cyc)) == len(cyc)
        _check_proximity(total, edges, cyc, aidx, ps.k * ps.n // 2 + 1)


def _check_proximity(n, edges, cycle, anchors, scale):
    from collections import deque
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    onh = set(cycle)
    dist = {v: 0 for v in onh}
    q = deque(onh)
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    # every anchor close to H; every H vertex close to an anchor
    for a in anchors:
        assert dist[a] <= 5 * scale
    da = {}
    q = deque(anchors)
    for a in anchors:
        da[a] = 0
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in da:
                da[w] = da[u] + 1
                q.append(w)
    half = Fraction(5, 2)
    for v in cycle:
        assert da[v] <= half * scale


def test_host_cycle_needs_k10():
    ps = gen_random_points(0, 12, 0)
    total, edges, pos, aidx = _pipeline_graph(ps)
    with pytest.raises(ValidationError):
        build_host_cycle(total, edges, aidx[:8])


def test_brute_force_anchors_only_is_identity():
    ps = gen_random_points(0, 10, 3)
    asg, ratio_sq = brute_force_min_ratio(ps)
    assert asg == tuple(range(10))
    assert ratio_sq == 1


def test_euclid_retract_anchors_only():
    ps = gen_random_points(0, 12, 1)
    res = euclid_retract(ps)
    assert res.assignment == tuple(range(12))
    assert res.ratio_sq == 1


def test_euclid_retract_center_point():
    pts = list(anchors_on_circle(12))
    pts.append((F(0), F(0)))
    ps = PointSet(tuple(pts), tuple(range(12)))
    res = euclid_retract(ps)
    assert res.assignment[:12] == tuple(range(12))
    assert res.assignment[12] < 12
    nk2 = ps.n * ps.k // 2
    assert res.ratio_sq <= nk2 * nk2


def test_euclid_retract_matches_bound_and_oracle():
    ps = gen_random_points(3, 10, 105)
    res = euclid_retract(ps)
    assert res.assignment[:10] == tuple(range(10))
    nk2 = Fraction(ps.n * ps.k, 2)
    assert res.ratio_sq <= nk2 * nk2
    _, opt_sq = brute_force_min_ratio(ps)
    assert res.ratio_sq <= 200 * 200 * opt_sq


def test_small_k_falls_back_to_brute_force():
    pts = list(anchors_on_circle(6))
    pts.append((F(0), F(0)))
    ps = PointSet(tuple(pts), tuple(range(6)))
    res = euclid_retract(ps)
    _, opt_sq = brute_force_min_ratio(ps)
    assert res.ratio_sq == opt_sq


def test_gen_random_points_deterministic():
    a = gen_random_points(5, 12, 42)
    b = gen_random_points(5, 12, 42)
    assert a == b
    assert a.n == 17


def test_gen_random_planar_properties():
    for seed in range(5):
        inst = gen_random_planar(6, 8, seed)
        assert inst.n == 14
        gx = nx.Graph(list(inst.edges))
        gx.add_nodes_from(range(inst.n))
        assert nx.check_planarity(gx)[0]
        assert nx.is_connected(gx)
    assert gen_random_planar(6, 8, 3).edges == gen_random_planar(6, 8, 3).edges
