"""Exact minimum-stretch retraction for planar guests.

Route: reduce to 2-connected, embed with the anchor cycle H on the outer face
(decomposing into independent sub-instances when H bounds no face), then decide
stretch-1 feasibility by scanning bounded faces F: triangulate everything but F
and the outer face, find the maximum set of vertex-disjoint F-to-H paths by
unit-capacity max flow, and when k paths exist build the retraction by
flood-filling the regions they cut out. The optimum is the smallest l for
which the l-subdivided instance admits a stretch-1 retraction.

For very large subdivided instances (the Euclidean pipeline) the per-face
decision switches to a layered shortest-path construction: labels are computed
in a small winding cover of the annulus between F and the outer face, and the
resulting map is verified directly, so the fast route is self-certifying.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import ceil

import networkx as nx

from .core import (Instance, Retraction, StretchReport, SolverError,
                   ValidationError, _normalize_edge, cycle_dist,
                   distance_lower_bound, stretch, subdivide)


class NotPlanarError(ValidationError):
    """The guest graph is not planar; the exact algorithm does not apply."""


# vertex-count threshold above which the face decision uses the layered
# shortest-path route instead of triangulation + max flow
_CURVE_LIMIT = 1500
# face-boundary threshold for the same switch: the triangulation gadget is
# quadratic in the boundary length, so long faces take the fast route too
_CURVE_FACE_LIMIT = 200
# winding-cover half-width for the fast route
_COVER_LAYERS = 4
# anchor sample size for the distance lower bound on huge instances
_LB_SAMPLE = 64


class PlaneEmbedding:
    """A combinatorial plane embedding with explicit face lists.

    rotation[v] is the cyclic order of v's neighbors; faces are directed
    boundary walks (simple cycles in the 2-connected case); outer_face indexes
    the face bounded by the anchor cycle.
    """

    __slots__ = ("n", "rotation", "faces", "outer_face", "anchors",
                 "graph_edges", "face_edge_sets", "edge_faces", "half_face")

    def __init__(self, n, rotation, faces, outer_face, anchors):
        self.n = n
        self.rotation = rotation
        self.faces = tuple(tuple(f) for f in faces)
        self.outer_face = outer_face
        self.anchors = tuple(anchors)
        edges = set()
        half_face = {}
        face_edge_sets = []
        for fid, walk in enumerate(self.faces):
            fes = set()
            m = len(walk)
            for i in range(m):
                u, v = walk[i], walk[(i + 1) % m]
                e = _normalize_edge(u, v)
                edges.add(e)
                fes.add(e)
                if (u, v) in half_face:
                    raise SolverError("half-edge (%d,%d) on two faces" % (u, v))
                half_face[(u, v)] = fid
            face_edge_sets.append(frozenset(fes))
        self.graph_edges = tuple(sorted(edges))
        self.face_edge_sets = tuple(face_edge_sets)
        ef = {}
        for fid, fes in enumerate(face_edge_sets):
            for e in fes:
                ef.setdefault(e, []).append(fid)
        self.edge_faces = {e: tuple(fs) for e, fs in ef.items()}
        self.half_face = half_face

    def face_len(self, fid):
        return len(self.faces[fid])


def _nx_faces(n, edges):
    """Planarity-test the edge set and list all faces of one embedding."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    ok, emb = nx.check_planarity(g)
    if not ok:
        raise NotPlanarError("guest graph is not planar")
    faces = []
    seen = set()
    for u, v in emb.edges:
        if (u, v) in seen:
            continue
        walk = emb.traverse_face(u, v, mark_half_edges=seen)
        faces.append(tuple(walk))
    rotation = tuple(tuple(emb.neighbors_cw_order(v)) if g.degree(v) else ()
                     for v in range(n))
    return rotation, faces


def _find_face(faces, edge_set, excluding=()):
    for fid, walk in enumerate(faces):
        if fid in excluding:
            continue
        m = len(walk)
        fes = {_normalize_edge(walk[i], walk[(i + 1) % m]) for i in range(m)}
        if fes == edge_set:
            return fid
    return None


# ---------------------------------------------------------------------------
# preprocessing: 2-connected reduction and embedding / decomposition


@dataclass(frozen=True)
class ReduceMap:
    """Back-mapping for reduce_two_connected.

    old_of_new[new_id] = original id of a kept vertex;
    gateway[old_id] = kept original vertex (a cut vertex) a collapsed
    vertex hangs off of; kept vertices are not in gateway.
    """
    n_original: int
    old_of_new: tuple
    new_of_old: dict
    gateway: dict

    def lift(self, reduced_retraction):
        """Pull a retraction of the reduced instance back to the original."""
        asg_new = reduced_retraction.assignment
        asg = [None] * self.n_original
        for new_id, old_id in enumerate(self.old_of_new):
            asg[old_id] = self.old_of_new[asg_new[new_id]]
        for old_id, gate in self.gateway.items():
            asg[old_id] = asg[gate]
        return Retraction(tuple(asg))


def reduce_two_connected(instance):
    """Collapse everything outside the block containing H onto its cut vertex.

    Returns (reduced_instance, ReduceMap). The anchor cycle lies in a single
    block; every other vertex belongs to a component of G minus that block
    attached at exactly one block vertex, and any retraction of the block
    lifts by sending the whole component to its gateway's image.
    """
    g = nx.Graph()
    g.add_nodes_from(range(instance.n))
    g.add_edges_from(instance.edges)
    aset = set(instance.anchors)
    block = None
    for comp in nx.biconnected_components(g):
        if aset <= comp:
            block = set(comp)
            break
    if block is None:  # k >= 3 so H is a cycle inside one block
        raise ValidationError("anchor cycle does not lie in one block")
    gateway = {}
    if len(block) < instance.n:
        rest = g.subgraph(v for v in range(instance.n) if v not in block)
        for comp in nx.connected_components(rest):
            gates = {w for v in comp for w in g[v] if w in block}
            if len(gates) != 1:
                raise ValidationError("hanging component attaches at %d block "
                                      "vertices, expected 1" % len(gates))
            gate = gates.pop()
            for v in comp:
                gateway[v] = gate
    old_of_new = tuple(sorted(block))
    new_of_old = {old: new for new, old in enumerate(old_of_new)}
    edges = [(new_of_old[u], new_of_old[v]) for u, v in instance.edges
             if u in new_of_old and v in new_of_old]
    anchors = tuple(new_of_old[a] for a in instance.anchors)
    reduced = Instance(len(old_of_new), edges, anchors)
    return reduced, ReduceMap(instance.n, old_of_new, new_of_old, gateway)


def plane_embed(instance):
    """Embed with H bounding the outer face, or decompose.

    Returns a PlaneEmbedding whose outer face is the anchor cycle, or — when
    no face of the (up to reflection unique) embedding of the 2-connected
    guest is bounded by H — a list of (sub_instance, old_of_new) pairs, one
    per connected component of G minus the anchors, each with H attached, to
    be solved independently and merged.
    """
    rotation, faces = _nx_faces(instance.n, instance.edges)
    outer = _find_face(faces, set(instance.host_edges()))
    if outer is not None:
        return PlaneEmbedding(instance.n, rotation, faces, outer,
                              instance.anchors)
    # decomposition: one sub-instance per component of G minus the anchors
    aset = set(instance.anchors)
    g = nx.Graph()
    g.add_nodes_from(range(instance.n))
    g.add_edges_from(instance.edges)
    parts = []
    host = instance.host_edges()
    anchor_new = {a: i for i, a in enumerate(instance.anchors)}
    for u, v in instance.edges:
        if u in aset and v in aset and (u, v) not in host:
            # a chord is its own sub-instance on the anchors alone
            edges = {(anchor_new[a], anchor_new[b]) for a, b in host}
            edges.add(_normalize_edge(anchor_new[u], anchor_new[v]))
            parts.append((Instance(instance.k, edges, range(instance.k)),
                          tuple(instance.anchors)))
    free = [v for v in range(instance.n) if v not in aset]
    for comp in nx.connected_components(g.subgraph(free)):
        old_of_new = list(instance.anchors) + sorted(comp)
        new_of_old = {old: new for new, old in enumerate(old_of_new)}
        keep = set(old_of_new)
        edges = {(new_of_old[u], new_of_old[v]) for u, v in instance.edges
                 if u in keep and v in keep
                 and not (u in aset and v in aset)}
        edges |= {(new_of_old[u], new_of_old[v])
                  for u, v in instance.host_edges()}
        anchors = tuple(range(instance.k))
        parts.append((Instance(len(old_of_new), edges, anchors),
                      tuple(old_of_new)))
    if len(parts) < 2:
        raise SolverError("anchor cycle bounds no face yet the instance does "
                          "not decompose")
    return parts


# ---------------------------------------------------------------------------
# triangulation and disjoint paths


@dataclass(frozen=True)
class Supergraph:
    """Triangulated supergraph G_delta(F) with terminals s and t.

    embedding covers the graph vertices only (0..n_total-1, originals first);
    s is adjacent to every vertex of F's boundary, t to every anchor.
    """
    embedding: PlaneEmbedding
    face: int
    n_original: int
    s: int
    t: int
    s_neighbors: tuple
    t_neighbors: tuple


@dataclass(frozen=True)
class CurveSet:
    face: int
    paths: tuple   # each a vertex tuple from a face-boundary vertex to an anchor


def _triangulate_walk(walk, fresh, new_faces):
    """Triangulate one face given by its directed boundary walk.

    Inserts an inner (y-1)-cycle tied to the boundary plus a star vertex in
    the leftover quad, then recurses on the inner cycle. The replacement
    triangles are emitted with the same orientation as the parent walk, and
    every through-path via new vertices is at least as long as along the old
    boundary, so original distances are preserved.
    """
    walk = list(walk)
    while len(walk) > 3:
        y = len(walk)
        c = [fresh + i for i in range(y - 1)]
        fresh += y - 1
        star = fresh
        fresh += 1
        for i in range(y - 1):
            new_faces.append((walk[i], walk[(i + 1) % y], c[i]))
        for i in range(y - 2):
            new_faces.append((walk[i + 1], c[i + 1], c[i]))
        for a, b in ((c[y - 2], walk[y - 1]), (walk[y - 1], walk[0]),
                     (walk[0], c[0]), (c[0], c[y - 2])):
            new_faces.append((a, b, star))
        walk = c
    new_faces.append(tuple(walk))
    return fresh


def _rotation_from_faces(n, faces):
    """Stitch a rotation system out of consistently oriented face walks: a
    corner (a, v, b) of some face makes the edges (v,a), (v,b) consecutive
    around v."""
    succ = [dict() for _ in range(n)]
    for walk in faces:
        m = len(walk)
        for i in range(m):
            a, v, b = walk[i - 1], walk[i], walk[(i + 1) % m]
            if a in succ[v]:
                raise SolverError("inconsistent face orientations at %d" % v)
            succ[v][a] = b
    rotation = []
    for v in range(n):
        if not succ[v]:
            rotation.append(())
            continue
        start = next(iter(succ[v]))
        cyc = [start]
        w = succ[v][start]
        while w != start:
            cyc.append(w)
            w = succ[v][w]
        if len(cyc) != len(succ[v]):
            raise SolverError("rotation at vertex %d is not a single cycle" % v)
        rotation.append(tuple(cyc))
    return tuple(rotation)


def triangulate_for_face(embedding, face):
    """Make every bounded face except `face` a triangle; attach terminals.

    New vertices go inside the non-triangle faces, so all original pairwise
    distances are preserved. The new embedding's face list is built directly
    from the gadget construction (re-running a planarity embedder could flip
    a gadget to the wrong side of its face, since 2-connected graphs have
    many embeddings).
    """
    if face == embedding.outer_face:
        raise ValidationError("the distinguished face must be bounded")
    new_faces = []
    keep = {}
    todo = []
    for fid, walk in enumerate(embedding.faces):
        if fid in (face, embedding.outer_face) or len(walk) <= 3:
            keep[fid] = len(new_faces)
            new_faces.append(walk)
        else:
            todo.append(walk)
    fresh = embedding.n
    for walk in todo:
        fresh = _triangulate_walk(walk, fresh, new_faces)
    rotation = _rotation_from_faces(fresh, new_faces)
    emb = PlaneEmbedding(fresh, rotation, new_faces, keep[embedding.outer_face],
                         embedding.anchors)
    new_face = keep[face]
    s, t = fresh, fresh + 1
    return Supergraph(emb, new_face, embedding.n, s, t,
                      tuple(sorted(set(emb.faces[new_face]))),
                      tuple(embedding.anchors))


def max_disjoint_paths(supergraph, s, t):
    """Maximum set of vertex-disjoint paths from F's boundary to the anchors.

    Unit vertex capacities via in/out splitting; BFS augmenting paths (at
    most k of them); the flow is decomposed into paths and each path is
    trimmed to run from its last F-boundary vertex to its first anchor.
    """
    if (s, t) != (supergraph.s, supergraph.t):
        raise ValidationError("terminals do not match the supergraph")
    emb = supergraph.embedding
    n = emb.n
    # node ids in the flow network: 2v (in), 2v+1 (out), S, T
    S, T = 2 * n, 2 * n + 1
    cap = {}
    forward = set()
    adj = [[] for _ in range(2 * n + 2)]

    def add(a, b, c):
        cap[(a, b)] = c
        cap.setdefault((b, a), 0)
        forward.add((a, b))
        adj[a].append(b)
        adj[b].append(a)

    for v in range(n):
        add(2 * v, 2 * v + 1, 1)
    for u, v in emb.graph_edges:
        add(2 * u + 1, 2 * v, 1)
        add(2 * v + 1, 2 * u, 1)
    for v in supergraph.s_neighbors:
        add(S, 2 * v, 1)
    for v in supergraph.t_neighbors:
        add(2 * v + 1, T, 1)

    def augment():
        parent = {S: None}
        queue = [S]
        for a in queue:
            if a == T:
                break
            for b in adj[a]:
                if b not in parent and cap.get((a, b), 0) > 0:
                    parent[b] = a
                    queue.append(b)
        if T not in parent:
            return False
        b = T
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        return True

    while augment():
        pass

    # decompose: walk saturated forward unit arcs from S, consuming them
    def flow_successor(a):
        for b in adj[a]:
            if (a, b) in forward and cap[(a, b)] == 0:
                cap[(a, b)] = 1
                cap[(b, a)] -= 1
                return b
        return None

    fset = set(supergraph.s_neighbors)
    aset = set(supergraph.t_neighbors)
    paths = []
    for v0 in supergraph.s_neighbors:
        if cap[(S, 2 * v0)] != 0:
            continue
        cap[(S, 2 * v0)] = 1
        cap[(2 * v0, S)] -= 1
        path = [v0]
        node = 2 * v0
        while True:
            node = flow_successor(node)
            if node is None:
                raise SolverError("flow decomposition stalled")
            if node == T:
                break
            if node % 2 == 0:
                path.append(node // 2)
        # trim: cut at the first anchor, start at the last F vertex before it
        first_a = next(i for i, v in enumerate(path) if v in aset)
        path = path[:first_a + 1]
        last_f = max(i for i, v in enumerate(path) if v in fset)
        paths.append(tuple(path[last_f:]))
    ends = [p[-1] for p in paths]
    if len(set(ends)) != len(ends):
        raise SolverError("disjoint paths share an anchor endpoint")
    return CurveSet(supergraph.face, tuple(paths))


def retraction_from_curves(embedding, curves):
    """Stretch-1 retraction of the (triangulated) graph from k valid curves.

    Barrier edges are the host edges, F's boundary, and the curve edges; the
    faces split into regions by flood fill. Each region other than F and the
    outer face is bordered by exactly one host edge; its vertices map to that
    edge's earlier-in-anchor-order endpoint, and curve vertices map to the
    curve's anchor.
    """
    k = len(embedding.anchors)
    if len(curves.paths) != k:
        raise ValidationError("need exactly %d curves, got %d"
                              % (k, len(curves.paths)))
    idx = {a: i for i, a in enumerate(embedding.anchors)}
    host_dir = {}
    for i, a in enumerate(embedding.anchors):
        b = embedding.anchors[(i + 1) % k]
        host_dir[_normalize_edge(a, b)] = a   # earlier endpoint in anchor order
    barriers = set(host_dir)
    barriers |= set(embedding.face_edge_sets[curves.face])
    curve_anchor = {}
    for path in curves.paths:
        for i in range(len(path) - 1):
            barriers.add(_normalize_edge(path[i], path[i + 1]))
        for v in path:
            curve_anchor[v] = path[-1]

    region = [None] * len(embedding.faces)
    region[curves.face] = -1
    region[embedding.outer_face] = -2
    region_host = {}
    nxt = 0
    for fid in range(len(embedding.faces)):
        if region[fid] is not None:
            continue
        rid = nxt
        nxt += 1
        stack = [fid]
        region[fid] = rid
        while stack:
            f = stack.pop()
            for e in embedding.face_edge_sets[f]:
                if e in host_dir:
                    region_host.setdefault(rid, set()).add(e)
                if e in barriers:
                    continue
                for g in embedding.edge_faces[e]:
                    if region[g] is None:
                        region[g] = rid
                        stack.append(g)

    assignment = [None] * embedding.n
    for a in embedding.anchors:
        assignment[a] = a
    for v, a in curve_anchor.items():
        if assignment[v] is None:
            assignment[v] = a
    vertex_faces = [[] for _ in range(embedding.n)]
    for fid, walk in enumerate(embedding.faces):
        for v in walk:
            vertex_faces[v].append(fid)
    for v in range(embedding.n):
        if assignment[v] is not None:
            continue
        rids = {region[f] for f in vertex_faces[v]} - {-1, -2}
        if len(rids) != 1:
            raise SolverError("vertex %d borders %d regions" % (v, len(rids)))
        hosts = region_host.get(rids.pop(), set())
        if len(hosts) != 1:
            raise SolverError("region bordered by %d host edges" % len(hosts))
        assignment[v] = host_dir[next(iter(hosts))]
    ret = Retraction(tuple(assignment))
    # the construction is certified: every edge must have stretch <= 1
    for u, v in embedding.graph_edges:
        if cycle_dist(k, idx[ret.image(u)], idx[ret.image(v)]) > 1:
            raise SolverError("curve regions produced stretch > 1 on (%d,%d)"
                              % (u, v))
    return ret


# ---------------------------------------------------------------------------
# layered-cover fast route for large instances


def _dual_crossing_signs(embedding, face):
    """BFS in the face-adjacency graph from `face` to the outer face; return
    sign[(u,v)] = +-1 for the primal directed edges crossed by the dual path,
    normalized so walking the host cycle in anchor order scores +1."""
    parent = {face: None}
    queue = [face]
    for f in queue:
        if f == embedding.outer_face:
            break
        for e in embedding.face_edge_sets[f]:
            for g in embedding.edge_faces[e]:
                if g not in parent:
                    parent[g] = (f, e)
                    queue.append(g)
    if embedding.outer_face not in parent:
        raise SolverError("outer face unreachable in the dual")
    sign = {}
    f = embedding.outer_face
    while parent[f] is not None:
        prev, e = parent[f]
        u, v = e
        # (u, v) has the face to one side; crossing prev -> f counts +1 for
        # the direction whose left face is prev
        if embedding.half_face.get((u, v)) == prev:
            sign[(u, v)] = sign.get((u, v), 0) + 1
            sign[(v, u)] = sign.get((v, u), 0) - 1
        else:
            sign[(v, u)] = sign.get((v, u), 0) + 1
            sign[(u, v)] = sign.get((u, v), 0) - 1
        f = prev
    anchors = embedding.anchors
    k = len(anchors)
    w = sum(sign.get((anchors[i], anchors[(i + 1) % k]), 0) for i in range(k))
    if w == 0:
        raise SolverError("dual path does not separate H from F")
    if w < 0:
        sign = {he: -s for he, s in sign.items()}
    return sign


def _lipschitz_retract(instance, embedding, face):
    """Self-certifying stretch-1 construction via the winding cover.

    Vertices are copied into layers, edges crossing the dual path shift the
    layer, anchor copies are seeded at their index plus k per layer, and the
    label of each vertex is its shortest-path value in the cover. The result
    is verified directly; None means this face certifies nothing.
    """
    k = instance.k
    sign = _dual_crossing_signs(embedding, face)
    J = _COVER_LAYERS
    width = 2 * J + 1
    n = instance.n
    INF = float("inf")
    dist = [INF] * (n * width)
    offset = k * (J + 1)
    heap = []
    for i, a in enumerate(instance.anchors):
        for j in range(-J, J + 1):
            val = i + k * j + offset
            node = a * width + (j + J)
            if val < dist[node]:
                dist[node] = val
                heap.append((val, node))
    heapq.heapify(heap)
    adj = [[] for _ in range(n)]   # (neighbor, layer shift)
    for u, v in instance.edges:
        su = sign.get((u, v), 0)
        adj[u].append((v, su))
        adj[v].append((u, -su))
    while heap:
        d, node = heapq.heappop(heap)
        if d > dist[node]:
            continue
        v, j = node // width, node % width - J
        for w, s in adj[v]:
            j2 = j + s
            if j2 < -J or j2 > J:
                continue
            node2 = w * width + (j2 + J)
            if d + 1 < dist[node2]:
                dist[node2] = d + 1
                heapq.heappush(heap, (d + 1, node2))
    assignment = [None] * n
    for v in range(n):
        d = dist[v * width + J]
        if d == INF:
            return None
        assignment[v] = instance.anchors[(d - offset) % k]
    for a in instance.anchors:
        if assignment[a] != a:
            return None
    ret = Retraction(tuple(assignment))
    rep = stretch(instance, ret)
    return ret if rep.max_stretch <= 1 else None


# ---------------------------------------------------------------------------
# the decision procedure and the optimizer


def _stretch1_embedded(instance, embedding, collect=None):
    k = instance.k
    faces = [f for f in range(len(embedding.faces))
             if f != embedding.outer_face and embedding.face_len(f) >= k]
    faces.sort(key=embedding.face_len, reverse=True)
    small = instance.n <= _CURVE_LIMIT
    for f in faces:
        if small and embedding.face_len(f) <= _CURVE_FACE_LIMIT:
            sg = triangulate_for_face(embedding, f)
            curves = max_disjoint_paths(sg, sg.s, sg.t)
            if len(curves.paths) < k:
                continue
            full = retraction_from_curves(sg.embedding, curves)
            ret = Retraction(full.assignment[:instance.n])
            if collect is not None:
                collect["face"] = f
                collect["curves"] = curves
        else:
            ret = _lipschitz_retract(instance, embedding, f)
            if ret is None:
                continue
            if collect is not None:
                collect["face"] = f
                collect["curves"] = None
        if stretch(instance, ret).max_stretch <= 1:
            return ret
    return None


def stretch1_retract(instance, collect=None):
    """A stretch-1 retraction of the instance, or None if none exists."""
    host = instance.host_edges()
    aset = set(instance.anchors)
    for u, v in instance.edges:
        if u in aset and v in aset and (u, v) not in host:
            return None   # a chord joins anchors at cycle distance >= 2
    reduced, rmap = reduce_two_connected(instance)
    emb = plane_embed(reduced)
    if isinstance(emb, PlaneEmbedding):
        sol = _stretch1_embedded(reduced, emb, collect)
        if sol is None:
            return None
    else:
        asg = [None] * reduced.n
        for a in reduced.anchors:
            asg[a] = a
        for sub, old_of_new in emb:
            part = stretch1_retract(sub, collect)
            if part is None:
                return None
            for new_id, old_id in enumerate(old_of_new):
                img = old_of_new[part.assignment[new_id]]
                if asg[old_id] is None:
                    asg[old_id] = img
        sol = Retraction(tuple(asg))
    lifted = rmap.lift(sol)
    if stretch(instance, lifted).max_stretch > 1:
        raise SolverError("lifted retraction exceeds stretch 1")
    return lifted


def _start_lower_bound(instance):
    """ceil of the distance lower bound; sampled on huge instances (still a
    valid lower bound: a max over a subset of anchor pairs)."""
    k = instance.k
    if k <= _LB_SAMPLE and instance.n <= _CURVE_LIMIT:
        return max(1, ceil(distance_lower_bound(instance)))
    step = max(1, k // _LB_SAMPLE)
    best = 1
    for i in range(0, k, step):
        a = instance.anchors[i]
        dg = instance.distances_from(a)
        for j in range(k):
            b = instance.anchors[j]
            if b == a:
                continue
            dh = cycle_dist(k, i, j)
            if dg[b] > 0 and dh > best * dg[b]:
                best = -(-dh // dg[b])
    return max(1, best)


def optimal_retract_planar(instance, collect=None):
    """Minimum-stretch retraction of a planar instance.

    stretch(G) <= l iff the l-subdivision admits a stretch-1 retraction, so
    gallop upward from the distance lower bound and finish with binary
    search; floor(k/2) is always feasible.
    """
    k = instance.k
    cap = max(1, k // 2)
    found = {}

    def feasible(l):
        if l in found:
            return found[l] is not None
        sub, _ = subdivide(instance, l)
        sol = stretch1_retract(sub, collect)
        if sol is None:
            found[l] = None
            return False
        ret = Retraction(sol.assignment[:instance.n])
        rep = stretch(instance, ret)
        if rep.max_stretch > l:
            raise SolverError("subdivision restriction exceeded stretch %d" % l)
        found[l] = (ret, rep)
        return True

    lo = min(_start_lower_bound(instance), cap)
    # gallop: first feasible value, doubling from the lower bound
    l = lo
    last_bad = lo - 1
    while not feasible(l):
        last_bad = l
        if l >= cap:
            break
        l = min(2 * l, cap)
    if found.get(l) is None and last_bad >= cap:
        # every candidate failed (possible only on the self-certifying fast
        # route); fall back to the trivial retraction
        asg = [v if instance.is_anchor(v) else instance.anchors[0]
               for v in range(instance.n)]
        ret = Retraction(tuple(asg))
        return ret, stretch(instance, ret)
    hi = l
    # binary search in (last_bad, hi]
    while last_bad + 1 < hi:
        mid = (last_bad + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            last_bad = mid
    ret, rep = found[hi]
    return ret, rep


# ---------------------------------------------------------------------------
# scores


def cycle_score(embedding, cycle, retraction):
    """Sum of signed steps of the images along a closed vertex sequence.

    A step from image index i to i+1 (mod k) counts +1, the reverse -1,
    staying put 0; any step between non-adjacent anchors violates the
    stretch-1 premise. The result is the winding number times k; the host
    cycle itself always scores k.
    """
    anchors = embedding.anchors
    k = len(anchors)
    idx = {a: i for i, a in enumerate(anchors)}
    total = 0
    m = len(cycle)
    for i in range(m):
        u, v = cycle[i], cycle[(i + 1) % m]
        d = (idx[retraction.image(v)] - idx[retraction.image(u)]) % k
        if d == 0:
            continue
        if d == 1:
            total += 1
        elif d == k - 1:
            total -= 1
        else:
            raise ValidationError("images of consecutive cycle vertices are "
                                  "%d anchors apart" % min(d, k - d))
    return total


def enclosed_faces(embedding, cycle_edges):
    """Face ids strictly inside a simple cycle (given by its edge set):
    everything unreachable from the outer face without crossing the cycle."""
    cyc = {_normalize_edge(u, v) for u, v in cycle_edges}
    outside = {embedding.outer_face}
    stack = [embedding.outer_face]
    while stack:
        f = stack.pop()
        for e in embedding.face_edge_sets[f]:
            if e in cyc:
                continue
            for g in embedding.edge_faces[e]:
                if g not in outside:
                    outside.add(g)
                    stack.append(g)
    return frozenset(f for f in range(len(embedding.faces)) if f not in outside)
