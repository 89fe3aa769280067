"""Retraction of planar point sets onto a circle of anchors.

Pipeline: exact Delaunay spanner over the points, contraction of tiny edges,
conversion of weights to unit-length subdivision paths, construction of a host
cycle hugging the anchor circle, an exact planar solve on that cycle, and a
final snap of every image to its nearest anchor. All geometry is exact: points
live on a dyadic grid, predicates are integer determinants, and the reported
stretch ratio is returned as an exact rational square.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .core import (Instance, Retraction, SolverError, ValidationError,
                   _normalize_edge)
from . import planar as planar_mod

_GRID = 1 << 24   # dyadic grid for rationalized coordinates


def _quantize(x):
    return Fraction(round(x * _GRID), _GRID)


def _sqdist(p, q):
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2


@dataclass(frozen=True)
class PointSet:
    """Exact rational plane points; the anchor points sit (approximately)
    uniformly on a circle with unit consecutive spacing."""
    points: tuple            # ((x, y) Fractions, ...)
    anchor_indices: tuple

    def __post_init__(self):
        pts = self.points
        if len(set(pts)) != len(pts):
            raise ValidationError("points must be distinct")
        k = len(self.anchor_indices)
        if k < 3:
            raise ValidationError("need at least 3 anchors")
        if len(set(self.anchor_indices)) != k:
            raise ValidationError("anchor indices must be distinct")
        hi = (1 + Fraction(1, k * k)) ** 2
        for i in range(k):
            a = pts[self.anchor_indices[i]]
            b = pts[self.anchor_indices[(i + 1) % k]]
            d2 = _sqdist(a, b)
            if not (1 <= d2 <= hi):
                raise ValidationError(
                    "anchor spacing %d-%d out of [1, (1+1/k^2)^2]" % (i, i + 1))

    @property
    def k(self):
        return len(self.anchor_indices)

    @property
    def n(self):
        return len(self.points)


def anchors_on_circle(k):
    """k rational points with consecutive spacing in [1, (1+1/k^2)^2]:
    a slightly inflated circle quantized to the dyadic grid."""
    if k < 3:
        raise ValidationError("k must be >= 3")
    r = (1 + 0.5 / k ** 2) / (2 * math.sin(math.pi / k))
    pts = []
    for i in range(k):
        th = 2 * math.pi * i / k
        pts.append((_quantize(r * math.cos(th)), _quantize(r * math.sin(th))))
    return tuple(pts)


def circle_radius(k):
    """Float radius of the anchor circle used by anchors_on_circle."""
    return (1 + 0.5 / k ** 2) / (2 * math.sin(math.pi / k))


def gen_random_points(n_interior, k, seed):
    """Seeded PointSet: anchors on the circle plus interior grid points."""
    rng = random.Random(seed)
    anchors = anchors_on_circle(k)
    pts = list(anchors)
    seen = set(pts)
    r = circle_radius(k) / math.sqrt(2)
    while len(pts) < k + n_interior:
        p = (_quantize(rng.uniform(-r, r)), _quantize(rng.uniform(-r, r)))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return PointSet(tuple(pts), tuple(range(k)))


# ---------------------------------------------------------------------------
# Delaunay spanner (exact, brute force over triples, lifted-weight
# perturbation for co-circular ties)


@dataclass(frozen=True)
class WeightedPlanarGraph:
    """Planar graph with exact squared edge lengths (lengths themselves are
    irrational in general; every decision below only compares squares)."""
    n: int
    sq_weights: dict         # normalized (u, v) -> Fraction squared length
    points: tuple            # vertex coordinates

    @property
    def edges(self):
        return sorted(self.sq_weights)


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _in_circle(pts, ia, ib, ic, idx):
    """Is point idx strictly inside the circumcircle of CCW triangle
    (ia, ib, ic)? Co-circular ties broken by perturbing the lift of point i
    upward by eps*i (a regular-triangulation perturbation): larger-index
    co-circular points count as outside."""
    rows = []
    for i in (ia, ib, ic, idx):
        x, y = pts[i]
        rows.append((x, y, x * x + y * y, 1, i))
    # 4x4 determinant expanded along the lifted column
    d0 = 0
    d1 = 0
    for r in range(4):
        sub = [rows[j][:2] + (rows[j][3],) for j in range(4) if j != r]
        cof = (-1) ** (r + 2) * _det3(sub)
        d0 += rows[r][2] * cof
        d1 += rows[r][4] * cof
    if d0 != 0:
        return d0 > 0
    if d1 != 0:
        return d1 > 0
    raise SolverError("degenerate in-circle test (coincident or collinear "
                      "input); cannot perturb consistently")


def delaunay_spanner(points):
    """Delaunay triangulation edges with exact squared Euclidean lengths.

    Brute force: a non-degenerate triple is a Delaunay triangle iff no other
    point is inside its (perturbed) circumcircle. Small inputs only.
    """
    pts = points.points if isinstance(points, PointSet) else tuple(points)
    n = len(pts)
    if n < 3:
        raise ValidationError("need at least 3 points")
    # scale to integers for fast predicates
    den = 1
    for x, y in pts:
        den = den * x.denominator // math.gcd(den, x.denominator)
        den = den * y.denominator // math.gcd(den, y.denominator)
    ipts = [(int(x * den), int(y * den)) for x, y in pts]
    edges = set()
    found_triangle = False
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                o = _orient(ipts[a], ipts[b], ipts[c])
                if o == 0:
                    continue
                tri = (a, b, c) if o > 0 else (a, c, b)
                if any(_in_circle(ipts, *tri, d)
                       for d in range(n) if d not in tri):
                    continue
                found_triangle = True
                edges.update((_normalize_edge(a, b), _normalize_edge(b, c),
                              _normalize_edge(a, c)))
    if not found_triangle:
        raise ValidationError("all points are collinear")
    sq = {e: _sqdist(pts[e[0]], pts[e[1]]) for e in sorted(edges)}
    return WeightedPlanarGraph(n, sq, tuple(pts))


# ---------------------------------------------------------------------------
# contraction and unweighted conversion


def contract_small_edges(g, k, n):
    """Contract every edge of squared length below (2/(kn))^2; parallel edges
    keep the minimum weight. Returns (graph, group) where group[v] is v's new
    vertex id. Raises if two anchors of the first k vertices would merge only
    when told which vertices are anchors -- callers check via group."""
    thr = Fraction(4, (k * n) ** 2)
    parent = list(range(g.n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    changed = True
    sq = dict(g.sq_weights)
    while changed:
        changed = False
        for (u, v), w in sorted(sq.items()):
            ru, rv = find(u), find(v)
            if ru != rv and w < thr:
                parent[max(ru, rv)] = min(ru, rv)
                changed = True
        if changed:
            merged = {}
            for (u, v), w in sq.items():
                ru, rv = find(u), find(v)
                if ru == rv:
                    continue
                e = _normalize_edge(ru, rv)
                if e not in merged or w < merged[e]:
                    merged[e] = w
            sq = merged
    reps = sorted({find(v) for v in range(g.n)})
    new_id = {r: i for i, r in enumerate(reps)}
    group = tuple(new_id[find(v)] for v in range(g.n))
    # parallel minima under the final renaming
    merged = {}
    for (u, v), w in g.sq_weights.items():
        gu, gv = group[u], group[v]
        if gu == gv:
            continue
        e = _normalize_edge(gu, gv)
        if e not in merged or w < merged[e]:
            merged[e] = w
    pts = tuple(g.points[reps[i]] for i in range(len(reps)))
    return WeightedPlanarGraph(len(reps), merged, pts), group


def _floor_sqrt_fraction(f):
    """floor(sqrt(f)) for a nonnegative Fraction."""
    return isqrt(f.numerator * f.denominator) // f.denominator


def to_unweighted(g, k, n):
    """Replace each weighted edge by a unit-length path: ceil(k^2 n / 2)
    edges for weights >= k, floor(k n w / 2) otherwise (>= 1 after
    contraction). Returns (total vertices, edges, positions) with original
    vertex ids preserved and subdivision vertices interpolated exactly."""
    thr = Fraction(4, (k * n) ** 2)
    long_count = (k * k * n + 1) // 2
    total = g.n
    edges = []
    pos = list(g.points)
    for (u, v), sq in sorted(g.sq_weights.items()):
        if sq < thr:
            raise ValidationError("edge (%d,%d) below contraction threshold"
                                  % (u, v))
        if sq >= k * k:
            m = long_count
        else:
            m = _floor_sqrt_fraction(sq * k * k * n * n / 4)
            if m < 1:
                raise SolverError("subdivision count fell below 1")
        chain = list(range(total, total + m - 1))
        total += m - 1
        path = [u] + chain + [v]
        pu, pv = g.points[u], g.points[v]
        for j, w in enumerate(chain, start=1):
            pos.append((pu[0] + Fraction(j, m) * (pv[0] - pu[0]),
                        pu[1] + Fraction(j, m) * (pv[1] - pu[1])))
        edges.extend((path[i], path[i + 1]) for i in range(m))
    return total, edges, pos


# ---------------------------------------------------------------------------
# host cycle construction


def _bfs_parents(adj, src, banned=frozenset()):
    if src in banned:
        raise SolverError("path endpoint %d is blocked" % src)
    par = {src: None}
    q = deque([src])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in par and w not in banned:
                par[w] = u
                q.append(w)
    return par


def _bfs_path(adj, src, dst, banned=frozenset()):
    par = _bfs_parents(adj, src, banned)
    if dst not in par:
        raise SolverError("no path between %d and %d avoiding earlier "
                          "pieces" % (src, dst))
    path = [dst]
    while path[-1] != src:
        path.append(par[path[-1]])
    path.reverse()
    return path


def _grow_path(adj, path, targets, banned=frozenset()):
    """Incremental closest-vertex construction: for each target anchor in
    order, trim the path at its closest vertex and append a shortest path to
    the anchor. Appended branches avoid the kept portion (and `banned`), so
    the result stays a simple path."""
    for t in targets:
        par = _bfs_parents(adj, t, banned)
        dist = {t: 0}
        q = deque([t])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in dist and w not in banned:
                    dist[w] = dist[u] + 1
                    q.append(w)
        best_pos = min(range(len(path)),
                       key=lambda i: (dist.get(path[i], 1 << 60), i))
        if path[best_pos] not in dist:
            raise SolverError("anchor unreachable during path construction")
        kept = path[:best_pos + 1]
        keep_set = set(kept)
        par = _bfs_parents(adj, t, banned | (keep_set - {path[best_pos]}))
        if path[best_pos] not in par:
            raise SolverError("anchor unreachable during path construction")
        branch = [path[best_pos]]
        while branch[-1] != t:
            branch.append(par[branch[-1]])
        path = kept + branch[1:]
        if len(set(path)) != len(path):
            raise SolverError("closest-vertex path construction "
                              "self-intersected")
    return path


def _segment_between(path, x, y):
    i, j = path.index(x), path.index(y)
    return path[i:j + 1] if i <= j else path[j:i + 1][::-1]


def build_host_cycle(n, edges, anchors):
    """Simple host cycle through the subdivided graph, hugging the anchor
    circle: two incrementally-built half paths joined by two trimmed shortest
    paths. Raises SolverError if the pieces fail to form a simple cycle."""
    k = len(anchors)
    if k < 10:
        raise ValidationError("host cycle construction needs k >= 10")
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for a in adj:
        a.sort()
    half = k // 2
    h1 = _bfs_path(adj, anchors[2], anchors[3])
    h1 = _grow_path(adj, h1, [anchors[i] for i in range(4, half - 1)])
    s1 = set(h1)
    # later pieces are routed around the earlier ones: with sparse interiors
    # the unrestricted shortest paths routinely share central vertices
    h2 = _bfs_path(adj, anchors[k - 2], anchors[k - 3], banned=s1)
    h2 = _grow_path(adj, h2,
                    [anchors[i] for i in range(k - 4, half + 1, -1)],
                    banned=s1)
    s2 = set(h2)

    def connector(src, dst, banned):
        p = _bfs_path(adj, src, dst, banned=banned)
        i1 = max(i for i, v in enumerate(p) if v in s1)
        later = [i for i, v in enumerate(p) if v in s2 and i > i1]
        if not later:
            raise SolverError("connector misses the second half cycle")
        i2 = min(later)
        return p[i1:i2 + 1]

    p_ab = connector(anchors[2], anchors[k - 2], frozenset())  # a on h1
    p_cd = connector(anchors[half - 2], anchors[half + 2],
                     frozenset(p_ab) - {anchors[half - 2], anchors[half + 2]})
    a, b = p_ab[0], p_ab[-1]
    c, d = p_cd[0], p_cd[-1]
    cycle = (_segment_between(h1, a, c)
             + p_cd[1:]
             + _segment_between(h2, d, b)[1:]
             + p_ab[::-1][1:-1])
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise SolverError("host cycle is not simple")
    eset = {_normalize_edge(u, v) for u, v in edges}
    for i in range(len(cycle)):
        e = _normalize_edge(cycle[i], cycle[(i + 1) % len(cycle)])
        if e not in eset:
            raise SolverError("host cycle uses a missing edge")
    return cycle


# ---------------------------------------------------------------------------
# the full pipeline


@dataclass(frozen=True)
class EuclidResult:
    """assignment[i] is the index (into the point set) of point i's anchor;
    ratio_sq is the exact square of the worst pairwise stretch ratio."""
    assignment: tuple
    ratio_sq: Fraction

    @property
    def ratio(self):
        return math.sqrt(self.ratio_sq)


def _ratio_sq(points, assignment):
    pts = points.points
    worst = Fraction(0)
    for u in range(points.n):
        for v in range(u + 1, points.n):
            num = _sqdist(pts[assignment[u]], pts[assignment[v]])
            if num == 0:
                continue
            worst = max(worst, Fraction(num, _sqdist(pts[u], pts[v])))
    return worst


def euclid_retract(points):
    """Constant-factor retraction of the point set onto its anchors.

    k >= 10 runs the full pipeline (spanner, contraction, subdivision, host
    cycle, exact planar solve, nearest-anchor snap); smaller k brute-forces
    the assignment directly. Anchors are always fixed.
    """
    k, n = points.k, points.n
    if k < 10:
        from .oracle import brute_force_min_ratio
        asg, ratio_sq = brute_force_min_ratio(points)
        return EuclidResult(asg, ratio_sq)
    g = delaunay_spanner(points)
    g2, group = contract_small_edges(g, k, n)
    aidx = [group[points.anchor_indices[i]] for i in range(k)]
    if len(set(aidx)) != k:
        raise SolverError("contraction merged two anchors; anchor spacing "
                          "premise violated")
    total, edges, pos = to_unweighted(g2, k, n)
    host = build_host_cycle(total, edges, aidx)
    inst = Instance(n=total, edges=edges, anchors=tuple(host))
    ret, _ = planar_mod.optimal_retract_planar(inst)
    anchor_pts = [points.points[i] for i in points.anchor_indices]
    anchor_set = set(points.anchor_indices)
    assignment = []
    for v in range(n):
        if v in anchor_set:
            assignment.append(v)
            continue
        img = ret.assignment[group[v]]
        p = pos[img]
        best = min(range(k),
                   key=lambda i: (_sqdist(p, anchor_pts[i]), i))
        assignment.append(points.anchor_indices[best])
    assignment = tuple(assignment)
    return EuclidResult(assignment, _ratio_sq(points, assignment))
