"""Instances, the cycle metric, retraction evaluation, subdivision, generators,
and JSON serialization shared by all solvers.

An Instance is a connected unweighted guest graph together with an ordered
anchor cycle H: the anchors are distinct vertices listed in cycle order, and
consecutive anchors (cyclically) must be joined by an edge, so H is a cycle of
the guest. A Retraction maps every vertex to an anchor, fixing the anchors;
its stretch is the maximum cycle distance between the images of an edge's
endpoints.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction


class ValidationError(ValueError):
    """Malformed instance, retraction, or argument."""


class SolverError(RuntimeError):
    """A solver could not produce an answer (resource cap, construction failure)."""


class ResourceError(SolverError):
    """An explicit budget (states, memory) was exceeded."""


def _normalize_edge(u, v):
    if u == v:
        raise ValidationError("self-loop edge (%r, %r)" % (u, v))
    return (u, v) if u < v else (v, u)


class Instance:
    """Immutable guest graph plus ordered anchor cycle.

    Vertex ids are dense integers 0..n-1. Anchors are vertex ids listed in
    cycle order; internally each anchor also has a cycle index 0..k-1.
    """

    __slots__ = ("n", "edges", "anchors", "points", "_adj", "_anchor_index",
                 "_dist_cache")

    def __init__(self, n, edges, anchors, points=None):
        if not isinstance(n, int) or n <= 0:
            raise ValidationError("vertex count must be a positive integer")
        norm = []
        seen = set()
        for u, v in edges:
            e = _normalize_edge(u, v)
            if not (0 <= e[0] < n and 0 <= e[1] < n):
                raise ValidationError("edge %r out of range" % (e,))
            if e in seen:
                raise ValidationError("duplicate edge %r" % (e,))
            seen.add(e)
            norm.append(e)
        self.n = n
        self.edges = tuple(sorted(norm))
        anchors = tuple(anchors)
        if len(anchors) < 3:
            raise ValidationError("need at least 3 anchors")
        if len(set(anchors)) != len(anchors):
            raise ValidationError("anchors must be distinct")
        for a in anchors:
            if not (0 <= a < n):
                raise ValidationError("anchor %r out of range" % (a,))
        self.anchors = anchors
        k = len(anchors)
        for i in range(k):
            e = _normalize_edge(anchors[i], anchors[(i + 1) % k])
            if e not in seen:
                raise ValidationError(
                    "anchors do not form a cycle: missing edge %r" % (e,))
        if points is not None:
            points = tuple((Fraction(x), Fraction(y)) for x, y in points)
            if len(points) != n:
                raise ValidationError("points length must equal vertex count")
        self.points = points
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._anchor_index = {a: i for i, a in enumerate(anchors)}
        self._dist_cache = {}
        # connectivity (disconnected guests are rejected here; modules that
        # decompose build their sub-instances explicitly)
        if n > 1:
            dist = self.distances_from(0)
            if any(d < 0 for d in dist):
                raise ValidationError("guest graph is disconnected")

    @property
    def k(self):
        return len(self.anchors)

    def neighbors(self, v):
        return self._adj[v]

    def is_anchor(self, v):
        return v in self._anchor_index

    def anchor_index(self, v):
        return self._anchor_index[v]

    def has_edge(self, u, v):
        return v in self._adj[u]

    def distances_from(self, source):
        """BFS distances from source; -1 for unreachable. Memoized."""
        cached = self._dist_cache.get(source)
        if cached is not None:
            return cached
        dist = [-1] * self.n
        dist[source] = 0
        q = deque([source])
        while q:
            u = q.popleft()
            for w in self._adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        dist = tuple(dist)
        self._dist_cache[source] = dist
        return dist

    def host_edges(self):
        """The k cycle edges of H, normalized."""
        k = self.k
        return frozenset(_normalize_edge(self.anchors[i], self.anchors[(i + 1) % k])
                         for i in range(k))

    def __eq__(self, other):
        return (isinstance(other, Instance) and self.n == other.n
                and self.edges == other.edges and self.anchors == other.anchors
                and self.points == other.points)

    def __hash__(self):
        return hash((self.n, self.edges, self.anchors))

    def __repr__(self):
        return "Instance(n=%d, |E|=%d, k=%d)" % (self.n, len(self.edges), self.k)


@dataclass(frozen=True)
class Retraction:
    """Total assignment vertex id -> anchor vertex id, fixing anchors."""
    assignment: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))

    def image(self, v):
        return self.assignment[v]


@dataclass(frozen=True)
class StretchReport:
    max_stretch: int
    witness_edge: tuple | None


class SubgraphHost:
    """An arbitrary connected host subgraph (anchors + host edges) with its
    shortest-path metric. Cycle hosts are the special case used by most
    modules; the treewidth DP accepts any connected subgraph."""

    __slots__ = ("anchors", "edges", "_index", "_dist")

    def __init__(self, anchors, edges):
        self.anchors = tuple(anchors)
        if len(set(self.anchors)) != len(self.anchors):
            raise ValidationError("host anchors must be distinct")
        aset = set(self.anchors)
        norm = set()
        for u, v in edges:
            e = _normalize_edge(u, v)
            if e[0] not in aset or e[1] not in aset:
                raise ValidationError("host edge %r leaves the anchor set" % (e,))
            norm.add(e)
        self.edges = frozenset(norm)
        self._index = {a: i for i, a in enumerate(self.anchors)}
        adj = {a: [] for a in self.anchors}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        dist = {}
        for s in self.anchors:
            d = {s: 0}
            q = deque([s])
            while q:
                u = q.popleft()
                for w in adj[u]:
                    if w not in d:
                        d[w] = d[u] + 1
                        q.append(w)
            if len(d) != len(self.anchors):
                raise ValidationError("host subgraph is disconnected")
            for t, dv in d.items():
                dist[(s, t)] = dv
        self._dist = dist

    @property
    def k(self):
        return len(self.anchors)

    def contains(self, v):
        return v in self._index

    def dist(self, a, b):
        return self._dist[(a, b)]

    def diameter(self):
        return max(self._dist.values())


def host_from_cycle(instance):
    """The instance's anchor cycle as a SubgraphHost."""
    return SubgraphHost(instance.anchors, instance.host_edges())


def cycle_dist(k, i, j):
    """Cycle metric on indices 0..k-1."""
    d = abs(i - j)
    return min(d, k - d)


def cycle_distance(instance, i, j):
    """Cycle metric between anchor cycle indices i and j."""
    k = instance.k
    if not (0 <= i < k and 0 <= j < k):
        raise ValidationError("anchor index out of range")
    return cycle_dist(k, i, j)


def check_retraction(instance, retraction):
    """Raise unless retraction is total, anchor-valued, and fixes anchors."""
    asg = retraction.assignment
    if len(asg) != instance.n:
        raise ValidationError("assignment is not total")
    for v, img in enumerate(asg):
        if not instance.is_anchor(img):
            raise ValidationError("vertex %d maps to non-anchor %r" % (v, img))
    for a in instance.anchors:
        if asg[a] != a:
            raise ValidationError("anchor %d is moved to %r" % (a, asg[a]))


def stretch(instance, retraction):
    """Max cycle distance between endpoint images over all edges."""
    check_retraction(instance, retraction)
    k = instance.k
    asg = retraction.assignment
    idx = instance.anchor_index
    best = 0
    witness = None
    for u, v in instance.edges:
        d = cycle_dist(k, idx(asg[u]), idx(asg[v]))
        if d > best:
            best = d
            witness = (u, v)
    return StretchReport(best, witness)


def distance_lower_bound(instance):
    """max over anchor pairs of d_H(u,v)/d_G(u,v), as an exact Fraction."""
    k = instance.k
    best = Fraction(1)
    for i in range(k):
        a = instance.anchors[i]
        dg = instance.distances_from(a)
        for j in range(i + 1, k):
            b = instance.anchors[j]
            dh = cycle_dist(k, i, j)
            if dg[b] <= 0:
                raise ValidationError("anchor pair (%d, %d) disconnected" % (a, b))
            r = Fraction(dh, dg[b])
            if r > best:
                best = r
    return best


def subdivide(instance, l):
    """Replace every non-host edge by a path of l edges (l-1 fresh vertices).

    Returns (new_instance, back_map) where back_map[new_vertex] is the
    original vertex id for originals and None for fresh path vertices.
    Original vertices keep their ids, so restricting an assignment of the
    subdivided instance to the first n entries restricts the retraction.
    """
    if l < 1:
        raise ValidationError("subdivision factor must be >= 1")
    host = instance.host_edges()
    edges = []
    nxt = instance.n
    back = list(range(instance.n))
    for u, v in instance.edges:
        if (u, v) in host or l == 1:
            edges.append((u, v))
            continue
        prev = u
        for _ in range(l - 1):
            edges.append((prev, nxt))
            back.append(None)
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    sub = Instance(nxt, edges, instance.anchors)
    return sub, tuple(back)


def gen_grid(m):
    """m x m grid graph; anchors are the 4(m-1) boundary vertices in cycle order."""
    if m < 3:
        raise ValidationError("grid size must be >= 3")
    vid = lambda r, c: r * m + c
    edges = []
    for r in range(m):
        for c in range(m):
            if c + 1 < m:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < m:
                edges.append((vid(r, c), vid(r + 1, c)))
    anchors = ([vid(0, c) for c in range(m)]
               + [vid(r, m - 1) for r in range(1, m)]
               + [vid(m - 1, c) for c in range(m - 2, -1, -1)]
               + [vid(r, 0) for r in range(m - 2, 0, -1)])
    return Instance(m * m, edges, anchors)


def gen_column_deleted_grid(m):
    """gen_grid(m) with every vertical edge not in the first or last column removed."""
    if m < 3:
        raise ValidationError("grid size must be >= 3")
    vid = lambda r, c: r * m + c
    edges = []
    for r in range(m):
        for c in range(m):
            if c + 1 < m:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < m and c in (0, m - 1):
                edges.append((vid(r, c), vid(r + 1, c)))
    grid = gen_grid(m)
    return Instance(m * m, edges, grid.anchors)


def gen_random_planar(n_free, k, seed):
    """Seeded random connected planar instance: the anchor cycle as outer
    boundary, triangulated by a random fan, free vertices inserted one at a
    time into random triangles, then random edge deletions that keep the
    graph connected (and the anchor cycle intact)."""
    import random as _random
    if k < 3:
        raise ValidationError("k must be >= 3")
    rng = _random.Random(seed)
    n = k + n_free
    edges = {_normalize_edge(i, (i + 1) % k) for i in range(k)}
    apex = rng.randrange(k)
    triangles = []
    for i in range(k):
        a, b = i, (i + 1) % k
        if a == apex or b == apex:
            continue
        edges.add(_normalize_edge(apex, a))
        edges.add(_normalize_edge(apex, b))
        triangles.append((apex, a, b))
    for v in range(k, n):
        x, y, z = triangles.pop(rng.randrange(len(triangles)))
        edges.update((_normalize_edge(v, x), _normalize_edge(v, y),
                      _normalize_edge(v, z)))
        triangles.extend([(v, x, y), (v, y, z), (v, x, z)])
    host = {_normalize_edge(i, (i + 1) % k) for i in range(k)}

    def connected(es):
        adj = [[] for _ in range(n)]
        for u, v in es:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    removable = sorted(edges - host)
    rng.shuffle(removable)
    for e in removable:
        if rng.random() < 0.4:
            edges.discard(e)
            if not connected(edges):
                edges.add(e)
    return Instance(n, sorted(edges), tuple(range(k)))


def serialize_instance(instance):
    obj = {
        "n": instance.n,
        "edges": [[u, v] for u, v in instance.edges],
        "anchors": list(instance.anchors),
    }
    if instance.points is not None:
        obj["points"] = [[p[0].numerator, p[0].denominator,
                          p[1].numerator, p[1].denominator]
                         for p in instance.points]
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def parse_instance(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("not valid JSON: %s" % exc) from exc
    if not isinstance(obj, dict):
        raise ValidationError("top level must be a JSON object")
    for field in ("n", "edges", "anchors"):
        if field not in obj:
            raise ValidationError("missing field %r" % field)
    points = None
    if obj.get("points") is not None:
        points = []
        for i, quad in enumerate(obj["points"]):
            if len(quad) != 4:
                raise ValidationError("points[%d] must be [x_num,x_den,y_num,y_den]" % i)
            xn, xd, yn, yd = quad
            points.append((Fraction(xn, xd), Fraction(yn, yd)))
    return Instance(obj["n"], [tuple(e) for e in obj["edges"]],
                    obj["anchors"], points)


def serialize_retraction(instance, retraction):
    rep = stretch(instance, retraction)
    obj = {"assignment": list(retraction.assignment),
           "stretch": rep.max_stretch}
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def parse_retraction(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("not valid JSON: %s" % exc) from exc
    if "assignment" not in obj:
        raise ValidationError("missing field 'assignment'")
    return Retraction(tuple(obj["assignment"])), obj.get("stretch")
