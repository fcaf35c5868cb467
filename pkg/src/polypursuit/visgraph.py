"""Visibility graphs and geodesic shortest paths in closed polygonal regions.

The visibility graph has one node per distinct region vertex (outer ring
first, then hole rings, in ring order) and an edge wherever the connecting
segment stays in the closed region. Geodesic queries between arbitrary
interior points inject the endpoints as temporary nodes. Construction is the
quadratic all-pairs test; regions at this package's scale are small enough
that output-sensitive algorithms would be an optimization, not a need.

Shortest paths are deterministic: among equal-length paths the
lexicographically smallest node-index sequence wins.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .geom import GeometryError, Point, Polyline, RegionShape, Where, dist, key_of


@dataclass
class GeodesicPath:
    polyline: Polyline
    length: float
    nodes: Optional[list[int]] = None  # interior graph nodes, when known

    def reversed(self) -> "GeodesicPath":
        return GeodesicPath(self.polyline.reversed(), self.length, None if self.nodes is None else self.nodes[::-1])


class VisGraph:
    """Weighted undirected visibility graph over a region's vertices.

    Can also hold an abstract weighted graph (region is None); geometric
    operations such as self-crossing filters are skipped for those.
    """

    def __init__(self, nodes: list[Point] | None, adj: list[list[tuple[int, float]]], region: Optional[RegionShape]):
        self.nodes = nodes or []
        self.adj = adj
        self.region = region
        self.key_index = {key_of(p): i for i, p in enumerate(self.nodes)} if nodes else {}
        self._query_cache: dict[tuple, GeodesicPath] = {}
        self._node_dist: Optional[list[list[float]]] = None

    @property
    def node_count(self) -> int:
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> set[tuple[int, int]]:
        out = set()
        for i, lst in enumerate(self.adj):
            for j, _w in lst:
                out.add((min(i, j), max(i, j)))
        return out

    def has_edge(self, i: int, j: int) -> bool:
        return any(k == j for k, _ in self.adj[i])

    def weight(self, i: int, j: int) -> float:
        for k, w in self.adj[i]:
            if k == j:
                return w
        raise KeyError((i, j))

    @classmethod
    def from_weighted_edges(cls, n: int, edges: Sequence[tuple[int, int, float]], nodes: Optional[list[Point]] = None):
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for i, j, w in edges:
            adj[i].append((j, float(w)))
            adj[j].append((i, float(w)))
        for lst in adj:
            lst.sort()
        return cls(nodes, adj, None)

    def node_distances(self) -> list[list[float]]:
        """All-pairs node-to-node shortest distances (cached)."""
        if self._node_dist is None:
            self._node_dist = [dijkstra_lengths(self.adj, s) for s in range(self.node_count)]
        return self._node_dist


def build_visgraph(region) -> VisGraph:
    """Complete visibility graph of a region (deterministic ring-order nodes)."""
    shape: RegionShape = region.shape if hasattr(region, "shape") else region
    if abs(shape.area) < 1e-12:
        raise GeometryError("degenerate region: zero area")
    nodes: list[Point] = []
    seen = set()
    for p in shape.all_vertices():
        k = key_of(p)
        if k not in seen:
            seen.add(k)
            nodes.append(p)
    n = len(nodes)
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if shape.segment_inside(nodes[i], nodes[j], skip_contains_check=True):
                w = dist(nodes[i], nodes[j])
                adj[i].append((j, w))
                adj[j].append((i, w))
    for lst in adj:
        lst.sort()
    return VisGraph(nodes, adj, shape)


def visgraph_of(region) -> VisGraph:
    """Memoized visibility graph for a region object."""
    shape = region.shape if hasattr(region, "shape") else region
    g = getattr(shape, "_visgraph", None)
    if g is None:
        g = build_visgraph(shape)
        shape._visgraph = g
    return g


def dijkstra_lengths(adj, source: int) -> list[float]:
    n = len(adj)
    distv = [math.inf] * n
    distv[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > distv[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < distv[v]:
                distv[v] = nd
                heapq.heappush(heap, (nd, v))
    return distv


def dijkstra_path(adj, source: int, target: int, banned_nodes=frozenset(), banned_edges=frozenset()):
    """Shortest path with deterministic lexicographic tie-breaking.

    Heap entries carry the full node sequence so equal-length paths pop in
    lexicographic order; the first finalized path to the target is therefore
    the canonical one. Returns (length, node list) or None.
    """
    best: dict[int, tuple[float, tuple[int, ...]]] = {}
    heap = [(0.0, (source,))]
    while heap:
        d, seq = heapq.heappop(heap)
        u = seq[-1]
        if u == target:
            return d, list(seq)
        b = best.get(u)
        if b is not None and (b[0], b[1]) < (d, seq):
            continue
        for v, w in adj[u]:
            if v in banned_nodes or v in seq:
                continue
            if banned_edges and (min(u, v), max(u, v)) in banned_edges:
                continue
            nd = d + w
            nseq = seq + (v,)
            b = best.get(v)
            if b is None or (nd, nseq) < b:
                best[v] = (nd, nseq)
                heapq.heappush(heap, (nd, nseq))
    return None


def _visible_nodes(shape: RegionShape, g: VisGraph, p: Point) -> list[tuple[int, float]]:
    out = []
    for i, q in enumerate(g.nodes):
        if shape.segment_inside(p, q, skip_contains_check=True):
            out.append((i, dist(p, q)))
    return out


def geodesic(region, a: Point, b: Point) -> GeodesicPath:
    """Geodesic (shortest constrained path) between two points of the region.

    Query points are injected as temporary graph nodes; results are cached on
    the region's visibility graph keyed by quantized endpoints.
    """
    shape: RegionShape = region.shape if hasattr(region, "shape") else region
    g = visgraph_of(shape)
    ka, kb = key_of(a), key_of(b)
    if ka == kb:
        return GeodesicPath(_TrivialLine(a), 0.0, [])
    flip = kb < ka
    ck = (kb, ka) if flip else (ka, kb)
    hit = g._query_cache.get(ck)
    if hit is not None:
        return hit.reversed() if flip else hit
    for p, name in ((a, "a"), (b, "b")):
        if shape.contains(p) is Where.EXTERIOR:
            raise GeometryError(f"geodesic endpoint {name}={p} lies outside the region")
    res = _geodesic_uncached(shape, g, a, b)
    if len(g._query_cache) > 200_000:
        g._query_cache.clear()
    g._query_cache[ck] = res.reversed() if flip else res
    return res


class _TrivialLine:
    """Zero-length 'polyline' for coincident endpoints."""

    def __init__(self, p: Point):
        self.pts = [p, p]
        self.length = 0.0

    def point_at(self, s: float) -> Point:
        return self.pts[0]

    def param_of(self, p: Point, tol: float = 1e-6):
        from .geom import same_point

        return 0.0 if same_point(p, self.pts[0], tol) else None

    def reversed(self):
        return self

    def __iter__(self):
        return iter(self.pts)

    def __len__(self):
        return 2


def _geodesic_uncached(shape: RegionShape, g: VisGraph, a: Point, b: Point) -> GeodesicPath:
    n = g.node_count
    ia = g.key_index.get(key_of(a))
    ib = g.key_index.get(key_of(b))
    # adjacency extended with temporary nodes n (=a) and n+1 (=b)
    ext: list[list[tuple[int, float]]] = [list(lst) for lst in g.adj] + [[], []]
    sa = n if ia is None else ia
    sb = n + 1 if ib is None else ib
    if ia is None:
        for i, w in _visible_nodes(shape, g, a):
            ext[n].append((i, w))
            ext[i].append((n, w))
    if ib is None:
        for i, w in _visible_nodes(shape, g, b):
            ext[n + 1].append((i, w))
            ext[i].append((n + 1, w))
    if ia is None and ib is None and shape.segment_inside(a, b):
        w = dist(a, b)
        ext[n].append((n + 1, w))
        ext[n + 1].append((n, w))
    for lst in ext:
        lst.sort()
    res = dijkstra_path(ext, sa, sb)
    if res is None:
        raise GeometryError(f"no geodesic between {a} and {b} (disconnected region?)")
    length, seq = res
    pts = [a if i == n else (b if i == n + 1 else g.nodes[i]) for i in seq]
    interior = [i for i in seq if i < n]
    # collapse consecutive duplicates (endpoint coinciding with a node)
    from .geom import same_point

    dedup = [pts[0]]
    for p in pts[1:]:
        if not same_point(p, dedup[-1]):
            dedup.append(p)
    if len(dedup) == 1:
        return GeodesicPath(_TrivialLine(dedup[0]), 0.0, interior)
    return GeodesicPath(Polyline(dedup), length, interior)


def geodesic_length(region, a: Point, b: Point) -> float:
    return geodesic(region, a, b).length


def diameter(env) -> float:
    """Max geodesic distance over all vertex pairs of the region."""
    g = visgraph_of(env)
    best = 0.0
    for row in g.node_distances():
        m = max(row)
        if not math.isfinite(m):
            raise GeometryError("region visibility graph is disconnected")
        best = max(best, m)
    return best
