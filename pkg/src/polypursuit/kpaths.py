"""Loop-free k-shortest anchored paths and combinatorial distinctness.

Enumeration is Yen's deviation scheme restricted to simple paths, with the
candidate heap keyed (length, node-sequence) so that equal-length paths come
out in lexicographic order. Distinctness between paths means differing in at
least one visibility edge as an unordered node pair; traversing the same edge
set in reverse is not distinct. Candidates that self-cross geometrically are
skipped (the true next path never does; the filter exists as a guard and its
firing is counted so tests can assert it stays silent).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .geom import Point, Polyline, dist, on_segment, same_point, segments_intersect
from .visgraph import VisGraph, dijkstra_path


class PathError(ValueError):
    pass


@dataclass
class AnchoredPath:
    """A loop-free path between two anchor nodes of a visibility graph."""

    anchors: tuple[int, int]
    nodes: list[int]
    length: float
    polyline: Optional[Polyline] = None
    rank: Optional[int] = None

    def edge_set(self) -> frozenset:
        return path_edge_set(self.nodes)

    def __repr__(self):
        return f"AnchoredPath(rank={self.rank}, len={self.length:.4f}, nodes={self.nodes})"


def path_edge_set(nodes: Sequence[int]) -> frozenset:
    return frozenset((min(a, b), max(a, b)) for a, b in zip(nodes, nodes[1:]))


def path_length(g: VisGraph, nodes: Sequence[int]) -> float:
    return sum(g.weight(a, b) for a, b in zip(nodes, nodes[1:]))


def _make_path(g: VisGraph, nodes: list[int], rank: Optional[int]) -> AnchoredPath:
    pl = Polyline([g.nodes[i] for i in nodes]) if g.nodes else None
    return AnchoredPath((nodes[0], nodes[-1]), nodes, path_length(g, nodes), pl, rank)


def shortest_path(g: VisGraph, u: int, v: int) -> AnchoredPath:
    """Rank-1 shortest path; deterministic under the lexicographic tie-break."""
    res = dijkstra_path(g.adj, u, v)
    if res is None:
        raise PathError(f"nodes {u} and {v} are disconnected")
    _length, nodes = res
    return _make_path(g, nodes, rank=1)


def simple_paths_in_order(g: VisGraph, u: int, v: int) -> Iterator[AnchoredPath]:
    """All simple u-v paths in increasing (length, node sequence) order."""
    first = dijkstra_path(g.adj, u, v)
    if first is None:
        return
    yielded: list[list[int]] = []
    emitted: set[tuple[int, ...]] = set()
    heap: list[tuple[float, tuple[int, ...]]] = [(first[0], tuple(first[1]))]
    pushed = {tuple(first[1])}
    while heap:
        length, seq = heapq.heappop(heap)
        if seq in emitted:
            continue
        emitted.add(seq)
        nodes = list(seq)
        yielded.append(nodes)
        yield _make_path(g, nodes, rank=len(yielded))
        # deviations from every spur node of the path just produced
        for i in range(len(nodes) - 1):
            root = nodes[: i + 1]
            banned_edges = set()
            for p in yielded:
                if p[: i + 1] == root and len(p) > i + 1:
                    banned_edges.add((min(p[i], p[i + 1]), max(p[i], p[i + 1])))
            banned_nodes = frozenset(root[:-1])
            spur = dijkstra_path(g.adj, nodes[i], v, banned_nodes, frozenset(banned_edges))
            if spur is None:
                continue
            cand = root[:-1] + spur[1]
            tcand = tuple(cand)
            if tcand in pushed:
                continue
            pushed.add(tcand)
            heapq.heappush(heap, (path_length(g, cand), tcand))


def is_self_crossing(p: AnchoredPath | Polyline | Sequence[Point]) -> bool:
    """True iff two non-adjacent segments intersect or the path revisits a point."""
    if isinstance(p, AnchoredPath):
        if p.polyline is None:
            return False
        pts = p.polyline.pts
    elif isinstance(p, Polyline):
        pts = p.pts
    else:
        pts = [Point(float(q[0]), float(q[1])) for q in p]
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            if same_point(pts[i], pts[j]):
                return True
    for i in range(n - 1):
        a, b = pts[i], pts[i + 1]
        for j in range(i + 1, n - 1):
            c, d = pts[j], pts[j + 1]
            if j == i + 1:
                # neighbors: only the shared endpoint may touch
                if on_segment(a, c, d) and not same_point(a, d) and not same_point(a, c):
                    return True
                if on_segment(d, a, b) and not same_point(d, a) and not same_point(d, b):
                    return True
                continue
            if segments_intersect((a, b), (c, d), "closed"):
                return True
    return False


@dataclass
class DistinctPathFinder:
    """next_distinct_path with bookkeeping for the crossing-filter counter."""

    crossing_filter_hits: int = 0

    def next_distinct(
        self, g: VisGraph, u: int, v: int, excluded: Sequence[AnchoredPath | Sequence[int]]
    ) -> Optional[AnchoredPath]:
        excluded_sets = []
        for e in excluded:
            nodes = e.nodes if isinstance(e, AnchoredPath) else list(e)
            excluded_sets.append(path_edge_set(nodes))
        for cand in simple_paths_in_order(g, u, v):
            if any(cand.edge_set() == es for es in excluded_sets):
                continue
            if cand.polyline is not None and is_self_crossing(cand):
                self.crossing_filter_hits += 1
                continue
            return cand
        return None


_default_finder = DistinctPathFinder()


def next_distinct_path(
    g: VisGraph, u: int, v: int, excluded: Sequence[AnchoredPath | Sequence[int]]
) -> Optional[AnchoredPath]:
    """Shortest loop-free u-v path combinatorially distinct from all excluded."""
    return _default_finder.next_distinct(g, u, v, excluded)
