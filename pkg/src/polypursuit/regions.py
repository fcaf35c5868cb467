"""Evader-region bookkeeping: anchors, trimming, third-path splits, sides.

The evader region is the face of the current subdivision that contains the
evader. Its outer walk decomposes into chains: arcs of guarded paths and
arcs of the polygon boundary (which confines the evader for free). The two
"bounding paths" between the anchors u, v are the newest guarded arc and the
complementary arc of the ring; the next dividing path is the shortest
loop-free u-v path in the face's visibility graph combinatorially distinct
from both.

A dividing path can touch hole rings, so a split may produce more than two
walk-faces: faces on the same side of the path meet only at pinch vertices
that lie on guarded paths or on the boundary, and together they form the one
closed connected region the theory talks about. Sides are therefore face
groups labeled by the side of the dividing path each face lies on, and hole
counting attributes every hole ring of the parent — including rings that
dissolved into face boundaries — to exactly one side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import visgraph
from .geom import (
    Face,
    GeometryError,
    Point,
    Polyline,
    RegionShape,
    Where,
    dist,
    key_of,
    orient,
    ring_interior_point,
    split_region,
)
from .kpaths import AnchoredPath, DistinctPathFinder, path_edge_set
from .visgraph import GeodesicPath, VisGraph, dijkstra_path, visgraph_of

BOUNDARY = "boundary"


class RegionError(RuntimeError):
    pass


class EndgameRegion(Exception):
    """Raised by split_by_third when the region admits no further division."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


# ---------------------------------------------------------------------------
# side regions: one or more faces pinned together at pinch vertices


class SideRegion:
    """Closed union of faces on one side of a dividing path.

    Geodesics are computed on the glued visibility graph: the union of the
    per-face graphs, welded at shared (pinch/anchor) vertices. Straight
    sight-lines that would thread exactly through a pinch point between two
    faces are not modeled; paths pass through the shared vertex instead.

    `rails` are polylines that are always traversable even where they leave
    the faces' closure: guard distances live in (side region) union (guarded
    path), and a dividing path can run along a hole wall whose stretch
    belongs to the far side's boundary, not to this side. Without the rail,
    d(e, u) overshoots and the projection construction breaks down.
    """

    def __init__(self, faces: Sequence[Face], rails: Sequence[Polyline] = ()):
        if not faces:
            raise RegionError("side region needs at least one face")
        self.faces = list(faces)
        self.rails = list(rails)
        nodes: list[Point] = []
        index: dict[tuple, int] = {}
        adj: list[list[tuple[int, float]]] = []

        def node_of(p: Point) -> int:
            k = key_of(p)
            i = index.get(k)
            if i is None:
                i = len(nodes)
                index[k] = i
                nodes.append(p)
                adj.append([])
            return i

        def add_edge(ia: int, ib: int, w: float):
            if ia != ib and not any(j == ib for j, _ in adj[ia]):
                adj[ia].append((ib, w))
                adj[ib].append((ia, w))

        for f in self.faces:
            g = visgraph_of(f.shape)
            remap = [node_of(p) for p in g.nodes]
            for a in range(g.node_count):
                for b, w in g.adj[a]:
                    if a < b:
                        add_edge(remap[a], remap[b], w)
        for rail in self.rails:
            ids = [node_of(p) for p in rail.pts]
            for a, b in zip(ids, ids[1:]):
                add_edge(a, b, dist(nodes[a], nodes[b]))
        for lst in adj:
            lst.sort()
        self.nodes = nodes
        self.key_index = index
        self.adj = adj
        self._cache: dict[tuple, GeodesicPath] = {}

    def contains(self, p: Point) -> Where:
        best = Where.EXTERIOR
        for f in self.faces:
            w = f.shape.contains(p)
            if w is Where.INTERIOR:
                return w
            if w is Where.BOUNDARY:
                best = w
        if best is Where.EXTERIOR:
            for rail in self.rails:
                if rail.param_of(p, tol=1e-9) is not None:
                    return Where.BOUNDARY
        return best

    def face_of(self, p: Point) -> Optional[Face]:
        boundary_hit = None
        for f in self.faces:
            w = f.shape.contains(p)
            if w is Where.INTERIOR:
                return f
            if w is Where.BOUNDARY and boundary_hit is None:
                boundary_hit = f
        return boundary_hit

    def _vis(self, p: Point) -> list[tuple[int, float]]:
        out: dict[int, float] = {}
        for f in self.faces:
            shape = f.shape
            if shape.contains(p) is Where.EXTERIOR:
                continue
            g = visgraph_of(shape)
            for q in g.nodes:
                if shape.segment_inside(p, q, skip_contains_check=True):
                    out.setdefault(self.key_index[key_of(q)], dist(p, q))
        return sorted(out.items())

    def geodesic(self, a: Point, b: Point) -> GeodesicPath:
        ka, kb = key_of(a), key_of(b)
        if ka == kb:
            return visgraph.GeodesicPath(visgraph._TrivialLine(a), 0.0, [])
        flip = kb < ka
        ck = (kb, ka) if flip else (ka, kb)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit.reversed() if flip else hit
        if self.contains(a) is Where.EXTERIOR or self.contains(b) is Where.EXTERIOR:
            raise GeometryError(f"geodesic endpoint outside side region: {a} / {b}")
        n = len(self.nodes)
        ia = self.key_index.get(ka)
        ib = self.key_index.get(kb)
        ext = [list(lst) for lst in self.adj] + [[], []]
        sa = n if ia is None else ia
        sb = n + 1 if ib is None else ib
        if ia is None:
            for i, w in self._vis(a):
                ext[n].append((i, w))
                ext[i].append((n, w))
        if ib is None:
            for i, w in self._vis(b):
                ext[n + 1].append((i, w))
                ext[i].append((n + 1, w))
        if ia is None and ib is None:
            for f in self.faces:
                shape = f.shape
                if shape.contains(a) is not Where.EXTERIOR and shape.contains(b) is not Where.EXTERIOR:
                    if shape.segment_inside(a, b):
                        w = dist(a, b)
                        ext[n].append((n + 1, w))
                        ext[n + 1].append((n, w))
                        break
        for lst in ext:
            lst.sort()
        res = dijkstra_path(ext, sa, sb)
        if res is None:
            raise GeometryError(f"side region disconnected between {a} and {b}")
        length, seq = res
        pts = [a if i == n else (b if i == n + 1 else self.nodes[i]) for i in seq]
        from .geom import same_point

        dedup = [pts[0]]
        for p in pts[1:]:
            if not same_point(p, dedup[-1]):
                dedup.append(p)
        gp = (
            visgraph.GeodesicPath(visgraph._TrivialLine(dedup[0]), 0.0, [])
            if len(dedup) == 1
            else visgraph.GeodesicPath(Polyline(dedup), length, None)
        )
        if len(self._cache) > 200_000:
            self._cache.clear()
        self._cache[ck] = gp.reversed() if flip else gp
        return gp


# ---------------------------------------------------------------------------
# evader region


@dataclass
class EvaderRegion:
    """The face currently confining the evader, with labeled boundary chains.

    edge_labels[i] labels outer edge (outer[i] -> outer[i+1]): either the id
    of the guarded path it belongs to or BOUNDARY. anchors are the trimmed
    endpoints of the newest dividing arc (the span of the dividing path's
    edges that are not shared with older chains); the two u-v paths bounding
    the region are that arc and the complementary arc of the ring.
    """

    face: Face
    edge_labels: list[str]
    hole_labels: list[list[str]]
    anchors: tuple[Point, Point]
    newest_label: str
    newest_edge: int = 0  # a ring edge index inside the newest arc

    @property
    def shape(self) -> RegionShape:
        return self.face.shape

    @property
    def vertex_count(self) -> int:
        # distinct vertices (pinch vertices appear on two rings)
        return len({key_of(p) for p in self.shape.all_vertices()})

    def count_holes(self) -> int:
        return len(self.face.holes)

    def guard_labels(self) -> list[str]:
        out = []
        for lbl in self.edge_labels + [l for ring in self.hole_labels for l in ring]:
            if lbl != BOUNDARY and lbl not in out:
                out.append(lbl)
        return out

    def arcs(self) -> tuple[list[int], list[int]]:
        """Anchor-to-anchor split of the outer ring (as vertex indices).

        Returns (newest arc indices, complementary arc indices), both ordered
        from anchors[0] to anchors[1].
        """
        ring = self.face.outer
        n = len(ring)
        ia = _ring_index(ring, self.anchors[0])
        ib = _ring_index(ring, self.anchors[1])
        fwd = []
        i = ia
        while True:
            fwd.append(i)
            if i == ib:
                break
            i = (i + 1) % n
        bwd = []
        i = ia
        while True:
            bwd.append(i)
            if i == ib:
                break
            i = (i - 1) % n
        # the newest arc is whichever traverses the marked newest edge
        def has_marker(arc, step):
            for k in range(len(arc) - 1):
                e = arc[k] if step == 1 else (arc[k] - 1) % n
                if e == self.newest_edge:
                    return True
            return False

        if has_marker(fwd, 1):
            return fwd, bwd
        if has_marker(bwd, -1):
            return bwd, fwd
        raise RegionError("anchors do not bound the newest arc")


def _ring_index(ring: Sequence[Point], p: Point) -> int:
    k = key_of(p)
    for i, q in enumerate(ring):
        if key_of(q) == k:
            return i
    raise RegionError(f"point {p} is not a ring vertex")


def count_holes(region) -> int:
    if isinstance(region, EvaderRegion):
        return region.count_holes()
    if isinstance(region, Face):
        return len(region.holes)
    shape = region.shape if hasattr(region, "shape") else region
    return len(shape.holes)


# ---------------------------------------------------------------------------
# anchors


def choose_anchors(env) -> tuple[int, int]:
    """Deterministic anchor pair: the non-adjacent outer-boundary vertex pair
    maximizing geodesic distance; ties broken by smallest (i, j)."""
    g = visgraph_of(env)
    outer = env.shape.outer if hasattr(env, "shape") else env.outer
    m = len(outer)
    dmat = g.node_distances()
    best = None
    for i in range(m):
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue  # ring neighbors
            d = dmat[i][j]
            if best is None or d > best[0] + 1e-12:
                best = (d, i, j)
    if best is None:
        raise RegionError("outer boundary has no non-adjacent vertex pair")
    return best[1], best[2]


def trim_common_affixes(p1, p2):
    """Strip the shared prefix and suffix of two same-anchored node paths.

    Returns (p1', p2', u', v'). The trimmed paths must share only their new
    anchors; identical paths are rejected.
    """
    n1 = list(p1.nodes if isinstance(p1, AnchoredPath) else p1)
    n2 = list(p2.nodes if isinstance(p2, AnchoredPath) else p2)
    if n1 == n2:
        raise RegionError("paths are identical; nothing to trim")
    if n1[0] != n2[0] or n1[-1] != n2[-1]:
        raise RegionError("paths do not share anchors")
    pre = 0
    while pre < min(len(n1), len(n2)) - 1 and n1[pre + 1] == n2[pre + 1]:
        pre += 1
    suf = 0
    while suf < min(len(n1), len(n2)) - pre - 1 and n1[-2 - suf] == n2[-2 - suf]:
        suf += 1
    t1 = n1[pre : len(n1) - suf]
    t2 = n2[pre : len(n2) - suf]
    shared = set(t1[1:-1]) & set(t2[1:-1])
    if shared:
        raise RegionError(f"paths still share interior nodes {sorted(shared)} after trimming")
    return t1, t2, t1[0], t1[-1]


# ---------------------------------------------------------------------------
# third-path split


@dataclass
class SplitOutcome:
    third: AnchoredPath
    faces: list[Face]
    side_plus: list[Face]
    side_minus: list[Face]
    holes_plus: int
    holes_minus: int
    case: str  # 'both-holed' | 'one-hole-free'
    evader_side: int
    evader_face: Face
    hole_free_side: Optional[int]  # +1/-1 when that side is hole-free
    diff_subpath: Optional[list[Point]]  # differing part of the dividing path
    two_edge: Optional[tuple[Point, Point, Point]]  # set when the subpath is 2 edges
    # whether an older guarded path (not just polygon boundary) bounds the
    # hole-free side; the two-edge structure is guaranteed only then
    hole_free_path_bounded: bool = False
    side_count: int = 2

    @property
    def apex(self) -> Point:
        """Eviction origin: the middle vertex of the differing subpath."""
        sub = self.diff_subpath or [p for p in self.third.polyline]
        return sub[len(sub) // 2]

    def side_faces(self, sign: int) -> list[Face]:
        return self.side_plus if sign > 0 else self.side_minus

    def side_region(self, sign: int) -> SideRegion:
        return SideRegion(self.side_faces(sign), rails=[self.third.polyline])


def split_by_third(region: EvaderRegion, e: Point, finder: Optional[DistinctPathFinder] = None) -> SplitOutcome:
    """Compute the next dividing path and classify the split.

    Raises EndgameRegion when the region is hole-free or no distinct path
    exists. The evader's side is decided by face membership of e.
    """
    if region.count_holes() == 0:
        raise EndgameRegion("region is hole-free")
    finder = finder or DistinctPathFinder()
    g = visgraph_of(region.shape)
    ring = region.face.outer
    arc_new, arc_rest = region.arcs()
    u = g.key_index[key_of(ring[arc_new[0]])]
    v = g.key_index[key_of(ring[arc_new[-1]])]
    ex1 = [g.key_index[key_of(ring[i])] for i in arc_new]
    ex2 = [g.key_index[key_of(ring[i])] for i in arc_rest]
    third = finder.next_distinct(g, u, v, [ex1, ex2])
    if third is None:
        raise EndgameRegion("no distinct dividing path exists")
    faces = split_region(region.face, third.polyline)

    side_plus = [f for f in faces if f.path_side == 1]
    side_minus = [f for f in faces if f.path_side == -1]
    unassigned = [f for f in faces if f.path_side is None]
    if unassigned or not side_plus or not side_minus:
        raise RegionError(
            f"split did not produce two sides (plus={len(side_plus)}, minus={len(side_minus)}, "
            f"unlabeled={len(unassigned)})"
        )

    holes_plus = sum(len(f.holes) for f in side_plus)
    holes_minus = sum(len(f.holes) for f in side_minus)
    hp_extra, hm_extra = _attribute_dissolved_holes(region, faces, third)
    holes_plus += hp_extra
    holes_minus += hm_extra

    eface = _face_of(faces, e)
    eside = eface.path_side

    if holes_plus >= 1 and holes_minus >= 1:
        case = "both-holed"
        hole_free = None
        diff = None
        two_edge = None
        path_bounded = False
    else:
        case = "one-hole-free"
        hole_free = 1 if holes_plus == 0 else -1
        diff = _diff_subpath(g, third, [ex1, ex2])
        # the two-edge structure holds when the hole-free side is bounded by
        # a true dividing path; polygon-boundary chains (the special-cased
        # honorary minimal paths) can force longer detours
        two_edge = tuple(diff) if len(diff) == 3 else None
        path_bounded = _side_has_old_path(region, side_plus if hole_free == 1 else side_minus)
    return SplitOutcome(
        third=third,
        faces=faces,
        side_plus=side_plus,
        side_minus=side_minus,
        holes_plus=holes_plus,
        holes_minus=holes_minus,
        case=case,
        evader_side=eside,
        evader_face=eface,
        hole_free_side=hole_free,
        diff_subpath=diff,
        two_edge=two_edge,
        hole_free_path_bounded=path_bounded,
    )


def _side_has_old_path(region: EvaderRegion, faces: Sequence[Face]) -> bool:
    """Does an older guarded path (not just boundary) bound these faces?"""
    for f in faces:
        for tags in list(f.sources) + [t for ring in f.hole_sources for t in ring]:
            for t in tags:
                if t[0] == "outer" and region.edge_labels[t[1]] != BOUNDARY:
                    return True
                if t[0] == "hole" and region.hole_labels[t[1]][t[2]] != BOUNDARY:
                    return True
    return False


def _face_of(faces: Sequence[Face], p: Point) -> Face:
    boundary_hit = None
    for f in faces:
        w = f.shape.contains(p)
        if w is Where.INTERIOR:
            return f
        if w is Where.BOUNDARY and boundary_hit is None:
            boundary_hit = f
    if boundary_hit is not None:
        return boundary_hit
    raise RegionError(f"evader {p} is in no face of the split")


def _attribute_dissolved_holes(region: EvaderRegion, faces: Sequence[Face], third: AnchoredPath):
    """Attribute parent hole rings that dissolved into face boundaries.

    A parent hole that is not inherited as a stored hole of any face was
    touched by the dividing path at two or more points; it belongs to the
    side whose faces carry its edges (unanimous), or — when the path runs
    along it and both sides touch it — to the side its interior lies on.
    """
    inherited = set()
    for f in faces:
        for ring_sources in f.hole_sources:
            for tags in ring_sources:
                for t in tags:
                    if t[0] == "hole":
                        inherited.add(t[1])
    extra_plus = extra_minus = 0
    for k in range(len(region.face.holes)):
        if k in inherited:
            continue
        sides = set()
        for f in faces:
            if any(t[0] == "hole" and t[1] == k for tags in f.sources for t in tags):
                sides.add(f.path_side)
        sides.discard(None)
        if len(sides) == 1:
            side = sides.pop()
        else:
            # path runs along the ring: locate the hole interior vs the path
            inner = ring_interior_point(region.face.holes[k])
            side = _side_of_point(third.polyline, inner)
        if side == 1:
            extra_plus += 1
        else:
            extra_minus += 1
    return extra_plus, extra_minus


def _side_of_point(pl: Polyline, p: Point) -> int:
    """Side of a polyline the point is on, judged from the nearest segment."""
    best = None
    for i in range(len(pl.pts) - 1):
        a, b = pl.pts[i], pl.pts[i + 1]
        ax, ay, bx, by = a.x, a.y, b.x, b.y
        seg2 = (bx - ax) ** 2 + (by - ay) ** 2
        t = min(1.0, max(0.0, ((p.x - ax) * (bx - ax) + (p.y - ay) * (by - ay)) / seg2))
        qx, qy = ax + t * (bx - ax), ay + t * (by - ay)
        d = (p.x - qx) ** 2 + (p.y - qy) ** 2
        if best is None or d < best[0]:
            best = (d, orient(a, b, p))
    return 1 if best[1] > 0 else -1


def _diff_subpath(g: VisGraph, third: AnchoredPath, excluded: list[list[int]]) -> list[Point]:
    """Differing subpath of the dividing path vs the bounding path it hugs.

    Trims the dividing path against each bounding u-v path and keeps the
    shortest differing subpath; its middle vertex serves as the eviction
    apex. When the hole-free side is bounded by a true path this subpath has
    exactly two edges (x, y), (y, z) with y the apex.
    """
    best = None
    for ex in excluded:
        try:
            t3, _tex, _u, _v = trim_common_affixes(third.nodes, ex)
        except RegionError:
            continue
        if best is None or len(t3) < len(best):
            best = t3
    if best is None:
        best = third.nodes
    return [g.nodes[i] for i in best]


# ---------------------------------------------------------------------------
# region construction from splits


def initial_region(env, pi1: AnchoredPath, label: str, e: Point) -> tuple[EvaderRegion, SideRegion, list[Face]]:
    """Split the arena along the first guarded path and confine the evader.

    Returns (the evader's region, the full evader-side region used by the
    guard, all faces of the split).
    """
    faces = split_region(env, pi1.polyline)
    eface = _face_of(faces, e)
    side = [f for f in faces if f.path_side == eface.path_side]
    region = region_from_face(eface, None, None, label, pi1.polyline)
    return region, SideRegion(side, rails=[pi1.polyline]), faces


def region_from_face(
    face: Face,
    parent_edge_labels: Optional[list[str]],
    parent_hole_labels: Optional[list[list[str]]],
    new_label: str,
    path: Polyline,
) -> EvaderRegion:
    """Label a split face's edges and locate the new (trimmed) anchors.

    Label precedence per edge: polygon boundary never needs a guard; then the
    new path claims every edge it covers (including stretches shared with an
    older guarded path, whose guard thereby becomes releasable); an edge of
    an older path keeps its label only where the new path does not run. The
    anchors are the extreme arc-length parameters, along the dividing path,
    of the face's path-tagged edges. Stretches the path shares with the
    surviving chain never reach the face ring (the degenerate spike between
    them is pinched off), so the paper's affix trimming happens by itself,
    while shared stretches with the superseded chain stay part of the arc —
    the region must remain bounded by the full new path plus one old chain,
    or guards pile up across rounds. Grazing detours where the face boundary
    walks around a hole the path touches sit between tagged stretches and
    are bridged by the parameter span.
    """

    def label_of(tags: frozenset) -> str:
        ring_labels = set()
        has_path = False
        for t in tags:
            if t[0] == "path":
                has_path = True
            elif t[0] == "outer":
                ring_labels.add(BOUNDARY if parent_edge_labels is None else parent_edge_labels[t[1]])
            elif t[0] == "hole":
                ring_labels.add(
                    BOUNDARY if parent_hole_labels is None else parent_hole_labels[t[1]][t[2]]
                )
        if BOUNDARY in ring_labels:
            return BOUNDARY
        if has_path:
            return new_label
        if ring_labels:
            return sorted(ring_labels)[0]
        return new_label

    edge_labels = [label_of(tags) for tags in face.sources]
    hole_labels = [[label_of(tags) for tags in ring] for ring in face.hole_sources]

    ring = face.outer
    n = len(ring)
    smin = None
    smax = None
    marker = None
    for i in range(n):
        tags = face.sources[i]
        if not any(t[0] == "path" for t in tags):
            continue
        for q in (ring[i], ring[(i + 1) % n]):
            s = path.param_of(q, tol=1e-7)
            if s is None:
                raise RegionError(f"path-edge endpoint {q} not on the dividing path")
            if smin is None or s < smin[0]:
                smin = (s, q, i)
            if smax is None or s > smax[0]:
                smax = (s, q, i)
        if marker is None:
            marker = i
    if smin is None:
        raise RegionError("face has no edge from the dividing path")
    anchors = (smin[1], smax[1])
    if key_of(anchors[0]) == key_of(anchors[1]):
        raise RegionError("degenerate anchors on the dividing path")
    return EvaderRegion(
        face=face,
        edge_labels=edge_labels,
        hole_labels=hole_labels,
        anchors=anchors,
        newest_label=new_label,
        newest_edge=marker,
    )


def child_region(outcome: SplitOutcome, parent: EvaderRegion, new_label: str, face: Optional[Face] = None) -> EvaderRegion:
    face = face if face is not None else outcome.evader_face
    return region_from_face(face, parent.edge_labels, parent.hole_labels, new_label, outcome.third.polyline)
