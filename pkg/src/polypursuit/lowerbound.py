"""Corridor polygons: planar graphs turned into arenas needing three pursuers.

Every edge of an embedded planar graph becomes a corridor whose internal
gateway-to-gateway geodesic is exactly one unit; each bounded face of the
graph becomes a hole. Straight corridors realize the longest edges; shorter
edges are stretched with a sawtooth detour bulging into one incident face,
with the tooth amplitude solved numerically so the corridor's internal
geodesic (walls and corner cutting included) lands on one.

Junctions are small polygonal pads of gateway radius r: the center-to-center
distance through a corridor is 1 + 2r, so the polygon's geodesic metric
reproduces the graph metric up to that per-hop constant.

On graphs with minimum degree three and no 3- or 4-cycles (the dodecahedron
is the smallest planar one) the resulting arena defeats any two pursuers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from . import visgraph
from .geom import GeometryError, Point, PolygonEnv, Polyline, RegionShape, dist, segments_intersect


class ConstructionError(GeometryError):
    pass


# ---------------------------------------------------------------------------
# embedded graphs


@dataclass
class EmbeddedGraph:
    """Straight-line planar embedding: vertex positions plus an edge list."""

    vertices: list[Point]
    edges: list[tuple[int, int]]

    def __post_init__(self):
        self.vertices = [Point(float(p[0]), float(p[1])) for p in self.vertices]
        self.edges = [(min(a, b), max(a, b)) for a, b in self.edges]
        if len(set(self.edges)) != len(self.edges):
            raise ConstructionError("duplicate edges")

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def min_degree(self) -> int:
        return min(len(ns) for ns in self.neighbors())

    def girth(self, limit: int = 12) -> int:
        """Shortest cycle length (BFS from every vertex; fine at this scale)."""
        from collections import deque

        adj = self.neighbors()
        best = math.inf
        for s in range(len(self.vertices)):
            depth = {s: 0}
            parent = {s: -1}
            q = deque([s])
            while q:
                u = q.popleft()
                if depth[u] * 2 > limit:
                    break
                for v in adj[u]:
                    if v == parent[u]:
                        continue
                    if v in depth:
                        best = min(best, depth[u] + depth[v] + 1)
                    else:
                        depth[v] = depth[u] + 1
                        parent[v] = u
                        q.append(v)
        return int(best) if math.isfinite(best) else -1

    def check_planar_embedding(self):
        """No two edge segments properly cross; no vertex interior to an edge."""
        vs, es = self.vertices, self.edges
        for i in range(len(es)):
            a, b = es[i]
            for j in range(i + 1, len(es)):
                c, d = es[j]
                if len({a, b, c, d}) < 4:
                    continue
                if segments_intersect((vs[a], vs[b]), (vs[c], vs[d]), "closed"):
                    raise ConstructionError(f"edges {es[i]} and {es[j]} intersect in the embedding")
        from .geom import on_segment

        for v, p in enumerate(vs):
            for (a, b) in es:
                if v in (a, b):
                    continue
                if on_segment(p, vs[a], vs[b]):
                    raise ConstructionError(f"vertex {v} lies on edge {(a, b)}")

    def to_json(self) -> dict:
        return {"vertices": [[p.x, p.y] for p in self.vertices], "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "EmbeddedGraph":
        return cls([Point(*p) for p in data["vertices"]], [tuple(e) for e in data["edges"]])


def dodecahedron() -> EmbeddedGraph:
    """The dodecahedral graph (V=20, E=30, degree 3, girth 5) in a fixed
    planar straight-line layout: outer pentagon, a decagon, inner pentagon."""
    A, R, D = 1.0, 0.65, 0.30
    vs: list[Point] = []
    for k in range(5):  # 0..4 outer pentagon
        th = math.radians(90 + 72 * k)
        vs.append(Point(A * math.cos(th), A * math.sin(th)))
    for k in range(5):  # 5..9 decagon vertices aligned with the outer ring
        th = math.radians(90 + 72 * k)
        vs.append(Point(R * math.cos(th), R * math.sin(th)))
    for k in range(5):  # 10..14 decagon vertices on the offset angles
        th = math.radians(90 + 36 + 72 * k)
        vs.append(Point(R * math.cos(th), R * math.sin(th)))
    for k in range(5):  # 15..19 inner pentagon
        th = math.radians(90 + 36 + 72 * k)
        vs.append(Point(D * math.cos(th), D * math.sin(th)))
    es = []
    for k in range(5):
        es.append((k, (k + 1) % 5))  # outer cycle
        es.append((k, 5 + k))  # spoke
        es.append((5 + k, 10 + k))  # decagon
        es.append((5 + (k + 1) % 5, 10 + k))  # decagon
        es.append((10 + k, 15 + k))  # spoke
        es.append((15 + k, 15 + (k + 1) % 5))  # inner cycle
    g = EmbeddedGraph(vs, es)
    g.check_planar_embedding()
    return g


def square_graph(side: float = 1.0) -> EmbeddedGraph:
    vs = [Point(0, 0), Point(side, 0), Point(side, side), Point(0, side)]
    return EmbeddedGraph(vs, [(0, 1), (1, 2), (2, 3), (3, 0)])


def double_square_graph(side: float = 1.0) -> EmbeddedGraph:
    """Two unit squares sharing an edge (6 vertices, 7 edges, 2 bounded faces)."""
    s = side
    vs = [Point(0, 0), Point(s, 0), Point(2 * s, 0), Point(2 * s, s), Point(s, s), Point(0, s)]
    return EmbeddedGraph(vs, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)])


# ---------------------------------------------------------------------------
# corridor construction


@dataclass
class Corridor:
    edge: tuple[int, int]
    centerline: Polyline  # gateway midpoint (a side) -> gateway midpoint (b side)
    route: Polyline  # junction center a -> junction center b
    wall_left: list[Point]  # left of the a->b direction
    wall_right: list[Point]
    internal_length: float  # gateway-to-gateway geodesic inside the strip
    strip: RegionShape = None  # the corridor's own simple polygon
    amplitude: float = 0.0  # solved tooth amplitude (0 for straight)


@dataclass
class CorridorMap:
    graph: EmbeddedGraph
    scale: float
    width: float
    radius: float
    centers: list[Point]
    polygon: PolygonEnv
    junction_disks: dict[int, tuple[Point, float]]
    corridors: dict[tuple[int, int], Corridor]
    hop: float  # center-to-center route length of a straight corridor (1 + 2r)
    D: list[list[float]] = field(default_factory=list)  # junction metric
    NEXT: list[list[int]] = field(default_factory=list)

    # -- feature location --------------------------------------------------

    def locate(self, p: Point):
        """('junction', v) or ('corridor', (a, b), t) with t the route arc from a."""
        cache = self.__dict__.setdefault("_locate_cache", {})
        key = (p.x, p.y)
        hit = cache.get(key)
        if hit is not None:
            return hit
        out = self._locate(p)
        if len(cache) > 100_000:
            cache.clear()
        cache[key] = out
        return out

    def _locate(self, p: Point):
        best_j = None
        for v, (c, rad) in self.junction_disks.items():
            d = dist(p, c)
            if d <= rad + 1e-9 and (best_j is None or d < best_j[0]):
                best_j = (d, v)
        if best_j is not None:
            return ("junction", best_j[1])
        best = None
        for e, cor in self.corridors.items():
            s = cor.route.param_of(p, tol=self.width)
            if s is None:
                continue
            q = cor.route.point_at(s)
            d = dist(p, q)
            if best is None or d < best[0]:
                best = (d, e, s)
        if best is not None:
            return ("corridor", best[1], best[2])
        # fall back to the nearest junction center
        v = min(self.junction_disks, key=lambda v: dist(p, self.junction_disks[v][0]))
        return ("junction", v)

    def metric_distance(self, p: Point, q: Point) -> float:
        """Distance along the corridor network (an upper bound on the geodesic)."""
        lp, lq = self.locate(p), self.locate(q)
        if lp[0] == "corridor" and lq[0] == "corridor" and lp[1] == lq[1]:
            return abs(lp[2] - lq[2])
        if lp[0] == "junction" and lq[0] == "junction" and lp[1] == lq[1]:
            return dist(p, q)
        best = math.inf
        for u, off_u in _ends(self, lp, p):
            for v, off_v in _ends(self, lq, q):
                best = min(best, off_u + self.D[u][v] + off_v)
        return best

    def junction_distance(self, p: Point, target: int) -> float:
        loc = self.locate(p)
        if loc[0] == "junction":
            v = loc[1]
            return dist(p, self.centers[v]) + self.D[v][target]
        (a, b), t = loc[1], loc[2]
        L = self.corridors[(a, b)].route.length
        return min(t + self.D[a][target], (L - t) + self.D[b][target])

    def hop_route(self, a: int, b: int) -> Polyline:
        cor = self.corridors.get((min(a, b), max(a, b)))
        if cor is None:
            raise KeyError((a, b))
        return cor.route if a < b else cor.route.reversed()

    def route_between_junctions(self, a: int, b: int) -> Polyline:
        pts: list[Point] = []
        u = a
        while u != b:
            w = self.NEXT[u][b]
            seg = self.hop_route(u, w)
            pts.extend(seg.pts if not pts else seg.pts[1:])
            u = w
        return Polyline(pts)

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "scale": self.scale,
            "width": self.width,
            "radius": self.radius,
            "polygon": self.polygon.to_json(),
            "junctions": {str(v): [[c.x, c.y], r] for v, (c, r) in self.junction_disks.items()},
            "corridors": {
                f"{a}-{b}": {
                    "route": [[p.x, p.y] for p in cor.route],
                    "internal_length": cor.internal_length,
                }
                for (a, b), cor in self.corridors.items()
            },
        }


def _perp(d: tuple[float, float]) -> tuple[float, float]:
    return (-d[1], d[0])


def _unit(a: Point, b: Point) -> tuple[float, float]:
    L = dist(a, b)
    return ((b.x - a.x) / L, (b.y - a.y) / L)


def _along(a: Point, d: tuple[float, float], t: float) -> Point:
    return Point(a.x + t * d[0], a.y + t * d[1])


def _tooth_profile(
    gap: float, k: int, m: float, side: int, margin_a: float = 0.0, margin_b: float = 0.0
) -> list[tuple[float, float]]:
    """Sawtooth centerline in edge-local (x, y): x along the axis, y lateral.

    Flat margins near the gateways (at least a tenth of the gap, more where
    an incident corridor crowds an end); k one-sided teeth in between, with
    heights jittered deterministically around the amplitude m. Exactly equal
    tooth heights would leave a measure-zero grazing line through the tips
    (legal in the closed-region model), shortcutting the corridor; the
    jitter keeps tip triples off a common line. k == 0 means straight.
    """
    if k == 0 or m <= 0:
        return [(0.0, 0.0), (gap, 0.0)]
    base = min(0.18 * gap, max(0.02, 0.1 * gap))
    x0 = max(base, margin_a)
    x1 = gap - max(base, margin_b)
    if x1 - x0 < 1e-6:
        raise ConstructionError("tooth margins consume the whole corridor")
    pitch = (x1 - x0) / k
    pts = [(0.0, 0.0), (x0, 0.0)]
    for j in range(k):
        mu = 1.0 + 0.13 * ((j * 0.6180339887498949) % 1.0 - 0.5)
        pts.append((x0 + (j + 0.5) * pitch, side * m * mu))
        pts.append((x0 + (j + 1) * pitch, 0.0))
    pts.append((gap, 0.0))
    out = [pts[0]]
    for q in pts[1:]:
        if abs(q[0] - out[-1][0]) > 1e-12 or abs(q[1] - out[-1][1]) > 1e-12:
            out.append(q)
    return out


def _tube_walls(profile: list[tuple[float, float]], w: float):
    """Walls as lateral (not normal) offsets of the profile graph.

    The profile is a function of x, so both walls are simple polylines and
    the tube cannot fold no matter how steep the teeth; at the flat gateway
    ends the lateral offset coincides with the normal one, matching the pad
    corners exactly.
    """
    lower = [(x, y - w / 2) for x, y in profile]
    upper = [(x, y + w / 2) for x, y in profile]
    return lower, upper


def _to_world(local: list[tuple[float, float]], ga: Point, d: tuple[float, float]) -> list[Point]:
    p = _perp(d)
    return [Point(ga.x + x * d[0] + y * p[0], ga.y + x * d[1] + y * p[1]) for x, y in local]


def _tube_shape(profile: list[tuple[float, float]], w: float, ga: Point, d: tuple[float, float]) -> RegionShape:
    lower, upper = _tube_walls(profile, w)
    ring = _to_world(lower, ga, d) + list(reversed(_to_world(upper, ga, d)))
    return RegionShape(ring, validate=True)


def _internal_geodesic(profile: list[tuple[float, float]], w: float, ga: Point, d: tuple[float, float]) -> float:
    strip = _tube_shape(profile, w, ga, d)
    a = _to_world([profile[0]], ga, d)[0]
    b = _to_world([profile[-1]], ga, d)[0]
    return visgraph.geodesic(strip, a, b).length


def _wedge_margin(graph, centers, edge, end: int, side: int, m_cap: float, w: float, bulge_face) -> float:
    """Keep teeth clear of incident corridors fanning out of an endpoint.

    A tooth of height m at axial distance x from the endpoint clears an
    incident edge at angle theta when x*sin(theta) exceeds m*cos(theta)
    plus the incident corridor's own lateral extent (its walls, plus its own
    tooth height when it bulges into the same face); evaluated at the
    amplitude cap.
    """
    a, b = edge
    other = b if end == a else a
    pe, po = centers[end], centers[other]
    d = _unit(pe, po)
    own_face = bulge_face.get((a, b))
    worst = 0.0
    for (c, dd) in graph.edges:
        if (c, dd) == edge:
            continue
        if end not in (c, dd):
            continue
        far = dd if c == end else c
        e2 = _unit(pe, centers[far])
        cross = d[0] * e2[1] - d[1] * e2[0]
        if side * cross <= 0:
            continue  # incident edge on the other flank
        cos_t = max(-1.0, min(1.0, d[0] * e2[0] + d[1] * e2[1]))
        sin_t = abs(cross)
        if sin_t < 1e-9:
            continue
        their_reach = 2.0 * w
        if own_face is not None and bulge_face.get((c, dd)) == own_face:
            their_reach += m_cap  # its teeth point into the same face
        need = (m_cap * cos_t + their_reach) / sin_t if cos_t > 0 else their_reach
        worst = max(worst, need)
    return worst


def _solve_amplitude(gap, k, side, w, ga, d, budget, ma=0.0, mb=0.0) -> Optional[float]:
    """Tooth amplitude whose strip geodesic equals one, or None when no
    amplitude within budget works for this tooth count.

    The strip geodesic as a function of the amplitude is piecewise smooth
    with small jumps where its corner chain changes, and collapses entirely
    in degenerate tip-grazing regimes, so this scans the budget range and
    refines any bracket that crosses one from below. A solution must also
    genuinely wind through the teeth (no grazing shortcuts).
    """

    def evaluate(m):
        profile = _tooth_profile(gap, k, m, side, ma, mb)
        strip = _tube_shape(profile, w, ga, d)
        a = _to_world([profile[0]], ga, d)[0]
        b = _to_world([profile[-1]], ga, d)[0]
        gp = visgraph.geodesic(strip, a, b)
        return gp.length, len(gp.polyline.pts)

    def accept(m, L, npts):
        return abs(L - 1.0) <= 5e-4 and npts >= 2 * k - 2

    steps = 48
    samples = []
    for i in range(1, steps + 1):
        m = budget * i / steps
        L, npts = evaluate(m)
        if accept(m, L, npts):
            return m
        samples.append((m, L, npts))
    for (m0, L0, n0), (m1, L1, n1) in zip(samples, samples[1:]):
        if L0 < 1.0 <= L1 and n1 >= 2 * k - 2:
            lo, hi = m0, m1
            for _ in range(50):
                mid = 0.5 * (lo + hi)
                L, npts = evaluate(mid)
                if accept(mid, L, npts):
                    return mid
                if L < 1.0:
                    lo = mid
                else:
                    hi = mid
            L, npts = evaluate(hi)
            if accept(hi, L, npts):
                return hi
    return None


def build_corridor_polygon(graph: EmbeddedGraph, width: float = 0.05, junction_radius: float = 0.05) -> CorridorMap:
    """Turn a straight-line planar embedding into a corridor polygon.

    The embedding is scaled so the longest edge's corridor is straight with
    internal length exactly one; shorter edges grow one-sided sawtooth
    detours solved to the same internal length (within 1e-9 before width
    effects; the strip geodesic itself is the solved quantity). Rejects
    configurations whose width/radius do not fit the embedding, naming the
    violating feature pair.
    """
    graph.check_planar_embedding()
    w, r = float(width), float(junction_radius)
    if w <= 0 or r <= 0 or w > 2 * r:
        raise ConstructionError(f"need 0 < width <= 2*radius (got w={w}, r={r})")
    maxlen = max(dist(graph.vertices[a], graph.vertices[b]) for a, b in graph.edges)
    scale = (1.0 + 2.0 * r) / maxlen
    centers = [Point(p.x * scale, p.y * scale) for p in graph.vertices]
    adj = graph.neighbors()

    # angular feasibility at junctions
    half = math.asin(min(1.0, w / (2 * r)))
    for v, ns in enumerate(adj):
        if len(ns) < 2:
            raise ConstructionError(f"vertex {v} has degree < 2")
        angs = sorted(
            (math.atan2(centers[u].y - centers[v].y, centers[u].x - centers[v].x), u) for u in ns
        )
        for (a1, u1), (a2, u2) in zip(angs, angs[1:] + [(angs[0][0] + 2 * math.pi, angs[0][1])]):
            if a2 - a1 < 2 * half + 1e-6:
                raise ConstructionError(
                    f"width too large: corridors ({v},{u1}) and ({v},{u2}) overlap at junction {v}"
                )

    # combinatorial faces of the embedding (max-clockwise orbit walk)
    rotation = [sorted(ns, key=lambda u: math.atan2(centers[u].y - centers[v].y, centers[u].x - centers[v].x)) for v, ns in enumerate(adj)]

    def next_dart(a: int, b: int) -> tuple[int, int]:
        lst = rotation[b]
        i = lst.index(a)
        return (b, lst[i - 1])

    darts = {(a, b) for a, b in graph.edges} | {(b, a) for a, b in graph.edges}
    seen = set()
    face_cycles = []
    for d0 in sorted(darts):
        if d0 in seen:
            continue
        cyc = []
        d = d0
        while d not in seen:
            seen.add(d)
            cyc.append(d)
            d = next_dart(*d)
        face_cycles.append(cyc)

    def cycle_area(cyc) -> float:
        s = 0.0
        for a, b in cyc:
            pa, pb = centers[a], centers[b]
            s += pa.x * pb.y - pb.x * pa.y
        return 0.5 * s

    outer_idx = min(range(len(face_cycles)), key=lambda i: cycle_area(face_cycles[i]))
    euler_faces = len(face_cycles)
    expect = 2 - len(graph.vertices) + len(graph.edges)
    if euler_faces != expect:
        raise ConstructionError(f"face walk found {euler_faces} faces, Euler expects {expect}")

    # bulge sides first: edges compete for room only inside their chosen
    # face, so spread the load — process the neediest edges first and give
    # each the less-crowded incident bounded face (ties to the larger one)
    def face_area_of(idx):
        s = 0.0
        for x, y in face_cycles[idx]:
            px, py = centers[x], centers[y]
            s += px.x * py.y - py.x * px.y
        return 0.5 * s

    side_faces: dict[tuple[int, int], dict[int, int]] = {}
    for idx, cyc in enumerate(face_cycles):
        for (x, y) in cyc:
            side_faces.setdefault((min(x, y), max(x, y)), {})[1 if x < y else -1] = idx

    bulge_face: dict[tuple[int, int], Optional[int]] = {}
    bulge_sign: dict[tuple[int, int], int] = {}
    load: dict[int, int] = {}
    needy = sorted(
        (e for e in graph.edges if dist(centers[e[0]], centers[e[1]]) - 2 * r < 1.0 - 1e-9),
        key=lambda e: (dist(centers[e[0]], centers[e[1]]), e),
    )
    for e in sorted(graph.edges):
        bulge_face[e] = None
        bulge_sign[e] = 1
    for e in needy:
        options = [
            (load.get(f, 0), -face_area_of(f), sign, f)
            for sign, f in sorted(side_faces.get(e, {}).items())
            if f != outer_idx
        ]
        if not options:
            raise ConstructionError(f"edge {e} has only the outer face to bulge into")
        options.sort()
        _, _, sign, f = options[0]
        bulge_sign[e] = sign
        bulge_face[e] = f
        load[f] = load.get(f, 0) + 1

    def budget_of(a: int, b: int) -> float:
        pa, pb = centers[a], centers[b]
        sign = bulge_sign[(a, b)]
        face = bulge_face[(a, b)]
        best = math.inf
        for v, q in enumerate(centers):
            if v in (a, b):
                continue
            if _side_sign(pa, pb, q) != sign:
                continue
            best = min(best, _pt_seg(q, pa, pb) - 2 * w)
        for (c, d) in graph.edges:
            if len({a, b, c, d}) < 4:
                continue
            mid = Point(0.5 * (centers[c].x + centers[d].x), 0.5 * (centers[c].y + centers[d].y))
            if _side_sign(pa, pb, mid) != sign and _side_sign(pa, pb, centers[c]) != sign and _side_sign(pa, pb, centers[d]) != sign:
                continue
            dd = _seg_seg_dist(pa, pb, centers[c], centers[d])
            if bulge_face.get((c, d)) is not None and bulge_face[(c, d)] == face:
                best = min(best, dd / 2.0 - 1.5 * w)  # it bulges toward us too
            else:
                best = min(best, dd - 2 * w)
        return best

    def solve_corridor(a: int, b: int, overrides: dict) -> Corridor:
        pa, pb = centers[a], centers[b]
        d = _unit(pa, pb)
        ga = _along(pa, d, r)
        gb = _along(pb, d, -r)
        gap = dist(ga, gb)
        if gap > 1.0 + 1e-9:
            raise ConstructionError(f"edge {(a, b)} longer than the scaled unit")
        amplitude = 0.0
        if gap >= 1.0 - 1e-9:
            profile = _tooth_profile(gap, 0, 0.0, 1)
            internal = gap
        else:
            budget = budget_of(a, b)
            if budget <= 0:
                raise ConstructionError(f"width too large: no sawtooth room on edge {(a, b)}")
            side = bulge_sign[(a, b)]
            lateral = math.sqrt(max(0.0, 1.0 - gap * gap))
            # margins keep teeth out of the wedges incident corridors form;
            # they scale with the amplitude, which shrinks as the tooth
            # count grows, so evaluate them per tooth count
            k0 = max(1, math.ceil(lateral / (2.0 * budget)))
            solved = None
            for k in range(k0, k0 + 14):
                m_cap = min(budget, 2.2 * lateral / (2.0 * k))
                ma = _wedge_margin(graph, centers, (a, b), a, side, m_cap, w, bulge_face)
                mb = _wedge_margin(graph, centers, (a, b), b, side, m_cap, w, bulge_face)
                ma = max(ma, overrides.get(((a, b), a), 0.0))
                mb = max(mb, overrides.get(((a, b), b), 0.0))
                usable = gap - ma - mb
                if usable <= 0 or usable / k < 4.0 * w:
                    continue
                m = _solve_amplitude(gap, k, side, w, ga, d, m_cap, ma, mb)
                if m is not None:
                    solved = (k, m, ma, mb)
                    break
            if solved is None:
                raise ConstructionError(
                    f"width too large: edge {(a, b)} cannot reach unit length within "
                    f"amplitude budget {budget:.4f}"
                )
            k, m, ma, mb = solved
            amplitude = m
            profile = _tooth_profile(gap, k, m, side, ma, mb)
            internal = _internal_geodesic(profile, w, ga, d)
            if abs(internal - 1.0) > 1e-3:
                raise ConstructionError(f"edge {(a, b)}: solved length {internal} misses 1 by >1e-3")
        lower, upper = _tube_walls(profile, w)
        center_world = _to_world(profile, ga, d)
        cor = Corridor(
            edge=(a, b),
            centerline=Polyline(center_world),
            route=Polyline([pa] + center_world + [pb]),
            wall_left=_to_world(upper, ga, d),
            wall_right=_to_world(lower, ga, d),
            internal_length=internal,
            strip=_tube_shape(profile, w, ga, d),
        )
        cor.amplitude = amplitude
        return cor

    # solve all corridors, then repair any tooth collisions between incident
    # corridors by re-solving them with margins from actual amplitudes
    overrides: dict = {}
    corridors: dict[tuple[int, int], Corridor] = {}
    dirty = set(graph.edges)
    for _round in range(6):
        for (a, b) in sorted(graph.edges):
            if (a, b) in dirty:
                corridors[(a, b)] = solve_corridor(a, b, overrides)
        pairs = _crossing_corridors(corridors)
        if not pairs:
            break
        dirty = set()
        for e1, e2 in pairs:
            shared = set(e1) & set(e2)
            if not shared:
                raise ConstructionError(f"width too large: corridors {e1} and {e2} collide")
            v = shared.pop()
            for (eo, et) in ((e1, e2), (e2, e1)):
                m_self = corridors[eo].amplitude
                m_other = corridors[et].amplitude
                theta = _incident_angle(centers, eo, et, v)
                if math.sin(theta) < 1e-9:
                    raise ConstructionError(f"degenerate angle between {eo} and {et}")
                need = 1.15 * (m_self * math.cos(theta) + m_other + 2 * w) / math.sin(theta)
                key = (eo, v)
                overrides[key] = max(overrides.get(key, 0.0), need)
                dirty.add(eo)
    else:
        raise ConstructionError("width too large: corridor collisions persist after repair")

    # assemble rings from the face orbits; the walk leaves bounded faces ccw
    # and the outer face cw, so reverse to the storage conventions. Pad
    # corners between consecutive corridor walls are mitered (extend the
    # wall lines to their intersection) so junction pads keep their centers;
    # a chord there would chop the corner off the region.
    pad_r = math.hypot(r, w / 2)

    def stitched(cyc) -> list[Point]:
        walls = []
        for (x, y) in cyc:
            cor = corridors[(min(x, y), max(x, y))]
            wall = cor.wall_left if x < y else list(reversed(cor.wall_right))
            walls.append((wall, y))
        pts: list[Point] = []
        nw = len(walls)
        for i, (wall, yv) in enumerate(walls):
            pts.extend(wall)
            nxt = walls[(i + 1) % nw][0]
            corner = _miter(wall[-2], wall[-1], nxt[0], nxt[1], centers[yv], 3.0 * pad_r)
            if corner is not None:
                pts.append(corner)
        return pts

    rings: list[tuple[list[Point], bool]] = []
    for idx, cyc in enumerate(face_cycles):
        rings.append((stitched(cyc), idx == outer_idx))
    outer_ring = list(reversed(next(p for p, is_outer in rings if is_outer)))
    hole_rings = [list(reversed(p)) for p, is_outer in rings if not is_outer]
    try:
        polygon = PolygonEnv(outer_ring, hole_rings)
    except GeometryError as ex:
        raise ConstructionError(f"width too large: corridor walls collide ({ex})") from ex

    # the invariant that matters is measured in the finished polygon: the
    # gateway-to-gateway geodesic must not have found any new shortcut
    for (a, b), cor in sorted(corridors.items()):
        ga_pt = cor.centerline.pts[0]
        gb_pt = cor.centerline.pts[-1]
        full = visgraph.geodesic(polygon, ga_pt, gb_pt).length
        if abs(full - 1.0) > 1e-3:
            raise ConstructionError(
                f"corridor {(a, b)}: internal geodesic {full:.6f} in the assembled polygon"
            )

    pad_radius = math.hypot(r, w / 2)
    jd = {v: (centers[v], pad_radius) for v in range(len(centers))}
    cmap = CorridorMap(
        graph=graph,
        scale=scale,
        width=w,
        radius=r,
        centers=centers,
        polygon=polygon,
        junction_disks=jd,
        corridors=corridors,
        hop=1.0 + 2.0 * r,
    )
    _build_metric(cmap)
    return cmap


def _side_sign(a: Point, b: Point, q: Point) -> int:
    v = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x)
    return 1 if v > 0 else -1


def _bulge_side(graph, centers, edge, face_cycles, outer_idx) -> tuple[int, Optional[int]]:
    """Side for the teeth (+1 left / -1 right of a->b) and its face index.

    Teeth bulge into a bounded face; when both sides are bounded the larger
    one wins (ties to the left). The outer face is never chosen unless the
    edge is a bridge with the outer face on both sides.
    """
    a, b = edge
    left_face = right_face = None
    for idx, cyc in enumerate(face_cycles):
        if (a, b) in cyc:
            left_face = idx
        if (b, a) in cyc:
            right_face = idx

    def face_area(idx):
        s = 0.0
        for x, y in face_cycles[idx]:
            px, py = centers[x], centers[y]
            s += px.x * py.y - py.x * px.y
        return 0.5 * s

    cand = []
    if left_face is not None and left_face != outer_idx:
        cand.append((face_area(left_face), 1, left_face))
    if right_face is not None and right_face != outer_idx:
        cand.append((face_area(right_face), -1, right_face))
    if not cand:
        return 1, left_face
    cand.sort(key=lambda t: (-t[0], -t[1]))
    return cand[0][1], cand[0][2]


def _miter(a1: Point, a2: Point, b1: Point, b2: Point, center: Point, max_r: float) -> Optional[Point]:
    """Intersection of lines a1a2 and b1b2 near the junction, else None."""
    d1 = (a2.x - a1.x, a2.y - a1.y)
    d2 = (b2.x - b1.x, b2.y - b1.y)
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) < 1e-12:
        return None
    t = ((b1.x - a1.x) * d2[1] - (b1.y - a1.y) * d2[0]) / denom
    x = Point(a1.x + t * d1[0], a1.y + t * d1[1])
    if dist(x, center) > max_r:
        return None
    from .geom import same_point

    if same_point(x, a2) or same_point(x, b1):
        return None
    return x


def _crossing_corridors(corridors: dict) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs of corridors whose walls properly intersect."""

    def wall_segs(c: Corridor):
        out = []
        for wall in (c.wall_left, c.wall_right):
            out.extend(zip(wall, wall[1:]))
        return out

    keys = sorted(corridors)
    segs = {e: wall_segs(corridors[e]) for e in keys}
    bad = []
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            hit = False
            for s1 in segs[keys[i]]:
                for s2 in segs[keys[j]]:
                    if seg_seg_proper_lb(s1, s2):
                        hit = True
                        break
                if hit:
                    break
            if hit:
                bad.append((keys[i], keys[j]))
    return bad


def seg_seg_proper_lb(s1, s2) -> bool:
    return segments_intersect(s1, s2, "proper")


def _incident_angle(centers, e1, e2, v: int) -> float:
    o1 = e1[1] if e1[0] == v else e1[0]
    o2 = e2[1] if e2[0] == v else e2[0]
    d1 = _unit(centers[v], centers[o1])
    d2 = _unit(centers[v], centers[o2])
    c = max(-1.0, min(1.0, d1[0] * d2[0] + d1[1] * d2[1]))
    return math.acos(c)


def _pt_seg(p: Point, a: Point, b: Point) -> float:
    dx, dy = b.x - a.x, b.y - a.y
    L2 = dx * dx + dy * dy
    t = max(0.0, min(1.0, ((p.x - a.x) * dx + (p.y - a.y) * dy) / L2))
    return math.hypot(p.x - a.x - t * dx, p.y - a.y - t * dy)


def _seg_seg_dist(a: Point, b: Point, c: Point, d: Point) -> float:
    if segments_intersect((a, b), (c, d), "closed"):
        return 0.0
    return min(_pt_seg(a, c, d), _pt_seg(b, c, d), _pt_seg(c, a, b), _pt_seg(d, a, b))


def _build_metric(cmap: CorridorMap):
    import heapq

    n = len(cmap.centers)
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (a, b), cor in cmap.corridors.items():
        wgt = cor.route.length
        adj[a].append((b, wgt))
        adj[b].append((a, wgt))
    D = []
    NEXT = []
    for s in range(n):
        distv = [math.inf] * n
        first = [-1] * n
        distv[s] = 0.0
        heap = [(0.0, s, s)]
        while heap:
            dcur, u, f = heapq.heappop(heap)
            if dcur > distv[u]:
                continue
            first[u] = f
            for v, wgt in adj[u]:
                nd = dcur + wgt
                if nd < distv[v] - 1e-15:
                    distv[v] = nd
                    heapq.heappush(heap, (nd, v, v if u == s else f))
        D.append(distv)
        NEXT.append(first)
    cmap.D = D
    cmap.NEXT = NEXT


class CorridorChasePolicy:
    """Independent greedy-chase pursuers for corridor polygons.

    Each pursuer runs straight at the evader along the corridor network
    (recomputed every turn; the router is O(1) over the junction metric) and
    grabs it whenever it is within one geodesic unit. Deliberately memoryless
    — a baseline the lower-bound construction must defeat.
    """

    phase = "CHASE"

    def __init__(self, cmap: CorridorMap):
        self.map = cmap
        self.env = cmap.polygon
        self.events: list[dict] = []
        self.guards: dict = {}

    def start(self, pursuer_positions, e):
        pass

    def state_key(self):
        return ()

    def guard_side_violation(self, e):
        return []

    def seal_violation(self, e):
        return False

    def route_to(self, p: Point, e: Point) -> Polyline:
        lp = self.map.locate(p)
        le = self.map.locate(e)
        if lp[0] == "corridor" and le[0] == "corridor" and lp[1] == le[1]:
            route = self.map.corridors[lp[1]].route
            if lp[2] <= le[2]:
                pts = _slice_route(route, lp[2], le[2])
            else:
                pts = list(reversed(_slice_route(route, le[2], lp[2])))
            pts[0], pts[-1] = p, e
            return Polyline(_dedup(pts))
        if lp[0] == "junction" and le[0] == "junction" and lp[1] == le[1]:
            return Polyline(_dedup([p, e]))
        cands = []
        for end_p, off_p in _ends(self.map, lp, p):
            for end_e, off_e in _ends(self.map, le, e):
                cands.append((off_p + self.map.D[end_p][end_e] + off_e, end_p, end_e))
        cands.sort()
        _, u, v = cands[0]
        pts = _leg_to_center(self.map, lp, p, u)
        if u != v:
            pts += self.map.route_between_junctions(u, v).pts[1:]
        pts += list(reversed(_leg_to_center(self.map, le, e, v)))[1:]
        return Polyline(_dedup(pts))

    def pursuer_turn(self, positions, e_old, e_new, trajectory):
        moves = list(positions)
        for i, p in enumerate(positions):
            if dist(p, e_new) > 1.0 + 1e-9:
                continue
            # grab when reachable: straight line free, or within one unit
            # along the corridor network (both certify geodesic <= 1)
            if self.env.shape.segment_inside(p, e_new) or self.map.metric_distance(p, e_new) <= 1.0:
                moves[i] = e_new
                self.phase = "CAPTURED"
                self.events.append({"type": "capture", "pursuer": i})
                return moves, True
        for i, p in enumerate(positions):
            route = self.route_to(p, e_new)
            moves[i] = route.point_at(min(1.0, route.length))
        return moves, False


def _dedup(pts):
    from .geom import same_point

    out = [pts[0]]
    for q in pts[1:]:
        if not same_point(q, out[-1]):
            out.append(q)
    return out if len(out) > 1 else [pts[0], pts[0]]


def _slice_route(route: Polyline, t0: float, t1: float):
    out = [route.point_at(t0)]
    for i, p in enumerate(route.pts):
        s = route._cum[i]
        if t0 < s < t1:
            out.append(p)
    out.append(route.point_at(t1))
    return out


def _ends(cmap: CorridorMap, loc, p: Point):
    if loc[0] == "junction":
        v = loc[1]
        return [(v, dist(p, cmap.centers[v]))]
    (a, b), t = loc[1], loc[2]
    L = cmap.corridors[(a, b)].route.length
    return [(a, t), (b, L - t)]


def _leg_to_center(cmap: CorridorMap, loc, p: Point, end: int) -> list[Point]:
    """Points from p to junction `end`'s center following the network."""
    if loc[0] == "junction":
        return [p, cmap.centers[end]] if loc[1] == end else [p, cmap.centers[loc[1]], cmap.centers[end]]
    (a, b), t = loc[1], loc[2]
    route = cmap.corridors[(a, b)].route
    if end == a:
        pts = list(reversed(_slice_route(route, 0.0, t)))
    else:
        pts = _slice_route(route, t, route.length)
    pts[0] = p
    return pts


@lru_cache(maxsize=4)
def dodecahedron_map(width: float = 0.0025, junction_radius: float = 0.006) -> CorridorMap:
    """The dodecahedron corridor polygon (memoized; construction is costly).

    The dodecahedron layout has 54-degree corridor separations at the outer
    junctions and short inner edges that stretch almost fourfold, so the
    default corridor width/radius must be slimmer than the generic 0.05.
    Solved maps are cached on disk (the amplitude solves take ~a minute).
    """
    import os
    import pickle

    cache_dir = os.path.join(os.path.expanduser("~"), ".cache", "polypursuit")
    path = os.path.join(cache_dir, f"dodeca-{width}-{junction_radius}-v2.pkl")
    try:
        with open(path, "rb") as f:
            return pickle.load(f)
    except Exception:
        pass
    cmap = build_corridor_polygon(dodecahedron(), width=width, junction_radius=junction_radius)
    cmap.polygon.diam  # precompute the all-pairs metric into the cache
    try:
        os.makedirs(cache_dir, exist_ok=True)
        cmap.__dict__.pop("_locate_cache", None)
        g = getattr(cmap.polygon.shape, "_visgraph", None)
        if g is not None:
            g._query_cache.clear()
        with open(path, "wb") as f:
            pickle.dump(cmap, f)
    except Exception:
        pass
    return cmap
