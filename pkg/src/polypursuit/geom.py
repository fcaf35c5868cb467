"""Planar geometry kernel: robust predicates, polygons with holes, splitting.

Conventions used throughout the package:

- coordinates are doubles; the orientation predicate is sign-exact (float
  filter with an exact rational fallback), everything metric is accurate to
  ~1e-12 relative
- outer rings are counterclockwise, hole rings clockwise; rings loaded in the
  wrong orientation are corrected with a warning
- the region is the *closed* set: the outer ring minus the open interiors of
  the holes; grazing contact with the boundary counts as inside
- region splitting is a planar face extraction over the arrangement of the
  boundary rings plus a dividing polyline; all intersections are required to
  happen at shared vertices or along collinear overlaps, which keeps the
  arrangement exact on the input coordinates
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Optional, Sequence

EPS_POS = 1e-9          # absolute tolerance for point identity
_ORIENT_FILTER = 3.3306690738754716e-16  # (3 + 16u)u, u = 2^-53


class GeometryError(ValueError):
    pass


class SplitError(GeometryError):
    pass


class Point(NamedTuple):
    x: float
    y: float

    def __repr__(self):
        return f"({self.x:.6g}, {self.y:.6g})"


def pt(x, y) -> Point:
    x, y = float(x), float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"non-finite coordinate ({x}, {y})")
    return Point(x, y)


def dist(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def key_of(p: Point, eps: float = EPS_POS) -> tuple[int, int]:
    """Quantized identity key; points within eps of the same grid node merge."""
    return (round(p.x / eps), round(p.y / eps))


def same_point(a: Point, b: Point, eps: float = EPS_POS) -> bool:
    return abs(a.x - b.x) <= eps and abs(a.y - b.y) <= eps


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of twice the signed area of (a, b, c): +1 ccw, -1 cw, 0 collinear.

    Float evaluation with a Shewchuk-style error filter; falls back to exact
    big-integer arithmetic when the filter cannot certify the sign (doubles
    are dyadic rationals, so scaling by a common power of two is exact).
    """
    detleft = (a.x - c.x) * (b.y - c.y)
    detright = (a.y - c.y) * (b.x - c.x)
    det = detleft - detright
    detsum = abs(detleft) + abs(detright)
    if abs(det) >= _ORIENT_FILTER * detsum:
        return 1 if det > 0 else (-1 if det < 0 else 0)
    return _orient_exact(a, b, c)


def _orient_exact(a: Point, b: Point, c: Point) -> int:
    nums = []
    max_shift = 0
    for v in (a.x, a.y, b.x, b.y, c.x, c.y):
        n, d = v.as_integer_ratio()
        s = d.bit_length() - 1  # d is a power of two
        nums.append((n, s))
        if s > max_shift:
            max_shift = s
    ints = [n << (max_shift - s) for n, s in nums]
    ax, ay, bx, by, cx, cy = ints
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return 1 if det > 0 else (-1 if det < 0 else 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab (exact collinearity)."""
    if orient(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def segments_intersect(s1: tuple[Point, Point], s2: tuple[Point, Point], mode: str = "closed") -> bool:
    """Segment intersection test.

    mode 'proper' reports interior crossings only; 'closed' also reports
    endpoint touching and collinear overlap.
    """
    a, b = s1
    c, d = s2
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if mode == "proper":
        return o1 * o2 < 0 and o3 * o4 < 0
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and on_segment(c, a, b):
        return True
    if o2 == 0 and on_segment(d, a, b):
        return True
    if o3 == 0 and on_segment(a, c, d):
        return True
    if o4 == 0 and on_segment(b, c, d):
        return True
    return False


def seg_seg_proper(a: Point, b: Point, c: Point, d: Point) -> bool:
    return orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0


def ray_segment_param(origin: Point, direction: tuple[float, float], a: Point, b: Point) -> Optional[float]:
    """Parameter t >= 0 where origin + t*direction meets segment ab, else None."""
    dx, dy = direction
    ex, ey = b.x - a.x, b.y - a.y
    denom = dx * ey - dy * ex
    ox, oy = a.x - origin.x, a.y - origin.y
    if denom == 0.0:
        return None  # parallel: collinear grazing handled by neighbors
    t = (ox * ey - oy * ex) / denom
    u = (ox * dy - oy * dx) / denom
    if t >= 0.0 and -1e-12 <= u <= 1.0 + 1e-12:
        return t
    return None


# ---------------------------------------------------------------------------
# polylines


class Polyline:
    """Open polyline with arc-length addressing. Consecutive points distinct."""

    __slots__ = ("pts", "_cum")

    def __init__(self, pts: Sequence[Point]):
        pts = [Point(float(p[0]), float(p[1])) for p in pts]
        if len(pts) < 2:
            raise GeometryError("polyline needs at least two points")
        for a, b in zip(pts, pts[1:]):
            if same_point(a, b):
                raise GeometryError(f"repeated consecutive point {a}")
        self.pts = pts
        cum = [0.0]
        for a, b in zip(pts, pts[1:]):
            cum.append(cum[-1] + dist(a, b))
        self._cum = cum

    @property
    def length(self) -> float:
        return self._cum[-1]

    def point_at(self, s: float) -> Point:
        """Point at arc length s from the start (clamped to [0, length])."""
        cum = self._cum
        if s <= 0:
            return self.pts[0]
        if s >= cum[-1]:
            return self.pts[-1]
        lo, hi = 0, len(cum) - 1
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if cum[mid] <= s:
                lo = mid
            else:
                hi = mid
        a, b = self.pts[lo], self.pts[lo + 1]
        seg = cum[lo + 1] - cum[lo]
        t = (s - cum[lo]) / seg
        return Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))

    def param_of(self, p: Point, tol: float = 1e-6) -> Optional[float]:
        """Arc-length parameter of p if it lies on the polyline (within tol)."""
        best = None
        for i in range(len(self.pts) - 1):
            a, b = self.pts[i], self.pts[i + 1]
            ax, ay, bx, by = a.x, a.y, b.x, b.y
            seg2 = (bx - ax) ** 2 + (by - ay) ** 2
            t = ((p.x - ax) * (bx - ax) + (p.y - ay) * (by - ay)) / seg2
            t = min(1.0, max(0.0, t))
            qx, qy = ax + t * (bx - ax), ay + t * (by - ay)
            d = math.hypot(p.x - qx, p.y - qy)
            if d <= tol and (best is None or d < best[0]):
                best = (d, self._cum[i] + t * math.sqrt(seg2))
        return None if best is None else best[1]

    def reversed(self) -> "Polyline":
        return Polyline(list(reversed(self.pts)))

    def __iter__(self):
        return iter(self.pts)

    def __len__(self):
        return len(self.pts)


# ---------------------------------------------------------------------------
# rings


def signed_area(ring: Sequence[Point]) -> float:
    s = 0.0
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return 0.5 * s


def normalize_ring(ring: Sequence[Point], ccw: bool, label: str = "ring") -> list[Point]:
    ring = [Point(float(p[0]), float(p[1])) for p in ring]
    if len(ring) < 3:
        raise GeometryError(f"{label}: fewer than 3 vertices")
    out = [ring[0]]
    for p in ring[1:]:
        if not same_point(out[-1], p):
            out.append(p)
    if same_point(out[0], out[-1]) and len(out) > 1:
        out.pop()
    if len(out) < 3:
        raise GeometryError(f"{label}: degenerate after deduplication")
    area = signed_area(out)
    if abs(area) < 1e-12:
        raise GeometryError(f"{label}: zero area")
    if (area > 0) != ccw:
        warnings.warn(f"{label} had wrong orientation; corrected", stacklevel=3)
        out.reverse()
    return out


def ring_is_simple(ring: Sequence[Point]) -> bool:
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = ring[j], ring[(j + 1) % n]
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                # neighbors may only share the common endpoint
                shared = b if j == i + 1 else a
                other1 = a if j == i + 1 else b
                other2 = d if j == i + 1 else c
                if orient(c, d, other1) == 0 and orient(c, d, other2) == 0:
                    # collinear neighbors: reject if they fold back and overlap
                    va = (other1.x - shared.x, other1.y - shared.y)
                    vb = (other2.x - shared.x, other2.y - shared.y)
                    if va[0] * vb[0] + va[1] * vb[1] > 0:
                        return False
                continue
            if segments_intersect((a, b), (c, d), "closed"):
                return False
    return True


def ring_interior_point(ring: Sequence[Point]) -> Point:
    """A point strictly inside a simple ring (any orientation).

    Classic construction: take the bottom-most (then left-most) vertex v,
    which is convex; if no other ring vertex lies in triangle (prev, v, next)
    the centroid works, otherwise step from v halfway toward the interior
    vertex farthest from the line (prev, next).
    """
    n = len(ring)
    iv = min(range(n), key=lambda i: (ring[i].y, ring[i].x))
    v = ring[iv]
    a, b = ring[(iv - 1) % n], ring[(iv + 1) % n]
    inside = []
    for i, q in enumerate(ring):
        if i == iv or q == a or q == b:
            continue
        if _in_triangle(q, a, v, b):
            inside.append(q)
    if not inside:
        c = Point((a.x + v.x + b.x) / 3.0, (a.y + v.y + b.y) / 3.0)
    else:
        # farthest from segment ab, measured by triangle area
        q = max(inside, key=lambda q: (abs((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x)), q))
        c = Point((v.x + q.x) / 2.0, (v.y + q.y) / 2.0)
    if not point_in_ring(c, ring):
        # fall back: bisect toward v until inside
        for _ in range(60):
            c = Point((c.x + v.x) / 2.0, (c.y + v.y) / 2.0)
            if point_in_ring(c, ring):
                return c
        raise GeometryError("could not find interior point of ring")
    return c


def _in_triangle(q: Point, a: Point, b: Point, c: Point) -> bool:
    s1, s2, s3 = orient(a, b, q), orient(b, c, q), orient(c, a, q)
    return (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0)


def point_in_ring(p: Point, ring: Sequence[Point]) -> bool:
    """Strictly inside test for a simple ring (either orientation).

    Points on the boundary are reported as outside; callers that need
    boundary classification must check that separately.
    """
    inside = False
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if on_segment(p, a, b):
            return False
        if (a.y > p.y) != (b.y > p.y):
            if b.y > a.y:
                if orient(a, b, p) > 0:
                    inside = not inside
            else:
                if orient(b, a, p) > 0:
                    inside = not inside
    return inside


# ---------------------------------------------------------------------------
# spatial index


class SegmentGrid:
    """Uniform grid over tagged segments for local intersection queries."""

    def __init__(self, segments: Iterable[tuple[Point, Point, object]], cell: Optional[float] = None):
        segments = list(segments)
        xs = [p.x for s in segments for p in (s[0], s[1])] or [0.0]
        ys = [p.y for s in segments for p in (s[0], s[1])] or [0.0]
        self.xmin, self.xmax = min(xs), max(xs)
        self.ymin, self.ymax = min(ys), max(ys)
        diag = math.hypot(self.xmax - self.xmin, self.ymax - self.ymin) or 1.0
        self.cell = cell or max(diag / 64.0, 1e-6)
        self.cells: dict[tuple[int, int], list[tuple[Point, Point, object]]] = {}
        self.segments = segments
        for seg in segments:
            for c in self._cover(seg[0], seg[1]):
                # 1-cell dilation guards against FP right at cell boundaries
                cx, cy = c
                for dx in (-1, 0, 1):
                    for dy in (-1, 0, 1):
                        self.cells.setdefault((cx + dx, cy + dy), []).append(seg)

    def _cell_of(self, p: Point) -> tuple[int, int]:
        return (int(math.floor((p.x - self.xmin) / self.cell)), int(math.floor((p.y - self.ymin) / self.cell)))

    def _cover(self, a: Point, b: Point):
        """Supercover of cells crossed by segment ab."""
        c0, c1 = self._cell_of(a), self._cell_of(b)
        x0, y0 = c0
        x1, y1 = c1
        cells = {c0, c1}
        steps = max(abs(x1 - x0), abs(y1 - y0))
        if steps:
            for i in range(1, steps + 1):
                t = i / (steps + 1)
                cells.add(self._cell_of(Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))))
        return cells

    def near_segment(self, a: Point, b: Point) -> list[tuple[Point, Point, object]]:
        out, seen = [], set()
        for c in self._cover(a, b):
            for seg in self.cells.get(c, ()):
                sid = id(seg)
                if sid not in seen:
                    seen.add(sid)
                    out.append(seg)
        return out

    def near_point(self, p: Point) -> list[tuple[Point, Point, object]]:
        out, seen = [], set()
        for seg in self.cells.get(self._cell_of(p), ()):
            sid = id(seg)
            if sid not in seen:
                seen.add(sid)
                out.append(seg)
        return out

    def row(self, p: Point) -> list[tuple[Point, Point, object]]:
        """Segments in the grid row of p from p rightward (for ray casts)."""
        cy = self._cell_of(p)[1]
        cx0 = self._cell_of(p)[0]
        cx1 = int(math.floor((self.xmax - self.xmin) / self.cell)) + 1
        out, seen = [], set()
        for cx in range(cx0, cx1 + 1):
            for seg in self.cells.get((cx, cy), ()):
                sid = id(seg)
                if sid not in seen:
                    seen.add(sid)
                    out.append(seg)
        return out


# ---------------------------------------------------------------------------
# closed regions (outer ring + holes)


class Where(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class RegionShape:
    """A closed polygonal region: one outer ring (ccw) minus open holes (cw).

    Derived sub-regions produced by splitting may have hole rings that touch
    the outer ring at isolated pinch vertices; loaded environments are
    validated strictly.
    """

    def __init__(self, outer: Sequence[Point], holes: Sequence[Sequence[Point]] = (), validate: bool = True):
        self.outer = normalize_ring(outer, ccw=True, label="outer ring")
        self.holes = [normalize_ring(h, ccw=False, label=f"hole {i}") for i, h in enumerate(holes)]
        if validate:
            self._validate()
        segs = []
        for i in range(len(self.outer)):
            segs.append((self.outer[i], self.outer[(i + 1) % len(self.outer)], ("outer", i)))
        for k, h in enumerate(self.holes):
            for i in range(len(h)):
                segs.append((h[i], h[(i + 1) % len(h)], ("hole", k, i)))
        self.grid = SegmentGrid(segs)
        self._area = signed_area(self.outer) + sum(signed_area(h) for h in self.holes)

    def _validate(self):
        if not ring_is_simple(self.outer):
            raise GeometryError("outer ring is not simple")
        for i, h in enumerate(self.holes):
            if not ring_is_simple(h):
                raise GeometryError(f"hole {i} is not simple")
            for p in h:
                if not point_in_ring(p, self.outer):
                    raise GeometryError(f"hole {i} vertex {p} not strictly inside outer ring")
        for i in range(len(self.holes)):
            for j in range(i + 1, len(self.holes)):
                for a, b in _ring_edges(self.holes[i]):
                    for c, d in _ring_edges(self.holes[j]):
                        if segments_intersect((a, b), (c, d), "closed"):
                            raise GeometryError(f"holes {i} and {j} intersect")
                if point_in_ring(self.holes[j][0], self.holes[i]) or point_in_ring(self.holes[i][0], self.holes[j]):
                    raise GeometryError(f"holes {i} and {j} nest")

    @property
    def area(self) -> float:
        return self._area

    @property
    def vertex_count(self) -> int:
        return len(self.outer) + sum(len(h) for h in self.holes)

    def all_vertices(self) -> list[Point]:
        out = list(self.outer)
        for h in self.holes:
            out.extend(h)
        return out

    def bbox(self) -> tuple[float, float, float, float]:
        g = self.grid
        return (g.xmin, g.ymin, g.xmax, g.ymax)

    def contains(self, p: Point) -> Where:
        """Classify p against the closed region (holes are excluded open sets).

        Points within the position tolerance of an edge count as boundary
        (positions are routinely produced by interpolation along edges and
        land a few ulps off them).
        """
        for a, b, _tag in self.grid.near_point(p):
            if on_segment(p, a, b):
                return Where.BOUNDARY
            dx, dy = b.x - a.x, b.y - a.y
            L2 = dx * dx + dy * dy
            t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / L2
            if -0.01 <= t <= 1.01:
                t = min(1.0, max(0.0, t))
                if math.hypot(p.x - a.x - t * dx, p.y - a.y - t * dy) <= EPS_POS:
                    return Where.BOUNDARY
        crossings_outer = 0
        crossings_hole = 0
        for a, b, tag in self.grid.row(p):
            if (a.y > p.y) != (b.y > p.y):
                if b.y > a.y:
                    hit = orient(a, b, p) > 0
                else:
                    hit = orient(b, a, p) > 0
                if hit:
                    if tag[0] == "outer":
                        crossings_outer += 1
                    else:
                        crossings_hole += 1
        if crossings_outer % 2 == 0:
            return Where.EXTERIOR
        if crossings_hole % 2 == 1:
            return Where.EXTERIOR  # strictly inside a hole
        return Where.INTERIOR

    def segment_inside(self, a: Point, b: Point, skip_contains_check: bool = False) -> bool:
        """True iff the closed segment ab lies in the closed region.

        Grazing along edges and through vertices counts as inside; any proper
        crossing of a boundary edge does not.
        """
        if not skip_contains_check:
            if self.contains(a) is Where.EXTERIOR or self.contains(b) is Where.EXTERIOR:
                return False
        if same_point(a, b):
            return True
        cuts = [0.0, 1.0]
        ab2 = (b.x - a.x) ** 2 + (b.y - a.y) ** 2
        ab = math.sqrt(ab2)
        for p, q, _tag in self.grid.near_segment(a, b):
            o1 = orient(a, b, p)
            o2 = orient(a, b, q)
            o3 = orient(p, q, a)
            o4 = orient(p, q, b)
            if o1 * o2 < 0 and o3 * o4 < 0:
                # a sub-tolerance-angle crossing is a graze along the edge
                # (interpolated points sit ulps off their own line); leave
                # those to the interval probes instead of rejecting
                if not _grazing_parallel(a, b, p, q):
                    return False
            # touch and near-touch points become cut parameters: a boundary
            # vertex a hair off the segment must still split the probing
            # intervals, else a segment threading a row of such vertices can
            # hide exterior stretches between two lucky probes
            for r in (p, q):
                t = ((r.x - a.x) * (b.x - a.x) + (r.y - a.y) * (b.y - a.y)) / ab2
                if -1e-9 < t < 1.0 + 1e-9:
                    tc = min(1.0, max(0.0, t))
                    fx = a.x + tc * (b.x - a.x)
                    fy = a.y + tc * (b.y - a.y)
                    if math.hypot(r.x - fx, r.y - fy) <= 64.0 * EPS_POS * max(1.0, ab):
                        cuts.append(tc)
            if o3 == 0 and on_segment(a, p, q):
                cuts.append(0.0)
            if o4 == 0 and on_segment(b, p, q):
                cuts.append(1.0)
        cuts = sorted(set(min(1.0, max(0.0, t)) for t in cuts))
        # probe at irrational fractions: a midpoint probe can land exactly on
        # a vertex of a periodic boundary (grazing chains through evenly
        # spaced corners) and report boundary instead of exterior
        for t0, t1 in zip(cuts, cuts[1:]):
            if t1 - t0 < 1e-12:
                continue
            for frac in (0.3819660112501051, 0.6180339887498949):
                tm = t0 + frac * (t1 - t0)
                mid = Point(a.x + tm * (b.x - a.x), a.y + tm * (b.y - a.y))
                if self.contains(mid) is Where.EXTERIOR:
                    return False
        return True

    def ray_clip(self, origin: Point, direction: tuple[float, float], tmax: float) -> float:
        """Largest t <= tmax such that origin + t*direction stays inside."""
        end = Point(origin.x + tmax * direction[0], origin.y + tmax * direction[1])
        best = tmax
        for a, b, _tag in self.grid.near_segment(origin, end):
            t = ray_segment_param(origin, direction, a, b)
            if t is not None and 1e-12 < t < best:
                best = t
        return best

    def to_rings(self) -> tuple[list[Point], list[list[Point]]]:
        return list(self.outer), [list(h) for h in self.holes]


def _grazing_parallel(a: Point, b: Point, p: Point, q: Point) -> bool:
    """True when segment pq lies within the position tolerance of line ab."""

    def line_dist(r: Point) -> float:
        num = abs((b.x - a.x) * (r.y - a.y) - (b.y - a.y) * (r.x - a.x))
        return num / math.hypot(b.x - a.x, b.y - a.y)

    if line_dist(p) <= EPS_POS and line_dist(q) <= EPS_POS:
        return True

    def line_dist2(r: Point) -> float:
        num = abs((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))
        return num / math.hypot(q.x - p.x, q.y - p.y)

    return line_dist2(a) <= EPS_POS and line_dist2(b) <= EPS_POS


def _ring_edges(ring: Sequence[Point]):
    n = len(ring)
    for i in range(n):
        yield ring[i], ring[(i + 1) % n]


# ---------------------------------------------------------------------------
# environment


class PolygonEnv:
    """The arena: a strictly validated closed polygon with holes.

    `diam` (max vertex-to-vertex geodesic distance) is computed lazily by the
    visibility-graph module and cached here.
    """

    def __init__(self, outer: Sequence[Point], holes: Sequence[Sequence[Point]] = ()):
        self.shape = RegionShape(outer, holes, validate=True)
        self._diam: Optional[float] = None

    @property
    def outer(self) -> list[Point]:
        return self.shape.outer

    @property
    def holes(self) -> list[list[Point]]:
        return self.shape.holes

    @property
    def n(self) -> int:
        return self.shape.vertex_count

    @property
    def h(self) -> int:
        return len(self.shape.holes)

    @property
    def diam(self) -> float:
        if self._diam is None:
            from . import visgraph

            self._diam = visgraph.diameter(self)
        return self._diam

    def contains(self, p: Point) -> Where:
        return self.shape.contains(p)

    def to_json(self) -> dict:
        outer, holes = self.shape.to_rings()
        return {"outer": [[p.x, p.y] for p in outer], "holes": [[[p.x, p.y] for p in h] for h in holes]}

    @classmethod
    def from_json(cls, data: dict) -> "PolygonEnv":
        return cls([pt(*p) for p in data["outer"]], [[pt(*p) for p in h] for h in data.get("holes", [])])

    @classmethod
    def load(cls, path) -> "PolygonEnv":
        with open(path) as f:
            return cls.from_json(json.load(f))

    def save(self, path):
        with open(path, "w") as f:
            json.dump(self.to_json(), f)


def contains(env, p: Point) -> Where:
    shape = env.shape if hasattr(env, "shape") else env
    return shape.contains(p)


# ---------------------------------------------------------------------------
# region splitting


@dataclass
class Face:
    """One face of the subdivision of a region by a dividing polyline.

    outer is a simple ccw ring; sources carries, per outer edge i
    (outer[i] -> outer[i+1]), the set of tags of the input edges it came from.
    Hole rings inherited from the input (or pinched off the face walk) are cw.
    path_side is +1 if the face lies to the left of the dividing path, -1 if
    to the right, None if no path edge bounds it.
    """

    outer: list[Point]
    sources: list[frozenset]
    holes: list[list[Point]] = field(default_factory=list)
    hole_sources: list[list[frozenset]] = field(default_factory=list)
    path_side: Optional[int] = None

    _shape: Optional[RegionShape] = None

    @property
    def shape(self) -> RegionShape:
        if self._shape is None:
            self._shape = RegionShape(self.outer, self.holes, validate=False)
        return self._shape

    @property
    def area(self) -> float:
        return signed_area(self.outer) + sum(signed_area(h) for h in self.holes)


def split_region(region, path: Polyline | Sequence[Point]) -> list[Face]:
    """Split a region along a polyline whose endpoints lie on the boundary.

    The path must stay in the closed region and may only meet the boundary at
    shared vertices or along collinear overlaps; a path that properly crosses
    a boundary edge, or that erases into the boundary entirely, is rejected.
    Returns the faces of the induced subdivision with provenance tags.
    """
    shape: RegionShape = region.shape if hasattr(region, "shape") else region
    pts = list(path.pts if isinstance(path, Polyline) else [Point(float(p[0]), float(p[1])) for p in path])
    if len(pts) < 2:
        raise SplitError("path needs at least 2 points")
    for p in (pts[0], pts[-1]):
        if shape.contains(p) is not Where.BOUNDARY:
            raise SplitError(f"path endpoint {p} is not on the region boundary")
    for p in pts:
        if shape.contains(p) is Where.EXTERIOR:
            raise SplitError(f"path point {p} lies outside the region")
    for a, b in zip(pts, pts[1:]):
        if not shape.segment_inside(a, b):
            raise SplitError(f"path segment {a}-{b} exits the region")

    edges: list[tuple[Point, Point, tuple]] = []
    for i in range(len(shape.outer)):
        edges.append((shape.outer[i], shape.outer[(i + 1) % len(shape.outer)], ("outer", i)))
    for k, h in enumerate(shape.holes):
        for i in range(len(h)):
            edges.append((h[i], h[(i + 1) % len(h)], ("hole", k, i)))
    path_dirs: dict[tuple, tuple[float, float]] = {}
    for i, (a, b) in enumerate(zip(pts, pts[1:])):
        edges.append((a, b, ("path", i)))
        L = dist(a, b)
        path_dirs[("path", i)] = ((b.x - a.x) / L, (b.y - a.y) / L)

    faces = _extract_faces(edges, path_dirs)
    if len(faces) < 2:
        raise SplitError("path does not divide the region (degenerate split)")
    total = sum(f.area for f in faces)
    if abs(total - shape.area) > 1e-6 * max(1.0, abs(shape.area)):
        raise SplitError(f"face areas {total} do not add up to region area {shape.area}")
    return faces


def _extract_faces(edges: list[tuple[Point, Point, tuple]], path_dirs: dict) -> list[Face]:
    # vertex pool keyed by quantized coordinates
    vids: dict[tuple[int, int], int] = {}
    vpts: list[Point] = []

    def vid(p: Point) -> int:
        k = key_of(p)
        i = vids.get(k)
        if i is None:
            i = len(vpts)
            vids[k] = i
            vpts.append(p)
        return i

    raw = [(vid(a), vid(b), tag) for a, b, tag in edges]
    for a, b, tag in raw:
        if a == b:
            raise SplitError(f"zero-length edge from {tag}")

    # split every edge at every vertex lying in (or within the position
    # tolerance of) its interior; a vertex a few ulps off an edge must still
    # join the arrangement there, else hairline slivers confuse the face
    # walk. Proper crossings between path edges and anything else are
    # rejected (the arrangement is exact on input vertices otherwise).
    pieces: dict[tuple[int, int], set[tuple]] = {}
    for a, b, tag in raw:
        pa, pb = vpts[a], vpts[b]
        seg2 = (pb.x - pa.x) ** 2 + (pb.y - pa.y) ** 2
        cuts = [(0.0, a), (1.0, b)]
        for j, q in enumerate(vpts):
            if j == a or j == b:
                continue
            t = ((q.x - pa.x) * (pb.x - pa.x) + (q.y - pa.y) * (pb.y - pa.y)) / seg2
            if t <= 0.0 or t >= 1.0:
                continue
            fx = pa.x + t * (pb.x - pa.x)
            fy = pa.y + t * (pb.y - pa.y)
            if on_segment(q, pa, pb) or math.hypot(q.x - fx, q.y - fy) <= EPS_POS:
                cuts.append((t, j))
        cuts.sort()
        for (_, u), (_, v) in zip(cuts, cuts[1:]):
            if u == v:
                continue
            k = (min(u, v), max(u, v))
            pieces.setdefault(k, set()).add(tag)
    # proper crossing check between path pieces and everything else (grazing
    # sub-tolerance crossings along nearly-collinear stretches excepted)
    plist = [(u, v, tags) for (u, v), tags in pieces.items()]
    for i in range(len(plist)):
        u1, v1, t1 = plist[i]
        if not any(t[0] == "path" for t in t1):
            continue
        for j in range(len(plist)):
            if i == j:
                continue
            u2, v2, _t2 = plist[j]
            if len({u1, v1, u2, v2}) < 4:
                continue
            if seg_seg_proper(vpts[u1], vpts[v1], vpts[u2], vpts[v2]) and not _grazing_parallel(
                vpts[u1], vpts[v1], vpts[u2], vpts[v2]
            ):
                raise SplitError(
                    f"path piece {vpts[u1]}-{vpts[v1]} properly crosses {vpts[u2]}-{vpts[v2]}"
                )

    # adjacency with rotation order
    nbrs: dict[int, list[int]] = {}
    for (u, v), _tags in pieces.items():
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    for v, lst in nbrs.items():
        pv = vpts[v]
        lst.sort(key=lambda w: math.atan2(vpts[w].y - pv.y, vpts[w].x - pv.x))

    # face walk: next dart of (u -> v) turns to the neighbor of v that comes
    # first clockwise from u; traced faces have their interior on the left
    def next_dart(u: int, v: int) -> tuple[int, int]:
        lst = nbrs[v]
        i = lst.index(u)
        return (v, lst[i - 1])

    seen: set[tuple[int, int]] = set()
    cycles: list[list[tuple[int, int]]] = []
    for (u0, v0) in sorted(pieces.keys()):
        for d0 in ((u0, v0), (v0, u0)):
            if d0 in seen:
                continue
            cyc = []
            d = d0
            while d not in seen:
                seen.add(d)
                cyc.append(d)
                d = next_dart(*d)
            cycles.append(cyc)

    # identify hole-interior cycles: a cycle using only edges of hole k that
    # traverses the hole ccw (area > 0) is the hole's inside; drop it
    def cycle_area(cyc) -> float:
        s = 0.0
        for u, v in cyc:
            a, b = vpts[u], vpts[v]
            s += a.x * b.y - b.x * a.y
        return 0.5 * s

    def cycle_tags(cyc) -> set:
        out = set()
        for u, v in cyc:
            out |= pieces[(min(u, v), max(u, v))]
        return out

    pos_cycles, neg_cycles = [], []
    for cyc in cycles:
        area = cycle_area(cyc)
        if abs(area) < 1e-12:
            continue
        if area > 0:
            # the interior face of hole k walks edges that all lie on ring k
            # (possibly co-tagged as path edges when the path runs along it)
            per_edge_holes = []
            for u, v in cyc:
                per_edge_holes.append({t[1] for t in pieces[(min(u, v), max(u, v))] if t[0] == "hole"})
            common = set.intersection(*per_edge_holes) if per_edge_holes else set()
            if common:
                continue  # interior of a hole
            pos_cycles.append(cyc)
        else:
            neg_cycles.append(cyc)

    # build faces from positive cycles; pinched cw subloops become hole rings
    faces: list[Face] = []
    for cyc in pos_cycles:
        ring = [d[0] for d in cyc]
        ring_tags = [pieces[(min(u, v), max(u, v))] for u, v in cyc]
        outer, outer_tags, phs = _unpinch(ring, ring_tags, vpts)
        if abs(signed_area([vpts[i] for i in outer])) < 1e-12:
            continue
        side = _path_side(outer, outer_tags, vpts, path_dirs)
        faces.append(
            Face(
                outer=[vpts[i] for i in outer],
                sources=[frozenset(t) for t in outer_tags],
                holes=[[vpts[i] for i in h] for h, _ in phs],
                hole_sources=[[frozenset(t) for t in ht] for _, ht in phs],
                path_side=side,
            )
        )

    # negative cycles: the global exterior contour(s) plus outlines of loose
    # components (untouched holes / hole clusters); nest the latter as holes
    comp_of_outer = None
    loose: list[tuple[list[int], list[set]]] = []
    for cyc in neg_cycles:
        tags = cycle_tags(cyc)
        if any(t[0] in ("outer", "path") for t in tags):
            comp_of_outer = cyc  # exterior of the main component
            continue
        ring = [d[0] for d in cyc]
        ring_tags = [pieces[(min(u, v), max(u, v))] for u, v in cyc]
        loose.append((ring, ring_tags))
    del comp_of_outer

    for ring, ring_tags in loose:
        # a loose contour may itself be pinched (tangent holes); peel loops
        for loop, loop_tags in _peel_loops(ring, ring_tags):
            probe = vpts[loop[0]]
            host = None
            for f in faces:
                if point_in_ring(probe, f.outer):
                    host = f
                    break
            if host is None:
                raise SplitError(f"could not nest hole contour at {probe}")
            host.holes.append([vpts[i] for i in loop])
            host.hole_sources.append([frozenset(t) for t in loop_tags])

    return faces


def _unpinch(ring: list[int], tags: list[set], vpts) -> tuple[list[int], list[set], list]:
    """Remove pinch subloops from a positive face walk.

    Returns (outer ring ids, outer tags, [(hole ring ids, hole tags), ...]).
    Negative-area (cw) subloops at repeated vertices are holes of the face.
    """
    holes = []
    ring = list(ring)
    tags = list(tags)
    changed = True
    while changed:
        changed = False
        index: dict[int, int] = {}
        for i, v in enumerate(ring):
            if v in index:
                j = i - index[v]
                if j >= 2:
                    sub = ring[index[v]:i]
                    sub_tags = tags[index[v]:i]
                    area = signed_area([vpts[k] for k in sub])
                    if area < 0:
                        holes.append((sub, sub_tags))
                        del ring[index[v]:i]
                        del tags[index[v]:i]
                        changed = True
                        break
                # zero-length or ccw subloop: restart scan from here
                index = {v: i}
            else:
                index[v] = i
    return ring, tags, holes


def _peel_loops(ring: list[int], tags: list[set]):
    """Split a (possibly pinched) closed walk into simple loops."""
    out = []
    ring = list(ring)
    tags = list(tags)
    while ring:
        index: dict[int, int] = {}
        peeled = False
        for i, v in enumerate(ring):
            if v in index and i - index[v] >= 2:
                out.append((ring[index[v]:i], tags[index[v]:i]))
                del ring[index[v]:i]
                del tags[index[v]:i]
                peeled = True
                break
            index[v] = i
        if not peeled:
            if len(ring) >= 3:
                out.append((ring, tags))
            ring = []
    return out


def _path_side(ring: list[int], ring_tags: list[set], vpts, path_dirs: dict) -> Optional[int]:
    """Which side of the dividing path the face lies on.

    A face walked ccw with a forward path dart (matching path direction) lies
    to the path's left (+1); a reverse dart means right (-1). Edges shared
    between the path and a boundary ring do not separate the two sides and
    are skipped.
    """
    fwd = rev = 0
    n = len(ring)
    for i in range(n):
        tags = ring_tags[i]
        ptags = sorted(t for t in tags if t[0] == "path")
        if not ptags or any(t[0] != "path" for t in tags):
            continue
        seg_dir = path_dirs.get(ptags[0])
        if seg_dir is None:
            continue
        a, b = vpts[ring[i]], vpts[ring[(i + 1) % n]]
        d = (b.x - a.x) * seg_dir[0] + (b.y - a.y) * seg_dir[1]
        if d > 0:
            fwd += 1
        elif d < 0:
            rev += 1
    if fwd and not rev:
        return 1
    if rev and not fwd:
        return -1
    if fwd and rev:
        raise SplitError("face bounded by both sides of the dividing path")
    return None
