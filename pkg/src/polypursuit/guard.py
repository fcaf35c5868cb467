"""Minimal-path guarding: projections, the guard move, initialization walks.

A guard is a pursuer parked on the evader's projection onto a dividing path.
The projection of e is the point of the path at arc length d(e, u) from the
start anchor u (capped at the far anchor), with d measured inside the closed
region on the evader's side of the path; for minimal paths that point is at
least as close as e to every point of the path, so the evader cannot touch
or cross the path without being caught on the following pursuer move.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

from . import visgraph
from .geom import Point, Polyline, Where, dist, key_of, segments_intersect
from .kpaths import AnchoredPath

LIPSCHITZ_TOL = 1e-6


class GuardError(RuntimeError):
    """A guard-machinery invariant failed (engine bug, not evader success)."""


def region_geodesic(region, a: Point, b: Point):
    if hasattr(region, "geodesic"):
        return region.geodesic(a, b)
    return visgraph.geodesic(region, a, b)


def region_contains(region, p: Point) -> Where:
    if hasattr(region, "contains"):
        return region.contains(p)
    return region.shape.contains(p)


@dataclass
class ArcPoint:
    s: float
    pt: Point


@dataclass
class GuardState:
    """One pursuer assigned to a dividing path, parked on the projection.

    region is the evader-side region fixed at establishment time; all guard
    distances are measured inside it (the evader can only shrink its own
    reachable set afterwards, which keeps every bound valid).
    """

    path: AnchoredPath
    region: object
    s: float
    path_id: str = ""
    pursuer_id: int = -1

    @property
    def pursuer(self) -> Point:
        return self.path.polyline.point_at(self.s)


def path_of(p: AnchoredPath | Polyline | Sequence[Point]) -> Polyline:
    if isinstance(p, AnchoredPath):
        return p.polyline
    if isinstance(p, Polyline):
        return p
    return Polyline([Point(float(q[0]), float(q[1])) for q in p])


def project(path: AnchoredPath | Polyline, e: Point, region) -> ArcPoint:
    """Projection of e onto a minimal path (the distance-from-u construction).

    s = min(d(e, u), len(path)) with d measured in the evader-side region
    including the path itself; when d(e, u) exceeds the path length the far
    anchor v is the projection by convention.
    """
    pl = path_of(path)
    if region_contains(region, e) is Where.EXTERIOR:
        raise GuardError(f"evader {e} is outside the guarded region")
    d = region_geodesic(region, e, pl.pts[0]).length
    s = min(d, pl.length)
    return ArcPoint(s, pl.point_at(s))


def trajectory_touches_path(trajectory: Polyline, path: Polyline) -> bool:
    """Closed intersection test between the evader's move and a guarded path."""
    tp = trajectory.pts
    pp = path.pts
    for i in range(len(tp) - 1):
        for j in range(len(pp) - 1):
            if segments_intersect((tp[i], tp[i + 1]), (pp[j], pp[j + 1]), "closed"):
                return True
    return False


def guard_move(gs: GuardState, e_old: Point, e_new: Point, trajectory: Optional[Polyline] = None):
    """One guard update after an evader move.

    Returns ('capture', e_new) when the move touched or crossed the guarded
    path (the pursuer can reach e_new within one move from the projection),
    else ('move', new GuardState). The projection shift is checked against
    the 1-Lipschitz bound; a violation means the path was not minimal for
    this region and is an engine bug.
    """
    pl = gs.path.polyline
    from .geom import same_point

    if trajectory is None:
        trajectory = Polyline([e_old, e_new]) if not same_point(e_old, e_new) else None
    if trajectory is not None and trajectory_touches_path(trajectory, pl):
        return ("capture", e_new)
    if same_point(e_old, e_new):
        return ("move", gs)
    new = project(gs.path, e_new, gs.region)
    move_len = trajectory.length if trajectory is not None else dist(e_old, e_new)
    if abs(new.s - gs.s) > move_len + LIPSCHITZ_TOL:
        raise GuardError(
            f"projection moved {abs(new.s - gs.s):.6f} on an evader move of {move_len:.6f} "
            f"(path not minimal for this region?)"
        )
    return ("move", replace(gs, s=new.s))


class GuardWalk:
    """Initialization walk (multi-turn): sweep along the path to the projection.

    Each pursuer turn the caller supplies the current projection target; the
    walker advances one unit toward it and snaps onto it once within one unit
    (which covers the projection crossing over the walker between turns).
    """

    def __init__(self, path: AnchoredPath, start_s: float = 0.0):
        self.path = path
        self.s = float(start_s)
        self.established = False

    def step(self, target_s: float) -> Point:
        L = self.path.polyline.length
        target_s = min(max(target_s, 0.0), L)
        gap = target_s - self.s
        if abs(gap) <= 1.0 + 1e-12:
            self.s = target_s
            self.established = True
        else:
            self.s += math.copysign(1.0, gap)
            self.s = min(max(self.s, 0.0), L)
        return self.path.polyline.point_at(self.s)


def initialize_guard(
    path: AnchoredPath,
    region,
    evader_positions,
    start_s: float = 0.0,
    max_turns: Optional[int] = None,
) -> tuple[GuardState, int]:
    """Drive a GuardWalk against a sequence of evader positions.

    evader_positions yields e's position each pursuer turn (a static evader
    is an endless repeat). Returns (established GuardState, turns used).
    """
    walk = GuardWalk(path, start_s)
    limit = max_turns if max_turns is not None else int(10 * path.polyline.length + 20)
    turns = 0
    for e in evader_positions:
        if turns >= limit:
            raise GuardError(f"guard walk did not finish within {limit} turns")
        turns += 1
        walk.step(project(path, e, region).s)
        if walk.established:
            return GuardState(path=path, region=region, s=walk.s), turns
    raise GuardError("evader position stream ended before establishment")


def check_minimal(
    path: AnchoredPath | Polyline,
    region,
    samples: int = 10_000,
    rng: Optional[random.Random] = None,
    tol: float = 1e-6,
):
    """Sampled minimality oracle: no x,z on the path may be shortcut via the region.

    Draws `samples` triples (x, z on the path; y in the region) and tests
    d_path(x, z) <= d(x, y) + d(y, z) + tol. Returns (ok, witness) where the
    witness is a violating (x, y, z, lhs, rhs) tuple. A sampling oracle, not
    a proof; the engine itself relies on minimality established structurally.
    """
    rng = rng or random.Random(0)
    pl = path_of(path)
    adapter = _MinimalAdapter(region)
    L = pl.length
    # distance tables from a fixed set of path arc points
    M = min(1024, max(64, samples // 8))
    arc = [L * i / (M - 1) for i in range(M)]
    table = []
    for s in arc:
        x = pl.point_at(s)
        table.append((s, x, adapter.point_to_nodes(x)))
    xmin, ymin, xmax, ymax = adapter.bbox()
    for _ in range(samples):
        i = rng.randrange(M)
        j = rng.randrange(M)
        if i == j:
            continue
        s_x, x, dx = table[i]
        s_z, z, dz = table[j]
        y = None
        for _try in range(64):
            cand = Point(rng.uniform(xmin, xmax), rng.uniform(ymin, ymax))
            if adapter.contains(cand) is not Where.EXTERIOR:
                y = cand
                break
        if y is None:
            continue
        lhs = abs(s_x - s_z)
        if lhs <= dist(x, y) + dist(y, z) + tol:
            continue  # Euclidean lower bounds already satisfy the inequality
        dxy = adapter.dist_to(y, x, dx)
        dzy = adapter.dist_to(y, z, dz)
        rhs = dxy + dzy
        if lhs > rhs + tol:
            return False, (x, y, z, lhs, rhs)
    return True, None


class _MinimalAdapter:
    """Uniform distance machinery over plain regions and glued side regions."""

    def __init__(self, region):
        from .regions import SideRegion

        if isinstance(region, SideRegion):
            self.side = region
            self.shape = None
            self.nodes = region.nodes
            self.adj = region.adj
        else:
            self.side = None
            self.shape = region.shape if hasattr(region, "shape") else region
            g = visgraph.visgraph_of(self.shape)
            self.nodes = g.nodes
            self.adj = g.adj
            self._g = g

    def bbox(self):
        if self.shape is not None:
            return self.shape.bbox()
        xs = [c for f in self.side.faces for c in (f.shape.bbox()[0], f.shape.bbox()[2])]
        ys = [c for f in self.side.faces for c in (f.shape.bbox()[1], f.shape.bbox()[3])]
        return min(xs), min(ys), max(xs), max(ys)

    def contains(self, p: Point) -> Where:
        return self.shape.contains(p) if self.shape is not None else self.side.contains(p)

    def vis(self, p: Point):
        if self.side is not None:
            return self.side._vis(p)
        return [
            (i, dist(p, q))
            for i, q in enumerate(self.nodes)
            if self.shape.segment_inside(p, q, skip_contains_check=True)
        ]

    def direct(self, a: Point, b: Point) -> bool:
        if self.shape is not None:
            return self.shape.segment_inside(a, b)
        for f in self.side.faces:
            s = f.shape
            if s.contains(a) is not Where.EXTERIOR and s.contains(b) is not Where.EXTERIOR:
                if s.segment_inside(a, b):
                    return True
        return False

    def point_to_nodes(self, p: Point) -> list[float]:
        n = len(self.nodes)
        key = key_of(p)
        src = None
        for i, q in enumerate(self.nodes):
            if key_of(q) == key:
                src = i
                break
        ext = [list(lst) for lst in self.adj] + [[]]
        if src is None:
            src = n
            for i, w in self.vis(p):
                ext[n].append((i, w))
                ext[i].append((n, w))
        return visgraph.dijkstra_lengths(ext, src)[:n]

    def combined(self, x: Point, y: Point, dx_nodes: list[float], vis_y) -> float:
        best = math.inf
        if self.direct(x, y):
            best = dist(x, y)
        for k, w in vis_y:
            d = w + dx_nodes[k]
            if d < best:
                best = d
        return best

    def dist_to(self, x: Point, src: Point, d_src: list[float]) -> float:
        """Geodesic distance from src (with its node table) to x.

        Tries the direct segment, then nodes in ascending bound order
        (|x - w| + d_src[w]); the first node visible from x realizes the
        minimum over visible nodes, so usually one or two segment tests
        suffice.
        """
        best = math.inf
        if self.direct(src, x):
            best = dist(src, x)
        order = sorted(
            ((dist(x, q) + d_src[i], i) for i, q in enumerate(self.nodes)), key=lambda t: t[0]
        )
        for bound, i in order:
            if bound >= best:
                break
            if self._sees(x, self.nodes[i]):
                best = bound
                break
        return best

    def _sees(self, a: Point, b: Point) -> bool:
        if self.shape is not None:
            return self.shape.segment_inside(a, b, skip_contains_check=True)
        for f in self.side.faces:
            s = f.shape
            if s.contains(a) is not Where.EXTERIOR and s.contains(b) is not Where.EXTERIOR:
                if s.segment_inside(a, b):
                    return True
        return False
