"""Three-pursuer orchestration: guard walks, eviction, lion endgame.

The policy runs a phase machine per game:

  INIT_FIRST_PATH  pursuer 0 walks the first dividing path to the evader's
                   projection, confining it to one side
  ITERATE          the free pursuer establishes a guard on the next dividing
                   path (both sides holed), shrinking the region
  EVICT            when one side of the split is hole-free, the free pursuer
                   clears that side with a clamped lion pursuit and seals it
  ENDGAME          the region is hole-free: lion pursuit from a fixed origin
  CAPTURED         a pursuer is collocated with the evader

On every pursuers' half-turn, any pursuer within geodesic distance one of
the evader moves exactly onto it; this single rule realizes every capture
case in the underlying lemmas (crossing a guarded path, lion contact, and
so on), because each lemma's capture argument is precisely a bound of one
on that geodesic distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import visgraph
from .geom import Point, Polyline, Where, dist, key_of
from .guard import GuardState, GuardWalk, guard_move, project
from .kpaths import AnchoredPath, DistinctPathFinder, shortest_path
from .regions import (
    BOUNDARY,
    EndgameRegion,
    EvaderRegion,
    RegionError,
    SideRegion,
    SplitOutcome,
    choose_anchors,
    child_region,
    initial_region,
    region_from_face,
    split_by_third,
)

CAP_EPS = 1e-9


class PursuitError(RuntimeError):
    pass


@dataclass
class PursuitConfig:
    n_pursuers: int = 3
    cap_constant: float = 16.0  # C in the C * n * diam^2 turn bound
    lion_tol: float = 1e-9


# ---------------------------------------------------------------------------
# lion pursuit


@dataclass
class LionState:
    """Pursuer advancing along the geodesic from a fixed origin to the evader."""

    origin: Point
    p: Point
    region: object  # hole-free region (Face or shape-like) with geodesics
    n_region: int
    d_origin: float = 0.0
    fresh: bool = True  # baseline just (re)set; no progress claim on next move

    progress_log: list = field(default_factory=list)


def _region_dist(region, a: Point, b: Point) -> float:
    shape = region.shape if hasattr(region, "shape") else region
    if shape.segment_inside(a, b):
        return dist(a, b)
    return visgraph.geodesic(shape, a, b).length


def lion_move(ls: LionState, e_new: Point, tol: float = 1e-9):
    """One lion step: advance along the origin-evader geodesic.

    Returns ('capture', e_new) or ('move', p'). The new position is the point
    of the current geodesic farthest from the origin within one unit of the
    pursuer; except on a fresh baseline, squared distance from the origin
    must grow by at least 1/n_region.
    """
    shape = ls.region.shape if hasattr(ls.region, "shape") else ls.region
    if _region_dist(ls.region, ls.p, e_new) <= 1.0 + CAP_EPS:
        return ("capture", e_new)
    gp = visgraph.geodesic(shape, ls.origin, e_new)
    L = gp.length
    pl = gp.polyline
    lo = max(0.0, ls.d_origin - 1.0)
    hi = min(L, ls.d_origin + 1.0)
    # farthest reachable arc parameter: scan then bisect on the reachability
    # predicate (distance from p is within one unit)
    def reachable(t: float) -> bool:
        return _region_dist(ls.region, ls.p, pl.point_at(t)) <= 1.0 + CAP_EPS

    steps = 24
    t_ok = None
    for i in range(steps, -1, -1):
        t = lo + (hi - lo) * i / steps
        if reachable(t):
            t_ok = t
            break
    if t_ok is None:
        # near tangency the reachable window is narrower than the scan grid:
        # try the Euclidean projections of p onto the geodesic's segments
        cand = []
        cum = pl._cum
        for i in range(len(pl.pts) - 1):
            a0, b0 = pl.pts[i], pl.pts[i + 1]
            seg2 = (b0.x - a0.x) ** 2 + (b0.y - a0.y) ** 2
            if seg2 <= 0:
                continue
            t = ((ls.p.x - a0.x) * (b0.x - a0.x) + (ls.p.y - a0.y) * (b0.y - a0.y)) / seg2
            t = min(1.0, max(0.0, t))
            s = cum[i] + t * math.sqrt(seg2)
            if lo - 1e-9 <= s <= hi + 1e-9:
                cand.append(min(hi, max(lo, s)))
        for s in sorted(cand, reverse=True):
            if reachable(s):
                t_ok = s
                break
    if t_ok is None:
        # cannot attach to the new geodesic this turn: reposition toward it
        # and restart the progress baseline (no progress is claimed)
        target = pl.point_at(min(L, max(0.0, ls.d_origin)))
        gp2 = visgraph.geodesic(shape, ls.p, target)
        p_new = gp2.polyline.point_at(min(1.0, gp2.length))
        ls.p = p_new
        ls.d_origin = visgraph.geodesic(shape, ls.origin, p_new).length
        ls.fresh = True
        return ("reposition", p_new)
    t_hi = min(hi, t_ok + (hi - lo) / steps)
    a, b = t_ok, t_hi
    for _ in range(50):
        m = 0.5 * (a + b)
        if reachable(m):
            a = m
        else:
            b = m
    t_star = a
    p_new = pl.point_at(t_star)
    old_d = ls.d_origin
    if not ls.fresh:
        gain = t_star * t_star - old_d * old_d
        need = 1.0 / max(ls.n_region, 1)
        ls.progress_log.append((old_d, t_star, ls.n_region, gain))
        if gain < need - max(tol, 1e-9):
            raise PursuitError(
                f"lion progress violated: d^2 gain {gain:.3e} < 1/{ls.n_region} (d {old_d:.6f} -> {t_star:.6f})"
            )
    ls.p = p_new
    ls.d_origin = t_star
    ls.fresh = False
    return ("move", p_new)


# ---------------------------------------------------------------------------
# per-pursuer plan units


class TravelPlan:
    """Follow a geodesic route one unit per turn."""

    def __init__(self, env, start: Point, goal: Point):
        gp = visgraph.geodesic(env, start, goal)
        self.route = gp.polyline
        self.length = gp.length
        self.s = 0.0

    @property
    def done(self) -> bool:
        return self.s >= self.length - 1e-12

    def step(self) -> Point:
        self.s = min(self.length, self.s + 1.0)
        return self.route.point_at(self.s)


class EstablishPlan:
    """Travel to the path's start anchor, then sweep to the projection.

    Valid whenever the dividing path is minimal with respect to whichever
    side the evader currently occupies (first path; both-holed splits).
    """

    phase_tag = None  # set by owner

    def __init__(self, env, pursuer_id: int, start: Point, path: AnchoredPath, label: str, sides: dict[int, SideRegion]):
        self.pursuer_id = pursuer_id
        self.path = path
        self.label = label
        self.sides = sides
        self.travel = TravelPlan(env, start, path.polyline.pts[0])
        self.walk = GuardWalk(path)
        self.result: Optional[GuardState] = None

    def _target(self, e: Point) -> float:
        foot = self.path.polyline.param_of(e, tol=1e-9)
        if foot is not None:
            return foot
        for sign in (1, -1):
            side = self.sides.get(sign)
            if side is not None and side.contains(e) is not Where.EXTERIOR:
                d = side.geodesic(e, self.path.polyline.pts[0]).length
                return min(d, self.path.polyline.length)
        raise PursuitError(f"evader {e} is outside both sides of path {self.label}")

    def side_of(self, e: Point) -> Optional[SideRegion]:
        for sign in (1, -1):
            side = self.sides.get(sign)
            if side is not None and side.contains(e) is not Where.EXTERIOR:
                return side
        return None

    def step(self, e: Point) -> Point:
        if not self.travel.done:
            return self.travel.step()
        pos = self.walk.step(self._target(e))
        if self.walk.established:
            side = self.side_of(e) or self.sides[1]
            self.result = GuardState(path=self.path, region=side, s=self.walk.s, path_id=self.label, pursuer_id=self.pursuer_id)
        return pos


class EvictPlan:
    """Clear a hole-free side: lion pursuit from the apex, clamped to the side.

    While the evader is inside the hole-free side the pursuer plays lion with
    the apex as origin; when the evader is outside, the pursuer makes for the
    evader's projection on the dividing path and sweeps along it. It ends
    with a capture or with the pursuer on the projection while the evader is
    on the holed side: the guard is then established and the side is sealed.
    """

    def __init__(
        self,
        env,
        pursuer_id: int,
        start: Point,
        path: AnchoredPath,
        label: str,
        apex: Point,
        free_side: SideRegion,
        holed_side: SideRegion,
        lion_registry: Optional[list] = None,
    ):
        self.pursuer_id = pursuer_id
        self.path = path
        self.label = label
        self.apex = apex
        self.free_side = free_side
        self.holed_side = holed_side
        self.travel = TravelPlan(env, start, apex)
        self.pos = start
        self.lion: Optional[LionState] = None
        self.result: Optional[GuardState] = None
        self.events: list[str] = []
        self.lion_registry = lion_registry if lion_registry is not None else []

    def _evader_in_free_side(self, e: Point) -> bool:
        w = self.free_side.contains(e)
        if w is Where.EXTERIOR:
            return False
        if w is Where.INTERIOR:
            return True
        # boundary: on the dividing path itself counts as outside (the
        # projection walk handles it; contact means capture next half-turn)
        return self.path.polyline.param_of(e, tol=1e-9) is None

    def _projection_target(self, e: Point) -> float:
        foot = self.path.polyline.param_of(e, tol=1e-9)
        if foot is not None:
            return foot
        if self.holed_side.contains(e) is not Where.EXTERIOR:
            d = self.holed_side.geodesic(e, self.path.polyline.pts[0]).length
            return min(d, self.path.polyline.length)
        # evader deep in the free side: head for its side-of-path foot
        d = self.free_side.geodesic(e, self.path.polyline.pts[0]).length
        return min(d, self.path.polyline.length)

    def step(self, e: Point) -> Point:
        if not self.travel.done:
            self.pos = self.travel.step()
            return self.pos
        if self._evader_in_free_side(e):
            face = self.free_side.face_of(e)
            if self.lion is None or not _same_region(self.lion.region, face):
                origin = self.apex
                if face.shape.contains(origin) is Where.EXTERIOR:
                    # this face of the side does not touch the apex: any
                    # fixed vertex of the face serves as the lion origin
                    g = visgraph.visgraph_of(face.shape)
                    origin = min(
                        (q for q in g.nodes), key=lambda q: (dist(q, self.apex), q.x, q.y)
                    )
                if face.shape.contains(self.pos) is Where.EXTERIOR:
                    # pursuer is outside this face (the evader hopped to a
                    # pinch sibling): head for the face's origin first
                    gp = visgraph.geodesic(self.env, self.pos, origin)
                    self.pos = gp.polyline.point_at(min(1.0, gp.length))
                    if face.shape.contains(self.pos) is Where.EXTERIOR:
                        return self.pos
                d0 = _region_dist(face, origin, self.pos)
                restart = self.lion is not None
                self.lion = LionState(
                    origin=origin, p=self.pos, region=face, n_region=face.shape.vertex_count, d_origin=d0
                )
                self.lion_registry.append(self.lion)
                if restart:
                    self.events.append("lion-restart")
            out = lion_move(self.lion, e)
            if out[0] == "capture":
                self.pos = e
                return self.pos
            self.pos = out[1]
            return self.pos
        # evader outside the free side: make for its projection on the path
        target_s = self._projection_target(e)
        target_pt = self.path.polyline.point_at(target_s)
        s_pos = self.path.polyline.param_of(self.pos, tol=1e-9)
        if s_pos is None:
            # still inside the side: walk toward the projection point
            face = self.free_side.face_of(self.pos)
            gp = (
                SideRegion([face]).geodesic(self.pos, target_pt)
                if face is not None
                else self.free_side.geodesic(self.pos, target_pt)
            )
            if gp.length <= 1.0 + CAP_EPS:
                self.pos = target_pt
            else:
                self.pos = gp.polyline.point_at(1.0)
            self.lion = self.lion  # keep baseline; restart handled on re-entry
        else:
            gap = target_s - s_pos
            if abs(gap) <= 1.0 + CAP_EPS:
                self.pos = target_pt
            else:
                self.pos = self.path.polyline.point_at(s_pos + math.copysign(1.0, gap))
        # established?
        foot = self.path.polyline.param_of(self.pos, tol=1e-9)
        if foot is not None and abs(foot - target_s) <= 1e-9 and self.holed_side.contains(e) is not Where.EXTERIOR:
            if self.path.polyline.param_of(e, tol=1e-9) is None:
                self.result = GuardState(
                    path=self.path, region=self.holed_side, s=foot, path_id=self.label, pursuer_id=self.pursuer_id
                )
        return self.pos


def _same_region(a, b) -> bool:
    sa = a.shape if hasattr(a, "shape") else a
    sb = b.shape if hasattr(b, "shape") else b
    return sa is sb


class EndgamePlan:
    """Travel to the far origin vertex, then lion pursuit to capture."""

    def __init__(self, env, pursuer_id: int, start: Point, region_face, e: Point, lion_registry: Optional[list] = None):
        self.pursuer_id = pursuer_id
        self.face = region_face
        shape = region_face.shape if hasattr(region_face, "shape") else region_face
        g = visgraph.visgraph_of(shape)
        de = _point_dists(shape, g, e)
        idx = max(range(g.node_count), key=lambda i: (de[i], -i))
        self.origin = g.nodes[idx]
        self.travel = TravelPlan(env, start, self.origin)
        self.lion = LionState(origin=self.origin, p=self.origin, region=region_face, n_region=shape.vertex_count)
        if lion_registry is not None:
            lion_registry.append(self.lion)
        self.pos = start

    def step(self, e: Point) -> Point:
        if not self.travel.done:
            self.pos = self.travel.step()
            return self.pos
        out = lion_move(self.lion, e)
        self.pos = e if out[0] == "capture" else out[1]
        return self.pos


def _point_dists(shape, g, p: Point) -> list[float]:
    n = g.node_count
    src = g.key_index.get(key_of(p))
    ext = [list(lst) for lst in g.adj] + [[]]
    if src is None:
        src = n
        for i, q in enumerate(g.nodes):
            if shape.segment_inside(p, q, skip_contains_check=True):
                w = dist(p, q)
                ext[n].append((i, w))
                ext[i].append((n, w))
    return visgraph.dijkstra_lengths(ext, src)[:n]


# ---------------------------------------------------------------------------
# pursuer policies


class PursuerPolicy:
    """Interface the game loop drives each pursuers' half-turn."""

    phase = "RUN"

    def __init__(self):
        self.events: list[dict] = []
        self.guards: dict = {}

    def start(self, pursuer_positions: list[Point], e: Point):
        pass

    def pursuer_turn(self, positions: list[Point], e_old: Point, e_new: Point, trajectory):
        raise NotImplementedError

    def guard_side_violation(self, e: Point) -> list[str]:
        return []

    def seal_violation(self, e: Point) -> bool:
        return False

    def state_key(self):
        return ()


class Orchestrator(PursuerPolicy):
    """Turn-by-turn pursuer policy implementing the capture strategy."""

    def __init__(self, env, config: Optional[PursuitConfig] = None):
        super().__init__()
        self.env = env
        self.config = config or PursuitConfig()
        self.finder = DistinctPathFinder()
        self.phase = "INIT_FIRST_PATH"
        self.guards: dict[str, GuardState] = {}
        self.region: Optional[EvaderRegion] = None
        self.plan = None
        self.stalled = False
        self.path_counter = 0
        self.split_log: list[SplitOutcome] = []
        self.sealed: list[SideRegion] = []
        self.lion_states: list[LionState] = []
        self.region_sizes: list[int] = []
        self.events: list[dict] = []
        self._pi1: Optional[AnchoredPath] = None
        self._init_sides: Optional[dict[int, SideRegion]] = None
        self._pending_outcome: Optional[SplitOutcome] = None

    # -- setup ------------------------------------------------------------

    def start(self, pursuer_positions: list[Point], e: Point):
        if self.env.h == 0:
            self._enter_endgame_whole(pursuer_positions, e)
            return
        try:
            ui, vi = choose_anchors(self.env)
        except RegionError:
            if self.env.h == 0:
                self._enter_endgame_whole(pursuer_positions, e)
                return
            raise
        g = visgraph.visgraph_of(self.env)
        self._pi1 = shortest_path(g, ui, vi)
        label = self._new_label()
        from .geom import split_region as _split

        faces = _split(self.env, self._pi1.polyline)
        sides = {
            1: SideRegion([f for f in faces if f.path_side == 1], rails=[self._pi1.polyline]),
            -1: SideRegion([f for f in faces if f.path_side == -1], rails=[self._pi1.polyline]),
        }
        self._init_sides = sides
        self.plan = EstablishPlan(self.env, 0, pursuer_positions[0], self._pi1, label, sides)
        self.phase = "INIT_FIRST_PATH"
        self.events.append(
            {
                "type": "anchors",
                "u": list(g.nodes[ui]),
                "v": list(g.nodes[vi]),
                "path": [list(p) for p in self._pi1.polyline],
                "label": label,
            }
        )

    def _enter_endgame_whole(self, pursuer_positions: list[Point], e: Point):
        from .geom import Face

        shape = self.env.shape
        face = Face(
            outer=list(shape.outer),
            sources=[frozenset({("outer", i)}) for i in range(len(shape.outer))],
            holes=[list(h) for h in shape.holes],
            hole_sources=[[frozenset({("hole", k, i)}) for i in range(len(h))] for k, h in enumerate(shape.holes)],
            path_side=None,
        )
        face._shape = shape
        self.plan = EndgamePlan(self.env, 0, pursuer_positions[0], face, e, self.lion_states)
        self.phase = "ENDGAME"
        self.events.append({"type": "endgame", "origin": list(self.plan.origin), "n_region": shape.vertex_count})

    def _new_label(self) -> str:
        self.path_counter += 1
        return f"path{self.path_counter}"

    # -- helpers ----------------------------------------------------------

    def free_pursuers(self, n: int) -> list[int]:
        busy = {gs.pursuer_id for gs in self.guards.values()}
        if self.plan is not None:
            busy.add(self.plan.pursuer_id)
        return [i for i in range(n) if i not in busy]

    def guard_side_violation(self, e: Point) -> list[str]:
        out = []
        for label in sorted(self.guards):
            gs = self.guards[label]
            if gs.region.contains(e) is Where.EXTERIOR:
                out.append(label)
        return out

    def seal_violation(self, e: Point) -> bool:
        return any(s.contains(e) is Where.INTERIOR for s in self.sealed)

    def state_key(self):
        plan_key = None
        p = self.plan
        if p is not None:
            plan_key = (type(p).__name__, p.pursuer_id)
            if hasattr(p, "travel"):
                plan_key += (p.travel.s,)
            if hasattr(p, "walk"):
                plan_key += (p.walk.s, p.walk.established)
            if hasattr(p, "pos"):
                plan_key += (p.pos,)
        return (
            self.phase,
            self.stalled,
            tuple(sorted((lbl, gs.s) for lbl, gs in self.guards.items())),
            plan_key,
        )

    # -- the turn ---------------------------------------------------------

    def pursuer_turn(self, positions: list[Point], e_old: Point, e_new: Point, trajectory) -> tuple[list[Point], bool]:
        """Compute all pursuer moves from the post-evader snapshot.

        Returns (new positions, captured).
        """
        moves = list(positions)
        turn_events: list[dict] = []

        # universal capture rule
        for i, p in enumerate(positions):
            if dist(p, e_new) <= 1.0 + CAP_EPS:
                if visgraph.geodesic(self.env, p, e_new).length <= 1.0 + 1e-7:
                    moves[i] = e_new
                    self.phase = "CAPTURED"
                    turn_events.append({"type": "capture", "pursuer": i})
                    self.events.extend(turn_events)
                    return moves, True

        # guards track projections
        for label in sorted(self.guards):
            gs = self.guards[label]
            out = guard_move(gs, e_old, e_new, trajectory)
            if out[0] == "capture":
                moves[gs.pursuer_id] = e_new
                self.phase = "CAPTURED"
                turn_events.append({"type": "capture", "pursuer": gs.pursuer_id, "via": "guard", "label": label})
                self.events.extend(turn_events)
                return moves, True
            self.guards[label] = out[1]
            moves[out[1].pursuer_id] = out[1].pursuer

        # active plan
        if self.plan is not None:
            pid = self.plan.pursuer_id
            moves[pid] = self.plan.step(e_new)
            if dist(moves[pid], e_new) <= 1e-7:
                self.phase = "CAPTURED"
                turn_events.append({"type": "capture", "pursuer": pid})
                self.events.extend(turn_events)
                return moves, True
            if isinstance(self.plan, EvictPlan):
                for ev in self.plan.events:
                    turn_events.append({"type": ev})
                self.plan.events.clear()
            if isinstance(self.plan, (EstablishPlan, EvictPlan)) and self.plan.result is not None:
                self._on_established(self.plan, e_new, turn_events, moves)

        self.events.extend(turn_events)
        return moves, False

    # -- transitions --------------------------------------------------------

    def _on_established(self, plan, e: Point, turn_events: list[dict], positions: list[Point]):
        gs: GuardState = plan.result
        label = plan.label
        self.guards[label] = gs
        sealed = None
        if isinstance(plan, EvictPlan):
            sealed = plan.free_side
            self.sealed.append(sealed)
            turn_events.append({"type": "seal", "label": label})
        turn_events.append({"type": "path-established", "label": label, "s": gs.s, "pursuer": gs.pursuer_id})

        if self.phase == "INIT_FIRST_PATH":
            region, side, _faces = initial_region(self.env, self._pi1, label, e)
            # the guard measures in the evader's full side
            self.guards[label] = GuardState(
                path=gs.path, region=side, s=gs.s, path_id=label, pursuer_id=gs.pursuer_id
            )
            self.region = region
        else:
            outcome = self._pending_outcome
            faces = outcome.side_faces(1) + outcome.side_faces(-1)
            eface = None
            best = None
            for f in faces:
                w = f.shape.contains(e)
                if w is Where.INTERIOR:
                    eface = f
                    break
                if w is Where.BOUNDARY and best is None:
                    best = f
            eface = eface or best
            if eface is None:
                raise PursuitError(f"evader {e} not in any split face at establishment")
            if sealed is not None:
                # eviction: the evader must now be on the holed side
                holed_faces = outcome.side_faces(-outcome.hole_free_side)
                if eface not in holed_faces:
                    raise PursuitError("eviction finished with the evader still in the sealed side")
            self.region = child_region(outcome, self.region, label, face=eface)
            self._pending_outcome = None

        self.region_sizes.append(self.region.vertex_count)
        turn_events.append(
            {"type": "region", "vertices": self.region.vertex_count, "holes": self.region.count_holes()}
        )

        # release guards whose paths no longer bound the region
        live = set(self.region.guard_labels())
        for lbl in sorted(self.guards):
            if lbl not in live:
                released = self.guards.pop(lbl)
                turn_events.append({"type": "release", "label": lbl, "pursuer": released.pursuer_id})
        self.plan = None
        self._next_round(e, turn_events, positions)

    def _next_round(self, e: Point, turn_events: list[dict], positions: list[Point]):
        free = self.free_pursuers(len(positions))
        try:
            outcome = split_by_third(self.region, e, self.finder)
        except EndgameRegion as stop:
            if not free:
                self.stalled = True
                self.phase = "ITERATE"
                turn_events.append({"type": "stall", "reason": "no free pursuer for endgame"})
                return
            pid = free[0]
            self.plan = EndgamePlan(self.env, pid, positions[pid], self.region.face, e, self.lion_states)
            self.phase = "ENDGAME"
            turn_events.append(
                {"type": "endgame", "reason": stop.reason, "origin": list(self.plan.origin), "pursuer": pid}
            )
            return
        self.split_log.append(outcome)
        turn_events.append(
            {
                "type": "split",
                "case": outcome.case,
                "faces": len(outcome.faces),
                "sides": [len(outcome.side_plus), len(outcome.side_minus)],
                "holes": [outcome.holes_plus, outcome.holes_minus],
                "path": [list(p) for p in outcome.third.polyline],
                "evader_side": outcome.evader_side,
            }
        )
        if not free:
            self.stalled = True
            self.phase = "ITERATE"
            self._pending_outcome = None
            turn_events.append({"type": "stall", "reason": "no free pursuer for next path"})
            return
        pid = free[0]
        label = self._new_label()
        self._pending_outcome = outcome
        start = positions[pid]
        if outcome.case == "both-holed":
            sides = {1: outcome.side_region(1), -1: outcome.side_region(-1)}
            self.plan = EstablishPlan(self.env, pid, start, outcome.third, label, sides)
            self.phase = "ITERATE"
        else:
            apex = outcome.apex
            free_side = outcome.side_region(outcome.hole_free_side)
            holed_side = outcome.side_region(-outcome.hole_free_side)
            self.plan = EvictPlan(self.env, pid, start, outcome.third, label, apex, free_side, holed_side, self.lion_states)
            self.phase = "EVICT"

def orchestrate(env, evader_strategy, seed: int = 0, config: Optional[PursuitConfig] = None, max_turns: Optional[int] = None):
    """Run a full game of the capture strategy against an evader strategy."""
    from .harness import Game

    game = Game(env, evader_strategy, seed=seed, pursuit_config=config)
    return game.run(max_turns=max_turns)
