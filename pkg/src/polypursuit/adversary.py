"""Pluggable evader strategies for exercising the pursuit.

Strategies see the full game state (complete information on both sides) but
nothing about future pursuer moves. Every proposal must be a legal move:
geodesic distance at most one, inside the closed region; the harness rejects
anything else and an illegal proposal from a shipped strategy is a bug.
"""

from __future__ import annotations

import math
import random
from typing import Optional, Sequence

from . import visgraph
from .geom import Point, Where, dist, key_of

N_DIRECTIONS = 64
_PULLBACK = 1e-9  # keep ray-clipped candidates strictly legal under FP


def unit_disk_candidates(shape, e: Point, k: int = N_DIRECTIONS) -> list[Point]:
    """Boundary directions of the geodesic unit disk, radially clipped.

    k ray directions from e, each advanced to distance one or to the first
    boundary hit (pulled back a hair), plus the stay-put move last.
    """
    out = []
    for i in range(k):
        th = 2.0 * math.pi * i / k
        d = (math.cos(th), math.sin(th))
        t = shape.ray_clip(e, d, 1.0)
        t = min(t, 1.0) - _PULLBACK
        if t <= _PULLBACK:
            continue
        c = Point(e.x + t * d[0], e.y + t * d[1])
        if shape.contains(c) is not Where.EXTERIOR:
            out.append(c)
    out.append(e)
    return out


def _distance_tables(shape, g, pursuers: Sequence[Point]) -> list[list[float]]:
    from .pursuit import _point_dists

    return [_point_dists(shape, g, p) for p in pursuers]


def _dist_to_pursuer(shape, g, c: Point, p: Point, table: list[float], vis_c: list[tuple[int, float]]) -> float:
    best = math.inf
    if dist(c, p) <= best and shape.segment_inside(c, p):
        best = dist(c, p)
    for i, w in vis_c:
        d = w + table[i]
        if d < best:
            best = d
    return best


class EvaderStrategy:
    kind = "abstract"

    def describe(self) -> dict:
        return {"kind": self.kind}

    def preferred_start(self, env, pursuer_start: Point) -> Optional[Point]:
        return None

    def propose(self, game) -> Point:
        raise NotImplementedError


def propose_move(strategy: EvaderStrategy, game) -> Point:
    """Ask a strategy for the evader's next position (must be legal)."""
    return strategy.propose(game)


class GreedyEvader(EvaderStrategy):
    """Maximize the minimum geodesic distance to any pursuer."""

    kind = "greedy"

    def propose(self, game) -> Point:
        shape = game.env.shape
        g = visgraph.visgraph_of(shape)
        cands = unit_disk_candidates(shape, game.e)
        tables = _distance_tables(shape, g, game.pursuers)
        best = None
        for idx, c in enumerate(cands):
            vis_c = [
                (i, dist(c, q))
                for i, q in enumerate(g.nodes)
                if shape.segment_inside(c, q, skip_contains_check=True)
            ]
            score = min(
                _dist_to_pursuer(shape, g, c, p, tables[j], vis_c) for j, p in enumerate(game.pursuers)
            )
            if best is None or score > best[0] + 1e-12:
                best = (score, idx, c)
        return best[2]


class RandomEvader(EvaderStrategy):
    """Uniform over the same candidate set as the greedy evader, seeded."""

    kind = "random"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = random.Random(seed)

    def describe(self) -> dict:
        return {"kind": self.kind, "seed": self.seed}

    def propose(self, game) -> Point:
        cands = unit_disk_candidates(game.env.shape, game.e)
        return cands[self.rng.randrange(len(cands))]


class ScriptedEvader(EvaderStrategy):
    """Waypoint follower: advances one unit per turn along geodesics.

    Reaching a waypoint pops the next; an exhausted script stays put. All
    produced moves are legal by construction.
    """

    kind = "scripted"

    def __init__(self, waypoints: Sequence[Point]):
        self.waypoints = [Point(float(p[0]), float(p[1])) for p in waypoints]
        self._i = 0

    def describe(self) -> dict:
        return {"kind": self.kind, "waypoints": [[p.x, p.y] for p in self.waypoints]}

    def propose(self, game) -> Point:
        while self._i < len(self.waypoints):
            wp = self.waypoints[self._i]
            if key_of(wp) == key_of(game.e):
                self._i += 1
                continue
            gp = visgraph.geodesic(game.env, game.e, wp)
            if gp.length <= 1.0 + 1e-12:
                self._i += 1
                return wp
            return gp.polyline.point_at(1.0)
        return game.e


class RecordedEvader(EvaderStrategy):
    """Replays an exact move sequence (used by trace verification)."""

    kind = "recorded"

    def __init__(self, moves: Sequence[Point]):
        self.moves = [Point(float(p[0]), float(p[1])) for p in moves]
        self._i = 0

    def propose(self, game) -> Point:
        if self._i >= len(self.moves):
            return game.e
        m = self.moves[self._i]
        self._i += 1
        return m


class GraphMimicStrategy(EvaderStrategy):
    """Corridor-polygon evader playing the planar cops-and-robbers strategy.

    The evader idles at junction centers and moves only when threatened:
    some pursuer occupies a neighboring junction, sits in an incident
    corridor (a corridor pursuer threatens only the two junctions at its
    ends), or is simply close. It then heads for a neighboring junction not
    adjacent to any pursuer-occupied junction and far enough that it wins
    the race there; on a graph of minimum degree three with no 3- or
    4-cycles such a junction always exists against two pursuers. Transits
    run at full speed and chain into the next hop when the target has
    become unsafe by arrival time, so no movement is wasted while fleeing.
    """

    kind = "graph-mimic"

    def __init__(self, cmap):
        self.map = cmap
        self.adj = cmap.graph.neighbors()
        self.hop = cmap.hop
        self.trigger = 2.0 + 0.1 * self.hop
        self.race_margin = 1.0 + 0.3 * self.hop
        self.at: Optional[int] = None
        self.route = None
        self.progress = 0.0
        self.target: Optional[int] = None

    def describe(self) -> dict:
        return {"kind": self.kind}

    def preferred_start(self, env, pursuer_start: Point) -> Optional[Point]:
        loc = self.map.locate(pursuer_start)
        far = max(
            range(len(self.map.centers)),
            key=lambda v: (self.map.junction_distance(pursuer_start, v), -v),
        )
        self.at = far
        return self.map.centers[far]

    def state_key(self):
        return (self.at, self.target, self.progress, None if self.route is None else self.route.length)

    # -- threat model -------------------------------------------------------

    def _threatened(self, pursuers) -> tuple[set, set]:
        """(junctions a pursuer occupies, junctions threatened via corridors)."""
        occupied, threatened = set(), set()
        for p in pursuers:
            loc = self.map.locate(p)
            if loc[0] == "junction":
                occupied.add(loc[1])
                threatened.add(loc[1])
            else:
                a, b = loc[1]
                threatened.update((a, b))
        return occupied, threatened

    def _unsafe_here(self, v: int, pursuers, occupied, threatened) -> bool:
        if v in threatened:
            return True
        if any(u in threatened for u in self.adj[v]):
            return True
        return any(self.map.junction_distance(p, v) <= self.trigger for p in pursuers)

    def _pick_hop(self, v: int, pursuers, occupied, threatened) -> Optional[int]:
        best = None
        for x in sorted(self.adj[v]):
            if x in threatened:
                continue
            if any(u in occupied for u in self.adj[x]):
                continue
            if any(self.map.locate(p)[:2] == ("corridor", (min(v, x), max(v, x))) for p in pursuers):
                continue  # never run into an occupied corridor
            T = self.map.hop_route(v, x).length
            score = min(self.map.junction_distance(p, x) for p in pursuers)
            if score < T + self.race_margin:
                continue
            if best is None or score > best[0] + 1e-12:
                best = (score, x)
        if best is not None:
            return best[1]
        # fall back to the least-bad neighbor (should not happen on girth-5
        # degree-3 instances against two pursuers)
        scored = [
            (min(self.map.junction_distance(p, x) for p in pursuers), -x, x)
            for x in self.adj[v]
            if not any(self.map.locate(p)[:2] == ("corridor", (min(v, x), max(v, x))) for p in pursuers)
        ]
        return max(scored)[2] if scored else None

    # -- the move -----------------------------------------------------------

    def propose(self, game) -> Point:
        pursuers = game.pursuers
        occupied, threatened = self._threatened(pursuers)
        if self.route is None:
            v = self.at
            if v is None:
                loc = self.map.locate(game.e)
                v = loc[1] if loc[0] == "junction" else loc[1][0]
                self.at = v
            if not self._unsafe_here(v, pursuers, occupied, threatened):
                return game.e
            x = self._pick_hop(v, pursuers, occupied, threatened)
            if x is None:
                return game.e
            self.route = self.map.hop_route(v, x)
            self.progress = 0.0
            self.target = x
            self.at = None
        # transiting: chain the next hop if the target has become unsafe
        remaining = self.route.length - self.progress
        if remaining <= 1.0 + 1e-12:
            y = self.target
            if self._unsafe_here(y, pursuers, occupied, threatened):
                x = self._pick_hop(y, pursuers, occupied, threatened)
                if x is not None and x != y:
                    glue = self.map.hop_route(y, x)
                    pts = self.route.pts + glue.pts[1:]
                    from .geom import Polyline

                    self.route = Polyline(pts)
                    self.target = x
                    remaining = self.route.length - self.progress
        step = min(1.0, remaining)
        self.progress += step
        pos = self.route.point_at(self.progress)
        if self.route.length - self.progress <= 1e-9:
            self.at = self.target
            self.route = None
            self.target = None
            self.progress = 0.0
        return pos
