"""Command line interface: simulate, verify, paths, gen-lowerbound, serve."""

from __future__ import annotations

import argparse
import json
import sys

from . import presets
from .adversary import GreedyEvader, RandomEvader, ScriptedEvader
from .geom import Point, PolygonEnv
from .harness import Game, GameConfig, save_trace, verify_trace
from .visgraph import geodesic, visgraph_of


def _load_env(args) -> PolygonEnv:
    if args.polygon in presets.NAMED:
        return presets.by_name(args.polygon)
    return PolygonEnv.load(args.polygon)


def _make_strategy(args):
    if args.evader == "greedy":
        return GreedyEvader(), None
    if args.evader == "random":
        return RandomEvader(args.seed), None
    if args.evader == "scripted":
        if not args.script:
            raise SystemExit("--script FILE is required for the scripted evader")
        with open(args.script) as f:
            return ScriptedEvader([Point(*p) for p in json.load(f)]), None
    if args.evader == "graph-mimic":
        if not args.corridor_map:
            raise SystemExit("--corridor-map FILE is required for the graph-mimic evader")
        from .adversary import GraphMimicStrategy
        from .lowerbound import EmbeddedGraph, build_corridor_polygon

        with open(args.corridor_map) as f:
            data = json.load(f)
        cmap = build_corridor_polygon(
            EmbeddedGraph.from_json(data["graph"]), width=data["width"], junction_radius=data["radius"]
        )
        return GraphMimicStrategy(cmap), cmap.polygon
    raise SystemExit(f"unknown evader {args.evader}")


def cmd_simulate(args):
    strategy, forced_env = _make_strategy(args)
    env = forced_env if forced_env is not None else _load_env(args)
    cfg = GameConfig(n_pursuers=args.pursuers)
    if args.evader_start:
        cfg.evader_start = Point(*json.loads(args.evader_start))
    game = Game(env, strategy, seed=args.seed, config=cfg)
    res = game.run(max_turns=args.max_turns)
    if args.trace:
        save_trace(res.trace, args.trace)
    print(
        json.dumps(
            {
                "captured": res.captured,
                "turns": res.turns,
                "cap_turns": res.cap_turns,
                "phases": res.phases,
                "violations": res.violations,
            },
            sort_keys=True,
        )
    )
    return 0 if res.captured and not res.violations else 1


def cmd_verify(args):
    report = verify_trace(args.trace)
    print(json.dumps(report, sort_keys=True))
    return 0 if report["ok"] else 1


def cmd_paths(args):
    env = _load_env(args)
    g = visgraph_of(env)
    out = {"nodes": len(g.nodes), "edges": g.edge_count}
    if args.pair:
        pts = json.loads(args.pair)
        a, b = Point(*pts[0]), Point(*pts[1])
        gp = geodesic(env, a, b)
        out["geodesic"] = {"length": gp.length, "polyline": [[p.x, p.y] for p in gp.polyline]}
        if args.ranks:
            from .kpaths import next_distinct_path, shortest_path
            from .geom import key_of

            u = g.key_index.get(key_of(a))
            v = g.key_index.get(key_of(b))
            if u is None or v is None:
                raise SystemExit("--ranks needs both points to be polygon vertices")
            found = [shortest_path(g, u, v)]
            for _ in range(2):
                nxt = next_distinct_path(g, u, v, found)
                if nxt is None:
                    break
                found.append(nxt)
            out["ranks"] = [
                {"rank": i + 1, "length": p.length, "polyline": [[q.x, q.y] for q in p.polyline]}
                for i, p in enumerate(found)
            ]
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_gen_lowerbound(args):
    from .lowerbound import EmbeddedGraph, build_corridor_polygon, dodecahedron

    if args.graph == "dodecahedron":
        graph = dodecahedron()
    else:
        with open(args.graph) as f:
            graph = EmbeddedGraph.from_json(json.load(f))
    cmap = build_corridor_polygon(graph, width=args.width, junction_radius=args.radius)
    if args.out_polygon:
        cmap.polygon.save(args.out_polygon)
    if args.out_map:
        with open(args.out_map, "w") as f:
            json.dump(cmap.to_json(), f)
    print(
        json.dumps(
            {"vertices": cmap.polygon.n, "holes": cmap.polygon.h, "corridors": len(cmap.corridors)},
            sort_keys=True,
        )
    )
    return 0


def cmd_serve(args):
    from .session import serve_session

    env = _load_env(args)
    serve_session(env, port=args.port, trace_dir=args.trace_dir, n_pursuers=args.pursuers)
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="polypursuit", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    sim = sub.add_parser("simulate", help="run one capture game")
    sim.add_argument("--polygon", required=True, help="polygon JSON file or preset name")
    sim.add_argument("--evader", default="greedy", choices=["greedy", "random", "scripted", "graph-mimic"])
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--script", help="waypoint JSON for the scripted evader")
    sim.add_argument("--corridor-map", help="corridor map JSON for the graph-mimic evader")
    sim.add_argument("--evader-start", help="[x, y] JSON")
    sim.add_argument("--pursuers", type=int, default=3)
    sim.add_argument("--max-turns", type=int)
    sim.add_argument("--trace", help="write the trace (JSON lines) here")
    sim.set_defaults(fn=cmd_simulate)

    ver = sub.add_parser("verify", help="replay a trace and audit invariants")
    ver.add_argument("--trace", required=True)
    ver.set_defaults(fn=cmd_verify)

    pth = sub.add_parser("paths", help="geodesics and path ranks for a polygon")
    pth.add_argument("--polygon", required=True)
    pth.add_argument("--pair", help="[[x1,y1],[x2,y2]] JSON")
    pth.add_argument("--ranks", action="store_true", help="also print ranks 1-3 (vertex pairs only)")
    pth.set_defaults(fn=cmd_paths)

    gen = sub.add_parser("gen-lowerbound", help="corridor polygon from an embedded planar graph")
    gen.add_argument("--graph", required=True, help="graph JSON file or 'dodecahedron'")
    gen.add_argument("--width", type=float, default=0.05)
    gen.add_argument("--radius", type=float, default=0.05)
    gen.add_argument("--out-polygon")
    gen.add_argument("--out-map")
    gen.set_defaults(fn=cmd_gen_lowerbound)

    srv = sub.add_parser("serve", help="interactive human-evader session service")
    srv.add_argument("--polygon", required=True)
    srv.add_argument("--port", type=int, default=8733)
    srv.add_argument("--pursuers", type=int, default=3)
    srv.add_argument("--trace-dir", default=".")
    srv.set_defaults(fn=cmd_serve)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
