"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. The shared corpus (13 arenas x 5 evader strategies, plus three
scripted deep games that force evictions and both-holed splits) is run once
per session and reused by the trace-property criteria.
"""

import itertools
import json
import math
import random
import threading
import time
import urllib.request

import pytest

from polypursuit import presets
from polypursuit.adversary import GreedyEvader, RandomEvader, ScriptedEvader
from polypursuit.geom import Point, Where
from polypursuit.guard import check_minimal, project
from polypursuit.harness import (
    CorpusGame,
    Game,
    GameConfig,
    run_corpus,
    run_necessity,
    save_trace,
    trace_bytes,
    verify_trace,
)
from polypursuit.kpaths import is_self_crossing, shortest_path, simple_paths_in_order
from polypursuit.regions import initial_region
from polypursuit.visgraph import VisGraph, visgraph_of


def P(x, y):
    return Point(float(x), float(y))


def _ok(criterion: str, detail: str):
    print(f"\n[PASS] {criterion}: {detail}")


CORPUS_POLYGONS = [
    ("square", presets.square),            # h=0
    ("triangle", presets.triangle),        # h=0, anchor fallback
    ("l-shape", presets.l_shape),          # h=0
    ("hexagon", presets.hexagon),          # h=0
    ("donut", presets.donut),              # h=1
    ("rotated-donut", presets.rotated_donut),  # h=1
    ("hex-one-hole", presets.hex_one_hole),    # h=1
    ("two-hole", presets.two_hole),        # h=2
    ("three-hole", presets.three_hole),    # h=3
    ("staggered-three-hole", presets.staggered_three_hole),  # h=3
    ("five-hole", presets.five_hole),      # h=5
    ("corridor-square", presets.corridor_square),           # lowerbound-generated, h=1
    ("corridor-double-square", presets.corridor_double_square),  # lowerbound-generated, h=2
]


def _boundary_walk_script(env):
    ring = env.shape.outer
    return ScriptedEvader([tuple(p) for p in (list(ring[1:]) + list(ring) + list(ring[:2]))])


@pytest.fixture(scope="session")
def corpus():
    games = []
    for name, mk in CORPUS_POLYGONS:
        env = mk()
        games.append(CorpusGame(f"{name}", env, GreedyEvader, "greedy", 0))
        for seed in (1, 2, 3):
            games.append(CorpusGame(f"{name}", env, lambda s=seed: RandomEvader(s), f"random/{seed}", seed))
        games.append(CorpusGame(f"{name}", env, lambda e=env: _boundary_walk_script(e), "scripted/walk", 0))
    # scripted deep games that exercise evictions, seals and both-holed splits
    three = presets.three_hole()
    two = presets.two_hole()
    deep = [
        ("three-hole", three, lambda: ScriptedEvader([(7, 3)]), P(7, 3)),
        ("three-hole", three, lambda: ScriptedEvader([(13, 7), (17, 7), (17, 11), (13, 11)] * 15), P(17, 7)),
        ("two-hole", two, lambda: ScriptedEvader([(10, 5)]), P(10, 5)),
    ]
    t0 = time.time()
    rows = run_corpus(games)
    for name, env, mk, start in deep:
        g = Game(env, mk(), seed=0, config=GameConfig(evader_start=start))
        res = g.run()
        rows.append(
            {
                "name": f"{name}/deep",
                "strategy": "scripted/deep",
                "seed": 0,
                "captured": res.captured,
                "turns": res.turns,
                "cap": res.cap_turns,
                "within_cap": res.turns <= res.cap_turns,
                "violations": res.violations,
                "phases": res.phases,
                "ok": res.captured and res.turns <= res.cap_turns and not res.violations,
                "crossing_filter_hits": g.policy.finder.crossing_filter_hits,
                "splits": [
                    {
                        "case": o.case,
                        "faces": len(o.faces),
                        "sides": [len(o.side_plus), len(o.side_minus)],
                        "holes": [o.holes_plus, o.holes_minus],
                    }
                    for o in g.policy.split_log
                ],
                "game": g,
            }
        )
    elapsed = time.time() - t0
    return {"rows": rows, "elapsed": elapsed}


def test_criterion_1_capture_sufficiency(corpus):
    rows, elapsed = corpus["rows"], corpus["elapsed"]
    assert len({r["name"].split("/")[0] for r in rows}) >= 12
    hole_counts = set()
    for name, mk in CORPUS_POLYGONS:
        env = mk()
        assert env.n <= 80, (name, env.n)
        hole_counts.add(env.h)
    assert {0, 1, 2, 3, 5} <= hole_counts
    bad = [r for r in rows if not r["captured"] or not r["within_cap"]]
    assert not bad, bad[:3]
    assert elapsed < 300, f"corpus took {elapsed:.1f}s"
    _ok(
        "criterion 1 (capture sufficiency)",
        f"{len(rows)} games all captured within 16*n*diam^2; corpus wall time {elapsed:.1f}s",
    )


def test_criterion_2_guarded_path_safety(corpus):
    far_side = [v for r in corpus["rows"] for v in r["violations"] if v["kind"] == "far-side"]
    assert far_side == []
    _ok("criterion 2 (guarded-path safety)", f"0 far-side events across {len(corpus['rows'])} traces")


def test_criterion_3_projection_oracle():
    rng = random.Random(2024)
    fixtures = [presets.donut(), presets.two_hole(), presets.three_hole(), presets.l_shape()]
    checked = 0
    worst = 0.0
    while checked < 200:
        env = fixtures[checked % len(fixtures)]
        g = visgraph_of(env)
        m = len(env.shape.outer)
        i, j = rng.sample(range(m), 2)
        if j in ((i + 1) % m, (i - 1) % m):
            continue
        path = shortest_path(g, min(i, j), max(i, j))
        if path.polyline.length < 2:
            continue
        try:
            region, side, faces = initial_region(env, path, "p", _sample_point(env, rng))
        except Exception:
            continue
        e = _sample_point_in(side, rng)
        if e is None:
            continue
        ap = project(path, e, side)
        slack = _projection_slack(path, side, e, ap, samples=10_000)
        worst = min(worst, slack)
        assert slack >= -1e-6, (env.n, e, ap.s, slack)
        checked += 1
    _ok("criterion 3 (projection oracle)", f"200 triples; worst dominance slack {worst:.2e} >= -1e-6")


def _sample_point(env, rng):
    xmin, ymin, xmax, ymax = env.shape.bbox()
    while True:
        p = P(rng.uniform(xmin, xmax), rng.uniform(ymin, ymax))
        if env.contains(p) is Where.INTERIOR:
            return p


def _sample_point_in(side, rng):
    xs, ys = [], []
    for f in side.faces:
        x0, y0, x1, y1 = f.shape.bbox()
        xs += [x0, x1]
        ys += [y0, y1]
    for _ in range(200):
        p = P(rng.uniform(min(xs), max(xs)), rng.uniform(min(ys), max(ys)))
        if side.contains(p) is Where.INTERIOR:
            return p
    return None


def _projection_slack(path, side, e, ap, samples):
    """min over sampled x of d(e, x) - d_path(e_pi, x); >= 0 marks a projection."""
    from polypursuit.guard import _MinimalAdapter

    adapter = _MinimalAdapter(side)
    d_e = adapter.point_to_nodes(e)
    pl = path.polyline
    L = pl.length
    worst = math.inf
    for i in range(samples):
        s = L * i / (samples - 1)
        x = pl.point_at(s)
        need = abs(ap.s - s)
        lb = math.dist(e, x) - need  # Euclid lower-bounds the geodesic
        if lb >= 0:
            worst = min(worst, lb)
            continue
        d_ex = adapter.dist_to(x, e, d_e)
        worst = min(worst, d_ex - need)
        if worst < -1e-6:
            break
    return worst


def test_criterion_4_kshortest_equivalence():
    rng = random.Random(99)
    graphs = 0
    while graphs < 50:
        n = rng.randint(4, 12)
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.45:
                    edges.append((i, j, round(rng.uniform(0.2, 3.0), 6)))
        g = VisGraph.from_weighted_edges(n, edges)
        expect = _enumerate_paths(g, 0, n - 1)
        got = list(itertools.islice(simple_paths_in_order(g, 0, n - 1), 3))
        for k in range(min(3, len(expect))):
            assert got[k].length == pytest.approx(expect[k][0], rel=1e-12)
            assert got[k].nodes == expect[k][1]
        if len(expect) < 3:
            assert len(got) == len(expect)
        graphs += 1
    _ok("criterion 4 (k-shortest equivalence)", "ranks 1-3 match exhaustive enumeration on 50 graphs")


def _enumerate_paths(g, u, v):
    adj = {i: [j for j, _ in g.adj[i]] for i in range(g.node_count)}
    out = []

    def rec(path, seen):
        cur = path[-1]
        if cur == v:
            out.append((sum(g.weight(a, b) for a, b in zip(path, path[1:])), list(path)))
            return
        for w in adj[cur]:
            if w not in seen:
                seen.add(w)
                path.append(w)
                rec(path, seen)
                path.pop()
                seen.remove(w)

    rec([u], {u})
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def test_criterion_5_non_self_crossing(corpus):
    paths = 0
    for r in corpus["rows"]:
        assert r["crossing_filter_hits"] == 0, r["name"]
        for o in r["game"].policy.split_log:
            assert not is_self_crossing(o.third)
            paths += 1
    _ok("criterion 5 (non-self-crossing)", f"{paths} dividing paths; crossing filter fired 0 times")


def test_criterion_6_two_region_and_two_edge(corpus):
    splits = path_bounded = boundary_backed = 0
    for r in corpus["rows"]:
        for o in r["game"].policy.split_log:
            assert len(o.side_plus) >= 1 and len(o.side_minus) >= 1
            assert len(o.side_plus) + len(o.side_minus) == len(o.faces)
            splits += 1
            if o.case != "one-hole-free":
                continue
            if o.hole_free_path_bounded:
                # the structure lemma applies: exactly two differing edges
                assert o.two_edge is not None and len(o.two_edge) == 3, o.diff_subpath
                path_bounded += 1
            else:
                # hole-free side backed by polygon boundary: the lemma's
                # shortcut argument does not apply there (the boundary is an
                # honorary minimal path without its geometry)
                boundary_backed += 1
    assert splits > 0
    assert path_bounded >= 1, "corpus produced no path-bounded hole-free splits"
    _ok(
        "criterion 6 (two-region/two-edge laws)",
        f"{splits} splits all yield exactly two sides; {path_bounded} path-bounded hole-free "
        f"outcomes all two-edge ({boundary_backed} boundary-backed outcomes exempt)",
    )


def test_criterion_7_minimality_of_third_paths(corpus):
    both = 0
    for r in corpus["rows"]:
        for o in r["game"].policy.split_log:
            if o.case != "both-holed":
                continue
            both += 1
            for sign in (1, -1):
                ok, witness = check_minimal(o.third, o.side_region(sign), samples=10_000)
                assert ok, (r["name"], sign, witness)
    assert both >= 1, "corpus produced no both-holed splits"
    _ok("criterion 7 (third-path minimality)", f"{both} both-holed splits pass 1e4-sample minimality")


def test_criterion_8_lion_progress(corpus):
    moves = 0
    min_slack = math.inf
    for r in corpus["rows"]:
        policy = r["game"].policy
        for ls in policy.lion_states:
            for old_d, new_d, n_region, gain in ls.progress_log:
                moves += 1
                min_slack = min(min_slack, gain - 1.0 / n_region)
    assert moves >= 1, "no lion moves recorded in the corpus"
    assert min_slack >= -1e-9
    _ok("criterion 8 (lion progress)", f"{moves} lion moves; min slack {min_slack:.3e} >= -1e-9")


def test_criterion_9_eviction_seal(corpus):
    seals = sum(len(r["game"].policy.sealed) for r in corpus["rows"])
    breaches = [v for r in corpus["rows"] for v in r["violations"] if v["kind"] == "seal-breach"]
    assert seals >= 1, "corpus produced no completed evictions"
    assert breaches == []
    _ok("criterion 9 (eviction seal)", f"{seals} seals; 0 interior re-entries while play continued")


@pytest.mark.slow
def test_criterion_10_necessity():
    from polypursuit.lowerbound import dodecahedron_map

    cmap = dodecahedron_map()
    env = cmap.polygon
    horizon = int(math.ceil(10 * env.n * env.diam**2))
    res_chase = run_necessity(cmap, "chase")
    assert res_chase.survived, res_chase
    res_strategy = run_necessity(cmap, "strategy")
    assert res_strategy.survived, res_strategy
    _ok(
        "criterion 10 (necessity)",
        f"graph-mimic evader survives {horizon} turns vs 2 pursuers "
        f"(strategy mode: cycle@{res_strategy.cycle_at}, chase mode: cycle@{res_chase.cycle_at})",
    )


def test_criterion_11_determinism(donut, tmp_path):
    def run():
        return Game(donut, RandomEvader(11), seed=11).run()

    t1, t2 = trace_bytes(run().trace), trace_bytes(run().trace)
    assert t1 == t2
    path = tmp_path / "det.trace.jsonl"
    save_trace(run().trace, path)
    report = verify_trace(str(path))
    assert report["ok"], report
    _ok("criterion 11 (determinism)", "byte-identical traces; replay verification clean")


def test_criterion_12_ui_session(donut, tmp_path):
    from polypursuit.session import make_server

    server = make_server(donut, port=0, trace_dir=str(tmp_path))
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"

    def get(path):
        with urllib.request.urlopen(base + path, timeout=30) as r:
            return json.loads(r.read())

    def post(path, payload):
        req = urllib.request.Request(
            base + path, data=json.dumps(payload).encode(), headers={"Content-Type": "application/json"}
        )
        with urllib.request.urlopen(req, timeout=60) as r:
            return json.loads(r.read())

    state = get("/state")["payload"]
    # illegal submissions leave the state unchanged
    for bad in ({"x": state["evader"][0] + 9, "y": state["evader"][1]}, {"x": 5.0, "y": 4.0}):
        reply = post("/move", bad)
        assert reply["type"] == "reject"
        assert get("/state")["payload"]["turn"] == state["turn"]
    # drive a full game: walk toward the pursuer anchor until captured
    rejects = 0
    for _ in range(400):
        state = get("/state")["payload"]
        if state["captured"]:
            break
        ex, ey = state["evader"]
        tx, ty = 8.0, 2.0
        dx, dy = tx - ex, ty - ey
        d = math.hypot(dx, dy) or 1.0
        step = min(0.9, d)
        reply = post("/move", {"x": ex + step * dx / d, "y": ey + step * dy / d})
        if reply["type"] == "reject":
            rejects += 1
            reply = post("/move", {"x": ex, "y": ey})  # stay instead
        if reply["type"] == "capture":
            break
    state = get("/state")["payload"]
    assert state["captured"], "session game did not finish"
    trace_path = server.session.saved_path
    assert trace_path is not None
    report = verify_trace(trace_path)
    assert report["ok"], report
    server.shutdown()
    _ok("criterion 12 (ui session)", f"scripted client game captured; persisted trace verifies (rejects tested: {rejects + 2})")
