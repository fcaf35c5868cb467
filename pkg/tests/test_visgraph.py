import math
import random

import networkx as nx
import pytest
from shapely.geometry import LineString, Polygon as ShPolygon

from polypursuit.geom import GeometryError, Point, PolygonEnv, Where, pt
from polypursuit.visgraph import build_visgraph, diameter, geodesic, visgraph_of

SQRT = math.sqrt


def P(x, y):
    return Point(float(x), float(y))


def brute_force_graph(env):
    """Independent visibility test via shapely covers()."""
    sh = ShPolygon([(p.x, p.y) for p in env.outer], [[(p.x, p.y) for p in h] for h in env.holes])
    sh = sh.buffer(0)
    verts = env.shape.all_vertices()
    g = nx.Graph()
    g.add_nodes_from(range(len(verts)))
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            seg = LineString([(verts[i].x, verts[i].y), (verts[j].x, verts[j].y)])
            if sh.buffer(1e-12).covers(seg):
                g.add_edge(i, j, weight=seg.length)
    return g, verts


class TestBuild:
    def test_square_complete(self, square):
        g = build_visgraph(square)
        assert g.node_count == 4
        assert g.edge_count == 6

    def test_donut_blocked_diagonal(self, donut):
        g = build_visgraph(donut)
        assert g.node_count == 8
        i = g.key_index[(0, 0)]
        j = g.key_index[(round(10 / 1e-9), round(10 / 1e-9))]
        assert not g.has_edge(i, j)

    def test_donut_edge_weights(self, donut):
        g = build_visgraph(donut)
        i = g.key_index[(0, 0)]
        k = [n for n, p in enumerate(g.nodes) if p == P(4, 5)][0]
        assert g.has_edge(i, k)
        assert g.weight(i, k) == pytest.approx(SQRT(41), rel=1e-12)

    def test_matches_brute_force(self, donut, two_hole):
        for env in (donut, two_hole):
            g = build_visgraph(env)
            bf, verts = brute_force_graph(env)
            assert g.node_count == len(verts)
            assert g.edges() == set(bf.edges())

    def test_edge_count_bound(self, donut):
        g = build_visgraph(donut)
        n = g.node_count
        assert g.edge_count <= n * (n - 1) // 2


class TestGeodesic:
    def test_square_straight(self, square):
        gp = geodesic(square, P(0, 0), P(10, 10))
        assert gp.length == pytest.approx(SQRT(200), rel=1e-12)
        assert len(gp.polyline.pts) == 2

    def test_donut_around_hole(self, donut):
        gp = geodesic(donut, P(0, 0), P(10, 10))
        assert gp.length == pytest.approx(SQRT(41) + SQRT(61), rel=1e-9)
        assert [tuple(p) for p in gp.polyline] == [(0, 0), (4, 5), (10, 10)]

    def test_donut_below_hole(self, donut):
        gp = geodesic(donut, P(0, 0), P(8, 2))
        assert gp.length == pytest.approx(SQRT(68), rel=1e-12)
        assert len(gp.polyline.pts) == 2

    def test_symmetry(self, donut):
        rng = random.Random(2)
        shape = donut.shape
        count = 0
        while count < 30:
            a = P(rng.uniform(0, 10), rng.uniform(0, 10))
            b = P(rng.uniform(0, 10), rng.uniform(0, 10))
            if shape.contains(a) is Where.EXTERIOR or shape.contains(b) is Where.EXTERIOR:
                continue
            assert geodesic(donut, a, b).length == pytest.approx(geodesic(donut, b, a).length, abs=1e-9)
            count += 1

    def test_triangle_inequality(self, two_hole):
        rng = random.Random(4)
        shape = two_hole.shape
        pts = []
        while len(pts) < 21:
            q = P(rng.uniform(0, 20), rng.uniform(0, 10))
            if shape.contains(q) is not Where.EXTERIOR:
                pts.append(q)
        for a, b, c in zip(pts[::3], pts[1::3], pts[2::3]):
            dab = geodesic(two_hole, a, b).length
            dbc = geodesic(two_hole, b, c).length
            dac = geodesic(two_hole, a, c).length
            assert dac <= dab + dbc + 1e-9

    def test_path_stays_inside(self, donut, two_hole):
        rng = random.Random(9)
        for env in (donut, two_hole):
            shape = env.shape
            xmax = max(p.x for p in env.outer)
            count = 0
            while count < 15:
                a = P(rng.uniform(0, xmax), rng.uniform(0, 10))
                b = P(rng.uniform(0, xmax), rng.uniform(0, 10))
                if shape.contains(a) is Where.EXTERIOR or shape.contains(b) is Where.EXTERIOR:
                    continue
                gp = geodesic(env, a, b)
                pl = gp.polyline
                for i in range(100):
                    s = gp.length * i / 99 if gp.length else 0
                    assert shape.contains(pl.point_at(s)) is not Where.EXTERIOR
                count += 1

    def test_against_networkx(self, donut):
        bf, verts = brute_force_graph(donut)
        rng = random.Random(13)
        shape = donut.shape
        count = 0
        while count < 20:
            a = P(rng.uniform(0, 10), rng.uniform(0, 10))
            b = P(rng.uniform(0, 10), rng.uniform(0, 10))
            if shape.contains(a) is not Where.INTERIOR or shape.contains(b) is not Where.INTERIOR:
                continue
            # oracle: inject a and b into the networkx graph using shapely visibility
            sh = ShPolygon([(p.x, p.y) for p in donut.outer], [[(p.x, p.y) for p in h] for h in donut.holes])
            g2 = bf.copy()
            g2.add_node("a")
            g2.add_node("b")
            for i, v in enumerate(verts):
                for tag, q in (("a", a), ("b", b)):
                    if sh.buffer(1e-12).covers(LineString([(q.x, q.y), (v.x, v.y)])):
                        g2.add_edge(tag, i, weight=math.dist(q, v))
            if sh.buffer(1e-12).covers(LineString([(a.x, a.y), (b.x, b.y)])):
                g2.add_edge("a", "b", weight=math.dist(a, b))
            expect = nx.shortest_path_length(g2, "a", "b", weight="weight")
            assert geodesic(donut, a, b).length == pytest.approx(expect, rel=1e-9)
            count += 1

    def test_rejects_outside_points(self, donut):
        with pytest.raises(GeometryError):
            geodesic(donut, P(5, 4), P(1, 1))  # inside the hole

    def test_coincident(self, donut):
        gp = geodesic(donut, P(1, 1), P(1, 1))
        assert gp.length == 0.0


class TestDiameter:
    def test_square(self, square):
        assert diameter(square) == pytest.approx(SQRT(200), rel=1e-12)

    def test_donut(self, donut):
        assert diameter(donut) == pytest.approx(SQRT(41) + SQRT(61), rel=1e-9)

    def test_triangle(self):
        tri = PolygonEnv([pt(0, 0), pt(3, 0), pt(0, 4)])
        assert diameter(tri) == pytest.approx(5, rel=1e-12)

    def test_env_caches(self, donut):
        d1 = donut.diam
        assert d1 == pytest.approx(SQRT(41) + SQRT(61), rel=1e-9)
        assert donut.diam is donut._diam or donut.diam == d1


class TestHoleFreeStraight:
    def test_mutually_visible_points_take_segment(self, square):
        rng = random.Random(21)
        for _ in range(20):
            a = P(rng.uniform(0.1, 9.9), rng.uniform(0.1, 9.9))
            b = P(rng.uniform(0.1, 9.9), rng.uniform(0.1, 9.9))
            gp = geodesic(square, a, b)
            assert gp.length == pytest.approx(math.dist(a, b), rel=1e-12)
