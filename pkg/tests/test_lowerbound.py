import math

import pytest
from shapely.geometry import Polygon as ShPolygon

from polypursuit.geom import Point, Where
from polypursuit.lowerbound import (
    ConstructionError,
    build_corridor_polygon,
    dodecahedron,
    double_square_graph,
    square_graph,
)
from polypursuit.visgraph import geodesic


@pytest.fixture(scope="module")
def square_map():
    return build_corridor_polygon(square_graph(), width=0.05, junction_radius=0.05)


@pytest.fixture(scope="module")
def double_map():
    return build_corridor_polygon(double_square_graph(), width=0.05, junction_radius=0.05)


class TestDodecahedronGraph:
    def test_counts(self):
        g = dodecahedron()
        assert len(g.vertices) == 20
        assert len(g.edges) == 30

    def test_degree_and_girth(self):
        g = dodecahedron()
        assert g.min_degree() == 3
        assert g.girth() == 5  # no 3- or 4-cycles

    def test_planar_embedding(self):
        dodecahedron().check_planar_embedding()  # raises on a crossing


class TestSquareMap:
    def test_euler_one_hole(self, square_map):
        # f - 1 = E - V + 1 = 4 - 4 + 1 = 1 bounded face
        assert square_map.polygon.h == 1

    def test_corridors_unit_length(self, square_map):
        for cor in square_map.corridors.values():
            assert cor.internal_length == pytest.approx(1.0, abs=1e-3)

    def test_corridor_geodesics_in_polygon(self, square_map):
        for cor in square_map.corridors.values():
            ga, gb = cor.centerline.pts[0], cor.centerline.pts[-1]
            L = geodesic(square_map.polygon, ga, gb).length
            assert L == pytest.approx(1.0, abs=1e-3)

    def test_junction_disks_disjoint(self, square_map):
        vals = list(square_map.junction_disks.values())
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                assert math.dist(vals[i][0], vals[j][0]) > vals[i][1] + vals[j][1]

    def test_centers_inside(self, square_map):
        for c in square_map.centers:
            assert square_map.polygon.contains(c) is not Where.EXTERIOR

    def test_corridor_strips_disjoint(self, square_map):
        polys = []
        for cor in square_map.corridors.values():
            outer, _ = cor.strip.to_rings()
            polys.append(ShPolygon([(p.x, p.y) for p in outer]))
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                inter = polys[i].intersection(polys[j])
                assert inter.area < 1e-12

    def test_roundtrip_metric(self, square_map):
        cm = square_map
        r = cm.radius
        for a in range(4):
            for b in range(4):
                if a == b:
                    continue
                poly_d = geodesic(cm.polygon, cm.centers[a], cm.centers[b]).length
                hops = round(cm.D[a][b] / cm.hop)
                assert abs(poly_d - hops * 1.0) <= hops * (2 * r + 1e-3) + 1e-9


class TestDoubleSquareMap:
    def test_two_holes(self, double_map):
        # f - 1 = 7 - 6 + 1 = 2 bounded faces
        assert double_map.polygon.h == 2

    def test_locate_and_metric(self, double_map):
        cm = double_map
        assert cm.locate(cm.centers[1]) == ("junction", 1)
        cor = cm.corridors[(1, 4)]
        mid = cor.route.point_at(cor.route.length / 2)
        kind, edge, t = cm.locate(mid)
        assert (kind, edge) == ("corridor", (1, 4))
        d = cm.junction_distance(mid, 4)
        assert d == pytest.approx(cor.route.length / 2, abs=1e-9)

    def test_routes_legal(self, double_map):
        cm = double_map
        route = cm.route_between_junctions(0, 3)
        for i in range(60):
            q = route.point_at(route.length * i / 59)
            assert cm.polygon.contains(q) is not Where.EXTERIOR


class TestConstructionErrors:
    def test_width_too_large_rejected(self):
        with pytest.raises(ConstructionError):
            build_corridor_polygon(square_graph(), width=0.12, junction_radius=0.06)

    def test_duplicate_edges_rejected(self):
        from polypursuit.lowerbound import EmbeddedGraph

        with pytest.raises(ConstructionError):
            EmbeddedGraph([Point(0, 0), Point(1, 0)], [(0, 1), (1, 0)])

    def test_crossing_embedding_rejected(self):
        from polypursuit.lowerbound import EmbeddedGraph

        g = EmbeddedGraph(
            [Point(0, 0), Point(1, 1), Point(1, 0), Point(0, 1)],
            [(0, 1), (2, 3)],
        )
        with pytest.raises(ConstructionError):
            g.check_planar_embedding()
