import itertools
import math
import random

import pytest

from polypursuit.geom import Point
from polypursuit.kpaths import (
    DistinctPathFinder,
    is_self_crossing,
    next_distinct_path,
    path_edge_set,
    shortest_path,
    simple_paths_in_order,
)
from polypursuit.visgraph import VisGraph, visgraph_of

SQRT = math.sqrt


def P(x, y):
    return Point(float(x), float(y))


def abstract_graph():
    # u=0, a=1, b=2, v=3
    return VisGraph.from_weighted_edges(
        4, [(0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.5), (2, 3, 1.5), (1, 2, 0.5)]
    )


def enumerate_paths(g, u, v):
    """Exhaustive simple-path enumeration ordered by (length, sequence)."""
    n = g.node_count
    adj = {i: [j for j, _ in g.adj[i]] for i in range(n)}
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


class TestShortest:
    def test_donut_rank1(self, donut):
        g = visgraph_of(donut)
        u = g.key_index[(0, 0)]
        v = [i for i, p in enumerate(g.nodes) if p == P(10, 10)][0]
        p = shortest_path(g, u, v)
        assert [tuple(g.nodes[i]) for i in p.nodes] == [(0, 0), (4, 5), (10, 10)]
        assert p.length == pytest.approx(SQRT(41) + SQRT(61), rel=1e-9)

    def test_square_adjacent_corners(self, square):
        g = visgraph_of(square)
        p = shortest_path(g, 0, 1)
        assert p.nodes == [0, 1]
        assert p.length == pytest.approx(10)

    def test_abstract(self):
        g = abstract_graph()
        p = shortest_path(g, 0, 3)
        assert p.nodes == [0, 1, 3]
        assert p.length == pytest.approx(2.0)


class TestNextDistinct:
    def test_abstract_tie_break(self):
        g = abstract_graph()
        p1 = shortest_path(g, 0, 3)
        p2 = next_distinct_path(g, 0, 3, [p1])
        # u,a,b,v and u,b,v both have length 3; lexicographic pick
        assert p2.length == pytest.approx(3.0)
        assert p2.nodes == [0, 1, 2, 3]

    def test_donut_pi2(self, donut):
        g = visgraph_of(donut)
        u = g.key_index[(0, 0)]
        v = [i for i, p in enumerate(g.nodes) if p == P(10, 10)][0]
        p1 = shortest_path(g, u, v)
        p2 = next_distinct_path(g, u, v, [p1])
        assert [tuple(g.nodes[i]) for i in p2.nodes] == [(0, 0), (6, 3), (10, 10)]
        assert p2.length == pytest.approx(SQRT(45) + SQRT(65), rel=1e-9)

    def test_donut_pi3(self, donut):
        g = visgraph_of(donut)
        u = g.key_index[(0, 0)]
        v = [i for i, p in enumerate(g.nodes) if p == P(10, 10)][0]
        p1 = shortest_path(g, u, v)
        p2 = next_distinct_path(g, u, v, [p1])
        p3 = next_distinct_path(g, u, v, [p1, p2])
        assert [tuple(g.nodes[i]) for i in p3.nodes] == [(0, 0), (4, 5), (6, 5), (10, 10)]
        assert p3.length == pytest.approx(SQRT(41) + 2 + SQRT(41), rel=1e-9)

    def test_none_when_exhausted(self):
        g = VisGraph.from_weighted_edges(2, [(0, 1, 1.0)])
        p1 = shortest_path(g, 0, 1)
        assert next_distinct_path(g, 0, 1, [p1]) is None

    def test_reversed_edges_not_distinct(self):
        g = abstract_graph()
        p1 = shortest_path(g, 0, 3)
        assert path_edge_set([0, 1, 3]) == path_edge_set([3, 1, 0])
        p2 = next_distinct_path(g, 0, 3, [p1, [3, 1, 0]])
        assert p2.nodes == [0, 1, 2, 3]


class TestEnumerationEquivalence:
    def test_monotone_ranks(self, donut):
        g = visgraph_of(donut)
        u = g.key_index[(0, 0)]
        v = [i for i, p in enumerate(g.nodes) if p == P(10, 10)][0]
        prev = 0.0
        for k, p in enumerate(simple_paths_in_order(g, u, v)):
            assert p.length >= prev - 1e-12
            prev = p.length
            if k > 20:
                break

    def test_random_graphs_match_exhaustive(self):
        rng = random.Random(99)
        for trial in range(50):
            n = rng.randint(4, 12)
            edges = []
            for i in range(n):
                for j in range(i + 1, n):
                    if rng.random() < 0.45:
                        edges.append((i, j, round(rng.uniform(0.2, 3.0), 6)))
            g = VisGraph.from_weighted_edges(n, edges)
            u, v = 0, n - 1
            expect = enumerate_paths(g, u, v)
            got = list(itertools.islice(simple_paths_in_order(g, u, v), 3))
            for k in range(min(3, len(expect))):
                assert k < len(got)
                assert got[k].length == pytest.approx(expect[k][0], rel=1e-12)
                assert got[k].nodes == expect[k][1]
            if len(expect) < 3:
                assert len(got) == len(expect)


class TestSelfCrossing:
    def test_x_shape(self):
        assert is_self_crossing([P(0, 0), P(2, 2), P(2, 0), P(0, 2)])

    def test_donut_pi1(self, donut):
        g = visgraph_of(donut)
        u = g.key_index[(0, 0)]
        v = [i for i, p in enumerate(g.nodes) if p == P(10, 10)][0]
        assert not is_self_crossing(shortest_path(g, u, v))

    def test_collinear_chain(self):
        assert not is_self_crossing([P(0, 0), P(1, 0), P(2, 0)])

    def test_backtrack(self):
        assert is_self_crossing([P(0, 0), P(1, 0), P(0.5, 0)])

    def test_revisit(self):
        assert is_self_crossing([P(0, 0), P(1, 0), P(1, 1), P(0, 0)])

    def test_filter_never_fires_on_fixtures(self, donut, two_hole):
        finder = DistinctPathFinder()
        for env in (donut, two_hole):
            g = visgraph_of(env)
            u = 0
            v = max(
                range(g.node_count),
                key=lambda i: (g.nodes[i].x ** 2 + g.nodes[i].y ** 2, i),
            )
            p1 = shortest_path(g, u, v)
            p2 = finder.next_distinct(g, u, v, [p1])
            p3 = finder.next_distinct(g, u, v, [p1, p2])
            assert p2 is not None and p3 is not None
            assert not is_self_crossing(p2) and not is_self_crossing(p3)
        assert finder.crossing_filter_hits == 0
