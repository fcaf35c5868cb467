"""Ready-made arenas: hand fixtures and corridor polygons for tests and demos."""

from __future__ import annotations

from .geom import PolygonEnv, pt


def square() -> PolygonEnv:
    return PolygonEnv([pt(0, 0), pt(10, 0), pt(10, 10), pt(0, 10)])


def triangle() -> PolygonEnv:
    return PolygonEnv([pt(0, 0), pt(12, 0), pt(0, 9)])


def l_shape() -> PolygonEnv:
    return PolygonEnv([pt(0, 0), pt(12, 0), pt(12, 5), pt(5, 5), pt(5, 12), pt(0, 12)])


def hexagon() -> PolygonEnv:
    return PolygonEnv([pt(4, 0), pt(12, 0), pt(16, 6), pt(12, 12), pt(4, 12), pt(0, 6)])


def donut() -> PolygonEnv:
    return PolygonEnv(
        [pt(0, 0), pt(10, 0), pt(10, 10), pt(0, 10)],
        [[pt(4, 3), pt(4, 5), pt(6, 5), pt(6, 3)]],
    )


def rotated_donut() -> PolygonEnv:
    """Square arena with a diamond hole."""
    return PolygonEnv(
        [pt(0, 0), pt(12, 0), pt(12, 12), pt(0, 12)],
        [[pt(6, 4), pt(4, 6), pt(6, 8), pt(8, 6)]],
    )


def hex_one_hole() -> PolygonEnv:
    return PolygonEnv(
        [pt(4, 0), pt(12, 0), pt(16, 6), pt(12, 12), pt(4, 12), pt(0, 6)],
        [[pt(7, 5), pt(7, 7), pt(9, 7), pt(9, 5)]],
    )


def two_hole() -> PolygonEnv:
    return PolygonEnv(
        [pt(0, 0), pt(20, 0), pt(20, 10), pt(0, 10)],
        [
            [pt(4, 4), pt(4, 6), pt(6, 6), pt(6, 4)],
            [pt(14, 4), pt(14, 6), pt(16, 6), pt(16, 4)],
        ],
    )


def three_hole() -> PolygonEnv:
    """20x20 arena; one hole above the main diagonal, two below."""
    return PolygonEnv(
        [pt(0, 0), pt(20, 0), pt(20, 20), pt(0, 20)],
        [
            [pt(4, 14), pt(4, 16), pt(6, 16), pt(6, 14)],
            [pt(8, 4), pt(8, 6), pt(10, 6), pt(10, 4)],
            [pt(14, 8), pt(14, 10), pt(16, 10), pt(16, 8)],
        ],
    )


def staggered_three_hole() -> PolygonEnv:
    return PolygonEnv(
        [pt(0, 0), pt(24, 0), pt(24, 10), pt(0, 10)],
        [
            [pt(3, 2), pt(3, 4), pt(5, 4), pt(5, 2)],
            [pt(10, 6), pt(10, 8), pt(12, 8), pt(12, 6)],
            [pt(17, 2), pt(17, 4), pt(19, 4), pt(19, 2)],
        ],
    )


def five_hole() -> PolygonEnv:
    holes = []
    for i in range(5):
        x = 3 + 6 * i
        holes.append([pt(x, 4), pt(x, 6), pt(x + 2, 6), pt(x + 2, 4)])
    return PolygonEnv([pt(0, 0), pt(32, 0), pt(32, 10), pt(0, 10)], holes)


def corridor_square() -> PolygonEnv:
    from .lowerbound import build_corridor_polygon, square_graph

    return build_corridor_polygon(square_graph(), width=0.05, junction_radius=0.05).polygon


def corridor_double_square() -> PolygonEnv:
    from .lowerbound import build_corridor_polygon, double_square_graph

    return build_corridor_polygon(double_square_graph(), width=0.05, junction_radius=0.05).polygon


NAMED = {
    "square": square,
    "triangle": triangle,
    "l-shape": l_shape,
    "hexagon": hexagon,
    "donut": donut,
    "rotated-donut": rotated_donut,
    "hex-one-hole": hex_one_hole,
    "two-hole": two_hole,
    "three-hole": three_hole,
    "staggered-three-hole": staggered_three_hole,
    "five-hole": five_hole,
    "corridor-square": corridor_square,
    "corridor-double-square": corridor_double_square,
}


def by_name(name: str) -> PolygonEnv:
    try:
        return NAMED[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; options: {sorted(NAMED)}") from None
