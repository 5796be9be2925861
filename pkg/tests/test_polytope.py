# Unit tests for the polytope module
import itertools
import random
import unittest
from fractions import Fraction

from okounkov_bodies.linalg import QVector, in_convex_hull
from okounkov_bodies.polytope import (
    VPolytope, bounding_box, contains, convex_hull, equals, is_edge, scale, triangulate, volume,
)
from okounkov_bodies.utils import ContractViolation


def points(*rows):
    return [QVector.of(*row) for row in rows]


def extreme_points(cloud):
    distinct = sorted(set(cloud))
    extreme = []
    for p in distinct:
        others = [q for q in distinct if q != p]
        if not others or not in_convex_hull(p, others).inside:
            extreme.append(p)
    return extreme


def random_cloud(rng):
    dim = rng.randint(1, 3)
    return [QVector(tuple(rng.randint(0, 4) for _ in range(dim))) for _ in range(rng.randint(1, 8))]


class TestConvexHull(unittest.TestCase):
    def test_square_drops_interior_and_edge_points(self):
        hull = convex_hull(points((0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)))
        self.assertEqual(hull.vertices, tuple(points((0, 0), (0, 2), (2, 0), (2, 2))))

    def test_collinear_points(self):
        hull = convex_hull(points((0, 0), (1, 1), (3, 3), (2, 2)))
        self.assertEqual(hull.vertices, tuple(points((0, 0), (3, 3))))
        self.assertEqual(hull.dimension, 1)

    def test_single_point(self):
        hull = convex_hull(points((1, 2), (1, 2)))
        self.assertEqual(len(hull.vertices), 1)
        self.assertEqual(volume(hull), 0)

    def test_cube_in_three_dimensions(self):
        corners = [QVector(c) for c in itertools.product((0, 1), repeat=3)]
        hull = convex_hull(corners + points(("1/2", "1/2", "1/2")))
        self.assertEqual(len(hull.vertices), 8)
        self.assertEqual(len(hull.facets), 6)

    def test_triangle_in_three_space(self):
        hull = convex_hull(points((0, 0, 0), (1, 0, 0), (0, 1, 0), ("1/4", "1/4", 0)))
        self.assertEqual(len(hull.vertices), 3)
        self.assertFalse(hull.is_full_dimensional())

    def test_rejects_mixed_dimensions(self):
        with self.assertRaises(ContractViolation):
            convex_hull(points((0, 0), (1, 0, 0)))

    def test_rejects_empty(self):
        with self.assertRaises(ContractViolation):
            convex_hull([])

    def test_vertices_match_brute_force(self):
        rng = random.Random(3)
        for _ in range(120):
            cloud = random_cloud(rng)
            hull = convex_hull(cloud)
            self.assertEqual(list(hull.vertices), extreme_points(cloud))
            for p in cloud:
                self.assertTrue(hull.contains_point(p))

    def test_hull_of_vertices_is_idempotent(self):
        rng = random.Random(4)
        for _ in range(100):
            hull = convex_hull(random_cloud(rng))
            self.assertTrue(equals(convex_hull(hull.vertices), hull))


class TestVolume(unittest.TestCase):
    def test_standard_simplices(self):
        self.assertEqual(volume(convex_hull(points((0,), (1,)))), 1)
        self.assertEqual(volume(convex_hull(points((0, 0), (1, 0), (0, 1)))), Fraction(1, 2))
        self.assertEqual(volume(convex_hull(points((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)))), Fraction(1, 6))

    def test_conic_triangle(self):
        self.assertEqual(volume(convex_hull(points((0, 0), (4, 0), (0, 1)))), 2)

    def test_cube(self):
        cube = convex_hull([QVector(c) for c in itertools.product((0, 2), repeat=3)])
        self.assertEqual(volume(cube), 8)

    def test_triangulation_covers_square(self):
        square = convex_hull(points((0, 0), (1, 0), (0, 1), (1, 1)))
        self.assertEqual(len(triangulate(square)), 2)
        self.assertEqual(volume(square), 1)

    def test_lower_dimensional_has_zero_volume(self):
        segment = convex_hull(points((0, 0), (1, 1)))
        self.assertEqual(volume(segment), 0)

    def test_volume_scales_with_dimension(self):
        rng = random.Random(5)
        for _ in range(100):
            hull = convex_hull(random_cloud(rng))
            c = Fraction(rng.randint(1, 5), rng.randint(1, 3))
            self.assertEqual(volume(scale(hull, c)), c ** hull.ambient_dim * volume(hull))


class TestEdges(unittest.TestCase):
    def test_square(self):
        square = convex_hull(points((0, 0), (1, 0), (0, 1), (1, 1)))
        index = {v: i for i, v in enumerate(square.vertices)}
        corner, right, top, far = (index[QVector.of(*p)] for p in [(0, 0), (1, 0), (0, 1), (1, 1)])
        self.assertTrue(is_edge(square, corner, right))
        self.assertTrue(is_edge(square, corner, top))
        self.assertFalse(is_edge(square, corner, far))
        self.assertFalse(is_edge(square, corner, corner))

    def test_cube(self):
        cube = convex_hull([QVector(c) for c in itertools.product((0, 1), repeat=3)])
        index = {v: i for i, v in enumerate(cube.vertices)}
        origin = index[QVector.of(0, 0, 0)]
        self.assertTrue(is_edge(cube, origin, index[QVector.of(0, 0, 1)]))
        self.assertFalse(is_edge(cube, origin, index[QVector.of(1, 1, 0)]))
        self.assertFalse(is_edge(cube, origin, index[QVector.of(1, 1, 1)]))

    def test_segment(self):
        segment = convex_hull(points((0,), (3,)))
        self.assertTrue(is_edge(segment, 0, 1))


class TestScaleAndCompare(unittest.TestCase):
    def setUp(self):
        self.simplex = convex_hull(points((0, 0), (1, 0), (0, 1)))

    def test_scale(self):
        self.assertTrue(equals(scale(self.simplex, 2), convex_hull(points((0, 0), (2, 0), (0, 2)))))
        self.assertEqual(volume(scale(self.simplex, 3)), Fraction(9, 2))
        self.assertEqual(scale(self.simplex, 0).vertices, (QVector.of(0, 0),))

    def test_negative_scale(self):
        with self.assertRaises(ContractViolation):
            scale(self.simplex, -1)

    def test_contains(self):
        big = scale(self.simplex, 2)
        self.assertTrue(contains(big, self.simplex))
        self.assertFalse(contains(self.simplex, big))

    def test_equals_ignores_input_order(self):
        other = convex_hull(points((0, 1), (1, 0), (0, 0), ("1/3", "1/3")))
        self.assertTrue(equals(self.simplex, other))

    def test_dimension_mismatch(self):
        with self.assertRaises(ContractViolation):
            equals(self.simplex, convex_hull(points((0,), (1,))))

    def test_dict_round_trip(self):
        body = convex_hull(points(("1/2", 0), (4, 0), (0, 1)))
        self.assertTrue(equals(VPolytope.from_dict(body.to_dict()), body))

    def test_unsorted_vertices_rejected(self):
        with self.assertRaises(ContractViolation):
            VPolytope(tuple(points((1, 0), (0, 0))), 2)

    def test_bounding_box(self):
        lows, highs = bounding_box(convex_hull(points((1, 2), (3, -1))))
        self.assertEqual(lows, (1, -1))
        self.assertEqual(highs, (3, 2))


if __name__ == "__main__":
    unittest.main()
