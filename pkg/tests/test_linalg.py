# Unit tests for the exact linear algebra module
import random
import unittest
from fractions import Fraction

import sympy

from okounkov_bodies.linalg import (
    QMatrix, QVector, affine_rank, determinant, gauss_solve, in_convex_hull, nullspace, rank, to_sympy,
)
from okounkov_bodies.utils import ContractViolation


class TestQVector(unittest.TestCase):
    def test_arithmetic_is_exact(self):
        v = QVector.of(1, "1/2", 0)
        w = QVector.of("1/3", 0, 2)
        self.assertEqual(v + w, QVector.of("4/3", "1/2", 2))
        self.assertEqual(v.dot(w), Fraction(1, 3))
        self.assertEqual(v.scaled(2), QVector.of(2, 1, 0))

    def test_strings(self):
        self.assertEqual(QVector.of("3/4", 2).to_strings(), ["3/4", "2"])
        self.assertEqual(QVector.from_strings(["3/4", "2"]), QVector.of("3/4", 2))

    def test_rejects_floats(self):
        with self.assertRaises(ContractViolation):
            QVector.of(0.5)

    def test_dimension_mismatch(self):
        with self.assertRaises(ContractViolation):
            QVector.of(1, 2) + QVector.of(1, 2, 3)


class TestElimination(unittest.TestCase):
    def test_rank(self):
        self.assertEqual(rank(QMatrix.from_rows([[1, 2], [2, 4]])), 1)
        self.assertEqual(rank(QMatrix.identity(3)), 3)
        self.assertEqual(rank(QMatrix.zeros(2, 3)), 0)

    def test_gauss_solve(self):
        a = QMatrix.from_rows([[1, 1], [1, -1]])
        self.assertEqual(gauss_solve(a, QVector.of(3, 1)), QVector.of(2, 1))

    def test_gauss_solve_inconsistent(self):
        a = QMatrix.from_rows([[1, 1], [2, 2]])
        self.assertIsNone(gauss_solve(a, QVector.of(1, 3)))

    def test_gauss_solve_underdetermined_sets_free_variables_to_zero(self):
        a = QMatrix.from_rows([[1, 1, 1]])
        self.assertEqual(gauss_solve(a, QVector.of(5)), QVector.of(5, 0, 0))

    def test_nullspace(self):
        a = QMatrix.from_rows([[1, 2, 3], [0, 1, 1]])
        kernel = nullspace(a)
        self.assertEqual(len(kernel), 1)
        self.assertTrue(a.apply(kernel[0]).is_zero())

    def test_determinant(self):
        self.assertEqual(determinant(QMatrix.from_rows([[2, 0], [0, 3]])), 6)
        self.assertEqual(determinant(QMatrix.from_rows([[0, 1], [1, 0]])), -1)
        self.assertEqual(determinant(QMatrix.from_rows([[1, 2], [2, 4]])), 0)
        self.assertEqual(determinant(QMatrix.from_rows([["1/2", 0], [0, "2/3"]])), Fraction(1, 3))

    def test_affine_rank(self):
        points = [QVector.of(0, 0), QVector.of(1, 1), QVector.of(2, 2)]
        self.assertEqual(affine_rank(points), 1)
        self.assertEqual(affine_rank(points + [QVector.of(0, 1)]), 2)

    def _random_matrix(self, rng):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        return QMatrix.from_rows([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)]
                                  for _ in range(rows)])

    def test_rank_of_transpose(self):
        rng = random.Random(7)
        for _ in range(40):
            a = self._random_matrix(rng)
            self.assertEqual(rank(a), rank(a.transpose()))

    def test_rank_nullity(self):
        rng = random.Random(8)
        for _ in range(40):
            a = self._random_matrix(rng)
            kernel = nullspace(a)
            self.assertEqual(rank(a) + len(kernel), a.cols)
            for v in kernel:
                self.assertTrue(a.apply(v).is_zero())

    def test_solutions_reproduce_right_hand_side(self):
        rng = random.Random(9)
        for _ in range(40):
            a = self._random_matrix(rng)
            x = QVector(tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(a.cols)))
            b = a.apply(x)
            self.assertEqual(a.apply(gauss_solve(a, b)), b)
            other = QVector(tuple(Fraction(rng.randint(-4, 4)) for _ in range(a.row_count)))
            solution = gauss_solve(a, other)
            if solution is not None:
                self.assertEqual(a.apply(solution), other)

    def test_sympy_conversion(self):
        a = QMatrix.from_rows([["1/2", 0, 3], [1, "-2/3", 0]])
        converted = to_sympy(a)
        self.assertEqual(converted.shape, (2, 3))
        self.assertEqual(converted[1, 1], sympy.Rational(-2, 3))


class TestConvexMembership(unittest.TestCase):
    def setUp(self):
        self.square = [QVector.of(0, 0), QVector.of(1, 0), QVector.of(0, 1), QVector.of(1, 1)]

    def test_point_on_edge_of_triangle(self):
        generators = [QVector.of(0, 0), QVector.of(4, 0), QVector.of(0, 1)]
        certificate = in_convex_hull(QVector.of(3, 0), generators)
        self.assertTrue(certificate)
        self.assertEqual(certificate.coefficients, (Fraction(1, 4), Fraction(3, 4), Fraction(0)))

    def test_inside_point_has_weights(self):
        point = QVector.of("1/2", "1/3")
        certificate = in_convex_hull(point, self.square)
        self.assertTrue(certificate)
        self.assertTrue(certificate.verify(point, self.square))

    def test_outside_point_has_separator(self):
        point = QVector.of(2, "1/2")
        certificate = in_convex_hull(point, self.square)
        self.assertFalse(certificate)
        self.assertTrue(certificate.verify(point, self.square))

    def test_negative_coordinates(self):
        point = QVector.of(-1, -1)
        certificate = in_convex_hull(point, self.square)
        self.assertFalse(certificate)
        self.assertTrue(certificate.verify(point, self.square))

    def test_random_certificates_verify(self):
        rng = random.Random(11)
        for _ in range(50):
            generators = [QVector.of(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
                          for _ in range(rng.randint(1, 6))]
            point = QVector.of(*(Fraction(rng.randint(-6, 6), 2) for _ in range(3)))
            certificate = in_convex_hull(point, generators)
            self.assertTrue(certificate.verify(point, generators))

    def test_empty_generators(self):
        with self.assertRaises(ContractViolation):
            in_convex_hull(QVector.of(0), [])


if __name__ == "__main__":
    unittest.main()
