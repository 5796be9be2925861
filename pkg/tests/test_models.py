# Unit tests for the models module
import math
import unittest

from okounkov_bodies.flags import CoordinateFlag, CurveFlag, ToricVertexFlag
from okounkov_bodies.linalg import nullspace, rank
from okounkov_bodies.models import (
    ProjectiveModel, ToricModel, hilbert_dim, model_from_config, restriction_degree, restriction_matrix,
)
from okounkov_bodies.polyring import CurveParam, parse_poly
from okounkov_bodies.utils import ConfigError, ContractViolation


def conic_flag():
    return CurveFlag(parse_poly("z0*z2 - z1^2"), CurveParam.from_strings(["u^2", "u*t", "t^2"]))


class TestProjectiveModel(unittest.TestCase):
    def test_hilbert_dim(self):
        self.assertEqual(hilbert_dim(ProjectiveModel(2, 1), 10), 66)
        self.assertEqual(hilbert_dim(ProjectiveModel(2, 2), 5), 66)
        self.assertEqual(hilbert_dim(ProjectiveModel(3, 1), 2), 10)

    def test_basis_matches_hilbert_dim(self):
        for n, d in [(1, 1), (2, 1), (2, 2), (3, 1)]:
            model = ProjectiveModel(n, d)
            for k in range(1, 4):
                self.assertEqual(len(model.basis_of_level(k)), math.comb(n + d * k, n))

    def test_level_must_be_positive(self):
        with self.assertRaises(ContractViolation):
            ProjectiveModel(2, 1).basis_of_level(0)

    def test_in_level(self):
        model = ProjectiveModel(2, 2)
        self.assertTrue(model.in_level(parse_poly("z0*z2 - z1^2"), 1))
        self.assertFalse(model.in_level(parse_poly("z0", num_vars=3), 1))

    def test_reindexed(self):
        self.assertEqual(ProjectiveModel(2, 1).reindexed(3), ProjectiveModel(2, 3))


class TestToricModel(unittest.TestCase):
    def setUp(self):
        self.square = ToricModel.from_vertices([[0, 0], [1, 0], [0, 1], [1, 1]])

    def test_square_hilbert_dim(self):
        for k in range(1, 11):
            self.assertEqual(self.square.hilbert_dim(k), (k + 1) ** 2)

    def test_triangle_hilbert_dim(self):
        triangle = ToricModel.from_vertices([[0, 0], [2, 0], [0, 2]])
        self.assertEqual(triangle.hilbert_dim(1), 6)
        self.assertEqual(triangle.hilbert_dim(2), 15)

    def test_shifted_polytope_sections(self):
        shifted = ToricModel.from_vertices([[1, 1], [2, 1], [1, 2], [2, 2]])
        basis = shifted.basis_of_level(2)
        self.assertEqual(len(basis), 9)
        self.assertEqual(basis.sections[0].exponents(), [(0, 0)])
        self.assertTrue(shifted.in_level(basis.sections[-1], 2))

    def test_rejects_non_lattice_and_flat(self):
        with self.assertRaises(ContractViolation):
            ToricModel.from_vertices([[0, 0], [1, 1]])

    def test_reindexed(self):
        self.assertEqual(self.square.reindexed(3).hilbert_dim(1), 16)


class TestConfig(unittest.TestCase):
    def test_projective(self):
        self.assertEqual(model_from_config({"type": "projective", "n": 2, "d": 2}), ProjectiveModel(2, 2))

    def test_errors(self):
        for bad in [{"type": "projective", "n": 2}, {"type": "sphere"}, {"type": "toric", "vertices": [[0.5, 0]]},
                    "projective", {"type": "projective", "n": 0, "d": 1}]:
            with self.assertRaises(ConfigError):
                model_from_config(bad)


class TestRestriction(unittest.TestCase):
    def test_degrees(self):
        self.assertEqual(restriction_degree(ProjectiveModel(2, 2), conic_flag()), 4)
        self.assertEqual(restriction_degree(ProjectiveModel(3, 2), CoordinateFlag.standard(3)), 2)
        square = ToricModel.from_vertices([[0, 0], [3, 0], [0, 1], [3, 1]])
        self.assertEqual(restriction_degree(square, ToricVertexFlag((0, 0), ((1, 0), (0, 1)))), 3)

    def test_mismatched_flag(self):
        with self.assertRaises(ConfigError):
            restriction_degree(ProjectiveModel(3, 1), conic_flag())

    def test_conic_restriction_is_surjective(self):
        model = ProjectiveModel(2, 2)
        for j in range(1, 7):
            matrix = restriction_matrix(model, conic_flag(), j)
            self.assertEqual(matrix.shape, (math.comb(2 + 2 * j, 2), 4 * j + 1))
            self.assertEqual(rank(matrix), 4 * j + 1)

    def test_conic_restriction_has_trivial_kernel(self):
        model = ProjectiveModel(2, 2)
        for j in range(1, 4):
            matrix = restriction_matrix(model, conic_flag(), j)
            self.assertEqual(nullspace(matrix), [])
            self.assertEqual(len(nullspace(matrix.transpose())), matrix.row_count - rank(matrix))

    def test_coordinate_flags_have_no_restriction_matrix(self):
        with self.assertRaises(ContractViolation):
            restriction_matrix(ProjectiveModel(2, 1), CoordinateFlag.standard(2), 1)


if __name__ == "__main__":
    unittest.main()
