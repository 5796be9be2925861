# Unit tests for the flags module
import unittest

from okounkov_bodies.flags import (
    FAIL, PASS, USER_ASSERTED, CoordinateFlag, CurveFlag, ToricVertexFlag, flag_from_config,
    flag_vertex_sections, is_complete_intersection, validate_flag,
)
from okounkov_bodies.models import ProjectiveModel, ToricModel
from okounkov_bodies.polyring import CurveParam, parse_poly
from okounkov_bodies.utils import ConfigError, ContractViolation, HypothesisMismatch


def conic_flag():
    return flag_from_config({"variant": "curve", "xi1": "z0*z2 - z1^2", "param": ["u^2", "u*t", "t^2"]})


def statuses(report):
    return {check.name: check.status for check in report.checks}


class TestFlagConstruction(unittest.TestCase):
    def test_coordinate_order_must_be_permutation(self):
        with self.assertRaises(ContractViolation):
            CoordinateFlag((0, 0, 1))

    def test_coordinate_defaults_to_standard_order(self):
        flag = flag_from_config({"variant": "coordinate"}, ProjectiveModel(3, 1))
        self.assertEqual(flag, CoordinateFlag.standard(3))
        self.assertEqual(flag.point, (1, 0, 0, 0))

    def test_curve_flag_point(self):
        self.assertEqual(conic_flag().point, (1, 0, 0))
        self.assertEqual(conic_flag().curve_degree, 2)

    def test_toric_edge_coordinates(self):
        flag = ToricVertexFlag((1, 0), ((-1, 0), (0, 1)))
        self.assertEqual(flag.edge_coordinates((0, 1)), (1, 1))
        self.assertEqual(flag.rescaled(2).vertex, (2, 0))

    def test_config_errors(self):
        for bad in [{"variant": "curve", "xi1": "z0"}, {"variant": "spiral"}, [],
                    {"variant": "toric_vertex", "vertex": [0, 0], "edges": [[1, 0]]},
                    {"variant": "curve", "xi1": "z0 z2 - ", "param": ["u^2", "u*t", "t^2"]}]:
            with self.assertRaises(ConfigError):
                flag_from_config(bad)


class TestValidation(unittest.TestCase):
    def test_conic_passes_every_check(self):
        report = validate_flag(ProjectiveModel(2, 2), conic_flag())
        self.assertTrue(report.ok)
        self.assertEqual(set(statuses(report).values()), {PASS})
        self.assertEqual(statuses(report)["restriction_surjective"], PASS)

    def test_degenerate_conic_fails_smoothness(self):
        flag = CurveFlag(parse_poly("z0*z1", num_vars=3), CurveParam.from_strings(["0", "u", "t"]))
        report = validate_flag(ProjectiveModel(2, 2), flag)
        self.assertEqual(statuses(report)["xi1_smooth"], FAIL)
        self.assertFalse(report.ok)

    def test_parametrization_off_the_curve(self):
        flag = CurveFlag(parse_poly("z0*z2 - z1^2"), CurveParam.from_strings(["u^2", "t^2", "u*t"]))
        report = validate_flag(ProjectiveModel(2, 2), flag)
        self.assertEqual(statuses(report)["param_on_curve"], FAIL)

    def test_cubic_is_user_asserted(self):
        flag = CurveFlag(parse_poly("z0^2*z2 - z1^3"), CurveParam.from_strings(["u^3", "u^2*t", "t^3"]))
        with self.assertLogs("okounkov_bodies.flags", level="WARNING"):
            report = validate_flag(ProjectiveModel(2, 3), flag)
        self.assertEqual(statuses(report)["xi1_irreducible"], USER_ASSERTED)
        self.assertIn("xi1_smooth", report.user_asserted)

    def test_curve_flag_needs_the_plane(self):
        report = validate_flag(ProjectiveModel(3, 1), conic_flag())
        self.assertFalse(report.ok)

    def test_toric_square(self):
        model = ToricModel.from_vertices([[0, 0], [1, 0], [0, 1], [1, 1]])
        report = validate_flag(model, ToricVertexFlag((0, 0), ((1, 0), (0, 1))))
        self.assertTrue(report.ok)
        self.assertEqual(statuses(report)["edges_are_polytope_edges"], PASS)

    def test_toric_direction_that_is_not_an_edge(self):
        model = ToricModel.from_vertices([[0, 0], [1, 0], [1, 1]])
        report = validate_flag(model, ToricVertexFlag((0, 0), ((1, 0), (0, 1))))
        self.assertEqual(statuses(report)["edges_are_polytope_edges"], FAIL)
        self.assertFalse(report.ok)

    def test_toric_triangle_with_true_edges(self):
        model = ToricModel.from_vertices([[0, 0], [1, 0], [1, 1]])
        report = validate_flag(model, ToricVertexFlag((0, 0), ((1, 0), (1, 1))))
        self.assertEqual(statuses(report)["edges_are_polytope_edges"], PASS)
        self.assertTrue(report.ok)

    def test_toric_cube_face_diagonal(self):
        model = ToricModel.from_vertices([[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)])
        self.assertTrue(validate_flag(model, ToricVertexFlag((0, 0, 0), ((1, 0, 0), (0, 1, 0), (0, 0, 1)))).ok)
        report = validate_flag(model, ToricVertexFlag((0, 0, 0), ((1, 0, 0), (1, 1, 0), (0, 0, 1))))
        self.assertEqual(statuses(report)["edges_are_polytope_edges"], FAIL)

    def test_toric_non_vertex(self):
        model = ToricModel.from_vertices([[0, 0], [2, 0], [0, 2], [2, 2]])
        report = validate_flag(model, ToricVertexFlag((1, 0), ((1, 0), (0, 1))))
        self.assertEqual(statuses(report)["vertex_is_polytope_vertex"], FAIL)
        self.assertEqual(statuses(report)["vertex_cone_contains_polytope"], FAIL)

    def test_toric_non_unimodular(self):
        model = ToricModel.from_vertices([[0, 0], [1, 0], [0, 1], [1, 1]])
        report = validate_flag(model, ToricVertexFlag((0, 0), ((2, 0), (0, 1))))
        self.assertEqual(statuses(report)["edges_unimodular"], FAIL)

    def test_report_dict(self):
        data = validate_flag(ProjectiveModel(2, 1), CoordinateFlag.standard(2)).to_dict()
        self.assertEqual(data["variant"], "coordinate")
        self.assertTrue(data["ok"])


class TestCompleteIntersection(unittest.TestCase):
    def test_hypothesis(self):
        self.assertTrue(is_complete_intersection(ProjectiveModel(2, 1), CoordinateFlag.standard(2)))
        self.assertFalse(is_complete_intersection(ProjectiveModel(2, 2), CoordinateFlag.standard(2)))
        self.assertTrue(is_complete_intersection(ProjectiveModel(2, 2), conic_flag()))
        self.assertFalse(is_complete_intersection(ProjectiveModel(2, 1), conic_flag()))

    def test_flag_sections_pair_with_unit_vectors(self):
        sections = flag_vertex_sections(ProjectiveModel(3, 1), CoordinateFlag.standard(3))
        self.assertEqual([str(s) for s, _ in sections], ["z3", "z2"])
        self.assertEqual([e for _, e in sections], [(0, 0, 1), (0, 1, 0)])

    def test_toric_flags_are_not_cut_out_by_sections(self):
        model = ToricModel.from_vertices([[0, 0], [1, 0], [0, 1], [1, 1]])
        with self.assertRaises(HypothesisMismatch):
            flag_vertex_sections(model, ToricVertexFlag((0, 0), ((1, 0), (0, 1))))


if __name__ == "__main__":
    unittest.main()
