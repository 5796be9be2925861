# Unit tests for the polynomial ring module
import random
import unittest
from fractions import Fraction

from okounkov_bodies.polyring import (
    CurveParam, MultiPoly, binary_coefficients, exact_divide, max_power_dividing, monomials_of_degree, multiply,
    order_at_base_point, parse_poly, pullback, quadric_matrix,
)
from okounkov_bodies.linalg import rank
from okounkov_bodies.utils import ContractViolation


def conic_param():
    return CurveParam.from_strings(["u^2", "u*t", "t^2"])


def random_form(rng, degree, num_vars=3):
    monomials = monomials_of_degree(num_vars, degree)
    terms = {e: rng.randint(-3, 3) for e in monomials}
    terms[rng.choice(monomials)] = rng.randint(1, 3)
    return MultiPoly(num_vars, terms)


class TestParsing(unittest.TestCase):
    def test_parse_and_format(self):
        xi = parse_poly("z0*z2 - z1^2")
        self.assertEqual(xi.num_vars, 3)
        self.assertEqual(xi.format(), "z0 z2 - z1^2")

    def test_whitespace_and_coefficients(self):
        p = parse_poly(" 3/4 z0^2  -2z1 z2 ", num_vars=3)
        self.assertEqual(p.coefficient((2, 0, 0)), Fraction(3, 4))
        self.assertEqual(p.coefficient((0, 1, 1)), -2)
        self.assertEqual(p.format(), "3/4 z0^2 - 2 z1 z2")

    def test_malformed(self):
        for text in ["", "z0 +", "z0^x", "x1", "1/0 z0"]:
            with self.assertRaises(ContractViolation):
                parse_poly(text)

    def test_out_of_range_variable(self):
        with self.assertRaises(ContractViolation):
            parse_poly("z3", num_vars=3)


class TestArithmetic(unittest.TestCase):
    def test_ring_identities(self):
        rng = random.Random(5)
        for _ in range(25):
            f, g, h = (self._random(rng) for _ in range(3))
            self.assertEqual(f * (g + h), f * g + f * h)
            self.assertEqual((f * g) * h, f * (g * h))
            self.assertEqual(f - f, MultiPoly.zero(3))

    def test_multiply(self):
        product = multiply(parse_poly("z0 + z1", num_vars=3), parse_poly("z0 - z1", num_vars=3))
        self.assertEqual(product, parse_poly("z0^2 - z1^2", num_vars=3))
        with self.assertRaises(ContractViolation):
            multiply(parse_poly("z0", num_vars=2), parse_poly("z0", num_vars=3))

    def test_multiply_by_conic(self):
        xi = parse_poly("z0*z2 - z1^2")
        product = multiply(xi, parse_poly("z0 + z1", num_vars=3))
        self.assertEqual(product, parse_poly("z0^2 z2 + z0 z1 z2 - z0 z1^2 - z1^3"))
        self.assertEqual(exact_divide(product, parse_poly("z0 + z1", num_vars=3)), xi)
        self.assertEqual(multiply(xi, MultiPoly.constant(3)), xi)

    def test_divide_round_trip(self):
        rng = random.Random(12)
        for _ in range(30):
            f = random_form(rng, rng.randint(0, 3))
            g = random_form(rng, rng.randint(1, 2))
            self.assertEqual(exact_divide(multiply(f, g), g), f)

    def test_max_power_dividing_random(self):
        rng = random.Random(13)
        checked = 0
        while checked < 20:
            g = random_form(rng, rng.randint(1, 2))
            h = random_form(rng, rng.randint(0, 2))
            if exact_divide(h, g) is not None:
                continue
            m = rng.randint(0, 4)
            self.assertEqual(max_power_dividing(g ** m * h, g), (m, h))
            checked += 1

    def test_max_power_dividing_examples(self):
        xi = parse_poly("z0*z2 - z1^2")
        z0_squared = parse_poly("z0^2", num_vars=3)
        self.assertEqual(max_power_dividing(z0_squared, xi), (0, z0_squared))
        self.assertEqual(max_power_dividing(xi * z0_squared, xi), (1, z0_squared))
        self.assertEqual(max_power_dividing(xi ** 3 * parse_poly("z0", num_vars=3), xi),
                         (3, parse_poly("z0", num_vars=3)))

    def _random(self, rng):
        terms = {tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(-3, 3) for _ in range(4)}
        return MultiPoly(3, terms)

    def test_exact_divide(self):
        xi = parse_poly("z0*z2 - z1^2")
        q = parse_poly("z0 + 2 z1", num_vars=3)
        self.assertEqual(exact_divide(xi * q, xi), q)
        self.assertIsNone(exact_divide(parse_poly("z1^2", num_vars=3), xi))

    def test_max_power_dividing(self):
        xi = parse_poly("z0*z2 - z1^2")
        residual = parse_poly("z0^2 + z1 z2", num_vars=3)
        order, rest = max_power_dividing(xi ** 2 * residual, xi)
        self.assertEqual(order, 2)
        self.assertEqual(rest, residual)

    def test_max_power_dividing_rejects_constant_divisor(self):
        with self.assertRaises(ContractViolation):
            max_power_dividing(parse_poly("z0"), MultiPoly.constant(1, 2))

    def test_monomials_of_degree(self):
        monomials = monomials_of_degree(3, 2)
        self.assertEqual(len(monomials), 6)
        self.assertEqual(monomials[0], (2, 0, 0))
        self.assertEqual(monomials[-1], (0, 0, 2))

    def test_quadric_matrix(self):
        matrix = quadric_matrix(parse_poly("z0*z2 - z1^2"))
        self.assertEqual(matrix.entry(0, 2), Fraction(1, 2))
        self.assertEqual(matrix.entry(1, 1), -1)
        self.assertEqual(rank(matrix), 3)
        self.assertEqual(rank(quadric_matrix(parse_poly("z0^2", num_vars=3))), 1)


class TestCurveParam(unittest.TestCase):
    def test_homogenizes_affine_input(self):
        param = CurveParam.from_strings(["1", "t", "t^2"])
        self.assertEqual(param, conic_param())
        self.assertEqual(param.degree, 2)
        self.assertEqual(param.base_point(), (1, 0, 0))

    def test_zero_component_is_allowed(self):
        param = CurveParam.from_strings(["u", "t", "0"])
        self.assertEqual(param.degree, 1)
        self.assertTrue(param.has_no_common_zero())

    def test_mixed_degrees_rejected(self):
        with self.assertRaises(ContractViolation):
            CurveParam((parse_poly("u", names=("u", "t")), parse_poly("t^2", names=("u", "t"))))

    def test_pullback_of_conic_vanishes(self):
        self.assertTrue(pullback(parse_poly("z0*z2 - z1^2"), conic_param()).is_zero())

    def test_pullback_orders(self):
        param = conic_param()
        self.assertEqual(order_at_base_point(pullback(parse_poly("z2^2"), param)), 4)
        self.assertEqual(order_at_base_point(pullback(parse_poly("z0 z1", num_vars=3), param)), 1)

    def test_pullback_is_multiplicative(self):
        rng = random.Random(14)
        for param in (conic_param(), CurveParam.from_strings(["u", "t", "0"])):
            for _ in range(15):
                f = random_form(rng, rng.randint(0, 2))
                g = random_form(rng, rng.randint(0, 2))
                self.assertEqual(pullback(f * g, param), pullback(f, param) * pullback(g, param))

    def test_order_is_additive(self):
        rng = random.Random(15)
        for _ in range(20):
            f = random_form(rng, rng.randint(0, 4), num_vars=2)
            g = random_form(rng, rng.randint(0, 4), num_vars=2)
            self.assertEqual(order_at_base_point(f * g), order_at_base_point(f) + order_at_base_point(g))

    def test_order_examples(self):
        binary = ("u", "t")
        self.assertEqual(order_at_base_point(parse_poly("u t^2 + t^3", names=binary)), 2)
        self.assertEqual(order_at_base_point(parse_poly("u^4", names=binary)), 0)
        self.assertEqual(pullback(parse_poly("z2", num_vars=3), conic_param()), parse_poly("t^2", names=binary))
        with self.assertRaises(ContractViolation):
            order_at_base_point(MultiPoly.zero(2))

    def test_binary_coefficients(self):
        form = pullback(parse_poly("z0 z1 + 2 z2^2"), conic_param())
        self.assertEqual(binary_coefficients(form, 4), [0, 1, 0, 0, 2])


if __name__ == "__main__":
    unittest.main()
