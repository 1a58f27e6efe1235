from unittest import TestCase

from hypothesis import given, settings

from iterated_forms.coeffs import Poly
from iterated_forms.errors import DegreeError, SlotError
from iterated_forms.forms import (Form, Generator, homogeneous_part, max_slot, multidegree_components, normalize,
                                  slot_degree_components, wedge)
from iterated_forms.grading import ZERO, MultiDegree, sign_of
from iterated_forms.test_helpers import XY, forms, monomials

x = Poly.coordinate(XY, "x")
y = Poly.coordinate(XY, "y")
e1 = MultiDegree.unit(1)
e2 = MultiDegree.unit(2)


def gen(K, coord):
    return Generator.of(XY, K, coord)


def g(K, coord):
    return Form.generator(XY, K, coord)


class GeneratorTest(TestCase):
    def test_text(self):
        self.assertEqual(str(gen((1,), "x")), "d1(x)")
        self.assertEqual(str(gen((2, 1), "y")), "d{1,2}(y)")

    def test_parity(self):
        self.assertTrue(gen((1,), "x").is_odd)
        self.assertFalse(gen((1, 2), "x").is_odd)

    def test_canonical_order(self):
        ordered = sorted([gen((2,), "x"), gen((1, 2), "x"), gen((1,), "y"), gen((1,), "x")])
        self.assertEqual([str(generator) for generator in ordered], ["d1(x)", "d1(y)", "d{1,2}(x)", "d2(x)"])

    def test_rejects_empty_index_set(self):
        with self.assertRaises(SlotError):
            gen((), "x")


class NormalizeTest(TestCase):
    def test_reorders_with_sign(self):
        omega = normalize([(1, [gen((1,), "y"), gen((1,), "x")])], XY)
        self.assertEqual(omega, -(g((1,), "x") * g((1,), "y")))
        self.assertEqual(str(omega), "-d1(x) ∧ d1(y)")

    def test_repeated_odd_generator_vanishes(self):
        self.assertTrue(normalize([(1, [gen((1,), "x"), gen((1,), "x")])], XY).is_zero)

    def test_even_generators_commute(self):
        omega = normalize([(1, [gen((2,), "y"), gen((1,), "x")])], XY)
        self.assertEqual(str(omega), "d1(x) ∧ d2(y)")

    def test_even_generators_take_powers(self):
        square = g((1, 2), "x") * g((1, 2), "x")
        self.assertFalse(square.is_zero)
        self.assertEqual(str(square), "d{1,2}(x)^2")
        self.assertEqual(square, g((1, 2), "x") ** 2)

    def test_merges_like_terms(self):
        dx = gen((1,), "x")
        omega = normalize([(x, [dx]), (y, [dx]), (-x, [dx])], XY)
        self.assertEqual(omega, g((1,), "x") * y)
        self.assertTrue(normalize([(x, [dx]), (-x, [dx])], XY).is_zero)

    @settings(max_examples=50, deadline=None)
    @given(forms())
    def test_idempotent(self, omega):
        raw = [(coeff, [generator for generator, exponent in factors for _ in range(exponent)])
               for factors, coeff in omega.items()]
        self.assertEqual(normalize(raw, XY), omega)


class WedgeTest(TestCase):
    def test_coefficients_are_central(self):
        first = Form.coefficient(x) * g((1,), "x")
        second = Form.coefficient(y) * g((1,), "y")
        product = first * second
        self.assertEqual(product, (g((1,), "x") * g((1,), "y")).scale(x * y))
        self.assertEqual(str(product), "x*y*d1(x) ∧ d1(y)")

    def test_text(self):
        omega = g((1,), "x") * 2 + Form.coefficient(x + y) * g((1,), "y") + Form.coefficient(Poly.constant(XY, 3) / 2)
        self.assertEqual(str(omega), "3/2 + 2*d1(x) + (x + y)*d1(y)")
        self.assertEqual(str(Form.zero(XY)), "0")

    def test_coefficient_text(self):
        cases = [
            (Form.coefficient(x + y), "x + y"),
            (Form.coefficient(x * y - 1), "x*y - 1"),
            (Form.coefficient(-x - y), "-x - y"),
            (Form.coefficient(x + y) + g((1,), "x"), "x + y + d1(x)"),
            (Form.coefficient(-x - y) - g((2,), "y"), "-x - y - d2(y)"),
        ]
        for omega, expected in cases:
            with self.subTest("text of {}".format(expected)):
                self.assertEqual(str(omega), expected)

    def test_scalar_needs_space(self):
        self.assertEqual(Form.coefficient(3, XY), Form.coefficient(Poly.constant(XY, 3)))
        with self.assertRaises(ValueError):
            Form.coefficient(3)

    @settings(max_examples=50, deadline=None)
    @given(forms(), forms(), forms())
    def test_associative(self, a, b, c):
        self.assertEqual(wedge(wedge(a, b), c), wedge(a, wedge(b, c)))

    @settings(max_examples=50, deadline=None)
    @given(monomials(), monomials())
    def test_graded_commutative(self, a, b):
        if a.is_zero or b.is_zero:
            return
        self.assertEqual(a * b, (b * a) * sign_of(a.degree(), b.degree()))

    @settings(max_examples=30, deadline=None)
    @given(forms())
    def test_unit(self, omega):
        self.assertEqual(Form.one(XY) * omega, omega)
        self.assertEqual(omega * Form.one(XY), omega)


class DegreeTest(TestCase):
    def test_components(self):
        omega = Form.coefficient(x) + g((1,), "x") + g((1,), "x") * g((2,), "x")
        components = multidegree_components(omega)
        self.assertEqual(set(components), {ZERO, e1, e1 + e2})
        self.assertEqual(homogeneous_part(omega, e1), g((1,), "x"))
        self.assertTrue(homogeneous_part(omega, e2).is_zero)
        self.assertFalse(omega.is_homogeneous)
        with self.assertRaises(DegreeError):
            omega.degree()

    def test_degree(self):
        self.assertEqual(g((1, 2), "x").degree(), e1 + e2)
        self.assertEqual(Form.zero(XY).degree(), ZERO)

    def test_slot_components(self):
        omega = g((1, 2), "x") * g((1,), "y") + g((2,), "y")
        pieces = slot_degree_components(omega, 1)
        self.assertEqual(set(pieces), {0, 2})
        self.assertEqual(pieces[0], g((2,), "y"))

    def test_max_slot(self):
        self.assertEqual(max_slot(Form.coefficient(x)), 0)
        self.assertEqual(max_slot(g((1, 3), "x") + g((2,), "y")), 3)

    def test_as_poly(self):
        self.assertEqual(Form.coefficient(x).as_poly(), x)
        with self.assertRaises(DegreeError):
            g((1,), "x").as_poly()

    @settings(max_examples=30, deadline=None)
    @given(forms())
    def test_components_sum_to_form(self, omega):
        self.assertEqual(sum(multidegree_components(omega).values(), Form.zero(XY)), omega)


class JsonTest(TestCase):
    def test_schema(self):
        self.assertEqual(g((1, 2), "x").to_json(), {
            "space": ["x", "y"],
            "terms": [{
                "coeff": {"terms": [{"exps": [0, 0], "num": "1", "den": "1"}]},
                "factors": [{"K": [1, 2], "coord": "x", "exp": 1}],
            }],
        })
        self.assertEqual(Form.zero(XY).to_json(), {"space": ["x", "y"], "terms": []})

    def test_exponents_expand(self):
        square = g((1, 2), "x") ** 2
        self.assertEqual(square.to_json()["terms"][0]["factors"], [{"K": [1, 2], "coord": "x", "exp": 2}])
        self.assertEqual(Form.from_json(square.to_json()), square)

    @settings(max_examples=50, deadline=None)
    @given(forms())
    def test_round_trip(self, omega):
        self.assertEqual(Form.from_json(omega.to_json()), omega)
