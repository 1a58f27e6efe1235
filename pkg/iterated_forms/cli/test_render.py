import json
from fractions import Fraction
from unittest import TestCase

from hypothesis import given, settings

from iterated_forms.cli.render import latex_form, latex_poly, render, render_poly, render_tensor
from iterated_forms.coeffs import Poly, Space
from iterated_forms.forms import Form
from iterated_forms.tensors import CovariantTensor, tensor
from iterated_forms.test_helpers import XY, forms

x = Poly.coordinate(XY, "x")
y = Poly.coordinate(XY, "y")


def g(K, coord):
    return Form.generator(XY, K, coord)


class LatexTest(TestCase):
    def test_forms(self):
        cases = [
            (g((1, 2), "x").scale(2 * x), r"2x\,d_{12}x"),
            (g((1,), "x") * g((2,), "y"), r"d_{1}x \wedge d_{2}y"),
            (-g((1,), "x"), r"-d_{1}x"),
            (g((1,), "x").scale(x * Fraction(3, 2)), r"\frac{3}{2}x\,d_{1}x"),
            (g((1,), "x").scale(x + y), r"\left(x + y\right)\,d_{1}x"),
            (g((1, 2), "x") ** 2, r"(d_{12}x)^{2}"),
            (g((1, 10), "y"), r"d_{1,10}y"),
            (Form.coefficient(x) - g((2,), "y"), r"x - d_{2}y"),
            (Form.coefficient(x + y), "x + y"),
            (Form.coefficient(x * y - 1) + g((1,), "x"), r"xy - 1 + d_{1}x"),
            (Form.coefficient(-x - y), "-x - y"),
            (Form.zero(XY), "0"),
        ]
        for omega, expected in cases:
            with self.subTest("latex of {}".format(omega)):
                self.assertEqual(latex_form(omega), expected)
                self.assertEqual(render(omega, "latex"), expected)

    def test_polys(self):
        self.assertEqual(latex_poly(x ** 2 * y * Fraction(3, 2) - 1), r"\frac{3}{2}x^{2}y - 1")
        self.assertEqual(render_poly(x ** 2, "latex"), "x^{2}")
        self.assertEqual(render_poly(Poly.zero(XY)), "0")


class TextTest(TestCase):
    def test_forms(self):
        cases = [
            (g((1, 2), "x").scale(2 * x) + g((1,), "x") * g((2,), "x") * 2, "2*d1(x) ∧ d2(x) + 2*x*d{1,2}(x)"),
            (g((1,), "x").scale(x + y), "(x + y)*d1(x)"),
            (Form.coefficient(x * y * Fraction(3, 2)), "3/2*x*y"),
            (Form.coefficient(x ** 2 * y + x * y ** 2), "x^2*y + x*y^2"),
            (Form.coefficient(-x - y) + g((2,), "y"), "-x - y + d2(y)"),
        ]
        for omega, expected in cases:
            with self.subTest("text of {}".format(expected)):
                self.assertEqual(render(omega), expected)

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            render(g((1,), "x"), "xml")


class JsonTest(TestCase):
    def test_form(self):
        omega = g((1,), "x").scale(x)
        self.assertEqual(json.loads(render(omega, "json")), omega.to_json())

    def test_unicode_coordinates(self):
        space = Space(("ξ",))
        omega = Form.generator(space, (1,), "ξ")
        self.assertIn("ξ", render(omega, "json"))

    def test_tensor(self):
        T = tensor(x, y)
        self.assertEqual(CovariantTensor.from_json(json.loads(render_tensor(T))), T)
        self.assertEqual(render_tensor(T, "text"), "(1)*dx⊗dy")

    @settings(max_examples=50, deadline=None)
    @given(forms())
    def test_round_trip_is_stable(self, omega):
        text = render(omega, "json")
        restored = Form.from_json(json.loads(text))
        self.assertEqual(restored, omega)
        self.assertEqual(render(restored, "json"), text)
