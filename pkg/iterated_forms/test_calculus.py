from unittest import TestCase

from hypothesis import given, settings, strategies as st

from iterated_forms.calculus import (CInsertion, ExteriorDifferential, HomotopyOperator, Insertion, LieDerivative,
                                     compose, d, d_iterated, d_partition, graded_commutator, homotopy_H2,
                                     homotopy_identity_defect, include_lambda01, insert, insertion_C, kappa,
                                     lambda01_to_lambda1, lie, lie_via_cartan, primitive, project_lambda01, pullback)
from iterated_forms.coeffs import Poly, SmoothMap, Space, VectorField, vf_bracket
from iterated_forms.errors import DegreeError, SlotError, SpaceMismatchError
from iterated_forms.forms import Form, Generator, normalize
from iterated_forms.grading import MultiDegree, SlotPermutation, SlotShift
from iterated_forms.test_helpers import UV, XY, forms, index_sets, permutations, polys, smooth_maps, vector_fields

x = Poly.coordinate(XY, "x")
y = Poly.coordinate(XY, "y")
zero = Poly.zero(XY)
one = Poly.one(XY)
swap = SlotPermutation.from_cycles("(1 2)")


def g(K, coord):
    return Form.generator(XY, K, coord)


def f(p):
    return Form.coefficient(p)


class DifferentialTest(TestCase):
    def test_iterated(self):
        expected = g((1,), "x") * g((2,), "x") * 2 + f(2 * x) * g((1, 2), "x")
        self.assertEqual(d(1, d(2, f(x ** 2))), expected)
        self.assertEqual(str(d(1, d(2, f(x ** 2)))), "2*d1(x) ∧ d2(x) + 2*x*d{1,2}(x)")
        self.assertEqual(d_iterated((1, 2), x ** 2), expected)
        self.assertEqual(d_partition((1, 2), x ** 2), expected)

    def test_on_generators(self):
        self.assertEqual(d(2, g((1,), "x")), g((1, 2), "x"))
        self.assertTrue(d(1, g((1,), "x")).is_zero)
        self.assertTrue(d(1, f(Poly.constant(XY, 5))).is_zero)

    def test_empty_index_set(self):
        self.assertEqual(d_iterated((), x * y), f(x * y))
        with self.assertRaises(SlotError):
            d_partition((), x * y)

    def test_rejects_slot_zero(self):
        with self.assertRaises(SlotError):
            ExteriorDifferential(0)

    @settings(max_examples=40, deadline=None)
    @given(forms(max_slot=3), st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=3))
    def test_squares_and_commutes(self, omega, i, j):
        self.assertTrue(d(i, d(i, omega)).is_zero)
        self.assertEqual(d(i, d(j, omega)), d(j, d(i, omega)))

    @settings(max_examples=40, deadline=None)
    @given(forms(), forms(), st.integers(min_value=1, max_value=3))
    def test_leibniz(self, a, b, k):
        for piece in a.monomials():
            first = Form.from_monomial(piece)
            sign = -1 if first.degree()[k] % 2 else 1
            self.assertEqual(d(k, first * b), d(k, first) * b + (first * d(k, b)) * sign)

    @settings(max_examples=30, deadline=None)
    @given(polys(max_degree=3), index_sets(3))
    def test_partition_formula(self, p, K):
        self.assertEqual(d_partition(K, p), d_iterated(K, p))


class OperatorTest(TestCase):
    def test_degrees(self):
        self.assertEqual(ExteriorDifferential(3).degree, MultiDegree.unit(3))
        self.assertEqual(Insertion(VectorField.zero(XY), 2).degree, -MultiDegree.unit(2))
        self.assertEqual(CInsertion().degree, -MultiDegree.unit(2))
        self.assertEqual(HomotopyOperator().degree, -MultiDegree.unit(2))

    def test_linear_combination(self):
        d1 = ExteriorDifferential(1)
        twice = d1 + d1
        self.assertEqual(twice(f(x)), g((1,), "x") * 2)
        self.assertTrue((d1 - d1)(f(x * y)).is_zero)
        self.assertEqual(d1.scale(3)(f(y)), g((1,), "y") * 3)
        with self.assertRaises(DegreeError):
            ExteriorDifferential(1) + ExteriorDifferential(2)

    def test_composition(self):
        self.assertEqual(compose(ExteriorDifferential(1), ExteriorDifferential(2))(f(x)), g((1, 2), "x"))

    def test_differentials_commute(self):
        bracket = graded_commutator(ExteriorDifferential(1), ExteriorDifferential(2))
        self.assertTrue(bracket(f(x ** 2 * y) * g((1, 2), "y")).is_zero)


class LieTest(TestCase):
    def test_euler_field(self):
        X = VectorField(XY, (x, zero))
        self.assertEqual(lie(X, g((1,), "x")), g((1,), "x"))
        self.assertEqual(lie(X, g((1, 2), "x")), g((1, 2), "x"))
        self.assertTrue(lie(X, g((1,), "y")).is_zero)
        self.assertEqual(lie(X, f(x ** 2)), f(2 * x ** 2))

    def test_space_mismatch(self):
        with self.assertRaises(SpaceMismatchError):
            lie(VectorField.zero(UV), g((1,), "x"))

    @settings(max_examples=30, deadline=None)
    @given(vector_fields(), forms(), st.integers(min_value=1, max_value=2))
    def test_cartan_formula(self, X, omega, slot):
        self.assertEqual(lie_via_cartan(X, slot, omega), lie(X, omega))

    @settings(max_examples=30, deadline=None)
    @given(vector_fields(max_degree=1), vector_fields(max_degree=1), forms())
    def test_bracket(self, X, Y, omega):
        self.assertEqual(lie(X, lie(Y, omega)) - lie(Y, lie(X, omega)), lie(vf_bracket(X, Y), omega))

    @settings(max_examples=30, deadline=None)
    @given(vector_fields(), forms(), st.integers(min_value=1, max_value=3))
    def test_commutes_with_d(self, X, omega, k):
        self.assertEqual(lie(X, d(k, omega)), d(k, lie(X, omega)))
        self.assertTrue(graded_commutator(LieDerivative(X), ExteriorDifferential(k))(omega).is_zero)


class InsertionTest(TestCase):
    def test_generators(self):
        dx = VectorField.coordinate_field(XY, "x")
        self.assertEqual(insert(dx, 1, g((1,), "x")), f(one))
        self.assertTrue(insert(dx, 1, g((2,), "x")).is_zero)
        self.assertEqual(insert(VectorField(XY, (y, zero)), 1, g((1, 2), "x")), g((2,), "y"))
        self.assertTrue(insert(dx, 1, f(x)).is_zero)

    def test_signs(self):
        dx = VectorField.coordinate_field(XY, "x")
        dy = VectorField.coordinate_field(XY, "y")
        omega = g((1,), "x") * g((2,), "y")
        self.assertEqual(insert(dy, 2, omega), g((1,), "x"))
        self.assertEqual(insert(dy, 1, g((1,), "x") * g((1,), "y")), -g((1,), "x"))
        self.assertEqual(insert(dx, 1, omega), g((2,), "y"))

    @settings(max_examples=30, deadline=None)
    @given(vector_fields(), vector_fields(), forms())
    def test_insertions_anticommute(self, X, Y, omega):
        self.assertEqual(insert(X, 1, insert(Y, 1, omega)), -insert(Y, 1, insert(X, 1, omega)))

    @settings(max_examples=30, deadline=None)
    @given(vector_fields(), forms())
    def test_commutes_with_other_differentials(self, X, omega):
        self.assertEqual(insert(X, 1, d(2, omega)), d(2, insert(X, 1, omega)))


class KappaTest(TestCase):
    def test_swap(self):
        self.assertEqual(kappa(swap, g((1,), "x") * g((2,), "y")), g((1,), "y") * g((2,), "x"))
        self.assertEqual(kappa(swap, g((1, 2), "x")), g((1, 2), "x"))
        self.assertEqual(kappa(swap, f(x)), f(x))

    def test_display(self):
        omega = g((1,), "x") * g((2,), "y") * g((1, 2), "x")
        expected = normalize([(1, [Generator.of(XY, (2,), "x"), Generator.of(XY, (1,), "y"),
                                   Generator.of(XY, (1, 2), "x")])], XY)
        self.assertEqual(kappa(swap, omega), expected)

    def test_shift(self):
        self.assertEqual(kappa(SlotShift(1), g((1,), "x") * g((2,), "y")), g((2,), "x") * g((3,), "y"))

    def test_rejects_non_injective_maps(self):
        with self.assertRaises(SlotError):
            kappa(lambda k: 1, g((1,), "x") * g((2,), "y"))

    @settings(max_examples=40, deadline=None)
    @given(forms(max_slot=3), permutations(3), permutations(3))
    def test_action(self, omega, sigma, tau):
        self.assertEqual(kappa(sigma, kappa(sigma.inverse(), omega)), omega)
        self.assertEqual(kappa(sigma.compose(tau), omega), kappa(sigma, kappa(tau, omega)))
        self.assertEqual(kappa(sigma, omega * omega), kappa(sigma, omega) * kappa(sigma, omega))

    @settings(max_examples=40, deadline=None)
    @given(forms(max_slot=3), permutations(3), st.integers(min_value=1, max_value=3))
    def test_intertwines_differentials(self, omega, sigma, k):
        self.assertEqual(kappa(sigma, d(k, omega)), d(sigma(k), kappa(sigma, omega)))


class PullbackTest(TestCase):
    line = Space(("t",))

    def setUp(self):
        self.t = Poly.coordinate(self.line, "t")
        self.phi = SmoothMap(self.line, XY, (self.t ** 2, self.t))

    def dt(self, K):
        return Form.generator(self.line, K, "t")

    def test_generators(self):
        self.assertEqual(pullback(self.phi, g((1,), "x")), Form.coefficient(2 * self.t) * self.dt((1,)))
        self.assertEqual(pullback(self.phi, f(x) * g((1,), "y")), Form.coefficient(self.t ** 2) * self.dt((1,)))
        self.assertTrue(pullback(self.phi, g((1,), "x") * g((1,), "y")).is_zero)
        self.assertEqual(pullback(self.phi, g((1, 2), "x")),
                         self.dt((1,)) * self.dt((2,)) * 2 + Form.coefficient(2 * self.t) * self.dt((1, 2)))

    def test_wrong_space(self):
        with self.assertRaises(SpaceMismatchError):
            pullback(self.phi, self.dt((1,)))

    @settings(max_examples=30, deadline=None)
    @given(smooth_maps(), forms(UV), st.integers(min_value=1, max_value=3))
    def test_commutes_with_d(self, phi, omega, k):
        self.assertEqual(pullback(phi, d(k, omega)), d(k, pullback(phi, omega)))

    @settings(max_examples=30, deadline=None)
    @given(smooth_maps(), forms(UV), forms(UV))
    def test_multiplicative(self, phi, a, b):
        self.assertEqual(pullback(phi, a * b), pullback(phi, a) * pullback(phi, b))

    @settings(max_examples=20, deadline=None)
    @given(smooth_maps(UV, XY, max_degree=1), smooth_maps(XY, UV, max_degree=2), forms(UV))
    def test_contravariant(self, psi, phi, omega):
        self.assertEqual(pullback(SmoothMap.compose(phi, psi), omega), pullback(psi, pullback(phi, omega)))


class HomotopyTest(TestCase):
    def test_insertion_C(self):
        self.assertEqual(insertion_C(g((1, 2), "x")), g((1,), "x"))
        self.assertTrue(insertion_C(g((2,), "x")).is_zero)
        self.assertTrue(insertion_C(g((1,), "x")).is_zero)
        self.assertEqual(insertion_C(g((1, 2), "x") * g((2,), "x")), g((1,), "x") * g((2,), "x"))
        with self.assertRaises(DegreeError):
            insertion_C(g((3,), "x"))

    def test_euler_operator(self):
        bracket = graded_commutator(CInsertion(), ExteriorDifferential(2))
        first = g((1,), "x") * g((2,), "x")
        self.assertEqual(bracket(first), first)
        second = g((1,), "x") * g((1,), "y")
        self.assertEqual(bracket(second), second * 2)
        self.assertTrue(bracket(f(x) * g((2,), "y")).is_zero)

    def test_H2(self):
        self.assertEqual(homotopy_H2(g((1, 2), "x") * g((2,), "x")), g((1,), "x") * g((2,), "x"))
        self.assertTrue(homotopy_H2(g((1,), "x")).is_zero)
        self.assertTrue(homotopy_H2(f(x) * g((2,), "y")).is_zero)
        with self.assertRaises(DegreeError):
            homotopy_H2(g((3,), "x"))

    def test_identity_on_examples(self):
        bracket = graded_commutator(HomotopyOperator(), ExteriorDifferential(2))
        self.assertEqual(bracket(g((1,), "x")), g((1,), "x"))
        for omega in (g((1,), "x"), f(x) * g((2,), "y"), g((1, 2), "x") * g((1,), "y") + f(x * y)):
            with self.subTest("homotopy identity on {}".format(omega)):
                self.assertTrue(homotopy_identity_defect(omega).is_zero)

    @settings(max_examples=50, deadline=None)
    @given(forms(max_generators=4))
    def test_identity(self, omega):
        self.assertTrue(homotopy_identity_defect(omega).is_zero)

    def test_projection(self):
        omega = f(x) + f(y) * g((2,), "x") + f(x) * g((1,), "y")
        self.assertEqual(project_lambda01(omega), f(x) + f(y) * g((2,), "x"))
        self.assertEqual(include_lambda01(g((2,), "x")), g((2,), "x"))
        with self.assertRaises(DegreeError):
            include_lambda01(g((1,), "x"))

    def test_lambda01_to_lambda1(self):
        self.assertEqual(lambda01_to_lambda1(f(x) * g((2,), "x") * g((2,), "y")),
                         f(x) * g((1,), "x") * g((1,), "y"))
        with self.assertRaises(DegreeError):
            lambda01_to_lambda1(g((1,), "x"))

    def test_primitive(self):
        eta = f(x) * g((1,), "y")
        omega = d(2, eta)
        self.assertEqual(primitive(omega), eta)
        self.assertEqual(d(2, primitive(omega)), omega)
        for bad in (g((2,), "x"), g((1,), "x")):
            with self.subTest("no primitive for {}".format(bad)):
                with self.assertRaises(DegreeError):
                    primitive(bad)

    @settings(max_examples=40, deadline=None)
    @given(forms())
    def test_constructive_exactness(self, eta):
        omega = d(2, eta)
        omega = omega - project_lambda01(omega)
        self.assertEqual(d(2, primitive(omega)), omega)
