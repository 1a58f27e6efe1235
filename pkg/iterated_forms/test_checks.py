import random
from unittest import TestCase

from iterated_forms.checks import (DEFAULT_CASES, IDENTITIES, SUITES, CheckParameters, identities_of, run_checks,
                                   run_identity)
from iterated_forms.errors import UnknownSuiteError
from iterated_forms.forms import max_slot
from iterated_forms.grading import MultiDegree
from iterated_forms.sampling import Sampler, default_space
from iterated_forms.tensors import is_tensor


class SamplerTest(TestCase):
    def test_reproducible(self):
        first = CheckParameters(seed=3).sampler("kappa.kappa_involution")
        second = CheckParameters(seed=3).sampler("kappa.kappa_involution")
        self.assertEqual([first.form(3) for _ in range(5)], [second.form(3) for _ in range(5)])

    def test_forms_respect_slots(self):
        sampler = Sampler(random.Random(11), default_space(3))
        for _ in range(20):
            self.assertLessEqual(max_slot(sampler.form(2)), 2)

    def test_obstruction(self):
        sampler = Sampler(random.Random(5), default_space(2))
        for p in (2, 3):
            with self.subTest("obstruction with {} slots".format(p)):
                omega = sampler.obstruction(p)
                self.assertEqual(omega.degrees(), [MultiDegree.ones(p)])
                self.assertEqual(is_tensor(omega, p).obstruction, omega)
        with self.assertRaises(ValueError):
            sampler.obstruction(1)

    def test_default_space(self):
        self.assertEqual(default_space(3).coords, ("x", "y", "z"))
        with self.assertRaises(ValueError):
            default_space(0)


class IdentitiesTest(TestCase):
    def test_suites(self):
        self.assertEqual(len(identities_of("all")), len(IDENTITIES))
        for suite in SUITES:
            with self.subTest("suite {}".format(suite)):
                self.assertTrue(identities_of(suite))
                self.assertTrue(all(identity.suite == suite for identity in identities_of(suite)))

    def test_unknown_suite(self):
        with self.assertRaises(UnknownSuiteError) as context:
            run_checks("bogus")
        self.assertEqual(str(context.exception), "unknown suite: bogus")

    def test_parameters(self):
        for kwargs in ({"cases": 0}, {"workers": 0}):
            with self.subTest("rejects {}".format(kwargs)):
                with self.assertRaises(ValueError):
                    CheckParameters(**kwargs)

    def test_defaults(self):
        params = CheckParameters()
        self.assertEqual(params.cases, DEFAULT_CASES)
        self.assertGreaterEqual(params.cases, 200)
        self.assertEqual(params.sampler("commutation.d_squared").max_slot, params.max_slot)

    def test_slot_ceiling(self):
        sampler = CheckParameters(max_slot=2).sampler("partition.partition_formula")
        self.assertEqual(sampler.max_slot, 2)
        report = run_checks("partition", seed=4, cases=10, max_slot=2)
        self.assertTrue(report.passed, str(report))
        with self.assertRaises(ValueError):
            CheckParameters(max_slot=0)

    def test_failures_are_reported(self):
        identity = IDENTITIES[0]
        broken = type(identity)(identity.suite, identity.name, identity.description, lambda sampler: "always")
        result = run_identity(broken, CheckParameters(cases=4))
        self.assertFalse(result.passed)
        self.assertEqual(result.cases, 1)
        self.assertIn("FAIL", str(result))


class RunChecksTest(TestCase):
    def test_every_suite_passes(self):
        for suite in SUITES:
            with self.subTest("suite {}".format(suite)):
                report = run_checks(suite, seed=7, cases=8)
                self.assertTrue(report.passed, str(report))
                self.assertEqual(len(report.results), len(identities_of(suite)))

    def test_deterministic(self):
        first = run_checks("kappa", seed=42, cases=10)
        second = run_checks("kappa", seed=42, cases=10)
        self.assertEqual(str(first), str(second))

    def test_workers_do_not_change_the_report(self):
        serial = run_checks("homotopy", seed=1, cases=6)
        parallel = run_checks("homotopy", seed=1, cases=6, workers=3)
        self.assertEqual(str(serial), str(parallel))

    def test_three_dimensions(self):
        report = run_checks("partition", seed=2, cases=5, dimension=3)
        self.assertTrue(report.passed, str(report))
