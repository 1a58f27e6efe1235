import itertools

from setuptools import Command
from setuptools import setup


class IdentityCheck(Command):
    """
    Runs the randomized identity suites against the installed sources
    """

    description = "run the identity-check suites"

    user_options = [
        ("suite=", None, "suite to run (default: all)"),
        ("seed=", None, "base random seed (default: 0)"),
        ("cases=", None, "random cases per identity (default: 200)"),
        ("workers=", None, "identities evaluated concurrently (default: 1)"),
    ]

    def initialize_options(self):
        self.suite = "all"
        self.seed = 0
        self.cases = 200
        self.workers = 1

    def finalize_options(self):
        self.seed = int(self.seed)
        self.cases = int(self.cases)
        self.workers = int(self.workers)

    def run(self):
        from iterated_forms.checks import run_checks

        report = run_checks(self.suite, seed=self.seed, cases=self.cases, workers=self.workers)
        print(report)
        if not report.passed:
            raise RuntimeError("{} identities failed".format(len(report.failures)))


extras_require = {
    "test": ["hypothesis"],
    "docs": ["sphinx"]
}
extras_require["all"] = list(itertools.chain(*extras_require.values()))

with open("README.md", "rt") as f:
    long_description = f.read()

setup(
    name='iterated-forms',
    version='0.1.0',
    packages=[
        "iterated_forms",
        "iterated_forms.cli"
    ],
    include_package_data=True,
    license="MIT",
    description="Exact symbolic calculus of iterated differential forms",
    long_description=long_description,
    long_description_content_type='text/markdown',
    cmdclass={
        "identities": IdentityCheck
    },
    entry_points={
        "console_scripts": [
            "iforms = iterated_forms.cli.main:main"
        ]
    },
    install_requires=[
        "sympy",
        "lark"
    ],
    extras_require=extras_require
)
