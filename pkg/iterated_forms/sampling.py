"""
Seeded random objects for the identity suites.

Every draw goes through the ``random.Random`` the sampler was built with, so a suite run
is reproducible from its seed alone.
"""

import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from iterated_forms.coeffs import Poly, SmoothMap, Space, VectorField
from iterated_forms.forms import Form, Generator, normalize
from iterated_forms.grading import IndexSet, SlotPermutation
from iterated_forms.tensors import CovariantTensor

COORDINATE_NAMES = ("x", "y", "z", "u", "v", "w")


def default_space(dimension: int) -> Space:
    if not 1 <= dimension <= len(COORDINATE_NAMES):
        raise ValueError("Dimension must be between 1 and {}".format(len(COORDINATE_NAMES)))
    return Space(COORDINATE_NAMES[:dimension])


class Sampler:
    """
    Draws polynomials, forms, vector fields, maps and tensors of desk-scale size

    Args:
        rng: the source of randomness
        space: coordinates to draw over
        max_degree: largest total degree of a drawn polynomial
        max_terms: largest number of terms in a drawn polynomial or form
        max_generators: largest number of generators in a drawn monomial
        max_slot: largest differential slot of the general-purpose forms drawn by the identity suites
    """

    def __init__(self, rng: random.Random, space: Space, max_degree: int = 3, max_terms: int = 3,
                 max_generators: int = 3, max_slot: int = 4):
        self.rng = rng
        self.space = space
        self.max_degree = max_degree
        self.max_terms = max_terms
        self.max_generators = max_generators
        self.max_slot = max_slot

    def rational(self) -> Fraction:
        numerator = self.rng.choice([-3, -2, -1, 1, 2, 3])
        return Fraction(numerator, self.rng.choice([1, 1, 1, 2, 3]))

    def exponents(self, max_degree: int, space: Optional[Space] = None) -> Tuple[int, ...]:
        space = space or self.space
        remaining = self.rng.randint(0, max_degree)
        exps = [0] * space.dimension
        for _ in range(remaining):
            exps[self.rng.randrange(space.dimension)] += 1
        return tuple(exps)

    def poly(self, max_degree: Optional[int] = None, space: Optional[Space] = None,
             nonzero: bool = False) -> Poly:
        space = space or self.space
        max_degree = self.max_degree if max_degree is None else max_degree
        while True:
            terms = {}
            for _ in range(self.rng.randint(1, self.max_terms)):
                terms[self.exponents(max_degree, space)] = self.rational()
            f = Poly.from_terms(space, terms)
            if f or not nonzero:
                return f

    def vector_field(self, max_degree: int = 2) -> VectorField:
        return VectorField(self.space, tuple(self.poly(max_degree) for _ in self.space.coords))

    def smooth_map(self, source: Space, target: Space, max_degree: int = 2) -> SmoothMap:
        return SmoothMap(source, target, tuple(self.poly(max_degree, source) for _ in target.coords))

    def index_set(self, max_slot: int, max_size: Optional[int] = None) -> IndexSet:
        slots = list(range(1, max_slot + 1))
        size = self.rng.randint(1, min(max_size or max_slot, max_slot))
        return IndexSet(tuple(self.rng.sample(slots, size)))

    def generator(self, max_slot: int) -> Generator:
        return Generator.of(self.space, self.index_set(max_slot), self.rng.choice(self.space.coords))

    def monomial(self, max_slot: int, max_degree: int = 2) -> Form:
        """
        A single term f·g₁∧⋯∧g_r; homogeneous unless it normalizes to zero
        """

        count = self.rng.randint(0, self.max_generators)
        return normalize([(self.poly(max_degree, nonzero=True), [self.generator(max_slot) for _ in range(count)])],
                         self.space)

    def form(self, max_slot: int, max_degree: int = 2) -> Form:
        raw = []
        for _ in range(self.rng.randint(1, self.max_terms)):
            count = self.rng.randint(0, self.max_generators)
            raw.append((self.poly(max_degree), [self.generator(max_slot) for _ in range(count)]))
        return normalize(raw, self.space)

    def permutation(self, p: int) -> SlotPermutation:
        images = list(range(1, p + 1))
        self.rng.shuffle(images)
        return SlotPermutation.from_images(images)

    def tensor(self, order: int, max_degree: int = 2) -> CovariantTensor:
        components = {}
        for _ in range(self.rng.randint(1, self.max_terms)):
            index = tuple(self.rng.choice(self.space.coords) for _ in range(order))
            components[index] = self.poly(max_degree)
        return CovariantTensor.from_components(self.space, order, components)

    def set_partition(self, p: int) -> List[Tuple[int, ...]]:
        """
        A random partition of slots 1..p into blocks, at least one of size ≥ 2 when p ≥ 2
        """

        while True:
            labels = [self.rng.randrange(p) for _ in range(p)]
            blocks = {}
            for slot, label in enumerate(labels, start=1):
                blocks.setdefault(label, []).append(slot)
            partition = [tuple(block) for block in blocks.values()]
            if p < 2 or any(len(block) >= 2 for block in partition):
                return partition

    def obstruction(self, p: int, max_degree: int = 2) -> Form:
        """
        A nonzero form of multidegree (1, …, 1) in slots 1..p with no singleton-only monomial
        """

        if p < 2:
            raise ValueError("Obstructions need at least two slots")
        while True:
            raw = []
            for _ in range(self.rng.randint(1, self.max_terms)):
                generators = [Generator.of(self.space, block, self.rng.choice(self.space.coords))
                              for block in self.set_partition(p)]
                raw.append((self.poly(max_degree, nonzero=True), generators))
            result = normalize(raw, self.space)
            if result:
                return result

    def choice(self, values: Sequence):
        return self.rng.choice(values)

    def randint(self, low: int, high: int) -> int:
        return self.rng.randint(low, high)
