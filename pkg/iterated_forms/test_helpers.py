from fractions import Fraction

from hypothesis import strategies as st

from iterated_forms.coeffs import Poly, SmoothMap, Space, VectorField
from iterated_forms.forms import Form, Generator, normalize
from iterated_forms.grading import IndexSet, SlotPermutation
from iterated_forms.tensors import CovariantTensor

XY = Space(("x", "y"))
UV = Space(("u", "v"))

rationals = st.builds(
    Fraction,
    st.integers(min_value=-3, max_value=3).filter(lambda n: n != 0),
    st.sampled_from([1, 1, 2, 3]),
)


def exponent_vectors(space: Space, max_degree: int):
    return st.lists(st.integers(min_value=0, max_value=max_degree), min_size=space.dimension,
                    max_size=space.dimension).filter(lambda exps: sum(exps) <= max_degree).map(tuple)


def polys(space: Space = XY, max_degree: int = 2, max_terms: int = 3):
    return st.dictionaries(exponent_vectors(space, max_degree), rationals, max_size=max_terms).map(
        lambda terms: Poly.from_terms(space, terms))


def vector_fields(space: Space = XY, max_degree: int = 2):
    return st.tuples(*[polys(space, max_degree) for _ in space.coords]).map(
        lambda components: VectorField(space, components))


def smooth_maps(source: Space = XY, target: Space = UV, max_degree: int = 2):
    return st.tuples(*[polys(source, max_degree) for _ in target.coords]).map(
        lambda components: SmoothMap(source, target, components))


def index_sets(max_slot: int, max_size: int = 3):
    return st.sets(st.integers(min_value=1, max_value=max_slot), min_size=1, max_size=max_size).map(
        lambda slots: IndexSet(tuple(slots)))


def generators(space: Space = XY, max_slot: int = 2):
    return st.builds(lambda K, coord: Generator.of(space, K, coord), index_sets(max_slot),
                     st.sampled_from(space.coords))


def monomials(space: Space = XY, max_slot: int = 2, max_generators: int = 3, max_degree: int = 1):
    return st.builds(lambda f, gens: normalize([(f, gens)], space), polys(space, max_degree),
                     st.lists(generators(space, max_slot), max_size=max_generators))


def forms(space: Space = XY, max_slot: int = 2, max_terms: int = 3, max_generators: int = 3, max_degree: int = 1):
    raw = st.tuples(polys(space, max_degree), st.lists(generators(space, max_slot), max_size=max_generators))
    return st.lists(raw, max_size=max_terms).map(lambda terms: normalize(terms, space))


def tensors(space: Space = XY, order: int = 2, max_degree: int = 1, max_terms: int = 3):
    indices = st.tuples(*[st.sampled_from(space.coords) for _ in range(order)])
    return st.dictionaries(indices, polys(space, max_degree), max_size=max_terms).map(
        lambda components: CovariantTensor.from_components(space, order, components))


def permutations(p: int):
    return st.permutations(list(range(1, p + 1))).map(SlotPermutation.from_images)


def generator(space: Space, K, coord: str) -> Form:
    return Form.generator(space, K, coord)


def coordinate(space: Space, name: str) -> Poly:
    return Poly.coordinate(space, name)
