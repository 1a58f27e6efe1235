"""
Operators on iterated forms: the differentials d_k, Lie derivatives, insertions,
slot relabelings κ_σ, pullbacks and the homotopy H₂ between (Λ₂, d₂) and (Λ, d).

Derivations are first-class values (:py:class:`GradedDerivation`), determined by their
action on coefficients and on generators and extended to all forms by the signed
Leibniz rule. Graded commutators of operators are operators again.
"""

import abc
import itertools
from typing import Dict, Iterable, Sequence, Tuple, Union

from sympy.utilities.iterables import multiset_partitions

from iterated_forms.coeffs import Poly, Scalar, SmoothMap, Space, VectorField
from iterated_forms.errors import DegreeError, SlotError
from iterated_forms.forms import (Form, Generator, expand_factors, normalize, require_max_slot,
                                  slot_degree_components)
from iterated_forms.grading import ZERO, IndexSet, MultiDegree, SlotMap, SlotShift, sign_of


class Operator(abc.ABC):
    """
    A linear operator on forms of a fixed multidegree

    Args:
        degree: the multidegree the operator adds to homogeneous forms; it fixes the sign
            of graded commutators
    """

    def __init__(self, degree: MultiDegree):
        self.degree = degree

    @abc.abstractmethod
    def apply(self, omega: Form) -> Form:
        """
        Applies the operator to a form
        """

        raise NotImplementedError()

    def __call__(self, omega: Form) -> Form:
        return self.apply(omega)

    def __add__(self, other: "Operator") -> "Operator":
        return LinearCombination(((1, self), (1, other)))

    def __sub__(self, other: "Operator") -> "Operator":
        return LinearCombination(((1, self), (-1, other)))

    def scale(self, factor: Scalar) -> "Operator":
        return LinearCombination(((factor, self),))


class LinearCombination(Operator):
    """
    Σ c_i·A_i for operators A_i of one common degree
    """

    def __init__(self, terms: Sequence[Tuple[Scalar, Operator]]):
        degrees = {op.degree for _, op in terms}
        if len(degrees) != 1:
            raise DegreeError("Cannot combine operators of degrees {}".format(", ".join(map(str, degrees))))
        super().__init__(degrees.pop())
        self.terms = tuple(terms)

    def apply(self, omega: Form) -> Form:
        result = Form.zero(omega.space)
        for factor, op in self.terms:
            result = result + op(omega).scale(factor)
        return result


class Composition(Operator):
    """
    The composite A₁∘A₂∘⋯ (rightmost applied first)
    """

    def __init__(self, *operators: Operator):
        degree = ZERO
        for op in operators:
            degree = degree + op.degree
        super().__init__(degree)
        self.operators = operators

    def apply(self, omega: Form) -> Form:
        for op in reversed(self.operators):
            omega = op(omega)
        return omega


def compose(*operators: Operator) -> Operator:
    return Composition(*operators)


class GradedDerivation(Operator):
    """
    A graded derivation ∂ of Λ_∞: ∂(ab) = ∂(a)b + (−1)^⟨deg ∂, deg a⟩ a∂(b)

    Subclasses define the action on coefficients and on generators; :py:meth:`apply`
    extends it to every form.
    """

    @abc.abstractmethod
    def on_coeff(self, f: Poly) -> Form:
        """
        Image of a coefficient f ∈ A
        """

        raise NotImplementedError()

    @abc.abstractmethod
    def on_generator(self, generator: Generator, space: Space) -> Form:
        """
        Image of a generator d_K x^μ
        """

        raise NotImplementedError()

    def apply(self, omega: Form) -> Form:
        return apply_derivation(self, omega)


def apply_derivation(derivation: GradedDerivation, omega: Form) -> Form:
    """
    Extends a graded derivation from coefficients and generators to a form

    Inhomogeneous forms are handled termwise; each Leibniz sign uses the exact degree of
    the prefix in front of the differentiated factor.

    Args:
        derivation: the derivation
        omega: the form to differentiate

    Returns:
        ∂(ω) in normal form
    """

    space = omega.space
    images: Dict[Generator, Form] = {}
    raw = []
    for factors, coeff in omega.items():
        generators = expand_factors(factors)
        for image_factors, image_coeff in derivation.on_coeff(coeff).items():
            raw.append((image_coeff, expand_factors(image_factors) + generators))
        prefix_degree = ZERO
        for position, generator in enumerate(generators):
            if generator not in images:
                images[generator] = derivation.on_generator(generator, space)
            sign = sign_of(derivation.degree, prefix_degree)
            for image_factors, image_coeff in images[generator].items():
                raw.append((
                    coeff * image_coeff * sign,
                    generators[:position] + expand_factors(image_factors) + generators[position + 1:]
                ))
            prefix_degree = prefix_degree + generator.degree
    return normalize(raw, space)


class ExteriorDifferential(GradedDerivation):
    """
    The k-th iterated exterior differential d_k, of degree e_k

    Args:
        slot: k ≥ 1
    """

    def __init__(self, slot: int):
        if slot < 1:
            raise SlotError("Differential slots start at 1, got {}".format(slot))
        super().__init__(MultiDegree.unit(slot))
        self.slot = slot

    def on_coeff(self, f: Poly) -> Form:
        K = IndexSet.of(self.slot)
        return Form(f.space, {
            ((Generator(K, index, name), 1),): f.partial(name)
            for index, name in enumerate(f.space.coords)
        })

    def on_generator(self, generator: Generator, space: Space) -> Form:
        if self.slot in generator.K:
            return Form.zero(space)
        return Form.generator(space, generator.K.union(self.slot), generator.coord)


class LieDerivative(GradedDerivation):
    """
    The degree-0 extension of a vector field X to Λ_∞, commuting with every d_k
    """

    def __init__(self, X: VectorField):
        super().__init__(ZERO)
        self.X = X

    def on_coeff(self, f: Poly) -> Form:
        return Form.coefficient(self.X(f))

    def on_generator(self, generator: Generator, space: Space) -> Form:
        return d_iterated(generator.K, self.X.components[generator.index])


class Insertion(GradedDerivation):
    """
    Insertion i_X^{(l)} of a vector field into slot l, of degree −e_l

    On generators, d_K x^μ ↦ d_{K∖{l}}(X^μ) when l ∈ K and 0 otherwise.
    """

    def __init__(self, X: VectorField, slot: int):
        if slot < 1:
            raise SlotError("Insertion slots start at 1, got {}".format(slot))
        super().__init__(-MultiDegree.unit(slot))
        self.X = X
        self.slot = slot

    def on_coeff(self, f: Poly) -> Form:
        return Form.zero(f.space)

    def on_generator(self, generator: Generator, space: Space) -> Form:
        if self.slot not in generator.K:
            return Form.zero(space)
        return d_iterated(generator.K.without(self.slot), self.X.components[generator.index])


class CInsertion(GradedDerivation):
    """
    i_C^{(2)} on Λ₂, where C = i_{d⁰} counts the slot-1 degree on Λ

    Kills coefficients, d₁x^μ and d₂x^μ, and sends d₁₂x^μ to d₁x^μ. Its degree is −e₂: the
    map has degree 0 in the grading of Λ and lowers the slot-2 degree by one.
    """

    def __init__(self):
        super().__init__(-MultiDegree.unit(2))

    def on_coeff(self, f: Poly) -> Form:
        return Form.zero(f.space)

    def on_generator(self, generator: Generator, space: Space) -> Form:
        if generator.K == IndexSet.of(1, 2):
            return Form.generator(space, (1,), generator.coord)
        return Form.zero(space)

    def apply(self, omega: Form) -> Form:
        require_max_slot(omega, 2, "i_C")
        return super().apply(omega)


class DerivationCommutator(GradedDerivation):
    """
    The graded commutator of two derivations, itself a derivation of the summed degree
    """

    def __init__(self, first: GradedDerivation, second: GradedDerivation):
        super().__init__(first.degree + second.degree)
        self.first = first
        self.second = second
        self.sign = sign_of(first.degree, second.degree)

    def _bracket(self, omega: Form) -> Form:
        return self.first(self.second(omega)) - self.second(self.first(omega)).scale(self.sign)

    def on_coeff(self, f: Poly) -> Form:
        return self._bracket(Form.coefficient(f))

    def on_generator(self, generator: Generator, space: Space) -> Form:
        return self._bracket(Form(space, {((generator, 1),): Poly.one(space)}))


class Commutator(Operator):
    """
    The graded commutator of two arbitrary operators, evaluated pointwise
    """

    def __init__(self, first: Operator, second: Operator):
        super().__init__(first.degree + second.degree)
        self.first = first
        self.second = second
        self.sign = sign_of(first.degree, second.degree)

    def apply(self, omega: Form) -> Form:
        return self.first(self.second(omega)) - self.second(self.first(omega)).scale(self.sign)


def graded_commutator(first: Operator, second: Operator) -> Operator:
    """
    [A, B] = A∘B − (−1)^⟨deg A, deg B⟩ B∘A

    Returns:
        A :py:class:`GradedDerivation` when both operands are derivations, otherwise a
        pointwise operator
    """

    if isinstance(first, GradedDerivation) and isinstance(second, GradedDerivation):
        return DerivationCommutator(first, second)
    return Commutator(first, second)


class HomotopyOperator(Operator):
    """
    H₂ on Λ₂: (1/s)·i_C^{(2)} on the slot-1 degree s ≠ 0 components, 0 on s = 0
    """

    def __init__(self):
        super().__init__(-MultiDegree.unit(2))
        self.insertion = CInsertion()

    def apply(self, omega: Form) -> Form:
        require_max_slot(omega, 2, "H2")
        result = Form.zero(omega.space)
        for s, component in slot_degree_components(omega, 1).items():
            if s != 0:
                result = result + self.insertion(component) / s
        return result


def d(k: int, omega: Form) -> Form:
    """
    The k-th iterated exterior differential d_k(ω)
    """

    return ExteriorDifferential(k)(omega)


def _index_set(K: Union[IndexSet, Iterable[int]]) -> IndexSet:
    return K if isinstance(K, IndexSet) else IndexSet(tuple(K))


def d_iterated(K: Union[IndexSet, Iterable[int]], f: Poly) -> Form:
    """
    d_K f = d_{k₁}⋯d_{k_r} f; the empty set gives f itself

    Args:
        K: the index set
        f: a coefficient

    Returns:
        The iterated differential as a form
    """

    result = Form.coefficient(f)
    for k in reversed(_index_set(K).slots):
        result = d(k, result)
    return result


def d_partition(K: Union[IndexSet, Iterable[int]], f: Poly) -> Form:
    """
    d_K f through the partition formula

    Sums ∂^l f/∂x^{μ₁}⋯∂x^{μ_l} · d_{J₁}x^{μ₁}∧⋯∧d_{J_l}x^{μ_l} over all set partitions
    {J₁, …, J_l} of K (blocks ordered by least element) and all coordinate tuples. The
    blocks are disjoint, so the factors commute and the block order carries no sign.

    Raises:
        SlotError: if K is empty
    """

    K = _index_set(K)
    if not K:
        raise SlotError("The partition formula needs a nonempty index set")
    space = f.space
    raw = []
    for partition in multiset_partitions(list(K.slots)):
        blocks = sorted((IndexSet(tuple(block)) for block in partition), key=lambda block: block.slots[0])
        for names in itertools.product(space.coords, repeat=len(blocks)):
            derivative = f
            for name in names:
                derivative = derivative.partial(name)
            if derivative.is_zero:
                continue
            raw.append((derivative, [Generator.of(space, block, name) for block, name in zip(blocks, names)]))
    return normalize(raw, space)


def pullback(phi: SmoothMap, omega: Form) -> Form:
    """
    φ*(ω): coefficients are composed with φ and d_K y^α ↦ d_K(φ^α)

    Args:
        phi: a polynomial map whose target is the space of ω
        omega: a form over ``phi.target``

    Returns:
        A form over ``phi.source``
    """

    phi.target.check(omega.space)
    images: Dict[Generator, Form] = {}
    result = Form.zero(phi.source)
    for factors, coeff in omega.items():
        term = Form.coefficient(coeff.substitute(phi))
        for generator in expand_factors(factors):
            if generator not in images:
                images[generator] = d_iterated(generator.K, phi.components[generator.index])
            term = term * images[generator]
        result = result + term
    return result


def kappa(sigma: SlotMap, omega: Form) -> Form:
    """
    Relabels differential slots: d_K x^μ ↦ d_{σ(K)} x^μ, coefficients fixed

    For a permutation σ this is the automorphism κ_σ; injections (such as slot shifts) are
    accepted as long as they are injective on the slots that occur in ω.

    Raises:
        SlotError: if σ identifies two slots occurring in ω
    """

    occurring = sorted({k for factors, _ in omega.items() for generator, _ in factors for k in generator.K})
    images = [sigma(k) for k in occurring]
    if len(set(images)) != len(images):
        raise SlotError("Slot map is not injective on slots {}".format(occurring))
    raw = []
    for factors, coeff in omega.items():
        raw.append((coeff, [
            Generator(generator.K.relabel(sigma), generator.index, generator.coord)
            for generator in expand_factors(factors)
        ]))
    return normalize(raw, omega.space)


def lie(X: VectorField, omega: Form) -> Form:
    """
    The Lie derivative L_X ω
    """

    X.space.check(omega.space)
    return LieDerivative(X)(omega)


def insert(X: VectorField, slot: int, omega: Form) -> Form:
    """
    The insertion i_X^{(l)} ω
    """

    X.space.check(omega.space)
    return Insertion(X, slot)(omega)


def lie_via_cartan(X: VectorField, slot: int, omega: Form) -> Form:
    """
    [i_X^{(l)}, d_l] ω, the Lie derivative built from insertion and differential
    """

    X.space.check(omega.space)
    return graded_commutator(Insertion(X, slot), ExteriorDifferential(slot))(omega)


def insertion_C(omega: Form) -> Form:
    """
    i_C^{(2)} ω for ω ∈ Λ₂

    Raises:
        DegreeError: if ω involves a slot above 2
    """

    return CInsertion()(omega)


def homotopy_H2(omega: Form) -> Form:
    """
    H₂ ω for ω ∈ Λ₂

    Raises:
        DegreeError: if ω involves a slot above 2
    """

    return HomotopyOperator()(omega)


def project_lambda01(omega: Form) -> Form:
    """
    π: keeps the monomials of slot-1 degree 0 (built from coefficients and d₂x^μ)
    """

    require_max_slot(omega, 2, "π")
    return slot_degree_components(omega, 1).get(0, Form.zero(omega.space))


def _require_lambda01(omega: Form, operation: str):
    require_max_slot(omega, 2, operation)
    if any(s != 0 for s in slot_degree_components(omega, 1)):
        raise DegreeError("{} needs a form of slot-1 degree 0, got {}".format(operation, omega))


def include_lambda01(omega: Form) -> Form:
    """
    ι: the inclusion of Λ₂^{(0,*)} into Λ₂
    """

    _require_lambda01(omega, "ι")
    return omega


def lambda01_to_lambda1(omega: Form) -> Form:
    """
    The isomorphism (Λ₂^{(0,*)}, d₂) ≅ (Λ, d): relabels slot 2 as slot 1
    """

    _require_lambda01(omega, "Λ₂^(0,*) → Λ")
    return kappa(SlotShift(-1, start=2), omega)


def homotopy_identity_defect(omega: Form) -> Form:
    """
    [H₂, d₂]ω − (ω − ι(π(ω))), which vanishes on all of Λ₂
    """

    bracket = graded_commutator(HomotopyOperator(), ExteriorDifferential(2))
    return bracket(omega) - (omega - include_lambda01(project_lambda01(omega)))


def primitive(omega: Form) -> Form:
    """
    A d₂-primitive of a d₂-closed ω ∈ Λ₂ with π(ω) = 0, namely H₂ ω

    Raises:
        DegreeError: if ω is not d₂-closed or has a slot-1 degree 0 part
    """

    if not d(2, omega).is_zero:
        raise DegreeError("Form is not d2-closed: {}".format(omega))
    if not project_lambda01(omega).is_zero:
        raise DegreeError("Form has a nonzero slot-1 degree 0 part: {}".format(omega))
    return homotopy_H2(omega)

