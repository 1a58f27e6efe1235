"""
Covariant tensors and their image in Λ_∞.

ι_p sends df₁⊗⋯⊗df_p to d₁f₁∧⋯∧d_pf_p. A form of multidegree (1, …, 1) in slots 1..p is
a tensor exactly when every generator in it has a single slot; the other monomials are
the obstruction to A-multilinearity of the insertion map.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

from iterated_forms.calculus import Insertion, LieDerivative, kappa
from iterated_forms.coeffs import Poly, Scalar, SmoothMap, Space, VectorField
from iterated_forms.errors import DegreeError, SlotError
from iterated_forms.forms import Form, Generator, normalize
from iterated_forms.grading import MultiDegree, SlotPermutation, SlotShift

Index = Tuple[str, ...]


@dataclass(frozen=True)
class CovariantTensor:
    """
    A covariant p-tensor Σ T_{μ₁…μ_p} dx^{μ₁}⊗⋯⊗dx^{μ_p}

    Args:
        space: the coordinate space
        order: p ≥ 0
        components: ``(index, value)`` pairs; missing indices are zero
    """

    space: Space
    order: int
    components: Tuple[Tuple[Index, Poly], ...] = ()

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("Tensor order must be non-negative")
        merged: Dict[Index, Poly] = {}
        for index, value in self.components:
            index = tuple(index)
            if len(index) != self.order:
                raise ValueError("Index {} does not have {} entries".format(index, self.order))
            for name in index:
                self.space.index(name)
            if not isinstance(value, Poly):
                value = Poly.constant(self.space, value)
            self.space.check(value.space)
            merged[index] = merged[index] + value if index in merged else value
        ordered = sorted(
            ((index, value) for index, value in merged.items() if not value.is_zero),
            key=lambda item: tuple(self.space.index(name) for name in item[0]),
        )
        object.__setattr__(self, "components", tuple(ordered))

    @classmethod
    def from_components(cls, space: Space, order: int,
                        components: Mapping[Index, Union[Poly, Scalar]]) -> "CovariantTensor":
        return cls(space, order, tuple(components.items()))

    @classmethod
    def zero(cls, space: Space, order: int) -> "CovariantTensor":
        return cls(space, order)

    @classmethod
    def scalar(cls, f: Poly) -> "CovariantTensor":
        return cls(f.space, 0, (((), f),))

    @classmethod
    def differential(cls, f: Poly) -> "CovariantTensor":
        """
        The 1-tensor df = Σ ∂f/∂x^μ dx^μ
        """

        return cls(f.space, 1, tuple(((name,), f.partial(name)) for name in f.space.coords))

    def as_dict(self) -> Dict[Index, Poly]:
        return dict(self.components)

    def component(self, index: Sequence[str]) -> Poly:
        return self.as_dict().get(tuple(index), Poly.zero(self.space))

    def indices(self) -> Iterator[Index]:
        return itertools.product(self.space.coords, repeat=self.order)

    @property
    def is_zero(self) -> bool:
        return not self.components

    def _check(self, other: "CovariantTensor"):
        self.space.check(other.space)
        if self.order != other.order:
            raise DegreeError("Tensor orders differ: {} and {}".format(self.order, other.order))

    def __add__(self, other: "CovariantTensor") -> "CovariantTensor":
        self._check(other)
        return CovariantTensor(self.space, self.order, self.components + other.components)

    def __neg__(self) -> "CovariantTensor":
        return self.scale(-1)

    def __sub__(self, other: "CovariantTensor") -> "CovariantTensor":
        return self + (-other)

    def scale(self, factor: Union[Poly, Scalar]) -> "CovariantTensor":
        return CovariantTensor(self.space, self.order, tuple((i, v * factor) for i, v in self.components))

    def to_json(self) -> Dict[str, Any]:
        """
        Serializes the tensor as ``{"space": [...], "order": p, "components": [{"idx": [...], "value": <poly>}]}``
        """

        return {
            "space": list(self.space.coords),
            "order": self.order,
            "components": [{"idx": list(index), "value": value.to_json()} for index, value in self.components],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "CovariantTensor":
        space = Space(tuple(data["space"]))
        return cls(space, int(data["order"]), tuple(
            (tuple(entry["idx"]), Poly.from_json(space, entry["value"])) for entry in data.get("components", [])
        ))

    def __str__(self):
        if self.is_zero:
            return "0"
        if self.order == 0:
            return str(self.components[0][1])
        return " + ".join("({})*{}".format(value, "⊗".join("d" + name for name in index))
                          for index, value in self.components)


def tensor(*differentials: Poly) -> CovariantTensor:
    """
    df₁⊗⋯⊗df_p
    """

    result = None
    for f in differentials:
        factor = CovariantTensor.differential(f)
        result = factor if result is None else tensor_product(result, factor)
    if result is None:
        raise ValueError("tensor() needs at least one function")
    return result


def embed(T: CovariantTensor) -> Form:
    """
    ι_p(T) = Σ T_{μ₁…μ_p} d₁x^{μ₁}∧⋯∧d_px^{μ_p}
    """

    raw = []
    for index, value in T.components:
        raw.append((value, [Generator.of(T.space, (slot,), name) for slot, name in enumerate(index, start=1)]))
    return normalize(raw, T.space)


def _require_ones(omega: Form, p: int, operation: str):
    expected = MultiDegree.ones(p)
    for degree in omega.degrees():
        if degree != expected:
            raise DegreeError("{} needs multidegree {} in slots 1..{}, got {}".format(operation, expected, p, degree))


@dataclass(frozen=True)
class TensorTest:
    """
    Outcome of :py:func:`is_tensor`: ω = ι_p(tensor) + obstruction
    """

    tensor: CovariantTensor
    obstruction: Form

    @property
    def is_tensor(self) -> bool:
        return self.obstruction.is_zero

    def __bool__(self):
        return self.is_tensor


def is_tensor(omega: Form, p: int) -> TensorTest:
    """
    Decides whether a form of multidegree (1, …, 1) lies in the image of ι_p

    Args:
        omega: the form
        p: number of slots

    Returns:
        The decomposition into the ι_p part and the obstruction (monomials containing a
        generator with two or more slots)

    Raises:
        DegreeError: if ω does not have multidegree (1, …, 1) in slots 1..p
    """

    _require_ones(omega, p, "is_tensor")
    components: Dict[Index, Poly] = {}
    obstruction = {}
    for factors, coeff in omega.items():
        if all(len(generator.K) == 1 for generator, _ in factors):
            index = tuple(generator.coord for generator, _ in sorted(factors, key=lambda f: f[0].K.slots))
            components[index] = coeff
        else:
            obstruction[factors] = coeff
    return TensorTest(
        CovariantTensor.from_components(omega.space, p, components),
        Form(omega.space, obstruction),
    )


def extract(omega: Form, p: int) -> CovariantTensor:
    """
    ι_p⁻¹(ω)

    Raises:
        DegreeError: if ω is not in the image of ι_p
    """

    result = is_tensor(omega, p)
    if not result.is_tensor:
        raise DegreeError("Not a covariant tensor; obstruction: {}".format(result.obstruction))
    return result.tensor


def evaluate_insertion(omega: Form, fields: Sequence[VectorField]) -> Poly:
    """
    (i_{X_p}^{(p)}∘⋯∘i_{X₁}^{(1)})(ω), the evaluation of ω on p vector fields

    Raises:
        DegreeError: if ω does not have multidegree (1, …, 1) in slots 1..p
    """

    _require_ones(omega, len(fields), "evaluate_insertion")
    for slot, X in enumerate(fields, start=1):
        X.space.check(omega.space)
        omega = Insertion(X, slot)(omega)
    return omega.as_poly()


def evaluate_components(T: CovariantTensor, fields: Sequence[VectorField]) -> Poly:
    """
    Σ T_{μ₁…μ_p} X₁^{μ₁}⋯X_p^{μ_p}
    """

    if len(fields) != T.order:
        raise DegreeError("A {}-tensor takes {} vector fields, got {}".format(T.order, T.order, len(fields)))
    result = Poly.zero(T.space)
    for X in fields:
        T.space.check(X.space)
    for index, value in T.components:
        term = value
        for X, name in zip(fields, index):
            term = term * X.component(name)
        result = result + term
    return result


def contract(T: CovariantTensor, X: VectorField, slot: int) -> CovariantTensor:
    """
    T(·, …, X, …, ·) with X in position ``slot``, a tensor of order p − 1
    """

    T.space.check(X.space)
    if not 1 <= slot <= T.order:
        raise SlotError("Slot {} outside 1..{}".format(slot, T.order))
    components: Dict[Index, Poly] = {}
    for index, value in T.components:
        rest = index[:slot - 1] + index[slot:]
        term = value * X.component(index[slot - 1])
        components[rest] = components[rest] + term if rest in components else term
    return CovariantTensor.from_components(T.space, T.order - 1, components)


def insert_slot(omega: Form, X: VectorField, slot: int, order: Optional[int] = None) -> Form:
    """
    Inserts X into slot l of a tensor-degree form and renumbers slots l+1..p down by one

    Args:
        omega: a form of multidegree (1, …, 1) in slots 1..p
        X: the vector field
        slot: l, 1 ≤ l ≤ p
        order: p; inferred from ω when omitted

    Returns:
        A form of multidegree (1, …, 1) in slots 1..p−1
    """

    p = omega.max_slot if order is None else order
    _require_ones(omega, p, "insert_slot")
    if not 1 <= slot <= max(p, 1):
        raise SlotError("Slot {} outside 1..{}".format(slot, p))
    X.space.check(omega.space)
    return kappa(SlotShift(-1, start=slot + 1), Insertion(X, slot)(omega))


def permute(sigma: SlotPermutation, T: CovariantTensor) -> CovariantTensor:
    """
    The argument permutation τ_p(σ)T, with (τ_p(σ)T)_{ν₁…ν_p} = T_{ν_{σ(1)}…ν_{σ(p)}}

    This is the convention for which ι_p∘τ_p(σ) = κ_σ∘ι_p.
    """

    if sigma.support_max > T.order:
        raise SlotError("Permutation {} moves slots beyond {}".format(sigma, T.order))
    components = {}
    for index, value in T.components:
        image = [""] * T.order
        for k in range(1, T.order + 1):
            image[sigma(k) - 1] = index[k - 1]
        components[tuple(image)] = value
    return CovariantTensor.from_components(T.space, T.order, components)


def tensor_product(first: CovariantTensor, second: CovariantTensor) -> CovariantTensor:
    """
    T₁⊗T₂ of order p + q
    """

    first.space.check(second.space)
    return CovariantTensor(first.space, first.order + second.order, tuple(
        (i + j, a * b) for i, a in first.components for j, b in second.components
    ))


def shift_slots(omega: Form, offset: int) -> Form:
    """
    Moves every slot k to k + offset
    """

    return kappa(SlotShift(offset), omega)


def lie_tensor(X: VectorField, T: CovariantTensor) -> CovariantTensor:
    """
    The Lie derivative L_X T, componentwise
    (L_X T)_{…ν…} = X(T_{…ν…}) + Σ_i Σ_μ T_{…μ…} ∂X^μ/∂x^ν
    """

    X.space.check(T.space)
    components: Dict[Index, Poly] = {}

    def add(index: Index, value: Poly):
        components[index] = components[index] + value if index in components else value

    for index, value in T.components:
        add(index, X(value))
        for position, name in enumerate(index):
            source = X.component(name)
            for nu in T.space.coords:
                add(index[:position] + (nu,) + index[position + 1:], value * source.partial(nu))
    return CovariantTensor.from_components(T.space, T.order, components)


def lie_embedded(X: VectorField, T: CovariantTensor) -> Form:
    """
    (X∘ι_p)(T), the Λ_∞ side of the Lie compatibility
    """

    return LieDerivative(X)(embed(T))


def alternate(T: CovariantTensor) -> CovariantTensor:
    """
    The antisymmetric part (1/p!) Σ sign(σ) τ_p(σ)T
    """

    result = CovariantTensor.zero(T.space, T.order)
    for sigma in SlotPermutation.all_of_order(T.order):
        result = result + permute(sigma, T).scale(sigma.signature())
    return result.scale(Fraction(1, math.factorial(T.order)))


def symmetrize(T: CovariantTensor) -> CovariantTensor:
    """
    The symmetric part (1/p!) Σ τ_p(σ)T
    """

    result = CovariantTensor.zero(T.space, T.order)
    for sigma in SlotPermutation.all_of_order(T.order):
        result = result + permute(sigma, T)
    return result.scale(Fraction(1, math.factorial(T.order)))


def alternation(omega: Form, p: int) -> Form:
    """
    (1/p!) Σ sign(σ) κ_σ ω over σ ∈ S_p
    """

    result = Form.zero(omega.space)
    for sigma in SlotPermutation.all_of_order(p):
        result = result + kappa(sigma, omega).scale(sigma.signature())
    return result / math.factorial(p)


def symmetrization(omega: Form, p: int) -> Form:
    """
    (1/p!) Σ κ_σ ω over σ ∈ S_p
    """

    result = Form.zero(omega.space)
    for sigma in SlotPermutation.all_of_order(p):
        result = result + kappa(sigma, omega)
    return result / math.factorial(p)


def exterior_product(f: Poly, g: Poly) -> CovariantTensor:
    """
    df⊗dg − dg⊗df, embedded as d₁f∧d₂g − d₁g∧d₂f
    """

    return tensor(f, g) - tensor(g, f)


def symmetric_product(f: Poly, g: Poly) -> CovariantTensor:
    """
    df⊗dg + dg⊗df, embedded as d₁f∧d₂g + d₁g∧d₂f
    """

    return tensor(f, g) + tensor(g, f)


def pullback_tensor(phi: SmoothMap, T: CovariantTensor) -> CovariantTensor:
    """
    φ*T with (φ*T)_{μ₁…μ_p} = Σ_α (T_α∘φ) ∂φ^{α₁}/∂x^{μ₁}⋯∂φ^{α_p}/∂x^{μ_p}
    """

    phi.target.check(T.space)
    jacobian = {
        (alpha, mu): phi.component(alpha).partial(mu)
        for alpha in phi.target.coords for mu in phi.source.coords
    }
    components: Dict[Index, Poly] = {}
    for alpha_index, value in T.components:
        pulled = value.substitute(phi)
        for mu_index in itertools.product(phi.source.coords, repeat=T.order):
            term = pulled
            for alpha, mu in zip(alpha_index, mu_index):
                term = term * jacobian[(alpha, mu)]
            if term:
                components[mu_index] = components[mu_index] + term if mu_index in components else term
    return CovariantTensor.from_components(phi.source, T.order, components)


@dataclass(frozen=True)
class LinearityWitness:
    """
    A concrete failure of A-linearity: Ω̃(…, f·X_slot, …) − f·Ω̃(…, X_slot, …) = defect ≠ 0
    """

    slot: int
    f: Poly
    fields: Tuple[VectorField, ...]
    defect: Poly

    def __str__(self):
        return "slot {}, f = {}, fields = {}: defect {}".format(
            self.slot, self.f, ", ".join(str(X) for X in self.fields), self.defect)


def linearity_defect(omega: Form, fields: Sequence[VectorField], slot: int, f: Poly) -> Poly:
    """
    Ω̃(…, f·X_slot, …) − f·Ω̃(…, X_slot, …) for the insertion map Ω̃ of ω
    """

    scaled = list(fields)
    scaled[slot - 1] = scaled[slot - 1].scale(f)
    return evaluate_insertion(omega, scaled) - f * evaluate_insertion(omega, fields)


def find_linearity_violation(omega: Form, p: int) -> Optional[LinearityWitness]:
    """
    Searches coordinate vector fields and f = (x^ν)^m, 1 ≤ m ≤ max(p, 2), for a failure of
    A-linearity of the insertion map of ω

    Returns:
        The first witness found, or None (always None for tensors)
    """

    _require_ones(omega, p, "find_linearity_violation")
    space = omega.space
    basis = [VectorField.coordinate_field(space, name) for name in space.coords]
    functions = [Poly.coordinate(space, name) ** m for m in range(1, max(p, 2) + 1) for name in space.coords]
    base_values: Dict[Tuple[int, ...], Poly] = {}
    for choice in itertools.product(range(len(basis)), repeat=p):
        fields = tuple(basis[i] for i in choice)
        if choice not in base_values:
            base_values[choice] = evaluate_insertion(omega, fields)
        for slot in range(1, p + 1):
            for f in functions:
                scaled = list(fields)
                scaled[slot - 1] = scaled[slot - 1].scale(f)
                defect = evaluate_insertion(omega, scaled) - f * base_values[choice]
                if defect:
                    return LinearityWitness(slot, f, fields, defect)
    return None

