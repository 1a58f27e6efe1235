"""
The algebra Λ_∞ of iterated differential forms over a coordinate space.

A :py:class:`Form` is a finite sum of monomials ``coeff · g₁^{e₁} ∧ ⋯ ∧ g_r^{e_r}`` where the
g_i are generators d_K x^μ sorted in the canonical order. Forms are always kept in normal
form, so equality of forms is structural equality.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from iterated_forms.coeffs import Poly, Scalar, Space
from iterated_forms.errors import DegreeError, SlotError
from iterated_forms.grading import ZERO, IndexSet, MultiDegree, degree_of_indexset, koszul_sign

Factors = Tuple[Tuple["Generator", int], ...]


@dataclass(frozen=True, order=True)
class Generator:
    """
    The generator d_K x^μ of Λ_∞

    Generators order by K (as a sorted integer sequence), then by coordinate position.

    Args:
        K: nonempty index set of applied differentials
        index: position of the coordinate in its space
        coord: name of the coordinate
    """

    K: IndexSet
    index: int
    coord: str = field(compare=False)
    degree: MultiDegree = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.K:
            raise SlotError("Generators need a nonempty index set; d_∅ x is a coefficient")
        object.__setattr__(self, "degree", degree_of_indexset(self.K))

    @classmethod
    def of(cls, space: Space, K: Union[IndexSet, Iterable[int]], coord: str) -> "Generator":
        if not isinstance(K, IndexSet):
            K = IndexSet(tuple(K))
        return cls(K, space.index(coord), coord)

    @property
    def parity(self) -> int:
        return self.K.parity

    @property
    def is_odd(self) -> bool:
        return self.K.parity == 1

    def __str__(self):
        if len(self.K) == 1:
            return "d{}({})".format(self.K.slots[0], self.coord)
        return "d{}({})".format(self.K, self.coord)


def factors_degree(factors: Factors) -> MultiDegree:
    degree = ZERO
    for generator, exponent in factors:
        degree = degree + generator.degree * exponent
    return degree


def expand_factors(factors: Factors) -> List[Generator]:
    return [generator for generator, exponent in factors for _ in range(exponent)]


def canonical_order(generators: Sequence[Generator]) -> Optional[Tuple[int, Factors]]:
    """
    Sorts a product of generators into canonical order

    Args:
        generators: the factors of a product, in the order they are multiplied

    Returns:
        ``(sign, factors)`` where sign is the Koszul sign of the reordering, or None when the
        product vanishes because an odd generator occurs twice
    """

    order = sorted(range(len(generators)), key=lambda i: generators[i])
    sign = koszul_sign([g.degree for g in generators], order)
    factors: List[List] = []
    for i in order:
        generator = generators[i]
        if factors and factors[-1][0] == generator:
            if generator.is_odd:
                return None
            factors[-1][1] += 1
        else:
            factors.append([generator, 1])
    return sign, tuple((g, e) for g, e in factors)


@dataclass(frozen=True)
class Monomial:
    """
    A nonzero coefficient times a canonically ordered product of generators
    """

    coeff: Poly
    factors: Factors = ()

    @property
    def degree(self) -> MultiDegree:
        return factors_degree(self.factors)

    @property
    def generators(self) -> List[Generator]:
        return expand_factors(self.factors)

    def __str__(self):
        return str(Form(self.coeff.space, {self.factors: self.coeff}))


class Form:
    """
    An element of Λ_∞ in normal form

    Construct forms with :py:meth:`coefficient`, :py:meth:`generator`, :py:func:`normalize`
    and the arithmetic operators; ``*`` is the graded wedge product.

    Args:
        space: the coordinate space
        terms: map from canonical factor tuples to nonzero coefficients (assumed normalized)
    """

    __slots__ = ("space", "_terms")

    def __init__(self, space: Space, terms: Optional[Mapping[Factors, Poly]] = None):
        self.space = space
        self._terms: Dict[Factors, Poly] = {k: v for k, v in (terms or {}).items() if not v.is_zero}

    @classmethod
    def zero(cls, space: Space) -> "Form":
        return cls(space)

    @classmethod
    def one(cls, space: Space) -> "Form":
        return cls(space, {(): Poly.one(space)})

    @classmethod
    def coefficient(cls, f: Union[Poly, Scalar], space: Optional[Space] = None) -> "Form":
        """
        Embeds a polynomial (an element of A = Λ₀) as a form

        Raises:
            ValueError: if ``f`` is a scalar and no space is given
        """

        if not isinstance(f, Poly):
            if space is None:
                raise ValueError("A space is required to embed the scalar {}".format(f))
            f = Poly.constant(space, f)
        return cls(f.space, {(): f})

    @classmethod
    def generator(cls, space: Space, K: Union[IndexSet, Iterable[int]], coord: str) -> "Form":
        """
        The form d_K x^μ; an empty K gives the coordinate function x^μ itself
        """

        if not isinstance(K, IndexSet):
            K = IndexSet(tuple(K))
        if not K:
            return cls.coefficient(Poly.coordinate(space, coord))
        return cls(space, {((Generator.of(space, K, coord), 1),): Poly.one(space)})

    @classmethod
    def from_monomial(cls, monomial: Monomial) -> "Form":
        return cls(monomial.coeff.space, {monomial.factors: monomial.coeff})

    def items(self) -> List[Tuple[Factors, Poly]]:
        """
        The terms in canonical order (shorter, smaller factor lists first)
        """

        return sorted(self._terms.items(), key=lambda item: item[0])

    def monomials(self) -> List[Monomial]:
        return [Monomial(coeff, factors) for factors, coeff in self.items()]

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_coefficient(self) -> bool:
        return all(not factors for factors in self._terms)

    def as_poly(self) -> Poly:
        """
        The form as an element of A

        Raises:
            DegreeError: if some monomial contains a generator
        """

        if not self.is_coefficient:
            raise DegreeError("Not an element of A: {}".format(self))
        return self._terms.get((), Poly.zero(self.space))

    def coefficient_of(self, factors: Factors) -> Poly:
        return self._terms.get(factors, Poly.zero(self.space))

    def degrees(self) -> List[MultiDegree]:
        return sorted({factors_degree(factors) for factors in self._terms}, key=lambda d: d.entries)

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> MultiDegree:
        """
        Degree of a homogeneous form (0 for the zero form)

        Raises:
            DegreeError: if the form mixes degrees
        """

        degrees = self.degrees()
        if len(degrees) > 1:
            raise DegreeError("Form is not homogeneous: {}".format(self))
        return degrees[0] if degrees else ZERO

    def _coerce(self, other) -> Optional["Form"]:
        if isinstance(other, Form):
            self.space.check(other.space)
            return other
        if isinstance(other, Poly):
            self.space.check(other.space)
            return Form.coefficient(other)
        if isinstance(other, (int, Fraction)):
            return Form.coefficient(Poly.constant(self.space, other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for factors, coeff in other._terms.items():
            terms[factors] = terms[factors] + coeff if factors in terms else coeff
        return Form(self.space, terms)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.space, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, factor: Union[Poly, Scalar]) -> "Form":
        """
        Multiplies every coefficient by an element of A (coefficients are central)
        """

        return Form(self.space, {k: v * factor for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        if isinstance(other, Form):
            return wedge(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other: Scalar) -> "Form":
        return self.scale(1 / Fraction(other))

    def __pow__(self, exponent: int) -> "Form":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Forms only take non-negative integer powers")
        result = Form.one(self.space)
        for _ in range(exponent):
            result = wedge(result, self)
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = self._coerce(other)
        if not isinstance(other, Form):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    def __hash__(self):
        return hash((self.space, frozenset(self._terms.items())))

    @property
    def max_slot(self) -> int:
        return max_slot(self)

    def to_json(self) -> Dict[str, Any]:
        """
        Serializes the form

        Returns:
            ``{"space": [...], "terms": [{"coeff": <poly>, "factors": [{"K": [...], "coord": ..., "exp": ...}]}]}``
        """

        return {
            "space": list(self.space.coords),
            "terms": [
                {
                    "coeff": coeff.to_json(),
                    "factors": [
                        {"K": list(generator.K.slots), "coord": generator.coord, "exp": exponent}
                        for generator, exponent in factors
                    ],
                }
                for factors, coeff in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Form":
        """
        Deserializes a form written by :py:meth:`to_json`; the result is re-normalized
        """

        space = Space(tuple(data["space"]))
        raw = []
        for term in data.get("terms", []):
            generators = []
            for factor in term.get("factors", []):
                exponent = int(factor.get("exp", 1))
                if exponent < 1:
                    raise ValueError("Factor exponents must be positive")
                generators.extend([Generator.of(space, factor["K"], factor["coord"])] * exponent)
            raw.append((Poly.from_json(space, term["coeff"]), generators))
        return normalize(raw, space)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = [_term_text(coeff, factors) for factors, coeff in self.items()]
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += " {} {}".format(sign, body)
        return text

    def __repr__(self):
        return "Form({}, {})".format(self.space, self)


def _term_text(coeff: Poly, factors: Factors) -> Tuple[str, str]:
    generators = " ∧ ".join(
        str(generator) if exponent == 1 else "{}^{}".format(generator, exponent)
        for generator, exponent in factors
    )
    if not generators:
        return "+", str(coeff)
    sign = "+"
    if len(coeff.terms()) == 1:
        if coeff.terms()[0][1] < 0:
            sign, coeff = "-", -coeff
        scalar = str(coeff)
    else:
        scalar = "({})".format(coeff)
    if scalar == "1":
        return sign, generators
    return sign, "{}*{}".format(scalar, generators)


def normalize(raw: Iterable[Tuple[Union[Poly, Scalar], Sequence[Generator]]], space: Space) -> Form:
    """
    Brings a raw sum of products into normal form

    Generators are sorted canonically with the Koszul sign applied, products with a repeated
    odd generator are dropped, like terms are merged and zero coefficients removed.

    Args:
        raw: pairs of (coefficient, generators in multiplication order)
        space: the space every coefficient and generator belongs to

    Returns:
        The normalized form
    """

    terms: Dict[Factors, Poly] = {}
    for coeff, generators in raw:
        if not isinstance(coeff, Poly):
            coeff = Poly.constant(space, coeff)
        space.check(coeff.space)
        if coeff.is_zero:
            continue
        for generator in generators:
            if generator.index >= space.dimension or space.coords[generator.index] != generator.coord:
                raise ValueError("Generator {} does not belong to {}".format(generator, space))
        ordered = canonical_order(generators)
        if ordered is None:
            continue
        sign, factors = ordered
        coeff = coeff if sign == 1 else -coeff
        terms[factors] = terms[factors] + coeff if factors in terms else coeff
    return Form(space, terms)


def wedge(a: Form, b: Form) -> Form:
    """
    The graded-commutative product a ∧ b
    """

    a.space.check(b.space)
    raw = []
    for factors_a, coeff_a in a._terms.items():
        generators_a = expand_factors(factors_a)
        for factors_b, coeff_b in b._terms.items():
            raw.append((coeff_a * coeff_b, generators_a + expand_factors(factors_b)))
    return normalize(raw, a.space)


def wedge_all(space: Space, forms: Iterable[Form]) -> Form:
    result = Form.one(space)
    for form in forms:
        result = wedge(result, form)
    return result


def multidegree_components(omega: Form) -> Dict[MultiDegree, Form]:
    """
    Splits a form into its homogeneous pieces

    Returns:
        Map from multidegree to the component of that degree; empty for the zero form
    """

    pieces: Dict[MultiDegree, Dict[Factors, Poly]] = {}
    for factors, coeff in omega.items():
        pieces.setdefault(factors_degree(factors), {})[factors] = coeff
    return {degree: Form(omega.space, terms) for degree, terms in pieces.items()}


def homogeneous_part(omega: Form, degree: MultiDegree) -> Form:
    return multidegree_components(omega).get(degree, Form.zero(omega.space))


def slot_degree_components(omega: Form, slot: int) -> Dict[int, Form]:
    """
    Splits a form by its degree in one slot only
    """

    pieces: Dict[int, Dict[Factors, Poly]] = {}
    for factors, coeff in omega.items():
        pieces.setdefault(factors_degree(factors)[slot], {})[factors] = coeff
    return {s: Form(omega.space, terms) for s, terms in pieces.items()}


def max_slot(omega: Form) -> int:
    """
    The smallest k with ω ∈ Λ_k: the largest differential index occurring, 0 for coefficients
    """

    return max((generator.K.max_slot for factors in omega._terms for generator, _ in factors), default=0)


def require_max_slot(omega: Form, ceiling: int, operation: str):
    if max_slot(omega) > ceiling:
        raise DegreeError("{} needs a form in Λ_{}, got slot {} in {}".format(
            operation, ceiling, max_slot(omega), omega))
