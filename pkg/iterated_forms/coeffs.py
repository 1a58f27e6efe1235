"""
The coefficient algebra A: polynomials with exact rational coefficients over a named
coordinate list, vector fields (derivations of A) and polynomial maps between
coordinate spaces.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from iterated_forms.errors import DegreeError, SpaceMismatchError, UnknownCoordinateError


Scalar = Union[int, Fraction]
Exponents = Tuple[int, ...]

# Operator keywords of the expression language; d1, d2, ... are reserved as well
RESERVED_NAMES = frozenset({"d", "lie", "insert", "kappa", "iC", "H2", "pullback"})
COORDINATE_NAME = re.compile(r"[^\W\d]\w*")
DIFFERENTIAL_NAME = re.compile(r"d[0-9]+")


def check_coordinate_name(name: str):
    """
    Rejects names the expression language could not read back as a coordinate

    Raises:
        ValueError: if the name is not an identifier, is an operator keyword or looks like ``d1``
    """

    if not isinstance(name, str) or not COORDINATE_NAME.fullmatch(name):
        raise ValueError("Coordinate names must be identifiers, got {!r}".format(name))
    if name in RESERVED_NAMES or DIFFERENTIAL_NAME.fullmatch(name):
        raise ValueError("{!r} is reserved by the expression language".format(name))


def to_fraction(value) -> Fraction:
    """
    Converts a ground-domain element (or int / Fraction) into a Fraction

    Args:
        value: a QQ element, int or Fraction

    Returns:
        The same number as a Fraction
    """

    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def to_ground(value: Scalar):
    """
    Converts an int or Fraction into an element of QQ
    """

    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


@dataclass(frozen=True)
class Space:
    """
    An ordered list of coordinate names, the local chart of the manifold M

    Args:
        coords: distinct coordinate names, e.g. ``("x", "y")``
    """

    coords: Tuple[str, ...]
    _ring: PolyRing = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        coords = tuple(self.coords)
        if len(coords) == 0:
            raise ValueError("A space needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise ValueError("Coordinate names must be unique: {}".format(", ".join(coords)))
        for name in coords:
            check_coordinate_name(name)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "_ring", PolyRing(coords, QQ, grlex))

    @classmethod
    def parse(cls, text: str) -> "Space":
        """
        Builds a space from a comma-separated list such as ``"x,y,z"``
        """

        return cls(tuple(name.strip() for name in text.split(",") if name.strip()))

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @property
    def ring(self) -> PolyRing:
        """
        The sympy polynomial ring QQ[coords] with graded-lexicographic order
        """

        return self._ring

    def index(self, name: str) -> int:
        """
        Position of a coordinate

        Raises:
            UnknownCoordinateError: if the coordinate is not declared
        """

        try:
            return self.coords.index(name)
        except ValueError:
            raise UnknownCoordinateError(name, self) from None

    def check(self, other: "Space"):
        if other != self:
            raise SpaceMismatchError(self, other)

    def __str__(self):
        return "[{}]".format(", ".join(self.coords))


class Poly:
    """
    An element of A: a polynomial in the coordinates of a space with rational coefficients

    Instances are immutable; every operation returns a new, normalized polynomial.

    Args:
        space: the space the polynomial lives over
        element: the underlying sympy ring element (must belong to ``space.ring``)
    """

    __slots__ = ("space", "element")

    def __init__(self, space: Space, element: PolyElement):
        assert element.ring == space.ring, "Ring element does not belong to {}".format(space)
        self.space = space
        self.element = element

    @classmethod
    def zero(cls, space: Space) -> "Poly":
        return cls(space, space.ring.zero)

    @classmethod
    def one(cls, space: Space) -> "Poly":
        return cls(space, space.ring.one)

    @classmethod
    def constant(cls, space: Space, value: Scalar) -> "Poly":
        return cls(space, space.ring.ground_new(to_ground(value)))

    @classmethod
    def coordinate(cls, space: Space, name: str) -> "Poly":
        return cls(space, space.ring.gens[space.index(name)])

    @classmethod
    def from_terms(cls, space: Space, terms: Mapping[Exponents, Scalar]) -> "Poly":
        """
        Builds a polynomial from an exponent-vector to coefficient map

        Args:
            space: the space of the polynomial
            terms: map from exponent vectors (one entry per coordinate) to rationals

        Returns:
            The normalized polynomial (zero coefficients dropped)
        """

        element = space.ring.zero
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != space.dimension or any(e < 0 for e in exps):
                raise ValueError("Bad exponent vector {} for space {}".format(exps, space))
            element += space.ring({exps: to_ground(coeff)})
        return cls(space, element)

    def terms(self) -> List[Tuple[Exponents, Fraction]]:
        """
        The nonzero terms in descending graded-lexicographic order
        """

        return [(monom, to_fraction(coeff)) for monom, coeff in self.element.terms(grlex)]

    @property
    def is_zero(self) -> bool:
        return not self.element

    @property
    def is_constant(self) -> bool:
        return self.element.is_ground

    def constant_value(self) -> Fraction:
        """
        Value of a constant polynomial

        Raises:
            DegreeError: if the polynomial is not constant
        """

        if not self.is_constant:
            raise DegreeError("Not a constant polynomial: {}".format(self))
        return to_fraction(self.element.coeff(1)) if self.element else Fraction(0)

    def degree(self) -> int:
        return max((sum(monom) for monom in self.element.keys()), default=0)

    def _coerce(self, other) -> PolyElement:
        if isinstance(other, Poly):
            self.space.check(other.space)
            return other.element
        if isinstance(other, (int, Fraction)):
            return self.space.ring.ground_new(to_ground(other))
        return NotImplemented

    def __add__(self, other):
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self.space, self.element + element)

    __radd__ = __add__

    def __sub__(self, other):
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self.space, self.element - element)

    def __rsub__(self, other):
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self.space, element - self.element)

    def __mul__(self, other):
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self.space, self.element * element)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(self.space, -self.element)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Polynomials only take non-negative integer powers")
        return Poly(self.space, self.element ** exponent)

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant:
                raise DegreeError("Division by a nonconstant polynomial: {}".format(other))
            other = other.constant_value()
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("Division of a polynomial by zero")
        return self * (1 / other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.element == self.space.ring.ground_new(to_ground(other))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.space == other.space and self.element == other.element

    def __hash__(self):
        return hash((self.space, frozenset(self.element.items())))

    def __bool__(self):
        return bool(self.element)

    def partial(self, name: str) -> "Poly":
        """
        Formal partial derivative with respect to a coordinate

        Args:
            name: the coordinate to differentiate by

        Returns:
            The exact derivative
        """

        return Poly(self.space, self.element.diff(self.space.ring.gens[self.space.index(name)]))

    def substitute(self, phi: "SmoothMap") -> "Poly":
        """
        Composition with a polynomial map, i.e. the pullback f ↦ f∘φ

        Args:
            phi: a map whose target is the space of this polynomial

        Returns:
            The composed polynomial over ``phi.source``
        """

        self.space.check(phi.target)
        source_ring = phi.source.ring
        result = source_ring.zero
        for monom, coeff in self.element.items():
            term = source_ring.ground_new(coeff)
            for component, exponent in zip(phi.components, monom):
                if exponent:
                    term *= component.element ** exponent
            result += term
        return Poly(phi.source, result)

    def to_json(self) -> Dict[str, Any]:
        """
        Serializes the polynomial with exact decimal-string rationals

        Returns:
            ``{"terms": [{"exps": [...], "num": "...", "den": "..."}]}``
        """

        return {
            "terms": [
                {"exps": list(monom), "num": str(coeff.numerator), "den": str(coeff.denominator)}
                for monom, coeff in self.terms()
            ]
        }

    @classmethod
    def from_json(cls, space: Space, data: Mapping[str, Any]) -> "Poly":
        """
        Deserializes a polynomial written by :py:meth:`to_json`
        """

        return cls.from_terms(space, {
            tuple(term["exps"]): Fraction(int(term["num"]), int(term["den"]))
            for term in data.get("terms", [])
        })

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for monom, coeff in self.terms():
            factors = []
            for name, exponent in zip(self.space.coords, monom):
                if exponent == 1:
                    factors.append(name)
                elif exponent > 1:
                    factors.append("{}^{}".format(name, exponent))
            magnitude = abs(coeff)
            if magnitude != 1 or not factors:
                factors.insert(0, str(magnitude))
            parts.append(("-" if coeff < 0 else "+", "*".join(factors)))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += " {} {}".format(sign, body)
        return text

    def __repr__(self):
        return "Poly({}, {})".format(self.space, self)


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """
    Exact ring arithmetic on two polynomials over the same space

    Args:
        a: left operand
        b: right operand
        op: one of ``add``, ``sub``, ``mul``

    Returns:
        The normalized result
    """

    a.space.check(b.space)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("Unsupported polynomial operation: {}".format(op))


def partial(f: Poly, name: str) -> Poly:
    return f.partial(name)


def substitute(f: Poly, phi: "SmoothMap") -> Poly:
    return f.substitute(phi)


@dataclass(frozen=True)
class VectorField:
    """
    A derivation X = Σ X^μ ∂/∂x^μ of A with polynomial components

    Args:
        space: the space of the field
        components: one polynomial per coordinate
    """

    space: Space
    components: Tuple[Poly, ...]

    def __post_init__(self):
        components = tuple(self.components)
        if len(components) != self.space.dimension:
            raise ValueError("Vector field needs {} components, got {}".format(
                self.space.dimension, len(components)))
        for component in components:
            self.space.check(component.space)
        object.__setattr__(self, "components", components)

    @classmethod
    def coordinate_field(cls, space: Space, name: str) -> "VectorField":
        """
        The coordinate field ∂/∂x^μ
        """

        index = space.index(name)
        return cls(space, tuple(
            Poly.one(space) if i == index else Poly.zero(space) for i in range(space.dimension)))

    @classmethod
    def zero(cls, space: Space) -> "VectorField":
        return cls(space, tuple(Poly.zero(space) for _ in space.coords))

    def component(self, name: str) -> Poly:
        return self.components[self.space.index(name)]

    def __call__(self, f: Poly) -> Poly:
        return vf_apply(self, f)

    def __add__(self, other: "VectorField") -> "VectorField":
        self.space.check(other.space)
        return VectorField(self.space, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        self.space.check(other.space)
        return VectorField(self.space, tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, f: Union[Poly, Scalar]) -> "VectorField":
        """
        The field f·X
        """

        return VectorField(self.space, tuple(c * f for c in self.components))

    def to_json(self) -> Dict[str, Any]:
        return {
            "space": list(self.space.coords),
            "components": [c.to_json() for c in self.components],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "VectorField":
        space = Space(tuple(data["space"]))
        return cls(space, tuple(Poly.from_json(space, c) for c in data["components"]))

    def __str__(self):
        return "({})".format(", ".join(str(c) for c in self.components))


def vf_apply(X: VectorField, f: Poly) -> Poly:
    """
    Applies a vector field to a polynomial: Σ_μ X^μ ∂f/∂x^μ
    """

    X.space.check(f.space)
    result = Poly.zero(f.space)
    for name, component in zip(X.space.coords, X.components):
        if component:
            result = result + component * f.partial(name)
    return result


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """
    The Lie bracket [X, Y] with components X(Y^μ) − Y(X^μ)
    """

    X.space.check(Y.space)
    return VectorField(X.space, tuple(
        vf_apply(X, y) - vf_apply(Y, x) for x, y in zip(X.components, Y.components)))


@dataclass(frozen=True)
class SmoothMap:
    """
    A polynomial map φ: source → target, x ↦ y^α = φ^α(x)

    Args:
        source: the space of the x coordinates
        target: the space of the y coordinates
        components: one polynomial over ``source`` per target coordinate
    """

    source: Space
    target: Space
    components: Tuple[Poly, ...]

    def __post_init__(self):
        components = tuple(self.components)
        if len(components) != self.target.dimension:
            raise ValueError("Map needs {} components, got {}".format(self.target.dimension, len(components)))
        for component in components:
            self.source.check(component.space)
        object.__setattr__(self, "components", components)

    @classmethod
    def identity(cls, space: Space) -> "SmoothMap":
        return cls(space, space, tuple(Poly.coordinate(space, name) for name in space.coords))

    @classmethod
    def from_mapping(cls, source: Space, target: Space, images: Mapping[str, Poly]) -> "SmoothMap":
        """
        Builds a map from a target-coordinate to component dictionary
        """

        return cls(source, target, tuple(images[name] for name in target.coords))

    def component(self, name: str) -> Poly:
        return self.components[self.target.index(name)]

    @staticmethod
    def compose(psi: "SmoothMap", phi: "SmoothMap") -> "SmoothMap":
        """
        The composition ψ∘φ (apply φ first)
        """

        psi.source.check(phi.target)
        return SmoothMap(phi.source, psi.target, tuple(c.substitute(phi) for c in psi.components))

    def to_json(self) -> Dict[str, Any]:
        return {
            "source": list(self.source.coords),
            "target": list(self.target.coords),
            "components": [c.to_json() for c in self.components],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SmoothMap":
        source = Space(tuple(data["source"]))
        target = Space(tuple(data["target"]))
        return cls(source, target, tuple(Poly.from_json(source, c) for c in data["components"]))


def polys(space: Space, values: Iterable[Union[Poly, Scalar]]) -> Tuple[Poly, ...]:
    """
    Lifts a mix of polynomials and scalars into polynomials over ``space``
    """

    return tuple(v if isinstance(v, Poly) else Poly.constant(space, v) for v in values)


def coordinates(space: Space) -> Sequence[Poly]:
    return [Poly.coordinate(space, name) for name in space.coords]
