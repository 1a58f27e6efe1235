"""
Evaluation of parsed expressions, and the environment of named vector fields and maps.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

from iterated_forms.calculus import d, homotopy_H2, insert, insertion_C, kappa, lie, pullback
from iterated_forms.cli.parser import (Add, Apply, Coord, Div, Expr, FieldRef, Mul, NamedField, Neg,
                                       Number, Pow, Sub, parse)
from iterated_forms.coeffs import Poly, SmoothMap, Space, VectorField
from iterated_forms.errors import DegreeError, ParseError, UnknownNameError
from iterated_forms.forms import Form

logger = logging.getLogger(__name__)


@dataclass
class Environment:
    """
    The coordinate space plus the named vector fields and maps an expression may refer to
    """

    space: Space
    fields: Dict[str, VectorField] = field(default_factory=dict)
    maps: Dict[str, SmoothMap] = field(default_factory=dict)

    def parse(self, source: str) -> Expr:
        return parse(source, self.space, self.maps)

    def evaluate(self, source: str) -> Form:
        return eval_expr(self.parse(source), self)

    def polynomial(self, source: str, space: Optional[Space] = None) -> Poly:
        space = space or self.space
        return eval_expr(parse(source, space, self.maps), self, space).as_poly()

    def define_field(self, definition: str) -> VectorField:
        """
        Adds a vector field from ``"X: y, 0"`` (one component per coordinate)
        """

        name, _, body = definition.partition(":")
        name = name.strip()
        if not body or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ParseError("vector field definitions look like 'X: y, 0', got {!r}".format(definition))
        components = tuple(self.polynomial(part) for part in _split_top_level(body))
        if len(components) != self.space.dimension:
            raise DegreeError("Vector field {} needs {} components, got {}".format(
                name, self.space.dimension, len(components)))
        X = VectorField(self.space, components)
        self.fields[name] = X
        logger.debug("Defined vector field %s = %s", name, X)
        return X

    def define_map(self, definition: str) -> SmoothMap:
        """
        Adds a map from ``"phi: u, v = x + y, x*y"``: target coordinates before ``=``,
        components over the current space after it
        """

        name, _, body = definition.partition(":")
        name = name.strip()
        targets, equals, images = body.partition("=")
        if not equals or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ParseError("map definitions look like 'phi: u, v = x + y, x*y', got {!r}".format(definition))
        target = Space.parse(targets)
        components = tuple(self.polynomial(part) for part in _split_top_level(images))
        if len(components) != target.dimension:
            raise DegreeError("Map {} needs {} components, got {}".format(name, target.dimension, len(components)))
        phi = SmoothMap(self.space, target, components)
        self.maps[name] = phi
        logger.debug("Defined map %s: %s -> %s", name, self.space, target)
        return phi

    def load_fields(self, data: Mapping[str, Mapping]):
        """
        Adds vector fields from a JSON object ``{"X": <vector field JSON>, ...}``
        """

        for name, value in data.items():
            X = VectorField.from_json(value)
            self.space.check(X.space)
            self.fields[name] = X

    def load_maps(self, data: Mapping[str, Mapping]):
        """
        Adds maps from a JSON object ``{"phi": <map JSON>, ...}``
        """

        for name, value in data.items():
            phi = SmoothMap.from_json(value)
            self.space.check(phi.source)
            self.maps[name] = phi

    def load_fields_file(self, path: str):
        with open(path, "rt") as f:
            self.load_fields(json.load(f))

    def load_maps_file(self, path: str):
        with open(path, "rt") as f:
            self.load_maps(json.load(f))


def _split_top_level(text: str):
    parts, depth, current = [], 0, ""
    for char in text:
        if char in "([{":
            depth += 1
        elif char in ")]}":
            depth -= 1
        if char == "," and depth == 0:
            parts.append(current)
            current = ""
        else:
            current += char
    parts.append(current)
    return [part.strip() for part in parts]


def _vector_field(ref: FieldRef, env: Environment, space: Space) -> VectorField:
    if isinstance(ref, NamedField):
        if ref.name not in env.fields:
            raise UnknownNameError("vector field", ref.name)
        X = env.fields[ref.name]
        space.check(X.space)
        return X
    components = tuple(eval_expr(component, env, space).as_poly() for component in ref.components)
    if len(components) != space.dimension:
        raise DegreeError("Inline vector field needs {} components, got {}".format(space.dimension, len(components)))
    return VectorField(space, components)


def eval_expr(e: Expr, env: Environment, space: Optional[Space] = None) -> Form:
    """
    Evaluates an expression tree to a normalized form

    Args:
        e: the expression
        env: named vector fields and maps
        space: the coordinate space in scope (defaults to the environment's)

    Returns:
        The value of the expression

    Raises:
        IteratedFormsError: whatever the dispatched operation raises
    """

    space = space or env.space
    if isinstance(e, Number):
        return Form.coefficient(Poly.constant(space, e.value))
    if isinstance(e, Coord):
        return Form.coefficient(Poly.coordinate(space, e.name))
    if isinstance(e, Add):
        return eval_expr(e.left, env, space) + eval_expr(e.right, env, space)
    if isinstance(e, Sub):
        return eval_expr(e.left, env, space) - eval_expr(e.right, env, space)
    if isinstance(e, Mul):
        return eval_expr(e.left, env, space) * eval_expr(e.right, env, space)
    if isinstance(e, Div):
        divisor = eval_expr(e.right, env, space)
        if not divisor.is_coefficient or not divisor.as_poly().is_constant or not divisor:
            raise DegreeError("Can only divide by a nonzero constant, got {}".format(divisor))
        return eval_expr(e.left, env, space) / divisor.as_poly().constant_value()
    if isinstance(e, Neg):
        return -eval_expr(e.operand, env, space)
    if isinstance(e, Pow):
        return eval_expr(e.base, env, space) ** e.exponent
    if isinstance(e, Apply):
        return _apply(e, env, space)
    raise TypeError("Not an expression: {!r}".format(e))


def _apply(e: Apply, env: Environment, space: Space) -> Form:
    if e.operator == "pullback":
        if e.argument not in env.maps:
            raise UnknownNameError("map", e.argument)
        phi = env.maps[e.argument]
        return pullback(phi, eval_expr(e.operand, env, phi.target))
    omega = eval_expr(e.operand, env, space)
    if e.operator == "d":
        return d(e.argument, omega)
    if e.operator == "dK":
        for k in reversed(e.argument.slots):
            omega = d(k, omega)
        return omega
    if e.operator == "lie":
        return lie(_vector_field(e.argument, env, space), omega)
    if e.operator == "insert":
        ref, slot = e.argument
        return insert(_vector_field(ref, env, space), slot, omega)
    if e.operator == "kappa":
        return kappa(e.argument, omega)
    if e.operator == "iC":
        return insertion_C(omega)
    if e.operator == "H2":
        return homotopy_H2(omega)
    raise ValueError("Unknown operator {}".format(e.operator))
