"""
Parses expression strings into :py:class:`Expr` trees.

Coordinates are checked against the space in scope; inside ``pullback[φ](…)`` the scope is
the target space of φ, so the map must be known when parsing.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Tuple, Union

from lark import Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from iterated_forms.cli.grammar import build_parser
from iterated_forms.coeffs import SmoothMap, Space
from iterated_forms.errors import ParseError, SlotError
from iterated_forms.grading import IndexSet, SlotPermutation

_parser = build_parser()


class Expr:
    """
    Base class of expression nodes
    """


@dataclass(frozen=True)
class Number(Expr):
    value: Fraction


@dataclass(frozen=True)
class Coord(Expr):
    name: str


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    """
    The graded wedge product (coefficients multiply as a special case)
    """

    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class NamedField:
    name: str


@dataclass(frozen=True)
class InlineField:
    components: Tuple[Expr, ...]


FieldRef = Union[NamedField, InlineField]


@dataclass(frozen=True)
class Apply(Expr):
    """
    An operator applied to an operand

    ``operator`` is one of ``d``, ``dK``, ``lie``, ``insert``, ``kappa``, ``iC``, ``H2`` and
    ``pullback``; ``argument`` is the slot, index set, vector field, ``(field, slot)`` pair,
    permutation or map name (None for ``iC`` and ``H2``).
    """

    operator: str
    argument: object
    operand: Expr


def _error(message: str, node: Union[Tree, Token]) -> ParseError:
    if isinstance(node, Token):
        return ParseError(message, node.line or 1, node.column or 1)
    meta = node.meta
    return ParseError(message, getattr(meta, "line", 1), getattr(meta, "column", 1))


def _slot(token: Token) -> int:
    slot = int(token)
    if slot < 1:
        raise _error("slots start at 1, got {}".format(slot), token)
    return slot


class _Builder:
    def __init__(self, maps: Mapping[str, SmoothMap]):
        self.maps = maps

    def build(self, node: Union[Tree, Token], space: Space) -> Expr:
        if isinstance(node, Token):
            raise _error("unexpected {}".format(node), node)
        kind = node.data
        children = node.children
        if kind == "number":
            return Number(Fraction(int(children[0])))
        if kind == "coord":
            name = str(children[0])
            if name not in space.coords:
                raise _error("unknown coordinate {} (space has {})".format(name, ", ".join(space.coords)), children[0])
            return Coord(name)
        if kind in ("add", "sub", "mul", "div"):
            left, right = (self.build(child, space) for child in children)
            return {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[kind](left, right)
        if kind == "neg":
            return Neg(self.build(children[0], space))
        if kind == "pow":
            return Pow(self.build(children[0], space), int(children[1]))
        if kind == "d_slot":
            token = children[0]
            slot = int(token[1:])
            if slot < 1:
                raise _error("slots start at 1, got {}".format(slot), token)
            return Apply("d", slot, self.build(children[1], space))
        if kind == "d_set":
            slots = children[0].children
            K = tuple(_slot(token) for token in slots)
            if len(set(K)) != len(K):
                raise _error("repeated slot in index set", node)
            return Apply("dK", IndexSet(K), self.build(children[1], space))
        if kind == "lie":
            return Apply("lie", self.field(children[0], space), self.build(children[1], space))
        if kind == "insert":
            return Apply("insert", (self.field(children[0], space), _slot(children[1])),
                         self.build(children[2], space))
        if kind == "kappa":
            cycles = children[:-1]
            text = "".join("({})".format(" ".join(str(token) for token in cycle.children)) for cycle in cycles)
            try:
                sigma = SlotPermutation.from_cycles(text)
            except SlotError as e:
                raise _error(str(e), node)
            return Apply("kappa", sigma, self.build(children[-1], space))
        if kind == "insertion_c":
            return Apply("iC", None, self.build(children[0], space))
        if kind == "homotopy":
            return Apply("H2", None, self.build(children[0], space))
        if kind == "pullback":
            name = str(children[0])
            if name not in self.maps:
                raise _error("unknown map {}".format(name), children[0])
            phi = self.maps[name]
            if phi.source != space:
                raise _error("map {} starts at {}, not {}".format(name, phi.source, space), children[0])
            return Apply("pullback", name, self.build(children[1], phi.target))
        raise _error("unsupported construct {}".format(kind), node)

    def field(self, node: Tree, space: Space) -> FieldRef:
        if node.data == "named_field":
            return NamedField(str(node.children[0]))
        return InlineField(tuple(self.build(child, space) for child in node.children))


def parse(source: str, space: Space, maps: Optional[Mapping[str, SmoothMap]] = None) -> Expr:
    """
    Parses an expression

    Args:
        source: the expression text
        space: coordinates in scope at the top level
        maps: maps that ``pullback[…]`` may name, used to switch the coordinate scope

    Returns:
        The expression tree

    Raises:
        ParseError: on a syntax error, an unknown coordinate or map, or a malformed index set
    """

    if not source.strip():
        raise ParseError("empty expression")
    try:
        tree = _parser.parse(source)
    except UnexpectedEOF:
        lines = source.split("\n")
        raise ParseError("unexpected end of input", len(lines), len(lines[-1]) + 1)
    except UnexpectedCharacters as e:
        raise ParseError("unexpected character {!r}".format(source[e.pos_in_stream]), e.line, e.column)
    except UnexpectedToken as e:
        if e.token.type == "$END":
            lines = source.split("\n")
            raise ParseError("unexpected end of input", len(lines), len(lines[-1]) + 1)
        raise ParseError("unexpected {!r}".format(str(e.token)), e.line, e.column)
    except UnexpectedInput as e:
        raise ParseError("syntax error", getattr(e, "line", 1), getattr(e, "column", 1))
    return _Builder(maps or {}).build(tree, space)
