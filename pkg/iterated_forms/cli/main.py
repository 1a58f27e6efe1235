"""
The ``iforms`` command line tool.

Exit codes: 0 on success, 1 when an identity suite fails (or ``tensor extract`` is given a
form that is not a tensor), 2 on usage, parse and evaluation errors.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from iterated_forms.checks import DEFAULT_CASES, SUITES, identities_of, run_checks
from iterated_forms.cli.evaluator import Environment
from iterated_forms.cli.render import FORMATS, render, render_poly, render_tensor
from iterated_forms.coeffs import Space, VectorField
from iterated_forms.errors import IteratedFormsError
from iterated_forms.forms import Form
from iterated_forms.tensors import (CovariantTensor, embed, evaluate_components, evaluate_insertion,
                                    find_linearity_violation, is_tensor)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _add_environment_options(parser: argparse.ArgumentParser, coords_required: bool = True):
    parser.add_argument("--coords", required=coords_required, help="comma-separated coordinates, e.g. x,y")
    parser.add_argument("--vf", action="append", default=[], metavar="DEF",
                        help="named vector field, e.g. 'X: y, 0' (repeatable)")
    parser.add_argument("--map", action="append", default=[], metavar="DEF",
                        help="named map, e.g. 'phi: u, v = x + y, x*y' (repeatable)")
    parser.add_argument("--vf-file", help="JSON object of named vector fields")
    parser.add_argument("--map-file", help="JSON object of named maps")


def _add_format_option(parser: argparse.ArgumentParser):
    parser.add_argument("--format", choices=FORMATS, default="text", help="output format")


def build_argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iforms", description="Exact calculus of iterated differential forms")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    commands = parser.add_subparsers(dest="command", required=True)

    evaluate = commands.add_parser("eval", help="evaluate an expression")
    evaluate.add_argument("-e", "--expr", required=True, help="the expression")
    _add_environment_options(evaluate)
    _add_format_option(evaluate)

    apply = commands.add_parser("apply", help="apply an operator to an expression")
    apply.add_argument("--op", required=True, help="operator, e.g. 'lie[X]', 'd2', 'kappa[(1 2)]' or 'H2'")
    apply.add_argument("-e", "--expr", required=True, help="the operand")
    _add_environment_options(apply)
    _add_format_option(apply)

    tensor = commands.add_parser("tensor", help="covariant tensor workflows")
    tensor_commands = tensor.add_subparsers(dest="tensor_command", required=True)

    tensor_embed = tensor_commands.add_parser("embed", help="print the iterated form of a tensor")
    tensor_embed.add_argument("--tensor", required=True, help="tensor JSON file")
    _add_format_option(tensor_embed)

    tensor_extract = tensor_commands.add_parser("extract", help="recover a tensor from a form")
    source = tensor_extract.add_mutually_exclusive_group(required=True)
    source.add_argument("-e", "--expr", help="the form as an expression")
    source.add_argument("--form", help="form JSON file")
    tensor_extract.add_argument("--order", type=int, required=True, help="tensor order p")
    _add_environment_options(tensor_extract, coords_required=False)

    tensor_eval = tensor_commands.add_parser("eval", help="evaluate a tensor on vector fields")
    tensor_eval.add_argument("--tensor", required=True, help="tensor JSON file")
    tensor_eval.add_argument("--vfs", help="JSON list of vector fields")
    tensor_eval.add_argument("--vf", action="append", default=[], metavar="COMPONENTS",
                             help="inline vector field components, e.g. 'y, 0' (repeatable, in order)")
    _add_format_option(tensor_eval)

    check = commands.add_parser("check", help="run identity suites")
    check.add_argument("--suite", default="all", help="one of {} or all".format(", ".join(SUITES)))
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--cases", type=int, default=DEFAULT_CASES)
    check.add_argument("--workers", type=int, default=1)
    check.add_argument("--dimension", type=int, default=2)
    check.add_argument("--max-slot", type=int, default=4, help="slot ceiling of the sampled forms")
    check.add_argument("--list", action="store_true", help="list identities instead of running them")
    return parser


def _environment(args: argparse.Namespace) -> Environment:
    env = Environment(Space.parse(args.coords))
    if args.vf_file:
        env.load_fields_file(args.vf_file)
    if args.map_file:
        env.load_maps_file(args.map_file)
    for definition in args.vf:
        env.define_field(definition)
    for definition in args.map:
        env.define_map(definition)
    return env


def _read_json(path: str):
    with open(path, "rt") as f:
        return json.load(f)


def _eval(args: argparse.Namespace) -> int:
    env = _environment(args)
    print(render(env.evaluate(args.expr), args.format))
    return EXIT_OK


def _apply(args: argparse.Namespace) -> int:
    env = _environment(args)
    print(render(env.evaluate("{}({})".format(args.op, args.expr)), args.format))
    return EXIT_OK


def _tensor_embed(args: argparse.Namespace) -> int:
    T = CovariantTensor.from_json(_read_json(args.tensor))
    print(render(embed(T), args.format))
    return EXIT_OK


def _tensor_extract(args: argparse.Namespace) -> int:
    if args.form:
        omega = Form.from_json(_read_json(args.form))
    else:
        if not args.coords:
            raise IteratedFormsError("--coords is required with -e")
        omega = _environment(args).evaluate(args.expr)
    result = is_tensor(omega, args.order)
    if result.is_tensor:
        print(render_tensor(result.tensor))
        return EXIT_OK
    print("not a tensor; obstruction: {}".format(result.obstruction))
    witness = find_linearity_violation(omega, args.order)
    if witness is not None:
        print("A-linearity fails: {}".format(witness))
    return EXIT_FAILURE


def _tensor_eval(args: argparse.Namespace) -> int:
    T = CovariantTensor.from_json(_read_json(args.tensor))
    fields: List[VectorField] = []
    if args.vfs:
        fields.extend(VectorField.from_json(value) for value in _read_json(args.vfs))
    env = Environment(T.space)
    for position, components in enumerate(args.vf, start=1):
        fields.append(env.define_field("X{}: {}".format(position, components)))
    value = evaluate_components(T, fields)
    via_insertion = evaluate_insertion(embed(T), fields)
    if value != via_insertion:
        logger.error("Component contraction %s differs from insertion %s", value, via_insertion)
        return EXIT_FAILURE
    print(render_poly(value, args.format))
    return EXIT_OK


def _check(args: argparse.Namespace) -> int:
    if args.list:
        for identity in identities_of(args.suite):
            print("{:<45} {}".format(identity.key, identity.description))
        return EXIT_OK
    report = run_checks(args.suite, seed=args.seed, cases=args.cases, workers=args.workers,
                        dimension=args.dimension, max_slot=args.max_slot)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAILURE


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_argument_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logger.debug("Dispatching %s", args.command)
    try:
        if args.command == "eval":
            return _eval(args)
        if args.command == "apply":
            return _apply(args)
        if args.command == "tensor":
            handler = {"embed": _tensor_embed, "extract": _tensor_extract, "eval": _tensor_eval}[args.tensor_command]
            return handler(args)
        return _check(args)
    except (IteratedFormsError, ValueError, KeyError, OSError) as e:
        print("iforms: error: {}".format(e), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
