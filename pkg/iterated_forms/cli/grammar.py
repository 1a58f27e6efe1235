"""
LALR grammar of the expression language.

``*`` and ``∧`` both denote the graded wedge product, ``^`` takes a non-negative integer
power and ``/`` divides by a nonzero constant, so ``3/2*x`` is a rational coefficient.
"""

from lark import Lark

GRAMMAR = r"""
    ?start: sum

    ?sum: product
        | sum "+" product           -> add
        | sum "-" product           -> sub

    ?product: unary
        | product "*" unary         -> mul
        | product "∧" unary         -> mul
        | product "/" unary         -> div

    ?unary: power
        | "-" unary                 -> neg

    ?power: atom
        | atom "^" INT              -> pow

    ?atom: INT                      -> number
        | NAME                      -> coord
        | "(" sum ")"
        | operator

    operator: D_SLOT "(" sum ")"                            -> d_slot
        | "d" "{" slots "}" "(" sum ")"                     -> d_set
        | "lie" "[" field "]" "(" sum ")"                   -> lie
        | "insert" "[" field "," INT "]" "(" sum ")"        -> insert
        | "kappa" "[" cycle+ "]" "(" sum ")"                -> kappa
        | "iC" "(" sum ")"                                  -> insertion_c
        | "H2" "(" sum ")"                                  -> homotopy
        | "pullback" "[" NAME "]" "(" sum ")"               -> pullback

    slots: INT ("," INT)*
    cycle: "(" (INT ","?)* ")"

    field: NAME                                             -> named_field
        | "(" sum ("," sum)* ")"                            -> inline_field

    D_SLOT.2: /d[0-9]+/
    NAME: /[^\W\d]\w*/

    %import common.INT
    %import common.WS
    %ignore WS
"""


def build_parser() -> Lark:
    return Lark(GRAMMAR, start="start", parser="lalr", propagate_positions=True, maybe_placeholders=False)
