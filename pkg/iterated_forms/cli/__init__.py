from iterated_forms.cli.evaluator import Environment, eval_expr
from iterated_forms.cli.parser import parse
from iterated_forms.cli.render import render
