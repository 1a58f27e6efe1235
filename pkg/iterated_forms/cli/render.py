"""
Text, JSON and LaTeX output of forms, polynomials and tensors.
"""

import json
from fractions import Fraction
from typing import Any, Dict

from iterated_forms.coeffs import Poly
from iterated_forms.forms import Factors, Form, Generator
from iterated_forms.tensors import CovariantTensor

FORMATS = ("text", "json", "latex")


def _latex_number(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return r"\frac{{{}}}{{{}}}".format(value.numerator, value.denominator)


def latex_poly(f: Poly) -> str:
    """
    LaTeX of a polynomial, e.g. ``\\frac{3}{2}x^{2}y - 1``
    """

    if f.is_zero:
        return "0"
    text = ""
    for position, (monom, coeff) in enumerate(f.terms()):
        factors = "".join(
            name if exponent == 1 else "{}^{{{}}}".format(name, exponent)
            for name, exponent in zip(f.space.coords, monom) if exponent
        )
        magnitude = abs(coeff)
        body = factors if magnitude == 1 and factors else _latex_number(magnitude) + factors
        if position == 0:
            text = ("-" if coeff < 0 else "") + body
        else:
            text += " {} {}".format("-" if coeff < 0 else "+", body)
    return text


def latex_generator(generator: Generator) -> str:
    slots = generator.K.slots
    separator = "," if max(slots) >= 10 else ""
    return "d_{{{}}}{}".format(separator.join(str(k) for k in slots), generator.coord)


def _latex_term(coeff: Poly, factors: Factors):
    generators = r" \wedge ".join(
        latex_generator(generator) if exponent == 1 else "({})^{{{}}}".format(latex_generator(generator), exponent)
        for generator, exponent in factors
    )
    if not generators:
        return "+", latex_poly(coeff)
    sign = "+"
    if len(coeff.terms()) == 1:
        if coeff.terms()[0][1] < 0:
            sign, coeff = "-", -coeff
        scalar = latex_poly(coeff)
    else:
        scalar = r"\left({}\right)".format(latex_poly(coeff))
    if scalar == "1":
        return sign, generators
    return sign, r"{}\,{}".format(scalar, generators)


def latex_form(omega: Form) -> str:
    """
    LaTeX of a form, e.g. ``2x\\,d_{12}x \\wedge d_{2}y``
    """

    if omega.is_zero:
        return "0"
    parts = [_latex_term(coeff, factors) for factors, coeff in omega.items()]
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += " {} {}".format(sign, body)
    return text


def render(omega: Form, format: str = "text") -> str:
    """
    Renders a form

    Args:
        omega: the form
        format: ``text`` (re-parsable), ``json`` (the forms JSON schema) or ``latex``

    Returns:
        The rendering; deterministic under the canonical orders
    """

    if format == "text":
        return str(omega)
    if format == "json":
        return dump_json(omega.to_json())
    if format == "latex":
        return latex_form(omega)
    raise ValueError("Unknown format {}; expected one of {}".format(format, ", ".join(FORMATS)))


def render_poly(f: Poly, format: str = "text") -> str:
    if format == "json":
        return dump_json(f.to_json())
    if format == "latex":
        return latex_poly(f)
    return str(f)


def render_tensor(T: CovariantTensor, format: str = "json") -> str:
    if format == "json":
        return dump_json(T.to_json())
    return str(T)


def dump_json(data: Dict[str, Any]) -> str:
    return json.dumps(data, ensure_ascii=False)
