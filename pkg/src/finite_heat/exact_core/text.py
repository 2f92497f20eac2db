"""Parsing of the canonical text format (``x^3/3 - s3``, ``-2/(x*y)``)."""

from __future__ import annotations

import ast
from fractions import Fraction

from . import symbols
from .ratfun import RatFun


def parse(text: str) -> RatFun:
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval(tree.body, text)


def _eval(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return RatFun(node.value)
    if isinstance(node, ast.Name):
        if node.id not in symbols.INDEX:
            raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
        return RatFun.symbol(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ValueError(f"non-integer exponent in {text!r}")
            return _eval(node.left, text) ** (sign * exp.value)
        a, b = _eval(node.left, text), _eval(node.right, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    raise ValueError(f"unsupported syntax in {text!r}")


def parse_rational(text: str) -> Fraction:
    value = parse(text)
    if not value.is_constant():
        raise ValueError(f"{text!r} is not a rational number")
    return value.constant_value()
