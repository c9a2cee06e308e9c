"""Exact evaluation of the small arithmetic expressions stored in corpus files.

Expressions use ``+ - * / **``, parentheses, integer literals, the imaginary
unit ``i``, named parameters, and optionally the polynomial variable ``x``.
Integer division is exact (``1/3`` is ``Fraction(1, 3)``).  Parsing goes through
:mod:`ast` with a node whitelist; nothing is ever passed to ``eval``.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache

from ..scalar import I, to_exact

__all__ = ["Poly", "evaluate", "ExpressionError"]


class ExpressionError(ValueError):
    pass


class Poly:
    """Dense univariate polynomial with exact coefficients (lowest degree first)."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = [to_exact(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.c = tuple(c) if c else (Fraction(0),)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.c) - 1 if any(v != 0 for v in self.c) else -1

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.c), len(o.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = o.c + (Fraction(0),) * (n - len(o.c))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            for j, y in enumerate(o.c):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.degree > 0:
                raise ExpressionError("division by a non-constant polynomial")
            other = other.c[0]
        return Poly([x / other for x in self.c])

    def __rtruediv__(self, other):
        if self.degree > 0:
            raise ExpressionError("division by a non-constant polynomial")
        return Poly([to_exact(other) / self.c[0]])

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ExpressionError("polynomial powers must be nonnegative integers")
        out = Poly([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x):
        acc = Fraction(0)
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def derivative(self, j: int = 1) -> "Poly":
        c = list(self.c)
        for _ in range(j):
            c = [k * c[k] for k in range(1, len(c))] or [Fraction(0)]
        return Poly(c)

    def compose_neg(self) -> "Poly":
        """``x -> p(-x)``."""
        return Poly([(-1) ** k * v for k, v in enumerate(self.c)])

    def __repr__(self):
        return f"Poly({[str(v) for v in self.c]})"


_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: _div(a, b),
    ast.Pow: lambda a, b: _pow(a, b),
}


def _div(a, b):
    if isinstance(b, (int, Fraction)) and b == 0:
        raise ExpressionError("division by zero in expression")
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _pow(a, b):
    if isinstance(b, Fraction) and b.denominator == 1:
        b = int(b)
    if not isinstance(b, int):
        raise ExpressionError("exponents must be integers")
    return a ** b


@lru_cache(maxsize=4096)
def _parse(text: str):
    try:
        return ast.parse(text.replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse expression {text!r}") from exc


def _eval(node, env):
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        if node.id == "i":
            return I
        raise ExpressionError(f"unknown name {node.id!r}")
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def evaluate(text, env=None, poly=False):
    """Evaluate an expression exactly.

    Parameters
    ----------
    text : str or int
        The expression.
    env : dict, optional
        Parameter values (exact scalars).
    poly : bool
        Bind ``x`` to the polynomial variable and always return a :class:`Poly`.
    """
    env = dict(env or {})
    if poly:
        env["x"] = Poly.x()
    if isinstance(text, int):
        val = text
    else:
        val = _eval(_parse(str(text)), env)
    if poly:
        return val if isinstance(val, Poly) else Poly([val])
    return to_exact(val)
