"""Rational functions in canonical form, plus a small expression parser."""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Mapping

from .poly import ONE, ZERO, Poly, poly_gcd


class RatFunc:
    """Quotient num/den of polynomials kept in lowest terms.

    The denominator is integer-primitive with a positive leading coefficient,
    so two equal rational functions always share one representation and zero
    testing is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, reduced: bool = False):
        num = Poly.coerce(num)
        den = Poly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def coerce(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, str):
            return parse_expr(value)
        if isinstance(value, Poly):
            return cls(value, ONE, reduced=True)
        v = Fraction(value)
        return cls(Poly.const(v), ONE, reduced=True)

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        return cls(Poly.var(name), ONE, reduced=True)

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    @property
    def variables(self) -> frozenset:
        return self.num.variables | self.den.variables

    def graded_degrees(self) -> tuple[int, int]:
        return self.num.graded_degree(), self.den.graded_degree()

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "RatFunc":
        other = _lift(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_constant() and other.den.is_constant():
            return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)
        g = poly_gcd(self.den, other.den)
        d1 = self.den.divide_exact(g)
        d2 = other.den.divide_exact(g)
        return RatFunc(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "RatFunc":
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = _lift(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RAT_ZERO
        if other.is_constant():
            return self._scale(other.constant_value())
        if self.is_constant():
            return other._scale(self.constant_value())
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n = self.num.divide_exact(g1) * other.num.divide_exact(g2)
        d = self.den.divide_exact(g2) * other.den.divide_exact(g1)
        return RatFunc(*_fix_unit(n, d), reduced=True)

    __rmul__ = __mul__

    def _scale(self, c: Fraction) -> "RatFunc":
        if not c:
            return RAT_ZERO
        return RatFunc(self.num.scale(c), self.den, reduced=True)

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(*_fix_unit(self.den, self.num), reduced=True)

    def __truediv__(self, other) -> "RatFunc":
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return _lift(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, reduced=True)

    # substitution / evaluation -------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "RatFunc":
        """Substitute variables by expressions (anything coercible)."""
        if not mapping or not (self.variables & set(mapping)):
            return self
        values = {k: RatFunc.coerce(v) for k, v in mapping.items()}
        return _subs_poly(self.num, values) / _subs_poly(self.den, values)

    def evaluate(self, values: Mapping[str, object]):
        return self.num.evaluate(values) / self.den.evaluate(values)

    # comparison / printing ----------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly, str)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = str(self.den)
        (m, c), *rest = self.den.terms.items()
        if rest or c != 1 or len(m) > 1 or m[0][1] > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


def _canonical(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return ZERO, ONE
    if den.is_constant():
        return num.scale(1 / den.constant_value()), ONE
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = num.divide_exact(g)
        den = den.divide_exact(g)
    return _fix_unit(num, den)


def _fix_unit(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Rescale an already coprime pair so the denominator is canonical."""
    if den.is_constant():
        return num.scale(1 / den.constant_value()), ONE
    unit = den.content()
    if den.leading_coefficient() < 0:
        unit = -unit
    if unit == 1:
        return num, den
    return num.scale(1 / unit), den.scale(1 / unit)


def _lift(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (int, Fraction, Poly)):
        return RatFunc.coerce(value)
    return NotImplemented


def _subs_poly(p: Poly, values: Mapping[str, RatFunc]) -> RatFunc:
    total = RAT_ZERO
    cache: dict = {}
    for m, c in p.terms.items():
        kept = []
        factor = RatFunc.coerce(c)
        for v, e in m:
            if v in values:
                key = (v, e)
                if key not in cache:
                    cache[key] = values[v] ** e
                factor = factor * cache[key]
            else:
                kept.append((v, e))
        if kept:
            factor = factor * RatFunc(Poly({tuple(kept): Fraction(1)}), ONE, reduced=True)
        total = total + factor
    return total


RAT_ZERO = RatFunc(ZERO, ONE, reduced=True)
RAT_ONE = RatFunc(ONE, ONE, reduced=True)


# --------------------------------------------------------------------------
# parsing


class ExpressionError(ValueError):
    """Raised for text that is not a rational expression."""


def parse_expr(text: str) -> RatFunc:
    """Parse a rational expression such as ``"x2*z*(3/2 - 2*c)"``.

    Accepts ``+ - * /``, ``^`` or ``**`` with integer exponents, parentheses,
    integer/decimal literals and identifiers (which become variables).
    """
    source = str(text).strip().replace("^", "**")
    if not source:
        raise ExpressionError("empty expression")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    return _walk(tree.body, text)


def _walk(node, text) -> RatFunc:
    if isinstance(node, ast.BinOp):
        left = _walk(node.left, text)
        if isinstance(node.op, ast.Pow):
            exponent = _walk(node.right, text)
            if not exponent.is_constant() or exponent.constant_value().denominator != 1:
                raise ExpressionError(f"non-integer exponent in {text!r}")
            return left ** int(exponent.constant_value())
        right = _walk(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right.is_zero():
                raise ExpressionError(f"division by zero in {text!r}")
            return left / right
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _walk(node.operand, text)
        return -inner if isinstance(node.op, ast.USub) else inner
    elif isinstance(node, ast.Name):
        return RatFunc.var(node.id)
    elif isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return RatFunc.coerce(Fraction(str(node.value)))
    raise ExpressionError(f"unsupported syntax in {text!r}")


def as_ratfunc(value) -> RatFunc:
    return RatFunc.coerce(value)
