"""Sparse multivariate polynomials over the rationals.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by
:func:`variable_key`; a polynomial maps monomials to nonzero ``Fraction``
coefficients.  Variables are ordered globally: coordinates (``x1``, ``z``,
``z3``, ...) first, then parameters, then the formal symbol ``zeta``.  The
monomial order is graded lexicographic over that variable order.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

ZETA = "zeta"

_COORDINATE = re.compile(r"[xyz]\d*$")
_CHUNKS = re.compile(r"(\d+)")

Monomial = tuple  # tuple[tuple[str, int], ...]


@lru_cache(maxsize=None)
def variable_key(name: str) -> tuple:
    """Sort key implementing the global variable order."""
    if name == ZETA:
        category = 2
    elif _COORDINATE.match(name):
        category = 0
    else:
        category = 1
    chunks = tuple((0, int(p)) if p.isdigit() else (1, p) for p in _CHUNKS.split(name) if p)
    return (category, chunks)


def is_graded(name: str) -> bool:
    """Coordinates and ``zeta`` carry degree 1; parameters carry degree 0."""
    return variable_key(name)[0] != 1


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif variable_key(va) < variable_key(vb):
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """Return a/b, or None when b does not divide a."""
    da = dict(a)
    for v, e in b:
        have = da.get(v, 0)
        if have < e:
            return None
        if have == e:
            del da[v]
        else:
            da[v] = have - e
    return tuple(sorted(da.items(), key=lambda t: variable_key(t[0])))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _coerce_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact coefficient")


class Poly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_vars", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self._terms = dict(terms) if terms else {}
        self._vars = None
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, value) -> "Poly":
        c = _coerce_fraction(value)
        return cls({(): c}) if c else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        if power == 0:
            return cls.const(1)
        return cls({((name, power),): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        return cls.const(value)

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return self._terms

    @property
    def variables(self) -> frozenset:
        if self._vars is None:
            self._vars = frozenset(v for m in self._terms for v, _ in m)
        return self._vars

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(_mono_degree(m) for m in self._terms)

    def degree(self, var: str) -> int:
        if not self._terms:
            return -1
        return max((e for m in self._terms for v, e in m if v == var), default=0)

    def graded_degree(self) -> int:
        """Degree counting only coordinates and ``zeta``; -1 for zero."""
        if not self._terms:
            return -1
        return max(sum(e for v, e in m if is_graded(v)) for m in self._terms)

    def is_graded_homogeneous(self) -> bool:
        degs = {sum(e for v, e in m if is_graded(v)) for m in self._terms}
        return len(degs) <= 1

    def sorted_monomials(self) -> list:
        """Monomials in decreasing graded-lex order."""
        ranks = {v: i for i, v in enumerate(sorted(self.variables, key=variable_key))}

        def key(m):
            return (_mono_degree(m), tuple((-ranks[v], e) for v, e in m))

        return sorted(self._terms, key=key, reverse=True)

    def leading_term(self) -> tuple:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = self.sorted_monomials()[0]
        return m, self._terms[m]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _coerce_fraction(c)
        if not c:
            return Poly()
        if c == 1:
            return self
        return Poly({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        if not self._terms or not other._terms:
            return Poly()
        if other.is_constant():
            return self.scale(other._terms[()])
        if self.is_constant():
            return other.scale(self._terms[()])
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divide_exact(self, other: "Poly") -> "Poly":
        """Quotient self/other; raises ArithmeticError if it is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self.scale(1 / other._terms[()])
        lm, lc = other.leading_term()
        quotient: dict = {}
        rem = self
        while rem._terms:
            m, c = rem.leading_term()
            qm = _mono_div(m, lm)
            if qm is None:
                raise ArithmeticError(f"{other} does not divide {self}")
            qc = c / lc
            quotient[qm] = quotient.get(qm, 0) + qc
            rem = rem - Poly({qm: qc}) * other
        return Poly({m: c for m, c in quotient.items() if c})

    # structure ----------------------------------------------------------
    def coefficients_in(self, var: str) -> dict:
        """Map exponent of ``var`` to the coefficient polynomial."""
        out: dict = {}
        for m, c in self._terms.items():
            e = 0
            rest = []
            for v, k in m:
                if v == var:
                    e = k
                else:
                    rest.append((v, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly(t) for e, t in out.items()}

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at numeric values (floats, Fractions, ...)."""
        total = 0
        for m, c in self._terms.items():
            term = c
            for v, e in m:
                term = term * values[v] ** e
            total = total + term
        return total

    def content(self) -> Fraction:
        """Positive rational g with self/g having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        g = 0
        for n in nums:
            g = math.gcd(g, n)
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        return Fraction(g, lcm)

    def normalized(self) -> "Poly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(1 / c)

    # comparison / printing ----------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m in self.sorted_monomials():
            c = self._terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            names = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not names:
                body = str(a)
            elif a == 1:
                body = names
            else:
                body = f"{a}*{names}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


ZERO = Poly()
ONE = Poly.const(1)


# --------------------------------------------------------------------------
# greatest common divisor


def _content_in(p: Poly, var: str) -> Poly:
    g = ZERO
    for coeff in p.coefficients_in(var).values():
        g = _gcd(g, coeff)
        if g.is_constant():
            return ONE
    return g


def _lc_in(p: Poly, var: str) -> tuple[int, Poly]:
    coeffs = p.coefficients_in(var)
    d = max(coeffs)
    return d, coeffs[d]


def _prem(a: Poly, b: Poly, var: str) -> Poly:
    db, lb = _lc_in(b, var)
    r = a
    while r and r.degree(var) >= db:
        dr, lr = _lc_in(r, var)
        r = lb * r - lr * Poly.var(var, dr - db) * b
    return r


def _primitive_part(p: Poly, var: str) -> Poly:
    c = _content_in(p, var)
    return p.divide_exact(c).normalized() if not c.is_constant() else p.normalized()


def _monomial_gcd(mono: Poly, other: Poly) -> Poly:
    (m, _), = mono.terms.items()
    exps = dict(m)
    for om in other.terms:
        od = dict(om)
        exps = {v: min(e, od[v]) for v, e in exps.items() if v in od}
        if not exps:
            return ONE
    return Poly({tuple(sorted(exps.items(), key=lambda t: variable_key(t[0]))): Fraction(1)})


def _gcd(a: Poly, b: Poly) -> Poly:
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    if a.is_constant() or b.is_constant():
        return ONE
    if a.is_monomial():
        return _monomial_gcd(a, b)
    if b.is_monomial():
        return _monomial_gcd(b, a)
    va, vb = a.variables, b.variables
    # a variable present on one side only can only enter through the content
    for p, q, extra in ((a, b, va - vb), (b, a, vb - va)):
        if extra:
            u = max(extra, key=variable_key)
            g = q
            for coeff in p.coefficients_in(u).values():
                g = _gcd(g, coeff)
                if g.is_constant():
                    return ONE
            return g
    y = max(va, key=variable_key)
    ca, cb = _content_in(a, y), _content_in(b, y)
    c = _gcd(ca, cb)
    r0 = a.divide_exact(ca).normalized()
    r1 = b.divide_exact(cb).normalized()
    if r0.degree(y) < r1.degree(y):
        r0, r1 = r1, r0
    while r1 and r1.degree(y) > 0:
        r = _prem(r0, r1, y)
        r0, r1 = r1, (_primitive_part(r, y) if r else r)
    g = _primitive_part(r0, y) if not r1 else ONE
    return (c * g).normalized()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, normalized to an integer-primitive polynomial
    with positive leading coefficient.  ``poly_gcd(0, 0) == 0``."""
    return _gcd(Poly.coerce(a), Poly.coerce(b))


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return ZERO
    return (a * b).divide_exact(poly_gcd(a, b)).normalized()


def poly_sum(items: Iterable[Poly]) -> Poly:
    out: dict = {}
    for p in items:
        for m, c in p.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return Poly(out)
