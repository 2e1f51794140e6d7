"""Lie algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..exact import RAT_ZERO, Inconsistent, Matrix, RatFunc, parse_expr, solve_linear
from .quaternion import QMatrix


class LieAlgebraError(ValueError):
    pass


class NotClosed(LieAlgebraError):
    """A commutator of basis matrices leaves their span."""

    def __init__(self, i: int, j: int, labels: Sequence[str] = ()):
        self.i, self.j = i, j
        names = (labels[i], labels[j]) if labels else (i, j)
        super().__init__(f"[{names[0]}, {names[1]}] is not in the span of the basis")


Vector = tuple  # dense tuple of RatFunc, one entry per basis element


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c_ij^k e_k`` stored for i < j."""

    labels: tuple
    constants: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), terms in self.constants.items():
            if not 0 <= i < j < len(self.labels):
                raise LieAlgebraError(f"structure constant key {(i, j)} must satisfy 0 <= i < j < dim")
            kept = tuple((k, RatFunc.coerce(c)) for k, c in sorted(terms) if RatFunc.coerce(c))
            if kept:
                clean[(i, j)] = kept
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "constants", dict(sorted(clean.items())))
        if len(set(self.labels)) != len(self.labels):
            raise LieAlgebraError("basis labels must be distinct")

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: Mapping) -> "LieAlgebra":
        """Build from ``{(i, j): {k: c}}`` with any ordering of i, j."""
        consts: dict = {}
        for (i, j), terms in brackets.items():
            if i == j:
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            items = terms.items() if isinstance(terms, Mapping) else terms
            acc = dict(consts.get((i, j), ()))
            for k, c in items:
                acc[k] = acc.get(k, RAT_ZERO) + RatFunc.coerce(c) * sign
            consts[(i, j)] = tuple(acc.items())
        return cls(tuple(labels), consts)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        if isinstance(label, int):
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise LieAlgebraError(f"unknown basis element {label!r}") from None

    def basis_vector(self, i) -> Vector:
        i = self.index(i)
        return tuple(RatFunc.coerce(1 if k == i else 0) for k in range(self.dim))

    def vector(self, coeffs: Mapping) -> Vector:
        v = [RAT_ZERO] * self.dim
        for label, c in coeffs.items():
            v[self.index(label)] = v[self.index(label)] + RatFunc.coerce(c)
        return tuple(v)

    def bracket_basis(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return dict(self.constants.get((i, j), ()))
        return {k: -c for k, c in self.constants.get((j, i), ())}

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        out = [RAT_ZERO] * self.dim
        for (i, j), terms in self.constants.items():
            ui, uj, vi, vj = u[i], u[j], v[i], v[j]
            if not ((ui and vj) or (uj and vi)):
                continue
            w = ui * vj - uj * vi
            if not w:
                continue
            for k, c in terms:
                out[k] = out[k] + w * c
        return tuple(out)

    def ad_matrix(self, u: Sequence) -> Matrix:
        """Matrix of ``ad(u)`` on the full algebra (column j = [u, e_j])."""
        cols = [self.bracket(u, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix(cols).transpose()

    def parameters(self) -> frozenset:
        return frozenset(v for terms in self.constants.values() for _, c in terms for v in c.variables)

    def numeric_tensor(self, values: Mapping[str, float] | None = None) -> np.ndarray:
        """Array ``T[i, j, k] = c_ij^k`` evaluated at parameter values."""
        n = self.dim
        t = np.zeros((n, n, n))
        vals = {k: float(v) for k, v in (values or {}).items()}
        for (i, j), terms in self.constants.items():
            for k, c in terms:
                x = float(c.evaluate(vals)) if c.variables else float(c.constant_value())
                t[i, j, k] = x
                t[j, i, k] = -x
        return t

    def subs(self, mapping: Mapping) -> "LieAlgebra":
        return LieAlgebra(
            self.labels,
            {key: tuple((k, c.subs(mapping)) for k, c in terms) for key, terms in self.constants.items()},
        )

    def format_vector(self, v: Sequence) -> str:
        return format_combination(v, self.labels)

    def bracket_table(self) -> list[tuple[str, str, str]]:
        """Nonzero brackets as ``(left, right, value)`` strings, basis order."""
        rows = []
        for (i, j), terms in self.constants.items():
            v = [RAT_ZERO] * self.dim
            for k, c in terms:
                v[k] = c
            rows.append((self.labels[i], self.labels[j], self.format_vector(v)))
        return rows


def format_combination(coeffs: Sequence, labels: Sequence[str]) -> str:
    """Render ``sum c_i * label_i`` in the canonical text syntax."""
    parts = []
    for c, label in zip(coeffs, labels):
        if not c:
            continue
        c = RatFunc.coerce(c)
        if c.is_constant():
            val = c.constant_value()
            sign = "-" if val < 0 else "+"
            mag = abs(val)
            body = label if mag == 1 else f"{mag}*{label}"
        elif c.is_polynomial() and c.num.is_monomial():
            text = str(c)
            sign, text = ("-", text[1:]) if text.startswith("-") else ("+", text)
            body = f"{text}*{label}"
        else:
            sign, body = "+", f"({c})*{label}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_combination(text: str, labels: Sequence[str]) -> Vector:
    """Inverse of :func:`format_combination`: ``"H1 - 2*Z"`` to a coefficient tuple.

    Labels are read as formal symbols, so coefficients may involve any other
    names (parameters) but must not mix two labels in one term.
    """
    expr = parse_expr(text)
    if not expr.is_polynomial():
        raise LieAlgebraError(f"basis labels may not appear in a denominator: {text!r}")
    coeffs = []
    rest = expr.num.scale(1 / expr.den.constant_value())
    for label in labels:
        parts = rest.coefficients_in(label)
        if any(k > 1 for k in parts) or any(set(labels) & p.variables for k, p in parts.items() if k == 1):
            raise LieAlgebraError(f"{text!r} is not linear in the basis labels")
        c = parts.get(1)
        coeffs.append(RatFunc.coerce(c) if c is not None else RAT_ZERO)
        rest = parts.get(0, rest.const(0))
    if not rest.is_zero():
        raise LieAlgebraError(f"{text!r} has a term without a basis label")
    return tuple(coeffs)


def bracket_table(basis: Sequence[QMatrix], labels: Sequence[str]) -> LieAlgebra:
    """Structure constants of the span of ``basis`` under the commutator.

    Each quaternionic entry is flattened to four rationals and every
    commutator is expressed in the basis by one exact linear solve.
    """
    if len(basis) != len(labels):
        raise LieAlgebraError("need one label per basis matrix")
    shapes = {b.shape for b in basis}
    if len(shapes) != 1:
        raise LieAlgebraError("basis matrices must share one shape")
    n = len(basis)
    cols = [b.realify() for b in basis]
    coeff = Matrix([[cols[j][r] for j in range(n)] for r in range(len(cols[0]))])
    pairs = list(combinations(range(n), 2))
    comms = [basis[i].bracket(basis[j]).realify() for i, j in pairs]
    rhs = Matrix([[c[r] for c in comms] for r in range(len(cols[0]))], len(pairs))
    outcome = solve_linear(coeff, rhs)
    if isinstance(outcome, Inconsistent):
        for idx, (i, j) in enumerate(pairs):
            if isinstance(solve_linear(coeff, rhs.columns([idx])), Inconsistent):
                raise NotClosed(i, j, labels)
        raise LieAlgebraError("commutators are not in the span of the basis")
    if not outcome.unique:
        raise LieAlgebraError("basis matrices are linearly dependent")
    consts = {}
    for idx, (i, j) in enumerate(pairs):
        consts[(i, j)] = tuple((k, outcome.solution[k, idx]) for k in range(n))
    return LieAlgebra(tuple(labels), consts)


def jacobi_check(g: LieAlgebra) -> list[tuple[int, int, int]]:
    """Basis triples i < j < k whose Jacobiator does not vanish."""
    n = g.dim
    basis = [g.basis_vector(i) for i in range(n)]
    brackets = {(i, j): g.bracket(basis[i], basis[j]) for i in range(n) for j in range(n) if i != j}
    bad = []
    for i, j, k in combinations(range(n), 3):
        a = g.bracket(brackets[(i, j)], basis[k])
        b = g.bracket(brackets[(j, k)], basis[i])
        c = g.bracket(brackets[(k, i)], basis[j])
        if any(x + y + z for x, y, z in zip(a, b, c)):
            bad.append((i, j, k))
    return bad


def direct_sum(first: LieAlgebra, second: LieAlgebra) -> LieAlgebra:
    off = first.dim
    consts = dict(first.constants)
    for (i, j), terms in second.constants.items():
        consts[(i + off, j + off)] = tuple((k + off, c) for k, c in terms)
    return LieAlgebra(first.labels + second.labels, consts)


def span_contains(vectors: Iterable[Sequence], target: Sequence) -> bool:
    """Whether ``target`` lies in the span of ``vectors``."""
    vectors = list(vectors)
    if not vectors:
        return not any(target)
    m = Matrix([list(v) for v in vectors]).transpose()
    return not isinstance(solve_linear(m, Matrix.column(list(target))), Inconsistent)
