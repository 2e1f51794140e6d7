"""Exact quaternions and quaternionic matrices.

Complex matrices are the special case with zero ``j`` and ``k`` parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class Quaternion:
    w: Fraction = Fraction(0)
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    z: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, str):
            return parse_quaternion(value)
        return cls(_q(value))

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.w, self.x, self.y, self.z)

    def __add__(self, other) -> "Quaternion":
        o = Quaternion.coerce(other)
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other) -> "Quaternion":
        return self + (-Quaternion.coerce(other))

    def __mul__(self, other) -> "Quaternion":
        o = Quaternion.coerce(other)
        a1, b1, c1, d1 = self.components()
        a2, b2, c2, d2 = o.components()
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other) -> "Quaternion":
        return Quaternion.coerce(other) * self

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __bool__(self) -> bool:
        return any(self.components())

    def __str__(self) -> str:
        parts = []
        for c, unit in zip(self.components(), ("", "i", "j", "k")):
            if c:
                parts.append(f"{c}{unit}" if unit == "" or c not in (1, -1) else ("-" if c < 0 else "") + unit)
        return " + ".join(parts).replace("+ -", "- ") or "0"


ONE = Quaternion(1)
I = Quaternion(0, 1)
J = Quaternion(0, 0, 1)
K = Quaternion(0, 0, 0, 1)


def parse_quaternion(text: str) -> Quaternion:
    """Parse sums like ``"-i/2"``, ``"3/2 + k"``, ``"1-2j"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty quaternion")
    total = Quaternion()
    i = 0
    terms = []
    start = 0
    for i in range(1, len(s) + 1):
        if i == len(s) or (s[i] in "+-" and s[i - 1] not in "/*"):
            terms.append(s[start:i])
            start = i
    units = {"i": I, "j": J, "k": K}
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        unit = ONE
        for u in "ijk":
            if u in body:
                unit = units[u]
                body = body.replace(u, "", 1)
        body = body.replace("*", "")
        if body.startswith("/"):
            body = "1" + body
        coeff = Fraction(body) if body else Fraction(1)
        total = total + unit * (sign * coeff)
    return total


class QMatrix:
    """Dense matrix of quaternions."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(Quaternion.coerce(e) for e in r) for r in rows)
        if len({len(r) for r in self.rows}) > 1:
            raise ValueError("ragged quaternion matrix")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "QMatrix":
        c = Quaternion.coerce(c)
        return QMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        n, m = self.shape
        m2, p = other.shape
        if m != m2:
            raise ValueError("shape mismatch in quaternion matrix product")
        out = []
        for i in range(n):
            row = []
            for j in range(p):
                acc = Quaternion()
                for k in range(m):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return QMatrix(out)

    def bracket(self, other: "QMatrix") -> "QMatrix":
        return self @ other - other @ self

    def realify(self) -> tuple[Fraction, ...]:
        """Flatten to 4 rationals per entry."""
        return tuple(c for r in self.rows for e in r for c in e.components())

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "QMatrix(" + "; ".join(", ".join(str(e) for e in r) for r in self.rows) + ")"


def qmatrix(spec: Sequence[Sequence]) -> QMatrix:
    """Build a QMatrix from nested lists of numbers or quaternion strings."""
    return QMatrix(spec)
