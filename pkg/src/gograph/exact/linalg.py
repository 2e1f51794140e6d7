"""Dense matrices over the rational-function field and exact elimination."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ratfunc import RAT_ONE, RAT_ZERO, RatFunc


class Matrix:
    """Immutable dense matrix of :class:`RatFunc` entries."""

    __slots__ = ("_rows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self._rows = tuple(tuple(RatFunc.coerce(e) for e in row) for row in rows)
        if ncols is None:
            ncols = len(self._rows[0]) if self._rows else 0
        if any(len(r) != ncols for r in self._rows):
            raise ValueError("ragged matrix rows")
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[RAT_ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[RAT_ONE if i == j else RAT_ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def column(cls, entries: Sequence) -> "Matrix":
        return cls([[e] for e in entries], 1)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix([self.col(j) for j in range(self.ncols)], self.nrows)

    def hstack(self, *others: "Matrix") -> "Matrix":
        for o in others:
            if o.nrows != self.nrows:
                raise ValueError("hstack needs equal row counts")
        rows = [list(r) for r in self._rows]
        for o in others:
            for i, r in enumerate(o.rows):
                rows[i].extend(r)
        return Matrix(rows, self.ncols + sum(o.ncols for o in others))

    def vstack(self, *others: "Matrix") -> "Matrix":
        rows = list(self._rows)
        for o in others:
            if o.ncols != self.ncols:
                raise ValueError("vstack needs equal column counts")
            rows.extend(o.rows)
        return Matrix(rows, self.ncols)

    def columns(self, indices: Sequence[int]) -> "Matrix":
        return Matrix([[r[j] for j in indices] for r in self._rows], len(indices))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.col(j) for j in range(other.ncols)]
        out = []
        for r in self._rows:
            out_row = []
            for c in cols:
                acc = RAT_ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(out, other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self._rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = RatFunc.coerce(c)
        return Matrix([[a * c for a in r] for r in self._rows], self.ncols)

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(a) for a in r] for r in self._rows], self.ncols)

    def subs(self, mapping) -> "Matrix":
        return self.map(lambda e: e.subs(mapping))

    def is_zero(self) -> bool:
        return not any(e for r in self._rows for e in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other.rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in r] for r in self._rows]

    def __str__(self) -> str:
        cells = self.to_strings()
        widths = [max((len(cells[i][j]) for i in range(self.nrows)), default=1) for j in range(self.ncols)]
        return "\n".join(
            "[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]" for row in cells
        )

    def __repr__(self) -> str:
        return f"Matrix({self.to_strings()!r})"


# --------------------------------------------------------------------------
# elimination


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    rank: int
    pivots: tuple[int, ...]


def _pivot_cost(e: RatFunc) -> tuple:
    return (e.num.total_degree(), e.den.total_degree(), len(e.num.terms))


def _reduce(rows: list[list[RatFunc]], ncols: int, limit: int) -> tuple[int, list[int]]:
    """In-place Gauss-Jordan on ``rows``; pivots only in columns < limit."""
    r = 0
    pivots: list[int] = []
    nrows = len(rows)
    for c in range(limit):
        if r >= nrows:
            break
        candidates = [i for i in range(r, nrows) if rows[i][c]]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: (_pivot_cost(rows[i][c]), i))
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv if e else e for e in rows[r]]
        rows[r][c] = RAT_ONE
        pivot_row = rows[r]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pivot_row)]
            rows[i][c] = RAT_ZERO
        pivots.append(c)
        r += 1
    return r, pivots


def rref(m: Matrix, pivot_limit: int | None = None) -> RrefResult:
    """Reduced row echelon form over the rational-function field.

    Within each column the pivot is the candidate of least degree (row index
    breaks ties).  With ``pivot_limit`` only the first ``pivot_limit``
    columns may carry pivots; the remaining columns are reduced alongside.
    """
    limit = m.ncols if pivot_limit is None else pivot_limit
    rows = [list(r) for r in m.rows]
    rank, pivots = _reduce(rows, m.ncols, limit)
    return RrefResult(Matrix(rows, m.ncols), rank, tuple(pivots))


def rank(m: Matrix) -> int:
    return rref(m).rank


def nullspace(m: Matrix) -> list[tuple[RatFunc, ...]]:
    """Basis of {v : m v = 0}, one vector per free column (free entry = 1)."""
    res = rref(m)
    free = [j for j in range(m.ncols) if j not in res.pivots]
    basis = []
    for f in free:
        v = [RAT_ZERO] * m.ncols
        v[f] = RAT_ONE
        for i, p in enumerate(res.pivots):
            v[p] = -res.matrix[i, f]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class Consistent:
    """Solution set ``particular + span(nullspace)``."""

    solution: Matrix
    nullspace: list = field(default_factory=list)
    rank: int = 0

    @property
    def vector(self) -> tuple[RatFunc, ...]:
        return self.solution.col(0)

    @property
    def unique(self) -> bool:
        return not self.nullspace


@dataclass(frozen=True)
class Inconsistent:
    """No solution.  Each witness is ``(row_index, coefficient_part, rhs_part)``
    taken from the coefficient-reduced augmented matrix; ``source_rows``
    lists original rows that are witnesses by themselves."""

    witnesses: list
    source_rows: list
    rank: int = 0
    augmented_rank: int = 0


def solve_linear(a: Matrix, rhs: Matrix) -> Consistent | Inconsistent:
    """Solve ``a x = rhs`` for every column of ``rhs``."""
    if a.nrows != rhs.nrows:
        raise ValueError("coefficient and right-hand side row counts differ")
    n = a.ncols
    aug = a.hstack(rhs)
    red = rref(aug, pivot_limit=n)
    witnesses = []
    for i in range(red.rank, aug.nrows):
        row = red.matrix.row(i)
        if any(row[n:]):
            witnesses.append((i, row[:n], row[n:]))
    if witnesses:
        source = [
            i for i in range(a.nrows) if not any(a.row(i)) and any(rhs.row(i))
        ]
        return Inconsistent(witnesses, source, red.rank, rank(aug))
    sol = [[RAT_ZERO] * rhs.ncols for _ in range(n)]
    for i, p in enumerate(red.pivots):
        sol[p] = list(red.matrix.row(i)[n:])
    free = [j for j in range(n) if j not in red.pivots]
    basis = []
    for f in free:
        v = [RAT_ZERO] * n
        v[f] = RAT_ONE
        for i, p in enumerate(red.pivots):
            v[p] = -red.matrix[i, f]
        basis.append(tuple(v))
    return Consistent(Matrix(sol, rhs.ncols), basis, red.rank)


def same_row_space(a: Matrix, b: Matrix) -> bool:
    """True when both matrices have the same row space (same reduced form)."""
    if a.ncols != b.ncols:
        return False
    ra, rb = rref(a), rref(b)
    return ra.matrix.rows[: ra.rank] == rb.matrix.rows[: rb.rank]
