"""Reductive decompositions g = m + h and the operations built on them.

Every invariance statement is checked at the Lie algebra level: an
operator is Ad(H)-invariant when it commutes with (or is annihilated by)
``ad(H)|_m`` for each generator H of h.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exact import RAT_ONE, RAT_ZERO, Inconsistent, Matrix, RatFunc, nullspace, solve_linear
from .lie import LieAlgebra, jacobi_check


class SpaceError(ValueError):
    """Base class for violated preconditions on homogeneous spaces."""


class NotReductive(SpaceError):
    pass


class NotEquivariant(SpaceError):
    pass


class NotComplement(SpaceError):
    pass


class NotInvariantVector(SpaceError):
    pass


class NotSkew(SpaceError):
    pass


class JacobiFailure(SpaceError):
    pass


@dataclass
class Check:
    """Boolean verdict with an optional witness describing the failure."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def _gram(alpha) -> Matrix:
    return getattr(alpha, "gram", alpha)


@dataclass(frozen=True)
class ReductiveDecomposition:
    algebra: LieAlgebra
    h: tuple
    m: tuple
    coordinates: tuple = ()

    def __post_init__(self):
        h = tuple(self.algebra.index(i) for i in self.h)
        m = tuple(self.algebra.index(i) for i in self.m)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "m", m)
        if set(h) & set(m) or sorted(h + m) != list(range(self.algebra.dim)):
            raise NotReductive("h and m indices must partition the basis")
        coords = tuple(self.coordinates) or tuple(f"x{i + 1}" for i in range(len(m)))
        if len(coords) != len(m):
            raise NotReductive("need one coordinate name per m basis vector")
        object.__setattr__(self, "coordinates", coords)

    @property
    def h_labels(self) -> tuple:
        return tuple(self.algebra.labels[i] for i in self.h)

    @property
    def m_labels(self) -> tuple:
        return tuple(self.algebra.labels[i] for i in self.m)

    @property
    def m_dim(self) -> int:
        return len(self.m)

    def m_position(self, label) -> int:
        return self.m.index(self.algebra.index(label))

    def h_position(self, label) -> int:
        return self.h.index(self.algebra.index(label))

    def embed_m(self, coords: Sequence) -> tuple:
        v = [RAT_ZERO] * self.algebra.dim
        for pos, idx in enumerate(self.m):
            v[idx] = RatFunc.coerce(coords[pos])
        return tuple(v)

    def embed_h(self, coords: Sequence) -> tuple:
        v = [RAT_ZERO] * self.algebra.dim
        for pos, idx in enumerate(self.h):
            v[idx] = RatFunc.coerce(coords[pos])
        return tuple(v)

    def project_m(self, v: Sequence) -> tuple:
        return tuple(v[i] for i in self.m)

    def project_h(self, v: Sequence) -> tuple:
        return tuple(v[i] for i in self.h)

    def bracket_m(self, u: Sequence, v: Sequence) -> tuple:
        """m-coordinates of ``[u, v]_m`` for full algebra vectors."""
        return self.project_m(self.algebra.bracket(u, v))

    def m_vector(self, coeffs: Mapping) -> tuple:
        """m-coordinates from ``{label: coefficient}``."""
        v = [RAT_ZERO] * self.m_dim
        for label, c in coeffs.items():
            v[self.m_position(label)] = RatFunc.coerce(c)
        return tuple(v)

    def reductivity_violations(self) -> list:
        """Pairs breaking [h, h] in h or [h, m] in m."""
        bad = []
        hs, ms = set(self.h), set(self.m)
        for a in self.h:
            for b in range(self.algebra.dim):
                if a == b:
                    continue
                out = self.algebra.bracket_basis(a, b)
                allowed = hs if b in hs else ms
                if any(k not in allowed for k in out):
                    bad.append((self.algebra.labels[a], self.algebra.labels[b]))
        return bad

    def is_reductive(self) -> Check:
        bad = self.reductivity_violations()
        return Check(not bad, bad[0] if bad else None)

    def m_bracket_table(self) -> list[tuple[str, str, str]]:
        """Nonzero ``[e_i, e_j]_m`` for m basis pairs, in basis order."""
        rows = []
        labels = self.m_labels
        for p in range(self.m_dim):
            for q in range(p + 1, self.m_dim):
                w = self.bracket_m(self.algebra.basis_vector(self.m[p]), self.algebra.basis_vector(self.m[q]))
                if any(w):
                    from .lie import format_combination

                    rows.append((labels[p], labels[q], format_combination(w, labels)))
        return rows


@dataclass(frozen=True)
class AdjointOperator:
    source: str
    matrix: Matrix


def _ad_on_m(space: ReductiveDecomposition, vector: Sequence) -> Matrix:
    cols = [space.bracket_m(vector, space.algebra.basis_vector(j)) for j in space.m]
    return Matrix(cols, space.m_dim).transpose()


def adjoint_on_m(space: ReductiveDecomposition, generator) -> AdjointOperator:
    """Matrix of X -> [H, X]_m in the m basis (column j is the image of m_j)."""
    idx = space.algebra.index(generator)
    if idx not in space.h:
        raise SpaceError(f"{space.algebra.labels[idx]} is not in h")
    return AdjointOperator(space.algebra.labels[idx], _ad_on_m(space, space.algebra.basis_vector(idx)))


def ad_of_m_vector(space: ReductiveDecomposition, v: Sequence) -> Matrix:
    """Matrix of ``ad(V)|_m`` for an m-vector V given in m-coordinates."""
    return _ad_on_m(space, space.embed_m(v))


def invariant_vectors(space: ReductiveDecomposition) -> list[tuple]:
    """Basis of the m-vectors annihilated by every ad(H)|_m."""
    mats = [adjoint_on_m(space, i).matrix for i in space.h]
    if not mats:
        return [tuple(RAT_ONE if i == j else RAT_ZERO for j in range(space.m_dim)) for i in range(space.m_dim)]
    stacked = mats[0].vstack(*mats[1:])
    return nullspace(stacked)


@dataclass(frozen=True)
class CenterBasis:
    vectors: list
    splits: list = field(default_factory=list)  # (C_m, C_h) pairs in m/h coordinates

    @property
    def dim(self) -> int:
        return len(self.vectors)


def center(g: LieAlgebra, space: ReductiveDecomposition | None = None) -> CenterBasis:
    """Exact basis of {C : [C, e_i] = 0 for all i}."""
    n = g.dim
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append([g.bracket_basis(a, i).get(k, RAT_ZERO) for a in range(n)])
    basis = nullspace(Matrix(rows, n))
    splits = []
    if space is not None:
        splits = [(space.project_m(v), space.project_h(v)) for v in basis]
    return CenterBasis(basis, splits)


def is_central(g: LieAlgebra, v: Sequence) -> bool:
    return all(not any(g.bracket(v, g.basis_vector(i))) for i in range(g.dim))


def is_invariant_metric(space: ReductiveDecomposition, alpha) -> Check:
    """ad(H)|_m is skew with respect to the Gram matrix for every H in h."""
    g = _gram(alpha)
    if g.transpose() != g:
        raise SpaceError("metric Gram matrix must be symmetric")
    for i in space.h:
        op = adjoint_on_m(space, i)
        if not (g @ op.matrix + op.matrix.transpose() @ g).is_zero():
            return Check(False, op.source)
    return Check(True)


def is_naturally_reductive(space: ReductiveDecomposition, alpha) -> Check:
    """alpha([X,U]_m, W) + alpha(U, [X,W]_m) = 0 on all m basis triples."""
    g = _gram(alpha)
    n = space.m_dim
    basis = [space.algebra.basis_vector(j) for j in space.m]
    br = [[space.bracket_m(basis[p], basis[q]) for q in range(n)] for p in range(n)]

    def inner(u, w):
        acc = RAT_ZERO
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if w[j] and g[i, j]:
                        acc = acc + u[i] * g[i, j] * w[j]
        return acc

    unit = [tuple(RAT_ONE if i == j else RAT_ZERO for i in range(n)) for j in range(n)]
    labels = space.m_labels
    for x in range(n):
        for u in range(n):
            for w in range(u, n):
                val = inner(br[x][u], unit[w]) + inner(unit[u], br[x][w])
                if val:
                    return Check(False, (labels[x], labels[u], labels[w], str(val)))
    return Check(True)


def _as_linear_map(space: ReductiveDecomposition, xi_lin) -> list[tuple]:
    """Normalize a linear map m -> h into per-m-basis h-coordinate tuples."""
    nh = len(space.h)
    if isinstance(xi_lin, Matrix):
        if xi_lin.shape != (nh, space.m_dim):
            raise NotComplement(f"linear map must be {nh}x{space.m_dim}, got {xi_lin.shape}")
        return [xi_lin.col(j) for j in range(space.m_dim)]
    cols = [tuple([RAT_ZERO] * nh) for _ in range(space.m_dim)]
    for m_label, image in xi_lin.items():
        pos = space.m_position(m_label)
        col = [RAT_ZERO] * nh
        for h_label, c in image.items():
            idx = space.algebra.index(h_label)
            if idx not in space.h:
                raise NotComplement(f"image component {h_label!r} is not in h")
            col[space.h.index(idx)] = RatFunc.coerce(c)
        cols[pos] = tuple(col)
    return cols


def change_complement(space: ReductiveDecomposition, xi_lin, suffix: str = "bar") -> ReductiveDecomposition:
    """New decomposition with m' spanned by e_j + xi_lin(e_j).

    The algebra is rewritten in the new basis; h is untouched and m basis
    vectors that move are relabelled with ``suffix``.
    """
    g = space.algebra
    images = _as_linear_map(space, xi_lin)
    full = [space.embed_h(col) for col in images]

    # equivariance: [H, xi(X_j)] = xi([H, X_j]) makes m' Ad(H)-invariant
    for a in space.h:
        op = adjoint_on_m(space, a).matrix
        ha = g.basis_vector(a)
        for j in range(space.m_dim):
            lhs = g.bracket(ha, full[j])
            rhs = [RAT_ZERO] * g.dim
            for k in range(space.m_dim):
                if op[k, j]:
                    rhs = [r + op[k, j] * f for r, f in zip(rhs, full[k])]
            if any(x - y for x, y in zip(lhs, rhs)):
                raise NotEquivariant(
                    f"xi_lin does not commute with ad({g.labels[a]}) on {space.m_labels[j]}"
                )

    new_basis = [g.basis_vector(i) for i in range(g.dim)]
    for pos, j in enumerate(space.m):
        new_basis[j] = tuple(b + f for b, f in zip(new_basis[j], full[pos]))

    def to_new(y):
        out = list(y)
        for pos, j in enumerate(space.m):
            if y[j]:
                for a in space.h:
                    if full[pos][a]:
                        out[a] = out[a] - y[j] * full[pos][a]
        return out

    consts = {}
    for p in range(g.dim):
        for q in range(p + 1, g.dim):
            y = to_new(g.bracket(new_basis[p], new_basis[q]))
            terms = tuple((k, c) for k, c in enumerate(y) if c)
            if terms:
                consts[(p, q)] = terms
    labels = list(g.labels)
    for pos, j in enumerate(space.m):
        if any(images[pos]):
            labels[j] = labels[j] + suffix
    return ReductiveDecomposition(LieAlgebra(tuple(labels), consts), space.h, space.m, space.coordinates)


@dataclass(frozen=True)
class IsotropyExtension:
    base: ReductiveDecomposition
    vectors: tuple
    space: ReductiveDecomposition
    generators: tuple
    central: tuple

    @property
    def algebra(self) -> LieAlgebra:
        return self.space.algebra


def extend_isotropy(space: ReductiveDecomposition, alpha, vectors, labels: Sequence[str] | None = None) -> IsotropyExtension:
    """Adjoin formal generators W_a acting on m as ad(V_a)|_m.

    ``vectors`` is one m-vector or a list of them (m-coordinates or
    ``{label: coeff}``).  The new generators bracket with m through
    ``[W, X] = [V, X]_m``, commute with h, and close among themselves through
    the operator commutators.  ``central`` lists the elements V_a - W_a that
    are central in the extended algebra; this holds for a single vector but
    fails once the operators do not commute.
    """
    g = space.algebra
    gram = _gram(alpha)
    if isinstance(vectors, Mapping) or (vectors and not isinstance(vectors[0], (Mapping, tuple, list))):
        vectors = [vectors]
    vecs = [space.m_vector(v) if isinstance(v, Mapping) else tuple(RatFunc.coerce(c) for c in v) for v in vectors]
    if not vecs:
        raise NotInvariantVector("no vectors given")
    if labels is None:
        start = 1 + sum(1 for lab in g.labels if lab.startswith("W"))
        labels = [f"W{start + i}" for i in range(len(vecs))]
    h_ops = [adjoint_on_m(space, i) for i in space.h]
    ops = []
    for v in vecs:
        if not any(v):
            raise NotInvariantVector("the zero vector gives a degenerate extension")
        col = Matrix.column(list(v))
        for op in h_ops:
            if not (op.matrix @ col).is_zero():
                raise NotInvariantVector(f"vector is moved by ad({op.source})")
        d = ad_of_m_vector(space, v)
        if not (gram @ d + d.transpose() @ gram).is_zero():
            raise NotSkew("ad(V)|_m is not skew-symmetric for the metric")
        ops.append(d)

    n, r = g.dim, len(vecs)
    new_idx = list(range(n, n + r))
    consts = {key: terms for key, terms in g.constants.items()}
    for a, d in enumerate(ops):
        for pos, j in enumerate(space.m):
            terms = tuple((space.m[k], d[k, pos]) for k in range(space.m_dim) if d[k, pos])
            if terms:
                # stored as (j, W) with j < W: [e_j, W] = -[W, e_j]
                consts[(j, new_idx[a])] = tuple((k, -c) for k, c in terms)

    # [W_a, W_b] = element of h + span(W) acting on m as [D_a, D_b]
    flat = lambda mat: [mat[i, j] for i in range(mat.nrows) for j in range(mat.ncols)]
    span_ops = [op.matrix for op in h_ops] + ops
    span_matrix = Matrix([flat(o) for o in span_ops]).transpose() if span_ops else None
    targets = list(space.h) + new_idx
    for a in range(r):
        for b in range(a + 1, r):
            comm = ops[a] @ ops[b] - ops[b] @ ops[a]
            if comm.is_zero():
                continue
            sol = solve_linear(span_matrix, Matrix.column(flat(comm)))
            if isinstance(sol, Inconsistent):
                raise JacobiFailure(f"[{labels[a]}, {labels[b]}] does not close in the extended isotropy algebra")
            terms = tuple((targets[t], c) for t, c in enumerate(sol.vector) if c)
            if terms:
                consts[(new_idx[a], new_idx[b])] = terms

    ext = LieAlgebra(g.labels + tuple(labels), consts)
    bad = jacobi_check(ext)
    if bad:
        i, j, k = bad[0]
        raise JacobiFailure(f"Jacobi identity fails on ({ext.labels[i]}, {ext.labels[j]}, {ext.labels[k]})")
    new_space = ReductiveDecomposition(ext, tuple(space.h) + tuple(new_idx), space.m, space.coordinates)
    central = []
    for a, v in enumerate(vecs):
        z = list(new_space.embed_m(v))
        z[new_idx[a]] = RatFunc.coerce(-1)
        if is_central(ext, z):
            central.append(tuple(z))
    return IsotropyExtension(space, tuple(vecs), new_space, tuple(new_idx), tuple(central))
