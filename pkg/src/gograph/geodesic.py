"""Geodesic graphs from the linear system for the isotropy correction xi(X).

For X = sum x_j e_j in m, the vector X + xi(X) is geodesic exactly when

    alpha(X, [xi(X), U]_m) = -alpha(X, [X, U]_m) - zeta(X) alpha(V, [X, U]_m)

for every U in m.  Writing xi = sum xi_a E_a over the isotropy basis gives one
linear equation per basis vector U_j with coefficient block A, Riemannian
right-hand side B and Finsler right-hand side C.  zeta is a formal symbol of
graded degree 1, algebraically independent of the coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .abmetric import InvariantMetric, MetricVector, fundamental_tensor_numeric, get_phi, zeta_numeric
from .exact import RAT_ZERO, ZETA, Consistent, Inconsistent, Matrix, RatFunc, poly_lcm, rank, solve_linear
from .exact.poly import ONE
from .homogeneous import ReductiveDecomposition, is_central, is_invariant_metric, is_naturally_reductive

RIEMANNIAN = "riemannian"
FINSLER = "finsler"
MODES = (RIEMANNIAN, FINSLER)


class GraphError(ValueError):
    pass


class NotInvariant(GraphError):
    pass


class DecompositionMismatch(GraphError):
    pass


class NotNaturallyReductive(GraphError):
    pass


class NotCentral(GraphError):
    pass


class DegenerateVector(GraphError):
    pass


def _metric(alpha) -> InvariantMetric:
    return alpha if isinstance(alpha, InvariantMetric) else InvariantMetric(alpha)


def _vector(space: ReductiveDecomposition, v) -> MetricVector | None:
    if v is None:
        return None
    if isinstance(v, MetricVector):
        out = v
    elif isinstance(v, Mapping):
        out = MetricVector(space.m_vector(v))
    else:
        out = MetricVector(tuple(v))
    if len(out) != space.m_dim:
        raise GraphError(f"V needs {space.m_dim} components, got {len(out)}")
    return out


@dataclass(frozen=True)
class GeodesicSystem:
    space: ReductiveDecomposition
    metric: InvariantMetric
    vector: MetricVector | None
    mode: str
    A: Matrix
    B: Matrix
    C: Matrix | None

    @property
    def unknowns(self) -> tuple:
        return self.space.h_labels

    @property
    def rhs(self) -> Matrix:
        return self.B if self.C is None else self.B + self.C

    def augmented(self) -> Matrix:
        """(A | B) or (A | B | C)."""
        return self.A.hstack(self.B) if self.C is None else self.A.hstack(self.B, self.C)

    def coordinate_vector(self) -> tuple:
        return self.space.embed_m([RatFunc.var(c) for c in self.space.coordinates])

    def residual(self, components: Sequence) -> tuple:
        """alpha(X + zeta V, [X + xi, U_j]_m) for every j, computed from brackets."""
        sp = self.space
        x = self.coordinate_vector()
        y = list(x)
        for pos, idx in enumerate(sp.h):
            y[idx] = y[idx] + RatFunc.coerce(components[pos])
        shifted = sp.project_m(x)
        if self.C is not None:
            z = RatFunc.var(ZETA)
            shifted = tuple(a + z * b for a, b in zip(shifted, self.vector))
        out = []
        for j in sp.m:
            w = sp.bracket_m(y, sp.algebra.basis_vector(j))
            out.append(self.metric.inner(shifted, w))
        return tuple(out)

    def to_report(self) -> dict:
        return {
            "space_m": list(self.space.m_labels),
            "unknowns": list(self.unknowns),
            "coordinates": list(self.space.coordinates),
            "mode": self.mode,
            "A": self.A.to_strings(),
            "B": [r[0] for r in self.B.to_strings()],
            "C": None if self.C is None else [r[0] for r in self.C.to_strings()],
            "rank_A": rank(self.A),
            "rank_augmented": rank(self.A.hstack(self.rhs)),
        }


def build_system(space: ReductiveDecomposition, alpha, vector=None, mode: str = FINSLER) -> GeodesicSystem:
    """Assemble A, B and C for the symbolic direction X = sum x_j e_j.

    In Finsler mode the dropped cross term alpha(zeta V, [xi, U]_m) is
    verified to vanish for every isotropy generator before returning.
    """
    if mode not in MODES:
        raise GraphError(f"mode must be one of {MODES}")
    metric = _metric(alpha)
    if metric.dim != space.m_dim:
        raise GraphError("metric dimension does not match m")
    verdict = is_invariant_metric(space, metric.gram)
    if not verdict:
        raise NotInvariant(f"metric is not invariant under ad({verdict.witness})")
    v = _vector(space, vector) if mode == FINSLER else None
    if mode == FINSLER and (v is None or v.is_zero()):
        raise DegenerateVector("Finsler mode needs a nonzero vector V")
    g = space.algebra
    x = tuple(RatFunc.var(c) for c in space.coordinates)
    X = space.embed_m(x)
    basis_m = [g.basis_vector(j) for j in space.m]
    gens = [g.basis_vector(a) for a in space.h]
    if v is not None:
        V = space.embed_m(v.components)
        for a, e in zip(space.h, gens):
            if any(space.bracket_m(e, V)):
                raise NotInvariant(f"V is moved by ad({g.labels[a]})")
        for e in gens:
            for u in basis_m:
                if metric.inner(v.components, space.bracket_m(e, u)):
                    raise NotInvariant("cross term alpha(V, [xi, U]_m) does not vanish")
    zeta = RatFunc.var(ZETA)
    a_rows, b_rows, c_rows = [], [], []
    for u in basis_m:
        xu = space.bracket_m(X, u)
        a_rows.append([metric.inner(x, space.bracket_m(e, u)) for e in gens])
        b_rows.append([-metric.inner(x, xu)])
        if v is not None:
            c_rows.append([-(zeta * metric.inner(v.components, xu))])
    A = Matrix(a_rows, len(gens))
    B = Matrix(b_rows, 1)
    C = Matrix(c_rows, 1) if v is not None else None
    return GeodesicSystem(space, metric, v, mode, A, B, C)


# ---------------------------------------------------------------------------
# solving and classification

LINEAR = "linear"
RATIONAL = "rational"
UNSOLVABLE = "unsolvable"


@dataclass(frozen=True)
class GeodesicGraphResult:
    components: tuple
    classification: str
    mode: str
    unknowns: tuple
    coordinates: tuple
    degrees: tuple | None = None  # (deg P_i, deg P) with a common denominator P
    witness: int | None = None  # index of an m-basis equation that cannot be met
    ranks: dict = field(default_factory=dict)
    nullity: int = 0
    route: str = "direct"

    @property
    def is_go(self) -> bool:
        return self.classification != UNSOLVABLE

    @property
    def is_linear(self) -> bool:
        return self.classification == LINEAR

    def component(self, label) -> RatFunc:
        return self.components[self.unknowns.index(label)]

    def common_denominator(self):
        return reduce(poly_lcm, [c.den for c in self.components if c], ONE)

    def evaluate(self, values: Mapping[str, float]) -> np.ndarray:
        return np.array([float(c.evaluate(values)) if c.variables else float(c.constant_value()) for c in self.components])

    def subs(self, mapping: Mapping) -> "GeodesicGraphResult":
        comps = tuple(c.subs(mapping) for c in self.components)
        return _classified(comps, self.mode, self.unknowns, self.coordinates, self.ranks, self.nullity, self.route)

    def summary(self) -> str:
        if not self.is_go:
            return f"Unsolvable: equation {self.witness} has no solution for general X"
        from .lie import format_combination

        body = format_combination(self.components, self.unknowns)
        if self.is_linear:
            return f"Linear: xi = {body}"
        return f"Rational(deg P_i = {self.degrees[0]}, deg P = {self.degrees[1]}): xi = {body}"

    def to_report(self) -> dict:
        return {
            "classification": self.classification,
            "mode": self.mode,
            "route": self.route,
            "unknowns": list(self.unknowns),
            "coordinates": list(self.coordinates),
            "components": {u: str(c) for u, c in zip(self.unknowns, self.components)} if self.is_go else None,
            "degrees": list(self.degrees) if self.degrees else None,
            "witness": self.witness,
            "ranks": dict(self.ranks),
            "nullity": self.nullity,
        }


def classify(components: Sequence[RatFunc]) -> tuple[str, tuple | None]:
    """Linear when every component is a degree-1 form with constant (in X, zeta)
    denominator, else Rational with degrees over the common denominator."""
    nonzero = [c for c in components if c]
    if all(c.den.graded_degree() == 0 and c.num.is_graded_homogeneous() and c.num.graded_degree() == 1 for c in nonzero):
        return LINEAR, (1, 0)
    p = reduce(poly_lcm, [c.den for c in nonzero], ONE)
    num_deg = max((c.num * p.divide_exact(c.den)).graded_degree() for c in nonzero)
    return RATIONAL, (num_deg, p.graded_degree())


def _classified(comps, mode, unknowns, coords, ranks, nullity, route) -> GeodesicGraphResult:
    tag, degrees = classify(comps)
    return GeodesicGraphResult(tuple(comps), tag, mode, tuple(unknowns), tuple(coords), degrees, None, dict(ranks), nullity, route)


def _degree_key(components: Sequence[RatFunc]) -> tuple:
    degs = [c.num.graded_degree() + c.den.graded_degree() for c in components if c]
    return (max(degs, default=0), sum(degs))


def _representative(system: GeodesicSystem, rhs: Matrix, nullity: int) -> tuple:
    """Minimal-degree solution among those fixing ``nullity`` unknowns to zero.

    Ties go to the choice whose zeroed unknowns have the largest indices.
    """
    n = system.A.ncols
    best = None
    for zeroed in combinations(range(n), nullity):
        keep = [j for j in range(n) if j not in zeroed]
        sol = solve_linear(system.A.columns(keep), rhs)
        if not isinstance(sol, Consistent) or not sol.unique:
            continue
        comps = [RAT_ZERO] * n
        for j, val in zip(keep, sol.vector):
            comps[j] = val
        key = (_degree_key(comps), tuple(-z for z in sorted(zeroed, reverse=True)))
        if best is None or key < best[0]:
            best = (key, tuple(comps))
    if best is None:
        raise GraphError("no representative with the expected number of zero components")
    return best[1]


def _first_failing_row(a: Matrix, rhs: Matrix) -> int:
    """Index of the first equation whose inclusion breaks consistency."""
    for j in range(1, a.nrows + 1):
        head = Matrix(a.rows[:j], a.ncols)
        if rank(head.hstack(Matrix(rhs.rows[:j], rhs.ncols))) > rank(head):
            return j - 1
    return a.nrows - 1


def _ranks(system: GeodesicSystem) -> dict:
    out = {"A": rank(system.A), "AB": rank(system.A.hstack(system.B))}
    if system.C is not None:
        out["ABC"] = rank(system.A.hstack(system.rhs))  # A | B + C
    return out


def solve_graph(system: GeodesicSystem) -> GeodesicGraphResult:
    """Solve A xi = B (+ C) over the rational-function field and classify."""
    rhs = system.rhs
    ranks = _ranks(system)
    coords = system.space.coordinates
    outcome = solve_linear(system.A, rhs)
    if isinstance(outcome, Inconsistent):
        witness = outcome.source_rows[0] if outcome.source_rows else _first_failing_row(system.A, rhs)
        return GeodesicGraphResult(
            (), UNSOLVABLE, system.mode, system.unknowns, coords, None, witness, ranks, len(outcome.witnesses)
        )
    nullity = len(outcome.nullspace)
    comps = outcome.vector if nullity == 0 else _representative(system, rhs, nullity)
    result = _classified(comps, system.mode, system.unknowns, coords, ranks, nullity, "direct")
    if any(system.residual(result.components)):
        raise GraphError("internal error: solution does not satisfy the geodesic equations")
    return result


@dataclass(frozen=True)
class GoVerdict:
    go: bool
    rank_A: int
    rank_augmented: int
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.go


def check_go(space: ReductiveDecomposition, alpha, vector=None, mode: str = RIEMANNIAN) -> GoVerdict:
    """GO iff rank(A) equals the rank of the augmented matrix for general X."""
    system = build_system(space, alpha, vector, mode)
    ra, raug = rank(system.A), rank(system.A.hstack(system.rhs))
    witness = None if ra == raug else _first_failing_row(system.A, system.rhs)
    return GoVerdict(ra == raug, ra, raug, witness)


def verify_residual(system: GeodesicSystem, graph: GeodesicGraphResult) -> bool:
    return graph.is_go and not any(system.residual(graph.components))


# ---------------------------------------------------------------------------
# constructions through group extensions


def _apply_phi(result_components, phi):
    if phi is not None and get_phi(phi).constant:
        return tuple(c.subs({ZETA: 0}) for c in result_components)
    return tuple(result_components)


def graph_via_t2(space: ReductiveDecomposition, alpha, vector, riemannian: GeodesicGraphResult | None = None, phi=None) -> GeodesicGraphResult:
    """Finsler graph xi(X) = xi_R(X + zeta(X) V) when V is central in the algebra.

    ``riemannian`` defaults to the direct Riemannian solve in ``space``.
    The result is checked against the Finsler equations and compared with
    the direct Finsler solve.
    """
    v = _vector(space, vector)
    if v is None or v.is_zero():
        raise DegenerateVector("the substitution route needs a nonzero V")
    if not is_central(space.algebra, space.embed_m(v.components)):
        raise DecompositionMismatch("V is not central in this decomposition; change the complement first")
    if riemannian is None:
        riemannian = solve_graph(build_system(space, alpha, None, RIEMANNIAN))
    if not riemannian.is_go:
        raise GraphError("the Riemannian system has no solution")
    zeta = RatFunc.var(ZETA)
    shift = {c: RatFunc.var(c) + zeta * vc for c, vc in zip(space.coordinates, v.components) if vc}
    comps = tuple(c.subs(shift) for c in riemannian.components)
    system = build_system(space, alpha, v, FINSLER)
    if any(system.residual(comps)):
        raise GraphError("substituted graph fails the Finsler equations")
    comps = _apply_phi(comps, phi)
    return _classified(comps, FINSLER, riemannian.unknowns, space.coordinates, _ranks(system), riemannian.nullity, "t2")


def graph_via_pnr(space: ReductiveDecomposition, alpha, central, phi=None) -> GeodesicGraphResult:
    """Finsler graph xi(X) = -zeta(X) C_h for a central C = C_m + C_h with V = C_m,
    on a naturally reductive decomposition."""
    if isinstance(central, Mapping):
        central = space.algebra.vector(central)
    central = tuple(RatFunc.coerce(c) for c in central)
    nr = is_naturally_reductive(space, _metric(alpha).gram)
    if not nr:
        raise NotNaturallyReductive(f"identity fails on {nr.witness[:3]}")
    if not is_central(space.algebra, central):
        raise NotCentral("C is not in the center of the algebra")
    v = space.project_m(central)
    if not any(v):
        raise DegenerateVector("C_m = 0, so there is no vector V to build beta from")
    zeta = RatFunc.var(ZETA)
    comps = tuple(-(zeta * c) for c in space.project_h(central))
    system = build_system(space, alpha, v, FINSLER)
    if any(system.residual(comps)):
        raise GraphError("-zeta C_h fails the Finsler equations")
    comps = _apply_phi(comps, phi)
    return _classified(comps, FINSLER, space.h_labels, space.coordinates, _ranks(system), 0, "pnr")


def linear_map(graph: GeodesicGraphResult) -> Matrix:
    """Matrix (h x m) of a linear graph: column j is xi(e_j)."""
    if not graph.is_linear:
        raise GraphError("only linear graphs define a linear map m -> h")
    coords = graph.coordinates
    rows = []
    for c in graph.components:
        row = []
        for name in coords:
            row.append(RatFunc(c.num.coefficients_in(name).get(1, 0), c.den))
        rows.append(row)
    return Matrix(rows, len(coords))


# ---------------------------------------------------------------------------
# numeric verification


@dataclass(frozen=True)
class NumericReport:
    passed: bool
    max_residual: float
    residuals: tuple
    samples: int
    tolerance: float
    seed: int
    phi: str
    step: float = 1e-3
    richardson: bool = True

    def to_report(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "phi": self.phi,
            "step": self.step,
            "richardson": self.richardson,
        }


def verify_graph_numeric(
    space: ReductiveDecomposition,
    alpha,
    vector,
    phi,
    graph: GeodesicGraphResult,
    values: Mapping[str, float] | None = None,
    samples: int = 50,
    seed: int = 0,
    tolerance: float = 1e-6,
    step: float = 1e-3,
    richardson: bool = True,
) -> NumericReport:
    """Check g_X(X, [X + xi(X), U]_m) = 0 with a finite-difference fundamental tensor.

    X is drawn from a seeded normal distribution and scaled to alpha-norm 1.
    Richardson refinement (steps h and h/2) is on by default: the plain
    second-order stencil leaves truncation errors near 1e-6 for quadratic phi.
    """
    if not graph.is_go:
        raise GraphError("cannot verify an unsolvable graph")
    fam = get_phi(phi)
    vals = {k: float(v) for k, v in (values or {}).items()}
    g = _metric(alpha).numeric(vals)
    vec = _vector(space, vector)
    v = np.zeros(space.m_dim) if vec is None else vec.numeric(vals)
    tensor = space.algebra.numeric_tensor(vals)
    m_idx, h_idx = list(space.m), list(space.h)
    rng = np.random.default_rng(seed)
    residuals = []
    for _ in range(samples):
        x = rng.standard_normal(space.m_dim)
        x = x / np.sqrt(x @ g @ x)
        point = dict(vals)
        point.update(zip(space.coordinates, x))
        point[ZETA] = zeta_numeric(x, g, v, fam)
        xi = graph.evaluate(point)
        y = np.zeros(space.algebra.dim)
        y[m_idx] = x
        y[h_idx] = xi
        worst = 0.0
        for j in m_idx:
            w = (y @ tensor[:, j, :])[m_idx]
            worst = max(worst, abs(fundamental_tensor_numeric(x, x, w, g, v, fam, step, richardson)))
        residuals.append(worst)
    top = max(residuals)
    return NumericReport(bool(top < tolerance), top, tuple(residuals), samples, tolerance, seed, fam.name, step, richardson)


def corrupt(graph: GeodesicGraphResult, factor=2) -> GeodesicGraphResult:
    """Copy with the first nonzero component scaled, for negative controls."""
    comps = list(graph.components)
    for i, c in enumerate(comps):
        if c:
            comps[i] = c * RatFunc.coerce(factor)
            break
    return GeodesicGraphResult(tuple(comps), graph.classification, graph.mode, graph.unknowns, graph.coordinates,
                               graph.degrees, None, graph.ranks, graph.nullity, "corrupted")
