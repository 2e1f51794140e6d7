"""(alpha, beta) metrics: the Riemannian part alpha, the vector V representing
beta, phi families, and numeric evaluators used for cross-validation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .exact import Matrix, RatFunc


class MetricError(ValueError):
    pass


class DomainViolation(MetricError):
    pass


class SingularDenominator(MetricError):
    pass


def _evaluate(e: RatFunc, values: Mapping[str, float]) -> float:
    missing = e.variables - set(values)
    if missing:
        raise MetricError(f"no numeric value for {', '.join(sorted(missing))}")
    return float(e.evaluate(values)) if e.variables else float(e.constant_value())


@dataclass(frozen=True)
class InvariantMetric:
    """Gram matrix of alpha in the m basis, entries in the metric parameters."""

    gram: Matrix

    def __post_init__(self):
        if self.gram.nrows != self.gram.ncols:
            raise MetricError("Gram matrix must be square")
        if self.gram.transpose() != self.gram:
            raise MetricError("Gram matrix must be symmetric")

    @classmethod
    def diagonal(cls, entries: Sequence) -> "InvariantMetric":
        n = len(entries)
        return cls(Matrix([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n))

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def parameters(self) -> frozenset:
        return frozenset(v for row in self.gram.rows for e in row for v in e.variables)

    def inner(self, u: Sequence, v: Sequence) -> RatFunc:
        acc = RatFunc.coerce(0)
        for i in range(self.dim):
            if not u[i]:
                continue
            for j in range(self.dim):
                if v[j] and self.gram[i, j]:
                    acc = acc + u[i] * self.gram[i, j] * v[j]
        return acc

    def subs(self, mapping: Mapping) -> "InvariantMetric":
        return InvariantMetric(self.gram.subs(mapping))

    def numeric(self, values: Mapping[str, float] | None = None) -> np.ndarray:
        vals = dict(values or {})
        return np.array([[_evaluate(e, vals) for e in row] for row in self.gram.rows])

    def is_positive_definite(self, values: Mapping[str, float] | None = None) -> bool:
        g = self.numeric(values)
        return bool(np.all(np.linalg.eigvalsh(g) > 0))


@dataclass(frozen=True)
class MetricVector:
    """The alpha-equivalent vector V of beta: beta(U) = alpha(V, U)."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(RatFunc.coerce(c) for c in self.components))

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def is_zero(self) -> bool:
        return not any(self.components)

    def subs(self, mapping: Mapping) -> "MetricVector":
        return MetricVector(tuple(c.subs(mapping) for c in self.components))

    def numeric(self, values: Mapping[str, float] | None = None) -> np.ndarray:
        vals = dict(values or {})
        return np.array([_evaluate(c, vals) for c in self.components])


@dataclass(frozen=True)
class PhiFamily:
    """phi(s) with its first two derivatives, smooth on (-b0, b0)."""

    name: str
    phi: Callable[[float], float]
    dphi: Callable[[float], float]
    ddphi: Callable[[float], float]
    b0: float = math.inf
    constant: bool = False  # phi' == 0 identically, so zeta vanishes


RIEMANNIAN = PhiFamily("riemannian", lambda s: 1.0, lambda s: 0.0, lambda s: 0.0, math.inf, True)
RANDERS = PhiFamily("randers", lambda s: 1.0 + s, lambda s: 1.0, lambda s: 0.0, 1.0)
QUADRATIC = PhiFamily("quadratic", lambda s: (1.0 + s) ** 2, lambda s: 2.0 * (1.0 + s), lambda s: 2.0)

PHI_FAMILIES = {f.name: f for f in (RIEMANNIAN, RANDERS, QUADRATIC)}


def get_phi(phi) -> PhiFamily:
    if isinstance(phi, PhiFamily):
        return phi
    try:
        return PHI_FAMILIES[phi]
    except KeyError:
        raise MetricError(f"unknown phi family {phi!r}; choose from {', '.join(PHI_FAMILIES)}") from None


@dataclass(frozen=True)
class AdmissibilityReport:
    passed: bool
    margin: float  # min over the grid of (phi - s phi') + (b^2 - s^2) phi''
    min_phi: float
    worst_s: float


def admissibility_check(phi, b: float, grid: int = 1001) -> AdmissibilityReport:
    """Sample phi(s) > 0 and (phi - s phi') + (b^2 - s^2) phi'' > 0 on s in [-b, b]."""
    fam = get_phi(phi)
    if grid < 3:
        raise MetricError("grid needs at least 3 points")
    if b < 0 or b >= fam.b0:
        raise DomainViolation(f"b = {b} is outside [0, {fam.b0}) for {fam.name}")
    s = np.linspace(-b, b, grid)
    phis = np.array([fam.phi(t) for t in s])
    second = np.array([(fam.phi(t) - t * fam.dphi(t)) + (b * b - t * t) * fam.ddphi(t) for t in s])
    k = int(np.argmin(second))
    margin = float(second[k])
    min_phi = float(phis.min())
    return AdmissibilityReport(bool(min_phi > 0 and margin > 0), margin, min_phi, float(s[k]))


def admissibility_bound(phi, upper: float = 10.0, tol: float = 1e-9, grid: int = 1001) -> float:
    """Largest b (up to ``upper`` or b0) passing the sampled check, by bisection."""
    fam = get_phi(phi)

    def ok(b: float) -> bool:
        try:
            return admissibility_check(fam, b, grid).passed
        except DomainViolation:
            return False

    lo, hi = 0.0, min(upper, fam.b0)
    if ok(hi):
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _alpha_beta(x: np.ndarray, g: np.ndarray, v: np.ndarray) -> tuple[float, float]:
    return float(x @ g @ x), float(x @ g @ v)


def minkowski_norm(x, g, v, phi) -> float:
    """F(X) = sqrt(alpha(X, X)) phi(beta(X) / sqrt(alpha(X, X)))."""
    fam = get_phi(phi)
    x, g, v = np.asarray(x, float), np.asarray(g, float), np.asarray(v, float)
    a, beta = _alpha_beta(x, g, v)
    if a <= 0:
        raise MetricError("X must be nonzero")
    r = math.sqrt(a)
    return r * fam.phi(beta / r)


def zeta_numeric(x, g, v, phi) -> float:
    """alpha phi'(s) / (sqrt(alpha) phi(s) - beta phi'(s)) with s = beta / sqrt(alpha)."""
    fam = get_phi(phi)
    x, g, v = np.asarray(x, float), np.asarray(g, float), np.asarray(v, float)
    a, beta = _alpha_beta(x, g, v)
    if a <= 0:
        raise MetricError("X must be nonzero")
    r = math.sqrt(a)
    s = beta / r
    d = fam.dphi(s)
    den = r * fam.phi(s) - beta * d
    if abs(den) <= 1e-14 * max(1.0, abs(r * fam.phi(s)) + abs(beta * d)):
        raise SingularDenominator(f"sqrt(alpha) phi - beta phi' vanishes at s = {s}")
    return a * d / den


def _tensor(y, u, w, g, v, fam, h) -> float:
    f2 = lambda p: minkowski_norm(p, g, v, fam) ** 2
    plus, minus = u + w, u - w
    a = f2(y + h * plus) + f2(y - h * plus)
    b = f2(y + h * minus) + f2(y - h * minus)
    return (a - b) / (8.0 * h * h)


def fundamental_tensor_numeric(y, u, w, g, v, phi, step: float = 1e-3, richardson: bool = False) -> float:
    """g_Y(u, w) = 1/2 d^2/dr dt F^2(Y + r u + t w) at 0 by central differences.

    The stencil is symmetric in (u, w) term by term, so swapping the
    arguments gives a bit-identical value.
    """
    if step <= 0:
        raise MetricError("step must be positive")
    fam = get_phi(phi)
    y, u, w = (np.asarray(t, float) for t in (y, u, w))
    g, v = np.asarray(g, float), np.asarray(v, float)
    coarse = _tensor(y, u, w, g, v, fam, step)
    if not richardson:
        return coarse
    fine = _tensor(y, u, w, g, v, fam, step / 2)
    return (4.0 * fine - coarse) / 3.0
