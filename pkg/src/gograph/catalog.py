"""Built-in homogeneous spaces with reference fixtures, and the JSON
space-definition format used for user-supplied spaces."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Mapping

from .abmetric import InvariantMetric, MetricVector
from .exact import Matrix, RatFunc
from .homogeneous import ReductiveDecomposition, change_complement, extend_isotropy, is_invariant_metric
from .lie import LieAlgebra, LieAlgebraError, bracket_table, jacobi_check, qmatrix


class CatalogError(ValueError):
    pass


class UnknownId(CatalogError):
    pass


class DefinitionError(CatalogError):
    pass


@dataclass(frozen=True)
class LoadedSpace:
    id: str
    space: ReductiveDecomposition
    metric: InvariantMetric
    vector: MetricVector | None = None
    central: tuple | None = None  # full algebra vector C with C_m = vector, when known
    params: Mapping = field(default_factory=dict)
    sample: Mapping = field(default_factory=dict)
    variant: str = "default"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    description: str
    group: str
    params: Mapping
    sample: Mapping
    build: Callable[[], LoadedSpace]
    variants: Mapping = field(default_factory=dict)
    fixtures: Mapping = field(default_factory=dict)


# ---------------------------------------------------------------------------
# matrix bases

_SU3_H = {
    "H1": [["i", 0, 0], [0, "-i", 0], [0, 0, 0]],
    "H2": [[0, "i", 0], ["i", 0, 0], [0, 0, 0]],
    "H3": [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
}
_SU3_M = {
    "X1": [[0, 0, 1], [0, 0, 0], [-1, 0, 0]],
    "X2": [[0, 0, "i"], [0, 0, 0], ["i", 0, 0]],
    "Y1": [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
    "Y2": [[0, 0, 0], [0, 0, "i"], [0, "i", 0]],
    "Z": [["-i/2", 0, 0], [0, "-i/2", 0], [0, 0, "i"]],
}
_U3_H0 = [["i", 0, 0], [0, "i", 0], [0, 0, 0]]

_SP2_H = {
    "H1": [["i", 0], [0, 0]],
    "H2": [["j", 0], [0, 0]],
    "H3": [["k", 0], [0, 0]],
}
_SP2_M = {
    "X1": [[0, 1], [-1, 0]],
    "X2": [[0, "i"], ["i", 0]],
    "X3": [[0, "j"], ["j", 0]],
    "X4": [[0, "k"], ["k", 0]],
    "Z1": [[0, 0], [0, "i"]],
    "Z2": [[0, 0], [0, "j"]],
    "Z3": [[0, 0], [0, "k"]],
}


def _algebra(named: dict) -> LieAlgebra:
    return bracket_table([qmatrix(m) for m in named.values()], list(named))


def _diag(*entries) -> InvariantMetric:
    return InvariantMetric.diagonal([RatFunc.coerce(e) for e in entries])


def _space(g: LieAlgebra, h, m, coords) -> ReductiveDecomposition:
    return ReductiveDecomposition(g, tuple(h), tuple(m), tuple(coords))


@lru_cache(maxsize=1)
def _su3() -> LieAlgebra:
    return _algebra({**_SU3_H, **_SU3_M})


@lru_cache(maxsize=1)
def _u3() -> LieAlgebra:
    return _algebra({**_SU3_H, "H0": _U3_H0, **_SU3_M})


@lru_cache(maxsize=1)
def _sp2() -> LieAlgebra:
    return _algebra({**_SP2_H, **_SP2_M})


_S5_COORDS = ("x1", "x2", "x3", "x4", "z")
_S7_COORDS = ("x1", "x2", "x3", "x4", "z1", "z2", "z3")


def _s5_su3() -> LoadedSpace:
    g = _su3()
    sp = _space(g, ["H1", "H2", "H3"], ["X1", "X2", "Y1", "Y2", "Z"], _S5_COORDS)
    return LoadedSpace("s5-su3", sp, _diag(1, 1, 1, 1, "c"), MetricVector(sp.m_vector({"Z": "v"})))


def _s5_u3() -> LoadedSpace:
    g = _u3()
    sp = _space(g, ["H1", "H2", "H3", "H0"], ["X1", "X2", "Y1", "Y2", "Z"], _S5_COORDS)
    central = g.vector({"Z": 1, "H0": "3/2"})
    return LoadedSpace("s5-u3", sp, _diag(1, 1, 1, 1, "c"), MetricVector(sp.m_vector({"Z": "v"})), central)


def _s5_u3_nr(base: LoadedSpace) -> LoadedSpace:
    sp = change_complement(base.space, {"Z": {"H0": "3/2 - 2*c"}})
    central = sp.algebra.vector({"Zbar": 1, "H0": "2*c"})
    return LoadedSpace(base.id, sp, base.metric, MetricVector(sp.m_vector({"Zbar": "v"})), central, variant="nr")


def _s7_base() -> ReductiveDecomposition:
    return _space(_sp2(), ["H1", "H2", "H3"], list(_SP2_M), _S7_COORDS)


def _s7_sp2() -> LoadedSpace:
    sp = _s7_base()
    v = MetricVector(sp.m_vector({"Z1": "v1", "Z2": "v2", "Z3": "v3"}))
    return LoadedSpace("s7-sp2", sp, _diag(1, 1, 1, 1, "c1", "c2", "c3"), v)


def _s7_sp2u1() -> LoadedSpace:
    metric = _diag(1, 1, 1, 1, "c1", "c2", "c2")
    ext = extend_isotropy(_s7_base(), metric, [{"Z1": 1}], ["W1"])
    sp = ext.space
    return LoadedSpace("s7-sp2u1", sp, metric, MetricVector(sp.m_vector({"Z1": "v1"})), ext.central[0])


def _s7_sp2u1_central(base: LoadedSpace) -> LoadedSpace:
    sp = change_complement(base.space, {"Z1": {"W1": -1}})
    central = sp.algebra.vector({"Z1bar": 1})
    return LoadedSpace(base.id, sp, base.metric, MetricVector(sp.m_vector({"Z1bar": "v1"})), central, variant="central")


def _s7_sp2sp1() -> LoadedSpace:
    metric = _diag(1, 1, 1, 1, "c", "c", "c")
    ext = extend_isotropy(_s7_base(), metric, [{"Z1": 1}, {"Z2": 1}, {"Z3": 1}], ["W1", "W2", "W3"])
    return LoadedSpace("s7-sp2sp1", ext.space, metric)


def _cp2_su3() -> LoadedSpace:
    sp = _space(_su3(), ["H1", "H2", "H3", "Z"], ["X1", "X2", "Y1", "Y2"], ("x1", "x2", "x3", "x4"))
    return LoadedSpace("cp2-su3", sp, _diag(1, 1, 1, 1))


def _cp3_sp2() -> LoadedSpace:
    sp = _space(_sp2(), ["H1", "H2", "H3", "Z1"], ["X1", "X2", "X3", "X4", "Z2", "Z3"], ("x1", "x2", "x3", "x4", "z2", "z3"))
    return LoadedSpace("cp3-sp2", sp, _diag(1, 1, 1, 1, "c", "c"))


def _hp1_sp2() -> LoadedSpace:
    sp = _space(_sp2(), ["H1", "H2", "H3", "Z1", "Z2", "Z3"], ["X1", "X2", "X3", "X4"], ("x1", "x2", "x3", "x4"))
    return LoadedSpace("hp1-sp2", sp, _diag(1, 1, 1, 1))


# ---------------------------------------------------------------------------
# reference fixtures (hand-transcribed; compared against derived values in tests)

_SU3_BRACKETS = {
    ("H1", "H2"): "-2*H3", ("H1", "H3"): "2*H2", ("H2", "H3"): "-2*H1",
    ("X1", "X2"): "-2*Z + H1",
    ("X1", "Y1"): "-H3", ("X2", "Y1"): "-H2",
    ("X1", "Y2"): "H2", ("X2", "Y2"): "-H3", ("Y1", "Y2"): "-2*Z - H1",
    ("X1", "Z"): "3/2*X2", ("X2", "Z"): "-3/2*X1", ("Y1", "Z"): "3/2*Y2", ("Y2", "Z"): "-3/2*Y1",
}

_SP2_BRACKETS = {
    ("H1", "H2"): "2*H3", ("H1", "H3"): "-2*H2", ("H2", "H3"): "2*H1",
    ("X1", "X2"): "-2*Z1 + 2*H1",
    ("X1", "X3"): "-2*Z2 + 2*H2", ("X2", "X3"): "2*Z3 + 2*H3",
    ("X1", "X4"): "-2*Z3 + 2*H3", ("X2", "X4"): "-2*Z2 - 2*H2", ("X3", "X4"): "2*Z1 + 2*H1",
    ("X1", "Z1"): "X2", ("X2", "Z1"): "-X1", ("X3", "Z1"): "-X4", ("X4", "Z1"): "X3",
    ("X1", "Z2"): "X3", ("X2", "Z2"): "X4", ("X3", "Z2"): "-X1", ("X4", "Z2"): "-X2",
    ("X1", "Z3"): "X4", ("X2", "Z3"): "-X3", ("X3", "Z3"): "X2", ("X4", "Z3"): "-X1",
    ("Z1", "Z2"): "2*Z3", ("Z1", "Z3"): "-2*Z2", ("Z2", "Z3"): "2*Z1",
}

# [e_i, e_j] projected to the new complement, for the nonzero pairs
_S5_NR_BRACKETS = {
    ("X1", "X2"): "-2*Zbar", ("Y1", "Y2"): "-2*Zbar",
    ("X1", "Zbar"): "2*c*X2", ("X2", "Zbar"): "-2*c*X1", ("Y1", "Zbar"): "2*c*Y2", ("Y2", "Zbar"): "-2*c*Y1",
}
_S7_CENTRAL_BRACKETS = {
    ("X1", "X2"): "-2*Z1bar", ("X1", "X3"): "-2*Z2", ("X2", "X3"): "2*Z3",
    ("X1", "X4"): "-2*Z3", ("X2", "X4"): "-2*Z2", ("X3", "X4"): "2*Z1bar",
    ("X1", "Z2"): "X3", ("X2", "Z2"): "X4", ("X3", "Z2"): "-X1", ("X4", "Z2"): "-X2",
    ("X1", "Z3"): "X4", ("X2", "Z3"): "-X3", ("X3", "Z3"): "X2", ("X4", "Z3"): "-X1",
    ("Z2", "Z3"): "2*Z1bar",
}

# Operators as sums of c*A_ij / c*B_ij terms (1-based indices).  A_ij rotates
# the i-th and j-th X-type basis vectors (e_i -> e_j, e_j -> -e_i); B_ij does
# the same on Z-type vectors.
_S5_OPS = {
    "H1": [("A", 1, 2, 1), ("A", 3, 4, -1)],
    "H2": [("A", 1, 4, 1), ("A", 2, 3, -1)],
    "H3": [("A", 1, 3, -1), ("A", 2, 4, -1)],
}
_S7_OPS = {
    "H1": [("A", 1, 2, 1), ("A", 3, 4, 1)],
    "H2": [("A", 1, 3, 1), ("A", 2, 4, -1)],
    "H3": [("A", 1, 4, 1), ("A", 2, 3, 1)],
}
_S7_W = {
    "W1": [("B", 2, 3, 2), ("A", 1, 2, -1), ("A", 3, 4, 1)],
    "W2": [("B", 1, 3, -2), ("A", 1, 3, -1), ("A", 2, 4, -1)],
    "W3": [("B", 1, 2, 2), ("A", 1, 4, -1), ("A", 2, 3, 1)],
}

_S5_A = [["x2", "x4", "-x3"], ["-x1", "-x3", "-x4"], ["-x4", "x2", "x1"], ["x3", "-x1", "x2"]]
_S5_B = ["x2*z*(3/2-2*c)", "-x1*z*(3/2-2*c)", "x4*z*(3/2-2*c)", "-x3*z*(3/2-2*c)"]
_S5_C = ["-2*x2*c*zeta*v", "2*x1*c*zeta*v", "-2*x4*c*zeta*v", "2*x3*c*zeta*v"]
_U3_COL = ["x2", "-x1", "x4", "-x3"]

_SYSTEMS = {
    "s5-su3": {"default": [a + [b, c] for a, b, c in zip(_S5_A, _S5_B, _S5_C)]},
    "s5-u3": {
        "default": [a + [h0, b, c] for a, h0, b, c in zip(_S5_A, _U3_COL, _S5_B, _S5_C)],
        "nr": [a + [h0, "0", c] for a, h0, c in zip(_S5_A, _U3_COL, _S5_C)],
    },
    "s7-sp2": {
        "riemannian": [
            ["x2", "x3", "x4", "(1-2*c1)*z1*x2 + (1-2*c2)*z2*x3 + (1-2*c3)*z3*x4"],
            ["-x1", "-x4", "x3", "-(1-2*c1)*z1*x1 + (1-2*c2)*z2*x4 - (1-2*c3)*z3*x3"],
            ["x4", "-x1", "-x2", "-(1-2*c1)*z1*x4 - (1-2*c2)*z2*x1 + (1-2*c3)*z3*x2"],
            ["-x3", "x2", "-x1", "(1-2*c1)*z1*x3 - (1-2*c2)*z2*x2 - (1-2*c3)*z3*x1"],
            ["0", "0", "0", "2*z2*z3*(c3-c2)"],
            ["0", "0", "0", "2*z1*z3*(c1-c3)"],
            ["0", "0", "0", "2*z1*z2*(c2-c1)"],
        ],
        "finsler": [
            ["x2", "x3", "x4", "(1-2*c)*(z1*x2 + z2*x3 + z3*x4)", "2*zeta*c*(-v1*x2 - v2*x3 - v3*x4)"],
            ["-x1", "-x4", "x3", "(1-2*c)*(-z1*x1 + z2*x4 - z3*x3)", "2*zeta*c*(v1*x1 - v2*x4 + v3*x3)"],
            ["x4", "-x1", "-x2", "(1-2*c)*(-z1*x4 - z2*x1 + z3*x2)", "2*zeta*c*(v1*x4 + v2*x1 - v3*x2)"],
            ["-x3", "x2", "-x1", "(1-2*c)*(z1*x3 - z2*x2 - z3*x1)", "2*zeta*c*(-v1*x3 + v2*x2 + v3*x1)"],
            ["0", "0", "0", "0", "2*zeta*c*(z2*v3 - z3*v2)"],
            ["0", "0", "0", "0", "2*zeta*c*(z3*v1 - z1*v3)"],
            ["0", "0", "0", "0", "2*zeta*c*(z1*v2 - z2*v1)"],
        ],
    },
    "s7-sp2u1": {
        "default": [
            ["x2", "x3", "x4", "-x2", "(1-2*c1)*z1*x2 + (1-2*c2)*(z2*x3 + z3*x4)", "-2*zeta*x2*v1*c1"],
            ["-x1", "-x4", "x3", "x1", "-(1-2*c1)*z1*x1 + (1-2*c2)*(z2*x4 - z3*x3)", "2*zeta*x1*v1*c1"],
            ["x4", "-x1", "-x2", "x4", "-(1-2*c1)*z1*x4 + (1-2*c2)*(-z2*x1 + z3*x2)", "2*zeta*x4*v1*c1"],
            ["-x3", "x2", "-x1", "-x3", "(1-2*c1)*z1*x3 - (1-2*c2)*(z2*x2 + z3*x1)", "-2*zeta*x3*v1*c1"],
            ["0", "0", "0", "2*z3*c2", "2*z1*z3*(c1-c2)", "2*zeta*c1*z3*v1"],
            ["0", "0", "0", "-2*z2*c2", "2*z1*z2*(c2-c1)", "-2*zeta*c1*z2*v1"],
        ],
        "central": [
            ["x2", "x3", "x4", "-x2", "-2*c1*z1*x2 + (1-2*c2)*(z2*x3 + z3*x4)", "-2*zeta*v1*c1*x2"],
            ["-x1", "-x4", "x3", "x1", "2*c1*z1*x1 + (1-2*c2)*(z2*x4 - z3*x3)", "2*zeta*v1*c1*x1"],
            ["x4", "-x1", "-x2", "x4", "2*c1*z1*x4 + (1-2*c2)*(-z2*x1 + z3*x2)", "2*zeta*v1*c1*x4"],
            ["0", "0", "0", "c2", "z1*c1", "zeta*v1*c1"],
        ],
    },
    "s7-sp2sp1": {
        "riemannian": [
            ["x2", "x3", "x4", "-x2", "-x3", "-x4", "(1-2*c)*(z1*x2 + z2*x3 + z3*x4)"],
            ["-x1", "-x4", "x3", "x1", "-x4", "x3", "(1-2*c)*(-z1*x1 + z2*x4 - z3*x3)"],
            ["x4", "-x1", "-x2", "x4", "x1", "-x2", "(1-2*c)*(-z1*x4 - z2*x1 + z3*x2)"],
            ["-x3", "x2", "-x1", "-x3", "x2", "x1", "(1-2*c)*(z1*x3 - z2*x2 - z3*x1)"],
            ["0", "0", "0", "0", "-2*z3*c", "2*z2*c", "0"],
            ["0", "0", "0", "2*z3*c", "0", "-2*z1*c", "0"],
            ["0", "0", "0", "-2*z2*c", "2*z1*c", "0", "0"],
        ],
    },
}

_NORM = "(x1^2 + x2^2 + x3^2 + x4^2)"
_K = "(c1/c2 - 2*c1)"
_S7_U1_GRAPH = {
    "H1": f"({_K}*(x1^2 + x2^2 - x3^2 - x4^2)*(z1 + zeta*v1) + 2*(1-2*c2)*(x2*x3 - x1*x4)*z2"
    f" + 2*(1-2*c2)*(x1*x3 + x2*x4)*z3)/{_NORM}",
    "H2": f"(2*{_K}*(x2*x3 + x1*x4)*(z1 + zeta*v1) + (1-2*c2)*(x1^2 - x2^2 + x3^2 - x4^2)*z2"
    f" + 2*(1-2*c2)*(x3*x4 - x1*x2)*z3)/{_NORM}",
    "H3": f"(2*{_K}*(x2*x4 - x1*x3)*(z1 + zeta*v1) + 2*(1-2*c2)*(x1*x2 + x3*x4)*z2"
    f" + (1-2*c2)*(x1^2 - x2^2 - x3^2 + x4^2)*z3)/{_NORM}",
    "W1": "c1/c2*(z1 + zeta*v1)",
}

_GRAPHS = {
    ("s5-u3", "default", "riemannian"): {"H1": "0", "H2": "0", "H3": "0", "H0": "z*(3/2 - 2*c)"},
    ("s5-u3", "nr", "pnr"): {"H1": "0", "H2": "0", "H3": "0", "H0": "-2*c*zeta"},
    ("s7-sp2sp1", "default", "riemannian"): {
        "H1": "0", "H2": "0", "H3": "0", "W1": "(1-2*c)*(-z1)", "W2": "(1-2*c)*(-z2)", "W3": "(1-2*c)*(-z3)",
    },
    ("s7-sp2u1", "central", "finsler"): _S7_U1_GRAPH,
}


def rotation_operator(terms, n: int, a_positions=None, b_positions=None) -> Matrix:
    """Matrix of sum c * A_ij / c * B_ij acting on m-coordinates of length n.

    ``a_positions`` / ``b_positions`` map the 1-based X-type / Z-type index
    to an m-coordinate position (default: X_i at i - 1, Z_i after four X's).
    """
    a_pos = a_positions or {i: i - 1 for i in range(1, n + 1)}
    b_pos = b_positions or {i: 3 + i for i in range(1, n - 3)}
    rows = [[Fraction(0)] * n for _ in range(n)]
    for kind, i, j, c in terms:
        pos = a_pos if kind == "A" else b_pos
        p, q = pos[i], pos[j]
        rows[q][p] += Fraction(c)
        rows[p][q] -= Fraction(c)
    return Matrix(rows, n)


_ENTRIES = [
    CatalogEntry(
        "s5-su3", "5-sphere as SU(3)/SU(2), metric diag(1,1,1,1,c), V = v*Z", "SU(3)",
        {"c": "positive", "v": "real"}, {"c": 0.7, "v": 0.3}, _s5_su3,
        fixtures={"brackets": _SU3_BRACKETS, "operators": _S5_OPS, "invariant_dim": 1},
    ),
    CatalogEntry(
        "s5-u3", "5-sphere as U(3)/U(2), metric diag(1,1,1,1,c), V = v*Z", "U(3)",
        {"c": "positive", "v": "real"}, {"c": 0.7, "v": 0.3}, _s5_u3, {"nr": _s5_u3_nr},
        fixtures={
            "operators": {**_S5_OPS, "H0": [("A", 1, 2, 1), ("A", 3, 4, 1)]},
            "nr_brackets": _S5_NR_BRACKETS,
            "invariant_dim": 1,
        },
    ),
    CatalogEntry(
        "s7-sp2", "7-sphere as Sp(2)/Sp(1), metric diag(1,1,1,1,c1,c2,c3), V in span(Z1,Z2,Z3)", "Sp(2)",
        {"c1": "positive", "c2": "positive", "c3": "positive", "v1": "real", "v2": "real", "v3": "real"},
        {"c1": 0.6, "c2": 0.8, "c3": 1.3, "v1": 0.3, "v2": 0.2, "v3": 0.1}, _s7_sp2,
        fixtures={"brackets": _SP2_BRACKETS, "operators": _S7_OPS, "invariant_dim": 3},
    ),
    CatalogEntry(
        "s7-sp2u1", "7-sphere as Sp(2)U(1)/Sp(1)U(1), metric diag(1,1,1,1,c1,c2,c2), V = v1*Z1", "Sp(2)U(1)",
        {"c1": "positive", "c2": "positive", "v1": "real"}, {"c1": 0.6, "c2": 0.9, "v1": 0.4}, _s7_sp2u1,
        {"central": _s7_sp2u1_central},
        fixtures={
            "operators": {**_S7_OPS, "W1": _S7_W["W1"]},
            "central_brackets": _S7_CENTRAL_BRACKETS,
            "invariant_dim": 1,
        },
    ),
    CatalogEntry(
        "s7-sp2sp1", "7-sphere as Sp(2)Sp(1)/Sp(1)Sp(1), metric diag(1,1,1,1,c,c,c)", "Sp(2)Sp(1)",
        {"c": "positive"}, {"c": 0.7}, _s7_sp2sp1,
        fixtures={"operators": {**_S7_OPS, **_S7_W}, "invariant_dim": 0},
    ),
    CatalogEntry(
        "cp2-su3", "complex projective plane as SU(3)/S(U(2)U(1)), standard metric", "SU(3)",
        {}, {}, _cp2_su3,
        fixtures={
            "operators": {**_S5_OPS, "Z": [("A", 1, 2, "-3/2"), ("A", 3, 4, "-3/2")]},
            "invariant_dim": 0,
        },
    ),
    CatalogEntry(
        "cp3-sp2", "complex projective 3-space as Sp(2)/Sp(1)U(1), metric diag(1,1,1,1,c,c)", "Sp(2)",
        {"c": "positive"}, {"c": 0.8}, _cp3_sp2,
        fixtures={"operators": {**_S7_OPS, "Z1": _S7_W["W1"]}, "b_positions": {2: 4, 3: 5}, "invariant_dim": 0},
    ),
    CatalogEntry(
        "hp1-sp2", "quaternionic projective line as Sp(2)/Sp(1)Sp(1), standard metric", "Sp(2)",
        {}, {}, _hp1_sp2,
        fixtures={
            "operators": {
                **_S7_OPS,
                "Z1": [("A", 1, 2, -1), ("A", 3, 4, 1)],
                "Z2": [("A", 1, 3, -1), ("A", 2, 4, -1)],
                "Z3": [("A", 1, 4, -1), ("A", 2, 3, 1)],
            },
            "invariant_dim": 0,
        },
    ),
]

CATALOG = {e.id: e for e in _ENTRIES}
for _e in _ENTRIES:
    _e.fixtures["systems"] = _SYSTEMS.get(_e.id, {})
    _e.fixtures["graphs"] = {k[1:]: v for k, v in _GRAPHS.items() if k[0] == _e.id}


def ids() -> list[str]:
    return [e.id for e in _ENTRIES]


def entries() -> list[CatalogEntry]:
    return list(_ENTRIES)


def get(id: str) -> CatalogEntry:
    try:
        return CATALOG[id]
    except KeyError:
        raise UnknownId(f"unknown catalog id {id!r}; known: {', '.join(ids())}") from None


@lru_cache(maxsize=None)
def load(id: str, variant: str = "default") -> LoadedSpace:
    """Build a catalog space, optionally in an alternative reductive complement."""
    entry = get(id)
    base = entry.build()
    base = LoadedSpace(base.id, base.space, base.metric, base.vector, base.central, dict(entry.params), dict(entry.sample))
    if variant == "default":
        return base
    if variant not in entry.variants:
        known = ", ".join(["default", *entry.variants])
        raise UnknownId(f"{id} has no variant {variant!r}; known: {known}")
    out = entry.variants[variant](base)
    return LoadedSpace(out.id, out.space, out.metric, out.vector, out.central, base.params, base.sample, variant)


# ---------------------------------------------------------------------------
# space-definition documents


def to_definition(loaded: LoadedSpace) -> dict:
    """Serialize a space to the JSON definition format (h labels first)."""
    sp = loaded.space
    order = list(sp.h) + list(sp.m)
    where = {old: new for new, old in enumerate(order)}
    g = sp.algebra
    consts = []
    for (i, j), terms in g.constants.items():
        a, b = where[i], where[j]
        sign = 1
        if a > b:
            a, b, sign = b, a, -1
        for k, c in terms:
            consts.append([a, b, where[k], str(c if sign > 0 else -c)])
    consts.sort(key=lambda t: t[:3])
    doc = {
        "name": loaded.id if loaded.variant == "default" else f"{loaded.id}:{loaded.variant}",
        "h_dim": len(sp.h),
        "m_dim": sp.m_dim,
        "basis_labels": [g.labels[i] for i in order],
        "structure_constants": consts,
        "metric": loaded.metric.gram.to_strings(),
        "params": dict(loaded.params),
        "coordinates": list(sp.coordinates),
    }
    if loaded.vector is not None:
        doc["vector"] = [str(c) for c in loaded.vector]
    if loaded.central is not None:
        doc["central"] = [str(loaded.central[i]) for i in order]
    if loaded.sample:
        doc["sample"] = dict(loaded.sample)
    return doc


def _index(labels: list, key) -> int:
    if isinstance(key, int):
        if not 0 <= key < len(labels):
            raise DefinitionError(f"basis index {key} out of range")
        return key
    try:
        return labels.index(key)
    except ValueError:
        raise DefinitionError(f"unknown basis label {key!r}") from None


def load_definition(source) -> LoadedSpace:
    """Read a space from a path, a JSON string or an already parsed mapping."""
    if isinstance(source, Mapping):
        doc = dict(source)
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DefinitionError(f"not valid JSON: {exc}") from None
    for key in ("name", "h_dim", "m_dim", "basis_labels", "structure_constants", "metric"):
        if key not in doc:
            raise DefinitionError(f"missing field {key!r}")
    labels = list(doc["basis_labels"])
    hd, md = int(doc["h_dim"]), int(doc["m_dim"])
    if hd + md != len(labels):
        raise DefinitionError("h_dim + m_dim must equal the number of basis labels")
    brackets: dict = {}
    try:
        for entry in doc["structure_constants"]:
            i, j, k, c = entry
            key = (_index(labels, i), _index(labels, j))
            brackets.setdefault(key, {})
            k = _index(labels, k)
            brackets[key][k] = brackets[key].get(k, 0) + RatFunc.coerce(str(c))
        g = LieAlgebra.from_brackets(labels, brackets)
    except (LieAlgebraError, ValueError, ZeroDivisionError) as exc:
        raise DefinitionError(f"bad structure constants: {exc}") from None
    bad = jacobi_check(g)
    if bad:
        i, j, k = bad[0]
        raise DefinitionError(f"Jacobi identity fails on ({labels[i]}, {labels[j]}, {labels[k]})")
    coords = tuple(doc.get("coordinates") or ())
    try:
        sp = ReductiveDecomposition(g, tuple(range(hd)), tuple(range(hd, hd + md)), coords)
    except ValueError as exc:
        raise DefinitionError(str(exc)) from None
    viol = sp.reductivity_violations()
    if viol:
        raise DefinitionError(f"not reductive: [{viol[0][0]}, {viol[0][1]}] leaves its subspace")
    try:
        metric = InvariantMetric(Matrix([[RatFunc.coerce(str(e)) for e in row] for row in doc["metric"]], md))
    except ValueError as exc:
        raise DefinitionError(f"bad metric: {exc}") from None
    if metric.dim != md:
        raise DefinitionError("metric must be m_dim x m_dim")
    inv = is_invariant_metric(sp, metric)
    if not inv:
        raise DefinitionError(f"metric is not invariant under ad({inv.witness})")
    vector = MetricVector(tuple(RatFunc.coerce(str(e)) for e in doc["vector"])) if doc.get("vector") else None
    if vector is not None and len(vector) != md:
        raise DefinitionError("vector must have m_dim components")
    central = tuple(RatFunc.coerce(str(e)) for e in doc["central"]) if doc.get("central") else None
    params = dict(doc.get("params") or {})
    for name, kind in params.items():
        if kind not in ("positive", "real"):
            raise DefinitionError(f"param {name!r}: constraint must be 'positive' or 'real'")
    return LoadedSpace(str(doc["name"]), sp, metric, vector, central, params, dict(doc.get("sample") or {}))
